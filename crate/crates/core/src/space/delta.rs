use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use super::ball::Ball;
use super::key::VertexKey;
use super::lazy::{LazySpace, SpaceError};

#[derive(Clone, Debug)]
pub struct DeltaOptions {
    /// Largest number of unordered 4-tuples scanned exhaustively.
    pub exhaustive_budget: u128,
    /// Number of seeded random 4-tuples when the budget is exceeded; zero
    /// disables sampling and makes oversized balls an error.
    pub samples: u64,
    pub seed: u64,
}

impl Default for DeltaOptions {
    fn default() -> Self {
        DeltaOptions { exhaustive_budget: 100_000_000, samples: 2_000_000, seed: 0x5eed }
    }
}

/// Four-point hyperbolicity of a ball. `delta_twice` is twice the defect, so
/// half-integer values stay exact. When `exhaustive` is false the value is a
/// lower bound from sampling.
#[derive(Clone, Debug, Serialize)]
pub struct DeltaEstimate {
    pub radius: u32,
    pub delta_twice: u64,
    pub witness: [VertexKey; 4],
    pub exhaustive: bool,
    pub tuples_scanned: u128,
}

impl DeltaEstimate {
    pub fn delta(&self) -> f64 {
        self.delta_twice as f64 / 2.0
    }
}

/// Twice the four-point defect: largest pair-sum minus the middle one.
pub fn four_point_defect_twice(dwx: u64, dyz: u64, dwy: u64, dxz: u64, dwz: u64, dxy: u64) -> u64 {
    let mut s = [dwx + dyz, dwy + dxz, dwz + dxy];
    s.sort_unstable();
    s[2] - s[1]
}

/// Exact all-pairs distance table over the ball's members. Pairs the ball
/// certifies come from the induced subgraph; the rest are resolved in the
/// ambient graph (both endpoints lie within `radius` of the center, so the
/// true distance is at most twice that).
pub fn certified_pair_table(ball: &Ball, space: &LazySpace) -> Result<Vec<Vec<u32>>, SpaceError> {
    let n = ball.len();
    let rows: Vec<Result<Vec<u32>, SpaceError>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let induced = ball.induced_distances(i);
            let mut row = vec![0u32; n];
            for j in 0..n {
                let d = induced[j];
                let certified = d != u32::MAX && ball.dist_at(i).min(ball.dist_at(j)) + d <= ball.radius;
                row[j] = if certified {
                    d
                } else {
                    space.distance(&ball.members()[i], &ball.members()[j], 2 * ball.radius)? as u32
                };
            }
            Ok(row)
        })
        .collect();
    rows.into_iter().collect()
}

fn choose4(n: u128) -> u128 {
    if n < 4 {
        0
    } else {
        n * (n - 1) * (n - 2) * (n - 3) / 24
    }
}

/// Gromov four-point defect over the ball. Exhaustive when the number of
/// 4-subsets fits the budget, otherwise seeded sampling (a lower bound).
/// The maximum and its witness are combined deterministically, so the
/// result does not depend on the worker count.
pub fn four_point_delta(ball: &Ball, space: &LazySpace, opts: &DeltaOptions) -> Result<DeltaEstimate, SpaceError> {
    let n = ball.len();
    let needed = choose4(n as u128);
    if needed > opts.exhaustive_budget && opts.samples == 0 {
        return Err(SpaceError::TooLarge { needed, budget: opts.exhaustive_budget });
    }
    let d = certified_pair_table(ball, space)?;
    let defect = |w: usize, x: usize, y: usize, z: usize| -> u64 {
        four_point_defect_twice(
            d[w][x] as u64,
            d[y][z] as u64,
            d[w][y] as u64,
            d[x][z] as u64,
            d[w][z] as u64,
            d[x][y] as u64,
        )
    };
    // (defect, tuple) with larger defect winning and the smaller tuple
    // breaking ties.
    type Best = (u64, [usize; 4]);
    let better = |a: Best, b: Best| -> Best {
        if b.0 > a.0 || (b.0 == a.0 && b.1 < a.1) {
            b
        } else {
            a
        }
    };
    let first: Best = (0, [0, 0, 0, 0]);
    let (best, exhaustive, scanned) = if needed <= opts.exhaustive_budget {
        let best = (0..n)
            .into_par_iter()
            .map(|w| {
                let mut local = first;
                for x in w + 1..n {
                    for y in x + 1..n {
                        for z in y + 1..n {
                            let v = defect(w, x, y, z);
                            if v > local.0 {
                                local = (v, [w, x, y, z]);
                            }
                        }
                    }
                }
                local
            })
            .reduce(|| first, better);
        (best, true, needed)
    } else {
        let chunks = 64u64;
        let per = opts.samples.div_ceil(chunks);
        let best = (0..chunks)
            .into_par_iter()
            .map(|c| {
                let mut rng = ChaCha8Rng::seed_from_u64(opts.seed ^ c.wrapping_mul(0x9e37_79b9_7f4a_7c15));
                let mut local = first;
                for _ in 0..per {
                    let mut t = [0usize; 4];
                    for slot in t.iter_mut() {
                        *slot = rng.gen_range(0..n);
                    }
                    t.sort_unstable();
                    let v = defect(t[0], t[1], t[2], t[3]);
                    local = better(local, (v, t));
                }
                local
            })
            .reduce(|| first, better);
        (best, false, (per * chunks) as u128)
    };
    let m = ball.members();
    let witness = [m[best.1[0]].clone(), m[best.1[1]].clone(), m[best.1[2]].clone(), m[best.1[3]].clone()];
    Ok(DeltaEstimate { radius: ball.radius, delta_twice: best.0, witness, exhaustive, tuples_scanned: scanned })
}
