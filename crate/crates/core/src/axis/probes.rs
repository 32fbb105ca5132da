use std::collections::HashSet;

use serde::Serialize;

use crate::action::{enumerate_elements, BaseMetric, GroupWord, MarkedAction};
use crate::space::{Point, VertexKey, DEFAULT_DISTANCE_CAP};

use super::pseudoaxis::single_factor;
use super::AxisError;

/// One-sided Hausdorff distance between two orbit segments of a
/// loxodromic element, with the quasigeodesic constants of the orbit.
#[derive(Clone, Debug, Serialize)]
pub struct StabilityProbe {
    pub g: String,
    pub bases: (VertexKey, VertexKey),
    pub horizon: usize,
    /// max over g^n x of min over m of d(g^n x, g^m y), 0 <= n, m <= horizon.
    pub hausdorff_bound: u64,
    /// l = d(x, g x); the orbit through x lies on an (l, 3l)-quasigeodesic.
    pub quasi_k: u64,
    pub quasi_c: u64,
}

pub fn stability_probe(action: &MarkedAction, g: &GroupWord, x: &VertexKey, y: &VertexKey, horizon: usize) -> Result<StabilityProbe, AxisError> {
    let (space, map) = single_factor(action, g)?;
    let orbit = |start: &VertexKey| -> Result<Vec<VertexKey>, AxisError> {
        let mut out = vec![start.clone()];
        for _ in 0..horizon {
            let next = map.apply(out.last().unwrap())?;
            out.push(next);
        }
        Ok(out)
    };
    let ox = orbit(x)?;
    let oy = orbit(y)?;
    let mut bound = 0;
    for a in &ox {
        let mut best = u64::MAX;
        for b in &oy {
            best = best.min(space.distance(a, b, DEFAULT_DISTANCE_CAP)?);
        }
        bound = bound.max(best);
    }
    let l = space.distance(&ox[0], &ox[1], DEFAULT_DISTANCE_CAP)?;
    Ok(StabilityProbe { g: action.display(g), bases: (x.clone(), y.clone()), horizon, hausdorff_bound: bound, quasi_k: l, quasi_c: 3 * l })
}

/// Number of distinct elements g_i = h^-1 g^m found at one sample depth.
#[derive(Clone, Debug, Serialize)]
pub struct CoverRow {
    pub depth: usize,
    pub samples: usize,
    pub k: usize,
    /// Largest d(x0, h^-1 g^m x0)^2 over the samples at the chosen m.
    pub max_offset_sq: u64,
}

#[derive(Clone, Debug, Serialize)]
pub struct CoverCheck {
    pub g: String,
    pub rows: Vec<CoverRow>,
    pub k: usize,
    /// True when k did not change over the last two depths.
    pub covered: bool,
}

/// For every sampled element h (all elements of word length <= depth),
/// picks m with |m| <= horizon minimising d(x0, h^-1 g^m x0) and records the
/// element h^-1 g^m by its probe images. Every sample then lies in
/// <g> g_i^-1 for one of the k recorded elements g_i.
pub fn coset_cover_check(action: &MarkedAction, g: &GroupWord, depth: usize, horizon: usize) -> Result<CoverCheck, AxisError> {
    let base = action.basepoint();
    let probes = action.probe_set(&base)?;
    let spheres = enumerate_elements(action, &base, depth)?;
    let mut metric = BaseMetric::new(&action.space, &base);
    let gpow: Vec<(i64, GroupWord)> = {
        let mut ms: Vec<i64> = (-(horizon as i64)..=horizon as i64).collect();
        ms.sort_by_key(|m| (m.abs(), *m));
        ms.into_iter().map(|m| (m, g.pow(m))).collect()
    };
    let mut found: HashSet<Vec<Point>> = HashSet::new();
    let mut rows = Vec::with_capacity(depth + 1);
    let mut samples = 0;
    let mut max_offset_sq = 0;
    for (d, sphere) in spheres.iter().enumerate() {
        for e in sphere {
            samples += 1;
            let hinv = e.word.inverse();
            let mut best: Option<(u64, &GroupWord)> = None;
            for (_, gm) in &gpow {
                let w = hinv.concat(gm);
                let dist = metric.distance_sq(&action.apply(&w, &base)?, DEFAULT_DISTANCE_CAP)?;
                if best.map_or(true, |(b, _)| dist < b) {
                    best = Some((dist, gm));
                }
            }
            let (dist, gm) = best.expect("window is nonempty");
            max_offset_sq = max_offset_sq.max(dist);
            found.insert(action.fingerprint(&hinv.concat(gm), &probes)?);
        }
        rows.push(CoverRow { depth: d, samples, k: found.len(), max_offset_sq });
    }
    let k = found.len();
    let covered = rows.len() >= 2 && rows[rows.len() - 2].k == k;
    Ok(CoverCheck { g: action.display(g), rows, k, covered })
}
