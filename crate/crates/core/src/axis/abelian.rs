use serde::Serialize;

use crate::action::{reduced_words, ClassifyOptions, GroupWord, MarkedAction};
use crate::induction::factor_types;

use super::character::{phi_from_central, CharacterOptions};
use super::AxisError;

/// theta = theta_1 x ... x theta_m on a factor-preserving abelian action,
/// one coordinate per factor carrying a pick.
#[derive(Clone, Debug, Serialize)]
pub struct AbelianCharacterMap {
    pub factors: Vec<usize>,
    pub picks: Vec<String>,
    /// `matrix[j][i]` is theta_i of generator j.
    pub matrix: Vec<Vec<i64>>,
    /// Rank of the image of the picks, which must be m.
    pub pick_rank: usize,
    /// Rank of the image of the whole group.
    pub rank: usize,
    pub factor_count: usize,
}

/// Rank of an integer matrix by fraction-free elimination.
pub fn integer_rank(rows: &[Vec<i64>]) -> usize {
    let mut m: Vec<Vec<i128>> = rows.iter().map(|r| r.iter().map(|&x| x as i128).collect()).collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let (a, b) = (m[rank][c], m[r][c]);
                for k in 0..cols {
                    m[r][k] = m[r][k] * a - m[rank][k] * b;
                }
                let g = m[r].iter().fold(0i128, |acc, &x| gcd128(acc, x));
                if g > 1 {
                    m[r].iter_mut().for_each(|x| *x /= g);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn gcd128(a: i128, b: i128) -> i128 {
    if b == 0 {
        a.abs()
    } else {
        gcd128(b, a % b)
    }
}

/// Checks that the generators pairwise commute on the probe set.
pub fn check_commuting(action: &MarkedAction) -> Result<(), AxisError> {
    let probes = action.probe_set(&action.basepoint())?;
    let r = action.gens.rank();
    for i in 0..r {
        for j in i + 1..r {
            let (x, y) = (GroupWord::letter(action.gens.generator(i)), GroupWord::letter(action.gens.generator(j)));
            if !action.agree_on(&x.concat(&y), &y.concat(&x), &probes)? {
                return Err(AxisError::NotCommuting(action.gens.label(x.0[0]).to_string(), action.gens.label(y.0[0]).to_string()));
            }
        }
    }
    Ok(())
}

/// True when `w` is loxodromic on factor `i` and elliptic on every other
/// factor, both certified.
pub fn is_pick(action: &MarkedAction, w: &GroupWord, i: usize, horizon: usize) -> Result<bool, AxisError> {
    let opts = ClassifyOptions { horizon, infinite_order: false };
    let (_, types) = factor_types(action, w, &action.basepoint(), &opts)?;
    Ok(types.iter().enumerate().all(|(j, t)| {
        let ok = if j == i { t.kind.is_loxodromic() } else { t.kind.is_elliptic() };
        ok && t.certainty == crate::action::Certainty::Certified
    }))
}

/// Assembles theta from picks given as (word, factor), one per factor used.
pub fn abelian_character_map(action: &MarkedAction, picks: &[(GroupWord, usize)], opts: &CharacterOptions) -> Result<AbelianCharacterMap, AxisError> {
    check_commuting(action)?;
    let n = action.arity();
    let mut factors = Vec::with_capacity(picks.len());
    for (w, i) in picks {
        if *i >= n || factors.contains(i) {
            return Err(AxisError::Parse(format!("factor {i} is out of range or used twice")));
        }
        if !is_pick(action, w, *i, opts.horizon)? {
            return Err(AxisError::BadPick { word: action.display(w), factor: *i });
        }
        factors.push(*i);
    }
    let rank_g = action.gens.rank();
    let mut matrix = vec![vec![0i64; picks.len()]; rank_g];
    let mut pick_rows = vec![vec![0i64; picks.len()]; picks.len()];
    for (c, (w, i)) in picks.iter().enumerate() {
        let fa = action.factor_action(*i)?;
        let ch = phi_from_central(&fa, w, opts)?;
        for (j, row) in matrix.iter_mut().enumerate() {
            row[c] = ch.phi.values[j];
        }
        for (k, (wk, _)) in picks.iter().enumerate() {
            pick_rows[k][c] = ch.phi.eval(wk);
        }
    }
    let pick_rank = integer_rank(&pick_rows);
    if pick_rank < picks.len() {
        return Err(AxisError::RankDeficient { target: picks.len(), achieved: pick_rank });
    }
    Ok(AbelianCharacterMap {
        factors,
        picks: picks.iter().map(|(w, _)| action.display(w)).collect(),
        rank: integer_rank(&matrix),
        matrix,
        pick_rank,
        factor_count: n,
    })
}

/// Outcome of the exhaustive pick search.
#[derive(Clone, Debug, Serialize)]
pub struct PickSearch {
    pub target_rank: usize,
    pub words_examined: usize,
    pub picks: Vec<(String, usize)>,
    pub map: Option<AbelianCharacterMap>,
}

/// Looks for a character map of rank `target_rank`: for every factor the
/// first reduced word of length <= `max_len` that is a pick there, then
/// theta from those picks. Fails with RankDeficient when theta has rank
/// below the target, which is forced whenever the target exceeds the number
/// of factors.
pub fn search_picks(action: &MarkedAction, target_rank: usize, max_len: usize, opts: &CharacterOptions) -> Result<PickSearch, AxisError> {
    check_commuting(action)?;
    let words: Vec<GroupWord> = reduced_words(&action.gens, max_len).into_iter().filter(|w| !w.is_empty()).collect();
    let mut picks = Vec::new();
    let mut examined = 0;
    for i in 0..action.arity() {
        for w in &words {
            examined += 1;
            if is_pick(action, w, i, opts.horizon)? {
                picks.push((w.clone(), i));
                break;
            }
        }
    }
    let labels = picks.iter().map(|(w, i)| (action.display(w), *i)).collect();
    let map = abelian_character_map(action, &picks, opts)?;
    if map.rank < target_rank {
        return Err(AxisError::RankDeficient { target: target_rank, achieved: map.rank });
    }
    Ok(PickSearch { target_rank, words_examined: examined, picks: labels, map: Some(map) })
}
