//! The simplicial line and regular trees.

use std::sync::Arc;

use super::key::VertexKey;
use super::lazy::{LazySpace, NeighborOracle, SpaceError};

pub struct LineOracle;

pub fn line_vertex(n: i64) -> VertexKey {
    VertexKey::from_int(n)
}

pub fn decode_line(v: &VertexKey) -> Result<i64, SpaceError> {
    v.to_int().ok_or_else(|| SpaceError::BadKey(v.clone()))
}

impl NeighborOracle for LineOracle {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let n = decode_line(v)?;
        Ok(vec![line_vertex(n - 1), line_vertex(n + 1)])
    }

    fn distance_hint(&self, u: &VertexKey, v: &VertexKey) -> Option<u64> {
        Some(u.to_int()?.abs_diff(v.to_int()?))
    }

    fn describe(&self, v: &VertexKey) -> String {
        v.to_int().map_or_else(|| v.to_hex(), |n| n.to_string())
    }
}

/// The simplicial line, vertices the integers, basepoint 0.
pub fn line() -> LazySpace {
    LazySpace::new("line", line_vertex(0), Arc::new(LineOracle))
        .with_valence_bound(2)
        .with_quasitree_claim(true)
        .with_line_factor(true)
}

/// Regular tree of valence `d`, realised as the Cayley graph of the free
/// product of `d` copies of C2: vertices are words over `0..d` with no
/// letter repeated twice in a row, edges are right multiplication by one
/// letter.
pub struct RegularTreeOracle {
    pub valence: u8,
}

pub fn tree_word(letters: &[u8]) -> VertexKey {
    VertexKey::from_bytes(letters)
}

impl RegularTreeOracle {
    fn check(&self, v: &VertexKey) -> Result<(), SpaceError> {
        let w = v.as_bytes();
        if w.iter().any(|&c| c >= self.valence) || w.windows(2).any(|p| p[0] == p[1]) {
            return Err(SpaceError::BadKey(v.clone()));
        }
        Ok(())
    }
}

impl NeighborOracle for RegularTreeOracle {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        self.check(v)?;
        let w = v.as_bytes();
        let mut out = Vec::with_capacity(self.valence as usize);
        for c in 0..self.valence {
            if w.last() == Some(&c) {
                out.push(tree_word(&w[..w.len() - 1]));
            } else {
                let mut x = w.to_vec();
                x.push(c);
                out.push(tree_word(&x));
            }
        }
        Ok(out)
    }

    fn distance_hint(&self, u: &VertexKey, v: &VertexKey) -> Option<u64> {
        let (a, b) = (u.as_bytes(), v.as_bytes());
        let common = a.iter().zip(b).take_while(|(x, y)| x == y).count();
        Some((a.len() + b.len() - 2 * common) as u64)
    }

    fn describe(&self, v: &VertexKey) -> String {
        let w = v.as_bytes();
        if w.is_empty() {
            "e".into()
        } else {
            w.iter().map(|c| c.to_string()).collect::<Vec<_>>().join(".")
        }
    }
}

pub fn tree_regular(valence: u8) -> Result<LazySpace, String> {
    if valence < 2 {
        return Err(format!("regular tree needs valence >= 2, got {valence}"));
    }
    Ok(LazySpace::new(format!("tree_regular({valence})"), tree_word(&[]), Arc::new(RegularTreeOracle { valence }))
        .with_valence_bound(valence as usize)
        .with_quasitree_claim(true))
}
