use std::fmt;
use std::sync::Arc;

use crate::space::{KeyReader, KeyWriter, LazySpace, NeighborOracle, SpaceError, VertexKey};

use super::laurent::Laurent;
use super::poly::is_prime;
use super::rational::Uniformizer;
use super::FfError;

/// Vertex of the Bruhat–Tits tree: the homothety class of the lattice
/// spanned by (pi^n, 0) and (u, 1), with u a Laurent polynomial in pi
/// carrying no terms of degree >= n. The standard vertex is (0, 0).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BTVertex {
    pub n: i64,
    pub u: Laurent,
}

impl BTVertex {
    /// Canonicalizes by truncating `u` below `n`.
    pub fn new(n: i64, u: Laurent) -> Self {
        BTVertex { n, u: u.truncate_below(n) }
    }

    pub fn standard(q: u32) -> Self {
        BTVertex { n: 0, u: Laurent::zero(q) }
    }

    pub fn modulus(&self) -> u32 {
        self.u.modulus()
    }

    pub fn key(&self, uniformizer: Uniformizer) -> VertexKey {
        let mut w = KeyWriter::new();
        w.u8(uniformizer.tag()).int(self.n);
        let terms: Vec<(i64, u32)> = self.u.terms().collect();
        w.u32(terms.len() as u32);
        for (d, c) in terms {
            w.int(d).u32(c);
        }
        w.finish()
    }

    /// Decodes and validates a key for the tree over F_q at `uniformizer`.
    pub fn from_key(key: &VertexKey, q: u32, uniformizer: Uniformizer) -> Result<Self, FfError> {
        let bad = || FfError::BadVertex(key.to_hex());
        let mut r = KeyReader::new(key.as_bytes());
        if r.u8().ok_or_else(bad)? != uniformizer.tag() {
            return Err(bad());
        }
        let n = r.int().ok_or_else(bad)?;
        let count = r.u32().ok_or_else(bad)?;
        let mut terms = Vec::with_capacity(count as usize);
        let mut prev = None;
        for _ in 0..count {
            let d = r.int().ok_or_else(bad)?;
            let c = r.u32().ok_or_else(bad)?;
            if c == 0 || c >= q || d >= n || prev.is_some_and(|p| p >= d) {
                return Err(bad());
            }
            prev = Some(d);
            terms.push((d, c));
        }
        if !r.is_empty() {
            return Err(bad());
        }
        Ok(BTVertex { n, u: Laurent::from_terms(q, &terms) })
    }
}

impl fmt::Debug for BTVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for BTVertex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}; {})", self.n, self.u)
    }
}

/// The q + 1 neighbors: the parent first, then the children in order of
/// the new coefficient.
pub fn bt_neighbors(v: &BTVertex, q: u32) -> Vec<BTVertex> {
    let mut out = Vec::with_capacity(q as usize + 1);
    out.push(BTVertex::new(v.n - 1, v.u.clone()));
    for c in 0..q {
        out.push(BTVertex { n: v.n + 1, u: v.u.add(&Laurent::monomial(q, v.n, c)) });
    }
    out
}

/// Tree distance: both vertices descend from the chain of classes
/// (m, u mod pi^m), so the distance is n + n' - 2 m* with m* the deepest
/// common level.
pub fn bt_distance(a: &BTVertex, b: &BTVertex) -> u64 {
    let mut m = a.n.min(b.n);
    let diff = a.u.sub(&b.u);
    if let Some(v) = diff.valuation() {
        m = m.min(v);
    }
    ((a.n - m) + (b.n - m)) as u64
}

pub struct BtOracle {
    pub q: u32,
    pub uniformizer: Uniformizer,
}

impl BtOracle {
    fn decode(&self, v: &VertexKey) -> Result<BTVertex, SpaceError> {
        BTVertex::from_key(v, self.q, self.uniformizer).map_err(|_| SpaceError::BadKey(v.clone()))
    }
}

impl NeighborOracle for BtOracle {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let x = self.decode(v)?;
        Ok(bt_neighbors(&x, self.q).iter().map(|y| y.key(self.uniformizer)).collect())
    }

    fn distance_hint(&self, u: &VertexKey, v: &VertexKey) -> Option<u64> {
        Some(bt_distance(&self.decode(u).ok()?, &self.decode(v).ok()?))
    }

    fn describe(&self, v: &VertexKey) -> String {
        self.decode(v).map_or_else(|_| v.to_hex(), |x| x.to_string())
    }
}

/// The (q+1)-regular Bruhat–Tits tree of PGL2 over F_q(t) at the given
/// valuation, based at the standard vertex.
pub fn bt_tree(q: u32, uniformizer: Uniformizer) -> Result<LazySpace, FfError> {
    if !is_prime(q) {
        return Err(FfError::NotPrime(q));
    }
    let base = BTVertex::standard(q).key(uniformizer);
    Ok(LazySpace::new(format!("bt_tree(q={q},v={})", uniformizer.label()), base, Arc::new(BtOracle { q, uniformizer }))
        .with_valence_bound(q as usize + 1)
        .with_quasitree_claim(true))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn standard_vertex_has_q_plus_one_neighbors() {
        for q in [2, 3, 5] {
            let ns = bt_neighbors(&BTVertex::standard(q), q);
            assert_eq!(ns.len(), q as usize + 1);
            assert_eq!(ns[0], BTVertex::new(-1, Laurent::zero(q)));
            for child in &ns[1..] {
                assert!(bt_neighbors(child, q).contains(&BTVertex::standard(q)));
            }
        }
    }

    #[test]
    fn key_roundtrip() {
        let q = 3;
        let v = BTVertex::new(2, Laurent::from_terms(q, &[(-3, 2), (0, 1), (1, 1), (4, 1)]));
        for u in [Uniformizer::T, Uniformizer::Inf] {
            let k = v.key(u);
            assert_eq!(BTVertex::from_key(&k, q, u).unwrap(), v);
        }
        assert!(BTVertex::from_key(&v.key(Uniformizer::T), q, Uniformizer::Inf).is_err());
        assert!(BTVertex::from_key(&v.key(Uniformizer::T), 2, Uniformizer::T).is_err());
    }

    #[test]
    fn distance_formula_matches_search() {
        let space = bt_tree(2, Uniformizer::T).unwrap();
        let ball = crate::space::grow_ball(&space, &space.basepoint, 3).unwrap();
        for a in ball.members().iter().step_by(3) {
            for b in ball.members().iter().step_by(5) {
                let hint = space.oracle().distance_hint(a, b).unwrap();
                assert_eq!(space.bfs_distance(a, b, 12).unwrap(), Some(hint));
            }
        }
    }
}
