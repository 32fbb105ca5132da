use std::cmp::Ordering;
use std::sync::Arc;

use crate::space::{LazySpace, NeighborOracle, SpaceError, VertexKey};

/// A countable metric space given by candidate near points and an exact
/// test for distance at most 1.
pub trait PointOracle: Send + Sync {
    /// Points that may lie within distance 1 of `p` (a superset is fine).
    fn candidates(&self, p: &VertexKey) -> Result<Vec<VertexKey>, SpaceError>;
    /// Exact test d(p, q) <= 1.
    fn within_one(&self, p: &VertexKey, q: &VertexKey) -> Result<bool, SpaceError>;
    fn describe(&self, p: &VertexKey) -> String {
        p.to_hex()
    }
}

struct Graphified(Arc<dyn PointOracle>);

impl NeighborOracle for Graphified {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let mut out = Vec::new();
        for c in self.0.candidates(v)? {
            if c != *v && self.0.within_one(v, &c)? {
                out.push(c);
            }
        }
        out.sort();
        out.dedup();
        Ok(out)
    }

    fn describe(&self, v: &VertexKey) -> String {
        self.0.describe(v)
    }
}

/// The graph on the points with an edge whenever two points are at
/// distance at most 1. No valence bound is declared.
pub fn graphify(name: impl Into<String>, basepoint: VertexKey, points: Arc<dyn PointOracle>) -> LazySpace {
    LazySpace::new(name, basepoint, Arc::new(Graphified(points)))
}

/// Sign of a + b sqrt2, exactly.
pub fn sign_sqrt2(a: i64, b: i64) -> Ordering {
    let (a, b) = (a as i128, b as i128);
    match (a.cmp(&0), b.cmp(&0)) {
        (Ordering::Equal, s) | (s, Ordering::Equal) => s,
        (Ordering::Greater, Ordering::Greater) => Ordering::Greater,
        (Ordering::Less, Ordering::Less) => Ordering::Less,
        // opposite signs: compare a^2 with 2 b^2
        (Ordering::Greater, Ordering::Less) => (a * a).cmp(&(2 * b * b)),
        (Ordering::Less, Ordering::Greater) => (2 * b * b).cmp(&(a * a)),
    }
}

/// |a + b sqrt2| <= 1, exactly.
pub fn abs_sqrt2_le_one(a: i64, b: i64) -> bool {
    sign_sqrt2(a - 1, b) != Ordering::Greater && sign_sqrt2(a + 1, b) != Ordering::Less
}

/// The points a + b sqrt2 of Z[sqrt2] with the usual distance on the real
/// line. The graph is truncated translation-invariantly: p and p + s are
/// joined only for steps s = (a, b) with |a|, |b| <= `m`. The truncation
/// keeps every translation an automorphism.
pub struct ZSqrt2Points {
    m: i64,
    steps: Vec<(i64, i64)>,
}

impl ZSqrt2Points {
    pub fn new(m: i64) -> Self {
        let mut steps = Vec::new();
        for b in -m..=m {
            for a in -m..=m {
                if (a, b) != (0, 0) && abs_sqrt2_le_one(a, b) {
                    steps.push((a, b));
                }
            }
        }
        ZSqrt2Points { m, steps }
    }

    pub fn steps(&self) -> &[(i64, i64)] {
        &self.steps
    }

    pub fn key(a: i64, b: i64) -> VertexKey {
        VertexKey::from_ints(&[a, b])
    }

    pub fn decode(v: &VertexKey) -> Result<(i64, i64), SpaceError> {
        let p = v.to_ints(2).ok_or_else(|| SpaceError::BadKey(v.clone()))?;
        Ok((p[0], p[1]))
    }
}

impl PointOracle for ZSqrt2Points {
    fn candidates(&self, p: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let (a, b) = ZSqrt2Points::decode(p)?;
        Ok(self.steps.iter().map(|&(x, y)| ZSqrt2Points::key(a + x, b + y)).collect())
    }

    fn within_one(&self, p: &VertexKey, q: &VertexKey) -> Result<bool, SpaceError> {
        let (a, b) = ZSqrt2Points::decode(p)?;
        let (c, d) = ZSqrt2Points::decode(q)?;
        let (x, y) = (c - a, d - b);
        Ok(x.abs() <= self.m && y.abs() <= self.m && abs_sqrt2_le_one(x, y))
    }

    fn describe(&self, p: &VertexKey) -> String {
        match ZSqrt2Points::decode(p) {
            Ok((a, b)) => format!("{a}{:+}r2", b),
            Err(_) => p.to_hex(),
        }
    }
}

/// The integers 0, 1, -1, ... as points of the real line.
pub struct IntegerPoints;

impl PointOracle for IntegerPoints {
    fn candidates(&self, p: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let n = p.to_int().ok_or_else(|| SpaceError::BadKey(p.clone()))?;
        Ok(vec![VertexKey::from_int(n - 1), VertexKey::from_int(n + 1)])
    }

    fn within_one(&self, p: &VertexKey, q: &VertexKey) -> Result<bool, SpaceError> {
        let a = p.to_int().ok_or_else(|| SpaceError::BadKey(p.clone()))?;
        let b = q.to_int().ok_or_else(|| SpaceError::BadKey(q.clone()))?;
        Ok(a.abs_diff(b) <= 1)
    }
}

/// Graphified Z + Z sqrt2 with steps truncated at `m`, based at 0. The space
/// is quasi-isometric to the real line, hence carries the quasitree claim.
pub fn graphified_zsqrt2(m: i64) -> LazySpace {
    graphify(format!("graphified_zsqrt2(M={m})"), ZSqrt2Points::key(0, 0), Arc::new(ZSqrt2Points::new(m))).with_quasitree_claim(true)
}
