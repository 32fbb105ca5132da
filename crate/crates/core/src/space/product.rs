use std::sync::Arc;

use super::ball::Ball;
use super::key::VertexKey;
use super::lazy::{LazySpace, NeighborOracle, SpaceError};

/// A vertex of a product: one coordinate per factor.
pub type Point = Vec<VertexKey>;

/// Finite product of lazy graphs with the l2 combination of the factor
/// path metrics. Distances are reported squared, as exact integers.
#[derive(Clone, Debug)]
pub struct ProductSpace {
    pub factors: Vec<LazySpace>,
}

impl ProductSpace {
    pub fn new(factors: Vec<LazySpace>) -> Self {
        ProductSpace { factors }
    }

    pub fn single(space: LazySpace) -> Self {
        ProductSpace { factors: vec![space] }
    }

    pub fn arity(&self) -> usize {
        self.factors.len()
    }

    pub fn name(&self) -> String {
        self.factors.iter().map(|f| f.name.as_str()).collect::<Vec<_>>().join(" x ")
    }

    pub fn basepoint(&self) -> Point {
        self.factors.iter().map(|f| f.basepoint.clone()).collect()
    }

    fn check_arity(&self, p: &[VertexKey]) -> Result<(), SpaceError> {
        if p.len() != self.factors.len() {
            return Err(SpaceError::Arity { expected: self.factors.len(), found: p.len() });
        }
        Ok(())
    }

    /// Per-factor exact distances (each capped at `cap`).
    pub fn factor_distances(&self, x: &[VertexKey], y: &[VertexKey], cap: u32) -> Result<Vec<u64>, SpaceError> {
        self.check_arity(x)?;
        self.check_arity(y)?;
        self.factors.iter().zip(x.iter().zip(y)).map(|(f, (a, b))| f.distance(a, b, cap)).collect()
    }

    /// Exact squared l2 distance in the whole product.
    pub fn distance_sq(&self, x: &[VertexKey], y: &[VertexKey], cap: u32) -> Result<u64, SpaceError> {
        Ok(self.factor_distances(x, y, cap)?.iter().map(|d| d * d).sum())
    }

    /// `Some(d^2)` when `d <= radius`, `None` when provably larger.
    pub fn distance_sq_within(&self, x: &[VertexKey], y: &[VertexKey], radius: u32) -> Result<Option<u64>, SpaceError> {
        self.check_arity(x)?;
        self.check_arity(y)?;
        let mut total = 0u64;
        for (f, (a, b)) in self.factors.iter().zip(x.iter().zip(y)) {
            match f.distance_within(a, b, radius)? {
                Some(d) => total += d * d,
                None => return Ok(None),
            }
            if total > (radius as u64).pow(2) {
                return Ok(None);
            }
        }
        Ok(Some(total))
    }

    /// The 1-skeleton of the product cube complex: two tuples are adjacent
    /// when they differ in exactly one coordinate, by an edge of that factor.
    pub fn skeleton(&self) -> LazySpace {
        let base = VertexKey::tuple(&self.basepoint());
        let oracle = SkeletonOracle { factors: self.factors.clone() };
        let valence = self
            .factors
            .iter()
            .map(|f| f.valence_bound)
            .try_fold(0usize, |acc, v| v.map(|v| acc + v));
        let mut space = LazySpace::new(format!("skeleton({})", self.name()), base, Arc::new(oracle));
        if let Some(v) = valence {
            space = space.with_valence_bound(v);
        }
        space
    }
}

/// Squared product distance from per-factor balls: every coordinate pair
/// must be certified in its own ball.
pub fn product_distance(product: &ProductSpace, x: &[VertexKey], y: &[VertexKey], balls: &[Ball]) -> Result<u64, SpaceError> {
    product.check_arity(x)?;
    product.check_arity(y)?;
    if balls.len() != product.arity() {
        return Err(SpaceError::Arity { expected: product.arity(), found: balls.len() });
    }
    let mut total = 0u64;
    for ((a, b), ball) in x.iter().zip(y).zip(balls) {
        let (d, certified) = ball.certified_distance(a, b)?;
        if !certified {
            return Err(SpaceError::Uncertified { u: a.clone(), v: b.clone(), cap: ball.radius });
        }
        total += (d as u64).pow(2);
    }
    Ok(total)
}

struct SkeletonOracle {
    factors: Vec<LazySpace>,
}

impl SkeletonOracle {
    fn split(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        match v.untuple() {
            Some(parts) if parts.len() == self.factors.len() => Ok(parts),
            _ => Err(SpaceError::BadKey(v.clone())),
        }
    }
}

impl NeighborOracle for SkeletonOracle {
    fn neighbors(&self, v: &VertexKey) -> Result<Vec<VertexKey>, SpaceError> {
        let parts = self.split(v)?;
        let mut out = Vec::new();
        for (i, f) in self.factors.iter().enumerate() {
            for n in f.neighbors(&parts[i])? {
                let mut q = parts.clone();
                q[i] = n;
                out.push(VertexKey::tuple(&q));
            }
        }
        Ok(out)
    }

    fn distance_hint(&self, u: &VertexKey, v: &VertexKey) -> Option<u64> {
        let (a, b) = (self.split(u).ok()?, self.split(v).ok()?);
        let mut total = 0;
        for (f, (x, y)) in self.factors.iter().zip(a.iter().zip(&b)) {
            total += f.oracle().distance_hint(x, y)?;
        }
        Some(total)
    }

    fn describe(&self, v: &VertexKey) -> String {
        match self.split(v) {
            Ok(parts) => {
                let inner: Vec<String> = self.factors.iter().zip(&parts).map(|(f, p)| f.describe(p)).collect();
                format!("({})", inner.join(", "))
            }
            Err(_) => v.to_hex(),
        }
    }
}
