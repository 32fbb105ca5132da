use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use serde::{Serialize, Serializer};

use crate::space::{LazySpace, Point, ProductSpace, SpaceError, VertexKey};

/// Exact nonnegative number sqrt(num_sq) / den, the shape of every l2
/// displacement ratio that appears here.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct RootRatio {
    pub num_sq: u64,
    pub den: u64,
}

impl RootRatio {
    pub fn new(num_sq: u64, den: u64) -> Self {
        assert!(den > 0, "zero denominator");
        let (mut n, mut d) = (num_sq, den);
        if n == 0 {
            return RootRatio { num_sq: 0, den: 1 };
        }
        let mut p = 2u64;
        while p <= d {
            while d % p == 0 && n % (p * p) == 0 {
                d /= p;
                n /= p * p;
            }
            p += 1;
        }
        RootRatio { num_sq: n, den: d }
    }

    pub fn zero() -> Self {
        RootRatio { num_sq: 0, den: 1 }
    }

    pub fn integer(k: u64) -> Self {
        RootRatio { num_sq: k * k, den: 1 }
    }

    /// The rational k / d.
    pub fn ratio(k: u64, d: u64) -> Self {
        RootRatio::new(k * k, d)
    }

    pub fn is_zero(&self) -> bool {
        self.num_sq == 0
    }

    pub fn value(&self) -> f64 {
        (self.num_sq as f64).sqrt() / self.den as f64
    }

    /// Multiplication by a positive integer.
    pub fn scale(&self, k: u64) -> Self {
        RootRatio::new(self.num_sq * k * k, self.den)
    }

    pub fn divide(&self, k: u64) -> Self {
        RootRatio::new(self.num_sq, self.den * k)
    }

    /// The value when it is rational, as (numerator, denominator).
    pub fn as_rational(&self) -> Option<(u64, u64)> {
        let r = isqrt(self.num_sq);
        (r * r == self.num_sq).then(|| {
            let g = gcd(r, self.den);
            (r / g, self.den / g)
        })
    }
}

impl Ord for RootRatio {
    fn cmp(&self, o: &Self) -> Ordering {
        let lhs = self.num_sq as u128 * (o.den as u128).pow(2);
        let rhs = o.num_sq as u128 * (self.den as u128).pow(2);
        lhs.cmp(&rhs)
    }
}

impl PartialOrd for RootRatio {
    fn partial_cmp(&self, o: &Self) -> Option<Ordering> {
        Some(self.cmp(o))
    }
}

impl fmt::Display for RootRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.as_rational() {
            Some((n, 1)) => write!(f, "{n}"),
            Some((n, d)) => write!(f, "{n}/{d}"),
            None if self.den == 1 => write!(f, "sqrt({})", self.num_sq),
            None => write!(f, "sqrt({})/{}", self.num_sq, self.den),
        }
    }
}

impl Serialize for RootRatio {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RootRatio", 3)?;
        st.serialize_field("exact", &self.to_string())?;
        st.serialize_field("num_sq", &self.num_sq)?;
        st.serialize_field("den", &self.den)?;
        st.end()
    }
}

pub(crate) fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

pub(crate) fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// sqrt(a) <= sqrt(b) + sqrt(c), decided exactly.
pub fn root_sum_ge(a: u64, b: u64, c: u64) -> bool {
    let (a, b, c) = (a as i128, b as i128, c as i128);
    let lhs = a - b - c;
    lhs <= 0 || lhs * lhs <= 4 * b * c
}

/// Distances from one fixed vertex, grown on demand by breadth-first
/// search, or read from the closed form when the space has one.
struct GrowingBall {
    space: LazySpace,
    center: VertexKey,
    dist: HashMap<VertexKey, u32>,
    frontier: Vec<VertexKey>,
    radius: u32,
}

impl GrowingBall {
    fn new(space: LazySpace, center: VertexKey) -> Self {
        let mut dist = HashMap::new();
        dist.insert(center.clone(), 0);
        GrowingBall { space, frontier: vec![center.clone()], center, dist, radius: 0 }
    }

    fn within(&mut self, v: &VertexKey, cap: u32) -> Result<Option<u64>, SpaceError> {
        if let Some(d) = self.space.oracle().distance_hint(&self.center, v) {
            return Ok((d <= cap as u64).then_some(d));
        }
        loop {
            if let Some(&d) = self.dist.get(v) {
                return Ok((d <= cap).then_some(d as u64));
            }
            if self.radius >= cap || self.frontier.is_empty() {
                return Ok(None);
            }
            let mut next = Vec::new();
            for x in std::mem::take(&mut self.frontier) {
                for y in self.space.neighbors(&x)? {
                    if !self.dist.contains_key(&y) {
                        self.dist.insert(y.clone(), self.radius + 1);
                        next.push(y);
                    }
                }
            }
            self.frontier = next;
            self.radius += 1;
        }
    }
}

/// Exact squared l2 distances from a fixed base point of a product.
pub struct BaseMetric {
    product: ProductSpace,
    base: Point,
    balls: Vec<GrowingBall>,
}

impl BaseMetric {
    pub fn new(product: &ProductSpace, base: &Point) -> Self {
        let balls = product.factors.iter().zip(base).map(|(f, b)| GrowingBall::new(f.clone(), b.clone())).collect();
        BaseMetric { product: product.clone(), base: base.clone(), balls }
    }

    pub fn base(&self) -> &Point {
        &self.base
    }

    pub fn product(&self) -> &ProductSpace {
        &self.product
    }

    /// Factor distances to `x`, each at most `cap`.
    pub fn factor_distances(&mut self, x: &[VertexKey], cap: u32) -> Result<Vec<u64>, SpaceError> {
        if x.len() != self.balls.len() {
            return Err(SpaceError::Arity { expected: self.balls.len(), found: x.len() });
        }
        let mut out = Vec::with_capacity(x.len());
        for (ball, v) in self.balls.iter_mut().zip(x) {
            let d = ball
                .within(v, cap)?
                .ok_or_else(|| SpaceError::Uncertified { u: ball.center.clone(), v: v.clone(), cap })?;
            out.push(d);
        }
        Ok(out)
    }

    /// Squared distance from the base to `x`; each factor distance must be
    /// at most `cap`.
    pub fn distance_sq(&mut self, x: &[VertexKey], cap: u32) -> Result<u64, SpaceError> {
        Ok(self.factor_distances(x, cap)?.iter().map(|d| d * d).sum())
    }

    /// `Some(d^2)` when d <= radius, otherwise `None`.
    pub fn distance_sq_within(&mut self, x: &[VertexKey], radius: u32) -> Result<Option<u64>, SpaceError> {
        if x.len() != self.balls.len() {
            return Err(SpaceError::Arity { expected: self.balls.len(), found: x.len() });
        }
        let limit = (radius as u64).pow(2);
        let mut total = 0;
        for (ball, v) in self.balls.iter_mut().zip(x) {
            match ball.within(v, radius)? {
                Some(d) => total += d * d,
                None => return Ok(None),
            }
            if total > limit {
                return Ok(None);
            }
        }
        Ok(Some(total))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn root_ratio_order_and_display() {
        let a = RootRatio::new(2, 2);
        assert_eq!(a.to_string(), "sqrt(2)/2");
        assert!(RootRatio::ratio(1, 2) < a);
        assert!(a < RootRatio::integer(1));
        assert_eq!(RootRatio::new(8, 2), RootRatio::new(2, 1));
        assert_eq!(RootRatio::ratio(6, 4).to_string(), "3/2");
    }

    #[test]
    fn exact_root_triangle() {
        assert!(root_sum_ge(25, 9, 16));
        assert!(root_sum_ge(49, 9, 16));
        assert!(!root_sum_ge(50, 9, 16));
    }
}
