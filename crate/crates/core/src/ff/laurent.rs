use std::fmt;

use super::poly::{fadd, finv, fmul, fsub, PolyFq};
use super::rational::{RatFq, Uniformizer};

/// Finite Laurent polynomial sum c_i pi^(low + i) over F_q, normalized so
/// that the first and last stored coefficients are nonzero.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Laurent {
    q: u32,
    low: i64,
    coeffs: Vec<u32>,
}

impl Laurent {
    pub fn zero(q: u32) -> Self {
        Laurent { q, low: 0, coeffs: Vec::new() }
    }

    pub fn new(q: u32, low: i64, coeffs: Vec<u32>) -> Self {
        let mut l = Laurent { q, low, coeffs: coeffs.into_iter().map(|c| c % q).collect() };
        l.normalize();
        l
    }

    pub fn monomial(q: u32, degree: i64, c: u32) -> Self {
        Laurent::new(q, degree, vec![c])
    }

    /// From (degree, coefficient) pairs; repeated degrees are summed.
    pub fn from_terms(q: u32, terms: &[(i64, u32)]) -> Self {
        let mut acc = Laurent::zero(q);
        for &(d, c) in terms {
            acc = acc.add(&Laurent::monomial(q, d, c));
        }
        acc
    }

    pub fn from_poly(p: &PolyFq) -> Self {
        Laurent::new(p.modulus(), 0, p.coeffs().to_vec())
    }

    fn normalize(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
        let lead = self.coeffs.iter().position(|&c| c != 0).unwrap_or(self.coeffs.len());
        if lead == self.coeffs.len() {
            self.coeffs.clear();
            self.low = 0;
        } else if lead > 0 {
            self.coeffs.drain(..lead);
            self.low += lead as i64;
        }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Lowest degree present; `None` for zero.
    pub fn valuation(&self) -> Option<i64> {
        (!self.is_zero()).then_some(self.low)
    }

    /// One past the highest degree present; `None` for zero.
    pub fn top(&self) -> Option<i64> {
        (!self.is_zero()).then(|| self.low + self.coeffs.len() as i64)
    }

    pub fn coeff(&self, degree: i64) -> u32 {
        let i = degree - self.low;
        if i < 0 {
            return 0;
        }
        self.coeffs.get(i as usize).copied().unwrap_or(0)
    }

    /// Nonzero terms in increasing degree.
    pub fn terms(&self) -> impl Iterator<Item = (i64, u32)> + '_ {
        self.coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(move |(i, &c)| (self.low + i as i64, c))
    }

    pub(crate) fn raw(&self) -> (i64, &[u32]) {
        (self.low, &self.coeffs)
    }

    pub fn add(&self, o: &Laurent) -> Laurent {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        let low = self.low.min(o.low);
        let high = self.top().unwrap().max(o.top().unwrap());
        let coeffs = (low..high).map(|d| fadd(self.coeff(d), o.coeff(d), self.q)).collect();
        Laurent::new(self.q, low, coeffs)
    }

    pub fn sub(&self, o: &Laurent) -> Laurent {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Laurent {
        Laurent { q: self.q, low: self.low, coeffs: self.coeffs.iter().map(|&c| fsub(0, c, self.q)).collect() }
    }

    pub fn mul(&self, o: &Laurent) -> Laurent {
        if self.is_zero() || o.is_zero() {
            return Laurent::zero(self.q);
        }
        let q = self.q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % q;
            }
        }
        Laurent::new(self.q, self.low + o.low, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Keeps only the terms of degree < `cutoff`.
    pub fn truncate_below(&self, cutoff: i64) -> Laurent {
        if self.is_zero() || cutoff <= self.low {
            return Laurent::zero(self.q);
        }
        let keep = ((cutoff - self.low) as usize).min(self.coeffs.len());
        Laurent::new(self.q, self.low, self.coeffs[..keep].to_vec())
    }

    /// The represented element of F_q(t), reading pi as the local
    /// uniformizer of `u`.
    pub fn to_ratfq(&self, u: Uniformizer) -> RatFq {
        let q = self.q;
        let pi = match u {
            Uniformizer::T => RatFq::t(q),
            Uniformizer::Inf => RatFq::t(q).inv().expect("t is nonzero"),
        };
        let mut acc = RatFq::zero(q);
        for (d, c) in self.terms() {
            let term = pi.pow(d as i32).expect("pi is nonzero").mul(&RatFq::constant(q, c as i64));
            acc = acc.add(&term);
        }
        acc
    }
}

/// Power series expansion of num/den (with den nonzero), as a Laurent
/// polynomial keeping the terms of degree < `cutoff`.
pub fn expand_quotient(num: &Laurent, den: &Laurent, cutoff: i64) -> Laurent {
    let q = num.q;
    assert!(!den.is_zero(), "expansion of a quotient by zero");
    if num.is_zero() {
        return Laurent::zero(q);
    }
    let (nl, nc) = num.raw();
    let (dl, dc) = den.raw();
    let low = nl - dl;
    if cutoff <= low {
        return Laurent::zero(q);
    }
    let len = (cutoff - low) as usize;
    let inv0 = finv(dc[0], q);
    // long division of power series: out = nc / dc
    let mut rem: Vec<u32> = nc.iter().copied().take(len).collect();
    rem.resize(len, 0);
    let mut out = vec![0u32; len];
    for i in 0..len {
        let c = fmul(rem[i], inv0, q);
        out[i] = c;
        if c == 0 {
            continue;
        }
        for (j, &b) in dc.iter().enumerate() {
            if i + j >= len {
                break;
            }
            rem[i + j] = fsub(rem[i + j], fmul(c, b, q), q);
        }
    }
    Laurent::new(q, low, out)
}

/// Expansion of f in the uniformizer of `u`, keeping the terms of degree
/// less than `cutoff`.
pub fn laurent_expand(f: &RatFq, u: Uniformizer, cutoff: i64) -> Laurent {
    let local = f.to_local(u);
    expand_quotient(&Laurent::from_poly(local.num()), &Laurent::from_poly(local.den()), cutoff)
}

impl fmt::Debug for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for Laurent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .terms()
            .map(|(d, c)| match (d, c) {
                (0, c) => c.to_string(),
                (d, 1) => format!("p^{d}"),
                (d, c) => format!("{c}p^{d}"),
            })
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn geometric_series() {
        for q in [2, 3, 5] {
            let f = RatFq::parse("1/(1-t)", q).unwrap();
            let e = laurent_expand(&f, Uniformizer::T, 4);
            assert_eq!(e, Laurent::new(q, 0, vec![1, 1, 1, 1]));
        }
    }

    #[test]
    fn t_at_infinity() {
        let e = laurent_expand(&RatFq::t(3), Uniformizer::Inf, 5);
        assert_eq!(e, Laurent::monomial(3, -1, 1));
    }

    #[test]
    fn exact_division_of_polynomial_by_t() {
        let f = RatFq::parse("(t^2+1)/t", 5).unwrap();
        let e = laurent_expand(&f, Uniformizer::T, 2);
        assert_eq!(e.terms().collect::<Vec<_>>(), vec![(-1, 1), (1, 1)]);
    }

    #[test]
    fn resummation_agrees_modulo_cutoff() {
        let q = 3;
        let f = RatFq::parse("(2t^2+t+1)/(t^3+2t+1)", q).unwrap();
        for u in [Uniformizer::T, Uniformizer::Inf] {
            let cutoff = 7;
            let e = laurent_expand(&f, u, cutoff);
            let diff = f.sub(&e.to_ratfq(u));
            assert!(diff.valuation(u).map_or(true, |v| v >= cutoff));
        }
    }

    #[test]
    fn truncation() {
        let l = Laurent::new(2, -2, vec![1, 0, 1, 1]);
        assert_eq!(l.truncate_below(1), Laurent::new(2, -2, vec![1, 0, 1]));
        assert!(l.truncate_below(-2).is_zero());
        assert_eq!(l.truncate_below(10), l);
    }
}
