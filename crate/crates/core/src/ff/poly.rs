use std::fmt;

/// Arithmetic in the prime field Z/q.
#[inline]
pub(crate) fn fadd(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + b as u64) % q as u64) as u32
}

#[inline]
pub(crate) fn fsub(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 + q as u64 - b as u64) % q as u64) as u32
}

#[inline]
pub(crate) fn fmul(a: u32, b: u32, q: u32) -> u32 {
    ((a as u64 * b as u64) % q as u64) as u32
}

pub(crate) fn fpow(mut a: u32, mut e: u64, q: u32) -> u32 {
    let mut r = 1 % q;
    while e > 0 {
        if e & 1 == 1 {
            r = fmul(r, a, q);
        }
        a = fmul(a, a, q);
        e >>= 1;
    }
    r
}

/// Inverse of a nonzero element (Fermat).
#[inline]
pub(crate) fn finv(a: u32, q: u32) -> u32 {
    debug_assert!(a % q != 0);
    fpow(a, q as u64 - 2, q)
}

pub fn is_prime(q: u32) -> bool {
    if q < 2 {
        return false;
    }
    let mut d = 2u32;
    while (d as u64) * (d as u64) <= q as u64 {
        if q % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Polynomial over Z/q, coefficients ascending, no trailing zeros. The zero
/// polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PolyFq {
    q: u32,
    coeffs: Vec<u32>,
}

impl PolyFq {
    pub fn new(q: u32, coeffs: Vec<u32>) -> Self {
        let mut p = PolyFq { q, coeffs: coeffs.into_iter().map(|c| c % q).collect() };
        p.trim();
        p
    }

    /// Coefficients given as signed integers, reduced mod q.
    pub fn from_signed(q: u32, coeffs: &[i64]) -> Self {
        PolyFq::new(q, coeffs.iter().map(|&c| c.rem_euclid(q as i64) as u32).collect())
    }

    pub fn zero(q: u32) -> Self {
        PolyFq { q, coeffs: Vec::new() }
    }

    pub fn one(q: u32) -> Self {
        PolyFq::constant(q, 1)
    }

    pub fn constant(q: u32, c: u32) -> Self {
        PolyFq::new(q, vec![c])
    }

    pub fn monomial(q: u32, degree: usize, c: u32) -> Self {
        let mut coeffs = vec![0; degree + 1];
        coeffs[degree] = c;
        PolyFq::new(q, coeffs)
    }

    /// The indeterminate.
    pub fn x(q: u32) -> Self {
        PolyFq::monomial(q, 1, 1)
    }

    fn trim(&mut self) {
        while self.coeffs.last() == Some(&0) {
            self.coeffs.pop();
        }
    }

    pub fn modulus(&self) -> u32 {
        self.q
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    /// Order of vanishing at 0: the lowest degree with a nonzero coefficient.
    pub fn ord(&self) -> Option<usize> {
        self.coeffs.iter().position(|&c| c != 0)
    }

    pub fn add(&self, o: &PolyFq) -> PolyFq {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyFq::new(self.q, (0..n).map(|i| fadd(self.coeff(i), o.coeff(i), self.q)).collect())
    }

    pub fn sub(&self, o: &PolyFq) -> PolyFq {
        let n = self.coeffs.len().max(o.coeffs.len());
        PolyFq::new(self.q, (0..n).map(|i| fsub(self.coeff(i), o.coeff(i), self.q)).collect())
    }

    pub fn neg(&self) -> PolyFq {
        PolyFq::zero(self.q).sub(self)
    }

    pub fn scale(&self, c: u32) -> PolyFq {
        PolyFq::new(self.q, self.coeffs.iter().map(|&a| fmul(a, c, self.q)).collect())
    }

    pub fn mul(&self, o: &PolyFq) -> PolyFq {
        if self.is_zero() || o.is_zero() {
            return PolyFq::zero(self.q);
        }
        let q = self.q as u64;
        let mut acc = vec![0u64; self.coeffs.len() + o.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in o.coeffs.iter().enumerate() {
                acc[i + j] = (acc[i + j] + a as u64 * b as u64) % q;
            }
        }
        PolyFq::new(self.q, acc.into_iter().map(|c| c as u32).collect())
    }

    /// Multiplication by x^k.
    pub fn shift_up(&self, k: usize) -> PolyFq {
        if self.is_zero() {
            return self.clone();
        }
        let mut coeffs = vec![0; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyFq { q: self.q, coeffs }
    }

    /// Division by x^k, dropping any lower terms.
    pub fn shift_down(&self, k: usize) -> PolyFq {
        PolyFq::new(self.q, self.coeffs.iter().skip(k).copied().collect())
    }

    /// x^d p(1/x) for d >= deg p.
    pub fn reversed(&self, d: usize) -> PolyFq {
        let mut coeffs = vec![0; d + 1];
        for (i, &c) in self.coeffs.iter().enumerate() {
            coeffs[d - i] = c;
        }
        PolyFq::new(self.q, coeffs)
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, d: &PolyFq) -> (PolyFq, PolyFq) {
        let dd = d.degree().expect("division by the zero polynomial");
        let inv = finv(d.lead(), self.q);
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (PolyFq::zero(self.q), self.clone());
        }
        let mut quot = vec![0u32; rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = fmul(rem[i + dd], inv, self.q);
            quot[i] = c;
            if c == 0 {
                continue;
            }
            for (j, &b) in d.coeffs.iter().enumerate() {
                rem[i + j] = fsub(rem[i + j], fmul(c, b, self.q), self.q);
            }
        }
        (PolyFq::new(self.q, quot), PolyFq::new(self.q, rem))
    }

    pub fn monic(&self) -> PolyFq {
        if self.is_zero() {
            return self.clone();
        }
        self.scale(finv(self.lead(), self.q))
    }

    /// Monic greatest common divisor.
    pub fn gcd(&self, o: &PolyFq) -> PolyFq {
        let (mut a, mut b) = (self.clone(), o.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).1;
            a = b;
            b = r;
        }
        a.monic()
    }

    pub fn pow(&self, mut e: u32) -> PolyFq {
        let mut base = self.clone();
        let mut acc = PolyFq::one(self.q);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }
}

impl fmt::Debug for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for PolyFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate() {
            if c == 0 {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            match (i, c) {
                (0, c) => write!(f, "{c}")?,
                (1, 1) => f.write_str("t")?,
                (1, c) => write!(f, "{c}t")?,
                (i, 1) => write!(f, "t^{i}")?,
                (i, c) => write!(f, "{c}t^{i}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn division_identity() {
        let a = PolyFq::from_signed(5, &[3, 0, 1, 4, 2]);
        let b = PolyFq::from_signed(5, &[1, 2]);
        let (qq, r) = a.div_rem(&b);
        assert_eq!(qq.mul(&b).add(&r), a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_products() {
        let f = PolyFq::from_signed(3, &[1, 1]);
        let g = PolyFq::from_signed(3, &[2, 0, 1]);
        let h = PolyFq::from_signed(3, &[1, 0, 0, 1]);
        assert_eq!(f.mul(&g).gcd(&f.mul(&h)), f.mul(&g.gcd(&h)).monic());
    }

    #[test]
    fn primes() {
        let ps: Vec<u32> = (0..20).filter(|&n| is_prime(n)).collect();
        assert_eq!(ps, vec![2, 3, 5, 7, 11, 13, 17, 19]);
    }
}
