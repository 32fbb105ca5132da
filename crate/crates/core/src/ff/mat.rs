use std::fmt;

use super::bt::BTVertex;
use super::laurent::{expand_quotient, Laurent};
use super::rational::{RatFq, Uniformizer};
use super::FfError;

/// Invertible 2x2 matrix over F_q(t), rows (a b; c d).
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat2 {
    pub a: RatFq,
    pub b: RatFq,
    pub c: RatFq,
    pub d: RatFq,
}

impl Mat2 {
    pub fn new(a: RatFq, b: RatFq, c: RatFq, d: RatFq) -> Result<Self, FfError> {
        let m = Mat2 { a, b, c, d };
        if m.det().is_zero() {
            return Err(FfError::Singular);
        }
        Ok(m)
    }

    pub fn identity(q: u32) -> Self {
        Mat2 { a: RatFq::one(q), b: RatFq::zero(q), c: RatFq::zero(q), d: RatFq::one(q) }
    }

    pub fn diag(x: RatFq, y: RatFq) -> Result<Self, FfError> {
        let q = x.modulus();
        Mat2::new(x, RatFq::zero(q), RatFq::zero(q), y)
    }

    /// Entries given as expressions in t, row by row.
    pub fn parse(rows: [[&str; 2]; 2], q: u32) -> Result<Self, FfError> {
        Mat2::new(
            RatFq::parse(rows[0][0], q)?,
            RatFq::parse(rows[0][1], q)?,
            RatFq::parse(rows[1][0], q)?,
            RatFq::parse(rows[1][1], q)?,
        )
    }

    pub fn modulus(&self) -> u32 {
        self.a.modulus()
    }

    pub fn det(&self) -> RatFq {
        self.a.mul(&self.d).sub(&self.b.mul(&self.c))
    }

    pub fn mul(&self, o: &Mat2) -> Mat2 {
        Mat2 {
            a: self.a.mul(&o.a).add(&self.b.mul(&o.c)),
            b: self.a.mul(&o.b).add(&self.b.mul(&o.d)),
            c: self.c.mul(&o.a).add(&self.d.mul(&o.c)),
            d: self.c.mul(&o.b).add(&self.d.mul(&o.d)),
        }
    }

    pub fn inverse(&self) -> Mat2 {
        let inv = self.det().inv().expect("invertible by construction");
        Mat2 { a: self.d.mul(&inv), b: self.b.neg().mul(&inv), c: self.c.neg().mul(&inv), d: self.a.mul(&inv) }
    }

    pub fn pow(&self, e: i64) -> Mat2 {
        let mut base = if e < 0 { self.inverse() } else { self.clone() };
        let mut k = e.unsigned_abs();
        let mut acc = Mat2::identity(self.modulus());
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            k >>= 1;
        }
        acc
    }

    /// True when all entries are integral at the place and the determinant
    /// is a unit there, so the standard vertex is fixed.
    pub fn in_standard_stabilizer(&self, u: Uniformizer) -> bool {
        let integral = |x: &RatFq| x.valuation(u).map_or(true, |v| v >= 0);
        integral(&self.a) && integral(&self.b) && integral(&self.c) && integral(&self.d) && self.det().valuation(u) == Some(0)
    }
}

impl fmt::Debug for Mat2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[[{}, {}], [{}, {}]]", self.a, self.b, self.c, self.d)
    }
}

/// Unreduced local fraction num/den of Laurent polynomials in pi.
#[derive(Clone, Debug)]
struct LFrac {
    num: Laurent,
    den: Laurent,
}

impl LFrac {
    fn from_local(f: &RatFq) -> Self {
        LFrac { num: Laurent::from_poly(f.num()), den: Laurent::from_poly(f.den()) }
    }

    fn valuation(&self) -> Option<i64> {
        Some(self.num.valuation()? - self.den.valuation().expect("nonzero denominator"))
    }

    fn mul_laurent(&self, x: &Laurent) -> LFrac {
        LFrac { num: self.num.mul(x), den: self.den.clone() }
    }

    fn add(&self, o: &LFrac) -> LFrac {
        LFrac { num: self.num.mul(&o.den).add(&o.num.mul(&self.den)), den: self.den.mul(&o.den) }
    }
}

/// A matrix prepared for repeated action on one Bruhat–Tits tree: entries
/// are rewritten in the local uniformizer once.
#[derive(Clone, Debug)]
pub struct MatrixMap {
    pub matrix: Mat2,
    pub uniformizer: Uniformizer,
    local: [LFrac; 4],
    det_valuation: i64,
}

impl MatrixMap {
    pub fn new(matrix: Mat2, uniformizer: Uniformizer) -> Self {
        let local = [&matrix.a, &matrix.b, &matrix.c, &matrix.d].map(|x| LFrac::from_local(&x.to_local(uniformizer)));
        let det_valuation = matrix.det().valuation(uniformizer).expect("invertible");
        MatrixMap { matrix, uniformizer, local, det_valuation }
    }

    pub fn inverse(&self) -> MatrixMap {
        MatrixMap::new(self.matrix.inverse(), self.uniformizer)
    }

    pub fn modulus(&self) -> u32 {
        self.matrix.modulus()
    }

    /// Image of the lattice class [[pi^n, u], [0, 1]] under the matrix,
    /// brought back to canonical form.
    pub fn apply(&self, v: &BTVertex) -> BTVertex {
        let q = self.modulus();
        let [a, b, c, d] = &self.local;
        let pn = Laurent::monomial(q, v.n, 1);
        let top1 = a.mul_laurent(&pn);
        let bot1 = c.mul_laurent(&pn);
        let top2 = a.mul_laurent(&v.u).add(b);
        let bot2 = c.mul_laurent(&v.u).add(d);
        // pivot on the column whose lower entry has the smaller valuation
        let use_first = match (bot1.valuation(), bot2.valuation()) {
            (Some(x), Some(y)) => x < y,
            (Some(_), None) => true,
            _ => false,
        };
        let (top, bot) = if use_first { (top1, bot1) } else { (top2, bot2) };
        let vbot = bot.valuation().expect("an invertible matrix has a nonzero lower row");
        let n = self.det_valuation + v.n - 2 * vbot;
        let u = expand_quotient(&top.num.mul(&bot.den), &top.den.mul(&bot.num), n);
        BTVertex { n, u }
    }
}

/// Canonical image of a tree vertex under a matrix.
pub fn iwasawa_reduce(m: &Mat2, v: &BTVertex, u: Uniformizer) -> BTVertex {
    MatrixMap::new(m.clone(), u).apply(v)
}

#[cfg(test)]
mod tests {
    use super::super::bt::bt_distance;
    use super::*;

    #[test]
    fn identity_fixes_every_vertex() {
        let q = 3;
        let v = BTVertex::new(2, Laurent::from_terms(q, &[(-1, 2), (1, 1)]));
        for u in [Uniformizer::T, Uniformizer::Inf] {
            assert_eq!(iwasawa_reduce(&Mat2::identity(q), &v, u), v);
        }
    }

    #[test]
    fn diagonal_t_moves_standard_vertex_one_step() {
        let q = 2;
        let s = Mat2::parse([["t", "0"], ["0", "1"]], q).unwrap();
        let o = BTVertex::standard(q);
        let w = iwasawa_reduce(&s, &o, Uniformizer::T);
        assert_eq!(w, BTVertex::new(1, Laurent::zero(q)));
        assert_eq!(bt_distance(&o, &w), 1);
    }

    #[test]
    fn unipotent_fixes_standard_vertex_at_both_places() {
        let q = 2;
        let a = Mat2::parse([["1", "1"], ["0", "1"]], q).unwrap();
        for u in [Uniformizer::T, Uniformizer::Inf] {
            assert!(a.in_standard_stabilizer(u));
            assert_eq!(iwasawa_reduce(&a, &BTVertex::standard(q), u), BTVertex::standard(q));
        }
    }

    #[test]
    fn composition_law_on_fixed_examples() {
        let q = 3;
        let m = Mat2::parse([["t+1", "2"], ["1/t", "t^2"]], q).unwrap();
        let n = Mat2::parse([["0", "1"], ["1", "t"]], q).unwrap();
        let v = BTVertex::new(-1, Laurent::from_terms(q, &[(-4, 1), (-2, 2)]));
        for u in [Uniformizer::T, Uniformizer::Inf] {
            let lhs = iwasawa_reduce(&m.mul(&n), &v, u);
            let rhs = iwasawa_reduce(&m, &iwasawa_reduce(&n, &v, u), u);
            assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn singular_matrix_rejected() {
        assert_eq!(Mat2::parse([["t", "1"], ["t^2", "t"]], 5), Err(FfError::Singular));
    }
}
