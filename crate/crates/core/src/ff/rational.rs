use std::fmt;

use serde::{Deserialize, Serialize};

use super::poly::{finv, is_prime, PolyFq};
use super::FfError;

/// The two valuations used for Bruhat–Tits trees: `T` has uniformizer t,
/// `Inf` has uniformizer 1/t.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Uniformizer {
    #[serde(rename = "t")]
    T,
    #[serde(rename = "inf")]
    Inf,
}

impl Uniformizer {
    pub fn tag(self) -> u8 {
        match self {
            Uniformizer::T => 0,
            Uniformizer::Inf => 1,
        }
    }

    pub fn from_tag(tag: u8) -> Option<Self> {
        match tag {
            0 => Some(Uniformizer::T),
            1 => Some(Uniformizer::Inf),
            _ => None,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            Uniformizer::T => "t",
            Uniformizer::Inf => "inf",
        }
    }

    pub fn parse(s: &str) -> Option<Self> {
        match s.trim() {
            "t" | "v_t" | "0" => Some(Uniformizer::T),
            "inf" | "v_inf" | "infinity" | "1/t" => Some(Uniformizer::Inf),
            _ => None,
        }
    }
}

/// Element of F_q(t), stored as a reduced fraction with monic denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFq {
    num: PolyFq,
    den: PolyFq,
}

impl RatFq {
    pub fn new(num: PolyFq, den: PolyFq) -> Result<Self, FfError> {
        if den.is_zero() {
            return Err(FfError::DivisionByZero);
        }
        let q = num.modulus();
        if num.is_zero() {
            return Ok(RatFq::zero(q));
        }
        let g = num.gcd(&den);
        let (num, _) = num.div_rem(&g);
        let (den, _) = den.div_rem(&g);
        let c = finv(den.lead(), q);
        Ok(RatFq { num: num.scale(c), den: den.scale(c) })
    }

    pub fn from_poly(p: PolyFq) -> Self {
        let q = p.modulus();
        RatFq { num: p, den: PolyFq::one(q) }
    }

    pub fn zero(q: u32) -> Self {
        RatFq { num: PolyFq::zero(q), den: PolyFq::one(q) }
    }

    pub fn one(q: u32) -> Self {
        RatFq::from_poly(PolyFq::one(q))
    }

    pub fn constant(q: u32, c: i64) -> Self {
        RatFq::from_poly(PolyFq::from_signed(q, &[c]))
    }

    pub fn t(q: u32) -> Self {
        RatFq::from_poly(PolyFq::x(q))
    }

    pub fn modulus(&self) -> u32 {
        self.num.modulus()
    }

    pub fn num(&self) -> &PolyFq {
        &self.num
    }

    pub fn den(&self) -> &PolyFq {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn add(&self, o: &RatFq) -> RatFq {
        let num = self.num.mul(&o.den).add(&o.num.mul(&self.den));
        RatFq::new(num, self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn sub(&self, o: &RatFq) -> RatFq {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> RatFq {
        RatFq { num: self.num.neg(), den: self.den.clone() }
    }

    pub fn mul(&self, o: &RatFq) -> RatFq {
        RatFq::new(self.num.mul(&o.num), self.den.mul(&o.den)).expect("nonzero denominators")
    }

    pub fn inv(&self) -> Result<RatFq, FfError> {
        RatFq::new(self.den.clone(), self.num.clone())
    }

    pub fn div(&self, o: &RatFq) -> Result<RatFq, FfError> {
        Ok(self.mul(&o.inv()?))
    }

    pub fn pow(&self, e: i32) -> Result<RatFq, FfError> {
        let base = if e < 0 { self.inv()? } else { self.clone() };
        let k = e.unsigned_abs();
        Ok(RatFq { num: base.num.pow(k), den: base.den.pow(k) })
    }

    /// Valuation at the chosen place; `None` for zero (valuation +infinity).
    pub fn valuation(&self, u: Uniformizer) -> Option<i64> {
        if self.is_zero() {
            return None;
        }
        Some(match u {
            Uniformizer::T => self.num.ord()? as i64 - self.den.ord()? as i64,
            Uniformizer::Inf => self.den.degree()? as i64 - self.num.degree()? as i64,
        })
    }

    /// The same element written in the local uniformizer. For `T` this is
    /// the identity; for `Inf` it is the substitution t -> 1/s, so that
    /// f(1/s) = s^(deg D - deg N) rev(N) / rev(D).
    pub fn to_local(&self, u: Uniformizer) -> RatFq {
        match u {
            Uniformizer::T => self.clone(),
            Uniformizer::Inf => {
                if self.is_zero() {
                    return self.clone();
                }
                let dn = self.num.degree().unwrap_or(0);
                let dd = self.den.degree().unwrap_or(0);
                let rn = self.num.reversed(dn);
                let rd = self.den.reversed(dd);
                let (num, den) = if dd >= dn { (rn.shift_up(dd - dn), rd) } else { (rn, rd.shift_up(dn - dd)) };
                RatFq::new(num, den).expect("reversed denominator is nonzero")
            }
        }
    }

    /// Parses expressions such as `1`, `t+1`, `2t^3 - t`, `1/t`,
    /// `(t^2+1)/(t-1)` over F_q.
    pub fn parse(s: &str, q: u32) -> Result<RatFq, FfError> {
        if !is_prime(q) {
            return Err(FfError::NotPrime(q));
        }
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        let bad = || FfError::Parse(s.clone());
        let mut depth = 0i32;
        let mut split = None;
        for (i, c) in s.char_indices() {
            match c {
                '(' => depth += 1,
                ')' => depth -= 1,
                '/' if depth == 0 => {
                    if split.is_some() {
                        return Err(bad());
                    }
                    split = Some(i);
                }
                _ => {}
            }
            if depth < 0 {
                return Err(bad());
            }
        }
        if depth != 0 {
            return Err(bad());
        }
        let strip = |x: &str| -> String {
            let x = x.trim();
            if x.starts_with('(') && x.ends_with(')') {
                x[1..x.len() - 1].to_string()
            } else {
                x.to_string()
            }
        };
        match split {
            None => Ok(RatFq::from_poly(parse_poly(&strip(&s), q).ok_or_else(bad)?)),
            Some(i) => {
                let num = parse_poly(&strip(&s[..i]), q).ok_or_else(bad)?;
                let den = parse_poly(&strip(&s[i + 1..]), q).ok_or_else(bad)?;
                RatFq::new(num, den)
            }
        }
    }
}

fn parse_poly(s: &str, q: u32) -> Option<PolyFq> {
    if s.is_empty() {
        return None;
    }
    let mut terms = Vec::new();
    let mut start = 0;
    for (i, c) in s.char_indices() {
        if (c == '+' || c == '-') && i > start {
            terms.push(&s[start..i]);
            start = i;
        }
    }
    terms.push(&s[start..]);
    let mut acc = PolyFq::zero(q);
    for term in terms {
        let (sign, body) = match term.as_bytes().first()? {
            b'+' => (1i64, &term[1..]),
            b'-' => (-1i64, &term[1..]),
            _ => (1i64, term),
        };
        let (coef, deg) = match body.find('t') {
            None => (body.parse::<i64>().ok()?, 0usize),
            Some(pos) => {
                let c = body[..pos].trim_end_matches('*');
                let c = if c.is_empty() { 1 } else { c.parse::<i64>().ok()? };
                let rest = &body[pos + 1..];
                let d = if rest.is_empty() { 1 } else { rest.strip_prefix('^')?.parse::<usize>().ok()? };
                (c, d)
            }
        };
        let c = (sign * coef).rem_euclid(q as i64) as u32;
        acc = acc.add(&PolyFq::monomial(q, deg, c));
    }
    Some(acc)
}

impl fmt::Debug for RatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for RatFq {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.degree() == Some(0) {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduced_with_monic_denominator() {
        let q = 5;
        let f = RatFq::new(PolyFq::from_signed(q, &[0, 2]), PolyFq::from_signed(q, &[0, 0, 3])).unwrap();
        assert_eq!(f.num().coeffs(), &[4]);
        assert_eq!(f.den().coeffs(), &[0, 1]);
    }

    #[test]
    fn valuations_of_simple_elements() {
        let q = 3;
        let f = RatFq::parse("(t^2+1)/t", q).unwrap();
        assert_eq!(f.valuation(Uniformizer::T), Some(-1));
        assert_eq!(f.valuation(Uniformizer::Inf), Some(-1));
        assert_eq!(RatFq::t(q).valuation(Uniformizer::Inf), Some(-1));
        assert_eq!(RatFq::zero(q).valuation(Uniformizer::T), None);
    }

    #[test]
    fn local_form_at_infinity() {
        let q = 2;
        // t = 1/s
        let t = RatFq::t(q).to_local(Uniformizer::Inf);
        assert_eq!(t, RatFq::parse("1/t", q).unwrap());
        // (t+1)/t^2 = s + s^2
        let f = RatFq::parse("(t+1)/t^2", q).unwrap().to_local(Uniformizer::Inf);
        assert_eq!(f, RatFq::parse("t+t^2", q).unwrap());
    }

    #[test]
    fn parser_accepts_signed_terms() {
        let f = RatFq::parse("2t^3 - t + 4", 7).unwrap();
        assert_eq!(f.num().coeffs(), &[4, 6, 0, 2]);
        assert!(RatFq::parse("1/0", 7).is_err());
        assert!(RatFq::parse("t^", 7).is_err());
        assert!(RatFq::parse("t", 4).is_err());
    }
}
