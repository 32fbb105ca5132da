use std::collections::BTreeMap;

use num_complex::Complex64;
use serde::Serialize;

use crate::action::{GenSet, GroupWord};

/// An element of Z wr Z in the normal form z -> w^shift z + sum c_j w^j,
/// where w = e^(i theta); on the second factor R it is x -> x + shift.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct WreathElem {
    pub shift: i64,
    pub coeffs: BTreeMap<i64, i64>,
}

impl WreathElem {
    pub fn identity() -> Self {
        WreathElem::default()
    }

    pub fn t() -> Self {
        WreathElem { shift: 1, coeffs: BTreeMap::new() }
    }

    /// a_j = t^j a_0 t^-j, the translation by w^j.
    pub fn a(j: i64) -> Self {
        WreathElem { shift: 0, coeffs: BTreeMap::from([(j, 1)]) }
    }

    /// self after `first`.
    pub fn compose(&self, first: &WreathElem) -> WreathElem {
        let mut coeffs = self.coeffs.clone();
        for (&j, &c) in &first.coeffs {
            *coeffs.entry(j + self.shift).or_insert(0) += c;
        }
        coeffs.retain(|_, c| *c != 0);
        WreathElem { shift: self.shift + first.shift, coeffs }
    }

    pub fn inverse(&self) -> WreathElem {
        let coeffs = self.coeffs.iter().map(|(&j, &c)| (j - self.shift, -c)).collect();
        WreathElem { shift: -self.shift, coeffs }
    }
}

/// Z wr Z = <t, a> acting on R^2 x R by z -> z e^(i theta) (t) and z -> z + 1
/// (a) on the plane, and by x -> x + 1 (t) and the identity (a) on the line.
#[derive(Clone, Debug, Serialize)]
pub struct EuclideanWreath {
    pub theta: f64,
    pub gens: GenSet,
}

/// Type of one element on R^2 x R, read off the normal form.
#[derive(Clone, Debug, Serialize)]
pub struct EuclideanType {
    pub word: String,
    pub normal_form: WreathElem,
    /// Translation part on the plane, meaningful when shift = 0.
    pub plane_translation: (f64, f64),
    pub line_translation: i64,
    pub loxodromic: bool,
    pub tau: f64,
    pub reason: String,
}

impl EuclideanWreath {
    pub fn new(theta: f64) -> Self {
        EuclideanWreath { theta, gens: GenSet::simple(&["t", "a"]).expect("fixed labels") }
    }

    pub fn element(&self, w: &GroupWord) -> WreathElem {
        let gens = [WreathElem::t(), WreathElem::a(0)];
        let mut acc = WreathElem::identity();
        for &l in w.letters().iter().rev() {
            let g = &gens[l as usize / 2];
            let g = if l % 2 == 0 { g.clone() } else { g.inverse() };
            acc = g.compose(&acc);
        }
        acc
    }

    /// Image of a point of the plane.
    pub fn apply_plane(&self, e: &WreathElem, z: Complex64) -> Complex64 {
        let w = Complex64::from_polar(1.0, self.theta);
        let mut out = w.powi(e.shift as i32) * z;
        for (&j, &c) in &e.coeffs {
            out += w.powi(j as i32) * c as f64;
        }
        out
    }

    /// Loxodromic exactly when the element is not the identity: a nonzero
    /// shift translates the line, and for shift 0 the plane translation
    /// sum c_j w^j vanishes only for c = 0, as w is not algebraic.
    pub fn classify(&self, w: &GroupWord) -> EuclideanType {
        let e = self.element(w);
        let p = self.apply_plane(&e, Complex64::new(0.0, 0.0));
        let word = self.gens.display(w);
        if e.shift != 0 {
            return EuclideanType {
                word,
                plane_translation: (0.0, 0.0),
                line_translation: e.shift,
                loxodromic: true,
                tau: e.shift.unsigned_abs() as f64,
                reason: "translates the line factor; a rotation of the plane".into(),
                normal_form: e,
            };
        }
        let loxodromic = !e.coeffs.is_empty();
        let reason = if loxodromic {
            "nonzero integer combination of powers of a transcendental unit".to_string()
        } else {
            "identity".to_string()
        };
        EuclideanType { word, plane_translation: (p.re, p.im), line_translation: 0, loxodromic, tau: p.norm(), reason, normal_form: e }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn conjugates_of_a_commute() {
        let g = EuclideanWreath::new(1.0);
        let w = g.gens.parse("t a t^-1 a t a^-1 t^-1 a^-1").unwrap();
        assert_eq!(g.element(&w), WreathElem::identity());
    }

    #[test]
    fn a0_has_unit_translation() {
        let g = EuclideanWreath::new(1.0);
        let c = g.classify(&g.gens.parse("a").unwrap());
        assert!(c.loxodromic);
        assert!((c.tau - 1.0).abs() < 1e-12);
    }
}
