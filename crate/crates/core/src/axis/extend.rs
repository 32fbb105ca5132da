use serde::Serialize;

use crate::action::{GenSet, GroupWord};

use super::character::{eval_sym, SymElem, ZCharacter};
use super::AxisError;

/// Coset data for a finite-index subgroup H of G, given by left coset
/// representatives g_0 = e, g_1, ..., g_(l-1).
pub trait Factorization {
    fn index(&self) -> usize;
    fn g_gens(&self) -> &GenSet;
    fn h_gens(&self) -> &GenSet;
    /// For generator `x` of G (by index) and coset `i`: x g_i = g_k h.
    fn step(&self, x: usize, i: usize) -> (usize, GroupWord);
    /// Relators of G, used to check that the resulting model is a
    /// homomorphism.
    fn g_relators(&self) -> Vec<(String, GroupWord)>;
    /// Words in H that are trivial in H; any character of H vanishes on them.
    fn h_relators(&self) -> Vec<(String, GroupWord)>;
}

/// A character of G built from a character of H by the coset recipe.
#[derive(Clone, Debug, Serialize)]
pub struct Extension {
    pub phi: ZCharacter,
    pub l: usize,
    pub model: Vec<SymElem>,
    /// gcd of theta over the generators of H; translations are divided by it.
    pub scale: i64,
    pub central: String,
    pub phi_central: i64,
    pub relators_checked: usize,
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 {
        a.abs()
    } else {
        gcd(b, a % b)
    }
}

/// The relators on which theta fails to vanish, with its value there.
pub fn theta_violations(oracle: &dyn Factorization, theta: &ZCharacter) -> Vec<(String, i64)> {
    oracle.h_relators().into_iter().filter_map(|(name, w)| {
        let v = theta.eval(&w);
        (v != 0).then_some((name, v))
    }).collect()
}

/// Extends the data of theta on H with theta(h0) != 0, h0 central in G, to
/// phi on G with phi(h0) = l theta(h0) / gcd. The point g_i h K of G/K,
/// K = ker theta, is labelled (i, theta(h)), and each generator acts by an
/// element of Z^l x| Sym(l) whose coordinate sum is phi.
pub fn extend_character(oracle: &dyn Factorization, theta: &ZCharacter, h0: &GroupWord) -> Result<Extension, AxisError> {
    if theta.gens != *oracle.h_gens() {
        return Err(AxisError::Parse("character is not defined on the subgroup generators".into()));
    }
    if let Some((name, v)) = theta_violations(oracle, theta).into_iter().next() {
        return Err(AxisError::RejectedCharacter { relator: name, value: v });
    }
    let th0 = theta.eval(h0);
    if th0 == 0 {
        return Err(AxisError::RejectedCharacter { relator: format!("theta({}) must be nonzero", oracle.h_gens().display(h0)), value: 0 });
    }
    let scale = theta.values.iter().fold(0, |a, &b| gcd(a, b)).max(1);
    let l = oracle.index();
    let mut model = Vec::with_capacity(oracle.g_gens().rank());
    for x in 0..oracle.g_gens().rank() {
        let mut e = SymElem::identity(l);
        let mut seen = vec![false; l];
        for i in 0..l {
            let (k, h) = oracle.step(x, i);
            if k >= l || std::mem::replace(&mut seen[k], true) {
                return Err(AxisError::BadFactorization(format!(
                    "generator {} does not permute the cosets",
                    oracle.g_gens().label(oracle.g_gens().generator(x))
                )));
            }
            e.pi[i] = k;
            e.r[k] = theta.eval(&h) / scale;
        }
        model.push(e);
    }
    let relators = oracle.g_relators();
    for (name, w) in &relators {
        let img = eval_sym(&model, l, w);
        if !img.is_identity() {
            return Err(AxisError::BadFactorization(format!("relator {name} maps to {img:?}")));
        }
    }
    let phi = ZCharacter::new(oracle.g_gens().clone(), model.iter().map(SymElem::sum).collect())?;
    let central = oracle.h_gens().display(h0);
    let h0_in_g = oracle
        .g_gens()
        .parse(&central)
        .map_err(|e| AxisError::Parse(format!("central element {central} is not a word in G: {e}")))?;
    let phi_central = phi.eval(&h0_in_g);
    if phi_central != l as i64 * th0 / scale {
        return Err(AxisError::Invariant(format!("phi({central}) = {phi_central}, expected {}", l as i64 * th0 / scale)));
    }
    Ok(Extension { phi, l, model, scale, central, phi_central, relators_checked: relators.len() })
}

/// The semidirect-product law checked pointwise: for every pair of
/// generator images a, b and sample point p, (ab)(p) = a(b(p)), and
/// pi e_i pi^-1 = e_pi(i) for each permutation part.
pub fn check_composition_law(model: &[SymElem], span: i64) -> Result<usize, AxisError> {
    let mut checks = 0;
    for a in model {
        for b in model {
            let ab = a.compose(b);
            for i in 0..a.len() {
                for n in -span..=span {
                    if ab.apply((i, n)) != a.apply(b.apply((i, n))) {
                        return Err(AxisError::Invariant(format!("composition law fails for {a:?} and {b:?} at ({i}, {n})")));
                    }
                    checks += 1;
                }
            }
        }
        let p = SymElem::perm(a.pi.clone());
        for i in 0..a.len() {
            let conj = p.compose(&SymElem::unit(a.len(), i)).compose(&p.inverse());
            if conj != SymElem::unit(a.len(), a.pi[i]) {
                return Err(AxisError::Invariant(format!("conjugation rule fails for {:?}", a.pi)));
            }
            checks += 1;
        }
    }
    Ok(checks)
}
