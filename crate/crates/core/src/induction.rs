//! Classification on products from the factor types of a factor-preserving
//! power, and actions induced from a finite-index subgroup.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::action::{
    classify, ActionError, Certainty, Classification, ClassifyOptions, GenAction, GenSet, GroupWord, Kind, MarkedAction, RootRatio,
};
use crate::space::{ProductSpace, VertexKey};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum InductionError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("inconsistent factor map: {0}")]
    InconsistentFactorMap(String),
}

/// Kind and certainty of one factor.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FactorType {
    pub kind: Kind,
    pub certainty: Certainty,
}

impl From<&Classification> for FactorType {
    fn from(c: &Classification) -> Self {
        FactorType { kind: c.kind.clone(), certainty: c.certainty }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CombinedType {
    pub kind: Kind,
    pub certainty: Certainty,
    pub rule: &'static str,
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

fn lcm(a: u64, b: u64) -> u64 {
    a / gcd(a, b) * b
}

/// sqrt(sum of squares) of several root ratios, exactly.
pub fn l2_combine(parts: &[RootRatio]) -> RootRatio {
    let l = parts.iter().fold(1u64, |acc, r| lcm(acc, r.den));
    let num: u64 = parts.iter().map(|r| r.num_sq * (l / r.den).pow(2)).sum();
    RootRatio::new(num, l)
}

/// Type of an element on a product from the types of the same element on
/// each factor: all elliptic gives elliptic, any loxodromic factor gives
/// loxodromic, and anything else stays undetermined.
pub fn combine_types(v: &[FactorType]) -> CombinedType {
    if v.iter().all(|t| t.kind.is_elliptic()) {
        let period = v.iter().try_fold(1u64, |acc, t| match t.kind {
            Kind::Elliptic { period: Some(p) } => Some(lcm(acc, p)),
            _ => None,
        });
        let certainty = if v.iter().all(|t| t.certainty == Certainty::Certified) { Certainty::Certified } else { Certainty::Heuristic };
        return CombinedType { kind: Kind::Elliptic { period }, certainty, rule: "all factors elliptic" };
    }
    if v.iter().any(|t| t.kind.is_loxodromic()) {
        let exact = |t: &FactorType| -> Option<RootRatio> {
            match &t.kind {
                Kind::Elliptic { .. } => Some(RootRatio::zero()),
                Kind::Loxodromic { tau_upper, tau_lower: Some(l) } if l == tau_upper => Some(*l),
                _ => None,
            }
        };
        let lower: Vec<RootRatio> = v
            .iter()
            .map(|t| match &t.kind {
                Kind::Loxodromic { tau_lower: Some(l), .. } => *l,
                _ => RootRatio::zero(),
            })
            .collect();
        let upper: Option<Vec<RootRatio>> = v
            .iter()
            .map(|t| match &t.kind {
                Kind::Loxodromic { tau_upper, .. } => Some(*tau_upper),
                Kind::Elliptic { .. } => Some(RootRatio::zero()),
                Kind::Undetermined => None,
            })
            .collect();
        let (tau_upper, tau_lower) = match v.iter().map(exact).collect::<Option<Vec<_>>>() {
            Some(all) => {
                let t = l2_combine(&all);
                (t, Some(t))
            }
            None => {
                let lo = l2_combine(&lower);
                let up = upper.map(|u| l2_combine(&u)).unwrap_or(lo);
                (up.max(lo), (!lo.is_zero()).then_some(lo))
            }
        };
        let certainty = if v.iter().any(|t| t.kind.is_loxodromic() && t.certainty == Certainty::Certified) {
            Certainty::Certified
        } else {
            Certainty::Heuristic
        };
        return CombinedType { kind: Kind::Loxodromic { tau_upper, tau_lower }, certainty, rule: "some factor loxodromic" };
    }
    CombinedType { kind: Kind::Undetermined, certainty: Certainty::Heuristic, rule: "unbounded without a loxodromic factor" }
}

/// Classifies the factor-preserving power w^o factor by factor and
/// combines. Returns the order o used together with the factor types.
pub fn factor_types(action: &MarkedAction, w: &GroupWord, base: &[VertexKey], opts: &ClassifyOptions) -> Result<(usize, Vec<FactorType>), ActionError> {
    let o = action.word_action(w).perm_order();
    let wo = w.pow(o as i64);
    let mut out = Vec::with_capacity(action.arity());
    for i in 0..action.arity() {
        let fa = factor_action_of_word(action, &wo, i)?;
        let c = classify(&fa.0, &fa.1, &base[i..=i], opts)?;
        out.push(FactorType::from(&c));
    }
    Ok((o, out))
}

/// A single-generator action on factor `i` realising the word.
fn factor_action_of_word(action: &MarkedAction, w: &GroupWord, i: usize) -> Result<(MarkedAction, GroupWord), ActionError> {
    let g = action.word_action(w);
    if g.perm[i] != i {
        return Err(ActionError::NotFactorPreserving { letter: action.display(w), factor: i });
    }
    let gens = GenSet::simple(&["w"])?;
    let space = ProductSpace::single(action.space.factors[i].clone());
    let fa = MarkedAction::new(format!("{}[{i}]", action.name), space, gens, vec![GenAction::factorwise(vec![g.maps[i].clone()])])?;
    Ok((fa, GroupWord::letter(0)))
}

/// Coset data for inducing from H to G: for each G-generator x and coset
/// index j, `table[x][j] = (k, h)` records x g_j = g_k h with h an H-word.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InductionData {
    /// Coset representatives as G-words, for reporting.
    pub reps: Vec<String>,
    pub table: Vec<Vec<(usize, String)>>,
}

impl InductionData {
    pub fn index(&self) -> usize {
        self.reps.len()
    }

    /// Parses the table against the generators of G and H, checking that
    /// every G-generator permutes the cosets.
    pub fn validate(&self, g_gens: &GenSet, h: &MarkedAction) -> Result<Vec<Vec<(usize, GroupWord)>>, InductionError> {
        let i = self.index();
        if self.table.len() != g_gens.rank() {
            return Err(InductionError::InconsistentFactorMap(format!(
                "{} table rows for {} generators",
                self.table.len(),
                g_gens.rank()
            )));
        }
        let mut out = Vec::with_capacity(self.table.len());
        for (x, row) in self.table.iter().enumerate() {
            let label = g_gens.label(g_gens.generator(x));
            if row.len() != i {
                return Err(InductionError::InconsistentFactorMap(format!("generator {label} has {} entries for index {i}", row.len())));
            }
            let mut seen = vec![false; i];
            let mut parsed = Vec::with_capacity(i);
            for (k, word) in row {
                if *k >= i || std::mem::replace(&mut seen[*k], true) {
                    return Err(InductionError::InconsistentFactorMap(format!("generator {label} does not permute the cosets")));
                }
                parsed.push((*k, h.parse(word)?));
            }
            out.push(parsed);
        }
        Ok(out)
    }
}

/// The action of G on P^i induced from an action of H on P: block j is the
/// copy g_j P, and x sends block j to block k by h whenever x g_j = g_k h.
pub fn induce_action(h: &MarkedAction, g_gens: &GenSet, data: &InductionData) -> Result<MarkedAction, InductionError> {
    let table = data.validate(g_gens, h)?;
    let k = h.arity();
    let i = data.index();
    let mut factors = Vec::with_capacity(i * k);
    for _ in 0..i {
        factors.extend(h.space.factors.iter().cloned());
    }
    let mut gen_actions = Vec::with_capacity(table.len());
    for row in &table {
        let mut perm = vec![0; i * k];
        let mut maps = Vec::with_capacity(i * k);
        for (j, (target, word)) in row.iter().enumerate() {
            let ga = h.word_action(word);
            for f in 0..k {
                perm[j * k + f] = target * k + ga.perm[f];
                maps.push(ga.maps[f].clone());
            }
        }
        gen_actions.push(GenAction { perm, maps });
    }
    let name = format!("induced({}, index {i})", h.name);
    Ok(MarkedAction::new(name, ProductSpace::new(factors), g_gens.clone(), gen_actions)?)
}
