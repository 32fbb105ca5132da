use serde::Serialize;

use crate::space::{Point, VertexKey, DEFAULT_DISTANCE_CAP};

use super::marked::MarkedAction;
use super::metric::{root_sum_ge, BaseMetric, RootRatio};
use super::word::GroupWord;
use super::ActionError;

/// Squared displacements a_n^2 = d(w^n x, x)^2 for n = 1..=horizon.
#[derive(Clone, Debug, Serialize)]
pub struct DisplacementSeq {
    pub base: Point,
    pub a_sq: Vec<u64>,
    pub horizon: usize,
    /// min over n of a_n / n, an upper bound for the stable translation
    /// length since it is the infimum of that sequence.
    pub tau_upper: RootRatio,
}

impl DisplacementSeq {
    pub fn a_sq(&self, n: usize) -> u64 {
        if n == 0 {
            0
        } else {
            self.a_sq[n - 1]
        }
    }

    /// a_n as a float, for reporting.
    pub fn a(&self, n: usize) -> f64 {
        (self.a_sq(n) as f64).sqrt()
    }

    /// First violation of a_(m+n) <= a_m + a_n, if any.
    pub fn subadditivity_violation(&self) -> Option<(usize, usize)> {
        let n = self.horizon;
        for i in 1..=n {
            for j in i..=n - i {
                if !root_sum_ge(self.a_sq(i + j), self.a_sq(i), self.a_sq(j)) {
                    return Some((i, j));
                }
            }
        }
        None
    }
}

pub fn displacement_seq(action: &MarkedAction, w: &GroupWord, base: &[VertexKey], horizon: usize) -> Result<DisplacementSeq, ActionError> {
    let mut metric = BaseMetric::new(&action.space, &base.to_vec());
    displacement_seq_with(action, w, &mut metric, horizon)
}

pub(crate) fn displacement_seq_with(action: &MarkedAction, w: &GroupWord, metric: &mut BaseMetric, horizon: usize) -> Result<DisplacementSeq, ActionError> {
    let base = metric.base().clone();
    let g = action.word_action(w);
    let mut x = base.clone();
    let mut a_sq = Vec::with_capacity(horizon);
    let mut tau_upper: Option<RootRatio> = None;
    for n in 1..=horizon {
        x = g.apply(&x)?;
        let d = metric.distance_sq(&x, DEFAULT_DISTANCE_CAP)?;
        a_sq.push(d);
        let r = RootRatio::new(d, n as u64);
        tau_upper = Some(tau_upper.map_or(r, |t| t.min(r)));
    }
    let seq = DisplacementSeq { base, a_sq, horizon, tau_upper: tau_upper.unwrap_or_else(RootRatio::zero) };
    if let Some((i, j)) = seq.subadditivity_violation() {
        return Err(ActionError::Invariant(format!("displacement sequence not subadditive at ({i}, {j})")));
    }
    Ok(seq)
}

/// Translation length of a word on one tree factor, read off a single
/// probe as max(0, d(x, g^2 x) - d(x, g x)). The word must map the factor
/// to itself. An edge inversion shows up as a nonpositive difference with
/// d(x, g x) odd; after barycentric subdivision it fixes a midpoint, so the
/// refined answer is 0.
pub fn tree_translation_length(
    action: &MarkedAction,
    w: &GroupWord,
    factor: usize,
    probe: &VertexKey,
    refine: bool,
) -> Result<u64, ActionError> {
    let space = &action.space.factors[factor];
    if !space.is_verified_tree() {
        return Err(ActionError::NotTree(space.name.clone()));
    }
    let g = action.word_action(w);
    if g.perm[factor] != factor {
        return Err(ActionError::NotFactorPreserving { letter: action.display(w), factor });
    }
    let map = &g.maps[factor];
    let gx = map.apply(probe)?;
    let ggx = map.apply(&gx)?;
    let d1 = space.distance(probe, &gx, DEFAULT_DISTANCE_CAP)? as i64;
    let d2 = space.distance(probe, &ggx, DEFAULT_DISTANCE_CAP)? as i64;
    if d2 - d1 <= 0 && d1 % 2 == 1 {
        return if refine { Ok(0) } else { Err(ActionError::EdgeInversion(space.describe(probe))) };
    }
    Ok((d2 - d1).max(0) as u64)
}

/// Tree translation length on a factor, checked to agree on the probe and
/// its first two neighbors.
pub fn tree_tau(action: &MarkedAction, w: &GroupWord, factor: usize, probe: &VertexKey) -> Result<u64, ActionError> {
    let space = &action.space.factors[factor];
    let mut probes = vec![probe.clone()];
    probes.extend(space.neighbors(probe)?.into_iter().take(2));
    let values = probes.iter().map(|p| tree_translation_length(action, w, factor, p, true)).collect::<Result<Vec<_>, _>>()?;
    if values.windows(2).any(|v| v[0] != v[1]) {
        return Err(ActionError::Invariant(format!("tree translation length depends on the probe: {values:?}")));
    }
    Ok(values[0])
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Certainty {
    Certified,
    Heuristic,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Kind {
    Elliptic { period: Option<u64> },
    Loxodromic { tau_upper: RootRatio, tau_lower: Option<RootRatio> },
    Undetermined,
}

impl Kind {
    pub fn label(&self) -> &'static str {
        match self {
            Kind::Elliptic { .. } => "Elliptic",
            Kind::Loxodromic { .. } => "Loxodromic",
            Kind::Undetermined => "Undetermined",
        }
    }

    pub fn is_elliptic(&self) -> bool {
        matches!(self, Kind::Elliptic { .. })
    }

    pub fn is_loxodromic(&self) -> bool {
        matches!(self, Kind::Loxodromic { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Classification {
    pub kind: Kind,
    pub certainty: Certainty,
    pub evidence: String,
    /// Per-factor tree translation lengths of w^o, where o is the order of
    /// the factor permutation of w; `None` for non-tree factors.
    pub factor_tau: Vec<Option<u64>>,
    pub perm_order: usize,
    pub seq: DisplacementSeq,
}

impl Classification {
    pub fn is_certified(&self) -> bool {
        self.certainty == Certainty::Certified
    }

    /// Exact stable translation length when both bounds agree.
    pub fn tau(&self) -> Option<RootRatio> {
        match &self.kind {
            Kind::Loxodromic { tau_upper, tau_lower: Some(l) } if l == tau_upper => Some(*l),
            Kind::Elliptic { .. } => Some(RootRatio::zero()),
            _ => None,
        }
    }
}

#[derive(Clone, Debug)]
pub struct ClassifyOptions {
    pub horizon: usize,
    /// The caller certifies that the element has infinite order, enabling
    /// the elliptic-or-loxodromic rule on quasitrees and bounded-valence
    /// hyperbolic graphs.
    pub infinite_order: bool,
}

impl Default for ClassifyOptions {
    fn default() -> Self {
        ClassifyOptions { horizon: 32, infinite_order: false }
    }
}

/// Smallest n <= horizon with w^n fixing every probe point, else `None`.
fn probe_period(action: &MarkedAction, w: &GroupWord, base: &[VertexKey], horizon: usize) -> Result<Option<u64>, ActionError> {
    let probes = action.probe_set(base)?;
    let g = action.word_action(w);
    let mut images = probes.clone();
    for n in 1..=horizon {
        images = images.iter().map(|p| g.apply(p)).collect::<Result<_, _>>()?;
        if images == probes {
            return Ok(Some(n as u64));
        }
    }
    Ok(None)
}

pub fn classify(action: &MarkedAction, w: &GroupWord, base: &[VertexKey], opts: &ClassifyOptions) -> Result<Classification, ActionError> {
    let seq = displacement_seq(action, w, base, opts.horizon)?;
    let g = action.word_action(w);
    let perm_order = g.perm_order();
    let mut out = Classification {
        kind: Kind::Undetermined,
        certainty: Certainty::Heuristic,
        evidence: String::new(),
        factor_tau: vec![None; action.arity()],
        perm_order,
        seq,
    };

    // an exhibited cycle: w^n x = x
    if let Some(n) = (1..=opts.horizon).find(|&n| out.seq.a_sq(n) == 0) {
        let period = probe_period(action, w, base, opts.horizon)?.unwrap_or(n as u64);
        out.kind = Kind::Elliptic { period: Some(period) };
        out.certainty = Certainty::Certified;
        out.evidence = format!("orbit of the base returns after {n} steps; probe set period {period}");
        return Ok(out);
    }

    // tree formula on every verified tree factor, applied to w^o
    let wo = w.pow(perm_order as i64);
    let mut all_trees = true;
    let mut sum_sq = 0u64;
    for i in 0..action.arity() {
        if action.space.factors[i].is_verified_tree() {
            let t = tree_tau(action, &wo, i, &base[i])?;
            out.factor_tau[i] = Some(t);
            sum_sq += t * t;
        } else {
            all_trees = false;
        }
    }
    if sum_sq > 0 {
        let lower = RootRatio::new(sum_sq, perm_order as u64);
        let upper = if all_trees { lower } else { out.seq.tau_upper };
        out.kind = Kind::Loxodromic { tau_upper: upper, tau_lower: Some(lower) };
        out.certainty = Certainty::Certified;
        out.evidence = format!("tree translation lengths {:?} of the {perm_order}-th power", out.factor_tau);
        return Ok(out);
    }

    let reduced = w.reduced();
    if let Some(d) = action.declared.iter().find(|d| d.word == reduced) {
        if !d.tau.is_zero() {
            out.kind = Kind::Loxodromic { tau_upper: d.tau, tau_lower: Some(d.tau) };
            out.certainty = Certainty::Certified;
            out.evidence = format!("declared translation length: {}", d.note);
            return Ok(out);
        }
    }

    if all_trees {
        out.kind = Kind::Elliptic { period: None };
        out.evidence = "translation length zero on every tree factor, no cycle within the horizon".into();
        return Ok(out);
    }

    let dichotomy = action.space.factors.iter().all(|f| f.quasitree_claim || f.valence_bound.is_some());
    let n = opts.horizon;
    let growing = n >= 2 && out.seq.a_sq(n) > out.seq.a_sq(n / 2);
    if opts.infinite_order && dichotomy && growing {
        out.kind = Kind::Loxodromic { tau_upper: out.seq.tau_upper, tau_lower: None };
        out.evidence = format!(
            "infinite order, no cycle within {n} steps and growing orbit; parabolics excluded on these factors"
        );
        return Ok(out);
    }
    out.evidence = format!("no certificate; tau upper bound {} at horizon {n}", out.seq.tau_upper);
    Ok(out)
}
