//! Undistortion certificates for free abelian subgroups of factor-preserving
//! actions, and growth probes comparing a subgroup norm with ambient length.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::action::{root_sum_ge, tree_tau, ActionError, GroupWord, MarkedAction, RootRatio};
use crate::space::{Point, VertexKey, DEFAULT_DISTANCE_CAP};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DistortionError {
    #[error(transparent)]
    Action(#[from] ActionError),
    #[error("{pick} has no exhibited orbit cycle on factor {factor} within {horizon} steps")]
    EllipticityUncertified { pick: String, factor: usize, horizon: usize },
    #[error("no certified positive translation length for {pick} on factor {factor}")]
    TauUncertified { pick: String, factor: usize },
    #[error("{0} and {1} do not commute on the probe set")]
    NotCommuting(String, String),
    #[error("bad pick: {0}")]
    BadPick(String),
    #[error("bound violated at {point:?}: d^2 = {actual_sq}, bound {bound}")]
    Violation { point: Vec<i64>, actual_sq: u64, bound: f64 },
}

/// Constants of the lower bound d(a x, x) >= (K (|n_1| + ... + |n_m|) - eps) / sqrt m
/// for a = a_1^n_1 ... a_m^n_m.
#[derive(Clone, Debug, Serialize)]
pub struct UndistortionCertificate {
    pub m: usize,
    pub picks: Vec<String>,
    /// Factor on which each pick is loxodromic.
    pub factors: Vec<usize>,
    /// `cross[i][j]` bounds d(a_j^n x_i, x_i) over all n for i != j; the
    /// diagonal holds zero.
    pub cross: Vec<Vec<u64>>,
    /// Periods of a_j on factor i, exhibited by an orbit cycle.
    pub periods: Vec<Vec<u64>>,
    /// K_i, a certified lower bound for the translation length of a_i on
    /// its factor.
    pub k_i: Vec<RootRatio>,
    pub k: RootRatio,
    pub epsilon: u64,
    pub base: Point,
    pub evidence: Vec<String>,
}

#[derive(Clone, Debug)]
pub struct CertificateOptions {
    /// Steps allowed for exhibiting an orbit cycle.
    pub horizon: usize,
    /// Declared translation lengths, used where the factor is not a verified tree.
    pub declared_tau: Vec<Option<RootRatio>>,
}

impl Default for CertificateOptions {
    fn default() -> Self {
        CertificateOptions { horizon: 64, declared_tau: Vec::new() }
    }
}

/// Smallest period of `w` at `x` on factor `f` within the horizon, with the
/// largest displacement seen over one period.
fn orbit_period(action: &MarkedAction, w: &GroupWord, f: usize, x: &VertexKey, horizon: usize) -> Result<Option<(u64, u64)>, ActionError> {
    let g = action.word_action(w);
    let map = &g.maps[f];
    let space = &action.space.factors[f];
    let mut y = x.clone();
    let mut max = 0;
    for n in 1..=horizon {
        y = map.apply(&y)?;
        if &y == x {
            return Ok(Some((n as u64, max)));
        }
        max = max.max(space.distance(x, &y, DEFAULT_DISTANCE_CAP)?);
    }
    Ok(None)
}

pub fn undistortion_certificate(
    action: &MarkedAction,
    picks: &[(GroupWord, usize)],
    base: &[VertexKey],
    opts: &CertificateOptions,
) -> Result<UndistortionCertificate, DistortionError> {
    let m = picks.len();
    if m == 0 {
        return Err(DistortionError::BadPick("no picks".into()));
    }
    let labels: Vec<String> = picks.iter().map(|(w, _)| action.display(w)).collect();
    let factors: Vec<usize> = picks.iter().map(|p| p.1).collect();
    for (i, &f) in factors.iter().enumerate() {
        if f >= action.arity() {
            return Err(DistortionError::BadPick(format!("{} on factor {f} of {}", labels[i], action.arity())));
        }
        if factors[..i].contains(&f) {
            return Err(DistortionError::BadPick(format!("two picks on factor {f}")));
        }
        let g = action.word_action(&picks[i].0);
        if !g.preserves_factors() {
            return Err(DistortionError::BadPick(format!("{} permutes factors", labels[i])));
        }
    }
    let probes = action.probe_set(base)?;
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (&picks[i].0, &picks[j].0);
            if !action.agree_on(&a.concat(b), &b.concat(a), &probes)? {
                return Err(DistortionError::NotCommuting(labels[i].clone(), labels[j].clone()));
            }
        }
    }

    let mut evidence = Vec::new();
    let mut k_i = Vec::with_capacity(m);
    for (i, (w, f)) in picks.iter().enumerate() {
        let tau = if action.space.factors[*f].is_verified_tree() {
            let t = tree_tau(action, w, *f, &base[*f])?;
            evidence.push(format!("tau({}) = {t} on factor {f} by the tree formula", labels[i]));
            RootRatio::integer(t)
        } else if let Some(Some(t)) = opts.declared_tau.get(i) {
            evidence.push(format!("tau({}) = {t} on factor {f} by declaration", labels[i]));
            *t
        } else {
            return Err(DistortionError::TauUncertified { pick: labels[i].clone(), factor: *f });
        };
        if tau.is_zero() {
            return Err(DistortionError::TauUncertified { pick: labels[i].clone(), factor: *f });
        }
        k_i.push(tau);
    }

    let mut cross = vec![vec![0u64; m]; m];
    let mut periods = vec![vec![1u64; m]; m];
    for i in 0..m {
        let f = factors[i];
        for j in 0..m {
            if i == j {
                continue;
            }
            match orbit_period(action, &picks[j].0, f, &base[f], opts.horizon)? {
                Some((p, max)) => {
                    cross[i][j] = max;
                    periods[i][j] = p;
                    evidence.push(format!("{} has period {p} on factor {f}, moving the base by at most {max}", labels[j]));
                }
                None => return Err(DistortionError::EllipticityUncertified { pick: labels[j].clone(), factor: f, horizon: opts.horizon }),
            }
        }
    }
    let k = *k_i.iter().min().expect("m > 0");
    let epsilon = cross.iter().flatten().sum();
    Ok(UndistortionCertificate { m, picks: labels, factors, cross, periods, k_i, k, epsilon, base: base.to_vec(), evidence })
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct BoundRow {
    pub exponents: Vec<i64>,
    pub bound: f64,
    pub actual_sq: u64,
    pub pass: bool,
}

impl UndistortionCertificate {
    /// (K S - eps) / sqrt m for S = sum |n_i|.
    pub fn bound(&self, s: u64) -> f64 {
        (self.k.value() * s as f64 - self.epsilon as f64) / (self.m as f64).sqrt()
    }

    /// Exact test of sqrt(m d2) >= K S - eps with K = sqrt(kn) / kd.
    pub fn holds(&self, s: u64, d2: u64) -> bool {
        let (kn, kd) = (self.k.num_sq as u128, self.k.den as u128);
        let lhs = (s as u128).pow(2) * kn;
        let b = kd * kd * d2 as u128 * self.m as u128;
        let c = (self.epsilon as u128 * kd).pow(2);
        match (u64::try_from(lhs), u64::try_from(b), u64::try_from(c)) {
            (Ok(a), Ok(b), Ok(c)) => root_sum_ge(a, b, c),
            _ => (lhs as f64).sqrt() <= (b as f64).sqrt() + (c as f64).sqrt(),
        }
    }
}

/// All integer vectors of length m with sum of absolute values at most s.
pub fn sample_box(m: usize, s: u64) -> Vec<Vec<i64>> {
    let mut out = vec![Vec::new()];
    for _ in 0..m {
        let mut next = Vec::new();
        for v in &out {
            let used: u64 = v.iter().map(|x: &i64| x.unsigned_abs()).sum();
            let r = (s - used) as i64;
            for n in -r..=r {
                let mut w = v.clone();
                w.push(n);
                next.push(w);
            }
        }
        out = next;
    }
    out
}

/// Checks the certificate on every a_1^n_1 ... a_m^n_m with sum |n_i| <= s.
/// Rows come back in the order of `sample_box`.
pub fn verify_certificate(
    action: &MarkedAction,
    cert: &UndistortionCertificate,
    picks: &[(GroupWord, usize)],
    s: u64,
) -> Result<Vec<BoundRow>, DistortionError> {
    let space = &action.space;
    let base = &cert.base;
    let rows: Vec<Result<BoundRow, DistortionError>> = sample_box(cert.m, s)
        .into_par_iter()
        .map(|ns| {
            let mut x = base.clone();
            for (k, &n) in ns.iter().enumerate().rev() {
                x = action.apply(&picks[k].0.pow(n), &x)?;
            }
            let actual_sq = space.distance_sq(&x, base, DEFAULT_DISTANCE_CAP).map_err(ActionError::from)?;
            let total: u64 = ns.iter().map(|n| n.unsigned_abs()).sum();
            Ok(BoundRow { bound: cert.bound(total), pass: cert.holds(total, actual_sq), actual_sq, exponents: ns })
        })
        .collect();
    rows.into_iter().collect()
}

/// As `verify_certificate`, failing on the first violated row.
pub fn assert_certificate(action: &MarkedAction, cert: &UndistortionCertificate, picks: &[(GroupWord, usize)], s: u64) -> Result<Vec<BoundRow>, DistortionError> {
    let rows = verify_certificate(action, cert, picks, s)?;
    if let Some(r) = rows.iter().find(|r| !r.pass) {
        return Err(DistortionError::Violation { point: r.exponents.clone(), actual_sq: r.actual_sq, bound: r.bound });
    }
    Ok(rows)
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct DistortionSample {
    pub n: usize,
    /// Upper bound for the ambient word length.
    pub ambient: f64,
    /// Norm of the element in the subgroup.
    pub norm: f64,
    /// Displacement of the base point, when measured.
    pub displacement: Option<f64>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Exponential,
    LinearCompatible,
}

#[derive(Clone, Debug, Serialize)]
pub struct DistortionReport {
    pub samples: Vec<DistortionSample>,
    pub verdict: Verdict,
    /// Secant slope of ln(norm) in n over the upper half of the samples.
    pub slope_per_n: f64,
    /// The same slope per unit of ambient length.
    pub slope_per_ambient: f64,
    /// norm / ambient at the middle and at the last sample.
    pub ratio_mid: f64,
    pub ratio_last: f64,
}

/// Exponential when norm / ambient more than doubles from the middle sample
/// to the last one and ln(norm) has positive slope there.
pub fn distortion_probe(samples: Vec<DistortionSample>) -> Result<DistortionReport, DistortionError> {
    if samples.len() < 3 {
        return Err(DistortionError::BadPick("need at least three samples".into()));
    }
    let last = samples.last().expect("nonempty");
    let mid = samples.iter().min_by_key(|s| s.n.abs_diff(last.n / 2)).expect("nonempty");
    let ratio_mid = mid.norm / mid.ambient;
    let ratio_last = last.norm / last.ambient;
    let dn = (last.n - mid.n) as f64;
    let slope_per_n = (last.norm.ln() - mid.norm.ln()) / dn;
    let slope_per_ambient = (last.norm.ln() - mid.norm.ln()) / (last.ambient - mid.ambient);
    let verdict = if ratio_last > 2.0 * ratio_mid && slope_per_n > 0.0 { Verdict::Exponential } else { Verdict::LinearCompatible };
    Ok(DistortionReport { samples, verdict, slope_per_n, slope_per_ambient, ratio_mid, ratio_last })
}

/// t^n a t^-n in Z^4 x| Z: ambient length 2n + 1 and the l1 norm in Z^4.
pub fn z4_samples(n_max: usize) -> Result<Vec<DistortionSample>, crate::gallery::GalleryError> {
    Ok(crate::gallery::z4_semidirect_probe(n_max)?
        .into_iter()
        .skip(1)
        .map(|r| DistortionSample { n: r.n, ambient: r.ambient as f64, norm: r.norm as f64, displacement: None })
        .collect())
}

/// Powers w^n for n = 1..=n_max within <w>: ambient length at most n |w|,
/// subgroup norm n, displacement d(w^n x, x).
pub fn power_samples(action: &MarkedAction, w: &GroupWord, base: &[VertexKey], n_max: usize) -> Result<Vec<DistortionSample>, DistortionError> {
    let seq = crate::action::displacement_seq(action, w, base, n_max)?;
    Ok((1..=n_max)
        .map(|n| DistortionSample { n, ambient: (n * w.len()) as f64, norm: n as f64, displacement: Some(seq.a(n)) })
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sample_box_size() {
        // 2 s^2 + 2 s + 1 points in the l1 ball of the plane
        assert_eq!(sample_box(2, 20).len(), 841);
        assert_eq!(sample_box(1, 5).len(), 11);
        assert_eq!(sample_box(3, 1).len(), 7);
    }

    #[test]
    fn exact_bound_test() {
        let cert = UndistortionCertificate {
            m: 2,
            picks: vec![],
            factors: vec![],
            cross: vec![],
            periods: vec![],
            k_i: vec![],
            k: RootRatio::integer(1),
            epsilon: 0,
            base: vec![],
            evidence: vec![],
        };
        // (3, 4): d^2 = 25, S = 7, 7 / sqrt2 = 4.95 <= 5
        assert!(cert.holds(7, 25));
        assert!(!cert.holds(7, 24));
    }
}
