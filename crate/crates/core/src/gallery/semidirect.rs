use num_complex::Complex64;
use serde::Serialize;

use super::GalleryError;

/// Z^4 x|_phi Z with phi: a -> b -> c -> d -> a^-1 b^2 c^-1 d^2. The matrix
/// of phi in the basis a, b, c, d has the images as columns.
pub const PHI: [[i128; 4]; 4] = [[0, 0, 0, -1], [1, 0, 0, 2], [0, 1, 0, -1], [0, 0, 1, 2]];

pub const MAX_N: usize = 60;

pub type IntMatrix = Vec<Vec<i128>>;

fn mat_mul(a: &IntMatrix, b: &IntMatrix) -> Result<IntMatrix, GalleryError> {
    let n = a.len();
    let mut out = vec![vec![0i128; n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = 0i128;
            for (k, row) in b.iter().enumerate() {
                s = a[i][k].checked_mul(row[j]).and_then(|x| s.checked_add(x)).ok_or(GalleryError::Overflow)?;
            }
            out[i][j] = s;
        }
    }
    Ok(out)
}

/// Characteristic polynomial det(xI - A), coefficients from the constant
/// term up, by the Faddeev–LeVerrier recursion in exact integers.
pub fn char_poly(a: &IntMatrix) -> Result<Vec<i128>, GalleryError> {
    let n = a.len();
    let id: IntMatrix = (0..n).map(|i| (0..n).map(|j| i128::from(i == j)).collect()).collect();
    // c[n - k] holds the coefficient of x^(n - k)
    let mut c = vec![0i128; n + 1];
    c[n] = 1;
    let mut m = vec![vec![0i128; n]; n];
    for k in 1..=n {
        let mut next = mat_mul(a, &m)?;
        for i in 0..n {
            next[i][i] += c[n - k + 1] * id[i][i];
        }
        m = next;
        let am = mat_mul(a, &m)?;
        let tr: i128 = (0..n).map(|i| am[i][i]).sum();
        if tr % k as i128 != 0 {
            return Err(GalleryError::Invariant(format!("trace {tr} not divisible by {k}")));
        }
        c[n - k] = -tr / k as i128;
    }
    Ok(c)
}

pub fn is_palindromic(coeffs: &[i128]) -> bool {
    coeffs.iter().eq(coeffs.iter().rev())
}

fn eval(coeffs: &[i128], z: Complex64) -> Complex64 {
    coeffs.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c as f64)
}

/// All complex roots by Durand–Kerner iteration, polished by Newton steps.
pub fn roots(coeffs: &[i128]) -> Vec<Complex64> {
    let n = coeffs.len() - 1;
    let lead = coeffs[n] as f64;
    let monic: Vec<f64> = coeffs.iter().map(|&c| c as f64 / lead).collect();
    let p = |z: Complex64| monic.iter().rev().fold(Complex64::new(0.0, 0.0), |acc, &c| acc * z + c);
    let seed = Complex64::new(0.4, 0.9);
    let mut z: Vec<Complex64> = (0..n).map(|k| seed.powu(k as u32)).collect();
    for _ in 0..500 {
        let mut delta = 0.0f64;
        for i in 0..n {
            let mut den = Complex64::new(1.0, 0.0);
            for j in 0..n {
                if i != j {
                    den *= z[i] - z[j];
                }
            }
            let step = p(z[i]) / den;
            z[i] -= step;
            delta = delta.max(step.norm());
        }
        if delta < 1e-15 {
            break;
        }
    }
    let deriv: Vec<i128> = coeffs.iter().enumerate().skip(1).map(|(i, &c)| c * i as i128).collect();
    for r in z.iter_mut() {
        for _ in 0..4 {
            let d = eval(&deriv, *r);
            if d.norm() > 0.0 {
                *r -= eval(coeffs, *r) / d;
            }
        }
    }
    z
}

fn divisors(n: i128) -> Vec<i128> {
    let n = n.abs();
    (1..=n).filter(|d| n % d == 0).collect()
}

/// Exact division by a monic polynomial; `None` if the remainder is nonzero.
fn divide_monic(f: &[i128], g: &[i128]) -> Option<Vec<i128>> {
    let mut r = f.to_vec();
    let dg = g.len() - 1;
    if r.len() <= dg {
        return None;
    }
    let mut q = vec![0i128; r.len() - dg];
    for i in (0..q.len()).rev() {
        let c = r[i + dg];
        q[i] = c;
        for (j, &gj) in g.iter().enumerate() {
            r[i + j] -= c * gj;
        }
    }
    r.iter().all(|&x| x == 0).then_some(q)
}

/// Irreducibility over Q for monic integer polynomials of degree at most 5:
/// no rational root and no monic quadratic factor. `None` outside that range.
pub fn irreducible_over_q(coeffs: &[i128]) -> Option<bool> {
    let deg = coeffs.len().checked_sub(1)?;
    if coeffs[deg] != 1 || deg > 5 {
        return None;
    }
    if deg <= 1 {
        return Some(true);
    }
    if coeffs[0] == 0 {
        return Some(false);
    }
    for d in divisors(coeffs[0]) {
        for r in [d, -d] {
            if divide_monic(coeffs, &[-r, 1]).is_some() {
                return Some(false);
            }
        }
    }
    if deg >= 4 {
        // roots have modulus at most 1 + max |c_i|
        let bound = 1 + coeffs[..deg].iter().map(|c| c.abs()).max().unwrap_or(0);
        for b in -(bound * bound)..=bound * bound {
            if b == 0 || coeffs[0] % b != 0 {
                continue;
            }
            for a in -2 * bound..=2 * bound {
                if divide_monic(coeffs, &[b, a, 1]).is_some() {
                    return Some(false);
                }
            }
        }
    }
    Some(true)
}

/// Closed form for the real root above 1: with y = x + 1/x the palindromic
/// quartic becomes y^2 - 2y - 1 = 0, and y = 1 + sqrt2 gives x.
pub fn lambda_closed_form() -> f64 {
    let y = 1.0 + 2f64.sqrt();
    (y + (y * y - 4.0).sqrt()) / 2.0
}

#[derive(Clone, Debug, Serialize)]
pub struct Z4Row {
    pub n: usize,
    /// Word length of t^n a t^-n.
    pub ambient: usize,
    /// (alpha, beta, gamma, delta) with t^n a t^-n = a^alpha b^beta c^gamma d^delta.
    pub coords: [i128; 4],
    pub norm: i128,
    pub log_norm_over_n: f64,
}

/// Iterates phi on a = (1, 0, 0, 0) for n = 0..=n_max.
pub fn z4_semidirect_probe(n_max: usize) -> Result<Vec<Z4Row>, GalleryError> {
    if n_max > MAX_N {
        return Err(GalleryError::BadParameter(format!("n_max {n_max} exceeds {MAX_N}")));
    }
    let mut v = [1i128, 0, 0, 0];
    let mut rows = Vec::with_capacity(n_max + 1);
    for n in 0..=n_max {
        let norm: i128 = v.iter().map(|x| x.abs()).sum();
        let log_norm_over_n = if n == 0 { 0.0 } else { (norm as f64).ln() / n as f64 };
        rows.push(Z4Row { n, ambient: 2 * n + 1, coords: v, norm, log_norm_over_n });
        let mut next = [0i128; 4];
        for (i, row) in PHI.iter().enumerate() {
            for j in 0..4 {
                next[i] = row[j].checked_mul(v[j]).and_then(|x| next[i].checked_add(x)).ok_or(GalleryError::Overflow)?;
            }
        }
        v = next;
    }
    Ok(rows)
}

/// Summary of the eigenvalue structure of phi.
#[derive(Clone, Debug, Serialize)]
pub struct EigenReport {
    pub char_poly: Vec<i128>,
    pub palindromic: bool,
    pub irreducible: Option<bool>,
    pub eigenvalues: Vec<(f64, f64)>,
    pub lambda: f64,
    pub lambda_closed_form: f64,
    pub inner_real: f64,
    /// Moduli of the non-real eigenvalues.
    pub unit_pair_moduli: Vec<f64>,
}

pub fn eigen_report() -> Result<EigenReport, GalleryError> {
    let a: IntMatrix = PHI.iter().map(|r| r.to_vec()).collect();
    let cp = char_poly(&a)?;
    let rs = roots(&cp);
    let real: Vec<f64> = rs.iter().filter(|z| z.im.abs() < 1e-9).map(|z| z.re).collect();
    let lambda = real.iter().copied().fold(f64::NAN, |m, x| if m.is_nan() || x.abs() > m.abs() { x } else { m });
    let inner_real = real.iter().copied().fold(f64::NAN, |m, x| if m.is_nan() || x.abs() < m.abs() { x } else { m });
    Ok(EigenReport {
        palindromic: is_palindromic(&cp),
        irreducible: irreducible_over_q(&cp),
        eigenvalues: rs.iter().map(|z| (z.re, z.im)).collect(),
        unit_pair_moduli: rs.iter().filter(|z| z.im.abs() >= 1e-9).map(|z| z.norm()).collect(),
        char_poly: cp,
        lambda,
        lambda_closed_form: lambda_closed_form(),
        inner_real,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn companion_polynomial() {
        let a: IntMatrix = PHI.iter().map(|r| r.to_vec()).collect();
        assert_eq!(char_poly(&a).unwrap(), vec![1, -2, 1, -2, 1]);
    }

    #[test]
    fn irreducibility_detects_factors() {
        // (x^2 + 1)(x^2 + x + 1)
        assert_eq!(irreducible_over_q(&[1, 1, 2, 1, 1]), Some(false));
        assert_eq!(irreducible_over_q(&[-2, 0, 1]), Some(true));
        assert_eq!(irreducible_over_q(&[-1, 0, 1]), Some(false));
        assert_eq!(irreducible_over_q(&[1, -2, 1, -2, 1]), Some(true));
    }

    #[test]
    fn first_images() {
        let rows = z4_semidirect_probe(5).unwrap();
        assert_eq!(rows[1].coords, [0, 1, 0, 0]);
        assert_eq!(rows[4].coords, [-1, 2, -1, 2]);
        assert_eq!(rows[5].coords, [-2, 3, 0, 3]);
    }
}
