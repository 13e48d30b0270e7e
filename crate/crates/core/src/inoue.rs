//! Integer matrices with one real eigenvalue `α > 1` and a complex pair, and
//! the parameters `(t0, p, P)` conjugating them to the diagonal-rotation
//! model `ρ(t0)`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::real::{mat3_det, mat3_inverse, mat3_mul, mat3_vec, norm_inf, Mat3};
use crate::linalg::IntMatrix;

/// Residual bound for `PA = ρ(t0)P`.
pub const CONJUGATION_TOLERANCE: f64 = 1e-8;
/// Condition numbers of `P` above this are rejected.
pub const MAX_CONDITION: f64 = 1e12;

#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Classification {
    Admissible { alpha: f64, beta_re: f64, beta_im: f64 },
    NotAdmissible { reason: String },
}

impl Classification {
    pub fn is_admissible(&self) -> bool {
        matches!(self, Classification::Admissible { .. })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct AdmissibleMatrix {
    pub a: IntMatrix,
    pub m: i64,
    pub n: i64,
    pub alpha: f64,
    #[serde(skip)]
    pub beta: Complex64,
}

#[derive(Clone, Debug, Serialize)]
pub struct InoueData {
    pub t0: f64,
    pub p: f64,
    /// Rows: left eigenvector of `α`, then real and imaginary parts of the
    /// left eigenvector of `β̄`.
    pub p_matrix: Mat3,
    pub a: IntMatrix,
    pub m: i64,
    pub n: i64,
    pub alpha: f64,
    pub beta_re: f64,
    pub beta_im: f64,
    pub conjugation_residual: f64,
    pub condition_number: f64,
}

fn to_mat3(a: &IntMatrix) -> Result<Mat3> {
    if !a.is_square(3) {
        return Err(Error::Dimension("expected a 3x3 integer matrix".into()));
    }
    let mut out = [[0.0; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a.0[i][j] as f64;
        }
    }
    Ok(out)
}

fn det3(a: &IntMatrix) -> i128 {
    let e = |i: usize, j: usize| a.0[i][j] as i128;
    e(0, 0) * (e(1, 1) * e(2, 2) - e(1, 2) * e(2, 1)) - e(0, 1) * (e(1, 0) * e(2, 2) - e(1, 2) * e(2, 0))
        + e(0, 2) * (e(1, 0) * e(2, 1) - e(1, 1) * e(2, 0))
}

/// `(m, n)` with characteristic polynomial `λ³ − mλ² + nλ − det`.
pub fn char_poly_coefficients(a: &IntMatrix) -> Result<(i64, i64)> {
    if !a.is_square(3) {
        return Err(Error::Dimension("expected a 3x3 integer matrix".into()));
    }
    let e = |i: usize, j: usize| a.0[i][j];
    let m = e(0, 0) + e(1, 1) + e(2, 2);
    let n = e(0, 0) * e(1, 1) - e(0, 1) * e(1, 0) + e(0, 0) * e(2, 2) - e(0, 2) * e(2, 0)
        + e(1, 1) * e(2, 2)
        - e(1, 2) * e(2, 1);
    Ok((m, n))
}

/// Discriminant of `λ³ − mλ² + nλ − 1`.
pub fn discriminant(m: i64, n: i64) -> i128 {
    let (m, n) = (m as i128, n as i128);
    18 * m * n - 4 * m * m * m + m * m * n * n - 4 * n * n * n - 27
}

fn cubic(m: f64, n: f64, x: f64) -> f64 {
    ((x - m) * x + n) * x - 1.0
}

/// Real root of `λ³ − mλ² + nλ − 1` above 1, by bisection then Newton.
/// Requires `n − m < 0`, i.e. the cubic is negative at 1.
fn real_root_above_one(m: i64, n: i64) -> f64 {
    let (mf, nf) = (m as f64, n as f64);
    let mut lo = 1.0;
    let mut hi = 1.0 + (m.abs().max(n.abs()).max(1)) as f64;
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if cubic(mf, nf, mid) < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
        if hi - lo < 1e-15 * hi {
            break;
        }
    }
    let mut x = 0.5 * (lo + hi);
    for _ in 0..4 {
        let df = (3.0 * x - 2.0 * mf) * x + nf;
        if df == 0.0 {
            break;
        }
        let step = cubic(mf, nf, x) / df;
        x -= step;
        if step.abs() < 1e-14 * x {
            break;
        }
    }
    x
}

pub fn classify_coefficients(m: i64, n: i64) -> Classification {
    let disc = discriminant(m, n);
    if disc == 0 {
        let reason = if (m, n) == (3, 3) {
            "repeated eigenvalue 1 (discriminant 0)"
        } else {
            "repeated eigenvalue (discriminant 0)"
        };
        return Classification::NotAdmissible { reason: reason.into() };
    }
    if disc > 0 {
        return Classification::NotAdmissible { reason: "three real eigenvalues (discriminant > 0)".into() };
    }
    // With one real root, the cubic is negative at 1 exactly when the root exceeds 1.
    match (n - m).signum() {
        0 => Classification::NotAdmissible { reason: "real eigenvalue equals 1".into() },
        1 => Classification::NotAdmissible { reason: "real eigenvalue lies in (0, 1)".into() },
        _ => {
            let alpha = real_root_above_one(m, n);
            let b = alpha - m as f64;
            let c = 1.0 / alpha;
            let im = (4.0 * c - b * b).max(0.0).sqrt() / 2.0;
            Classification::Admissible { alpha, beta_re: -b / 2.0, beta_im: im }
        }
    }
}

/// Admissible iff the characteristic cubic has negative discriminant and
/// its real root exceeds 1. `det A ≠ 1` is rejected as an error.
pub fn classify_spectrum(a: &IntMatrix) -> Result<Classification> {
    let (m, n) = char_poly_coefficients(a)?;
    let det = det3(a);
    if det != 1 {
        return Err(Error::NotAdmissible(format!("determinant is {det}, expected 1")));
    }
    Ok(classify_coefficients(m, n))
}

pub fn admissible(a: &IntMatrix) -> Result<AdmissibleMatrix> {
    let (m, n) = char_poly_coefficients(a)?;
    match classify_spectrum(a)? {
        Classification::Admissible { alpha, beta_re, beta_im } => Ok(AdmissibleMatrix {
            a: a.clone(),
            m,
            n,
            alpha,
            beta: Complex64::new(beta_re, beta_im),
        }),
        Classification::NotAdmissible { reason } => Err(Error::NotAdmissible(reason)),
    }
}

/// Companion matrix of `λ³ − mλ² + nλ − 1`.
pub fn companion(m: i64, n: i64) -> IntMatrix {
    IntMatrix(vec![vec![0, 0, 1], vec![1, 0, -n], vec![0, 1, m]])
}

/// Companion matrices of every admissible `(m, n)` in the closed ranges,
/// ordered by `(m, n)`.
pub fn enumerate_admissible(m_range: (i64, i64), n_range: (i64, i64)) -> Vec<AdmissibleMatrix> {
    let cells: Vec<(i64, i64)> = (m_range.0..=m_range.1)
        .flat_map(|m| (n_range.0..=n_range.1).map(move |n| (m, n)))
        .collect();
    cells
        .into_par_iter()
        .filter_map(|(m, n)| admissible(&companion(m, n)).ok())
        .collect()
}

/// Null vector of the rank-2 complex matrix `M` via the largest cross
/// product of two of its rows.
fn null_vector(rows: [[Complex64; 3]; 3]) -> [Complex64; 3] {
    let cross = |a: &[Complex64; 3], b: &[Complex64; 3]| {
        [a[1] * b[2] - a[2] * b[1], a[2] * b[0] - a[0] * b[2], a[0] * b[1] - a[1] * b[0]]
    };
    let norm = |v: &[Complex64; 3]| v.iter().map(|z| z.norm_sqr()).sum::<f64>();
    let mut best = cross(&rows[0], &rows[1]);
    for (i, j) in [(0, 2), (1, 2)] {
        let c = cross(&rows[i], &rows[j]);
        if norm(&c) > norm(&best) {
            best = c;
        }
    }
    best
}

/// Left eigenvector of `a` for `λ`, scaled so its first nonzero entry is 1.
fn left_eigenvector(a: &Mat3, lambda: Complex64) -> [Complex64; 3] {
    let mut rows = [[Complex64::new(0.0, 0.0); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // (Aᵀ − λ) row i
            rows[i][j] = Complex64::new(a[j][i], 0.0) - if i == j { lambda } else { Complex64::new(0.0, 0.0) };
        }
    }
    let v = null_vector(rows);
    let scale = v.iter().map(|z| z.norm()).fold(0.0, f64::max);
    let lead = *v.iter().find(|z| z.norm() > 1e-12 * scale).unwrap_or(&v[0]);
    [v[0] / lead, v[1] / lead, v[2] / lead]
}

/// `φ(t) = diag(e^t, e^{-t/2} R(tp))`, with `φ(t0) = ρ(t0)`.
pub fn rho_at(p: f64, t: f64) -> Mat3 {
    let r = (-t / 2.0).exp();
    let (s, c) = (t * p).sin_cos();
    [[t.exp(), 0.0, 0.0], [0.0, r * c, r * s], [0.0, -r * s, r * c]]
}

fn max_abs_diff3(a: &Mat3, b: &Mat3) -> f64 {
    (0..3).flat_map(|i| (0..3).map(move |j| (a[i][j] - b[i][j]).abs())).fold(0.0, f64::max)
}

pub fn parameters_from_matrix(adm: &AdmissibleMatrix) -> Result<InoueData> {
    let a = to_mat3(&adm.a)?;
    let t0 = adm.alpha.ln();
    let arg = adm.beta.arg();
    let p = arg / t0;

    let r1 = left_eigenvector(&a, Complex64::new(adm.alpha, 0.0));
    let z = left_eigenvector(&a, adm.beta.conj());
    let p_matrix: Mat3 = [
        [r1[0].re, r1[1].re, r1[2].re],
        [z[0].re, z[1].re, z[2].re],
        [z[0].im, z[1].im, z[2].im],
    ];
    let inv = mat3_inverse(&p_matrix)
        .ok_or_else(|| Error::IllConditioned(f64::INFINITY))?;
    let condition_number = norm_inf(&p_matrix) * norm_inf(&inv);
    if !(condition_number <= MAX_CONDITION) {
        return Err(Error::IllConditioned(condition_number));
    }
    let lhs = mat3_mul(&p_matrix, &a);
    let rhs = mat3_mul(&rho_at(p, t0), &p_matrix);
    let conjugation_residual = max_abs_diff3(&lhs, &rhs);
    Ok(InoueData {
        t0,
        p,
        p_matrix,
        a: adm.a.clone(),
        m: adm.m,
        n: adm.n,
        alpha: adm.alpha,
        beta_re: adm.beta.re,
        beta_im: adm.beta.im,
        conjugation_residual,
        condition_number,
    })
}

impl InoueData {
    pub fn rho(&self) -> Mat3 {
        rho_at(self.p, self.t0)
    }

    /// `P^{-1} ρ P` is the integer matrix `A` up to rounding.
    pub fn conjugated_rho(&self) -> Mat3 {
        let inv = mat3_inverse(&self.p_matrix).expect("P invertible by construction");
        mat3_mul(&inv, &mat3_mul(&self.rho(), &self.p_matrix))
    }

    /// Distance of `P^{-1} ρ P z` from the nearest integer vector.
    pub fn lattice_rounding_residual(&self, z: [i64; 3]) -> f64 {
        let zf = [z[0] as f64, z[1] as f64, z[2] as f64];
        let img = mat3_vec(&self.conjugated_rho(), &zf);
        img.iter().map(|x| (x - x.round()).abs()).fold(0.0, f64::max)
    }

    /// `e^{-t0} + 2 e^{t0/2} cos(t0 p)`, which must equal `n`.
    pub fn second_symmetric_function(&self) -> f64 {
        (-self.t0).exp() + 2.0 * (self.t0 / 2.0).exp() * (self.t0 * self.p).cos()
    }

    pub fn det_p(&self) -> f64 {
        mat3_det(&self.p_matrix)
    }
}

pub fn solve(a: &IntMatrix) -> Result<InoueData> {
    parameters_from_matrix(&admissible(a)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn identity_has_repeated_root() {
        let id = IntMatrix(vec![vec![1, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(!classify_spectrum(&id).unwrap().is_admissible());
    }

    #[test]
    fn golden_cubic_discriminant() {
        assert_eq!(discriminant(1, 0), -31);
        assert_eq!(discriminant(3, 3), 0);
    }

    #[test]
    fn determinant_must_be_one() {
        let a = IntMatrix(vec![vec![2, 0, 0], vec![0, 1, 0], vec![0, 0, 1]]);
        assert!(matches!(classify_spectrum(&a), Err(Error::NotAdmissible(_))));
    }

    #[test]
    fn rho_group_law() {
        let p = 0.7;
        let h = rho_at(p, 0.4);
        let full = rho_at(p, 0.8);
        assert!(max_abs_diff3(&mat3_mul(&h, &h), &full) < 1e-14);
        assert!(max_abs_diff3(&rho_at(p, 0.0), &[[1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, 0.0, 1.0]]) == 0.0);
    }

    #[test]
    fn companion_of_first_cubic_solves() {
        let d = solve(&companion(1, 0)).unwrap();
        assert!(d.conjugation_residual < CONJUGATION_TOLERANCE);
        assert!(d.alpha > 1.0 && d.alpha < 2.0);
        assert!(d.p > 0.0);
    }
}
