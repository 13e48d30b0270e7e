//! Grid certificates for the defining identities of a [`GKStructure`].

use rayon::prelude::*;
use serde::Serialize;

use super::frame::{CheckItem, GRID_TOLERANCE};
use super::structure::{classify_split, GKStructure, SplitClass};
use crate::error::{Error, Result};
use crate::linalg::real::{mat_mul, max_abs_diff};
use crate::linalg::QMatrix;
use crate::symforms::{ChartEndo, ChartForm, ScalarExpr};

/// Tolerance of the finite-difference bracket cross-check.
pub const BRACKET_FD_TOLERANCE: f64 = 1e-5;

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub grid_size: usize,
    pub period: f64,
    pub items: Vec<CheckItem>,
    /// `H` vanishes identically: the structure is Kähler.
    pub torsion_free: bool,
    pub torsion_zero_kind: String,
    /// `2v/l` is not identically zero, so `[H] ≠ 0`.
    pub h_class_nonzero: bool,
    /// Coefficient of `dx^{123}` in `H` at `t = 0`.
    pub h_coefficient: f64,
    pub split: SplitClass,
}

impl Certificate {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }

    pub fn item(&self, name: &str) -> Option<&CheckItem> {
        self.items.iter().find(|i| i.item == name)
    }
}

fn grid_max(points: &[f64], f: impl Fn(f64) -> Result<f64> + Sync) -> Result<f64> {
    let vals: Result<Vec<f64>> = points.par_iter().map(|&t| f(t)).collect();
    Ok(vals?.into_iter().fold(0.0, |a, b| if b.is_nan() { f64::NAN } else { a.max(b) }))
}

fn eval_matrix(m: &[Vec<ScalarExpr>], t: f64) -> Result<Vec<Vec<f64>>> {
    m.iter().map(|r| r.iter().map(|e| e.eval(t)).collect()).collect()
}

fn transpose(m: &[Vec<f64>]) -> Vec<Vec<f64>> {
    (0..m[0].len()).map(|j| m.iter().map(|r| r[j]).collect()).collect()
}

/// `Ω_ij = ω(∂_i, ∂_j)` at time `t`.
fn form_matrix(form: &ChartForm, coords: &[crate::symforms::Coord], t: f64) -> Result<Vec<Vec<f64>>> {
    let n = coords.len();
    let mut m = vec![vec![0.0; n]; n];
    for (idx, c) in form.terms() {
        let a = coords.iter().position(|x| *x == idx[0]).ok_or_else(|| Error::Dimension("form coordinate".into()))?;
        let b = coords.iter().position(|x| *x == idx[1]).ok_or_else(|| Error::Dimension("form coordinate".into()))?;
        let v = c.eval(t)?;
        m[a][b] += v;
        m[b][a] -= v;
    }
    Ok(m)
}

fn square_plus_identity(j: &ChartEndo, t: f64) -> Result<f64> {
    let m = j.eval(t)?;
    let mut sq = mat_mul(&m, &m);
    for (i, row) in sq.iter_mut().enumerate() {
        row[i] += 1.0;
    }
    Ok(sq.iter().flatten().fold(0.0, |a, x| a.max(x.abs())))
}

fn metric_residual(j: &ChartEndo, g: &[Vec<ScalarExpr>], omega: &ChartForm, t: f64) -> Result<f64> {
    let m = j.eval(t)?;
    let gm = eval_matrix(g, t)?;
    let mt = transpose(&m);
    let compat = max_abs_diff(&mat_mul(&mat_mul(&mt, &gm), &m), &gm);
    let om = form_matrix(omega, &j.coords, t)?;
    let fundamental = max_abs_diff(&om, &mat_mul(&mt, &gm));
    Ok(compat.max(fundamental))
}

/// Frame structure functions at `t`: `c[a][b]` is the frame-coefficient vector of `[f_a, f_b]`.
fn bracket_table(s: &GKStructure, t: f64) -> Result<Vec<Vec<Vec<f64>>>> {
    let n = s.dim();
    let last = n - 1;
    let tb = s.frame.time_brackets();
    let mut c = vec![vec![vec![0.0; n]; n]; n];
    for a in 0..3 {
        for b in 0..3 {
            let v = tb[a][b].eval(t)?;
            c[last][a][b] = v;
            c[a][last][b] = -v;
        }
    }
    Ok(c)
}

fn nijenhuis_residual(s: &GKStructure, op: &QMatrix, t: f64) -> Result<f64> {
    let n = s.dim();
    let c = bracket_table(s, t)?;
    let j = op.to_f64_rows();
    let col = |a: usize| -> Vec<f64> { (0..n).map(|i| j[i][a]).collect() };
    let unit = |a: usize| -> Vec<f64> { (0..n).map(|i| f64::from(u8::from(i == a))).collect() };
    let bracket = |x: &[f64], y: &[f64]| -> Vec<f64> {
        let mut out = vec![0.0; n];
        for a in 0..n {
            if x[a] == 0.0 {
                continue;
            }
            for b in 0..n {
                if y[b] == 0.0 {
                    continue;
                }
                for k in 0..n {
                    out[k] += x[a] * y[b] * c[a][b][k];
                }
            }
        }
        out
    };
    let apply = |v: &[f64]| -> Vec<f64> { (0..n).map(|i| (0..n).map(|k| j[i][k] * v[k]).sum()).collect() };
    let mut worst: f64 = 0.0;
    for a in 0..n {
        for b in a + 1..n {
            let (x, y) = (unit(a), unit(b));
            let (jx, jy) = (col(a), col(b));
            let t1 = bracket(&jx, &jy);
            let t2 = apply(&bracket(&jx, &y));
            let t3 = apply(&bracket(&x, &jy));
            let t4 = bracket(&x, &y);
            for k in 0..n {
                worst = worst.max((t1[k] - t2[k] - t3[k] - t4[k]).abs());
            }
        }
    }
    Ok(worst)
}

/// `max |∂_t V(:, a) − Σ_b c_ab V(:, b)|` with central differences.
pub fn bracket_fd_residual(s: &GKStructure, points: &[f64]) -> Result<f64> {
    let h = 1e-5;
    let frame = &s.frame;
    let tb = frame.time_brackets();
    grid_max(points, |t| {
        let (lo, hi) = (t - h, t + h);
        let (vl, vh, v0) = (frame.frame_matrix_at(lo)?, frame.frame_matrix_at(hi)?, frame.frame_matrix_at(t)?);
        let mut worst: f64 = 0.0;
        for a in 0..3 {
            for i in 0..3 {
                let fd = (vh[i][a] - vl[i][a]) / (hi - lo);
                let table: f64 = (0..3).map(|b| tb[a][b].eval(t).map(|c| c * v0[i][b])).sum::<Result<f64>>()?;
                worst = worst.max((fd - table).abs());
            }
        }
        Ok(worst)
    })
}

pub fn verify_gk(s: &GKStructure, grid_size: usize) -> Result<Certificate> {
    if grid_size < 2 {
        return Err(Error::Invalid(format!("grid size must be at least 2, got {grid_size}")));
    }
    let pts = s.frame.grid(grid_size);
    let (ip, im) = (s.i_plus(), s.i_minus());
    let g = s.metric();
    let tol = GRID_TOLERANCE;

    let sq = grid_max(&pts, |t| Ok(square_plus_identity(&ip, t)?.max(square_plus_identity(&im, t)?)))?;
    let metric = grid_max(&pts, |t| {
        Ok(metric_residual(&ip, &g, &s.omega_plus, t)?.max(metric_residual(&im, &g, &s.omega_minus, t)?))
    })?;
    let nij = grid_max(&pts, |t| {
        Ok(nijenhuis_residual(s, &s.i_plus_frame, t)?.max(nijenhuis_residual(s, &s.i_minus_frame, t)?))
    })?;
    let fd = bracket_fd_residual(s, &pts)?;

    let (hp, hm) = s.dc_omegas()?;
    let sum = hp.add(&hm);
    let dh = hp.exterior_d();
    let closed = hp.sub(&s.h_closed_form());
    let frame_form = hp.sub(&s.h_frame_form());

    let items = vec![
        CheckItem::new("a_square", "I_+^2 + Id and I_-^2 + Id vanish", sq, tol),
        CheckItem::new("b_metric", "g(I X, I Y) = g(X, Y) and omega(X, Y) = g(I X, Y)", metric, tol),
        CheckItem::new("c_nijenhuis", "Nijenhuis tensors of I_+ and I_- on all frame pairs", nij, tol),
        CheckItem::new("c_bracket_fd", "bracket table agrees with finite differences", fd, BRACKET_FD_TOLERANCE),
        CheckItem::new("d_dc_balance", "d^c_+ omega_+ + d^c_- omega_- = 0", sum.max_abs_on(&pts)?, tol),
        CheckItem::new("e_dh", "dH = 0", dh.max_abs_on(&pts)?, tol),
        CheckItem::new("f_h_closed_form", "H = -(1/l)'(1/a1) dx^123", closed.max_abs_on(&pts)?, tol),
        CheckItem::new("f_h_frame_form", "H = (2v/l) e^1 ^ e^2 ^ e^3", frame_form.max_abs_on(&pts)?, tol),
    ];

    let h_zero = hp.zero_test(0.0, s.frame.period);
    let two_v_over_l = s.frame.v_over_l();
    let h_coefficient = hp
        .coefficient(&[crate::symforms::Coord::X(1), crate::symforms::Coord::X(2), crate::symforms::Coord::X(3)])
        .eval(0.0)?;
    Ok(Certificate {
        grid_size,
        period: s.frame.period,
        items,
        torsion_free: h_zero.is_zero(),
        torsion_zero_kind: h_zero.label().into(),
        h_class_nonzero: !s.frame.zero_test(&two_v_over_l).is_zero(),
        h_coefficient,
        split: classify_split(s)?,
    })
}
