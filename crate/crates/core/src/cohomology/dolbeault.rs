//! Structure equations of the `(1,0)`-coframe of an Inoue surface
//! `φ^1_+ = e^2 + i e^3`, `φ^1_- = e^3 + i e^2`, `φ^2 = e^1 + i θ`.

use serde::Serialize;

use crate::error::Result;
use crate::gk::{build_coframe, CheckItem, FrameFamily, GRID_TOLERANCE};
use crate::symforms::{ChartForm, ComplexForm, ComplexScalar, Coord, ScalarExpr};

#[derive(Clone, Debug, Serialize)]
pub struct DolbeaultCertificate {
    pub items: Vec<CheckItem>,
    /// `α = v/l` at `t = 0`.
    pub alpha: f64,
    /// `β_+ = −w/l` at `t = 0`.
    pub beta_plus: f64,
}

impl DolbeaultCertificate {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.pass)
    }
}

/// Certifies `dφ^1_± = ((α − iβ_±)/2i)(φ^{12} − φ^{1\bar 2})` and
/// `dφ^2 = −iα φ^{2\bar 2}` with `α = v/l`, `β_± = ∓w/l`, and that `α = −1/2`.
pub fn verify_dolbeault_frame(frame: &FrameFamily, grid_size: usize) -> Result<DolbeaultCertificate> {
    let cf = build_coframe(frame)?;
    let [e1, e2, e3] = cf.forms.clone();
    let theta = ChartForm::dx(Coord::T);
    let phi1_plus = ComplexForm::new(e2.clone(), e3.clone());
    let phi1_minus = ComplexForm::new(e3, e2);
    let phi2 = ComplexForm::new(e1, theta);

    let alpha = frame.v_over_l();
    let beta_plus = frame.w_over_l().neg();
    let two_i = ComplexScalar::new(ScalarExpr::zero(), ScalarExpr::int(2));
    let coefficient = |beta: &ScalarExpr| ComplexScalar::new(alpha.clone(), beta.neg()).div(&two_i);
    let rhs1 = |phi1: &ComplexForm, beta: &ScalarExpr| {
        phi1.wedge(&phi2).sub(&phi1.wedge(&phi2.conj())).scale(&coefficient(beta))
    };
    let minus_i_alpha = ComplexScalar::new(ScalarExpr::zero(), alpha.neg());
    let rhs2 = phi2.wedge(&phi2.conj()).scale(&minus_i_alpha);

    let pts = frame.grid(grid_size);
    let r_plus = phi1_plus.exterior_d().sub(&rhs1(&phi1_plus, &beta_plus)).max_abs_on(&pts)?;
    let r_minus = phi1_minus.exterior_d().sub(&rhs1(&phi1_minus, &beta_plus.neg())).max_abs_on(&pts)?;
    let r2 = phi2.exterior_d().sub(&rhs2).max_abs_on(&pts)?;
    let conj = phi1_plus.conj().exterior_d().sub(&phi1_plus.exterior_d().conj()).max_abs_on(&pts)?;
    let alpha_dev = pts
        .iter()
        .map(|&t| alpha.eval(t).map(|a| (a + 0.5).abs()))
        .collect::<Result<Vec<f64>>>()?
        .into_iter()
        .fold(0.0, f64::max);

    let tol = GRID_TOLERANCE;
    Ok(DolbeaultCertificate {
        items: vec![
            CheckItem::new("dphi1_plus", "d phi^1_+ = ((alpha - i beta_+)/2i)(phi^12 - phi^1bar2)", r_plus, tol),
            CheckItem::new("dphi1_minus", "d phi^1_- = ((alpha - i beta_-)/2i)(phi^12 - phi^1bar2)", r_minus, tol),
            CheckItem::new("dphi2", "d phi^2 = -i alpha phi^2bar2", r2, tol),
            CheckItem::new("conjugate", "d(conj phi) = conj(d phi)", conj, tol),
            CheckItem::new("alpha", "alpha = v/l equals -1/2", alpha_dev, tol),
        ],
        alpha: alpha.eval(0.0)?,
        beta_plus: beta_plus.eval(0.0)?,
    })
}

/// The certificate for the Inoue frame with parameters `(t0, p)`.
pub fn verify_inoue_dolbeault_frame(t0: f64, p: f64, grid_size: usize) -> Result<DolbeaultCertificate> {
    verify_dolbeault_frame(&FrameFamily::inoue(p, t0), grid_size)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inoue_frame_structure_equations() {
        let c = verify_inoue_dolbeault_frame(0.8, 1.7, 9).unwrap();
        assert!(c.pass(), "{:#?}", c.items);
        assert!((c.alpha + 0.5).abs() < 1e-12);
        assert!((c.beta_plus - 1.7).abs() < 1e-12);
    }

    #[test]
    fn flat_frame_fails_alpha() {
        let c = verify_dolbeault_frame(&FrameFamily::constant(), 5).unwrap();
        assert!(!c.pass());
    }
}
