//! Symbolic scalar calculus in one variable and the exterior algebra of the
//! universal-cover chart.

mod expr;
mod form;
mod sexpr;

pub use expr::{
    chebyshev_points, max_abs_on, uniform_grid, zero_test, Node, ScalarExpr, ZeroKind,
    ZERO_TEST_POINTS, ZERO_TOLERANCE,
};
pub use form::{
    apply_endo, chart_coords, forms_equal_exact, ChartEndo, ChartForm, ChartVector, ComplexForm,
    ComplexScalar, Coord, MultiIndex,
};

/// `d^c α := J^{-1} ∘ d ∘ J (α)` where both operators act on forms by
/// `(Jα)(X_1, …) = α(J X_1, …)`.
///
/// With this action `Jθ = e^1`, `J_+ e^2 = -e^3`, `J_+ e^3 = e^2` on the
/// `T^3_ρ` coframe, and the Inoue frame with `ψ = Id` produces `d^c_+ ω_+ =
/// -dx^{123}`; the calibration test in `gk` pins the sign.
pub fn d_c(form: &ChartForm, j: &ChartEndo, j_inv: &ChartEndo) -> crate::error::Result<ChartForm> {
    let jf = apply_endo(form, j)?;
    apply_endo(&jf.exterior_d(), j_inv)
}
