//! Split and non-split generalized Kähler structures on mapping tori of
//! `T^3 × N` with `N` a flat (hyper)Kähler torus.
//!
//! Time runs over `[0, T]` where `T` is the frame period (`t0` for the
//! frames produced from an integer matrix), so `θ = dt` and the torsion of
//! the Inoue frame is exactly `−dx^{123}`.
//!
//! Conventions: `J ∂_j = Σ_i M_ij ∂_i`; forms transform by
//! `(Jα)(X_1, …) = α(J X_1, …)`; `ω(X, Y) = g(I X, Y)`, equivalently
//! `g(X, Y) = ω(X, I Y)`; `d^c = J^{-1} d J`. The almost contact structure
//! is `φ_±(e_2) = ±e_3`, `φ_±(e_3) = ∓e_2`.

mod fiber;
mod frame;
mod structure;
mod verify;

pub use fiber::{fiber_coords, FiberMap, FiberMode, FlatFiber, PreservationReport};
pub use frame::{
    build_coframe, check_frame_conditions, CheckItem, Coframe, FrameFamily, FrameReport, GRID_TOLERANCE,
};
pub use structure::{
    assemble_gk, assemble_gk_unchecked, classify_split, frame_operator, GKStructure, SplitClass,
};
pub use verify::{bracket_fd_residual, verify_gk, Certificate, BRACKET_FD_TOLERANCE};

#[cfg(test)]
mod tests {
    use super::*;
    use crate::inoue::{companion, rho_at, solve};
    use crate::symforms::{ChartForm, Coord, ScalarExpr};

    fn x123() -> [Coord; 3] {
        [Coord::X(1), Coord::X(2), Coord::X(3)]
    }

    #[test]
    fn inoue_surface_torsion_is_minus_volume() {
        let d = solve(&companion(1, 0)).unwrap();
        let frame = FrameFamily::from_data(&d);
        let s = assemble_gk(&frame, &d.rho(), &FlatFiber::empty(), &FiberMap::identity(0)).unwrap();
        let h = s.h.clone();
        assert_eq!(h.terms().count(), 1);
        let c = h.coefficient(&x123());
        for t in frame.grid(5) {
            assert!((c.eval(t).unwrap() + 1.0).abs() < 1e-12, "{h}");
        }
        let cert = verify_gk(&s, 17).unwrap();
        assert!(cert.pass(), "{:#?}", cert.items);
        assert!(cert.split.is_split());
    }

    #[test]
    fn j_maps_theta_to_e1() {
        let s = assemble_gk_unchecked(&FrameFamily::inoue(0.8, 0.6), &FlatFiber::empty(), &FiberMap::identity(0))
            .unwrap();
        let jtheta = crate::symforms::apply_endo(&s.theta, &s.i_plus()).unwrap();
        let diff = jtheta.sub(&s.coframe.forms[0]);
        assert!(diff.zero_test(0.0, 0.6).is_zero(), "{jtheta}");
    }

    #[test]
    fn flat_frame_is_torsion_free() {
        let fiber = FlatFiber::new(4, FiberMode::Kahler).unwrap();
        let s = assemble_gk_unchecked(&FrameFamily::constant(), &fiber, &FiberMap::identity(4)).unwrap();
        let cert = verify_gk(&s, 9).unwrap();
        assert!(cert.pass());
        assert!(cert.torsion_free);
        assert!(!cert.h_class_nonzero);
    }

    #[test]
    fn hyperkahler_fiber_gives_non_split_structure() {
        let (p, t0) = (1.1, 0.9);
        let fiber = FlatFiber::new(4, FiberMode::Hyperkahler).unwrap();
        let s = assemble_gk(&FrameFamily::inoue(p, t0), &rho_at(p, t0), &fiber, &FiberMap::quarter_rotation(4))
            .unwrap();
        let cert = verify_gk(&s, 9).unwrap();
        assert!(cert.pass(), "{:#?}", cert.items);
        match cert.split {
            SplitClass::NonSplit { fiber_block_is_minus_omega3_inverse, .. } => {
                assert!(fiber_block_is_minus_omega3_inverse)
            }
            SplitClass::Split => panic!("expected non-split"),
        }
    }

    #[test]
    fn corrupted_structure_fails() {
        let fiber = FlatFiber::new(4, FiberMode::Kahler).unwrap();
        let mut s =
            assemble_gk_unchecked(&FrameFamily::inoue(0.5, 0.5), &fiber, &FiberMap::identity(4)).unwrap();
        s.i_plus_frame[(1, 2)] = -s.i_plus_frame[(1, 2)].clone();
        let cert = verify_gk(&s, 9).unwrap();
        assert!(!cert.item("a_square").unwrap().pass);
        assert!(cert.item("a_square").unwrap().max_residual >= 0.1);
    }

    #[test]
    fn torsion_matches_frame_form_exactly() {
        let s = assemble_gk_unchecked(&FrameFamily::inoue(0.3, 1.2), &FlatFiber::empty(), &FiberMap::identity(0))
            .unwrap();
        let closed = ChartForm::monomial(&x123(), ScalarExpr::int(-1));
        assert!(s.h.sub(&closed).zero_test(0.0, 1.2).is_zero());
    }
}
