use std::f64::consts::PI;

use gktorus::gk::{
    assemble_gk, check_frame_conditions, classify_split, verify_gk, FiberMap, FiberMode, FlatFiber, FrameFamily,
};
use gktorus::inoue::rho_at;
use gktorus::linalg::IntMatrix;
use gktorus::symforms::ScalarExpr;
use gktorus::Error;
use proptest::prelude::*;

/// Inoue frame whose rotation angle `pt` is perturbed by `eps·sin(2πt/t0)`;
/// the ends, `v/l` and `(1/l)'/a1` are unchanged.
fn wobbled_frame(p: f64, t0: f64, eps: f64) -> FrameFamily {
    let t = ScalarExpr::t();
    let angle = ScalarExpr::param("p", p)
        .mul(&t)
        .add(&ScalarExpr::param("eps", eps).mul(&ScalarExpr::param("omega", 2.0 * PI / t0).mul(&t).sin()));
    let damp = ScalarExpr::frac(-1, 2).mul(&t).exp();
    FrameFamily::new(t.exp(), damp.mul(&angle.cos()), damp.mul(&angle.sin()).neg(), t0)
}

fn unitary_word(word: &[u8]) -> FiberMap {
    let gens: [[[i64; 4]; 4]; 2] = [
        // z1 ↦ i z1
        [[0, -1, 0, 0], [1, 0, 0, 0], [0, 0, 1, 0], [0, 0, 0, 1]],
        // z1 ↔ z2
        [[0, 0, 0, 1], [0, 0, 1, 0], [0, 1, 0, 0], [1, 0, 0, 0]],
    ];
    let mut m = [[0i64; 4]; 4];
    for (i, row) in m.iter_mut().enumerate() {
        row[i] = 1;
    }
    for &g in word {
        let e = gens[g as usize % 2];
        let mut out = [[0i64; 4]; 4];
        for i in 0..4 {
            for j in 0..4 {
                out[i][j] = (0..4).map(|k| m[i][k] * e[k][j]).sum();
            }
        }
        m = out;
    }
    FiberMap { matrix: IntMatrix(m.iter().map(|r| r.to_vec()).collect()) }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn wobbled_frames_glue_and_certify(p in -2.0f64..2.0, t0 in 0.3f64..1.5, eps in -0.3f64..0.3, hyper in any::<bool>()) {
        let frame = wobbled_frame(p, t0, eps);
        let rho = rho_at(p, t0);
        let report = check_frame_conditions(&frame, &rho).unwrap();
        prop_assert!(report.pass(), "{:?}", report.failures());
        prop_assert!((report.torsion_density - 1.0).abs() < 1e-12);
        let mode = if hyper { FiberMode::Hyperkahler } else { FiberMode::Kahler };
        let fiber = FlatFiber::new(4, mode).unwrap();
        let s = assemble_gk(&frame, &rho, &fiber, &FiberMap::identity(4)).unwrap();
        let cert = verify_gk(&s, 9).unwrap();
        prop_assert!(cert.pass(), "{:?}", cert.items.iter().filter(|i| !i.pass).collect::<Vec<_>>());
        prop_assert!((cert.h_coefficient + 1.0).abs() < 1e-9);
        prop_assert_eq!(cert.split.is_split(), !hyper);
    }

    #[test]
    fn unitary_fiber_maps_are_accepted_in_kahler_mode(word in prop::collection::vec(0u8..2, 0..6)) {
        let fiber = FlatFiber::new(4, FiberMode::Kahler).unwrap();
        let psi = unitary_word(&word);
        prop_assert!(psi.check_preserves(&fiber).unwrap().pass());
        let (p, t0) = (0.8, 0.6);
        let s = assemble_gk(&FrameFamily::inoue(p, t0), &rho_at(p, t0), &fiber, &psi).unwrap();
        prop_assert!(classify_split(&s).unwrap().is_split());
    }
}

#[test]
fn non_constant_density_is_rejected() {
    let (p, t0) = (0.8, 0.6);
    let base = FrameFamily::inoue(p, t0);
    let t = ScalarExpr::t();
    let bent = FrameFamily::new(t.exp().mul(&ScalarExpr::one().add(&t.scale(&gktorus::linalg::q_frac(1, 10)))), base.b2, base.b3, t0);
    let report = check_frame_conditions(&bent, &rho_at(p, t0)).unwrap();
    assert!(!report.items.iter().find(|i| i.item == "density_constant").unwrap().pass);
    let fiber = FlatFiber::new(4, FiberMode::Kahler).unwrap();
    match assemble_gk(&bent, &rho_at(p, t0), &fiber, &FiberMap::identity(4)) {
        Err(Error::Preconditions(msgs)) => assert!(msgs.iter().any(|m| m.contains("density_constant")), "{msgs:?}"),
        other => panic!("{:?}", other.map(|_| ())),
    }
}

#[test]
fn quaternionic_mode_rejects_maps_moving_omega2() {
    let fiber = FlatFiber::new(4, FiberMode::Hyperkahler).unwrap();
    let psi = unitary_word(&[0]);
    let report = psi.check_preserves(&fiber).unwrap();
    assert!(!report.pass());
    assert!(report.failures().iter().any(|f| f.contains("omega_2")));
    let (p, t0) = (0.8, 0.6);
    assert!(matches!(
        assemble_gk(&FrameFamily::inoue(p, t0), &rho_at(p, t0), &fiber, &psi),
        Err(Error::Preconditions(_))
    ));
}
