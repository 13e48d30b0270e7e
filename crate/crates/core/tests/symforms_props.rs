use std::collections::BTreeMap;

use gktorus::linalg::QMatrix;
use gktorus::symforms::{ChartForm, Coord, ScalarExpr};
use proptest::prelude::*;

const POINTS: [f64; 5] = [0.0, 0.21, 0.5, 0.77, 1.0];

fn expr() -> impl Strategy<Value = ScalarExpr> {
    let leaf = prop_oneof![(-3i64..=3).prop_map(ScalarExpr::int), Just(ScalarExpr::t()),];
    leaf.prop_recursive(3, 16, 2, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.add(&b)),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| a.mul(&b)),
            inner.clone().prop_map(|a| a.sin()),
            inner.clone().prop_map(|a| a.cos()),
            inner.prop_map(|a| a.scale(&gktorus::linalg::q_frac(1, 2)).exp()),
        ]
    })
}

const COORDS: [Coord; 5] = [Coord::X(1), Coord::X(2), Coord::X(3), Coord::Y(1), Coord::T];

fn form(degree: usize) -> impl Strategy<Value = ChartForm> {
    prop::collection::vec((prop::sample::subsequence(COORDS.to_vec(), degree), expr()), 1..4).prop_map(
        move |terms| {
            terms.into_iter().fold(ChartForm::zero(degree), |acc, (idx, c)| acc.add(&ChartForm::monomial(&idx, c)))
        },
    )
}

fn max_abs(f: &ChartForm) -> f64 {
    f.max_abs_on(&POINTS).unwrap()
}

fn scale_of(f: &ChartForm) -> f64 {
    1.0 + max_abs(f)
}

fn small_matrix() -> impl Strategy<Value = QMatrix> {
    prop::collection::vec(-2i64..=2, 9).prop_map(|v| QMatrix::from_i64_rows(&[v[0..3].to_vec(), v[3..6].to_vec(), v[6..9].to_vec()]).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn d_squared_vanishes(f in (0usize..4).prop_flat_map(form)) {
        let dd = f.exterior_d().exterior_d();
        prop_assert!(max_abs(&dd) <= 1e-9 * scale_of(&f.exterior_d()));
    }

    #[test]
    fn wedge_is_graded_commutative(a in form(1), b in form(2), c in form(1)) {
        let ab = a.wedge(&b);
        prop_assert!(max_abs(&ab.sub(&b.wedge(&a))) <= 1e-9 * scale_of(&ab));
        let ac = a.wedge(&c);
        prop_assert!(max_abs(&ac.add(&c.wedge(&a))) <= 1e-9 * scale_of(&ac));
        prop_assert!(max_abs(&a.wedge(&a)) <= 1e-12);
    }

    #[test]
    fn leibniz_rule(a in form(1), b in form(2)) {
        let lhs = a.wedge(&b).exterior_d();
        let rhs = a.exterior_d().wedge(&b).sub(&a.wedge(&b.exterior_d()));
        prop_assert!(max_abs(&lhs.sub(&rhs)) <= 1e-9 * scale_of(&lhs));
    }

    #[test]
    fn pullback_is_contravariant_and_commutes_with_d(f in form(2), m in small_matrix(), n in small_matrix()) {
        let block = [Coord::X(1), Coord::X(2), Coord::X(3)];
        let twice = f.pullback_linear(&block, &m).unwrap().pullback_linear(&block, &n).unwrap();
        let once = f.pullback_linear(&block, &m.mul(&n).unwrap()).unwrap();
        prop_assert!(max_abs(&twice.sub(&once)) <= 1e-9 * scale_of(&once));
        let d_then_pull = f.exterior_d().pullback_linear(&block, &m).unwrap();
        let pull_then_d = f.pullback_linear(&block, &m).unwrap().exterior_d();
        prop_assert!(max_abs(&d_then_pull.sub(&pull_then_d)) <= 1e-9 * scale_of(&d_then_pull));
    }

    #[test]
    fn derivative_matches_central_differences(e in expr(), t in 0.05f64..0.95) {
        let (v, d) = e.eval_with_derivative(t).unwrap();
        prop_assume!(v.is_finite() && d.is_finite() && v.abs() < 1e6);
        let h = 1e-5;
        let fd = (e.eval(t + h).unwrap() - e.eval(t - h).unwrap()) / (2.0 * h);
        prop_assert!((d - fd).abs() <= 1e-6 * (1.0 + d.abs()), "d = {d}, fd = {fd}");
        let sym = e.derivative().eval(t).unwrap();
        prop_assert!((sym - d).abs() <= 1e-9 * (1.0 + d.abs()));
    }

    #[test]
    fn sexpr_round_trip(e in expr(), t in 0.0f64..1.0) {
        let text = e.to_sexpr();
        let back = ScalarExpr::parse_sexpr(&text, &BTreeMap::new()).unwrap();
        let (a, b) = (e.eval(t).unwrap(), back.eval(t).unwrap());
        prop_assert!((a - b).abs() <= 1e-12 * (1.0 + a.abs()), "{text}");
    }
}
