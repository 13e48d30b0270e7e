mod common;

use common::{bareiss_rank, random_sl};
use gktorus::formality::{
    bfm_formality_test, jordan_filtration, minimal_model_low_degree, parse_poly, quarter_rotation_model, Cdga,
    FormalityVerdict, Poly,
};
use gktorus::linalg::{q, QMatrix};
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn jordan_block(size: usize, eigenvalue: i64) -> QMatrix {
    let mut m = QMatrix::zeros(size, size);
    for i in 0..size {
        m[(i, i)] = q(eigenvalue);
        if i + 1 < size {
            m[(i, i + 1)] = q(1);
        }
    }
    m
}

/// `P J P^{-1}` for unipotent blocks of the given sizes plus blocks at other eigenvalues.
fn conjugated_shape(unipotent: &[usize], others: &[(usize, i64)], seed: u64) -> QMatrix {
    let mut blocks: Vec<QMatrix> = unipotent.iter().map(|&s| jordan_block(s, 1)).collect();
    blocks.extend(others.iter().map(|&(s, e)| jordan_block(s, e)));
    let refs: Vec<&QMatrix> = blocks.iter().collect();
    let j = QMatrix::block_diag(&refs);
    let n = j.rows();
    let p = QMatrix::from_i64_rows(&random_sl(n, 2 * n, &mut ChaCha8Rng::seed_from_u64(seed))).unwrap();
    p.mul(&j).unwrap().mul(&p.inverse().unwrap()).unwrap()
}

fn shape() -> impl Strategy<Value = (Vec<usize>, Vec<(usize, i64)>, u64)> {
    (
        prop::collection::vec(1usize..=4, 0..=3),
        prop::collection::vec((1usize..=2, prop_oneof![Just(-1i64), Just(2), Just(3)]), 0..=2),
        any::<u64>(),
    )
        .prop_filter("non-empty", |(u, o, _)| !u.is_empty() || !o.is_empty())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn filtration_matches_rank_of_powers((unipotent, others, seed) in shape()) {
        let f = conjugated_shape(&unipotent, &others, seed).minus_identity();
        let n = f.rows();
        let jd = jordan_filtration(&f).unwrap();
        let r = unipotent.iter().copied().max().unwrap_or(0);
        prop_assert_eq!(jd.r, r);
        let mut power = QMatrix::identity(n);
        for k in 0..=r {
            prop_assert_eq!(jd.kernel_dims[k], n - bareiss_rank(&power));
            power = power.mul(&f).unwrap();
        }
        for size in 1..=4 {
            let expected = unipotent.iter().filter(|&&s| s == size).count();
            if size <= r {
                prop_assert_eq!(jd.blocks_of_size(size), expected);
            }
        }
        for (j, g) in jd.g_dims.iter().enumerate() {
            prop_assert_eq!(*g, unipotent.iter().filter(|&&s| s > j).count());
        }
        for (j, m) in jd.induced.iter().enumerate() {
            // F maps G^{j+2} injectively into G^{j+1}.
            prop_assert_eq!(m.rank(), jd.g_dims[j + 1]);
        }
    }

    #[test]
    fn criteria_follow_the_jordan_shape((unipotent, others, seed) in shape()) {
        let f2 = conjugated_shape(&unipotent, &others, seed);
        let hyperbolic = QMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]]).unwrap();
        let actions = vec![QMatrix::identity(1), hyperbolic, f2.clone()];
        let rec = bfm_formality_test(&actions).unwrap();
        let r = unipotent.iter().copied().max().unwrap_or(0);
        let expected = if unipotent.contains(&2) {
            FormalityVerdict::NonFormalCriterion1
        } else if r >= 2 {
            FormalityVerdict::NonFormalRGe2
        } else {
            FormalityVerdict::Inconclusive
        };
        prop_assert_eq!(rec.verdict, expected);
        if r > 0 {
            let frag = minimal_model_low_degree(&actions, 2).unwrap();
            prop_assert_eq!(frag.non_formal, r >= 2);
            let h = frag.cdga.cohomology(2).unwrap();
            prop_assert_eq!(h.dims[1], 1);
            prop_assert_eq!(h.dims[2], unipotent.len());
        } else {
            prop_assert!(minimal_model_low_degree(&actions, 2).is_err());
        }
    }
}

fn random_monomial(a: &Cdga) -> impl Strategy<Value = Poly> + '_ {
    let n = a.generators().len();
    (prop::collection::vec(0..n, 0..=3), -3i64..=3).prop_map(move |(idx, c)| {
        let p = idx.iter().fold(a.one(), |acc, &i| a.mul(&acc, &a.gen(i)));
        p.scale(&q(c))
    })
}

fn sign(x: usize, y: usize) -> i64 {
    if x * y % 2 == 1 {
        -1
    } else {
        1
    }
}

#[test]
fn cdga_products_are_graded_commutative_and_d_is_a_derivation() {
    let a = quarter_rotation_model().unwrap();
    let mut runner = proptest::test_runner::TestRunner::new(ProptestConfig::with_cases(200));
    runner
        .run(&(random_monomial(&a), random_monomial(&a), random_monomial(&a)), |(x, y, z)| {
            let (Some(dx), Some(dy)) = (a.poly_degree(&x), a.poly_degree(&y)) else { return Ok(()) };
            prop_assert_eq!(a.mul(&x, &y), a.mul(&y, &x).scale(&q(sign(dx, dy))));
            prop_assert_eq!(a.mul(&a.mul(&x, &y), &z), a.mul(&x, &a.mul(&y, &z)));
            let lhs = a.d_poly(&a.mul(&x, &y));
            let rhs = a.mul(&a.d_poly(&x), &y).add(&a.mul(&x, &a.d_poly(&y)).scale(&q(sign(dx, 1))));
            prop_assert_eq!(lhs, rhs);
            prop_assert!(a.d_poly(&a.d_poly(&x)).is_zero());
            let text = a.display_poly(&x);
            prop_assert_eq!(parse_poly(&a, &text).unwrap(), x.clone(), "{}", text);
            Ok(())
        })
        .unwrap();
}
