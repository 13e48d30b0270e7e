mod common;

use common::{int, j1, random_j1_linear, random_sl};
use gktorus::cohomology::{
    b1_parity_report, kunneth, mapping_torus_of, numbered_names, tensor_fixed_spaces, CohomologyTable, PullbackAction,
};
use gktorus::inoue::enumerate_admissible;
use gktorus::linalg::QMatrix;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn torus_of(s: &[Vec<i64>]) -> CohomologyTable {
    let a = PullbackAction::from_linear_map(&int(s.to_vec())).unwrap();
    mapping_torus_of(&a, &numbered_names(1, a.rank())).unwrap()
}

fn fixed_dim(s: &[Vec<i64>]) -> usize {
    QMatrix::from_i64_rows(s).unwrap().minus_identity().kernel().len()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn mapping_tori_satisfy_duality_and_vanishing_euler_characteristic(n in 1usize..=4, steps in 0usize..8, seed in any::<u64>()) {
        let s = random_sl(n, steps, &mut ChaCha8Rng::seed_from_u64(seed));
        let t = torus_of(&s);
        prop_assert_eq!(t.dims.len(), n + 2);
        prop_assert_eq!(t.dims[0], 1);
        prop_assert_eq!(t.dims[1], 1 + fixed_dim(&s));
        prop_assert!(t.is_poincare_symmetric());
        prop_assert_eq!(t.euler_characteristic(), 0);
    }

    #[test]
    fn identity_factor_splits_off_by_kunneth(n in 1usize..=3, k in 1usize..=3, steps in 0usize..6, seed in any::<u64>()) {
        let s = random_sl(n, steps, &mut ChaCha8Rng::seed_from_u64(seed));
        let mut block = vec![vec![0i64; n + k]; n + k];
        for i in 0..n {
            block[i][..n].copy_from_slice(&s[i]);
        }
        for i in n..n + k {
            block[i][i] = 1;
        }
        prop_assert_eq!(torus_of(&block).dims, kunneth(&torus_of(&s), &CohomologyTable::torus(k)).dims);
    }
}

#[test]
fn j1_linear_fiber_maps_give_odd_b1_and_factorized_fixed_spaces() {
    let rhos = enumerate_admissible((-4, 4), (-4, 4));
    assert!(!rhos.is_empty());
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for trial in 0..50 {
        let rho = &rhos[trial % rhos.len()];
        let s = random_j1_linear(3 + trial % 5, &mut rng);
        let sq = QMatrix::from_i64_rows(&s).unwrap();
        assert_eq!(sq.mul(&j1()).unwrap(), j1().mul(&sq).unwrap(), "{s:?}");
        let rho_a = PullbackAction::from_linear_map(&rho.a).unwrap();
        let psi_a = PullbackAction::from_linear_map(&int(s)).unwrap();
        let b1 = b1_parity_report(&rho_a, &psi_a).unwrap();
        assert_eq!(b1.rho_fixed, 0);
        assert_eq!(b1.psi_fixed % 2, 0);
        assert!(b1.odd, "{b1:?}");
        for r in 0..=7 {
            for k in tensor_fixed_spaces(&rho_a, &psi_a, r).unwrap() {
                assert!(k.agree, "trial {trial}: {k:?}");
            }
        }
    }
}
