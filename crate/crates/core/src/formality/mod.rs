//! Finite CDGAs over `Q`: monomial bases, cohomology, quasi-isomorphism
//! checks, the Jordan-block formality criteria for mapping tori and the
//! low-degree minimal-model fragment they produce.
//!
//! Monomials are exponent vectors in generator order. A product is brought
//! to that order with the Koszul sign of the odd generators it passes.

mod bfm;
mod cdga;
mod models;
mod parse;
mod quasi_iso;

pub use bfm::{
    bfm_formality_test, jordan_filtration, minimal_model_low_degree, BfmRecord, DegreeEigenRecord,
    FormalityVerdict, JordanData, MinimalModelFragment,
};
pub use cdga::{Cdga, CdgaCohomology, Generator, Monomial, Poly, DEFAULT_CUTOFF};
pub use models::{lambda_pairs, quarter_rotation_model, quarter_rotation_nu, sm_model};
pub use parse::{parse_cdga_json, parse_poly, CdgaSpec};
pub use quasi_iso::{check_quasi_iso, DegreeComparison, Morphism, QuasiIsoVerdict, TargetMode};

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sm_model_cohomology() {
        let a = sm_model().unwrap();
        assert_eq!(a.cohomology(4).unwrap().dims, vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn quarter_rotation_model_low_degrees() {
        let a = quarter_rotation_model().unwrap();
        assert_eq!(a.generators().len(), 15);
        let h = a.cohomology(8).unwrap();
        eprintln!("quarter rotation model: {:?} (basis {:?})", h.dims, h.basis_sizes);
        assert_eq!(&h.dims[..5], &[1, 1, 4, 5, 2]);
    }

    #[test]
    fn nu_killing_b1_fails_in_degree_two() {
        let a = quarter_rotation_model().unwrap();
        let mut nu = quarter_rotation_nu(&a);
        nu[a.index_of("b1").unwrap()] = Poly::zero();
        // ν(dλ_11) = 0 is still exact, so ν is a map to cohomology.
        let phi = Morphism::new(&a, &a, nu).unwrap();
        let v = check_quasi_iso(&phi, TargetMode::Cohomology, 3).unwrap();
        assert_eq!(v.first_failure, Some(2));
    }
}
