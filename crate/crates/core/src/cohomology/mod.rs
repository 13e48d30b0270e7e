//! Exact cohomology of mapping tori of tori, Hodge tables, Borel `E_2`
//! pages and the Dolbeault structure equations of Inoue surfaces.
//!
//! All computations are over `Q`. A map `x ↦ S x` of a torus acts on
//! `H^1` coefficient columns by `S^T` (row `i` of `S` gives `f^* dx^i`).

mod dolbeault;
mod exterior;
mod hodge;
mod mapping_torus;

pub use dolbeault::{verify_dolbeault_frame, verify_inoue_dolbeault_frame, DolbeaultCertificate};
pub use exterior::{binomial, exterior_power_map, multi_indices, PullbackAction};
pub use hodge::{
    borel_e2, collapse, hodge_kunneth, BorelPage, CollapsedTable, Degeneration, HodgeTable,
};
pub use mapping_torus::{
    b1_parity_report, kunneth, mapping_torus_cohomology, mapping_torus_of, numbered_names,
    tensor_fixed_spaces, B1Report, BidegreeKernel, CohomologyTable,
};
