//! Generalized Kähler mapping tori of `T^3 × N`.
//!
//! The crate builds split and non-split generalized Kähler structures on
//! mapping tori from explicit frame data, certifies their defining
//! identities on a time grid, and computes the associated topological
//! invariants with exact rational arithmetic:
//!
//! - [`symforms`]: scalar expressions in `t` and the chart exterior algebra
//! - [`inoue`]: integer matrices with Inoue-type spectrum and their `(t0, p, P)` data
//! - [`gk`]: frames, flat (hyper)Kähler fibers, structure assembly and certificates
//! - [`cohomology`]: mapping-torus de Rham cohomology, Hodge tables, Borel pages
//! - [`formality`]: finite CDGAs, quasi-isomorphisms and the Jordan-block formality tests
//! - [`report`] and [`runs`]: JSON run reports and the command implementations
//!   behind the `gktorus` binary

pub mod cohomology;
pub mod error;
pub mod formality;
pub mod gk;
pub mod inoue;
pub mod linalg;
pub mod report;
pub mod runs;
pub mod symforms;

pub use error::{Error, Result};
