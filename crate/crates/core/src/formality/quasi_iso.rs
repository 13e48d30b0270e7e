//! Morphisms of free CDGAs given on generators and the maps they induce in
//! cohomology.

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cdga::{Cdga, Monomial, Poly};
use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};

/// How the images of generators are to be read.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum TargetMode {
    /// `ν∘d = d∘ν` on the nose.
    Chain,
    /// The target is `(H^*(B), 0)` with classes given by cocycle
    /// representatives: `ν(x)` must be closed and `ν(dx)` exact.
    Cohomology,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct DegreeComparison {
    pub degree: usize,
    pub source_dim: usize,
    pub target_dim: usize,
    pub induced_rank: usize,
    pub iso: bool,
}

#[derive(Clone, Debug, Serialize)]
pub struct QuasiIsoVerdict {
    pub mode: TargetMode,
    pub max_degree: usize,
    pub degrees: Vec<DegreeComparison>,
    pub quasi_iso: bool,
    pub first_failure: Option<usize>,
}

pub struct Morphism<'a> {
    pub source: &'a Cdga,
    pub target: &'a Cdga,
    pub images: Vec<Poly>,
}

impl<'a> Morphism<'a> {
    /// Checks that each image is homogeneous of its generator's degree.
    pub fn new(source: &'a Cdga, target: &'a Cdga, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.generators().len() {
            return Err(Error::Invalid("one image per source generator is required".into()));
        }
        for (g, img) in source.generators().iter().zip(&images) {
            if img.terms.keys().any(|m| target.mono_degree(m) != g.degree) {
                return Err(Error::Invalid(format!("image of {} is not of degree {}", g.name, g.degree)));
            }
        }
        Ok(Morphism { source, target, images })
    }

    pub fn identity(a: &'a Cdga) -> Self {
        let images = (0..a.generators().len()).map(|i| a.gen(i)).collect();
        Morphism { source: a, target: a, images }
    }

    pub fn apply_mono(&self, m: &Monomial) -> Poly {
        let mut out = self.target.one();
        for (i, &e) in m.iter().enumerate() {
            for _ in 0..e {
                out = self.target.mul(&out, &self.images[i]);
            }
        }
        out
    }

    pub fn apply(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            out = out.add(&self.apply_mono(m).scale(c));
        }
        out
    }
}

fn rank_of_columns(rows: usize, cols: &[Vec<Q>]) -> usize {
    if cols.is_empty() || rows == 0 {
        return 0;
    }
    QMatrix::from_columns(rows, cols).rank()
}

fn columns_of(m: &QMatrix) -> Vec<Vec<Q>> {
    (0..m.cols()).map(|c| m.column(c)).collect()
}

/// Whether `p` (of degree `k`) is a coboundary in `a`.
fn is_exact(a: &Cdga, p: &Poly, k: usize) -> Result<bool> {
    if p.is_zero() {
        return Ok(true);
    }
    if k == 0 {
        return Ok(false);
    }
    let (_, dst, d) = a.d_matrix(k - 1)?;
    let v = a.coordinates(p, &dst)?;
    let mut cols = columns_of(&d);
    let base = rank_of_columns(dst.len(), &cols);
    cols.push(v);
    Ok(rank_of_columns(dst.len(), &cols) == base)
}

fn check_compatibility(phi: &Morphism, mode: TargetMode) -> Result<()> {
    let (src, tgt) = (phi.source, phi.target);
    for (i, g) in src.generators().iter().enumerate() {
        let pushed = phi.apply(src.differential(i));
        let d_image = tgt.d_poly(&phi.images[i]);
        let ok = match mode {
            TargetMode::Chain => pushed == d_image,
            TargetMode::Cohomology => d_image.is_zero() && is_exact(tgt, &pushed, g.degree + 1)?,
        };
        if !ok {
            return Err(Error::NotChainMap(format!("generator {}", g.name)));
        }
    }
    Ok(())
}

/// Rank of the induced map `H^k(A) → H^k(B)` and both dimensions.
fn compare_degree(phi: &Morphism, k: usize) -> Result<DegreeComparison> {
    let (src, tgt) = (phi.source, phi.target);
    let (a_basis, _, da) = src.d_matrix(k)?;
    let a_prev_rank = if k == 0 { 0 } else { src.d_matrix(k - 1)?.2.rank() };
    let cocycles = da.kernel();
    let source_dim = cocycles.len() - a_prev_rank;

    let (b_basis, _, db) = tgt.d_matrix(k)?;
    let b_prev = if k == 0 { QMatrix::zeros(b_basis.len(), 0) } else { tgt.d_matrix(k - 1)?.2 };
    let b_prev_rank = b_prev.rank();
    let target_dim = db.kernel().len() - b_prev_rank;

    let mut cols = columns_of(&b_prev);
    for z in &cocycles {
        let image = phi.apply(&src.poly_from_coordinates(z, &a_basis));
        cols.push(tgt.coordinates(&image, &b_basis)?);
    }
    let induced_rank = rank_of_columns(b_basis.len(), &cols) - b_prev_rank;
    Ok(DegreeComparison {
        degree: k,
        source_dim,
        target_dim,
        induced_rank,
        iso: source_dim == target_dim && induced_rank == source_dim,
    })
}

/// Checks compatibility with `d`, then compares cohomology degree by degree.
pub fn check_quasi_iso(phi: &Morphism, mode: TargetMode, max_degree: usize) -> Result<QuasiIsoVerdict> {
    let needed = max_degree + 1;
    for a in [phi.source, phi.target] {
        if needed > a.cutoff() {
            return Err(Error::Cutoff { requested: needed, cutoff: a.cutoff() });
        }
    }
    check_compatibility(phi, mode)?;
    let degrees: Vec<DegreeComparison> =
        (0..=max_degree).into_par_iter().map(|k| compare_degree(phi, k)).collect::<Result<_>>()?;
    let first_failure = degrees.iter().find(|d| !d.iso).map(|d| d.degree);
    Ok(QuasiIsoVerdict { mode, max_degree, quasi_iso: first_failure.is_none(), first_failure, degrees })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formality::cdga::Generator;

    fn sm() -> Cdga {
        let g = vec![Generator { name: "a".into(), degree: 1 }, Generator { name: "b".into(), degree: 3 }];
        Cdga::new(g, vec![Poly::zero(), Poly::zero()]).unwrap()
    }

    #[test]
    fn identity_is_quasi_iso() {
        let a = sm();
        let v = check_quasi_iso(&Morphism::identity(&a), TargetMode::Chain, 4).unwrap();
        assert!(v.quasi_iso);
        assert_eq!(v.degrees.iter().map(|d| d.source_dim).collect::<Vec<_>>(), vec![1, 1, 0, 1, 1]);
    }

    #[test]
    fn killing_a_generator_fails() {
        let a = sm();
        let phi = Morphism::new(&a, &a, vec![a.gen(0), Poly::zero()]).unwrap();
        let v = check_quasi_iso(&phi, TargetMode::Chain, 4).unwrap();
        assert_eq!(v.first_failure, Some(3));
    }

    #[test]
    fn chain_violation_names_generator() {
        // x(1), y(2) with dx = y; sending y to 0 but keeping x breaks ν∘d = d∘ν.
        let g = vec![Generator { name: "x".into(), degree: 1 }, Generator { name: "y".into(), degree: 2 }];
        let base = Cdga::new(g.clone(), vec![Poly::zero(), Poly::zero()]).unwrap();
        let a = Cdga::new(g, vec![base.gen(1), Poly::zero()]).unwrap();
        let phi = Morphism::new(&a, &a, vec![a.gen(0), Poly::zero()]).unwrap();
        match check_quasi_iso(&phi, TargetMode::Chain, 2) {
            Err(Error::NotChainMap(msg)) => assert!(msg.contains('x')),
            other => panic!("{other:?}"),
        }
    }
}
