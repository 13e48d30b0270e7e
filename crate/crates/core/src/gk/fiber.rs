//! Flat (hyper)Kähler tori `R^{4k}/Z^{4k}` with the standard quaternionic
//! structure and lattice automorphisms preserving it.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, QMatrix};
use crate::symforms::{ChartForm, Coord, ScalarExpr};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FiberMode {
    /// `I_+ = I_- = J_1` on the fiber: split structure.
    Kahler,
    /// `I_+ = J_1`, `I_- = J_2`: non-split structure.
    Hyperkahler,
}

/// `J_1` on one quaternionic block, columns are images of `∂_{y1..y4}`.
fn j1_block() -> Vec<Vec<i64>> {
    vec![vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]
}

/// `J_2 ∂_{y1} = −∂_{y4}`, `J_2 ∂_{y2} = ∂_{y3}`.
fn j2_block() -> Vec<Vec<i64>> {
    vec![vec![0, 0, 0, 1], vec![0, 0, -1, 0], vec![0, 1, 0, 0], vec![-1, 0, 0, 0]]
}

#[derive(Clone, Debug)]
pub struct FlatFiber {
    pub dim: usize,
    pub mode: FiberMode,
    /// `J_1, J_2, J_3 = J_1 J_2` with `J ∂_j = Σ_i J_ij ∂_i`.
    pub j: [QMatrix; 3],
    /// `ω_i(X, Y) = k(J_i X, Y)`.
    pub omega: [ChartForm; 3],
}

pub fn fiber_coords(dim: usize) -> Vec<Coord> {
    (1..=dim as u16).map(Coord::Y).collect()
}

impl FlatFiber {
    pub fn new(dim: usize, mode: FiberMode) -> Result<Self> {
        if dim % 4 != 0 {
            return Err(Error::Dimension(format!("flat fiber dimension {dim} is not a multiple of 4")));
        }
        let blocks = dim / 4;
        let tile = |b: Vec<Vec<i64>>| -> Result<QMatrix> {
            let block = QMatrix::from_i64_rows(&b)?;
            let copies: Vec<&QMatrix> = (0..blocks).map(|_| &block).collect();
            Ok(QMatrix::block_diag(&copies))
        };
        let j1 = tile(j1_block())?;
        let j2 = tile(j2_block())?;
        let j3 = j1.mul(&j2)?;
        let coords = fiber_coords(dim);
        let omega = [&j1, &j2, &j3].map(|m| kahler_form(m, &coords));
        Ok(FlatFiber { dim, mode, j: [j1, j2, j3], omega })
    }

    pub fn empty() -> Self {
        FlatFiber::new(0, FiberMode::Kahler).expect("zero is a multiple of 4")
    }

    pub fn coords(&self) -> Vec<Coord> {
        fiber_coords(self.dim)
    }

    /// Fiber blocks of `I_+` and `I_-`.
    pub fn structures(&self) -> (&QMatrix, &QMatrix) {
        match self.mode {
            FiberMode::Kahler => (&self.j[0], &self.j[0]),
            FiberMode::Hyperkahler => (&self.j[0], &self.j[1]),
        }
    }

    /// Fiber parts of `ω_+` and `ω_-`.
    pub fn forms(&self) -> (&ChartForm, &ChartForm) {
        match self.mode {
            FiberMode::Kahler => (&self.omega[0], &self.omega[0]),
            FiberMode::Hyperkahler => (&self.omega[0], &self.omega[1]),
        }
    }

    /// Structures a fiber map must preserve in this mode.
    pub fn preserved_indices(&self) -> &'static [usize] {
        match self.mode {
            FiberMode::Kahler => &[0],
            FiberMode::Hyperkahler => &[0, 1, 2],
        }
    }
}

/// `ω(∂_a, ∂_b) = J_ba` for the flat metric.
fn kahler_form(j: &QMatrix, coords: &[Coord]) -> ChartForm {
    let mut form = ChartForm::zero(2);
    for a in 0..coords.len() {
        for b in a + 1..coords.len() {
            let c = &j[(b, a)];
            if !num_traits::Zero::is_zero(c) {
                form = form.add(&ChartForm::monomial(&[coords[a], coords[b]], ScalarExpr::rat(c.clone())));
            }
        }
    }
    form
}

/// Integer fiber automorphism `ψ(y) = S y`; `ψ^* dy^i = Σ_j S_ij dy^j` and
/// `ψ_* ∂_j = Σ_i S_ij ∂_i`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FiberMap {
    pub matrix: IntMatrix,
}

#[derive(Clone, Debug, Serialize)]
pub struct PreservationReport {
    pub lattice: bool,
    /// Per preserved index: `ψ^* ω_i = ω_i` exactly.
    pub forms_preserved: Vec<(usize, bool)>,
    /// Per preserved index: `S J_i = J_i S` exactly.
    pub commutes: Vec<(usize, bool)>,
}

impl PreservationReport {
    pub fn pass(&self) -> bool {
        self.lattice && self.forms_preserved.iter().all(|x| x.1) && self.commutes.iter().all(|x| x.1)
    }

    pub fn failures(&self) -> Vec<String> {
        let mut out = Vec::new();
        if !self.lattice {
            out.push("fiber map is not a lattice automorphism (det != +-1)".to_string());
        }
        for (i, ok) in &self.forms_preserved {
            if !ok {
                out.push(format!("fiber map does not preserve omega_{}", i + 1));
            }
        }
        for (i, ok) in &self.commutes {
            if !ok {
                out.push(format!("fiber map does not commute with J_{}", i + 1));
            }
        }
        out
    }
}

impl FiberMap {
    pub fn identity(dim: usize) -> Self {
        let rows = (0..dim).map(|i| (0..dim).map(|j| i64::from(i == j)).collect()).collect();
        FiberMap { matrix: IntMatrix(rows) }
    }

    /// `(y1, y2, y3, y4) ↦ (y2, −y1, y4, −y3)` on every quaternionic block.
    pub fn quarter_rotation(dim: usize) -> Self {
        let mut rows = vec![vec![0; dim]; dim];
        for b in 0..dim / 4 {
            let o = 4 * b;
            rows[o][o + 1] = 1;
            rows[o + 1][o] = -1;
            rows[o + 2][o + 3] = 1;
            rows[o + 3][o + 2] = -1;
        }
        FiberMap { matrix: IntMatrix(rows) }
    }

    pub fn to_q(&self) -> Result<QMatrix> {
        self.matrix.to_q()
    }

    pub fn pullback(&self, form: &ChartForm, fiber: &FlatFiber) -> Result<ChartForm> {
        form.pullback_linear(&fiber.coords(), &self.to_q()?)
    }

    pub fn check_preserves(&self, fiber: &FlatFiber) -> Result<PreservationReport> {
        if !self.matrix.is_square(fiber.dim) {
            return Err(Error::Dimension(format!(
                "fiber map must be {0}x{0} for a fiber of dimension {0}",
                fiber.dim
            )));
        }
        let s = self.to_q()?;
        let det = s.determinant()?;
        let lattice = num_traits::Signed::abs(&det) == num_traits::One::one();
        let mut forms_preserved = Vec::new();
        let mut commutes = Vec::new();
        for &i in fiber.preserved_indices() {
            let pulled = self.pullback(&fiber.omega[i], fiber)?;
            forms_preserved.push((i, crate::symforms::forms_equal_exact(&pulled, &fiber.omega[i])));
            commutes.push((i, s.mul(&fiber.j[i])? == fiber.j[i].mul(&s)?));
        }
        Ok(PreservationReport { lattice, forms_preserved, commutes })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn quaternion_relations() {
        let f = FlatFiber::new(8, FiberMode::Hyperkahler).unwrap();
        let id = QMatrix::identity(8).scale(&q(-1));
        for j in &f.j {
            assert_eq!(j.mul(j).unwrap(), id);
        }
        let j21 = f.j[1].mul(&f.j[0]).unwrap();
        assert_eq!(j21, f.j[2].scale(&q(-1)));
    }

    #[test]
    fn kahler_forms_match_standard_expressions() {
        let f = FlatFiber::new(4, FiberMode::Hyperkahler).unwrap();
        let y = |i| Coord::Y(i);
        let one = ScalarExpr::one;
        let m = |a, b, c: ScalarExpr| ChartForm::monomial(&[y(a), y(b)], c);
        let w1 = m(1, 2, one()).sub(&m(3, 4, one()));
        let w2 = m(1, 4, one()).neg().add(&m(2, 3, one()));
        let w3 = m(1, 3, one()).neg().sub(&m(2, 4, one()));
        assert_eq!(f.omega[0], w1);
        assert_eq!(f.omega[1], w2);
        assert_eq!(f.omega[2], w3);
    }

    #[test]
    fn rotation_preserves_hyperkahler_structure() {
        let f = FlatFiber::new(4, FiberMode::Hyperkahler).unwrap();
        let r = FiberMap::quarter_rotation(4).check_preserves(&f).unwrap();
        assert!(r.pass(), "{:?}", r.failures());
    }

    #[test]
    fn dimension_must_be_quaternionic() {
        assert!(FlatFiber::new(6, FiberMode::Kahler).is_err());
    }
}
