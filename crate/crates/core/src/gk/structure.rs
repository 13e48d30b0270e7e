//! Assembly of `(I_±, g, ω_±, H)` on the mapping torus of `T^3 × N`.

use num_traits::Zero;
use serde::Serialize;

use super::fiber::{FiberMap, FlatFiber};
use super::frame::{build_coframe, check_frame_conditions, Coframe, FrameFamily};
use crate::error::{Error, Result};
use crate::linalg::real::Mat3;
use crate::linalg::{q, q_frac, QMatrix};
use crate::symforms::{chart_coords, d_c, ChartEndo, ChartForm, Coord, ScalarExpr};

#[derive(Clone, Debug)]
pub struct GKStructure {
    pub frame: FrameFamily,
    pub fiber: FlatFiber,
    pub psi: FiberMap,
    pub coords: Vec<Coord>,
    /// `I_±` in the frame `(e_1, e_2, e_3, ∂_y…, ∂_t)`, columns are images.
    pub i_plus_frame: QMatrix,
    pub i_minus_frame: QMatrix,
    pub coframe: Coframe,
    pub theta: ChartForm,
    pub omega_plus: ChartForm,
    pub omega_minus: ChartForm,
    /// `H = d^c_+ ω_+`.
    pub h: ChartForm,
}

/// Frame-level operator: `I e_1 = ∂_t`, `I e_2 = ±e_3`, `I e_3 = ∓e_2`,
/// the given block on the fiber.
pub fn frame_operator(sign: i64, fiber_block: &QMatrix) -> QMatrix {
    let k = fiber_block.rows();
    let n = 4 + k;
    let mut m = QMatrix::zeros(n, n);
    m[(n - 1, 0)] = q(1);
    m[(0, n - 1)] = q(-1);
    m[(2, 1)] = q(sign);
    m[(1, 2)] = q(-sign);
    for i in 0..k {
        for j in 0..k {
            m[(3 + i, 3 + j)] = fiber_block[(i, j)].clone();
        }
    }
    m
}

/// Full frame matrix `V` (columns are frame vectors) and its inverse `W`
/// (rows are coframe forms), in chart coordinates.
fn frame_and_coframe(frame: &FrameFamily, fiber_dim: usize) -> (Vec<Vec<ScalarExpr>>, Vec<Vec<ScalarExpr>>) {
    let n = 4 + fiber_dim;
    let embed = |block: [[ScalarExpr; 3]; 3]| {
        let mut m = vec![vec![ScalarExpr::zero(); n]; n];
        for i in 0..3 {
            for j in 0..3 {
                m[i][j] = block[i][j].clone();
            }
        }
        for i in 3..n {
            m[i][i] = ScalarExpr::one();
        }
        m
    };
    (embed(frame.frame_matrix()), embed(frame.coframe_matrix()))
}

impl GKStructure {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    /// Chart matrix `V I W` of a frame-level operator.
    pub fn chart_endo(&self, frame_op: &QMatrix) -> ChartEndo {
        let (v, w) = frame_and_coframe(&self.frame, self.fiber.dim);
        let n = self.dim();
        let mut vi = vec![vec![ScalarExpr::zero(); n]; n];
        for i in 0..n {
            for b in 0..n {
                let mut acc = ScalarExpr::zero();
                for a in 0..n {
                    let x = &frame_op[(a, b)];
                    if v[i][a].is_zero() || x.is_zero() {
                        continue;
                    }
                    acc = acc.add(&v[i][a].mul(&ScalarExpr::rat(x.clone())));
                }
                vi[i][b] = acc;
            }
        }
        let mut m = vec![vec![ScalarExpr::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = ScalarExpr::zero();
                for b in 0..n {
                    if vi[i][b].is_zero() || w[b][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&vi[i][b].mul(&w[b][j]));
                }
                m[i][j] = acc;
            }
        }
        ChartEndo { coords: self.coords.clone(), m }
    }

    pub fn i_plus(&self) -> ChartEndo {
        self.chart_endo(&self.i_plus_frame)
    }

    pub fn i_minus(&self) -> ChartEndo {
        self.chart_endo(&self.i_minus_frame)
    }

    /// `(J, J^{-1})` at chart level; errors when the frame operator is singular.
    pub fn endo_pair(&self, frame_op: &QMatrix) -> Result<(ChartEndo, ChartEndo)> {
        let inv = frame_op
            .inverse()
            .map_err(|_| Error::Singular("complex structure is not invertible on the frame".into()))?;
        Ok((self.chart_endo(frame_op), self.chart_endo(&inv)))
    }

    /// `d^c_+ ω_+` and `d^c_- ω_-` from the current frame operators.
    pub fn dc_omegas(&self) -> Result<(ChartForm, ChartForm)> {
        let (jp, jp_inv) = self.endo_pair(&self.i_plus_frame)?;
        let (jm, jm_inv) = self.endo_pair(&self.i_minus_frame)?;
        Ok((d_c(&self.omega_plus, &jp, &jp_inv)?, d_c(&self.omega_minus, &jm, &jm_inv)?))
    }

    /// Metric `g = Σ (e^i)^2 + k + θ^2` as a chart matrix `W^T W`.
    pub fn metric(&self) -> Vec<Vec<ScalarExpr>> {
        let (_, w) = frame_and_coframe(&self.frame, self.fiber.dim);
        let n = self.dim();
        let mut g = vec![vec![ScalarExpr::zero(); n]; n];
        for i in 0..n {
            for j in 0..n {
                let mut acc = ScalarExpr::zero();
                for a in 0..n {
                    if w[a][i].is_zero() || w[a][j].is_zero() {
                        continue;
                    }
                    acc = acc.add(&w[a][i].mul(&w[a][j]));
                }
                g[i][j] = acc;
            }
        }
        g
    }

    /// Closed form `−(1/l)'(1/a_1) dx^{123}`.
    pub fn h_closed_form(&self) -> ChartForm {
        ChartForm::monomial(&[Coord::X(1), Coord::X(2), Coord::X(3)], self.frame.torsion_density().neg())
    }

    /// `(2v/l) e^1 ∧ e^2 ∧ e^3` expanded in the chart basis.
    pub fn h_frame_form(&self) -> ChartForm {
        let [e1, e2, e3] = &self.coframe.forms;
        let c = self.frame.v_over_l().scale(&q(2));
        e1.wedge(e2).wedge(e3).scale(&c)
    }
}

fn build(frame: &FrameFamily, fiber: &FlatFiber, psi: &FiberMap) -> Result<GKStructure> {
    let coframe = build_coframe(frame)?;
    let coords = chart_coords(fiber.dim);
    let (jp, jm) = fiber.structures();
    let i_plus_frame = frame_operator(1, jp);
    let i_minus_frame = frame_operator(-1, jm);
    let theta = ChartForm::dx(Coord::T);
    let e1_theta = coframe.forms[0].wedge(&theta);
    let (wp, wm) = fiber.forms();
    let omega_plus = e1_theta.add(&coframe.f_plus).add(wp);
    let omega_minus = e1_theta.add(&coframe.f_minus).add(wm);
    let mut s = GKStructure {
        frame: frame.clone(),
        fiber: fiber.clone(),
        psi: psi.clone(),
        coords,
        i_plus_frame,
        i_minus_frame,
        coframe,
        theta,
        omega_plus,
        omega_minus,
        h: ChartForm::zero(3),
    };
    s.h = s.dc_omegas()?.0;
    Ok(s)
}

/// Builds the structure after checking the gluing conditions against `ρ`
/// and the fiber map preservation conditions.
pub fn assemble_gk(frame: &FrameFamily, rho: &Mat3, fiber: &FlatFiber, psi: &FiberMap) -> Result<GKStructure> {
    let mut failures = check_frame_conditions(frame, rho)?.failures();
    failures.extend(psi.check_preserves(fiber)?.failures());
    if !failures.is_empty() {
        return Err(Error::Preconditions(failures));
    }
    build(frame, fiber, psi)
}

/// Builds the structure without the gluing and preservation checks, e.g.
/// for flat Kähler frames where `(1/l)'/a_1` vanishes.
pub fn assemble_gk_unchecked(frame: &FrameFamily, fiber: &FlatFiber, psi: &FiberMap) -> Result<GKStructure> {
    build(frame, fiber, psi)
}

#[derive(Clone, Debug, Serialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SplitClass {
    Split,
    NonSplit {
        /// `σ = ½ [I_+, I_-] g^{-1}` in the orthonormal frame, as decimal strings.
        sigma: Vec<Vec<String>>,
        /// Whether the fiber block of `σ` equals `−ω_3^{-1}`.
        fiber_block_is_minus_omega3_inverse: bool,
    },
}

impl SplitClass {
    pub fn is_split(&self) -> bool {
        matches!(self, SplitClass::Split)
    }
}

/// Split iff `[I_+, I_-] = 0`. The frame is orthonormal, so `g^{-1}` is the identity there.
pub fn classify_split(s: &GKStructure) -> Result<SplitClass> {
    let comm = s.i_plus_frame.mul(&s.i_minus_frame)?.sub(&s.i_minus_frame.mul(&s.i_plus_frame)?)?;
    if comm.is_zero() {
        return Ok(SplitClass::Split);
    }
    let sigma = comm.scale(&q_frac(1, 2));
    let k = s.fiber.dim;
    let block: Vec<usize> = (3..3 + k).collect();
    let sigma_fiber = sigma.submatrix(&block, &block);
    // ω_3 as the map X ↦ ι_X ω_3: entry (b, a) is ω_3(∂_a, ∂_b).
    let ycoords = s.fiber.coords();
    let mut w3 = QMatrix::zeros(k, k);
    for (idx, c) in s.fiber.omega[2].terms() {
        let a = ycoords.iter().position(|x| *x == idx[0]).expect("fiber coordinate");
        let b = ycoords.iter().position(|x| *x == idx[1]).expect("fiber coordinate");
        let c = c.as_rat().expect("constant fiber form").clone();
        w3[(b, a)] = c.clone();
        w3[(a, b)] = -c;
    }
    let matches = k > 0 && w3.inverse().map(|inv| inv.scale(&q(-1)) == sigma_fiber).unwrap_or(false);
    Ok(SplitClass::NonSplit {
        sigma: (0..sigma.rows()).map(|i| sigma.row(i).iter().map(|x| x.to_string()).collect()).collect(),
        fiber_block_is_minus_omega3_inverse: matches,
    })
}
