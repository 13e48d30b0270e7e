//! Jordan filtration of `F = f_p^* − Id` at eigenvalue 1 and the formality
//! criteria for mapping tori built from it.

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::cdga::{Cdga, Generator, Poly};
use crate::error::{Error, Result};
use crate::linalg::{span_rank, QMatrix, Q};

#[derive(Clone, Debug, Serialize)]
pub struct JordanData {
    /// `dim K^j` for `j = 0..=r`, `K^j = ker F^j`.
    pub kernel_dims: Vec<usize>,
    /// Index of nilpotency of `F` on the generalized kernel.
    pub r: usize,
    /// `dim G^j` for `j = 1..=r`.
    pub g_dims: Vec<usize>,
    /// Representatives of a basis of `G^j = K^j / K^{j−1}`, ambient coordinates.
    #[serde(skip)]
    pub g_bases: Vec<Vec<Vec<Q>>>,
    /// `induced[j]` is the matrix of `F: G^{j+2} → G^{j+1}` in the bases above.
    #[serde(skip)]
    pub induced: Vec<QMatrix>,
}

impl JordanData {
    /// Number of Jordan blocks of size exactly `k` (`k ≥ 1`).
    pub fn blocks_of_size(&self, k: usize) -> usize {
        let kd = |j: usize| self.kernel_dims.get(j).copied().unwrap_or(*self.kernel_dims.last().unwrap()) as i64;
        (2 * kd(k) - kd(k - 1) - kd(k + 1)) as usize
    }

    /// Algebraic multiplicity of the eigenvalue 1 of `F + Id`.
    pub fn multiplicity(&self) -> usize {
        *self.kernel_dims.last().unwrap()
    }

    pub fn geometric_multiplicity(&self) -> usize {
        self.kernel_dims.get(1).copied().unwrap_or(0)
    }
}

/// Coordinates of `v` in the span of `columns`, which must be independent.
fn solve_in_span(columns: &[Vec<Q>], v: &[Q]) -> Option<Vec<Q>> {
    let n = v.len();
    let k = columns.len();
    let mut aug = QMatrix::zeros(n, k + 1);
    for (c, col) in columns.iter().enumerate() {
        for r in 0..n {
            aug[(r, c)] = col[r].clone();
        }
    }
    for r in 0..n {
        aug[(r, k)] = v[r].clone();
    }
    let (rref, pivots) = aug.rref();
    if pivots.contains(&k) {
        return None;
    }
    let mut x = vec![Q::zero(); k];
    for (row, &p) in pivots.iter().enumerate() {
        x[p] = rref[(row, k)].clone();
    }
    Some(x)
}

/// `K^j = ker F^j` until stabilization, quotient bases and induced maps.
pub fn jordan_filtration(f: &QMatrix) -> Result<JordanData> {
    if !f.is_square() {
        return Err(Error::Dimension("jordan_filtration needs a square matrix".into()));
    }
    let n = f.rows();
    let mut kernel_dims = vec![0];
    let mut g_bases: Vec<Vec<Vec<Q>>> = Vec::new();
    let mut accumulated: Vec<Vec<Q>> = Vec::new();
    let mut power = QMatrix::identity(n);
    loop {
        power = power.mul(f)?;
        let ker = power.kernel();
        if ker.len() == *kernel_dims.last().unwrap() {
            break;
        }
        let mut reps = Vec::new();
        for v in ker {
            let mut trial = accumulated.clone();
            trial.push(v.clone());
            if span_rank(&trial, n) == trial.len() {
                accumulated.push(v.clone());
                reps.push(v);
            }
        }
        kernel_dims.push(accumulated.len());
        g_bases.push(reps);
        if accumulated.len() == n {
            break;
        }
    }
    let r = g_bases.len();
    let mut induced = Vec::new();
    for j in 1..r {
        // Basis of K^j is the concatenation of G^1..G^j representatives.
        let lower: Vec<Vec<Q>> = g_bases[..j].iter().flatten().cloned().collect();
        let offset = lower.len() - g_bases[j - 1].len();
        let mut m = QMatrix::zeros(g_bases[j - 1].len(), g_bases[j].len());
        for (c, v) in g_bases[j].iter().enumerate() {
            let image = f.mul_vec(v);
            let coords = solve_in_span(&lower, &image)
                .ok_or_else(|| Error::Invalid("F does not map K^{j+1} into K^j".into()))?;
            for row in 0..g_bases[j - 1].len() {
                m[(row, c)] = coords[offset + row].clone();
            }
        }
        induced.push(m);
    }
    Ok(JordanData { g_dims: g_bases.iter().map(Vec::len).collect(), kernel_dims, r, g_bases, induced })
}

#[derive(Clone, Debug, Serialize)]
pub struct DegreeEigenRecord {
    pub degree: usize,
    pub size: usize,
    /// `dim ker F^n`.
    pub multiplicity: usize,
    pub geometric_multiplicity: usize,
    pub nilpotency_index: usize,
    pub blocks_of_size_two: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum FormalityVerdict {
    NonFormalCriterion1,
    NonFormalRGe2,
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct BfmRecord {
    pub degrees: Vec<DegreeEigenRecord>,
    pub first_eigen_degree: Option<usize>,
    /// Degree at which criterion 1 fires.
    pub criterion1_degree: Option<usize>,
    /// `r` at the first eigen-degree when the second criterion's hypotheses hold.
    pub r: Option<usize>,
    pub first_applicable: Option<String>,
    pub notes: Vec<String>,
    pub verdict: FormalityVerdict,
}

/// Both formality criteria on per-degree actions `actions[k] = f_k^*`
/// (degree 0 is ignored).
///
/// Criterion 1 fires on a Jordan block of size exactly 2 at eigenvalue 1 in
/// some positive degree. The second criterion applies at the first degree
/// `p ≥ 2` carrying the eigenvalue 1 and fires when `r ≥ 2`.
pub fn bfm_formality_test(actions: &[QMatrix]) -> Result<BfmRecord> {
    let mut degrees = Vec::new();
    for (k, m) in actions.iter().enumerate().skip(1) {
        let jd = jordan_filtration(&m.minus_identity())?;
        degrees.push(DegreeEigenRecord {
            degree: k,
            size: m.rows(),
            multiplicity: jd.multiplicity(),
            geometric_multiplicity: jd.geometric_multiplicity(),
            nilpotency_index: jd.r,
            blocks_of_size_two: if jd.r >= 2 { jd.blocks_of_size(2) } else { 0 },
        });
    }
    let first_eigen_degree = degrees.iter().find(|d| d.multiplicity > 0).map(|d| d.degree);
    let criterion1_degree = degrees.iter().find(|d| d.blocks_of_size_two > 0).map(|d| d.degree);
    let mut notes = Vec::new();
    let r = match first_eigen_degree {
        None => {
            notes.push("no eigenvalue 1 in any positive degree".into());
            None
        }
        Some(p) if p < 2 => {
            notes.push(format!("eigenvalue 1 already in degree {p}; the r criterion needs p >= 2"));
            None
        }
        Some(p) => Some(degrees[p - 1].nilpotency_index),
    };
    let (verdict, first_applicable) = if let Some(p) = criterion1_degree {
        (FormalityVerdict::NonFormalCriterion1, Some(format!("criterion 1 in degree {p}")))
    } else if let (Some(p), Some(r)) = (first_eigen_degree, r) {
        let v = if r >= 2 { FormalityVerdict::NonFormalRGe2 } else { FormalityVerdict::Inconclusive };
        (v, Some(format!("r criterion in degree {p} with r = {r}")))
    } else {
        (FormalityVerdict::Inconclusive, None)
    };
    Ok(BfmRecord { degrees, first_eigen_degree, criterion1_degree, r, first_applicable, notes, verdict })
}

#[derive(Clone, Debug)]
pub struct MinimalModelFragment {
    pub degree: usize,
    pub jordan: JordanData,
    pub cdga: Cdga,
    pub non_formal: bool,
}

/// Generators `a` in degree 1 and `G^1 ⊕ … ⊕ G^r` in degree `p`, with `da = 0`
/// and `dv = a·F(v)`.
pub fn minimal_model_low_degree(actions: &[QMatrix], p: usize) -> Result<MinimalModelFragment> {
    if p < 2 {
        return Err(Error::Hypothesis(format!("degree {p} is below 2")));
    }
    if actions.len() <= p {
        return Err(Error::Hypothesis(format!("no action supplied in degree {p}")));
    }
    for (k, m) in actions.iter().enumerate().take(p).skip(1) {
        if !m.minus_identity().kernel().is_empty() {
            return Err(Error::Hypothesis(format!("f_{k}^* has eigenvalue 1")));
        }
    }
    let jordan = jordan_filtration(&actions[p].minus_identity())?;
    if jordan.r == 0 {
        return Err(Error::Hypothesis(format!("f_{p}^* has no eigenvalue 1")));
    }
    let mut gens = vec![Generator { name: "a".into(), degree: 1 }];
    let mut slots = Vec::new();
    for (j, g) in jordan.g_dims.iter().enumerate() {
        for k in 0..*g {
            let name = if *g == 1 { format!("v{}", j + 1) } else { format!("v{}_{}", j + 1, k + 1) };
            gens.push(Generator { name, degree: p });
            slots.push((j, k));
        }
    }
    let count = gens.len();
    let mono = |idx: &[usize]| {
        let mut m = vec![0u16; count];
        for &i in idx {
            m[i] += 1;
        }
        m
    };
    let index_of = |j: usize, k: usize| 1 + jordan.g_dims[..j].iter().sum::<usize>() + k;
    let mut d = vec![Poly::zero()];
    for &(j, k) in &slots {
        let mut poly = Poly::zero();
        if j >= 1 {
            let m = &jordan.induced[j - 1];
            for row in 0..m.rows() {
                let c = m[(row, k)].clone();
                if !c.is_zero() {
                    poly.add_term(mono(&[0, index_of(j - 1, row)]), c);
                }
            }
        }
        d.push(poly);
    }
    let non_formal = jordan.r >= 2;
    let cdga = Cdga::new(gens, d)?;
    Ok(MinimalModelFragment { degree: p, jordan, cdga, non_formal })
}
