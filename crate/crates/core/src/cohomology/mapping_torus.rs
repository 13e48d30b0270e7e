//! `H^r(M_f) = ker(f_r^* − Id) ⊕ coker(f_{r−1}^* − Id)` for mapping tori of tori.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use super::exterior::{binomial, multi_indices, PullbackAction};
use crate::error::{Error, Result};
use crate::linalg::{ker_coker, QMatrix, Q};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CohomologyTable {
    pub dims: Vec<usize>,
    /// Representatives per degree when the action comes from torus generators.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub representatives: Option<Vec<Vec<String>>>,
}

impl CohomologyTable {
    pub fn from_dims(dims: Vec<usize>) -> Self {
        CohomologyTable { dims, representatives: None }
    }

    pub fn point() -> Self {
        Self::from_dims(vec![1])
    }

    /// Betti numbers of `T^n`.
    pub fn torus(n: usize) -> Self {
        Self::from_dims((0..=n).map(|k| binomial(n, k)).collect())
    }

    pub fn top_degree(&self) -> usize {
        self.dims.len().saturating_sub(1)
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims.iter().enumerate().map(|(r, &d)| if r % 2 == 0 { d as i64 } else { -(d as i64) }).sum()
    }

    pub fn is_poincare_symmetric(&self) -> bool {
        let n = self.dims.len();
        (0..n).all(|r| self.dims[r] == self.dims[n - 1 - r])
    }

    pub fn total(&self) -> usize {
        self.dims.iter().sum()
    }
}

/// Poincaré-polynomial convolution.
pub fn kunneth(p: &CohomologyTable, q: &CohomologyTable) -> CohomologyTable {
    let mut dims = vec![0; p.dims.len() + q.dims.len() - 1];
    for (i, a) in p.dims.iter().enumerate() {
        for (j, b) in q.dims.iter().enumerate() {
            dims[i + j] += a * b;
        }
    }
    CohomologyTable::from_dims(dims)
}

/// Cohomology dimensions from per-degree actions `f_r^*`, `r = 0..=n`.
pub fn mapping_torus_cohomology(actions: &BTreeMap<usize, QMatrix>) -> Result<CohomologyTable> {
    if actions.is_empty() {
        return Err(Error::Invalid("no degrees supplied".into()));
    }
    for (expected, &r) in actions.keys().enumerate() {
        if r != expected {
            return Err(Error::Invalid(format!("degree gap: degree {expected} missing")));
        }
    }
    let mats: Vec<&QMatrix> = actions.values().collect();
    if mats.iter().any(|m| !m.is_square()) {
        return Err(Error::Dimension("degree actions must be square".into()));
    }
    let kc: Vec<_> = mats.par_iter().map(|m| ker_coker(&m.minus_identity())).collect();
    let n = mats.len() - 1;
    let dims = (0..=n + 1)
        .map(|r| {
            let k = if r <= n { kc[r].kernel.len() } else { 0 };
            let c = if r >= 1 { kc[r - 1].coker_dim } else { 0 };
            k + c
        })
        .collect();
    Ok(CohomologyTable::from_dims(dims))
}

fn basis_label(names: &[String], idx: &[usize]) -> String {
    if idx.is_empty() {
        "1".to_string()
    } else {
        format!("dx^{{{}}}", idx.iter().map(|&i| names[i].as_str()).collect::<String>())
    }
}

/// Integer-normalized linear combination of basis labels.
fn vector_label(names: &[String], basis: &[Vec<usize>], v: &[Q]) -> String {
    let lcm = v.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
    let ints: Vec<BigInt> = v.iter().map(|x| (x * Q::from_integer(lcm.clone())).to_integer()).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    let first_negative = ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative());
    let mut out = String::new();
    for (coef, idx) in ints.iter().zip(basis) {
        if coef.is_zero() {
            continue;
        }
        let mut c = coef / &gcd;
        if first_negative {
            c = -c;
        }
        let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
        let mag = c.abs();
        let mag_str = if mag.is_one() { String::new() } else { mag.to_string() };
        out.push_str(&format!("{sign}{mag_str}{}", basis_label(names, idx)));
    }
    out
}

fn wedge_theta(label: &str) -> String {
    if label == "1" {
        "θ".to_string()
    } else {
        format!("θ∧{label}")
    }
}

/// Cohomology of the mapping torus of `T^n` under `action`, with
/// representatives built from the generator names (`names[i]` labels `dx^i`).
pub fn mapping_torus_of(action: &PullbackAction, names: &[String]) -> Result<CohomologyTable> {
    let n = action.rank();
    if names.len() != n {
        return Err(Error::Dimension(format!("{} generator names for a rank-{n} action", names.len())));
    }
    let per_degree: Vec<_> = (0..=n)
        .into_par_iter()
        .map(|k| -> Result<_> {
            let m = action.degree(k)?;
            Ok((multi_indices(n, k), ker_coker(&m.minus_identity())))
        })
        .collect::<Result<_>>()?;
    let mut dims = Vec::with_capacity(n + 2);
    let mut reps = Vec::with_capacity(n + 2);
    for r in 0..=n + 1 {
        let mut labels = Vec::new();
        if r <= n {
            let (basis, kc) = &per_degree[r];
            labels.extend(kc.kernel.iter().map(|v| vector_label(names, basis, v)));
        }
        if r >= 1 {
            let (basis, kc) = &per_degree[r - 1];
            labels.extend(kc.coker_reps.iter().map(|&i| wedge_theta(&basis_label(names, &basis[i]))));
        }
        dims.push(labels.len());
        reps.push(labels);
    }
    Ok(CohomologyTable { dims, representatives: Some(reps) })
}

/// Generator names `"1"`, `"2"`, … starting at `first`.
pub fn numbered_names(first: usize, count: usize) -> Vec<String> {
    (first..first + count).map(|i| i.to_string()).collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct BidegreeKernel {
    pub i: usize,
    pub j: usize,
    /// `dim ker(ρ_i^* ⊗ ψ_j^* − Id)`.
    pub direct: usize,
    /// `dim K^i · dim K^j`.
    pub factorized: usize,
    pub agree: bool,
}

/// Fixed spaces on `H^i(T^a) ⊗ H^j(T^b)` for `i + j = r`, computed on the
/// tensor product and by the factorized formula.
pub fn tensor_fixed_spaces(rho: &PullbackAction, psi: &PullbackAction, r: usize) -> Result<Vec<BidegreeKernel>> {
    let mut out = Vec::new();
    for i in 0..=r.min(rho.rank()) {
        let j = r - i;
        if j > psi.rank() {
            continue;
        }
        let ri = rho.degree(i)?;
        let pj = psi.degree(j)?;
        let direct = ri.kron(&pj).minus_identity().kernel().len();
        let factorized = ri.minus_identity().kernel().len() * pj.minus_identity().kernel().len();
        out.push(BidegreeKernel { i, j, direct, factorized, agree: direct == factorized });
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct B1Report {
    pub b1: usize,
    pub rho_fixed: usize,
    pub psi_fixed: usize,
    pub odd: bool,
    /// Oddness is guaranteed when `ρ_1^*` has no fixed vector and `ψ_1^*` an even-dimensional fixed space.
    pub oddness_asserted: bool,
    /// Odd `b_1`: no Kähler metric and no `dd^c`-lemma.
    pub kahler_obstruction: bool,
}

pub fn b1_parity_report(rho: &PullbackAction, psi: &PullbackAction) -> Result<B1Report> {
    let rho_fixed = rho.b.minus_identity().kernel().len();
    let psi_fixed = psi.b.minus_identity().kernel().len();
    let b1 = 1 + rho_fixed + psi_fixed;
    let odd = b1 % 2 == 1;
    let oddness_asserted = rho_fixed == 0 && psi_fixed % 2 == 0;
    if oddness_asserted && !odd {
        return Err(Error::Hypothesis("b1 is even although the oddness hypotheses hold".into()));
    }
    Ok(B1Report { b1, rho_fixed, psi_fixed, odd, oddness_asserted, kahler_obstruction: odd })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn trivial_mapping_torus_is_a_torus() {
        let t = mapping_torus_of(&PullbackAction::identity(3), &numbered_names(1, 3)).unwrap();
        assert_eq!(t.dims, vec![1, 4, 6, 4, 1]);
        assert_eq!(t.representatives.as_ref().unwrap()[1], vec!["dx^{1}", "dx^{2}", "dx^{3}", "θ"]);
    }

    #[test]
    fn kunneth_with_point_is_identity() {
        let t = CohomologyTable::from_dims(vec![1, 1, 0, 1, 1]);
        assert_eq!(kunneth(&t, &CohomologyTable::point()), t);
    }

    #[test]
    fn degree_gap_is_rejected() {
        let mut m = BTreeMap::new();
        m.insert(0, QMatrix::identity(1));
        m.insert(2, QMatrix::identity(1));
        assert!(mapping_torus_cohomology(&m).is_err());
    }
}
