//! Induced actions on `H^k(T^n) = Λ^k H^1(T^n)`.

use crate::error::{Error, Result};
use crate::linalg::{IntMatrix, QMatrix};

/// Strictly increasing `k`-subsets of `0..n` in lexicographic order.
pub fn multi_indices(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..n {
            if n - i < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    if k <= n {
        rec(0, n, k, &mut Vec::with_capacity(k), &mut out);
    }
    out
}

pub fn binomial(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    (0..k).fold(1usize, |acc, i| acc * (n - i) / (i + 1))
}

/// `Λ^k(B)_{I,J} = det B[I, J]` in the lexicographic multi-index basis.
pub fn exterior_power_map(b: &QMatrix, k: usize) -> Result<QMatrix> {
    if !b.is_square() {
        return Err(Error::Dimension("exterior power of a non-square matrix".into()));
    }
    let n = b.rows();
    if k > n {
        return Err(Error::Dimension(format!("degree {k} exceeds rank {n}")));
    }
    let idx = multi_indices(n, k);
    let mut out = QMatrix::zeros(idx.len(), idx.len());
    for (r, i) in idx.iter().enumerate() {
        for (c, j) in idx.iter().enumerate() {
            out[(r, c)] = b.submatrix(i, j).determinant()?;
        }
    }
    Ok(out)
}

/// Action of `f^*` on `H^1` of a torus, acting on coefficient columns in the
/// basis `[dx^1], …, [dx^n]`.
///
/// For a linear map `x ↦ S x`, `f^* dx^i = Σ_j S_ij dx^j`, so the matrix on
/// coefficient columns is `S^T`.
#[derive(Clone, Debug, PartialEq)]
pub struct PullbackAction {
    pub b: QMatrix,
}

impl PullbackAction {
    pub fn new(b: QMatrix) -> Result<Self> {
        if !b.is_square() {
            return Err(Error::Dimension("pullback action must be square".into()));
        }
        Ok(PullbackAction { b })
    }

    /// Action induced by the linear map with integer matrix `S`.
    pub fn from_linear_map(s: &IntMatrix) -> Result<Self> {
        Self::new(s.to_q()?.transpose())
    }

    pub fn identity(n: usize) -> Self {
        PullbackAction { b: QMatrix::identity(n) }
    }

    pub fn rank(&self) -> usize {
        self.b.rows()
    }

    pub fn degree(&self, k: usize) -> Result<QMatrix> {
        exterior_power_map(&self.b, k)
    }

    /// All degrees `0..=n`.
    pub fn all_degrees(&self) -> Result<Vec<QMatrix>> {
        (0..=self.rank()).map(|k| self.degree(k)).collect()
    }

    /// Block action `diag(B_1, B_2)` on the product torus.
    pub fn product(&self, other: &PullbackAction) -> PullbackAction {
        PullbackAction { b: QMatrix::block_diag(&[&self.b, &other.b]) }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    #[test]
    fn identity_powers_are_identities() {
        assert_eq!(exterior_power_map(&QMatrix::identity(4), 2).unwrap(), QMatrix::identity(6));
    }

    #[test]
    fn top_power_is_determinant() {
        let b = QMatrix::from_i64_rows(&[vec![2, 1, 0], vec![1, 1, 0], vec![0, 3, 5]]).unwrap();
        let top = exterior_power_map(&b, 3).unwrap();
        assert_eq!(top[(0, 0)], b.determinant().unwrap());
        assert_eq!(exterior_power_map(&b, 0).unwrap()[(0, 0)], q(1));
    }

    #[test]
    fn index_counts() {
        assert_eq!(multi_indices(7, 3).len(), binomial(7, 3));
        assert_eq!(multi_indices(4, 2)[1], vec![0, 2]);
    }
}
