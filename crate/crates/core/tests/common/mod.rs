#![allow(dead_code)]

use gktorus::linalg::{IntMatrix, QMatrix, Q};
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use rand::Rng;

/// Rank by fraction-free (Bareiss) elimination after clearing denominators.
pub fn bareiss_rank(m: &QMatrix) -> usize {
    let mut a: Vec<Vec<BigInt>> = (0..m.rows())
        .map(|r| {
            let row = m.row(r);
            let l = row.iter().fold(BigInt::one(), |acc, x| acc.lcm(x.denom()));
            row.iter().map(|x| (x * Q::from_integer(l.clone())).to_integer()).collect()
        })
        .collect();
    let (rows, cols) = (m.rows(), m.cols());
    let mut rank = 0;
    let mut prev = BigInt::one();
    for c in 0..cols {
        if rank == rows {
            break;
        }
        let Some(p) = (rank..rows).find(|&r| !a[r][c].is_zero()) else { continue };
        a.swap(rank, p);
        for r in rank + 1..rows {
            for k in c + 1..cols {
                let v = &a[rank][c] * &a[r][k] - &a[r][c] * &a[rank][k];
                a[r][k] = v / &prev;
            }
            a[r][c] = BigInt::zero();
        }
        prev = a[rank][c].clone();
        rank += 1;
    }
    rank
}

pub fn int_matrix(rows: &[Vec<i64>]) -> QMatrix {
    QMatrix::from_i64_rows(rows).unwrap()
}

/// Product of random elementary integer matrices: determinant 1.
pub fn random_sl(n: usize, steps: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let mut m: Vec<Vec<i64>> = (0..n).map(|i| (0..n).map(|j| i64::from(i == j)).collect()).collect();
    for _ in 0..steps {
        let i = rng.gen_range(0..n);
        let mut j = rng.gen_range(0..n);
        while n > 1 && j == i {
            j = rng.gen_range(0..n);
        }
        if i == j {
            continue;
        }
        let c = rng.gen_range(-2..=2);
        for r in 0..n {
            m[r][i] += c * m[r][j];
        }
    }
    m
}

/// `J_1` on one quaternionic block, columns are images of `∂_{y1..y4}`.
pub fn j1() -> QMatrix {
    int_matrix(&[vec![0, -1, 0, 0], vec![1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]])
}

type Gauss = (i64, i64);

fn gmul(a: Gauss, b: Gauss) -> Gauss {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn gadd(a: Gauss, b: Gauss) -> Gauss {
    (a.0 + b.0, a.1 + b.1)
}

/// A random `GL(2, Z[i])` element written in the real coordinates
/// `(y1, y2, y3, y4)`, where `z1 = y1 + i y2` and `z2 = y4 + i y3` are
/// complex coordinates for `J_1`.
pub fn random_j1_linear(steps: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
    let mut g = [[(1, 0), (0, 0)], [(0, 0), (1, 0)]];
    for _ in 0..steps {
        let kind = rng.gen_range(0..3);
        let c: Gauss = (rng.gen_range(-2..=2), rng.gen_range(-2..=2));
        let e = match kind {
            0 => [[(1, 0), c], [(0, 0), (1, 0)]],
            1 => [[(1, 0), (0, 0)], [c, (1, 0)]],
            _ => [[(0, 1), (0, 0)], [(0, 0), (1, 0)]],
        };
        let mut out = [[(0, 0); 2]; 2];
        for i in 0..2 {
            for j in 0..2 {
                out[i][j] = gadd(gmul(g[i][0], e[0][j]), gmul(g[i][1], e[1][j]));
            }
        }
        g = out;
    }
    let re_im = [(0usize, 1usize), (3, 2)];
    let mut s = vec![vec![0i64; 4]; 4];
    for k in 0..2 {
        for j in 0..2 {
            let (a, b) = g[k][j];
            let (rk, ik) = re_im[k];
            let (rj, ij) = re_im[j];
            s[rk][rj] = a;
            s[rk][ij] = -b;
            s[ik][rj] = b;
            s[ik][ij] = a;
        }
    }
    s
}

pub fn int(rows: Vec<Vec<i64>>) -> IntMatrix {
    IntMatrix(rows)
}

/// Random expression tree in `t` with bounded depth, no poles.
pub fn random_expr(depth: usize, rng: &mut impl Rng) -> gktorus::symforms::ScalarExpr {
    use gktorus::symforms::ScalarExpr;
    if depth == 0 || rng.gen_bool(0.3) {
        return if rng.gen_bool(0.5) { ScalarExpr::t() } else { ScalarExpr::int(rng.gen_range(-3..=3)) };
    }
    let a = random_expr(depth - 1, rng);
    match rng.gen_range(0..5) {
        0 => a.add(&random_expr(depth - 1, rng)),
        1 => a.mul(&random_expr(depth - 1, rng)),
        2 => a.sin(),
        3 => a.cos(),
        _ => a.scale(&gktorus::linalg::q_frac(1, 2)).exp(),
    }
}

/// Random integer matrix of rank at most `r`.
pub fn random_low_rank(rows: usize, cols: usize, r: usize, rng: &mut impl Rng) -> QMatrix {
    let mut gen = |n: usize, m: usize| {
        let v: Vec<Vec<i64>> = (0..n).map(|_| (0..m).map(|_| rng.gen_range(-3..=3)).collect()).collect();
        QMatrix::from_i64_rows(&v).unwrap()
    };
    if r == 0 {
        return QMatrix::zeros(rows, cols);
    }
    gen(rows, r).mul(&gen(r, cols)).unwrap()
}
