//! Minimal models written down for the Inoue surface `S_M` and for the
//! mapping torus of `T^3 × T^4` by `(ρ, ψ)` with `ψ` the quarter rotation.

use super::cdga::{Cdga, Generator, Poly};
use crate::error::Result;

/// `Λ(a) ⊗ Λ(b)`, `|a| = 1`, `|b| = 3`, zero differential.
pub fn sm_model() -> Result<Cdga> {
    Cdga::free(vec![Generator { name: "a".into(), degree: 1 }, Generator { name: "b".into(), degree: 3 }])
}

/// Index pairs `(i, j)`, `1 ≤ i ≤ j ≤ 4`, except `(1, 4)`.
pub fn lambda_pairs() -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for i in 1..=4 {
        for j in i..=4 {
            if (i, j) != (1, 4) {
                out.push((i, j));
            }
        }
    }
    out
}

/// `a` (1), `b_1..b_4` (2), `c` (3) and `λ_ij` (3) with `dλ_ij = b_i b_j`.
pub fn quarter_rotation_model() -> Result<Cdga> {
    let mut gens = vec![Generator { name: "a".into(), degree: 1 }];
    gens.extend((1..=4).map(|i| Generator { name: format!("b{i}"), degree: 2 }));
    gens.push(Generator { name: "c".into(), degree: 3 });
    gens.extend(lambda_pairs().into_iter().map(|(i, j)| Generator { name: format!("l{i}{j}"), degree: 3 }));
    let free = Cdga::free(gens.clone())?;
    let d = gens
        .iter()
        .map(|g| match g.name.strip_prefix('l') {
            Some(ij) => {
                let b = |k: char| free.gen(free.index_of(&format!("b{k}")).unwrap());
                let mut cs = ij.chars();
                let (i, j) = (cs.next().unwrap(), cs.next().unwrap());
                free.mul(&b(i), &b(j))
            }
            None => Poly::zero(),
        })
        .collect();
    Cdga::new(gens, d)
}

/// `ν(λ_ij) = 0` and every other generator to its own class.
pub fn quarter_rotation_nu(a: &Cdga) -> Vec<Poly> {
    a.generators()
        .iter()
        .enumerate()
        .map(|(i, g)| if g.name.starts_with('l') { Poly::zero() } else { a.gen(i) })
        .collect()
}
