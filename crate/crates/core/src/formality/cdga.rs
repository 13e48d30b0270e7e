//! Free graded-commutative algebras on finitely many positive-degree
//! generators with a differential, and their cohomology in low degrees.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{QMatrix, Q};

pub const DEFAULT_CUTOFF: usize = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, serde::Deserialize)]
pub struct Generator {
    pub name: String,
    pub degree: usize,
}

/// Exponent vector over the generators; odd generators have exponent ≤ 1.
pub type Monomial = Vec<u16>;

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Poly {
    pub terms: BTreeMap<Monomial, Q>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly::default()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, m: Monomial, c: Q) {
        if c.is_zero() {
            return;
        }
        let e = self.terms.entry(m.clone()).or_insert_with(Q::zero);
        *e += c;
        if e.is_zero() {
            self.terms.remove(&m);
        }
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, c) in &other.terms {
            out.add_term(m.clone(), c.clone());
        }
        out
    }

    pub fn scale(&self, s: &Q) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &self.terms {
            out.add_term(m.clone(), c * s);
        }
        out
    }

    pub fn neg(&self) -> Poly {
        self.scale(&-Q::one())
    }
}

#[derive(Clone, Debug)]
pub struct Cdga {
    gens: Vec<Generator>,
    d: Vec<Poly>,
    cutoff: usize,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct CdgaCohomology {
    pub dims: Vec<usize>,
    pub basis_sizes: Vec<usize>,
}

impl Cdga {
    /// Validates degrees, homogeneity of `d` and `d² = 0` on every generator.
    pub fn new(gens: Vec<Generator>, d: Vec<Poly>) -> Result<Self> {
        if gens.len() != d.len() {
            return Err(Error::Invalid("one differential per generator is required".into()));
        }
        if let Some(g) = gens.iter().find(|g| g.degree == 0) {
            return Err(Error::Invalid(format!("generator {} has degree 0", g.name)));
        }
        let mut names = std::collections::BTreeSet::new();
        if let Some(g) = gens.iter().find(|g| !names.insert(g.name.clone())) {
            return Err(Error::Invalid(format!("duplicate generator {}", g.name)));
        }
        let a = Cdga { gens, d, cutoff: DEFAULT_CUTOFF };
        for (i, g) in a.gens.iter().enumerate() {
            for m in a.d[i].terms.keys() {
                if m.len() != a.gens.len() {
                    return Err(Error::Invalid("monomial length does not match generator count".into()));
                }
                if a.mono_degree(m) != g.degree + 1 {
                    return Err(Error::Invalid(format!("d({}) is not homogeneous of degree {}", g.name, g.degree + 1)));
                }
            }
        }
        for (i, g) in a.gens.iter().enumerate() {
            if !a.d_poly(&a.d[i]).is_zero() {
                return Err(Error::NotADifferential(format!("d(d({})) != 0", g.name)));
            }
        }
        Ok(a)
    }

    /// The algebra with zero differential.
    pub fn free(gens: Vec<Generator>) -> Result<Self> {
        let d = vec![Poly::zero(); gens.len()];
        Cdga::new(gens, d)
    }

    pub fn with_cutoff(mut self, cutoff: usize) -> Self {
        self.cutoff = cutoff;
        self
    }

    pub fn cutoff(&self) -> usize {
        self.cutoff
    }

    pub fn generators(&self) -> &[Generator] {
        &self.gens
    }

    pub fn differential(&self, i: usize) -> &Poly {
        &self.d[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.gens.iter().position(|g| g.name == name)
    }

    pub fn mono_degree(&self, m: &Monomial) -> usize {
        m.iter().zip(&self.gens).map(|(&e, g)| e as usize * g.degree).sum()
    }

    pub fn poly_degree(&self, p: &Poly) -> Option<usize> {
        p.terms.keys().next().map(|m| self.mono_degree(m))
    }

    pub fn one(&self) -> Poly {
        let mut p = Poly::zero();
        p.add_term(vec![0; self.gens.len()], Q::one());
        p
    }

    pub fn gen(&self, i: usize) -> Poly {
        let mut m = vec![0; self.gens.len()];
        m[i] = 1;
        let mut p = Poly::zero();
        p.add_term(m, Q::one());
        p
    }

    fn is_odd(&self, i: usize) -> bool {
        self.gens[i].degree % 2 == 1
    }

    /// Product of canonical monomials with its Koszul sign, or `None` if an
    /// odd generator repeats.
    pub fn mono_mul(&self, a: &Monomial, b: &Monomial) -> Option<(Monomial, bool)> {
        let mut negative = false;
        let mut odd_in_a_above = 0usize;
        // Count, for each odd generator of b, the odd generators of a with larger index.
        for j in (0..self.gens.len()).rev() {
            if !self.is_odd(j) {
                continue;
            }
            if b[j] == 1 {
                if a[j] == 1 {
                    return None;
                }
                if odd_in_a_above % 2 == 1 {
                    negative = !negative;
                }
            }
            if a[j] == 1 {
                odd_in_a_above += 1;
            }
        }
        Some((a.iter().zip(b).map(|(x, y)| x + y).collect(), negative))
    }

    pub fn mul(&self, a: &Poly, b: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (ma, ca) in &a.terms {
            for (mb, cb) in &b.terms {
                if let Some((m, neg)) = self.mono_mul(ma, mb) {
                    let c = ca * cb;
                    out.add_term(m, if neg { -c } else { c });
                }
            }
        }
        out
    }

    /// Generator factors of a canonical monomial, in order.
    fn factors(&self, m: &Monomial) -> Vec<usize> {
        m.iter().enumerate().flat_map(|(i, &e)| std::iter::repeat(i).take(e as usize)).collect()
    }

    fn mono_of(&self, factors: &[usize]) -> Monomial {
        let mut m = vec![0; self.gens.len()];
        for &f in factors {
            m[f] += 1;
        }
        m
    }

    /// Leibniz rule on the ordered factors `x_1 ⋯ x_k`.
    pub fn d_mono(&self, m: &Monomial) -> Poly {
        let f = self.factors(m);
        let mut out = Poly::zero();
        let mut prefix_degree = 0;
        for i in 0..f.len() {
            let dg = &self.d[f[i]];
            if !dg.is_zero() {
                let mut pre = Poly::zero();
                pre.add_term(self.mono_of(&f[..i]), Q::one());
                let mut post = Poly::zero();
                post.add_term(self.mono_of(&f[i + 1..]), Q::one());
                let term = self.mul(&self.mul(&pre, dg), &post);
                out = out.add(&if prefix_degree % 2 == 1 { term.neg() } else { term });
            }
            prefix_degree += self.gens[f[i]].degree;
        }
        out
    }

    pub fn d_poly(&self, p: &Poly) -> Poly {
        let mut out = Poly::zero();
        for (m, c) in &p.terms {
            out = out.add(&self.d_mono(m).scale(c));
        }
        out
    }

    /// Monomial basis of degree `k` in canonical order.
    pub fn basis(&self, k: usize) -> Result<Vec<Monomial>> {
        if k > self.cutoff {
            return Err(Error::Cutoff { requested: k, cutoff: self.cutoff });
        }
        let mut out = Vec::new();
        let mut cur = vec![0u16; self.gens.len()];
        self.enumerate(0, k, &mut cur, &mut out);
        out.sort();
        Ok(out)
    }

    fn enumerate(&self, i: usize, remaining: usize, cur: &mut Monomial, out: &mut Vec<Monomial>) {
        if i == self.gens.len() {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let deg = self.gens[i].degree;
        let max_e = if self.is_odd(i) { 1 } else { remaining / deg };
        for e in 0..=max_e.min(remaining / deg) {
            cur[i] = e as u16;
            self.enumerate(i + 1, remaining - e * deg, cur, out);
        }
        cur[i] = 0;
    }

    /// Matrix of `d: A^k → A^{k+1}` in the monomial bases.
    pub fn d_matrix(&self, k: usize) -> Result<(Vec<Monomial>, Vec<Monomial>, QMatrix)> {
        let src = self.basis(k)?;
        let dst = self.basis(k + 1)?;
        let index: HashMap<&Monomial, usize> = dst.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut mat = QMatrix::zeros(dst.len(), src.len());
        for (c, m) in src.iter().enumerate() {
            for (mm, coef) in self.d_mono(m).terms {
                mat[(index[&mm], c)] = coef;
            }
        }
        Ok((src, dst, mat))
    }

    /// Coordinates of a homogeneous polynomial in the degree-`k` basis.
    pub fn coordinates(&self, p: &Poly, basis: &[Monomial]) -> Result<Vec<Q>> {
        let index: HashMap<&Monomial, usize> = basis.iter().enumerate().map(|(i, m)| (m, i)).collect();
        let mut v = vec![Q::zero(); basis.len()];
        for (m, c) in &p.terms {
            let i = index.get(m).ok_or_else(|| Error::Invalid("polynomial is not homogeneous of the basis degree".into()))?;
            v[*i] = c.clone();
        }
        Ok(v)
    }

    pub fn poly_from_coordinates(&self, v: &[Q], basis: &[Monomial]) -> Poly {
        let mut p = Poly::zero();
        for (c, m) in v.iter().zip(basis) {
            p.add_term(m.clone(), c.clone());
        }
        p
    }

    /// `dim H^k` for `k = 0..=max_degree`.
    pub fn cohomology(&self, max_degree: usize) -> Result<CdgaCohomology> {
        if max_degree + 1 > self.cutoff {
            return Err(Error::Cutoff { requested: max_degree + 1, cutoff: self.cutoff });
        }
        let ranks: Vec<(usize, usize)> = (0..=max_degree)
            .into_par_iter()
            .map(|k| -> Result<(usize, usize)> {
                let (src, _, m) = self.d_matrix(k)?;
                Ok((src.len(), m.rank()))
            })
            .collect::<Result<_>>()?;
        let dims = (0..=max_degree)
            .map(|k| {
                let (size, rank) = ranks[k];
                let prev = if k == 0 { 0 } else { ranks[k - 1].1 };
                size - rank - prev
            })
            .collect();
        Ok(CdgaCohomology { dims, basis_sizes: ranks.iter().map(|r| r.0).collect() })
    }

    pub fn display_poly(&self, p: &Poly) -> String {
        if p.is_zero() {
            return "0".into();
        }
        let mut out = String::new();
        for (m, c) in &p.terms {
            let body: Vec<String> = m
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(i, &e)| if e == 1 { self.gens[i].name.clone() } else { format!("{}^{e}", self.gens[i].name) })
                .collect();
            let sign = if c.is_negative() { "-" } else if out.is_empty() { "" } else { "+" };
            let mag = c.abs();
            let coef = if mag.is_one() && !body.is_empty() { String::new() } else { format!("{mag}") };
            let sep = if coef.is_empty() || body.is_empty() { "" } else { "*" };
            out.push_str(&format!("{sign}{coef}{sep}{}", body.join("*")));
        }
        out
    }
}

impl fmt::Display for Generator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}({})", self.name, self.degree)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn free(gens: &[(&str, usize)]) -> Cdga {
        let g: Vec<Generator> = gens.iter().map(|(n, d)| Generator { name: n.to_string(), degree: *d }).collect();
        let d = vec![Poly::zero(); g.len()];
        Cdga::new(g, d).unwrap()
    }

    #[test]
    fn circle_model() {
        let a = free(&[("a", 1)]);
        assert_eq!(a.cohomology(1).unwrap().dims, vec![1, 1]);
        assert_eq!(a.basis(2).unwrap().len(), 0);
    }

    #[test]
    fn odd_generators_anticommute() {
        let a = free(&[("x", 1), ("y", 1)]);
        let xy = a.mul(&a.gen(0), &a.gen(1));
        let yx = a.mul(&a.gen(1), &a.gen(0));
        assert_eq!(xy, yx.neg());
        assert!(a.mul(&a.gen(0), &a.gen(0)).is_zero());
    }

    #[test]
    fn differential_must_square_to_zero() {
        // dx = y, dy = z for degrees 1, 2, 3: d²x = z ≠ 0.
        let g = vec![
            Generator { name: "x".into(), degree: 1 },
            Generator { name: "y".into(), degree: 2 },
            Generator { name: "z".into(), degree: 3 },
        ];
        let a = free(&[("x", 1), ("y", 2), ("z", 3)]);
        let d = vec![a.gen(1), a.gen(2), Poly::zero()];
        assert!(matches!(Cdga::new(g, d), Err(Error::NotADifferential(_))));
    }

    #[test]
    fn cutoff_is_enforced() {
        let a = free(&[("a", 1)]).with_cutoff(3);
        assert!(matches!(a.cohomology(3), Err(Error::Cutoff { .. })));
    }
}
