//! Hodge tables and the `E_2` page of the Borel spectral sequence of a
//! holomorphic fibration `F → T → B`.

use std::collections::BTreeMap;

use serde::{Serialize, Serializer};

use super::exterior::binomial;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HodgeTable {
    /// Complex dimension.
    pub n: usize,
    /// `h[p][q] = h^{p,q}`.
    pub h: Vec<Vec<usize>>,
}

impl HodgeTable {
    pub fn zeros(n: usize) -> Self {
        HodgeTable { n, h: vec![vec![0; n + 1]; n + 1] }
    }

    pub fn point() -> Self {
        HodgeTable { n: 0, h: vec![vec![1]] }
    }

    /// Inoue surfaces of type `S_M`: `h^{0,0} = h^{0,1} = h^{2,1} = h^{2,2} = 1`.
    pub fn inoue() -> Self {
        let mut t = Self::zeros(2);
        for (p, q) in [(0, 0), (0, 1), (2, 1), (2, 2)] {
            t.h[p][q] = 1;
        }
        t
    }

    /// `h^{p,q} = C(n,p) C(n,q)`.
    pub fn torus(n: usize) -> Self {
        let mut t = Self::zeros(n);
        for p in 0..=n {
            for q in 0..=n {
                t.h[p][q] = binomial(n, p) * binomial(n, q);
            }
        }
        t
    }

    pub fn get(&self, p: i64, q: i64) -> usize {
        if p < 0 || q < 0 || p as usize > self.n || q as usize > self.n {
            0
        } else {
            self.h[p as usize][q as usize]
        }
    }

    pub fn total(&self) -> usize {
        self.h.iter().flatten().sum()
    }

    /// Betti numbers `b_k = Σ_{p+q=k} h^{p,q}` (an upper bound without Hodge decomposition).
    pub fn betti_sums(&self) -> Vec<usize> {
        let mut b = vec![0; 2 * self.n + 1];
        for p in 0..=self.n {
            for q in 0..=self.n {
                b[p + q] += self.h[p][q];
            }
        }
        b
    }
}

/// Bigraded Künneth product.
pub fn hodge_kunneth(a: &HodgeTable, b: &HodgeTable) -> HodgeTable {
    let mut t = HodgeTable::zeros(a.n + b.n);
    for p in 0..=a.n {
        for q in 0..=a.n {
            for r in 0..=b.n {
                for s in 0..=b.n {
                    t.h[p + r][q + s] += a.h[p][q] * b.h[r][s];
                }
            }
        }
    }
    t
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BorelPage {
    pub base_dim: usize,
    pub fiber_dim: usize,
    /// Nonzero `^{p,q}E_2^{u,v}` keyed by `(p, q, u, v)`, always with `p + q = u + v`.
    pub entries: BTreeMap<(usize, usize, usize, usize), usize>,
}

#[derive(Serialize)]
struct PageRecord {
    p: usize,
    q: usize,
    u: usize,
    v: usize,
    dim: usize,
}

impl Serialize for BorelPage {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let recs: Vec<PageRecord> =
            self.entries.iter().map(|(&(p, q, u, v), &dim)| PageRecord { p, q, u, v, dim }).collect();
        recs.serialize(s)
    }
}

impl BorelPage {
    pub fn get(&self, p: usize, q: usize, u: usize, v: usize) -> Result<usize> {
        if p + q != u + v {
            return Err(Error::Invalid(format!("bidegree ({p},{q},{u},{v}) has p + q != u + v")));
        }
        Ok(self.entries.get(&(p, q, u, v)).copied().unwrap_or(0))
    }
}

/// `^{p,q}E_2^{u,v} = Σ_k h^{k,u−k}(B) · h^{p−k,q−u+k}(F)` for `p + q = u + v`.
pub fn borel_e2(base: &HodgeTable, fiber: &HodgeTable) -> BorelPage {
    let nb = base.n as i64;
    let nt = (base.n + fiber.n) as i64;
    let mut entries = BTreeMap::new();
    for p in 0..=nt {
        for q in 0..=nt {
            for u in 0..=(2 * nb).min(p + q) {
                let v = p + q - u;
                let dim: usize = (0..=p).map(|k| base.get(k, u - k) * fiber.get(p - k, q - u + k)).sum();
                if dim > 0 {
                    entries.insert((p as usize, q as usize, u as usize, v as usize), dim);
                }
            }
        }
    }
    BorelPage { base_dim: base.n, fiber_dim: fiber.n, entries }
}

/// Whether `d_2 = 0` is assumed, with the recorded argument.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "status", rename_all = "snake_case")]
pub enum Degeneration {
    NotAssumed,
    Assumed { justification: String },
}

impl Degeneration {
    pub fn assumed(justification: &str) -> Result<Self> {
        if justification.trim().is_empty() {
            return Err(Error::Invalid("degeneration requires a justification".into()));
        }
        Ok(Degeneration::Assumed { justification: justification.into() })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct CollapsedTable {
    pub table: HodgeTable,
    pub label: String,
    pub degeneration: Degeneration,
}

impl CollapsedTable {
    pub fn is_exact(&self) -> bool {
        matches!(self.degeneration, Degeneration::Assumed { .. })
    }
}

/// Sums the page over `(u, v)` for each `(p, q)`.
pub fn collapse(page: &BorelPage, degeneration: Degeneration) -> CollapsedTable {
    let mut table = HodgeTable::zeros(page.base_dim + page.fiber_dim);
    for (&(p, q, _, _), &d) in &page.entries {
        table.h[p][q] += d;
    }
    let label = match &degeneration {
        Degeneration::NotAssumed => "upper bound; exact when d2 = 0".to_string(),
        Degeneration::Assumed { .. } => "exact (d2 = 0 assumed, see justification)".to_string(),
    };
    CollapsedTable { table, label, degeneration }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn torus_tables() {
        let t = HodgeTable::torus(2);
        assert_eq!(t.h[1][1], 4);
        assert_eq!(t.total(), 16);
        assert_eq!(HodgeTable::inoue().total(), 4);
    }

    #[test]
    fn point_fiber_collapses_to_base() {
        let page = borel_e2(&HodgeTable::inoue(), &HodgeTable::point());
        assert_eq!(collapse(&page, Degeneration::NotAssumed).table, HodgeTable::inoue());
    }

    #[test]
    fn collapse_is_kunneth() {
        let page = borel_e2(&HodgeTable::inoue(), &HodgeTable::torus(2));
        let c = collapse(&page, Degeneration::NotAssumed);
        assert_eq!(c.table, hodge_kunneth(&HodgeTable::inoue(), &HodgeTable::torus(2)));
        assert_eq!(c.table.h[0][1], 3);
        assert!(!c.is_exact());
    }

    #[test]
    fn mismatched_bidegree_is_rejected() {
        let page = borel_e2(&HodgeTable::inoue(), &HodgeTable::torus(2));
        assert!(page.get(1, 0, 0, 0).is_err());
        assert!(Degeneration::assumed("  ").is_err());
    }
}
