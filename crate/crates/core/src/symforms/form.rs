//! Exterior forms, vector fields and endomorphisms on the universal-cover
//! chart `R^3 x R^{4k} x [0, T]`.
//!
//! Every coefficient depends on `t` only, so `d` reduces to `f'(t) dt ∧ ·`.

use std::collections::BTreeMap;
use std::fmt;

use super::expr::{max_abs_on, zero_test, ScalarExpr, ZeroKind};
use crate::error::{Error, Result};
use crate::linalg::QMatrix;

/// Coordinate label. The derived order `x¹ < x² < x³ < y¹ < … < t` is the
/// canonical order of multi-indices.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Coord {
    X(u8),
    Y(u16),
    T,
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Coord::X(i) => write!(f, "x{i}"),
            Coord::Y(i) => write!(f, "y{i}"),
            Coord::T => write!(f, "t"),
        }
    }
}

/// Chart coordinates for a fiber of real dimension `fiber_dim`.
pub fn chart_coords(fiber_dim: usize) -> Vec<Coord> {
    let mut c = vec![Coord::X(1), Coord::X(2), Coord::X(3)];
    c.extend((1..=fiber_dim as u16).map(Coord::Y));
    c.push(Coord::T);
    c
}

pub type MultiIndex = Vec<Coord>;

/// Sorts `idx` in place, returning the permutation sign, or `None` when a
/// label repeats.
fn sort_with_sign(idx: &mut [Coord]) -> Option<i32> {
    let mut sign = 1;
    for i in 1..idx.len() {
        let mut j = i;
        while j > 0 && idx[j - 1] > idx[j] {
            idx.swap(j - 1, j);
            sign = -sign;
            j -= 1;
        }
    }
    if idx.windows(2).any(|w| w[0] == w[1]) {
        None
    } else {
        Some(sign)
    }
}

#[derive(Clone, PartialEq)]
pub struct ChartForm {
    degree: usize,
    terms: BTreeMap<MultiIndex, ScalarExpr>,
}

impl fmt::Debug for ChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for ChartForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(idx, c)| {
                let basis: Vec<String> = idx.iter().map(|x| format!("d{x}")).collect();
                if idx.is_empty() {
                    c.to_string()
                } else {
                    format!("{} {}", c, basis.join("^"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl ChartForm {
    pub fn zero(degree: usize) -> Self {
        ChartForm { degree, terms: BTreeMap::new() }
    }

    pub fn scalar(f: ScalarExpr) -> Self {
        let mut form = Self::zero(0);
        form.add_term(Vec::new(), f);
        form
    }

    /// `coeff · dx^{c_1} ∧ … ∧ dx^{c_k}` for labels in any order.
    pub fn monomial(coords: &[Coord], coeff: ScalarExpr) -> Self {
        let mut idx = coords.to_vec();
        let mut form = Self::zero(coords.len());
        if let Some(sign) = sort_with_sign(&mut idx) {
            let c = if sign < 0 { coeff.neg() } else { coeff };
            form.add_term(idx, c);
        }
        form
    }

    pub fn dx(c: Coord) -> Self {
        Self::monomial(&[c], ScalarExpr::one())
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &ScalarExpr)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, idx: &[Coord]) -> ScalarExpr {
        self.terms.get(idx).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    pub fn is_structurally_zero(&self) -> bool {
        self.terms.is_empty()
    }

    fn add_term(&mut self, idx: MultiIndex, coeff: ScalarExpr) {
        debug_assert_eq!(idx.len(), self.degree);
        if coeff.is_zero() {
            return;
        }
        let merged = match self.terms.remove(&idx) {
            Some(existing) => existing.add(&coeff),
            None => coeff,
        };
        if !merged.is_zero() {
            self.terms.insert(idx, merged);
        }
    }

    pub fn add(&self, other: &ChartForm) -> ChartForm {
        self.combine(other, false)
    }

    pub fn sub(&self, other: &ChartForm) -> ChartForm {
        self.combine(other, true)
    }

    fn combine(&self, other: &ChartForm, negate: bool) -> ChartForm {
        if other.terms.is_empty() {
            return self.clone();
        }
        if self.terms.is_empty() && !negate {
            return other.clone();
        }
        assert_eq!(self.degree, other.degree, "adding forms of different degree");
        let mut out = self.clone();
        for (idx, c) in &other.terms {
            if negate {
                match out.terms.remove(idx) {
                    Some(existing) => {
                        let d = existing.sub(c);
                        if !d.is_zero() {
                            out.terms.insert(idx.clone(), d);
                        }
                    }
                    None => out.add_term(idx.clone(), c.neg()),
                }
            } else {
                out.add_term(idx.clone(), c.clone());
            }
        }
        out
    }

    pub fn neg(&self) -> ChartForm {
        ChartForm {
            degree: self.degree,
            terms: self.terms.iter().map(|(k, c)| (k.clone(), c.neg())).collect(),
        }
    }

    pub fn scale(&self, f: &ScalarExpr) -> ChartForm {
        let mut out = Self::zero(self.degree);
        for (idx, c) in &self.terms {
            out.add_term(idx.clone(), f.mul(c));
        }
        out
    }

    pub fn wedge(&self, other: &ChartForm) -> ChartForm {
        let mut out = Self::zero(self.degree + other.degree);
        for (i, a) in &self.terms {
            for (j, b) in &other.terms {
                let mut idx: MultiIndex = i.iter().chain(j.iter()).copied().collect();
                if let Some(sign) = sort_with_sign(&mut idx) {
                    let c = a.mul(b);
                    out.add_term(idx, if sign < 0 { c.neg() } else { c });
                }
            }
        }
        out
    }

    /// Exterior derivative for `t`-dependent coefficients:
    /// `d(f dx^I) = f' dt ∧ dx^I`.
    pub fn exterior_d(&self) -> ChartForm {
        let mut out = Self::zero(self.degree + 1);
        for (idx, c) in &self.terms {
            if idx.contains(&Coord::T) {
                continue;
            }
            let dc = c.derivative();
            if dc.is_zero() {
                continue;
            }
            // dt ∧ dx^I = (-1)^{|I|} dx^I ∧ dt, and t sorts last.
            let mut new_idx = idx.clone();
            new_idx.push(Coord::T);
            out.add_term(new_idx, if idx.len() % 2 == 1 { dc.neg() } else { dc });
        }
        out
    }

    /// Replaces every `dx^c` by `image(c)` (a 1-form, or `dx^c` itself when
    /// `None`) and expands multiplicatively.
    pub fn substitute(&self, image: impl Fn(Coord) -> Option<ChartForm>) -> ChartForm {
        let mut out = Self::zero(self.degree);
        for (idx, c) in &self.terms {
            let mut acc = ChartForm::scalar(c.clone());
            for &x in idx {
                let img = image(x).unwrap_or_else(|| ChartForm::dx(x));
                acc = acc.wedge(&img);
                if acc.is_structurally_zero() {
                    break;
                }
            }
            for (k, v) in acc.terms {
                out.add_term(k, v);
            }
        }
        out
    }

    /// Pullback by a linear map acting on the coordinate block `block`:
    /// `dx^{block[i]} ↦ Σ_j M_ij dx^{block[j]}`.
    pub fn pullback_linear(&self, block: &[Coord], m: &QMatrix) -> Result<ChartForm> {
        if !m.is_square() || m.rows() != block.len() {
            return Err(Error::Dimension(format!(
                "pullback matrix is {}x{} but block has {} coordinates",
                m.rows(),
                m.cols(),
                block.len()
            )));
        }
        let images: BTreeMap<Coord, ChartForm> = block
            .iter()
            .enumerate()
            .map(|(i, &c)| {
                let mut img = ChartForm::zero(1);
                for (j, &d) in block.iter().enumerate() {
                    img.add_term(vec![d], ScalarExpr::rat(m[(i, j)].clone()));
                }
                (c, img)
            })
            .collect();
        Ok(self.substitute(|c| images.get(&c).cloned()))
    }

    /// Every coordinate label occurring in the form.
    pub fn support(&self) -> Vec<Coord> {
        let mut s: Vec<Coord> = self.terms.keys().flatten().copied().collect();
        s.sort();
        s.dedup();
        s
    }

    /// Worst zero-test verdict over all coefficients on `[lo, hi]`.
    pub fn zero_test(&self, lo: f64, hi: f64) -> ZeroKind {
        let mut worst = ZeroKind::Structural;
        for c in self.terms.values() {
            let z = zero_test(c, lo, hi);
            worst = match (worst, z) {
                (ZeroKind::NonZero { max_abs: a }, ZeroKind::NonZero { max_abs: b }) => {
                    ZeroKind::NonZero { max_abs: a.max(b) }
                }
                (w @ ZeroKind::NonZero { .. }, _) => w,
                (_, nz @ ZeroKind::NonZero { .. }) => nz,
                (ZeroKind::Numerical { max_abs: a }, ZeroKind::Numerical { max_abs: b }) => {
                    ZeroKind::Numerical { max_abs: a.max(b) }
                }
                (ZeroKind::Structural, z) => z,
                (w, _) => w,
            };
        }
        worst
    }

    /// Maximum absolute coefficient over the sample points.
    pub fn max_abs_on(&self, points: &[f64]) -> Result<f64> {
        let mut m: f64 = 0.0;
        for c in self.terms.values() {
            m = m.max(max_abs_on(c, points)?);
        }
        Ok(m)
    }

    /// Evaluates the form on `vectors` (one per degree) at time `t`.
    pub fn evaluate(&self, vectors: &[&ChartVector], t: f64) -> Result<f64> {
        if vectors.len() != self.degree {
            return Err(Error::Dimension(format!(
                "{}-form evaluated on {} vectors",
                self.degree,
                vectors.len()
            )));
        }
        let mut total = 0.0;
        for (idx, c) in &self.terms {
            // det[dx^{idx_a}(X_b)]
            let k = idx.len();
            let mut m = vec![vec![0.0; k]; k];
            for (a, &x) in idx.iter().enumerate() {
                for (b, v) in vectors.iter().enumerate() {
                    m[a][b] = v.component(x).eval(t)?;
                }
            }
            total += c.eval(t)? * det_small(&m);
        }
        Ok(total)
    }
}

fn det_small(m: &[Vec<f64>]) -> f64 {
    let n = m.len();
    if n == 0 {
        return 1.0;
    }
    let mut a = m.to_vec();
    let mut det = 1.0;
    for col in 0..n {
        let p = (col..n).max_by(|&i, &j| a[i][col].abs().total_cmp(&a[j][col].abs())).unwrap();
        if a[p][col] == 0.0 {
            return 0.0;
        }
        if p != col {
            a.swap(p, col);
            det = -det;
        }
        det *= a[col][col];
        for r in col + 1..n {
            let f = a[r][col] / a[col][col];
            for c in col..n {
                a[r][c] -= f * a[col][c];
            }
        }
    }
    det
}

/// A complex form stored as its real and imaginary parts.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexForm {
    pub re: ChartForm,
    pub im: ChartForm,
}

/// A complex scalar `re + i·im` with real coefficient expressions.
#[derive(Clone, Debug, PartialEq)]
pub struct ComplexScalar {
    pub re: ScalarExpr,
    pub im: ScalarExpr,
}

impl ComplexScalar {
    pub fn new(re: ScalarExpr, im: ScalarExpr) -> Self {
        ComplexScalar { re, im }
    }

    pub fn mul(&self, other: &ComplexScalar) -> ComplexScalar {
        ComplexScalar {
            re: self.re.mul(&other.re).sub(&self.im.mul(&other.im)),
            im: self.re.mul(&other.im).add(&self.im.mul(&other.re)),
        }
    }

    /// Division by a nonzero complex constant.
    pub fn div(&self, other: &ComplexScalar) -> ComplexScalar {
        let norm = other.re.powi(2).add(&other.im.powi(2));
        let conj = ComplexScalar { re: other.re.clone(), im: other.im.neg() };
        let num = self.mul(&conj);
        ComplexScalar { re: num.re.div(&norm), im: num.im.div(&norm) }
    }
}

impl ComplexForm {
    pub fn new(re: ChartForm, im: ChartForm) -> Self {
        ComplexForm { re, im }
    }

    pub fn add(&self, o: &ComplexForm) -> ComplexForm {
        ComplexForm { re: self.re.add(&o.re), im: self.im.add(&o.im) }
    }

    pub fn sub(&self, o: &ComplexForm) -> ComplexForm {
        ComplexForm { re: self.re.sub(&o.re), im: self.im.sub(&o.im) }
    }

    pub fn conj(&self) -> ComplexForm {
        ComplexForm { re: self.re.clone(), im: self.im.neg() }
    }

    pub fn wedge(&self, o: &ComplexForm) -> ComplexForm {
        ComplexForm {
            re: self.re.wedge(&o.re).sub(&self.im.wedge(&o.im)),
            im: self.re.wedge(&o.im).add(&self.im.wedge(&o.re)),
        }
    }

    pub fn exterior_d(&self) -> ComplexForm {
        ComplexForm { re: self.re.exterior_d(), im: self.im.exterior_d() }
    }

    pub fn scale(&self, c: &ComplexScalar) -> ComplexForm {
        ComplexForm {
            re: self.re.scale(&c.re).sub(&self.im.scale(&c.im)),
            im: self.re.scale(&c.im).add(&self.im.scale(&c.re)),
        }
    }

    pub fn max_abs_on(&self, points: &[f64]) -> Result<f64> {
        Ok(self.re.max_abs_on(points)?.max(self.im.max_abs_on(points)?))
    }
}

/// Vector field with `t`-dependent components along coordinate directions.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct ChartVector {
    comps: BTreeMap<Coord, ScalarExpr>,
}

impl ChartVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn coord(c: Coord) -> Self {
        Self::new().with(c, ScalarExpr::one())
    }

    pub fn with(mut self, c: Coord, f: ScalarExpr) -> Self {
        if !f.is_zero() {
            let merged = match self.comps.remove(&c) {
                Some(e) => e.add(&f),
                None => f,
            };
            if !merged.is_zero() {
                self.comps.insert(c, merged);
            }
        }
        self
    }

    pub fn component(&self, c: Coord) -> ScalarExpr {
        self.comps.get(&c).cloned().unwrap_or_else(ScalarExpr::zero)
    }

    pub fn components(&self) -> impl Iterator<Item = (&Coord, &ScalarExpr)> {
        self.comps.iter()
    }

    /// `α(X)` for a 1-form `α`.
    pub fn pair(&self, one_form: &ChartForm) -> Result<ScalarExpr> {
        if one_form.degree() != 1 {
            return Err(Error::Dimension("pairing needs a 1-form".into()));
        }
        let mut acc = ScalarExpr::zero();
        for (idx, c) in one_form.terms() {
            acc = acc.add(&c.mul(&self.component(idx[0])));
        }
        Ok(acc)
    }
}

/// Endomorphism of the chart tangent space, `J ∂_j = Σ_i m[i][j] ∂_i`.
#[derive(Clone, Debug)]
pub struct ChartEndo {
    pub coords: Vec<Coord>,
    pub m: Vec<Vec<ScalarExpr>>,
}

impl ChartEndo {
    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn eval(&self, t: f64) -> Result<Vec<Vec<f64>>> {
        self.m.iter().map(|row| row.iter().map(|e| e.eval(t)).collect()).collect()
    }

    pub fn apply_vector(&self, v: &ChartVector) -> ChartVector {
        let mut out = ChartVector::new();
        for (j, &c) in self.coords.iter().enumerate() {
            let vj = v.component(c);
            if vj.is_zero() {
                continue;
            }
            for (i, &d) in self.coords.iter().enumerate() {
                out = out.with(d, self.m[i][j].mul(&vj));
            }
        }
        out
    }

    fn one_form_image(&self, i: usize) -> ChartForm {
        let mut img = ChartForm::zero(1);
        for (j, &d) in self.coords.iter().enumerate() {
            img.add_term(vec![d], self.m[i][j].clone());
        }
        img
    }
}

/// `(Jα)(X_1, …, X_k) = α(J X_1, …, J X_k)`, expressed in chart coordinates.
pub fn apply_endo(form: &ChartForm, j: &ChartEndo) -> Result<ChartForm> {
    if let Some(c) = form.support().into_iter().find(|c| !j.coords.contains(c)) {
        return Err(Error::Dimension(format!("form uses d{c}, which the endomorphism does not act on")));
    }
    let pos: BTreeMap<Coord, usize> = j.coords.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    Ok(form.substitute(|c| Some(j.one_form_image(pos[&c]))))
}

/// Structural equality: the difference simplifies to the zero form.
pub fn forms_equal_exact(a: &ChartForm, b: &ChartForm) -> bool {
    a.sub(b).is_structurally_zero()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::q;

    fn x(i: u8) -> Coord {
        Coord::X(i)
    }

    #[test]
    fn wedge_signs() {
        let a = ChartForm::dx(x(1)).wedge(&ChartForm::dx(x(2)));
        assert!(a.coefficient(&[x(1), x(2)]).is_one());
        let b = ChartForm::dx(x(2)).wedge(&ChartForm::dx(x(1)));
        assert_eq!(b.coefficient(&[x(1), x(2)]).as_rat(), Some(&q(-1)));
        assert!(ChartForm::dx(x(1)).wedge(&ChartForm::dx(x(1))).is_structurally_zero());
    }

    #[test]
    fn d_of_constant_one_form_vanishes() {
        assert!(ChartForm::dx(x(1)).exterior_d().is_structurally_zero());
    }

    #[test]
    fn d_of_time_dependent_area_form() {
        // d(e^t dx2^dx3) = e^t dt^dx2^dx3 = e^t dx2^dx3^dt
        let f = ChartForm::monomial(&[x(2), x(3)], ScalarExpr::t().exp());
        let df = f.exterior_d();
        let c = df.coefficient(&[x(2), x(3), Coord::T]);
        assert!((c.eval(0.4).unwrap() - 0.4f64.exp()).abs() < 1e-15);
    }

    #[test]
    fn pullback_by_identity_is_trivial() {
        let block = [x(1), x(2), x(3)];
        let f = ChartForm::monomial(&[x(1), x(3)], ScalarExpr::t());
        let g = f.pullback_linear(&block, &QMatrix::identity(3)).unwrap();
        assert_eq!(f, g);
        assert!(f.pullback_linear(&block, &QMatrix::identity(2)).is_err());
    }

    #[test]
    fn evaluate_area_form_on_coordinate_vectors() {
        let f = ChartForm::monomial(&[x(1), x(2)], ScalarExpr::int(3));
        let e1 = ChartVector::coord(x(1));
        let e2 = ChartVector::coord(x(2));
        assert_eq!(f.evaluate(&[&e1, &e2], 0.0).unwrap(), 3.0);
        assert_eq!(f.evaluate(&[&e2, &e1], 0.0).unwrap(), -3.0);
    }

    #[test]
    fn complex_scalar_division() {
        // (1 + 2i) / (3 - i) = (1 + 7i) / 10
        let a = ComplexScalar::new(ScalarExpr::int(1), ScalarExpr::int(2));
        let b = ComplexScalar::new(ScalarExpr::int(3), ScalarExpr::int(-1));
        let c = a.div(&b);
        assert_eq!(c.re.as_rat(), Some(&crate::linalg::q_frac(1, 10)));
        assert_eq!(c.im.as_rat(), Some(&crate::linalg::q_frac(7, 10)));
    }
}
