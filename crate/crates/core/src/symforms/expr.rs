//! Closed-form scalar functions of the time variable `t` with exact
//! symbolic derivatives.

use std::fmt;
use std::sync::Arc;

use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::linalg::{q, Q};

/// Expression tree over rationals, named real parameters, `t`, the field
/// operations, integer powers and `exp`/`cos`/`sin`.
///
/// Constructors normalize trivial cases (constant folding, `0·x`, `1·x`,
/// `x - x`, ...) so that identically vanishing results are frequently
/// recognizable as structural zeros.
#[derive(Clone)]
pub struct ScalarExpr(Arc<Node>);

#[derive(Clone, Debug, PartialEq)]
pub enum Node {
    Rat(Q),
    /// A named real parameter with its bound value, e.g. `p` or `t0`.
    Param(Arc<str>, f64),
    Var,
    Add(ScalarExpr, ScalarExpr),
    Sub(ScalarExpr, ScalarExpr),
    Mul(ScalarExpr, ScalarExpr),
    Div(ScalarExpr, ScalarExpr),
    Neg(ScalarExpr),
    Pow(ScalarExpr, i32),
    Exp(ScalarExpr),
    Cos(ScalarExpr),
    Sin(ScalarExpr),
}

impl PartialEq for ScalarExpr {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0) || *self.0 == *other.0
    }
}

impl fmt::Debug for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl fmt::Display for ScalarExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_sexpr())
    }
}

impl ScalarExpr {
    fn wrap(node: Node) -> Self {
        ScalarExpr(Arc::new(node))
    }

    pub fn node(&self) -> &Node {
        &self.0
    }

    pub fn rat(x: Q) -> Self {
        Self::wrap(Node::Rat(x))
    }

    pub fn int(n: i64) -> Self {
        Self::rat(q(n))
    }

    pub fn frac(n: i64, d: i64) -> Self {
        Self::rat(crate::linalg::q_frac(n, d))
    }

    pub fn zero() -> Self {
        Self::int(0)
    }

    pub fn one() -> Self {
        Self::int(1)
    }

    pub fn t() -> Self {
        Self::wrap(Node::Var)
    }

    pub fn param(name: &str, value: f64) -> Self {
        Self::wrap(Node::Param(Arc::from(name), value))
    }

    pub fn as_rat(&self) -> Option<&Q> {
        match self.node() {
            Node::Rat(x) => Some(x),
            _ => None,
        }
    }

    /// Structural zero after normalization.
    pub fn is_zero(&self) -> bool {
        self.as_rat().is_some_and(Zero::is_zero)
    }

    pub fn is_one(&self) -> bool {
        self.as_rat().is_some_and(One::is_one)
    }

    pub fn add(&self, other: &ScalarExpr) -> ScalarExpr {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::rat(a + b),
            (Some(a), _) if a.is_zero() => other.clone(),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ => match other.node() {
                Node::Neg(inner) => self.sub(inner),
                _ => Self::wrap(Node::Add(self.clone(), other.clone())),
            },
        }
    }

    pub fn sub(&self, other: &ScalarExpr) -> ScalarExpr {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::rat(a - b),
            (Some(a), _) if a.is_zero() => other.neg(),
            (_, Some(b)) if b.is_zero() => self.clone(),
            _ if self == other => Self::zero(),
            _ => match other.node() {
                Node::Neg(inner) => self.add(inner),
                _ => Self::wrap(Node::Sub(self.clone(), other.clone())),
            },
        }
    }

    pub fn mul(&self, other: &ScalarExpr) -> ScalarExpr {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) => Self::rat(a * b),
            (Some(a), _) if a.is_zero() => Self::zero(),
            (_, Some(b)) if b.is_zero() => Self::zero(),
            (Some(a), _) if a.is_one() => other.clone(),
            (_, Some(b)) if b.is_one() => self.clone(),
            (Some(a), _) if (-a).is_one() => other.neg(),
            (_, Some(b)) if (-b).is_one() => self.neg(),
            _ => match (self.node(), other.node()) {
                (Node::Neg(a), Node::Neg(b)) => a.mul(b),
                (Node::Neg(a), _) => a.mul(other).neg(),
                (_, Node::Neg(b)) => self.mul(b).neg(),
                _ => Self::wrap(Node::Mul(self.clone(), other.clone())),
            },
        }
    }

    pub fn div(&self, other: &ScalarExpr) -> ScalarExpr {
        match (self.as_rat(), other.as_rat()) {
            (Some(a), Some(b)) if !b.is_zero() => Self::rat(a / b),
            (Some(a), _) if a.is_zero() => Self::zero(),
            (_, Some(b)) if b.is_one() => self.clone(),
            _ if self == other => Self::one(),
            _ => Self::wrap(Node::Div(self.clone(), other.clone())),
        }
    }

    pub fn neg(&self) -> ScalarExpr {
        match self.node() {
            Node::Rat(a) => Self::rat(-a),
            Node::Neg(inner) => inner.clone(),
            _ => Self::wrap(Node::Neg(self.clone())),
        }
    }

    pub fn powi(&self, n: i32) -> ScalarExpr {
        match (self.node(), n) {
            (_, 0) => Self::one(),
            (_, 1) => self.clone(),
            (Node::Rat(a), _) if !(a.is_zero() && n < 0) => {
                let base = if n < 0 { a.recip() } else { a.clone() };
                Self::rat(num_traits::pow(base, n.unsigned_abs() as usize))
            }
            _ => Self::wrap(Node::Pow(self.clone(), n)),
        }
    }

    pub fn recip(&self) -> ScalarExpr {
        Self::one().div(self)
    }

    pub fn scale(&self, c: &Q) -> ScalarExpr {
        Self::rat(c.clone()).mul(self)
    }

    pub fn exp(&self) -> ScalarExpr {
        if self.is_zero() {
            return Self::one();
        }
        Self::wrap(Node::Exp(self.clone()))
    }

    pub fn cos(&self) -> ScalarExpr {
        if self.is_zero() {
            return Self::one();
        }
        Self::wrap(Node::Cos(self.clone()))
    }

    pub fn sin(&self) -> ScalarExpr {
        if self.is_zero() {
            return Self::zero();
        }
        Self::wrap(Node::Sin(self.clone()))
    }

    /// Exact symbolic derivative with respect to `t`.
    pub fn derivative(&self) -> ScalarExpr {
        match self.node() {
            Node::Rat(_) | Node::Param(..) => Self::zero(),
            Node::Var => Self::one(),
            Node::Add(a, b) => a.derivative().add(&b.derivative()),
            Node::Sub(a, b) => a.derivative().sub(&b.derivative()),
            Node::Mul(a, b) => a.derivative().mul(b).add(&a.mul(&b.derivative())),
            Node::Div(a, b) => {
                let num = a.derivative().mul(b).sub(&a.mul(&b.derivative()));
                num.div(&b.powi(2))
            }
            Node::Neg(a) => a.derivative().neg(),
            Node::Pow(a, n) => Self::int(*n as i64).mul(&a.powi(n - 1)).mul(&a.derivative()),
            Node::Exp(a) => self.mul(&a.derivative()),
            Node::Cos(a) => a.sin().neg().mul(&a.derivative()),
            Node::Sin(a) => a.cos().mul(&a.derivative()),
        }
    }

    pub fn eval(&self, t: f64) -> Result<f64> {
        Ok(match self.node() {
            Node::Rat(x) => x.to_f64().unwrap_or(f64::NAN),
            Node::Param(_, v) => *v,
            Node::Var => t,
            Node::Add(a, b) => a.eval(t)? + b.eval(t)?,
            Node::Sub(a, b) => a.eval(t)? - b.eval(t)?,
            Node::Mul(a, b) => a.eval(t)? * b.eval(t)?,
            Node::Div(a, b) => {
                let den = b.eval(t)?;
                if den.abs() < DENOMINATOR_FLOOR {
                    return Err(Error::Domain(format!("division by zero in {} at t={t}", b)));
                }
                a.eval(t)? / den
            }
            Node::Neg(a) => -a.eval(t)?,
            Node::Pow(a, n) => {
                let base = a.eval(t)?;
                if *n < 0 && base.abs() < DENOMINATOR_FLOOR {
                    return Err(Error::Domain(format!("negative power of zero in {} at t={t}", a)));
                }
                base.powi(*n)
            }
            Node::Exp(a) => a.eval(t)?.exp(),
            Node::Cos(a) => a.eval(t)?.cos(),
            Node::Sin(a) => a.eval(t)?.sin(),
        })
    }

    /// `(e(t), e'(t))` with the derivative taken symbolically.
    pub fn eval_with_derivative(&self, t: f64) -> Result<(f64, f64)> {
        Ok((self.eval(t)?, self.derivative().eval(t)?))
    }

    /// Whether the expression mentions the variable `t`.
    pub fn depends_on_t(&self) -> bool {
        match self.node() {
            Node::Rat(_) | Node::Param(..) => false,
            Node::Var => true,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.depends_on_t() || b.depends_on_t()
            }
            Node::Neg(a) | Node::Pow(a, _) | Node::Exp(a) | Node::Cos(a) | Node::Sin(a) => {
                a.depends_on_t()
            }
        }
    }

    /// Number of nodes, counting shared subtrees once per occurrence.
    pub fn size(&self) -> usize {
        1 + match self.node() {
            Node::Rat(_) | Node::Param(..) | Node::Var => 0,
            Node::Add(a, b) | Node::Sub(a, b) | Node::Mul(a, b) | Node::Div(a, b) => {
                a.size() + b.size()
            }
            Node::Neg(a) | Node::Pow(a, _) | Node::Exp(a) | Node::Cos(a) | Node::Sin(a) => a.size(),
        }
    }

    pub fn abs_rat(&self) -> Option<Q> {
        self.as_rat().map(|x| x.abs())
    }
}

const DENOMINATOR_FLOOR: f64 = 1e-300;

/// Absolute threshold below which a sampled value counts as zero.
pub const ZERO_TOLERANCE: f64 = 1e-12;
/// Number of Chebyshev sample points used by [`zero_test`].
pub const ZERO_TEST_POINTS: usize = 64;

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum ZeroKind {
    /// Normalizes to the rational constant 0.
    Structural,
    /// Vanishes to within [`ZERO_TOLERANCE`] at every sample point.
    Numerical { max_abs: f64 },
    NonZero { max_abs: f64 },
}

impl ZeroKind {
    pub fn is_zero(&self) -> bool {
        !matches!(self, ZeroKind::NonZero { .. })
    }

    pub fn max_abs(&self) -> f64 {
        match *self {
            ZeroKind::Structural => 0.0,
            ZeroKind::Numerical { max_abs } | ZeroKind::NonZero { max_abs } => max_abs,
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            ZeroKind::Structural => "structural zero",
            ZeroKind::Numerical { .. } => "numerical zero",
            ZeroKind::NonZero { .. } => "nonzero",
        }
    }
}

/// Chebyshev nodes of the first kind on `[lo, hi]`.
pub fn chebyshev_points(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    (0..n)
        .map(|k| {
            let x = ((2 * k + 1) as f64 * std::f64::consts::PI / (2 * n) as f64).cos();
            0.5 * (lo + hi) + 0.5 * (hi - lo) * x
        })
        .collect()
}

/// Equally spaced grid of `n >= 2` points covering `[lo, hi]`.
pub fn uniform_grid(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let n = n.max(2);
    (0..n).map(|k| lo + (hi - lo) * k as f64 / (n - 1) as f64).collect()
}

/// Identically-zero test on `[lo, hi]`.
pub fn zero_test(e: &ScalarExpr, lo: f64, hi: f64) -> ZeroKind {
    if e.is_zero() {
        return ZeroKind::Structural;
    }
    let mut max_abs: f64 = 0.0;
    for t in chebyshev_points(lo, hi, ZERO_TEST_POINTS) {
        match e.eval(t) {
            Ok(v) if v.is_finite() => max_abs = max_abs.max(v.abs()),
            _ => return ZeroKind::NonZero { max_abs: f64::INFINITY },
        }
    }
    if max_abs <= ZERO_TOLERANCE {
        ZeroKind::Numerical { max_abs }
    } else {
        ZeroKind::NonZero { max_abs }
    }
}

/// Maximum of `|e(t)|` over the given sample points.
pub fn max_abs_on(e: &ScalarExpr, points: &[f64]) -> Result<f64> {
    if e.is_zero() {
        return Ok(0.0);
    }
    let mut m: f64 = 0.0;
    for &t in points {
        m = m.max(e.eval(t)?.abs());
    }
    Ok(m)
}

impl std::ops::Add for &ScalarExpr {
    type Output = ScalarExpr;
    fn add(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::add(self, rhs)
    }
}

impl std::ops::Sub for &ScalarExpr {
    type Output = ScalarExpr;
    fn sub(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::sub(self, rhs)
    }
}

impl std::ops::Mul for &ScalarExpr {
    type Output = ScalarExpr;
    fn mul(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::mul(self, rhs)
    }
}

impl std::ops::Div for &ScalarExpr {
    type Output = ScalarExpr;
    fn div(self, rhs: &ScalarExpr) -> ScalarExpr {
        ScalarExpr::div(self, rhs)
    }
}

impl std::ops::Neg for &ScalarExpr {
    type Output = ScalarExpr;
    fn neg(self) -> ScalarExpr {
        ScalarExpr::neg(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-14
    }

    #[test]
    fn exp_at_zero() {
        let e = ScalarExpr::t().exp();
        let (v, d) = e.eval_with_derivative(0.0).unwrap();
        assert!(close(v, 1.0) && close(d, 1.0));
    }

    #[test]
    fn reciprocal_of_decaying_exponential() {
        let l = ScalarExpr::t().neg().exp();
        let e = l.recip();
        let (v, d) = e.eval_with_derivative(0.0).unwrap();
        assert!(close(v, 1.0) && close(d, 1.0));
    }

    #[test]
    fn damped_cosine_product_rule() {
        let p = ScalarExpr::param("p", 2.7);
        let t = ScalarExpr::t();
        let e = p.mul(&t).cos().mul(&ScalarExpr::frac(-1, 2).mul(&t).exp());
        let (v, d) = e.eval_with_derivative(0.0).unwrap();
        assert!(close(v, 1.0) && close(d, -0.5));
    }

    #[test]
    fn division_by_zero_names_subexpression() {
        let e = ScalarExpr::one().div(&ScalarExpr::t());
        let err = e.eval(0.0).unwrap_err().to_string();
        assert!(err.contains("division by zero") && err.contains('t'), "{err}");
    }

    #[test]
    fn normalization_produces_structural_zeros() {
        let t = ScalarExpr::t();
        assert!(t.sub(&t).is_zero());
        assert!(ScalarExpr::int(3).derivative().is_zero());
        assert!(t.mul(&ScalarExpr::zero()).is_zero());
        assert_eq!(zero_test(&t.sub(&t), 0.0, 1.0), ZeroKind::Structural);
    }

    #[test]
    fn numerical_zero_is_distinguished() {
        let t = ScalarExpr::t();
        // cos^2 + sin^2 - 1
        let e = t.cos().powi(2).add(&t.sin().powi(2)).sub(&ScalarExpr::one());
        assert!(matches!(zero_test(&e, 0.0, 1.0), ZeroKind::Numerical { .. }));
        assert!(matches!(zero_test(&t, 0.0, 1.0), ZeroKind::NonZero { .. }));
    }

    #[test]
    fn chebyshev_points_lie_inside_interval() {
        let pts = chebyshev_points(0.0, 2.0, 64);
        assert_eq!(pts.len(), 64);
        assert!(pts.iter().all(|&x| x > 0.0 && x < 2.0));
    }
}
