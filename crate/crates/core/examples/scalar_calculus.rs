//! Exact derivatives of one-variable expressions and the zero test on an interval.

use gktorus::symforms::{zero_test, ScalarExpr};

fn main() -> gktorus::Result<()> {
    let t = ScalarExpr::t();
    let p = ScalarExpr::param("p", 0.9);
    let b2 = ScalarExpr::frac(-1, 2).mul(&t).exp().mul(&p.mul(&t).cos());
    let d = b2.derivative();
    println!("b2      = {b2}");
    println!("b2'     = {d}");
    for x in [0.0, 0.25, 0.5] {
        let (v, dv) = b2.eval_with_derivative(x)?;
        println!("t = {x:.2}: b2 = {v:+.12}, b2' = {dv:+.12}");
    }
    let l = b2.powi(2).add(&ScalarExpr::frac(-1, 2).mul(&t).exp().mul(&p.mul(&t).sin()).powi(2));
    let ratio = l.derivative().div(&l);
    println!("l'/l + 1 vanishes: {:?}", zero_test(&ratio.add(&ScalarExpr::one()), 0.0, 1.0));
    Ok(())
}
