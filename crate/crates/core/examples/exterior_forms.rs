//! Wedge products, `d`, and linear pullbacks on the chart of `T^3 × R`.

use gktorus::linalg::QMatrix;
use gktorus::symforms::{ChartForm, Coord, ScalarExpr};

fn main() -> gktorus::Result<()> {
    let t = ScalarExpr::t();
    let e1 = ChartForm::monomial(&[Coord::X(1)], t.exp());
    let e2 = ChartForm::monomial(&[Coord::X(2)], ScalarExpr::frac(-1, 2).mul(&t).exp());
    let w = e1.wedge(&e2);
    println!("e1 ^ e2     = {w}");
    println!("d(e1 ^ e2)  = {}", w.exterior_d());
    println!("d(d(e1))    = {}", e1.exterior_d().exterior_d());

    let rho = QMatrix::from_i64_rows(&[vec![0, 0, 1], vec![1, 0, 0], vec![0, 1, 1]])?;
    let block = [Coord::X(1), Coord::X(2), Coord::X(3)];
    println!("rho^* (e1 ^ e2) = {}", w.pullback_linear(&block, &rho)?);
    Ok(())
}
