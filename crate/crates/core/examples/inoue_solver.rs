//! Inoue parameters `(t0, p, P)` for an integer matrix, and a scan of `(m, n)`.

use gktorus::inoue::{companion, enumerate_admissible, solve};

fn main() -> gktorus::Result<()> {
    let a = companion(1, 0);
    let data = solve(&a)?;
    println!("A = {:?}", a.0);
    println!("t0 = {:.12}, p = {:.12}", data.t0, data.p);
    println!("conjugation residual {:.2e}", data.conjugation_residual);
    println!("lattice rounding on (3, -7, 11): {:.2e}", data.lattice_rounding_residual([3, -7, 11]));

    let found = enumerate_admissible((-3, 3), (-3, 3));
    println!("{} admissible (m, n) with |m|, |n| <= 3:", found.len());
    for adm in found {
        println!("  ({:+}, {:+})  alpha = {:.6}", adm.m, adm.n, adm.alpha);
    }
    Ok(())
}
