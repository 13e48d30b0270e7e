//! Hodge numbers from the Borel `E_2` page and the Inoue `(1,0)`-coframe equations.

use gktorus::cohomology::{borel_e2, collapse, verify_inoue_dolbeault_frame, Degeneration, HodgeTable};
use gktorus::inoue::{companion, solve};

fn main() -> gktorus::Result<()> {
    let data = solve(&companion(1, 0))?;
    let cert = verify_inoue_dolbeault_frame(data.t0, data.p, 33)?;
    println!("alpha = {:+.12}, beta_+ = {:+.12}", cert.alpha, cert.beta_plus);
    for item in &cert.items {
        println!("  {:<14} {:.2e}", item.item, item.max_residual);
    }

    let page = borel_e2(&HodgeTable::inoue(), &HodgeTable::torus(2));
    let table = collapse(&page, Degeneration::NotAssumed);
    println!("h^(p,q) ({}):", table.label);
    for row in &table.table.h {
        println!("  {row:?}");
    }
    Ok(())
}
