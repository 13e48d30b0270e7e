//! Non-split structure from a hyperkähler fiber, and its Poisson tensor `σ`.

use gktorus::gk::{assemble_gk, classify_split, verify_gk, FiberMap, FiberMode, FlatFiber, FrameFamily, SplitClass};
use gktorus::inoue::{companion, solve};

fn main() -> gktorus::Result<()> {
    let data = solve(&companion(1, 0))?;
    let frame = FrameFamily::from_data(&data);
    let fiber = FlatFiber::new(4, FiberMode::Hyperkahler)?;
    for (name, psi) in [("identity", FiberMap::identity(4)), ("quarter rotation", FiberMap::quarter_rotation(4))] {
        let s = assemble_gk(&frame, &data.rho(), &fiber, &psi)?;
        let cert = verify_gk(&s, 17)?;
        println!("psi = {name}: certificate {}", if cert.pass() { "passes" } else { "fails" });
        if let SplitClass::NonSplit { sigma, fiber_block_is_minus_omega3_inverse } = classify_split(&s)? {
            println!("  sigma fiber block = -omega_3^-1: {fiber_block_is_minus_omega3_inverse}");
            for row in sigma.iter().skip(3).take(4) {
                println!("  {}", row[3..7].join(" "));
            }
        }
    }
    Ok(())
}
