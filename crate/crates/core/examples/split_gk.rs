//! Split generalized Kähler structure on `T^3_ρ × T^4` with a flat Kähler fiber.

use gktorus::gk::{assemble_gk, classify_split, verify_gk, FiberMap, FiberMode, FlatFiber, FrameFamily};
use gktorus::inoue::{companion, solve};

fn main() -> gktorus::Result<()> {
    let data = solve(&companion(1, 0))?;
    let frame = FrameFamily::from_data(&data);
    let fiber = FlatFiber::new(4, FiberMode::Kahler)?;
    let s = assemble_gk(&frame, &data.rho(), &fiber, &FiberMap::identity(4))?;
    let cert = verify_gk(&s, 33)?;
    for item in &cert.items {
        println!("{:<18} {:.3e}  {}", item.item, item.max_residual, if item.pass { "ok" } else { "FAIL" });
    }
    println!("H = {:+.12} dx^123 at t = 0", cert.h_coefficient);
    println!("split: {}", classify_split(&s)?.is_split());
    Ok(())
}
