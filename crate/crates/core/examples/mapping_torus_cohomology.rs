//! Betti numbers of `T^7` mapping tori and the parity of `b_1`.

use gktorus::cohomology::{b1_parity_report, mapping_torus_of, numbered_names, PullbackAction};
use gktorus::inoue::companion;
use gktorus::linalg::IntMatrix;

fn main() -> gktorus::Result<()> {
    let rho = PullbackAction::from_linear_map(&companion(1, 0))?;
    let rotation = IntMatrix(vec![vec![0, 1, 0, 0], vec![-1, 0, 0, 0], vec![0, 0, 0, 1], vec![0, 0, -1, 0]]);
    for (name, psi) in [("identity", PullbackAction::identity(4)), ("quarter rotation", PullbackAction::from_linear_map(&rotation)?)] {
        let total = rho.product(&psi);
        let table = mapping_torus_of(&total, &numbered_names(1, 7))?;
        let b1 = b1_parity_report(&rho, &psi)?;
        println!("psi = {name}: b = {:?}, b1 odd {}", table.dims, b1.odd);
        if let Some(reps) = &table.representatives {
            println!("  H^2 spanned by {}", reps[2].join(", "));
        }
    }
    Ok(())
}
