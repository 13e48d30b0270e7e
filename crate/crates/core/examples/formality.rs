//! CDGA cohomology, a quasi-isomorphism check and the Jordan-block criteria.

use gktorus::formality::{
    bfm_formality_test, check_quasi_iso, minimal_model_low_degree, sm_model, Morphism, TargetMode,
};
use gktorus::linalg::QMatrix;

fn main() -> gktorus::Result<()> {
    let a = sm_model()?;
    let v = check_quasi_iso(&Morphism::identity(&a), TargetMode::Cohomology, 4)?;
    println!("S_M model: dims {:?}, quasi-iso {}", v.degrees.iter().map(|d| d.source_dim).collect::<Vec<_>>(), v.quasi_iso);

    let hyperbolic = QMatrix::from_i64_rows(&[vec![2, 1], vec![1, 1]])?;
    let three = QMatrix::from_i64_rows(&[vec![1, 1, 0], vec![0, 1, 1], vec![0, 0, 1]])?;
    let actions = vec![QMatrix::identity(1), hyperbolic, three];
    let rec = bfm_formality_test(&actions)?;
    println!("Jordan block of size 3 in degree 2: {:?}, r = {:?}", rec.verdict, rec.r);
    let frag = minimal_model_low_degree(&actions, 2)?;
    for (i, g) in frag.cdga.generators().iter().enumerate() {
        println!("  d{} = {}", g.name, frag.cdga.display_poly(frag.cdga.differential(i)));
    }
    println!("  fragment cohomology {:?}", frag.cdga.cohomology(3)?.dims);
    Ok(())
}
