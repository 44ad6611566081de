//! Necklaces of polygons and their products with a hexagon.

use polycell::complex_products::TensorProduct;
use polycell::fixtures::{necklace, polygon};
use polycell::symmetry::complex_automorphism_group;

fn main() -> polycell::Result<()> {
    for beads in 2..=4 {
        let x = necklace(beads, 6)?;
        let aut = complex_automorphism_group(&x)?;
        let p = TensorProduct::new(vec![polygon(6)?, x.clone()])?;
        println!(
            "necklace({beads},6): {} vertices, |Aut| = {}, ordinary {}; product has {} component(s)",
            x.skeleton().vertex_count(),
            aut.order(),
            x.is_ordinary(),
            p.complex().components().len()
        );
    }
    Ok(())
}
