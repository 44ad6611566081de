//! Automorphisms of a product component against those coming from the factors.

use polycell::complex_products::TensorProduct;
use polycell::fixtures::{necklace, polygon};
use polycell::symmetry::{cartesian_subgroup, complex_automorphism_group, component_subcomplex};

fn main() -> polycell::Result<()> {
    let cases = [
        ("hexagon x hexagon", vec![polygon(6)?, polygon(6)?]),
        ("square x square", vec![polygon(4)?, polygon(4)?]),
        ("hexagon x necklace(3,6)", vec![polygon(6)?, necklace(3, 6)?]),
    ];
    for (name, factors) in cases {
        let p = TensorProduct::new(factors)?;
        let cart = cartesian_subgroup(&p.factors, &p, Some(0))?;
        let aut = complex_automorphism_group(&component_subcomplex(p.complex(), 0))?;
        println!("{name}, component 0: |Aut| = {}, Cartesian subgroup {}", aut.order(), cart.order());
    }
    Ok(())
}
