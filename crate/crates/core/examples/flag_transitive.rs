//! Flag-transitivity of products of flag-transitive complexes.

use polycell::complex_products::complex_tensor_product;
use polycell::fixtures::{cube_surface, polygon, tetrahedron};
use polycell::symmetry::complex_automorphism_group;

fn main() -> polycell::Result<()> {
    let xs = [
        ("triangle", polygon(3)?),
        ("square", polygon(4)?),
        ("tetrahedron", tetrahedron()),
        ("cube", cube_surface()),
    ];
    for (i, (a, x)) in xs.iter().enumerate() {
        for (b, y) in &xs[i..] {
            let p = complex_tensor_product(x, y);
            let aut = complex_automorphism_group(&p.complex)?;
            println!(
                "{a} x {b}: |Aut| = {}, {} flag(s), {} flag orbit(s)",
                aut.order(),
                p.complex.flag_count(),
                aut.flag_orbits().len()
            );
        }
    }
    Ok(())
}
