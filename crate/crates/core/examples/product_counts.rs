//! Cell counts of a tensor product against the closed formulas.

use polycell::complex_products::{complex_tensor_product, product_counts, product_face_length};
use polycell::fixtures::{cube_surface, polygon, tetrahedron, torus};

fn main() -> polycell::Result<()> {
    let pairs = [
        ("triangle", polygon(3)?, "pentagon", polygon(5)?),
        ("square", polygon(4)?, "hexagon", polygon(6)?),
        ("tetrahedron", tetrahedron(), "cube", cube_surface()),
        ("torus", torus(), "triangle", polygon(3)?),
    ];
    for (a, x, b, y) in &pairs {
        let p = complex_tensor_product(x, y);
        let (v, e, f) = product_counts(x, y);
        let z = &p.complex;
        println!(
            "{a} x {b}: V={} E={} F={} (expected {v} {e} {f}), chi={}",
            z.skeleton().vertex_count(),
            z.skeleton().edge_count(),
            z.face_count(),
            z.euler_characteristic()
        );
    }
    println!("a 4-gon times a 6-gon has faces of length {}", product_face_length(4, 6));
    Ok(())
}
