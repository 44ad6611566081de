//! Prime factorization of graphs and complexes.

use polycell::complex_products::TensorProduct;
use polycell::factorization::{complex_prime_factorization, graph_prime_factorization, GraphClass};
use polycell::fixtures::{complete, polygon, tetrahedron};
use polycell::random::{relabel_complex, rng};
use polycell::tensor_product;

fn main() -> polycell::Result<()> {
    let g = tensor_product(&complete(3), &complete(4)).graph;
    let f = graph_prime_factorization(&g, GraphClass::S0)?;
    println!("K3 x K4 has {} prime factor(s), verified {}", f.factors.len(), f.verify(&g));

    let p = TensorProduct::new(vec![tetrahedron(), polygon(3)?, polygon(5)?])?;
    let x = relabel_complex(p.complex(), &mut rng(1));
    let f = complex_prime_factorization(&x)?;
    for y in &f.factors {
        println!(
            "factor: {} vertices, {} faces of length {:?}",
            y.skeleton().vertex_count(),
            y.face_count(),
            y.uniform_face_length()
        );
    }
    println!("certificate verified {}", f.verify(&x));
    Ok(())
}
