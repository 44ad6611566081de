//! Skeleton symmetry of products of even cycles.

use polycell::complex_products::TensorProduct;
use polycell::fixtures::polygon;
use polycell::symmetry::{cartesian_subgroup, complex_automorphism_group, component_subcomplex};
use polycell::Complex;

fn main() -> polycell::Result<()> {
    for (n, m) in [(2, 2), (3, 2), (4, 2), (3, 3)] {
        let p = TensorProduct::new(vec![polygon(2 * n)?; m])?;
        let cart = cartesian_subgroup(&p.factors, &p, Some(0))?;
        let comp = component_subcomplex(p.complex(), 0);
        let bare = Complex::from_graph(comp.skeleton().clone());
        let aut = complex_automorphism_group(&bare)?;
        println!("C{}^{m}: skeleton group {}, Cartesian {}", 2 * n, aut.order(), cart.order());
    }
    Ok(())
}
