//! Face blocks of products of even-gon complexes, by labels and intrinsically.

use polycell::blocks::{block_graph, face_blocks_by_label, face_blocks_intrinsic};
use polycell::complex_products::TensorProduct;
use polycell::fixtures::{hexagon_flower, hexagon_strip, polygon};

fn main() -> polycell::Result<()> {
    let factors = vec![polygon(6)?, hexagon_strip(2)?];
    let p = TensorProduct::new(factors.clone())?;
    let labelled = face_blocks_by_label(&p)?;
    let intrinsic = face_blocks_intrinsic(p.complex())?;
    println!("hexagon x strip2: {} label blocks, {} intrinsic blocks", labelled.len(), intrinsic.len());
    for b in &labelled {
        println!("  generators {:?} class {:?}: {} faces", b.generators, b.class, b.faces.len());
    }
    let bg = block_graph(&[polygon(6)?, hexagon_flower()])?;
    println!(
        "hexagon x flower block graph: {} vertices, {} edges",
        bg.graph.vertex_count(),
        bg.graph.edge_count()
    );
    Ok(())
}
