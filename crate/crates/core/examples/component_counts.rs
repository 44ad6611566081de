//! Components of graph tensor products and bipartiteness.

use polycell::fixtures::{complete, cycle, path};
use polycell::tensor_product;

fn main() -> polycell::Result<()> {
    let graphs = [
        ("P3", path(3)),
        ("C4", cycle(4)?),
        ("C5", cycle(5)?),
        ("K3", complete(3)),
        ("K4", complete(4)),
    ];
    for (a, g) in &graphs {
        for (b, h) in &graphs {
            let p = tensor_product(g, h);
            println!(
                "{a} x {b}: {} vertices, {} component(s), bipartite {}",
                p.graph.vertex_count(),
                p.graph.components().len(),
                p.graph.is_bipartite()
            );
        }
    }
    Ok(())
}
