//! A small bounded search over products of hexagonal patches.

use polycell::conjecture::{search, Hypotheses, SearchOptions};

fn main() -> polycell::Result<()> {
    let opts = SearchOptions {
        max_factors: 2,
        max_component: 150,
        ..Default::default()
    };
    for hyp in [Hypotheses::H11, Hypotheses::H12] {
        print!("{}", search(hyp, &opts)?.render());
    }
    Ok(())
}
