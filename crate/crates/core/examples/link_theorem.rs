//! The link of a product vertex is the product of the factor links.

use polycell::fixtures::{cube_surface, polygon, torus};
use polycell::symmetry::DEFAULT_BUDGET;
use polycell::verify::check_link_products;

fn main() -> polycell::Result<()> {
    let cases = [("cube", cube_surface(), "torus", torus()), ("pentagon", polygon(5)?, "cube", cube_surface())];
    for (a, x, b, y) in &cases {
        let (pairs, bad) = check_link_products(x, y, DEFAULT_BUDGET)?;
        match bad {
            None => println!("{a} x {b}: all {pairs} vertex links agree"),
            Some((u, v)) => println!("{a} x {b}: link at ({}, {}) differs", u.0, v.0),
        }
    }
    Ok(())
}
