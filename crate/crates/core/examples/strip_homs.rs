//! Counting homomorphisms into products through the two projections.

use polycell::complex_products::complex_tensor_product;
use polycell::fixtures::{polygon, strip};
use polycell::homsearch::count_complex_homomorphisms;

fn main() -> polycell::Result<()> {
    let a = strip(2, false)?;
    let y = polygon(4)?;
    let z = strip(3, false)?;
    let p = complex_tensor_product(&y, &z);
    let direct = count_complex_homomorphisms(&a, &p.complex);
    let split = count_complex_homomorphisms(&a, &y) * count_complex_homomorphisms(&a, &z);
    println!("strip2 -> square x strip3: {direct} homomorphisms, {split} pairs of factor maps");
    Ok(())
}
