//! Counting lattice walks that end at the origin from either side.

use polycell::blocks::count_walk_arrivals;

fn main() -> polycell::Result<()> {
    for d in 1..=8u64 {
        let row: Vec<String> = (0..=d / 2)
            .map(|k| {
                let a = count_walk_arrivals(d, k, 1).unwrap();
                let b = count_walk_arrivals(d, k, -1).unwrap();
                format!("{a}/{b}")
            })
            .collect();
        println!("d={d}: {}", row.join(" "));
    }
    Ok(())
}
