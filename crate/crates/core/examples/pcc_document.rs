//! Reading and writing `.pcc` documents.

use polycell::document::{emit, graph_dot, parse};
use polycell::fixtures::polygon;

const SQUARE_PAIR: &str = "\
pcc 1
# two squares glued along their boundary
vertex a
vertex b
vertex c
vertex d
edge ab a b
edge bc b c
edge cd c d
edge da d a
face top ab+ bc+ cd+ da+
face bottom ab+ bc+ cd+ da+
";

fn main() -> polycell::Result<()> {
    let x = parse(SQUARE_PAIR)?;
    println!("parsed {} faces, chi = {}", x.face_count(), x.euler_characteristic());
    let text = emit(&polygon(3)?);
    print!("{text}");
    let back = parse(&text)?;
    assert_eq!(emit(&back), text);
    print!("{}", graph_dot(back.skeleton(), "triangle"));
    Ok(())
}
