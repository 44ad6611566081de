//! Named graphs and complexes used by examples, tests and the verification suites.

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, MultiGraph, VertexId};
use crate::polycomplex::Complex;
use crate::walk::Traversal;

fn forward_all(es: &[EdgeId]) -> Vec<Traversal> {
    es.iter().map(|&e| Traversal::forward(e)).collect()
}

/// Cycle `v0 -> v1 -> ... -> v0` with edges `e_i = v_i v_{i+1}`. One vertex
/// gives a loop, two give a pair of parallel edges.
pub fn cycle(n: usize) -> Result<MultiGraph> {
    if n == 0 {
        return Err(Error::BadParameter("cycle length must be positive".into()));
    }
    let mut g = MultiGraph::new();
    let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for i in 0..n {
        g.add_edge(format!("e{i}"), vs[i], vs[(i + 1) % n]);
    }
    Ok(g)
}

pub fn path(edges: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    let vs: Vec<_> = (0..=edges).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for i in 0..edges {
        g.add_edge(format!("e{i}"), vs[i], vs[i + 1]);
    }
    g
}

pub fn complete(n: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
    for i in 0..n {
        for j in i + 1..n {
            g.add_edge(format!("e{i}_{j}"), vs[i], vs[j]);
        }
    }
    g
}

pub fn complete_bipartite(a: usize, b: usize) -> MultiGraph {
    let mut g = MultiGraph::new();
    let xs: Vec<_> = (0..a).map(|i| g.add_vertex(format!("a{i}"))).collect();
    let ys: Vec<_> = (0..b).map(|i| g.add_vertex(format!("b{i}"))).collect();
    for (i, &x) in xs.iter().enumerate() {
        for (j, &y) in ys.iter().enumerate() {
            g.add_edge(format!("e{i}_{j}"), x, y);
        }
    }
    g
}

/// One vertex carrying one loop.
pub fn loop_graph() -> MultiGraph {
    cycle(1).unwrap()
}

/// An `n`-gon on a cycle of length `n`.
pub fn polygon(n: usize) -> Result<Complex> {
    wrapped_polygon(n, n)
}

/// A `total`-gon attached along a cycle of length `core`, going round `total / core` times.
pub fn wrapped_polygon(total: usize, core: usize) -> Result<Complex> {
    if core == 0 || total == 0 || total % core != 0 {
        return Err(Error::BadParameter(format!("core {core} must divide total {total}")));
    }
    let g = cycle(core)?;
    let es: Vec<EdgeId> = g.edge_ids().collect();
    let mut x = Complex::from_graph(g);
    let steps = (0..total).map(|k| Traversal::forward(es[k % core])).collect();
    x.add_face("f", steps)?;
    Ok(x)
}

pub fn one_gon() -> Complex {
    polygon(1).unwrap()
}

/// Two 1-gons on two loops at one vertex.
pub fn two_one_gons() -> Complex {
    let mut g = MultiGraph::new();
    let v = g.add_vertex("v");
    let a = g.add_edge("a", v, v);
    let b = g.add_edge("b", v, v);
    let mut x = Complex::from_graph(g);
    x.add_face("fa", vec![Traversal::forward(a)]).unwrap();
    x.add_face("fb", vec![Traversal::forward(b)]).unwrap();
    x
}

/// A triangle attached along `e e e^-1` on a single loop.
pub fn dunce_hat() -> Complex {
    let mut g = MultiGraph::new();
    let v = g.add_vertex("v");
    let e = g.add_edge("e", v, v);
    let mut x = Complex::from_graph(g);
    x.add_face("f", vec![Traversal::forward(e), Traversal::forward(e), Traversal::backward(e)])
        .unwrap();
    x
}

/// A 2-gon wrapping one loop twice.
pub fn projective_plane() -> Complex {
    let mut g = MultiGraph::new();
    let v = g.add_vertex("v");
    let e = g.add_edge("e", v, v);
    let mut x = Complex::from_graph(g);
    x.add_face("f", vec![Traversal::forward(e); 2]).unwrap();
    x
}

/// A square attached along `a b a^-1 b^-1`.
pub fn torus() -> Complex {
    let mut g = MultiGraph::new();
    let v = g.add_vertex("v");
    let a = g.add_edge("a", v, v);
    let b = g.add_edge("b", v, v);
    let mut x = Complex::from_graph(g);
    x.add_face(
        "f",
        vec![
            Traversal::forward(a),
            Traversal::forward(b),
            Traversal::backward(a),
            Traversal::backward(b),
        ],
    )
    .unwrap();
    x
}

fn from_vertex_cycles(n: usize, faces: &[&[usize]]) -> Complex {
    let mut g = MultiGraph::new();
    let vs: Vec<VertexId> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
    let mut steps_of = Vec::new();
    let mut edges: Vec<(usize, usize, EdgeId)> = Vec::new();
    for cyc in faces {
        let mut steps = Vec::new();
        for k in 0..cyc.len() {
            let (a, b) = (cyc[k], cyc[(k + 1) % cyc.len()]);
            let found = edges.iter().find(|&&(x, y, _)| (x, y) == (a, b) || (x, y) == (b, a));
            let t = match found {
                Some(&(x, _, e)) if x == a => Traversal::forward(e),
                Some(&(_, _, e)) => Traversal::backward(e),
                None => {
                    let e = g.add_edge(format!("e{a}_{b}"), vs[a], vs[b]);
                    edges.push((a, b, e));
                    Traversal::forward(e)
                }
            };
            steps.push(t);
        }
        steps_of.push(steps);
    }
    let mut x = Complex::from_graph(g);
    for (i, steps) in steps_of.into_iter().enumerate() {
        x.add_face(format!("f{i}"), steps).unwrap();
    }
    x
}

/// Boundary of a tetrahedron: four triangles on `K4`.
pub fn tetrahedron() -> Complex {
    from_vertex_cycles(4, &[&[0, 1, 2], &[0, 3, 1], &[1, 3, 2], &[0, 2, 3]])
}

/// Boundary of a cube: six squares.
pub fn cube_surface() -> Complex {
    from_vertex_cycles(
        8,
        &[
            &[0, 1, 2, 3],
            &[4, 7, 6, 5],
            &[0, 4, 5, 1],
            &[1, 5, 6, 2],
            &[2, 6, 7, 3],
            &[3, 7, 4, 0],
        ],
    )
}

/// A closed ring of `squares` squares. Vertices `b_i`, `t_i`; square `i` has
/// corners `b_i, b_{i+1}, t_{i+1}, t_i`. A twist glues the last rung upside down.
pub fn strip(squares: usize, twisted: bool) -> Result<Complex> {
    if squares == 0 {
        return Err(Error::BadParameter("a strip needs at least one square".into()));
    }
    let k = squares;
    let mut g = MultiGraph::new();
    let b: Vec<_> = (0..k).map(|i| g.add_vertex(format!("b{i}"))).collect();
    let t: Vec<_> = (0..k).map(|i| g.add_vertex(format!("t{i}"))).collect();
    let rungs: Vec<_> = (0..k).map(|i| g.add_edge(format!("r{i}"), b[i], t[i])).collect();
    let mut bottom = Vec::new();
    let mut top = Vec::new();
    for i in 0..k {
        let j = (i + 1) % k;
        let (nb, nt) = if twisted && i == k - 1 { (t[j], b[j]) } else { (b[j], t[j]) };
        bottom.push(g.add_edge(format!("bb{i}"), b[i], nb));
        top.push(g.add_edge(format!("tt{i}"), t[i], nt));
    }
    let mut x = Complex::from_graph(g);
    for i in 0..k {
        let next = rungs[(i + 1) % k];
        let rung = if twisted && i == k - 1 {
            Traversal::backward(next)
        } else {
            Traversal::forward(next)
        };
        x.add_face(
            format!("s{i}"),
            vec![
                Traversal::forward(bottom[i]),
                rung,
                Traversal::backward(top[i]),
                Traversal::backward(rungs[i]),
            ],
        )?;
    }
    Ok(x)
}

/// A ring of `beads` polygons of length `len = 2n`, where position 0 of each
/// bead is glued to position `n` of the previous one.
pub fn necklace(beads: usize, len: usize) -> Result<Complex> {
    if beads < 2 || len < 2 || len % 2 == 1 {
        return Err(Error::BadParameter(format!(
            "necklace needs at least two beads of even length, got {beads} of length {len}"
        )));
    }
    let n = len / 2;
    let mut g = MultiGraph::new();
    let shared: Vec<_> = (0..beads).map(|k| g.add_vertex(format!("s{k}"))).collect();
    let mut x_faces = Vec::new();
    for k in 0..beads {
        let mut ring = Vec::with_capacity(len);
        for p in 0..len {
            let v = if p == 0 {
                shared[k]
            } else if p == n {
                shared[(k + 1) % beads]
            } else {
                g.add_vertex(format!("b{k}_{p}"))
            };
            ring.push(v);
        }
        let es: Vec<_> = (0..len)
            .map(|p| g.add_edge(format!("e{k}_{p}"), ring[p], ring[(p + 1) % len]))
            .collect();
        x_faces.push(es);
    }
    let mut x = Complex::from_graph(g);
    for (k, es) in x_faces.iter().enumerate() {
        x.add_face(format!("f{k}"), forward_all(es))?;
    }
    Ok(x)
}

/// The octagon whose corners 1, 3 and 5, 7 are identified in pairs.
pub fn doubled_octagon() -> Complex {
    let mut g = MultiGraph::new();
    let names = ["a0", "u", "a2", "a4", "v", "a6"];
    let vs: Vec<_> = names.iter().map(|n| g.add_vertex(*n)).collect();
    let ring = [vs[0], vs[1], vs[2], vs[1], vs[3], vs[4], vs[5], vs[4]];
    let es: Vec<_> = (0..8)
        .map(|p| g.add_edge(format!("e{p}"), ring[p], ring[(p + 1) % 8]))
        .collect();
    let mut x = Complex::from_graph(g);
    x.add_face("f", forward_all(&es)).unwrap();
    x
}

/// A row of `k` hexagons, consecutive ones sharing an edge.
pub fn hexagon_strip(k: usize) -> Result<Complex> {
    if k == 0 {
        return Err(Error::BadParameter("a strip needs at least one hexagon".into()));
    }
    // Hexagon i has top corners 2i, 2i+1, 2i+2 and bottom corners likewise.
    let top = |j: usize| j;
    let bottom = |j: usize| 2 * k + 1 + j;
    let faces: Vec<Vec<usize>> = (0..k)
        .map(|i| {
            vec![
                top(2 * i),
                top(2 * i + 1),
                top(2 * i + 2),
                bottom(2 * i + 2),
                bottom(2 * i + 1),
                bottom(2 * i),
            ]
        })
        .collect();
    let refs: Vec<&[usize]> = faces.iter().map(|f| f.as_slice()).collect();
    Ok(from_vertex_cycles(4 * k + 2, &refs))
}

/// A hexagon surrounded by six hexagons.
pub fn hexagon_flower() -> Complex {
    // Centre corners 0..6; petal i shares the centre edge (i, i+1) and its
    // outer corners are 6 + 3i, 7 + 3i, 8 + 3i, with 6 + 3i shared with petal i-1.
    let outer = |j: usize| 6 + j % 18;
    let mut faces: Vec<Vec<usize>> = vec![(0..6).collect()];
    for i in 0..6 {
        faces.push(vec![
            (i + 1) % 6,
            i,
            outer(3 * i),
            outer(3 * i + 1),
            outer(3 * i + 2),
            outer(3 * i + 3),
        ]);
    }
    let refs: Vec<&[usize]> = faces.iter().map(|f| f.as_slice()).collect();
    from_vertex_cycles(24, &refs)
}

/// Builds a named fixture, e.g. `polygon:5`, `strip:3:twisted`, `necklace:3:6`.
pub fn by_name(spec: &str) -> Result<Complex> {
    let parts: Vec<&str> = spec.split(':').collect();
    let num = |i: usize| -> Result<usize> {
        parts
            .get(i)
            .ok_or_else(|| Error::BadParameter(format!("{spec}: missing parameter")))?
            .parse()
            .map_err(|_| Error::BadParameter(format!("{spec}: parameter {i} is not a number")))
    };
    match parts[0] {
        "polygon" => polygon(num(1)?),
        "wrapped" => wrapped_polygon(num(1)?, num(2)?),
        "one_gon" => Ok(one_gon()),
        "two_one_gons" => Ok(two_one_gons()),
        "dunce_hat" => Ok(dunce_hat()),
        "projective_plane" => Ok(projective_plane()),
        "torus" => Ok(torus()),
        "tetrahedron" => Ok(tetrahedron()),
        "cube" => Ok(cube_surface()),
        "strip" => strip(num(1)?, parts.get(2) == Some(&"twisted")),
        "necklace" => necklace(num(1)?, num(2)?),
        "doubled_octagon" => Ok(doubled_octagon()),
        "hexagon_strip" => hexagon_strip(num(1)?),
        "flower" => Ok(hexagon_flower()),
        "cycle" => Ok(Complex::from_graph(cycle(num(1)?)?)),
        "complete" => Ok(Complex::from_graph(complete(num(1)?))),
        _ => Err(Error::BadParameter(format!("unknown fixture {spec}"))),
    }
}

/// Names accepted by `by_name`, with example parameters.
pub const FIXTURE_NAMES: &[&str] = &[
    "polygon:N",
    "wrapped:TOTAL:CORE",
    "one_gon",
    "two_one_gons",
    "dunce_hat",
    "projective_plane",
    "torus",
    "tetrahedron",
    "cube",
    "strip:K[:twisted]",
    "necklace:BEADS:LEN",
    "doubled_octagon",
    "hexagon_strip:K",
    "flower",
    "cycle:N",
    "complete:N",
];

#[cfg(test)]
mod tests {
    use super::*;
    use crate::walk::reduce_closed_walk;

    #[test]
    fn sizes() {
        let p = polygon(3).unwrap();
        assert_eq!((p.skeleton().vertex_count(), p.skeleton().edge_count(), p.face_count()), (3, 3, 1));
        let w = wrapped_polygon(15, 3).unwrap();
        assert_eq!(w.face_len(crate::FaceId(0)), 15);
        assert_eq!(reduce_closed_walk(&w.faces()[0].boundary).unwrap().1, 5);
        assert!(wrapped_polygon(15, 4).is_err());
        let t = tetrahedron();
        assert_eq!(t.euler_characteristic(), 2);
        assert!(t.is_polygonal());
        let c = cube_surface();
        assert_eq!(c.euler_characteristic(), 2);
        assert!(c.is_polygonal() && c.is_ordinary() && c.is_elementary());
        let n = necklace(3, 6).unwrap();
        assert_eq!(n.skeleton().vertex_count(), 15);
        assert!(!n.skeleton().is_bipartite());
        assert!(n.is_ordinary() && n.is_elementary());
        assert_eq!(torus().euler_characteristic(), 0);
        assert!(!doubled_octagon().is_elementary());
    }

    #[test]
    fn hexagon_patches() {
        for k in 1..4 {
            let s = hexagon_strip(k).unwrap();
            assert_eq!(s.skeleton().vertex_count(), 4 * k + 2);
            assert!(s.is_polygonal() && s.is_elementary() && s.is_ordinary());
            assert!(s.skeleton().is_bipartite());
        }
        let f = hexagon_flower();
        assert_eq!((f.skeleton().vertex_count(), f.skeleton().edge_count(), f.face_count()), (24, 30, 7));
        assert!(f.is_polygonal() && f.is_elementary() && f.is_ordinary());
        assert_eq!(f.euler_characteristic(), 1);
    }

    #[test]
    fn surfaces() {
        assert!(hexagon_flower().has_surface_structure());
        assert!(torus().has_surface_structure());
        assert!(strip(3, true).unwrap().has_surface_structure());
        assert!(!necklace(3, 6).unwrap().has_surface_structure());
        assert!(!dunce_hat().has_surface_structure());
    }

    #[test]
    fn strips_are_valid() {
        for k in 1..5 {
            for tw in [false, true] {
                let s = strip(k, tw).unwrap();
                assert_eq!(s.face_count(), k);
                s.validate().unwrap();
            }
        }
    }
}
