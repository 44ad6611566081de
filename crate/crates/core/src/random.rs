//! Seeded random graphs and complexes. Loops and parallel edges are allowed.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::polycomplex::Complex;
use crate::walk::Traversal;

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Clone, Copy, Debug)]
pub struct RandomShape {
    pub max_vertices: usize,
    pub max_edges: usize,
    pub max_faces: usize,
    pub max_face_len: usize,
    pub loops: bool,
}

impl Default for RandomShape {
    fn default() -> Self {
        RandomShape {
            max_vertices: 6,
            max_edges: 8,
            max_faces: 3,
            max_face_len: 6,
            loops: true,
        }
    }
}

pub fn random_graph(rng: &mut SeededRng, shape: &RandomShape) -> MultiGraph {
    let n = rng.gen_range(1..=shape.max_vertices.max(1));
    let mut g = MultiGraph::new();
    let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
    let m = rng.gen_range(0..=shape.max_edges);
    for i in 0..m {
        let a = *vs.choose(rng).unwrap();
        let mut b = *vs.choose(rng).unwrap();
        if a == b && !shape.loops {
            if n == 1 {
                continue;
            }
            b = vs[(a.index() + 1) % n];
        }
        g.add_edge(format!("e{i}"), a, b);
    }
    g
}

/// Shortest dart path from `from` to `to`, as traversals.
fn path_back(g: &MultiGraph, from: VertexId, to: VertexId) -> Option<Vec<Traversal>> {
    let mut prev: Vec<Option<Dart>> = vec![None; g.vertex_count()];
    let mut seen = vec![false; g.vertex_count()];
    seen[from.index()] = true;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            break;
        }
        for d in g.darts_at(v) {
            let w = g.endpoint(d.mate());
            if !seen[w.index()] {
                seen[w.index()] = true;
                prev[w.index()] = Some(d);
                queue.push_back(w);
            }
        }
    }
    if !seen[to.index()] {
        return None;
    }
    let mut steps = Vec::new();
    let mut at = to;
    while at != from {
        let d = prev[at.index()].unwrap();
        steps.push(Traversal::leaving(d));
        at = g.endpoint(d);
    }
    steps.reverse();
    Some(steps)
}

/// A random graph with up to `max_faces` faces, each a random walk closed
/// up by a shortest path back to its start.
pub fn random_complex(rng: &mut SeededRng, shape: &RandomShape) -> Complex {
    let g = random_graph(rng, shape);
    let mut x = Complex::from_graph(g.clone());
    let faces = rng.gen_range(0..=shape.max_faces);
    for k in 0..faces {
        let start = VertexId(rng.gen_range(0..g.vertex_count()) as u32);
        if g.darts_at(start).is_empty() {
            continue;
        }
        let len = rng.gen_range(1..=shape.max_face_len.max(1));
        let mut steps = Vec::new();
        let mut at = start;
        for _ in 0..len {
            let ds = g.darts_at(at);
            let d = *ds.choose(rng).unwrap();
            steps.push(Traversal::leaving(d));
            at = g.endpoint(d.mate());
        }
        steps.extend(path_back(&g, at, start).unwrap());
        x.add_face(format!("f{k}"), steps).unwrap();
    }
    x
}

/// An isomorphic copy of `x` with vertices, edges and faces reordered, edge
/// ends swapped and face boundaries rotated or reversed at random.
pub fn relabel_complex(x: &Complex, rng: &mut SeededRng) -> Complex {
    let g = x.skeleton();
    let mut vorder: Vec<usize> = (0..g.vertex_count()).collect();
    vorder.shuffle(rng);
    let mut vnew = vec![VertexId(0); g.vertex_count()];
    let mut h = MultiGraph::new();
    for (k, &v) in vorder.iter().enumerate() {
        h.add_vertex(format!("u{k}"));
        vnew[v] = VertexId(k as u32);
    }
    let mut eorder: Vec<usize> = (0..g.edge_count()).collect();
    eorder.shuffle(rng);
    let mut enew = vec![(EdgeId(0), false); g.edge_count()];
    for (k, &e) in eorder.iter().enumerate() {
        let [a, b] = g.edges()[e].ends;
        let flip = rng.gen_bool(0.5);
        let (a, b) = if flip { (b, a) } else { (a, b) };
        enew[e] = (h.add_edge(format!("d{k}"), vnew[a.index()], vnew[b.index()]), flip);
    }
    let mut y = Complex::from_graph(h);
    let mut forder: Vec<usize> = (0..x.face_count()).collect();
    forder.shuffle(rng);
    for (k, &f) in forder.iter().enumerate() {
        let mut steps: Vec<Traversal> = x.faces()[f]
            .boundary
            .steps
            .iter()
            .map(|t| {
                let (edge, flip) = enew[t.edge.index()];
                let direction = if flip { t.direction.flip() } else { t.direction };
                Traversal { edge, direction }
            })
            .collect();
        let r = rng.gen_range(0..steps.len());
        steps.rotate_left(r);
        if rng.gen_bool(0.5) {
            steps = steps.into_iter().rev().map(|t| t.reversed()).collect();
        }
        y.add_face(format!("g{k}"), steps).unwrap();
    }
    y
}

/// Relabels a graph the same way, without faces.
pub fn relabel_graph(g: &MultiGraph, rng: &mut SeededRng) -> MultiGraph {
    relabel_complex(&Complex::from_graph(g.clone()), rng).skeleton().clone()
}
