//! Tensor, direct and Cartesian products of graphs, projections, the
//! universal map into a tensor product, and lifting of paths and cycles.

use crate::error::{Error, Result};
use crate::hom::GraphHom;
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::walk::{Traversal, Walk};

/// Names the product edge `e^delta_{alpha,beta}`, joining `(v0, w_delta)` and
/// `(v1, w_{1-delta})` where `alpha = v0v1` and `beta = w0w1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ProductEdgeLabel {
    pub alpha: EdgeId,
    pub beta: EdgeId,
    pub delta: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Factor {
    Left,
    Right,
}

/// A tensor product together with its factors. Vertex `(a, b)` has index
/// `a * |V(right)| + b`; edge `(alpha, beta, delta)` has index
/// `2 * (alpha * |E(right)| + beta) + delta`.
#[derive(Clone, Debug)]
pub struct GraphProduct {
    pub graph: MultiGraph,
    pub left: MultiGraph,
    pub right: MultiGraph,
}

impl GraphProduct {
    pub fn vertex(&self, a: VertexId, b: VertexId) -> VertexId {
        VertexId(a.0 * self.right.vertex_count() as u32 + b.0)
    }

    pub fn coords(&self, v: VertexId) -> (VertexId, VertexId) {
        let n = self.right.vertex_count() as u32;
        (VertexId(v.0 / n), VertexId(v.0 % n))
    }

    pub fn edge(&self, l: ProductEdgeLabel) -> EdgeId {
        EdgeId(2 * (l.alpha.0 * self.right.edge_count() as u32 + l.beta.0) + l.delta as u32)
    }

    pub fn label(&self, e: EdgeId) -> ProductEdgeLabel {
        let m = self.right.edge_count() as u32;
        let pair = e.0 / 2;
        ProductEdgeLabel {
            alpha: EdgeId(pair / m),
            beta: EdgeId(pair % m),
            delta: (e.0 % 2) as u8,
        }
    }

    /// The product dart projecting to `left` and `right`.
    pub fn dart(&self, left: Dart, right: Dart) -> Dart {
        let delta = left.side ^ right.side;
        Dart::new(
            self.edge(ProductEdgeLabel {
                alpha: left.edge,
                beta: right.edge,
                delta,
            }),
            left.side,
        )
    }

    pub fn project_dart(&self, d: Dart, which: Factor) -> Dart {
        let l = self.label(d.edge);
        match which {
            Factor::Left => Dart::new(l.alpha, d.side),
            Factor::Right => Dart::new(l.beta, d.side ^ l.delta),
        }
    }

    /// The product traversal over the given pair of factor traversals.
    pub fn traversal(&self, left: Traversal, right: Traversal) -> Traversal {
        Traversal::leaving(self.dart(left.tail_dart(), right.tail_dart()))
    }
}

pub fn tensor_product(g: &MultiGraph, h: &MultiGraph) -> GraphProduct {
    let mut out = MultiGraph::new();
    for a in g.vertices() {
        for b in h.vertices() {
            out.add_vertex(format!("({},{})", g.vertex_name(a), h.vertex_name(b)));
        }
    }
    let nh = h.vertex_count() as u32;
    let at = |a: VertexId, b: VertexId| VertexId(a.0 * nh + b.0);
    for e in g.edges() {
        for f in h.edges() {
            for delta in 0..2 {
                out.add_edge(
                    format!("({},{},{})", e.name, f.name, delta),
                    at(e.ends[0], f.ends[delta]),
                    at(e.ends[1], f.ends[1 - delta]),
                );
            }
        }
    }
    GraphProduct {
        graph: out,
        left: g.clone(),
        right: h.clone(),
    }
}

pub fn tensor_projection(p: &GraphProduct, which: Factor) -> GraphHom {
    GraphHom {
        vertex_map: p
            .graph
            .vertices()
            .map(|v| {
                let (a, b) = p.coords(v);
                if which == Factor::Left {
                    a
                } else {
                    b
                }
            })
            .collect(),
        dart_map: p.graph.darts().map(|d| p.project_dart(d, which)).collect(),
    }
}

/// The unique map into the product whose projections are `phi` and `psi`.
pub fn universal_factor_graph(p: &GraphProduct, phi: &GraphHom, psi: &GraphHom) -> GraphHom {
    GraphHom {
        vertex_map: phi
            .vertex_map
            .iter()
            .zip(&psi.vertex_map)
            .map(|(&a, &b)| p.vertex(a, b))
            .collect(),
        dart_map: phi
            .dart_map
            .iter()
            .zip(&psi.dart_map)
            .map(|(&a, &b)| p.dart(a, b))
            .collect(),
    }
}

/// The unique product walk projecting onto `left` and `right`.
pub fn lift_path(p: &GraphProduct, left: &Walk, right: &Walk) -> Result<Walk> {
    if left.len() != right.len() {
        return Err(Error::LengthMismatch(left.len(), right.len()));
    }
    Ok(Walk::new(
        p.vertex(left.start, right.start),
        left.steps
            .iter()
            .zip(&right.steps)
            .map(|(&a, &b)| p.traversal(a, b))
            .collect(),
    ))
}

/// Lifts `c1` repeated against `c2` started at its `i`-th vertex (and run
/// backwards when `delta = 1`), giving a closed walk of length `lcm(n, m)`.
pub fn lift_cycle(p: &GraphProduct, c1: &Walk, c2: &Walk, i: usize, delta: u8) -> Result<Walk> {
    let (n, m) = (c1.len(), c2.len());
    if n == 0 || m == 0 {
        return Err(Error::EmptyWalk);
    }
    if i >= m {
        return Err(Error::IndexOutOfRange { index: i, len: m });
    }
    let mut second = c2.rotated(&p.right, i);
    if delta == 1 {
        second = second.reversed(&p.right);
    }
    let l = lcm(n, m);
    lift_path(p, &c1.repeated(l / n), &second.repeated(l / m))
}

pub fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

pub fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn pair_vertices(g: &MultiGraph, h: &MultiGraph) -> MultiGraph {
    let mut out = MultiGraph::new();
    for a in g.vertices() {
        for b in h.vertices() {
            out.add_vertex(format!("({},{})", g.vertex_name(a), h.vertex_name(b)));
        }
    }
    out
}

/// Direct product of simple graphs with loops: adjacency is the conjunction
/// of the factor adjacencies. Vertex `(a, b)` has index `a * |V(h)| + b`.
pub fn direct_product_s0(g: &MultiGraph, h: &MultiGraph) -> Result<MultiGraph> {
    if g.has_parallel_edges() || h.has_parallel_edges() {
        return Err(Error::NotInS0);
    }
    let mut out = pair_vertices(g, h);
    let nh = h.vertex_count() as u32;
    let at = |a: VertexId, b: VertexId| VertexId(a.0 * nh + b.0);
    for e in g.edges() {
        for f in h.edges() {
            let name = format!("({},{})", e.name, f.name);
            let [e0, e1] = e.ends;
            let [f0, f1] = f.ends;
            match (e.is_loop(), f.is_loop()) {
                (false, false) => {
                    out.add_edge(format!("{name}0"), at(e0, f0), at(e1, f1));
                    out.add_edge(format!("{name}1"), at(e0, f1), at(e1, f0));
                }
                _ => {
                    out.add_edge(name, at(e0, f0), at(e1, f1));
                }
            }
        }
    }
    Ok(out)
}

/// Cartesian product of simple loop-free graphs.
pub fn cartesian_product(g: &MultiGraph, h: &MultiGraph) -> Result<MultiGraph> {
    for (x, name) in [(g, "left"), (h, "right")] {
        if !x.is_simple() {
            return Err(Error::NotSimple(format!("{name} factor has loops or parallel edges")));
        }
    }
    let mut out = pair_vertices(g, h);
    let nh = h.vertex_count() as u32;
    let at = |a: VertexId, b: VertexId| VertexId(a.0 * nh + b.0);
    for a in g.vertices() {
        for f in h.edges() {
            out.add_edge(
                format!("({},{})", g.vertex_name(a), f.name),
                at(a, f.ends[0]),
                at(a, f.ends[1]),
            );
        }
    }
    for e in g.edges() {
        for b in h.vertices() {
            out.add_edge(
                format!("({},{})", e.name, h.vertex_name(b)),
                at(e.ends[0], b),
                at(e.ends[1], b),
            );
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hom::is_graph_homomorphism;

    fn cycle(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for i in 0..n {
            g.add_edge(format!("e{i}"), vs[i], vs[(i + 1) % n]);
        }
        g
    }

    fn one_loop() -> MultiGraph {
        let mut g = MultiGraph::new();
        let v = g.add_vertex("v");
        g.add_edge("l", v, v);
        g
    }

    fn k2() -> MultiGraph {
        MultiGraph::from_records(&["a", "b"], &[("e", "a", "b")]).unwrap()
    }

    fn cycle_walk(g: &MultiGraph) -> Walk {
        Walk::closed(g, g.edge_ids().map(Traversal::forward).collect()).unwrap()
    }

    #[test]
    fn small_products() {
        let ll = tensor_product(&one_loop(), &one_loop());
        assert_eq!((ll.graph.vertex_count(), ll.graph.edge_count()), (1, 2));
        assert!(ll.graph.edges().iter().all(|e| e.is_loop()));

        let kk = tensor_product(&k2(), &k2());
        assert_eq!(kk.graph.components().len(), 2);
        assert_eq!(kk.graph.edge_count(), 2);

        let tt = tensor_product(&cycle(3), &cycle(3));
        assert_eq!(tt.graph.edge_count(), 18);
        assert!(tt.graph.degrees().iter().all(|&d| d == 4));
        assert!(tt.graph.is_connected());
        assert!(!tt.graph.has_parallel_edges());
    }

    #[test]
    fn projections_are_homomorphisms() {
        let p = tensor_product(&cycle(3), &one_loop());
        for which in [Factor::Left, Factor::Right] {
            let h = tensor_projection(&p, which);
            let target = if which == Factor::Left { &p.left } else { &p.right };
            assert!(is_graph_homomorphism(&p.graph, target, &h));
        }
        let e = p.edge(ProductEdgeLabel {
            alpha: EdgeId(1),
            beta: EdgeId(0),
            delta: 0,
        });
        let left = tensor_projection(&p, Factor::Left);
        assert_eq!(left.dart(Dart::new(e, 0)), Dart::new(EdgeId(1), 0));
        assert_eq!(left.vertex(p.vertex(VertexId(2), VertexId(0))), VertexId(2));
    }

    #[test]
    fn lifted_walks_project_back() {
        let (a, b) = (cycle(3), cycle(5));
        let p = tensor_product(&a, &b);
        let (ca, cb) = (cycle_walk(&a), cycle_walk(&b));
        let w = lift_cycle(&p, &ca, &cb, 0, 0).unwrap();
        assert_eq!(w.len(), 15);
        w.check_closed(&p.graph).unwrap();
        let mut seen = w.corner_vertices(&p.graph);
        seen.sort();
        seen.dedup();
        assert_eq!(seen.len(), 15);
        let left = tensor_projection(&p, Factor::Left);
        assert_eq!(left.walk(&w).steps, ca.repeated(5).steps);
        assert_eq!(
            lift_cycle(&p, &ca, &cb, 5, 0),
            Err(Error::IndexOutOfRange { index: 5, len: 5 })
        );
        assert_eq!(
            lift_path(&p, &ca, &cb),
            Err(Error::LengthMismatch(3, 5))
        );
    }

    #[test]
    fn odd_diagonals_meet_once() {
        let c = cycle(5);
        let p = tensor_product(&c, &c);
        let w = cycle_walk(&c);
        let d0 = lift_cycle(&p, &w, &w, 0, 0).unwrap().corner_vertices(&p.graph);
        let d1 = lift_cycle(&p, &w, &w, 0, 1).unwrap().corner_vertices(&p.graph);
        assert_eq!(d0.iter().filter(|v| d1.contains(v)).count(), 1);
        let diag: Vec<_> = (0..5).map(|i| p.vertex(VertexId(i), VertexId(i))).collect();
        assert_eq!(d0, diag);
    }

    #[test]
    fn loop_orientation_is_tracked() {
        let p = tensor_product(&one_loop(), &k2());
        let fwd = Walk::new(VertexId(0), vec![Traversal::forward(EdgeId(0))]);
        let bwd = Walk::new(VertexId(0), vec![Traversal::backward(EdgeId(0))]);
        let edge = Walk::new(VertexId(0), vec![Traversal::forward(EdgeId(0))]);
        let a = lift_path(&p, &fwd, &edge).unwrap();
        let b = lift_path(&p, &bwd, &edge).unwrap();
        assert_ne!(a.steps[0].edge, b.steps[0].edge);
        assert_eq!(a.end(&p.graph), b.end(&p.graph));
    }

    #[test]
    fn direct_and_cartesian() {
        let l = one_loop();
        let c = cycle(4);
        let lc = direct_product_s0(&l, &c).unwrap();
        assert_eq!(lc.multiplicities(), c.multiplicities());
        let kk = direct_product_s0(&k2(), &k2()).unwrap();
        assert_eq!(kk.components().len(), 2);
        let mut par = k2();
        par.add_edge("f", VertexId(0), VertexId(1));
        assert_eq!(direct_product_s0(&par, &c), Err(Error::NotInS0));

        let sq = cartesian_product(&k2(), &k2()).unwrap();
        assert_eq!(sq.edge_count(), 4);
        assert!(sq.degrees().iter().all(|&d| d == 2));
        assert!(sq.is_connected());
        assert!(matches!(cartesian_product(&l, &c), Err(Error::NotSimple(_))));
    }
}
