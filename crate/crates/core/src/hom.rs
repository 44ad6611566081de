//! Graph homomorphisms recorded on vertices and darts.

use crate::multigraph::{Dart, MultiGraph, VertexId};
use crate::walk::{Traversal, Walk};

/// A map of vertices and darts. The two darts of every source edge go to the
/// two darts of a single target edge, compatibly with endpoints.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct GraphHom {
    pub vertex_map: Vec<VertexId>,
    /// Indexed by `Dart::index`.
    pub dart_map: Vec<Dart>,
}

impl GraphHom {
    pub fn identity(g: &MultiGraph) -> GraphHom {
        GraphHom {
            vertex_map: g.vertices().collect(),
            dart_map: g.darts().collect(),
        }
    }

    pub fn vertex(&self, v: VertexId) -> VertexId {
        self.vertex_map[v.index()]
    }

    pub fn dart(&self, d: Dart) -> Dart {
        self.dart_map[d.index()]
    }

    pub fn traversal(&self, t: Traversal) -> Traversal {
        Traversal::leaving(self.dart(t.tail_dart()))
    }

    pub fn walk(&self, w: &Walk) -> Walk {
        Walk::new(
            self.vertex(w.start),
            w.steps.iter().map(|&t| self.traversal(t)).collect(),
        )
    }

    /// `next` after `self`.
    pub fn then(&self, next: &GraphHom) -> GraphHom {
        GraphHom {
            vertex_map: self.vertex_map.iter().map(|&v| next.vertex(v)).collect(),
            dart_map: self.dart_map.iter().map(|&d| next.dart(d)).collect(),
        }
    }

    pub fn is_bijective(&self, target: &MultiGraph) -> bool {
        fn perm<T: Copy>(xs: &[T], n: usize, idx: impl Fn(T) -> usize) -> bool {
            let mut seen = vec![false; n];
            xs.len() == n
                && xs.iter().all(|&x| {
                    let i = idx(x);
                    i < n && !std::mem::replace(&mut seen[i], true)
                })
        }
        perm(&self.vertex_map, target.vertex_count(), VertexId::index)
            && perm(&self.dart_map, target.dart_count(), Dart::index)
    }

    /// Inverse of a bijective map.
    pub fn inverse(&self) -> GraphHom {
        let mut vertex_map = vec![VertexId(0); self.vertex_map.len()];
        for (i, v) in self.vertex_map.iter().enumerate() {
            vertex_map[v.index()] = VertexId(i as u32);
        }
        let mut dart_map = vec![Dart::from_index(0); self.dart_map.len()];
        for (i, d) in self.dart_map.iter().enumerate() {
            dart_map[d.index()] = Dart::from_index(i);
        }
        GraphHom {
            vertex_map,
            dart_map,
        }
    }

    /// Extends a vertex map to darts by sending each edge to the first target
    /// edge joining the images. Unambiguous when the target is simple.
    pub fn from_vertex_map(
        source: &MultiGraph,
        target: &MultiGraph,
        vertex_map: Vec<VertexId>,
    ) -> Option<GraphHom> {
        let mut dart_map = Vec::with_capacity(source.dart_count());
        for e in source.edges() {
            let (a, b) = (vertex_map[e.ends[0].index()], vertex_map[e.ends[1].index()]);
            let d = target.darts().find(|&d| target.endpoint(d) == a && target.endpoint(d.mate()) == b)?;
            dart_map.push(d);
            dart_map.push(d.mate());
        }
        Some(GraphHom {
            vertex_map,
            dart_map,
        })
    }
}

/// Checks totality, edge pairing and endpoint compatibility.
pub fn is_graph_homomorphism(source: &MultiGraph, target: &MultiGraph, h: &GraphHom) -> bool {
    if h.vertex_map.len() != source.vertex_count() || h.dart_map.len() != source.dart_count() {
        return false;
    }
    if h.vertex_map.iter().any(|&v| !target.contains_vertex(v))
        || h.dart_map.iter().any(|d| d.edge.index() >= target.edge_count() || d.side > 1)
    {
        return false;
    }
    source.darts().all(|d| {
        let img = h.dart(d);
        h.dart(d.mate()) == img.mate() && target.endpoint(img) == h.vertex(source.endpoint(d))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::multigraph::EdgeId;

    #[test]
    fn identity_and_broken_pairing() {
        let mut g = MultiGraph::new();
        let v: Vec<_> = (0..3).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for i in 0..3 {
            g.add_edge(format!("e{i}"), v[i], v[(i + 1) % 3]);
        }
        let id = GraphHom::identity(&g);
        assert!(is_graph_homomorphism(&g, &g, &id));
        let mut bad = id.clone();
        bad.dart_map[1] = Dart::new(EdgeId(1), 1);
        assert!(!is_graph_homomorphism(&g, &g, &bad));
    }

    #[test]
    fn edge_onto_loop_both_ways() {
        let mut k2 = MultiGraph::new();
        let (a, b) = (k2.add_vertex("a"), k2.add_vertex("b"));
        k2.add_edge("e", a, b);
        let mut l = MultiGraph::new();
        let v = l.add_vertex("v");
        l.add_edge("l", v, v);
        for side in 0..2 {
            let h = GraphHom {
                vertex_map: vec![v, v],
                dart_map: vec![Dart::new(EdgeId(0), side), Dart::new(EdgeId(0), 1 - side)],
            };
            assert!(is_graph_homomorphism(&k2, &l, &h));
        }
    }
}
