//! Exhaustive enumeration of homomorphisms. Faces are placed first, then
//! edges not on any face, then isolated vertices.

use crate::complex_products::{ComplexHom, FaceImage, HomOptions};
use crate::hom::GraphHom;
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::polycomplex::{Complex, FaceId};

const NONE: u32 = u32::MAX;

struct Search<'a> {
    x: &'a Complex,
    y: &'a Complex,
    opts: HomOptions,
    vmap: Vec<u32>,
    /// Image of dart side 0 of each source edge, as a dart index.
    emap: Vec<u32>,
    fmap: Vec<Option<FaceImage>>,
    trail: Vec<(bool, usize)>,
    face_order: Vec<FaceId>,
    edge_order: Vec<EdgeId>,
    free_vertices: Vec<VertexId>,
    target_darts_at: Vec<Vec<Dart>>,
}

impl<'a> Search<'a> {
    fn new(x: &'a Complex, y: &'a Complex, opts: HomOptions) -> Search<'a> {
        let g = x.skeleton();
        let face_order = face_order(x);
        let mut known = vec![false; g.vertex_count()];
        let mut on_face = vec![false; g.edge_count()];
        for f in x.faces() {
            for t in &f.boundary.steps {
                on_face[t.edge.index()] = true;
                known[t.tail(g).index()] = true;
            }
        }
        let mut rest: Vec<EdgeId> = g.edge_ids().filter(|e| !on_face[e.index()]).collect();
        let mut edge_order = Vec::new();
        while !rest.is_empty() {
            let pos = rest
                .iter()
                .position(|&e| g.ends(e).iter().any(|v| known[v.index()]))
                .unwrap_or(0);
            let e = rest.remove(pos);
            for v in g.ends(e) {
                known[v.index()] = true;
            }
            edge_order.push(e);
        }
        let free_vertices = g.vertices().filter(|v| !known[v.index()]).collect();
        let h = y.skeleton();
        Search {
            x,
            y,
            opts,
            vmap: vec![NONE; g.vertex_count()],
            emap: vec![NONE; g.edge_count()],
            fmap: vec![None; x.face_count()],
            trail: Vec::new(),
            face_order,
            edge_order,
            free_vertices,
            target_darts_at: h.vertices().map(|v| h.darts_at(v)).collect(),
        }
    }

    fn assign_vertex(&mut self, v: VertexId, w: VertexId) -> bool {
        let slot = &mut self.vmap[v.index()];
        if *slot == NONE {
            *slot = w.0;
            self.trail.push((true, v.index()));
            true
        } else {
            *slot == w.0
        }
    }

    fn assign_dart(&mut self, d: Dart, img: Dart) -> bool {
        let img0 = if d.side == 0 { img } else { img.mate() };
        let e = d.edge.index();
        if self.emap[e] != NONE {
            return self.emap[e] == img0.index() as u32;
        }
        self.emap[e] = img0.index() as u32;
        self.trail.push((false, e));
        let (g, h) = (self.x.skeleton(), self.y.skeleton());
        let ends = g.ends(d.edge);
        self.assign_vertex(ends[0], h.endpoint(img0)) && self.assign_vertex(ends[1], h.endpoint(img0.mate()))
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (vertex, i) = self.trail.pop().unwrap();
            if vertex {
                self.vmap[i] = NONE;
            } else {
                self.emap[i] = NONE;
            }
        }
    }

    fn current(&self) -> ComplexHom {
        ComplexHom {
            graph: GraphHom {
                vertex_map: self.vmap.iter().map(|&w| VertexId(w)).collect(),
                dart_map: self
                    .emap
                    .iter()
                    .flat_map(|&d| {
                        let d = Dart::from_index(d as usize);
                        [d, d.mate()]
                    })
                    .collect(),
            },
            face_map: self.fmap.iter().map(|f| f.unwrap()).collect(),
        }
    }

    fn faces(&mut self, k: usize, visit: &mut dyn FnMut(&ComplexHom) -> bool) -> bool {
        let Some(&f) = self.face_order.get(k) else {
            return self.edges(0, visit);
        };
        let (x, y) = (self.x, self.y);
        let steps = &x.face(f).boundary.steps;
        let n = steps.len();
        let reflections: &[bool] = if self.opts.allow_reflection { &[false, true] } else { &[false] };
        for g in y.face_ids() {
            let m = y.face_len(g);
            if n % m != 0 {
                continue;
            }
            for &reflect in reflections {
                for offset in 0..m as u32 {
                    let img = FaceImage { face: g, offset, reflect };
                    let mark = self.trail.len();
                    let ok = steps
                        .iter()
                        .enumerate()
                        .all(|(j, t)| self.assign_dart(t.tail_dart(), img.step(y, j).tail_dart()));
                    if ok {
                        self.fmap[f.index()] = Some(img);
                        let go_on = self.faces(k + 1, visit);
                        self.fmap[f.index()] = None;
                        if !go_on {
                            self.undo(mark);
                            return false;
                        }
                    }
                    self.undo(mark);
                }
            }
        }
        true
    }

    fn edges(&mut self, k: usize, visit: &mut dyn FnMut(&ComplexHom) -> bool) -> bool {
        let Some(&e) = self.edge_order.get(k) else {
            return self.vertices(0, visit);
        };
        let [a, b] = self.x.skeleton().ends(e);
        let (anchor, side) = if self.vmap[a.index()] != NONE {
            (Some(self.vmap[a.index()]), 0)
        } else if self.vmap[b.index()] != NONE {
            (Some(self.vmap[b.index()]), 1)
        } else {
            (None, 0)
        };
        let roots: Vec<u32> = match anchor {
            Some(w) => vec![w],
            None => (0..self.y.skeleton().vertex_count() as u32).collect(),
        };
        for w in roots {
            let mark = self.trail.len();
            let at = if side == 0 { a } else { b };
            if self.assign_vertex(at, VertexId(w)) {
                for i in 0..self.target_darts_at[w as usize].len() {
                    let d = self.target_darts_at[w as usize][i];
                    let inner = self.trail.len();
                    if self.assign_dart(Dart::new(e, side), d) && !self.edges(k + 1, visit) {
                        self.undo(mark);
                        return false;
                    }
                    self.undo(inner);
                }
            }
            self.undo(mark);
        }
        true
    }

    fn vertices(&mut self, k: usize, visit: &mut dyn FnMut(&ComplexHom) -> bool) -> bool {
        let Some(&v) = self.free_vertices.get(k) else {
            return visit(&self.current());
        };
        for w in 0..self.y.skeleton().vertex_count() as u32 {
            self.vmap[v.index()] = w;
            let go_on = self.vertices(k + 1, visit);
            self.vmap[v.index()] = NONE;
            if !go_on {
                return false;
            }
        }
        true
    }
}

/// Faces ordered so each one meets an earlier one when possible.
fn face_order(x: &Complex) -> Vec<FaceId> {
    let g = x.skeleton();
    let mut seen = vec![false; g.vertex_count()];
    let mut rest: Vec<FaceId> = x.face_ids().collect();
    let mut out = Vec::new();
    while !rest.is_empty() {
        let pos = rest
            .iter()
            .position(|&f| x.face(f).boundary.steps.iter().any(|t| seen[t.tail(g).index()]))
            .unwrap_or(0);
        let f = rest.remove(pos);
        for t in &x.face(f).boundary.steps {
            seen[t.tail(g).index()] = true;
        }
        out.push(f);
    }
    out
}

/// Calls `visit` on every complex homomorphism `x -> y` in search order
/// until it returns `false`.
pub fn for_each_complex_homomorphism(
    x: &Complex,
    y: &Complex,
    opts: HomOptions,
    mut visit: impl FnMut(&ComplexHom) -> bool,
) {
    let mut s = Search::new(x, y, opts);
    s.faces(0, &mut visit);
}

pub fn enumerate_complex_homomorphisms(x: &Complex, y: &Complex) -> Vec<ComplexHom> {
    enumerate_complex_homomorphisms_with(x, y, HomOptions::default())
}

pub fn enumerate_complex_homomorphisms_with(x: &Complex, y: &Complex, opts: HomOptions) -> Vec<ComplexHom> {
    let mut out = Vec::new();
    for_each_complex_homomorphism(x, y, opts, |h| {
        out.push(h.clone());
        true
    });
    out
}

pub fn count_complex_homomorphisms(x: &Complex, y: &Complex) -> u64 {
    let mut n = 0;
    for_each_complex_homomorphism(x, y, HomOptions::default(), |_| {
        n += 1;
        true
    });
    n
}

pub fn has_complex_homomorphism(x: &Complex, y: &Complex) -> bool {
    let mut found = false;
    for_each_complex_homomorphism(x, y, HomOptions::default(), |_| {
        found = true;
        false
    });
    found
}

pub fn enumerate_graph_homomorphisms(g: &MultiGraph, h: &MultiGraph) -> Vec<GraphHom> {
    let (x, y) = (Complex::from_graph(g.clone()), Complex::from_graph(h.clone()));
    let mut out = Vec::new();
    for_each_complex_homomorphism(&x, &y, HomOptions::default(), |m| {
        out.push(m.graph.clone());
        true
    });
    out
}

pub fn count_graph_homomorphisms(g: &MultiGraph, h: &MultiGraph) -> u64 {
    let (x, y) = (Complex::from_graph(g.clone()), Complex::from_graph(h.clone()));
    count_complex_homomorphisms(&x, &y)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_products::is_complex_homomorphism;
    use crate::hom::is_graph_homomorphism;
    use crate::walk::Traversal;

    fn complete(n: usize) -> MultiGraph {
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(format!("e{i}{j}"), vs[i], vs[j]);
            }
        }
        g
    }

    fn one_loop() -> MultiGraph {
        let mut g = MultiGraph::new();
        let v = g.add_vertex("v");
        g.add_edge("l", v, v);
        g
    }

    #[test]
    fn small_counts() {
        assert_eq!(count_graph_homomorphisms(&complete(2), &one_loop()), 2);
        let homs = enumerate_graph_homomorphisms(&complete(3), &complete(3));
        assert_eq!(homs.len(), 6);
        assert!(homs.iter().all(|h| is_graph_homomorphism(&complete(3), &complete(3), h)));
        let p = crate::graph_products::tensor_product(&complete(3), &complete(3));
        assert_eq!(count_graph_homomorphisms(&complete(3), &p.graph), 36);
        let mut isolated = MultiGraph::new();
        isolated.add_vertex("a");
        isolated.add_vertex("b");
        assert_eq!(count_graph_homomorphisms(&isolated, &complete(3)), 9);
    }

    #[test]
    fn hexagon_to_triangle_and_square() {
        let polygon = |n: usize| {
            let mut g = MultiGraph::new();
            let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
            let es: Vec<_> = (0..n).map(|i| g.add_edge(format!("e{i}"), vs[i], vs[(i + 1) % n])).collect();
            let mut x = Complex::from_graph(g);
            x.add_face("f", es.into_iter().map(Traversal::forward).collect()).unwrap();
            x
        };
        let (hex, tri, sq) = (polygon(6), polygon(3), polygon(4));
        let homs = enumerate_complex_homomorphisms(&hex, &tri);
        assert_eq!(homs.len(), 6);
        assert!(homs.iter().all(|h| is_complex_homomorphism(&hex, &tri, h)));
        assert_eq!(count_complex_homomorphisms(&hex, &sq), 0);
        assert_eq!(count_complex_homomorphisms(&hex, &hex), 12);
    }
}
