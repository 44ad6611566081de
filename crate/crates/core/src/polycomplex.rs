//! Polygonal cell complexes: a multigraph with discs glued along closed walks.

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::smith::invariant_factors;
use crate::walk::{cycle_key_of_steps, reduce_closed_walk, Traversal, Walk};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FaceId(pub u32);

impl FaceId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Face {
    pub name: String,
    pub boundary: Walk,
}

impl Face {
    pub fn len(&self) -> usize {
        self.boundary.len()
    }

    pub fn is_empty(&self) -> bool {
        self.boundary.is_empty()
    }
}

/// The corner of `face` sitting between boundary steps `position - 1` and `position`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Corner {
    pub face: FaceId,
    pub position: u32,
}

/// One of the two halves of a corner: side 0 borders the incoming step,
/// side 1 the outgoing step.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Flag {
    pub corner: Corner,
    pub side: u8,
}

/// Link of a vertex: one vertex per dart there, one edge per corner there.
#[derive(Clone, Debug)]
pub struct LinkGraph {
    pub graph: MultiGraph,
    /// Dart of the complex behind each link vertex.
    pub darts: Vec<Dart>,
    /// Corner behind each link edge. Side 0 of the link edge is the incoming dart.
    pub corners: Vec<Corner>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SimplyConnectedVerdict {
    FailsChi,
    FailsH1,
    Passes,
}

/// Old ids of the cells kept in a subcomplex, indexed by new id.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubcomplexMap {
    pub vertices: Vec<VertexId>,
    pub edges: Vec<EdgeId>,
    pub faces: Vec<FaceId>,
}

#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Complex {
    skeleton: MultiGraph,
    faces: Vec<Face>,
}

impl Complex {
    pub fn new(skeleton: MultiGraph, faces: Vec<Face>) -> Result<Complex> {
        let x = Complex { skeleton, faces };
        x.validate()?;
        Ok(x)
    }

    /// A complex with no faces.
    pub fn from_graph(skeleton: MultiGraph) -> Complex {
        Complex {
            skeleton,
            faces: Vec::new(),
        }
    }

    /// Appends a face whose boundary is given by its steps.
    pub fn add_face(&mut self, name: impl Into<String>, steps: Vec<Traversal>) -> Result<FaceId> {
        let name = name.into();
        if self.faces.iter().any(|f| f.name == name) {
            return Err(Error::DuplicateId(name));
        }
        let boundary = Walk::closed(&self.skeleton, steps)?;
        self.faces.push(Face { name, boundary });
        Ok(FaceId(self.faces.len() as u32 - 1))
    }

    pub fn validate(&self) -> Result<()> {
        self.skeleton.validate()?;
        let mut seen = HashSet::new();
        for f in &self.faces {
            if !seen.insert(f.name.as_str()) {
                return Err(Error::DuplicateId(f.name.clone()));
            }
            f.boundary.check_closed(&self.skeleton)?;
        }
        Ok(())
    }

    pub fn skeleton(&self) -> &MultiGraph {
        &self.skeleton
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: FaceId) -> &Face {
        &self.faces[f.index()]
    }

    pub fn face_count(&self) -> usize {
        self.faces.len()
    }

    pub fn face_ids(&self) -> impl Iterator<Item = FaceId> + '_ {
        (0..self.faces.len() as u32).map(FaceId)
    }

    pub fn face_len(&self, f: FaceId) -> usize {
        self.faces[f.index()].len()
    }

    pub fn find_face(&self, name: &str) -> Option<FaceId> {
        self.faces
            .iter()
            .position(|f| f.name == name)
            .map(|i| FaceId(i as u32))
    }

    pub fn corner_vertex(&self, c: Corner) -> VertexId {
        self.faces[c.face.index()].boundary.steps[c.position as usize].tail(&self.skeleton)
    }

    /// The incoming and outgoing darts of a corner.
    pub fn corner_darts(&self, c: Corner) -> (Dart, Dart) {
        let steps = &self.faces[c.face.index()].boundary.steps;
        let j = c.position as usize;
        let prev = steps[(j + steps.len() - 1) % steps.len()];
        (prev.head_dart(), steps[j].tail_dart())
    }

    pub fn corners(&self) -> Vec<Corner> {
        self.face_ids()
            .flat_map(|f| {
                (0..self.face_len(f) as u32).map(move |position| Corner { face: f, position })
            })
            .collect()
    }

    pub fn flags(&self) -> Vec<Flag> {
        self.corners()
            .into_iter()
            .flat_map(|corner| (0..2).map(move |side| Flag { corner, side }))
            .collect()
    }

    /// Offset of each face's first flag in the flag numbering.
    pub fn flag_offsets(&self) -> Vec<usize> {
        let mut acc = 0;
        self.faces
            .iter()
            .map(|f| {
                let o = acc;
                acc += 2 * f.len();
                o
            })
            .collect()
    }

    pub fn flag_count(&self) -> usize {
        self.faces.iter().map(|f| 2 * f.len()).sum()
    }

    pub fn link(&self, v: VertexId) -> Result<LinkGraph> {
        if !self.skeleton.contains_vertex(v) {
            return Err(Error::UnknownVertex(format!("#{}", v.0)));
        }
        let mut graph = MultiGraph::new();
        let darts = self.skeleton.darts_at(v);
        let mut at = HashMap::new();
        for &d in &darts {
            let sign = if d.side == 0 { '+' } else { '-' };
            at.insert(d, graph.add_vertex(format!("{}{}", self.skeleton.edge_name(d.edge), sign)));
        }
        let mut corners = Vec::new();
        for c in self.corners() {
            if self.corner_vertex(c) != v {
                continue;
            }
            let (a, b) = self.corner_darts(c);
            graph.add_edge(
                format!("{}@{}", self.faces[c.face.index()].name, c.position),
                at[&a],
                at[&b],
            );
            corners.push(c);
        }
        Ok(LinkGraph {
            graph,
            darts,
            corners,
        })
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.skeleton.vertex_count() as i64 - self.skeleton.edge_count() as i64 + self.faces.len() as i64
    }

    /// First Betti number and torsion coefficients of integral H1.
    pub fn homology_h1(&self) -> (usize, Vec<u64>) {
        let g = &self.skeleton;
        let (nv, ne, nf) = (g.vertex_count(), g.edge_count(), self.faces.len());
        let mut d1 = vec![0i64; nv * ne];
        for (i, e) in g.edges().iter().enumerate() {
            d1[e.ends[1].index() * ne + i] += 1;
            d1[e.ends[0].index() * ne + i] -= 1;
        }
        let mut d2 = vec![0i64; ne * nf];
        for (j, f) in self.faces.iter().enumerate() {
            for t in &f.boundary.steps {
                let sign = if t.tail_dart().side == 0 { 1 } else { -1 };
                d2[t.edge.index() * nf + j] += sign;
            }
        }
        let r1 = invariant_factors(nv, ne, &d1).len();
        let f2 = invariant_factors(ne, nf, &d2);
        let torsion = f2.iter().copied().filter(|&x| x > 1).collect();
        (ne - r1 - f2.len(), torsion)
    }

    pub fn simply_connected_necessary(&self) -> SimplyConnectedVerdict {
        if self.euler_characteristic() < 1 {
            return SimplyConnectedVerdict::FailsChi;
        }
        let (b1, torsion) = self.homology_h1();
        if b1 > 0 || !torsion.is_empty() {
            SimplyConnectedVerdict::FailsH1
        } else {
            SimplyConnectedVerdict::Passes
        }
    }

    fn face_vertex_set(&self, f: FaceId) -> HashSet<VertexId> {
        self.faces[f.index()].boundary.corner_vertices(&self.skeleton).into_iter().collect()
    }

    /// Injective attaching walks on a simple skeleton, with every pair of
    /// closed cells meeting in nothing or in a single closed cell.
    pub fn is_polygonal(&self) -> bool {
        if !self.skeleton.is_simple() {
            return false;
        }
        let mut vsets = Vec::new();
        let mut esets = Vec::new();
        for f in self.face_ids() {
            let vs = self.face_vertex_set(f);
            if vs.len() != self.face_len(f) {
                return false;
            }
            let es: HashSet<EdgeId> = self.faces[f.index()].boundary.steps.iter().map(|t| t.edge).collect();
            vsets.push(vs);
            esets.push(es);
        }
        for (i, e) in self.skeleton.edges().iter().enumerate() {
            for f in 0..self.faces.len() {
                if !esets[f].contains(&EdgeId(i as u32))
                    && vsets[f].contains(&e.ends[0])
                    && vsets[f].contains(&e.ends[1])
                {
                    return false;
                }
            }
        }
        for a in 0..self.faces.len() {
            for b in a + 1..self.faces.len() {
                let shared_v: Vec<_> = vsets[a].intersection(&vsets[b]).copied().collect();
                let shared_e: Vec<_> = esets[a].intersection(&esets[b]).copied().collect();
                let ok = match (shared_v.len(), shared_e.len()) {
                    (0, 0) | (1, 0) => true,
                    (2, 1) => {
                        let ends = self.skeleton.ends(shared_e[0]);
                        shared_v.contains(&ends[0]) && shared_v.contains(&ends[1])
                    }
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// At least one face, no wrapped faces, and no two faces on the same cycle.
    pub fn is_simple_complex(&self) -> bool {
        self.is_simple_complex_with(true)
    }

    /// As `is_simple_complex`; `reversal` selects whether mutually reversed
    /// boundaries count as the same cycle.
    pub fn is_simple_complex_with(&self, reversal: bool) -> bool {
        if self.faces.is_empty() {
            return false;
        }
        let mut keys = HashSet::new();
        self.faces.iter().all(|f| {
            reduce_closed_walk(&f.boundary).map(|(_, m)| m) == Ok(1)
                && keys.insert(cycle_key_of_steps(&f.boundary.steps, reversal))
        })
    }

    /// Common face length, if all faces share one.
    pub fn uniform_face_length(&self) -> Option<usize> {
        let n = self.faces.first()?.len();
        self.faces.iter().all(|f| f.len() == n).then_some(n)
    }

    pub fn is_elementary(&self) -> bool {
        if !self.skeleton.is_connected() {
            return false;
        }
        let Some(len) = self.uniform_face_length() else {
            return false;
        };
        if len < 2 || len % 2 == 1 {
            return false;
        }
        let n = len / 2;
        let mut pairs = HashSet::new();
        for f in &self.faces {
            let vs = f.boundary.corner_vertices(&self.skeleton);
            for j in 0..n {
                let (a, b) = (vs[j], vs[j + n]);
                if a == b || !pairs.insert((a.min(b), a.max(b))) {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_ordinary(&self) -> bool {
        if !self.skeleton.is_connected() {
            return false;
        }
        let Some(len) = self.uniform_face_length() else {
            return false;
        };
        if len < 4 || len % 2 == 1 {
            return false;
        }
        let corners: Vec<Vec<VertexId>> = self
            .faces
            .iter()
            .map(|f| f.boundary.corner_vertices(&self.skeleton))
            .collect();
        for vs in &corners {
            let mut parity: HashMap<VertexId, usize> = HashMap::new();
            for (j, &v) in vs.iter().enumerate() {
                if *parity.entry(v).or_insert(j % 2) != j % 2 {
                    return false;
                }
            }
        }
        let sets: Vec<HashSet<VertexId>> = corners.iter().map(|vs| vs.iter().copied().collect()).collect();
        for (a, vs) in corners.iter().enumerate() {
            for (b, other) in sets.iter().enumerate() {
                if a == b {
                    continue;
                }
                let meet: Vec<usize> = (0..len).filter(|&j| other.contains(&vs[j])).collect();
                let ok = match meet.len() {
                    0 | 1 => true,
                    2 => (meet[1] - meet[0] == 1) || (meet[0] == 0 && meet[1] == len - 1),
                    _ => false,
                };
                if !ok {
                    return false;
                }
            }
        }
        true
    }

    /// Every edge lies on at most two face sides and every vertex link is a
    /// single path or cycle, so the complex is a surface, possibly with boundary.
    pub fn has_surface_structure(&self) -> bool {
        let mut uses = vec![0usize; self.skeleton.edge_count()];
        for f in &self.faces {
            for t in &f.boundary.steps {
                uses[t.edge.index()] += 1;
            }
        }
        if uses.iter().any(|&u| u > 2) {
            return false;
        }
        self.skeleton.vertices().all(|v| match self.link(v) {
            Ok(l) => {
                let g = &l.graph;
                g.vertex_count() > 0 && g.is_connected() && g.degrees().iter().all(|&d| (1..=2).contains(&d))
            }
            Err(_) => false,
        })
    }

    /// Vertex sets of connected components of the skeleton.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        self.skeleton.components()
    }

    /// The subcomplex of cells lying over `keep`, which should be a union of components.
    pub fn subcomplex(&self, keep: &[VertexId]) -> (Complex, SubcomplexMap) {
        let (skeleton, vertices, edges) = self.skeleton.induced_subgraph(keep);
        let mut new_edge = vec![None; self.skeleton.edge_count()];
        for (i, e) in edges.iter().enumerate() {
            new_edge[e.index()] = Some(EdgeId(i as u32));
        }
        let mut faces = Vec::new();
        let mut face_ids = Vec::new();
        for (i, f) in self.faces.iter().enumerate() {
            let steps: Option<Vec<Traversal>> = f
                .boundary
                .steps
                .iter()
                .map(|t| {
                    new_edge[t.edge.index()].map(|edge| Traversal {
                        edge,
                        direction: t.direction,
                    })
                })
                .collect();
            if let Some(steps) = steps {
                let boundary = Walk::new(steps[0].tail(&skeleton), steps);
                faces.push(Face {
                    name: f.name.clone(),
                    boundary,
                });
                face_ids.push(FaceId(i as u32));
            }
        }
        (
            Complex { skeleton, faces },
            SubcomplexMap {
                vertices,
                edges,
                faces: face_ids,
            },
        )
    }

    /// Disjoint union, with ids of `other` prefixed to keep them unique.
    pub fn disjoint_union(&self, other: &Complex, prefix: &str) -> Complex {
        let mut skeleton = self.skeleton.clone();
        let shift_v = skeleton.vertex_count() as u32;
        let shift_e = skeleton.edge_count() as u32;
        for v in other.skeleton.vertices() {
            skeleton.add_vertex(format!("{prefix}{}", other.skeleton.vertex_name(v)));
        }
        for e in other.skeleton.edges() {
            skeleton.add_edge(
                format!("{prefix}{}", e.name),
                VertexId(e.ends[0].0 + shift_v),
                VertexId(e.ends[1].0 + shift_v),
            );
        }
        let mut faces = self.faces.clone();
        for f in &other.faces {
            faces.push(Face {
                name: format!("{prefix}{}", f.name),
                boundary: Walk::new(
                    VertexId(f.boundary.start.0 + shift_v),
                    f.boundary
                        .steps
                        .iter()
                        .map(|t| Traversal {
                            edge: EdgeId(t.edge.0 + shift_e),
                            direction: t.direction,
                        })
                        .collect(),
                ),
            });
        }
        Complex { skeleton, faces }
    }
}
