//! Finite multigraphs with loops, parallel edges and distinguished edge ends.

use std::collections::{HashMap, HashSet, VecDeque};
use std::fmt;

use crate::error::{Error, Result};

/// Index of a vertex inside its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VertexId(pub u32);

/// Index of an edge inside its graph.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct EdgeId(pub u32);

impl VertexId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl EdgeId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

/// One end of an edge. Side 0 is the `+` end, side 1 the `-` end.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Dart {
    pub edge: EdgeId,
    pub side: u8,
}

impl Dart {
    pub fn new(edge: EdgeId, side: u8) -> Dart {
        debug_assert!(side < 2);
        Dart { edge, side }
    }

    /// Position in the dense dart numbering `2 * edge + side`.
    pub fn index(self) -> usize {
        2 * self.edge.index() + self.side as usize
    }

    pub fn from_index(i: usize) -> Dart {
        Dart::new(EdgeId((i / 2) as u32), (i % 2) as u8)
    }

    /// The other end of the same edge.
    pub fn mate(self) -> Dart {
        Dart::new(self.edge, 1 - self.side)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub name: String,
    /// `ends[s]` is the vertex carrying the dart of side `s`.
    pub ends: [VertexId; 2],
}

impl Edge {
    pub fn is_loop(&self) -> bool {
        self.ends[0] == self.ends[1]
    }
}

/// A finite graph whose edges may be loops or parallel. Vertices and edges
/// carry unique string ids; their canonical order is insertion order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct MultiGraph {
    vertices: Vec<String>,
    edges: Vec<Edge>,
}

impl MultiGraph {
    pub fn new() -> MultiGraph {
        MultiGraph::default()
    }

    /// Builds a graph from id-based records, reporting the first violation.
    pub fn from_records<V, E>(vertices: &[V], edges: &[(E, V, V)]) -> Result<MultiGraph>
    where
        V: AsRef<str>,
        E: AsRef<str>,
    {
        let mut g = MultiGraph::new();
        let mut index = HashMap::new();
        for v in vertices {
            let v = v.as_ref();
            if index.insert(v.to_string(), g.add_vertex(v)).is_some() {
                return Err(Error::DuplicateId(v.to_string()));
            }
        }
        let mut seen = HashSet::new();
        for (e, a, b) in edges {
            let e = e.as_ref();
            if !seen.insert(e.to_string()) {
                return Err(Error::DuplicateId(e.to_string()));
            }
            let lookup = |v: &V| {
                index.get(v.as_ref()).copied().ok_or_else(|| Error::DanglingEdge {
                    edge: e.to_string(),
                    vertex: v.as_ref().to_string(),
                })
            };
            let (a, b) = (lookup(a)?, lookup(b)?);
            g.add_edge(e, a, b);
        }
        Ok(g)
    }

    pub fn add_vertex(&mut self, name: impl Into<String>) -> VertexId {
        self.vertices.push(name.into());
        VertexId(self.vertices.len() as u32 - 1)
    }

    pub fn add_edge(&mut self, name: impl Into<String>, end0: VertexId, end1: VertexId) -> EdgeId {
        debug_assert!(end0.index() < self.vertices.len() && end1.index() < self.vertices.len());
        self.edges.push(Edge {
            name: name.into(),
            ends: [end0, end1],
        });
        EdgeId(self.edges.len() as u32 - 1)
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn dart_count(&self) -> usize {
        2 * self.edges.len()
    }

    pub fn vertices(&self) -> impl Iterator<Item = VertexId> + '_ {
        (0..self.vertices.len() as u32).map(VertexId)
    }

    pub fn edge_ids(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.edges.len() as u32).map(EdgeId)
    }

    pub fn darts(&self) -> impl Iterator<Item = Dart> + '_ {
        (0..self.dart_count()).map(Dart::from_index)
    }

    pub fn edge(&self, e: EdgeId) -> &Edge {
        &self.edges[e.index()]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_name(&self, v: VertexId) -> &str {
        &self.vertices[v.index()]
    }

    pub fn vertex_names(&self) -> &[String] {
        &self.vertices
    }

    pub fn edge_name(&self, e: EdgeId) -> &str {
        &self.edges[e.index()].name
    }

    pub fn find_vertex(&self, name: &str) -> Option<VertexId> {
        self.vertices
            .iter()
            .position(|v| v == name)
            .map(|i| VertexId(i as u32))
    }

    pub fn find_edge(&self, name: &str) -> Option<EdgeId> {
        self.edges
            .iter()
            .position(|e| e.name == name)
            .map(|i| EdgeId(i as u32))
    }

    pub fn ends(&self, e: EdgeId) -> [VertexId; 2] {
        self.edges[e.index()].ends
    }

    /// Vertex the dart is attached to.
    pub fn endpoint(&self, d: Dart) -> VertexId {
        self.edges[d.edge.index()].ends[d.side as usize]
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        v.index() < self.vertices.len()
    }

    fn check_vertex(&self, v: VertexId) -> Result<()> {
        if self.contains_vertex(v) {
            Ok(())
        } else {
            Err(Error::UnknownVertex(format!("#{}", v.0)))
        }
    }

    /// Re-checks referential integrity and id uniqueness.
    pub fn validate(&self) -> Result<()> {
        let mut seen = HashSet::new();
        for v in &self.vertices {
            if v.is_empty() || !seen.insert(v.as_str()) {
                return Err(Error::DuplicateId(v.clone()));
            }
        }
        let mut seen = HashSet::new();
        for e in &self.edges {
            if !seen.insert(e.name.as_str()) {
                return Err(Error::DuplicateId(e.name.clone()));
            }
            for v in e.ends {
                if !self.contains_vertex(v) {
                    return Err(Error::DanglingEdge {
                        edge: e.name.clone(),
                        vertex: format!("#{}", v.0),
                    });
                }
            }
        }
        Ok(())
    }

    /// Darts attached at `v`, in dart order.
    pub fn darts_at(&self, v: VertexId) -> Vec<Dart> {
        self.darts().filter(|&d| self.endpoint(d) == v).collect()
    }

    /// Number of darts at `v`; a loop counts twice.
    pub fn degree(&self, v: VertexId) -> Result<usize> {
        self.check_vertex(v)?;
        Ok(self
            .edges
            .iter()
            .map(|e| e.ends.iter().filter(|&&w| w == v).count())
            .sum())
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.vertex_count()];
        for e in &self.edges {
            deg[e.ends[0].index()] += 1;
            deg[e.ends[1].index()] += 1;
        }
        deg
    }

    /// Dense `n x n` table of edge multiplicities. The diagonal counts loops.
    pub fn multiplicities(&self) -> Vec<u32> {
        let n = self.vertex_count();
        let mut m = vec![0; n * n];
        for e in &self.edges {
            let (a, b) = (e.ends[0].index(), e.ends[1].index());
            m[a * n + b] += 1;
            if a != b {
                m[b * n + a] += 1;
            }
        }
        m
    }

    /// Distinct neighbours per vertex, sorted. A loop makes a vertex its own neighbour.
    pub fn neighbor_sets(&self) -> Vec<Vec<VertexId>> {
        let mut sets = vec![Vec::new(); self.vertex_count()];
        for e in &self.edges {
            sets[e.ends[0].index()].push(e.ends[1]);
            sets[e.ends[1].index()].push(e.ends[0]);
        }
        for s in &mut sets {
            s.sort();
            s.dedup();
        }
        sets
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(Edge::is_loop)
    }

    pub fn has_parallel_edges(&self) -> bool {
        let mut seen = HashSet::new();
        self.edges.iter().any(|e| {
            let (a, b) = (e.ends[0].min(e.ends[1]), e.ends[0].max(e.ends[1]));
            !seen.insert((a, b))
        })
    }

    /// No loops and no parallel edges.
    pub fn is_simple(&self) -> bool {
        !self.has_loops() && !self.has_parallel_edges()
    }

    /// Connected components, each sorted, listed by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let nbrs = self.neighbor_sets();
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for s in 0..self.vertex_count() {
            if seen[s] {
                continue;
            }
            seen[s] = true;
            let mut comp = vec![VertexId(s as u32)];
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &nbrs[v] {
                    if !seen[w.index()] {
                        seen[w.index()] = true;
                        comp.push(w);
                        queue.push_back(w.index());
                    }
                }
            }
            comp.sort();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    /// Subgraph induced on `keep`, with the old ids of its vertices and edges.
    pub fn induced_subgraph(&self, keep: &[VertexId]) -> (MultiGraph, Vec<VertexId>, Vec<EdgeId>) {
        let mut new_id = vec![None; self.vertex_count()];
        let mut g = MultiGraph::new();
        for &v in keep {
            new_id[v.index()] = Some(g.add_vertex(self.vertex_name(v)));
        }
        let mut old_edges = Vec::new();
        for (i, e) in self.edges.iter().enumerate() {
            if let (Some(a), Some(b)) = (new_id[e.ends[0].index()], new_id[e.ends[1].index()]) {
                g.add_edge(e.name.clone(), a, b);
                old_edges.push(EdgeId(i as u32));
            }
        }
        (g, keep.to_vec(), old_edges)
    }

    /// Proper 2-colouring if one exists.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let nbrs = self.neighbor_sets();
        let mut color = vec![u8::MAX; self.vertex_count()];
        for s in 0..self.vertex_count() {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(v) = queue.pop_front() {
                for &w in &nbrs[v] {
                    let w = w.index();
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[v];
                        queue.push_back(w);
                    } else if color[w] == color[v] {
                        return None;
                    }
                }
            }
        }
        Some(color)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// No two vertices share a neighbour set.
    pub fn is_r_thin(&self) -> bool {
        let sets = self.neighbor_sets();
        let mut seen = HashSet::new();
        sets.iter().all(|s| seen.insert(s.clone()))
    }

    /// Number of edges on a shortest path, or `None` across components.
    pub fn shortest_path_distance(&self, u: VertexId, v: VertexId) -> Result<Option<usize>> {
        self.check_vertex(u)?;
        self.check_vertex(v)?;
        Ok(self.distances_from(u)[v.index()])
    }

    pub fn distances_from(&self, u: VertexId) -> Vec<Option<usize>> {
        let nbrs = self.neighbor_sets();
        let mut dist = vec![None; self.vertex_count()];
        dist[u.index()] = Some(0);
        let mut queue = VecDeque::from([u.index()]);
        while let Some(x) = queue.pop_front() {
            let d = dist[x].unwrap();
            for &w in &nbrs[x] {
                if dist[w.index()].is_none() {
                    dist[w.index()] = Some(d + 1);
                    queue.push_back(w.index());
                }
            }
        }
        dist
    }

    /// Copy with new names, keeping the structure.
    pub fn renamed(&self, vertex: impl Fn(usize) -> String, edge: impl Fn(usize) -> String) -> MultiGraph {
        MultiGraph {
            vertices: (0..self.vertex_count()).map(vertex).collect(),
            edges: self
                .edges
                .iter()
                .enumerate()
                .map(|(i, e)| Edge {
                    name: edge(i),
                    ends: e.ends,
                })
                .collect(),
        }
    }
}

impl fmt::Display for Dart {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}{}", self.edge.0, if self.side == 0 { '+' } else { '-' })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

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
        g.add_edge("e", v, v);
        g
    }

    #[test]
    fn validation() {
        assert_eq!(one_loop().validate(), Ok(()));
        let dangling = MultiGraph::from_records(&["a"], &[("e", "a", "b")]);
        assert!(matches!(dangling, Err(Error::DanglingEdge { .. })));
        let dup = MultiGraph::from_records(&["a", "b"], &[("e", "a", "b"), ("e", "b", "a")]);
        assert_eq!(dup, Err(Error::DuplicateId("e".into())));
    }

    #[test]
    fn degrees() {
        let g = one_loop();
        assert_eq!(g.degree(VertexId(0)), Ok(2));
        let mut h = MultiGraph::new();
        h.add_vertex("x");
        assert_eq!(h.degree(VertexId(0)), Ok(0));
        assert_eq!(cycle(3).degree(VertexId(1)), Ok(2));
        assert!(matches!(h.degree(VertexId(4)), Err(Error::UnknownVertex(_))));
    }

    #[test]
    fn bipartite_and_thin() {
        assert!(cycle(4).is_bipartite());
        assert!(!cycle(3).is_bipartite());
        assert!(!one_loop().is_bipartite());
        assert!(!cycle(4).is_r_thin());
        let mut two = MultiGraph::new();
        two.add_vertex("a");
        two.add_vertex("b");
        assert!(!two.is_r_thin());
        assert_eq!(two.components().len(), 2);
    }

    #[test]
    fn distances() {
        let g = cycle(6);
        assert_eq!(g.shortest_path_distance(VertexId(2), VertexId(2)), Ok(Some(0)));
        assert_eq!(g.shortest_path_distance(VertexId(0), VertexId(3)), Ok(Some(3)));
        let mut h = cycle(3);
        h.add_vertex("lonely");
        assert_eq!(h.shortest_path_distance(VertexId(0), VertexId(3)), Ok(None));
    }

    #[test]
    fn multiplicities_count_loops_once() {
        let mut g = one_loop();
        let v = VertexId(0);
        let w = g.add_vertex("w");
        g.add_edge("f", v, w);
        g.add_edge("g", w, v);
        assert_eq!(g.multiplicities(), vec![1, 2, 2, 0]);
        assert!(g.has_parallel_edges());
        assert!(!g.is_simple());
    }
}
