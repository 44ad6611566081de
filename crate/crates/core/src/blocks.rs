//! Face blocks of products of even-gon complexes, the block graph, and the
//! lattice walk count used for cycle products.

use std::collections::{BTreeMap, HashMap, HashSet};

use crate::complex_products::TensorProduct;
use crate::error::{Error, Result};
use crate::multigraph::{MultiGraph, VertexId};
use crate::polycomplex::{Complex, FaceId};

/// Faces of a product generated by the same factor faces whose corner
/// labels agree in parity, up to flipping every coordinate.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FaceBlock {
    pub faces: Vec<FaceId>,
    pub generators: Vec<FaceId>,
    /// `(a_i - a_1) mod 2` for `i >= 2`, at any corner.
    pub class: Vec<u8>,
}

/// A class of faces under the antipodal-sharing relation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntrinsicBlock {
    pub faces: Vec<FaceId>,
    /// Longest shortest chain between two members, in sharing steps.
    pub diameter: usize,
}

fn common_even_length(factors: &[Complex]) -> Result<usize> {
    let mut len = None;
    for (i, x) in factors.iter().enumerate() {
        let n = x
            .uniform_face_length()
            .ok_or_else(|| Error::OddFaces(format!("factor {i} has faces of several lengths or none")))?;
        if n % 2 == 1 || len.is_some_and(|l| l != n) {
            return Err(Error::OddFaces(format!("factor {i} has faces of length {n}")));
        }
        len = Some(n);
    }
    len.ok_or_else(|| Error::OddFaces("no factors".into()))
}

/// Face blocks read off the product labels, sorted by generators then class.
pub fn face_blocks_by_label(p: &TensorProduct) -> Result<Vec<FaceBlock>> {
    common_even_length(&p.factors)?;
    let mut blocks: BTreeMap<(Vec<FaceId>, Vec<u8>), Vec<FaceId>> = BTreeMap::new();
    for f in p.complex().face_ids() {
        let images = p.face_generators(f);
        let generators = images.iter().map(|i| i.face).collect();
        let class = images[1..]
            .iter()
            .map(|i| ((i.offset + images[0].offset) % 2) as u8)
            .collect();
        blocks.entry((generators, class)).or_default().push(f);
    }
    Ok(blocks
        .into_iter()
        .map(|((generators, class), faces)| FaceBlock {
            faces,
            generators,
            class,
        })
        .collect())
}

fn antipodal_pairs(x: &Complex, f: FaceId) -> Vec<(VertexId, VertexId)> {
    let vs = x.face(f).boundary.corner_vertices(x.skeleton());
    let n = vs.len() / 2;
    (0..n).map(|j| (vs[j].min(vs[j + n]), vs[j].max(vs[j + n]))).collect()
}

/// For each pair of vertices sitting at antipodal corners of some face, the
/// number of faces having them antipodal.
pub fn antipodal_multiplicities(x: &Complex) -> Result<HashMap<(VertexId, VertexId), usize>> {
    match x.uniform_face_length() {
        Some(n) if n % 2 == 0 => {}
        _ => return Err(Error::OddFaces("faces must share one even length".into())),
    }
    let mut out: HashMap<(VertexId, VertexId), usize> = HashMap::new();
    for f in x.face_ids() {
        let mut seen = HashSet::new();
        for pair in antipodal_pairs(x, f) {
            if seen.insert(pair) {
                *out.entry(pair).or_default() += 1;
            }
        }
    }
    Ok(out)
}

/// Classes of the closure of "shares an antipodal vertex pair", found
/// without the product structure.
pub fn face_blocks_intrinsic(x: &Complex) -> Result<Vec<IntrinsicBlock>> {
    match x.uniform_face_length() {
        Some(n) if n % 2 == 0 => {}
        _ => return Err(Error::OddFaces("faces must share one even length".into())),
    }
    let mut by_pair: HashMap<(VertexId, VertexId), Vec<usize>> = HashMap::new();
    for f in x.face_ids() {
        for pair in antipodal_pairs(x, f) {
            let list = by_pair.entry(pair).or_default();
            if list.last() != Some(&f.index()) {
                list.push(f.index());
            }
        }
    }
    let k = x.face_count();
    let mut nbrs: Vec<Vec<usize>> = vec![Vec::new(); k];
    for list in by_pair.values() {
        for &a in list {
            for &b in list {
                if a != b {
                    nbrs[a].push(b);
                }
            }
        }
    }
    for l in &mut nbrs {
        l.sort_unstable();
        l.dedup();
    }
    let bfs = |s: usize| -> Vec<Option<usize>> {
        let mut dist = vec![None; k];
        dist[s] = Some(0);
        let mut queue = std::collections::VecDeque::from([s]);
        while let Some(a) = queue.pop_front() {
            for &b in &nbrs[a] {
                if dist[b].is_none() {
                    dist[b] = Some(dist[a].unwrap() + 1);
                    queue.push_back(b);
                }
            }
        }
        dist
    };
    let mut done = vec![false; k];
    let mut out = Vec::new();
    for s in 0..k {
        if done[s] {
            continue;
        }
        let dist = bfs(s);
        let faces: Vec<usize> = (0..k).filter(|&t| dist[t].is_some()).collect();
        let mut diameter = 0;
        for &t in &faces {
            done[t] = true;
            diameter = diameter.max(bfs(t).iter().flatten().copied().max().unwrap_or(0));
        }
        out.push(IntrinsicBlock {
            faces: faces.into_iter().map(|t| FaceId(t as u32)).collect(),
            diameter,
        });
    }
    Ok(out)
}

fn vertex_sets(x: &Complex) -> Vec<HashSet<VertexId>> {
    x.faces()
        .iter()
        .map(|f| f.boundary.corner_vertices(x.skeleton()).into_iter().collect())
        .collect()
}

/// Faces as vertices, joined when distinct and sharing a vertex.
pub fn face_incidence_graph(x: &Complex) -> MultiGraph {
    let sets = vertex_sets(x);
    let mut g = MultiGraph::new();
    let vs: Vec<_> = x.faces().iter().map(|f| g.add_vertex(f.name.clone())).collect();
    for a in 0..sets.len() {
        for b in a + 1..sets.len() {
            if !sets[a].is_disjoint(&sets[b]) {
                g.add_edge(format!("{}~{}", x.faces()[a].name, x.faces()[b].name), vs[a], vs[b]);
            }
        }
    }
    g
}

#[derive(Clone, Debug)]
pub struct BlockGraph {
    /// Vertex `k` stands for the faces generated by `tuples[k]`.
    pub graph: MultiGraph,
    pub tuples: Vec<Vec<FaceId>>,
    pub factor_graphs: Vec<MultiGraph>,
}

/// Tuples of factor faces, adjacent when they agree in all coordinates but
/// one and are incident there.
pub fn block_graph(factors: &[Complex]) -> Result<BlockGraph> {
    if let Some(i) = factors.iter().position(|x| !x.is_ordinary()) {
        return Err(Error::NotOrdinary(i));
    }
    let factor_graphs: Vec<MultiGraph> = factors.iter().map(face_incidence_graph).collect();
    let sizes: Vec<usize> = factors.iter().map(|x| x.face_count()).collect();
    let total: usize = sizes.iter().product();
    let mut tuples = Vec::with_capacity(total);
    for mut k in 0..total {
        let mut t = vec![FaceId(0); sizes.len()];
        for i in (0..sizes.len()).rev() {
            t[i] = FaceId((k % sizes[i]) as u32);
            k /= sizes[i];
        }
        tuples.push(t);
    }
    let adjacent: Vec<HashSet<(u32, u32)>> = factor_graphs
        .iter()
        .map(|g| g.edges().iter().flat_map(|e| [(e.ends[0].0, e.ends[1].0), (e.ends[1].0, e.ends[0].0)]).collect())
        .collect();
    let mut graph = MultiGraph::new();
    let name = |t: &[FaceId]| {
        let parts: Vec<String> = t
            .iter()
            .zip(factors)
            .map(|(f, x)| x.face(*f).name.clone())
            .collect();
        format!("({})", parts.join(","))
    };
    let vs: Vec<_> = tuples.iter().map(|t| graph.add_vertex(name(t))).collect();
    for a in 0..total {
        for b in a + 1..total {
            let diff: Vec<usize> = (0..sizes.len()).filter(|&i| tuples[a][i] != tuples[b][i]).collect();
            if let [i] = diff[..] {
                if adjacent[i].contains(&(tuples[a][i].0, tuples[b][i].0)) {
                    graph.add_edge(format!("b{a}_{b}"), vs[a], vs[b]);
                }
            }
        }
    }
    Ok(BlockGraph {
        graph,
        tuples,
        factor_graphs,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum IncidenceVerdict {
    Both,
    Neither,
    /// The statements disagree; `face` is a face of the first block meeting
    /// no face of the second, when there is one.
    Counterexample {
        one_coordinate: bool,
        every_face: bool,
        face: Option<FaceId>,
    },
}

/// Compares "the generators differ in exactly one coordinate, by incident
/// faces" with "every face of `b` meets a face of `c`" for incident blocks.
pub fn verify_block_incidence_equiv(p: &TensorProduct, b: &FaceBlock, c: &FaceBlock) -> Result<IncidenceVerdict> {
    for (i, x) in p.factors.iter().enumerate() {
        match x.uniform_face_length() {
            Some(n) if n >= 4 && x.is_ordinary() => {}
            _ => return Err(Error::NotOrdinary(i)),
        }
    }
    let x = p.complex();
    let sets = vertex_sets(x);
    let meets = |f: FaceId, g: &FaceBlock| g.faces.iter().any(|&h| !sets[f.index()].is_disjoint(&sets[h.index()]));
    if b == c || !b.faces.iter().any(|&f| meets(f, c)) {
        return Err(Error::NotIncident);
    }
    let factor_sets: Vec<Vec<HashSet<VertexId>>> = p.factors.iter().map(vertex_sets).collect();
    let diff: Vec<usize> = (0..p.factors.len()).filter(|&i| b.generators[i] != c.generators[i]).collect();
    let one_coordinate = match diff[..] {
        [j] => !factor_sets[j][b.generators[j].index()].is_disjoint(&factor_sets[j][c.generators[j].index()]),
        _ => false,
    };
    let lonely = b.faces.iter().copied().find(|&f| !meets(f, c));
    let every_face = lonely.is_none();
    Ok(match (one_coordinate, every_face) {
        (true, true) => IncidenceVerdict::Both,
        (false, false) => IncidenceVerdict::Neither,
        _ => IncidenceVerdict::Counterexample {
            one_coordinate,
            every_face,
            face: lonely,
        },
    })
}

fn binomial(n: u64, k: i64) -> u128 {
    if k < 0 || k as u64 > n {
        return 0;
    }
    let k = (k as u64).min(n - k as u64);
    (0..k).fold(1u128, |acc, i| acc * (n - i) as u128 / (i + 1) as u128)
}

/// Ways to walk `d` unit steps from `d - 2k` to `0` whose last step leaves
/// `from` (either `1` or `-1`).
pub fn count_walk_arrivals(d: u64, k: u64, from: i8) -> Result<u128> {
    if d == 0 || k > d / 2 {
        return Err(Error::RangeError(format!("need d >= 1 and 0 <= k <= d/2, got d={d}, k={k}")));
    }
    match from {
        1 => Ok(binomial(d - 1, k as i64)),
        -1 => Ok(binomial(d - 1, k as i64 - 1)),
        _ => Err(Error::RangeError(format!("arrival side must be 1 or -1, got {from}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexagon_strip, polygon};
    use crate::graph_products::cartesian_product;
    use crate::symmetry::graph_isomorphism;

    fn walk_oracle(d: u64, k: u64, from: i64) -> u128 {
        let mut count = 0;
        for mask in 0u32..(1 << d) {
            let mut pos = (d - 2 * k) as i64;
            let mut prev = pos;
            for s in 0..d {
                prev = pos;
                pos += if mask & (1 << s) != 0 { 1 } else { -1 };
            }
            if pos == 0 && prev == from {
                count += 1;
            }
        }
        count
    }

    #[test]
    fn walk_counts() {
        assert_eq!(count_walk_arrivals(5, 2, 1).unwrap(), 6);
        assert_eq!(count_walk_arrivals(5, 2, -1).unwrap(), 4);
        assert_eq!(count_walk_arrivals(4, 0, -1).unwrap(), 0);
        assert_eq!(count_walk_arrivals(2, 1, 1).unwrap(), 1);
        assert_eq!(count_walk_arrivals(2, 1, -1).unwrap(), 1);
        assert!(count_walk_arrivals(4, 3, 1).is_err());
        for d in 1..=8 {
            for k in 0..=d / 2 {
                for from in [1i8, -1] {
                    assert_eq!(count_walk_arrivals(d, k, from).unwrap(), walk_oracle(d, k, from as i64));
                }
            }
        }
    }

    #[test]
    fn square_blocks() {
        let p = TensorProduct::new(vec![polygon(4).unwrap(), polygon(4).unwrap()]).unwrap();
        let blocks = face_blocks_by_label(&p).unwrap();
        assert_eq!(blocks.len(), 2);
        assert!(blocks.iter().all(|b| b.faces.len() == 4));
        let mut intrinsic: Vec<Vec<FaceId>> = face_blocks_intrinsic(p.complex()).unwrap().into_iter().map(|b| b.faces).collect();
        intrinsic.sort();
        let mut by_label: Vec<Vec<FaceId>> = blocks.into_iter().map(|b| b.faces).collect();
        by_label.sort();
        assert_eq!(intrinsic, by_label);
    }

    #[test]
    fn hexagon_antipodes() {
        let p = TensorProduct::new(vec![polygon(6).unwrap(), polygon(6).unwrap()]).unwrap();
        let mult = antipodal_multiplicities(p.complex()).unwrap();
        assert!(mult.values().all(|&c| c == 2));
        let single = face_blocks_intrinsic(&polygon(6).unwrap()).unwrap();
        assert_eq!(single.len(), 1);
        assert_eq!(face_blocks_by_label(&TensorProduct::new(vec![polygon(6).unwrap()]).unwrap()).unwrap().len(), 1);
    }

    #[test]
    fn grid_block_graph() {
        let factors = vec![hexagon_strip(2).unwrap(), hexagon_strip(3).unwrap()];
        let bg = block_graph(&factors).unwrap();
        assert_eq!((bg.graph.vertex_count(), bg.graph.edge_count()), (6, 7));
        let grid = cartesian_product(&bg.factor_graphs[0], &bg.factor_graphs[1]).unwrap();
        assert!(graph_isomorphism(&bg.graph, &grid).is_some());
    }

    #[test]
    fn incidence_verdicts() {
        let factors = vec![hexagon_strip(2).unwrap(), hexagon_strip(2).unwrap()];
        let p = TensorProduct::new(factors).unwrap();
        let blocks = face_blocks_by_label(&p).unwrap();
        let mut seen = HashSet::new();
        for b in &blocks {
            for c in &blocks {
                match verify_block_incidence_equiv(&p, b, c) {
                    Ok(v) => {
                        assert!(!matches!(v, IncidenceVerdict::Counterexample { .. }));
                        seen.insert(format!("{v:?}"));
                    }
                    Err(e) => assert_eq!(e, Error::NotIncident),
                }
            }
        }
        assert!(seen.contains("Both") && seen.contains("Neither"));
    }
}
