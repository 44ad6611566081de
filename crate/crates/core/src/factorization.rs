//! Splitting skeletons as tensor products, reductive projections, and prime
//! factorization of graphs and simple complexes.

use std::collections::{HashMap, HashSet};

use crate::complex_products::{complex_tensor_product, ComplexHom, ComplexProduct, ProductFaceLabel, TensorProduct};
use crate::error::{Error, Result};
use crate::graph_products::{direct_product_s0, tensor_product, Factor};
use crate::hom::{is_graph_homomorphism, GraphHom};
use crate::multigraph::{Dart, MultiGraph, VertexId};
use crate::polycomplex::{Complex, Face, FaceId};
use crate::symmetry::{complex_isomorphism_with_budget, is_edge_transitive, DEFAULT_BUDGET};
use crate::walk::{cycle_key_of_steps, reduce_closed_walk, CycleKey, Traversal, Walk};

/// Node budget for the split search.
pub const SPLIT_BUDGET: u64 = 20_000_000;

/// Simple loop-free graphs under the tensor product, or simple graphs with
/// loops under the direct product (where a looped vertex is the unit).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GraphClass {
    S,
    S0,
}

const UNKNOWN: u8 = 0;
const NO: u8 = 1;
const YES: u8 = 2;
const FREE: u32 = u32::MAX;

/// A vertex grid `V(g) = [a] x [b]` whose adjacency is the conjunction of
/// two unknown factor adjacency matrices.
struct GridSearch<'a> {
    n: usize,
    a: usize,
    b: usize,
    adj: &'a [bool],
    deg: Vec<usize>,
    order: Vec<usize>,
    pos: Vec<(u32, u32)>,
    used: Vec<bool>,
    m1: Vec<u8>,
    m2: Vec<u8>,
    trail: Vec<(bool, usize)>,
    nodes: u64,
    budget: u64,
    loops: bool,
}

impl<'a> GridSearch<'a> {
    fn new(g: &MultiGraph, adj: &'a [bool], a: usize, b: usize, class: GraphClass, budget: u64) -> GridSearch<'a> {
        let n = g.vertex_count();
        let loops = class == GraphClass::S0;
        let mut m1 = vec![UNKNOWN; a * a];
        let mut m2 = vec![UNKNOWN; b * b];
        if !loops {
            for i in 0..a {
                m1[i * a + i] = NO;
            }
            for i in 0..b {
                m2[i * b + i] = NO;
            }
        }
        GridSearch {
            n,
            a,
            b,
            adj,
            deg: (0..n).map(|u| adj[u * n..(u + 1) * n].iter().filter(|&&x| x).count()).collect(),
            order: Vec::with_capacity(n),
            pos: vec![(FREE, FREE); n],
            used: vec![false; a * b],
            m1,
            m2,
            trail: Vec::new(),
            nodes: 0,
            budget,
            loops,
        }
    }

    fn set(&mut self, second: bool, i: usize, j: usize, val: u8) -> bool {
        let (m, k) = if second { (&mut self.m2, self.b) } else { (&mut self.m1, self.a) };
        let cur = m[i * k + j];
        if cur == val {
            return true;
        }
        if cur != UNKNOWN {
            return false;
        }
        m[i * k + j] = val;
        m[j * k + i] = val;
        self.trail.push((second, i * k + j));
        if i != j {
            self.trail.push((second, j * k + i));
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            let (second, idx) = self.trail.pop().unwrap();
            if second {
                self.m2[idx] = UNKNOWN;
            } else {
                self.m1[idx] = UNKNOWN;
            }
        }
    }

    /// Applies the pair constraints among placed vertices until nothing changes.
    fn propagate(&mut self, placed: &[usize]) -> bool {
        loop {
            let before = self.trail.len();
            for (s, &u) in placed.iter().enumerate() {
                let start = if self.loops { s } else { s + 1 };
                for &v in &placed[start..] {
                    let (xu, yu) = self.pos[u];
                    let (xv, yv) = self.pos[v];
                    let (xu, yu, xv, yv) = (xu as usize, yu as usize, xv as usize, yv as usize);
                    let p = self.m1[xu * self.a + xv];
                    let q = self.m2[yu * self.b + yv];
                    let ok = if self.adj[u * self.n + v] {
                        self.set(false, xu, xv, YES) && self.set(true, yu, yv, YES)
                    } else if p == YES {
                        self.set(true, yu, yv, NO)
                    } else if q == YES {
                        self.set(false, xu, xv, NO)
                    } else {
                        true
                    };
                    if !ok {
                        return false;
                    }
                }
            }
            for &u in placed {
                if !self.degree_rule(u) {
                    return false;
                }
            }
            if self.trail.len() == before {
                return true;
            }
        }
    }

    /// The neighbourhood of `(x, y)` is `N1(x) x N2(y)`, so its size factors
    /// as a product of the two row counts. Forces a row once its count is known.
    fn degree_rule(&mut self, u: usize) -> bool {
        let (x, y) = (self.pos[u].0 as usize, self.pos[u].1 as usize);
        let count = |m: &[u8], k: usize, r: usize| {
            let row = &m[r * k..(r + 1) * k];
            (row.iter().filter(|&&c| c == YES).count(), row.iter().filter(|&&c| c == UNKNOWN).count())
        };
        let (r1, u1) = count(&self.m1, self.a, x);
        let (r2, u2) = count(&self.m2, self.b, y);
        let d = self.deg[u];
        let mut options = Vec::new();
        for d1 in r1..=r1 + u1 {
            if d == 0 {
                if d1 == 0 || r2 == 0 {
                    options.push((d1, if d1 == 0 { None } else { Some(0) }));
                }
            } else if d1 > 0 && d % d1 == 0 && (r2..=r2 + u2).contains(&(d / d1)) {
                options.push((d1, Some(d / d1)));
            }
        }
        match options.as_slice() {
            [] => false,
            [(d1, d2)] => {
                let (d1, d2) = (*d1, *d2);
                let fill = |this: &mut Self, second: bool, row: usize, k: usize, val: u8| {
                    let m = if second { &this.m2 } else { &this.m1 };
                    let todo: Vec<usize> = (0..k).filter(|&j| m[row * k + j] == UNKNOWN).collect();
                    todo.into_iter().all(|j| this.set(second, row, j, val))
                };
                let mut ok = true;
                if u1 > 0 && d1 == r1 {
                    ok &= fill(self, false, x, self.a, NO);
                } else if u1 > 0 && d1 == r1 + u1 {
                    ok &= fill(self, false, x, self.a, YES);
                }
                if let Some(d2) = d2 {
                    if u2 > 0 && d2 == r2 {
                        ok &= fill(self, true, y, self.b, NO);
                    } else if u2 > 0 && d2 == r2 + u2 {
                        ok &= fill(self, true, y, self.b, YES);
                    }
                }
                ok
            }
            _ => true,
        }
    }

    fn run(&mut self, k: usize, maxes: (i64, i64), found: &mut dyn FnMut(&Self) -> bool) -> Result<bool> {
        if k == self.n {
            return Ok(found(self));
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::Budget(self.budget));
        }
        let v = self.next_vertex();
        self.order.push(v);
        let xs = (maxes.0 + 2).min(self.a as i64) as usize;
        let ys = (maxes.1 + 2).min(self.b as i64) as usize;
        for x in 0..xs {
            for y in 0..ys {
                if self.used[x * self.b + y] {
                    continue;
                }
                self.used[x * self.b + y] = true;
                self.pos[v] = (x as u32, y as u32);
                let mark = self.trail.len();
                let placed = self.order.clone();
                if self.propagate(&placed) {
                    let next = (maxes.0.max(x as i64), maxes.1.max(y as i64));
                    if !self.run(k + 1, next, found)? {
                        self.undo(mark);
                        self.used[x * self.b + y] = false;
                        self.pos[v] = (FREE, FREE);
                        self.order.pop();
                        return Ok(false);
                    }
                }
                self.undo(mark);
                self.used[x * self.b + y] = false;
                self.pos[v] = (FREE, FREE);
            }
        }
        self.order.pop();
        Ok(true)
    }

    /// The unplaced vertex with the most placed neighbours.
    fn next_vertex(&self) -> usize {
        let mut best = (0, usize::MAX);
        for v in 0..self.n {
            if self.pos[v].0 != FREE {
                continue;
            }
            let c = self.order.iter().filter(|&&u| self.adj[u * self.n + v]).count();
            if best.1 == usize::MAX || c > best.0 {
                best = (c, v);
            }
        }
        best.1
    }

    fn factor(m: &[u8], k: usize, prefix: &str) -> MultiGraph {
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..k).map(|i| g.add_vertex(format!("{prefix}{i}"))).collect();
        for i in 0..k {
            for j in i..k {
                if m[i * k + j] == YES {
                    g.add_edge(format!("{prefix}{i}_{j}"), vs[i], vs[j]);
                }
            }
        }
        g
    }
}

/// A split of a graph as a product of two smaller graphs.
#[derive(Clone, Debug)]
pub struct GraphSplit {
    pub left: MultiGraph,
    pub right: MultiGraph,
    pub coords: Vec<(VertexId, VertexId)>,
}

fn adjacency(g: &MultiGraph) -> Vec<bool> {
    let n = g.vertex_count();
    let mut adj = vec![false; n * n];
    for e in g.edges() {
        let [u, v] = e.ends;
        adj[u.index() * n + v.index()] = true;
        adj[v.index() * n + u.index()] = true;
    }
    adj
}

fn check_class(g: &MultiGraph, class: GraphClass) -> Result<()> {
    match class {
        GraphClass::S if !g.is_simple() => Err(Error::NotSimple("graph has loops or parallel edges".into())),
        GraphClass::S0 if g.has_parallel_edges() => Err(Error::NotInS0),
        _ => Ok(()),
    }
}

/// Calls `visit` on every split `g = left x right` with both factors on at
/// least two vertices, `|V(left)| <= |V(right)|`, until it returns `false`.
/// Each pair of coordinate partitions is reported once.
pub fn for_each_graph_split(
    g: &MultiGraph,
    class: GraphClass,
    budget: u64,
    mut visit: impl FnMut(GraphSplit) -> bool,
) -> Result<()> {
    check_class(g, class)?;
    let n = g.vertex_count();
    let adj = adjacency(g);
    let mut spent = 0;
    for a in 2..=n {
        if a * a > n {
            break;
        }
        if n % a != 0 {
            continue;
        }
        let b = n / a;
        let mut search = GridSearch::new(g, &adj, a, b, class, budget.saturating_sub(spent));
        let mut go_on = true;
        search.run(0, (-1, -1), &mut |s| {
            let left = GridSearch::factor(&s.m1, a, "x");
            let right = GridSearch::factor(&s.m2, b, "y");
            let coords = s.pos.iter().map(|&(x, y)| (VertexId(x), VertexId(y))).collect();
            go_on = visit(GraphSplit { left, right, coords });
            go_on
        })?;
        spent += search.nodes;
        if !go_on {
            break;
        }
    }
    Ok(())
}

pub fn find_graph_split(g: &MultiGraph, class: GraphClass, budget: u64) -> Result<Option<GraphSplit>> {
    let mut out = None;
    for_each_graph_split(g, class, budget, |s| {
        out = Some(s);
        false
    })?;
    Ok(out)
}

/// Product of graphs in `class`, folded from the left. Vertex indices are
/// mixed-radix in the factor coordinates.
pub fn class_product(factors: &[MultiGraph], class: GraphClass) -> Result<MultiGraph> {
    let mut acc = factors
        .first()
        .ok_or_else(|| Error::BadParameter("empty factor list".into()))?
        .clone();
    for f in &factors[1..] {
        acc = match class {
            GraphClass::S => tensor_product(&acc, f).graph,
            GraphClass::S0 => direct_product_s0(&acc, f)?,
        };
    }
    Ok(acc)
}

fn mixed_radix(coords: &[VertexId], sizes: &[usize]) -> VertexId {
    let mut v = 0u32;
    for (c, &s) in coords.iter().zip(sizes) {
        v = v * s as u32 + c.0;
    }
    VertexId(v)
}

fn unmix(mut v: u32, sizes: &[usize]) -> Vec<VertexId> {
    let mut out = vec![VertexId(0); sizes.len()];
    for i in (0..sizes.len()).rev() {
        out[i] = VertexId(v % sizes[i] as u32);
        v /= sizes[i] as u32;
    }
    out
}

#[derive(Clone, Debug)]
pub struct GraphFactorization {
    pub class: GraphClass,
    pub factors: Vec<MultiGraph>,
    /// Coordinates of each input vertex in `factors`.
    pub coords: Vec<Vec<VertexId>>,
    /// Isomorphism from `class_product(factors)` onto the input.
    pub certificate: GraphHom,
}

impl GraphFactorization {
    /// Rebuilds the product and checks the certificate against `g`.
    pub fn verify(&self, g: &MultiGraph) -> bool {
        match class_product(&self.factors, self.class) {
            Ok(p) => {
                p.vertex_count() == g.vertex_count()
                    && p.edge_count() == g.edge_count()
                    && is_graph_homomorphism(&p, g, &self.certificate)
                    && self.certificate.is_bijective(g)
            }
            Err(_) => false,
        }
    }
}

fn graph_sort_key(g: &MultiGraph) -> (usize, usize, Vec<usize>) {
    let mut d = g.degrees();
    d.sort_unstable();
    (g.vertex_count(), g.edge_count(), d)
}

fn prime_split(g: &MultiGraph, class: GraphClass, budget: u64) -> Result<Vec<(MultiGraph, Vec<VertexId>)>> {
    let Some(split) = find_graph_split(g, class, budget)? else {
        return Ok(vec![(g.clone(), g.vertices().collect())]);
    };
    let mut out = Vec::new();
    let parts = [
        (split.left, split.coords.iter().map(|c| c.0).collect::<Vec<_>>()),
        (split.right, split.coords.iter().map(|c| c.1).collect()),
    ];
    for (part, proj) in parts {
        for (prime, sub) in prime_split(&part, class, budget)? {
            out.push((prime, proj.iter().map(|&p| sub[p.index()]).collect()));
        }
    }
    Ok(out)
}

/// Prime factorization of a connected non-bipartite graph in `class`.
/// Factors come in canonical order (vertex count, edge count, degrees).
pub fn graph_prime_factorization(g: &MultiGraph, class: GraphClass) -> Result<GraphFactorization> {
    graph_prime_factorization_with_budget(g, class, SPLIT_BUDGET)
}

pub fn graph_prime_factorization_with_budget(
    g: &MultiGraph,
    class: GraphClass,
    budget: u64,
) -> Result<GraphFactorization> {
    if g.vertex_count() < 2 {
        return Err(Error::HypothesisViolated("needs more than one vertex".into()));
    }
    if !g.is_connected() {
        return Err(Error::HypothesisViolated("graph is disconnected".into()));
    }
    if g.is_bipartite() {
        return Err(Error::HypothesisViolated("graph is bipartite".into()));
    }
    check_class(g, class)?;
    let mut primes = prime_split(g, class, budget)?;
    primes.sort_by_cached_key(|(p, _)| graph_sort_key(p));
    let factors: Vec<MultiGraph> = primes.iter().map(|(p, _)| p.clone()).collect();
    let coords: Vec<Vec<VertexId>> = g
        .vertices()
        .map(|v| primes.iter().map(|(_, c)| c[v.index()]).collect())
        .collect();
    let sizes: Vec<usize> = factors.iter().map(|f| f.vertex_count()).collect();
    let mut vmap = vec![VertexId(0); g.vertex_count()];
    for v in g.vertices() {
        vmap[mixed_radix(&coords[v.index()], &sizes).index()] = v;
    }
    let product = class_product(&factors, class)?;
    let certificate = GraphHom::from_vertex_map(&product, g, vmap)
        .ok_or_else(|| Error::InvalidSplit("coordinates do not give a homomorphism".into()))?;
    let out = GraphFactorization {
        class,
        factors,
        coords,
        certificate,
    };
    if !out.verify(g) {
        return Err(Error::InvalidSplit("certificate failed to verify".into()));
    }
    Ok(out)
}

/// An identification of a skeleton with a tensor product of two graphs,
/// recorded on vertices and darts.
#[derive(Clone, Debug)]
pub struct SkeletonSplit {
    pub left: MultiGraph,
    pub right: MultiGraph,
    pub coords: Vec<(VertexId, VertexId)>,
    left_darts: Vec<Dart>,
    right_darts: Vec<Dart>,
}

impl SkeletonSplit {
    /// The natural split of a product.
    pub fn from_product(p: &ComplexProduct) -> SkeletonSplit {
        let g = &p.graph;
        SkeletonSplit {
            left: g.left.clone(),
            right: g.right.clone(),
            coords: g.graph.vertices().map(|v| g.coords(v)).collect(),
            left_darts: g.graph.darts().map(|d| g.project_dart(d, Factor::Left)).collect(),
            right_darts: g.graph.darts().map(|d| g.project_dart(d, Factor::Right)).collect(),
        }
    }

    /// A split given by vertex coordinates into simple loop-free factors.
    pub fn new(
        skeleton: &MultiGraph,
        left: MultiGraph,
        right: MultiGraph,
        coords: Vec<(VertexId, VertexId)>,
    ) -> Result<SkeletonSplit> {
        if !left.is_simple() || !right.is_simple() {
            return Err(Error::InvalidSplit("factors must be simple loop-free graphs".into()));
        }
        if coords.len() != skeleton.vertex_count()
            || left.vertex_count() * right.vertex_count() != coords.len()
            || skeleton.edge_count() != 2 * left.edge_count() * right.edge_count()
        {
            return Err(Error::InvalidSplit("cell counts do not match the product".into()));
        }
        let mut seen = HashSet::new();
        for &(a, b) in &coords {
            if !left.contains_vertex(a) || !right.contains_vertex(b) || !seen.insert((a, b)) {
                return Err(Error::InvalidSplit("coordinates are not a bijection".into()));
            }
        }
        let darts_between = |g: &MultiGraph| -> HashMap<(VertexId, VertexId), Dart> {
            g.darts().map(|d| ((g.endpoint(d), g.endpoint(d.mate())), d)).collect()
        };
        let (lmap, rmap) = (darts_between(&left), darts_between(&right));
        let mut left_darts = Vec::with_capacity(skeleton.dart_count());
        let mut right_darts = Vec::with_capacity(skeleton.dart_count());
        let mut pairs = HashSet::new();
        for d in skeleton.darts() {
            let (u, v) = (coords[skeleton.endpoint(d).index()], coords[skeleton.endpoint(d.mate()).index()]);
            let (Some(&l), Some(&r)) = (lmap.get(&(u.0, v.0)), rmap.get(&(u.1, v.1))) else {
                return Err(Error::InvalidSplit(format!(
                    "edge {} has no image in the factors",
                    skeleton.edge_name(d.edge)
                )));
            };
            if !pairs.insert((l, r)) {
                return Err(Error::InvalidSplit("two edges share a factor edge pair".into()));
            }
            left_darts.push(l);
            right_darts.push(r);
        }
        Ok(SkeletonSplit {
            left,
            right,
            coords,
            left_darts,
            right_darts,
        })
    }

    pub fn factor(&self, which: Factor) -> &MultiGraph {
        match which {
            Factor::Left => &self.left,
            Factor::Right => &self.right,
        }
    }

    pub fn project_dart(&self, d: Dart, which: Factor) -> Dart {
        match which {
            Factor::Left => self.left_darts[d.index()],
            Factor::Right => self.right_darts[d.index()],
        }
    }

    fn check(&self, x: &Complex) -> Result<()> {
        if self.left_darts.len() != x.skeleton().dart_count() || self.coords.len() != x.skeleton().vertex_count() {
            return Err(Error::InvalidSplit("split belongs to another skeleton".into()));
        }
        Ok(())
    }
}

/// The projection of a face boundary to one factor, reduced to its primitive cycle.
pub fn reductive_projection(x: &Complex, split: &SkeletonSplit, f: FaceId, which: Factor) -> Result<Face> {
    split.check(x)?;
    let face = x.face(f);
    let steps = face
        .boundary
        .steps
        .iter()
        .map(|t| Traversal::leaving(split.project_dart(t.tail_dart(), which)))
        .collect();
    let walk = Walk::closed(split.factor(which), steps).map_err(|e| Error::InvalidSplit(e.to_string()))?;
    let (primitive, _) = reduce_closed_walk(&walk)?;
    Ok(Face {
        name: face.name.clone(),
        boundary: primitive,
    })
}

#[derive(Clone, Debug)]
pub enum SplitOutcome {
    Split(Complex, Complex),
    /// A face generated by two factor faces is absent from the complex.
    MissingFace {
        left: FaceId,
        right: FaceId,
        label: ProductFaceLabel,
    },
    /// A face of the complex is not generated by the candidate factors.
    UnexpectedFace(FaceId),
}

impl SplitOutcome {
    pub fn factors(self) -> Option<(Complex, Complex)> {
        match self {
            SplitOutcome::Split(a, b) => Some((a, b)),
            _ => None,
        }
    }
}

fn projected_factor(x: &Complex, split: &SkeletonSplit, which: Factor) -> Result<Complex> {
    let mut out = Complex::from_graph(split.factor(which).clone());
    let mut keys = HashSet::new();
    for f in x.face_ids() {
        let face = reductive_projection(x, split, f, which)?;
        if keys.insert(cycle_key_of_steps(&face.boundary.steps, true)) {
            out.add_face(format!("f{}", keys.len() - 1), face.boundary.steps)?;
        }
    }
    Ok(out)
}

/// Tries to write `x` as a product over `split`, with factor faces the
/// deduplicated reductive projections.
pub fn try_complex_split(x: &Complex, split: &SkeletonSplit) -> Result<SplitOutcome> {
    if !x.is_simple_complex() {
        return Err(Error::NotSimple("complex has repeated or multiply wrapped faces".into()));
    }
    split.check(x)?;
    let x1 = projected_factor(x, split, Factor::Left)?;
    let x2 = projected_factor(x, split, Factor::Right)?;
    let p = complex_tensor_product(&x1, &x2);
    let g = x.skeleton();
    let back: HashMap<(Dart, Dart), Dart> = g
        .darts()
        .map(|d| ((split.project_dart(d, Factor::Left), split.project_dart(d, Factor::Right)), d))
        .collect();
    let mut ours: HashMap<CycleKey, FaceId> = HashMap::new();
    for f in x.face_ids() {
        ours.insert(cycle_key_of_steps(&x.face(f).boundary.steps, true), f);
    }
    let mut hit = HashSet::new();
    for (k, face) in p.complex.faces().iter().enumerate() {
        let steps: Vec<Traversal> = face
            .boundary
            .steps
            .iter()
            .map(|t| {
                let d = t.tail_dart();
                let pair = (p.graph.project_dart(d, Factor::Left), p.graph.project_dart(d, Factor::Right));
                Traversal::leaving(back[&pair])
            })
            .collect();
        let label = p.label(FaceId(k as u32));
        match ours.get(&cycle_key_of_steps(&steps, true)) {
            Some(&f) => {
                hit.insert(f);
            }
            None => {
                return Ok(SplitOutcome::MissingFace {
                    left: label.alpha,
                    right: label.beta,
                    label,
                })
            }
        }
    }
    if let Some(f) = x.face_ids().find(|f| !hit.contains(f)) {
        return Ok(SplitOutcome::UnexpectedFace(f));
    }
    Ok(SplitOutcome::Split(x1, x2))
}

#[derive(Clone, Debug)]
pub struct ComplexFactorization {
    pub factors: Vec<Complex>,
    /// Prime factorization of the skeleton the grouping search started from.
    pub skeleton: GraphFactorization,
    /// Which skeleton primes each factor's skeleton is built from.
    pub groups: Vec<Vec<usize>>,
    /// Isomorphism from the product of `factors` onto the input.
    pub certificate: ComplexHom,
}

impl ComplexFactorization {
    pub fn verify(&self, x: &Complex) -> bool {
        match TensorProduct::new(self.factors.clone()) {
            Ok(p) => {
                crate::complex_products::is_complex_homomorphism(p.complex(), x, &self.certificate)
                    && self.certificate.is_bijective(p.complex(), x)
            }
            Err(_) => false,
        }
    }
}

fn complex_sort_key(x: &Complex) -> (usize, usize, usize, Vec<usize>) {
    let mut lens: Vec<usize> = x.faces().iter().map(|f| f.len()).collect();
    lens.sort_unstable();
    (x.skeleton().vertex_count(), x.skeleton().edge_count(), x.face_count(), lens)
}

/// Proper subsets of `0..k` in the order tried by the grouping search:
/// by size, then lexicographically, one of each complementary pair.
fn groupings(k: usize) -> Vec<Vec<usize>> {
    let mut out: Vec<Vec<usize>> = (1..(1u32 << k) - 1)
        .map(|mask| (0..k).filter(|&i| mask & (1 << i) != 0).collect::<Vec<_>>())
        .filter(|s: &Vec<usize>| 2 * s.len() < k || (2 * s.len() == k && s[0] == 0))
        .collect();
    out.sort_by(|a, b| a.len().cmp(&b.len()).then(a.cmp(b)));
    out
}

fn group_search(
    x: &Complex,
    primes: &[MultiGraph],
    coords: &[Vec<VertexId>],
    idx: &[usize],
) -> Result<Vec<(Complex, Vec<usize>)>> {
    if idx.len() > 1 {
        for part in groupings(idx.len()) {
            let rest: Vec<usize> = (0..idx.len()).filter(|i| !part.contains(i)).collect();
            let pick = |s: &[usize]| -> (MultiGraph, Vec<usize>) {
                let gs: Vec<MultiGraph> = s.iter().map(|&i| primes[idx[i]].clone()).collect();
                let sizes = gs.iter().map(|g| g.vertex_count()).collect();
                (class_product(&gs, GraphClass::S).unwrap(), sizes)
            };
            let ((left, lsizes), (right, rsizes)) = (pick(&part), pick(&rest));
            let split_coords = coords
                .iter()
                .map(|c| {
                    let l: Vec<VertexId> = part.iter().map(|&i| c[i]).collect();
                    let r: Vec<VertexId> = rest.iter().map(|&i| c[i]).collect();
                    (mixed_radix(&l, &lsizes), mixed_radix(&r, &rsizes))
                })
                .collect();
            let split = SkeletonSplit::new(x.skeleton(), left, right, split_coords)?;
            if let SplitOutcome::Split(x1, x2) = try_complex_split(x, &split)? {
                let sub = |y: &Complex, s: &[usize], sizes: &[usize]| {
                    let cs: Vec<Vec<VertexId>> = y.skeleton().vertices().map(|v| unmix(v.0, sizes)).collect();
                    let ids: Vec<usize> = s.iter().map(|&i| idx[i]).collect();
                    (cs, ids)
                };
                let (c1, i1) = sub(&x1, &part, &lsizes);
                let (c2, i2) = sub(&x2, &rest, &rsizes);
                let mut out = group_search(&x1, primes, &c1, &i1)?;
                out.extend(group_search(&x2, primes, &c2, &i2)?);
                return Ok(out);
            }
        }
    }
    Ok(vec![(x.clone(), idx.to_vec())])
}

fn check_factorable(x: &Complex) -> Result<()> {
    if !x.is_simple_complex() {
        return Err(Error::NotSimple("complex has repeated or multiply wrapped faces".into()));
    }
    let g = x.skeleton();
    let failed = if g.vertex_count() < 2 {
        Some("skeleton needs more than one vertex")
    } else if !g.is_simple() {
        Some("skeleton is not a simple graph")
    } else if !g.is_connected() {
        Some("skeleton is disconnected")
    } else if g.is_bipartite() {
        Some("skeleton is bipartite")
    } else if !g.is_r_thin() {
        Some("skeleton is not R-thin")
    } else if !is_edge_transitive(g)? {
        Some("skeleton is not edge-transitive")
    } else {
        None
    };
    match failed {
        Some(why) => Err(Error::HypothesisViolated(why.into())),
        None => Ok(()),
    }
}

/// Prime factorization of a simple complex whose skeleton is simple,
/// connected, non-bipartite, R-thin and edge-transitive.
pub fn complex_prime_factorization(x: &Complex) -> Result<ComplexFactorization> {
    check_factorable(x)?;
    let skeleton = graph_prime_factorization(x.skeleton(), GraphClass::S)?;
    let idx: Vec<usize> = (0..skeleton.factors.len()).collect();
    let mut found = group_search(x, &skeleton.factors, &skeleton.coords, &idx)?;
    found.sort_by_cached_key(|(c, _)| complex_sort_key(c));
    let (factors, groups): (Vec<Complex>, Vec<Vec<usize>>) = found.into_iter().unzip();
    let product = TensorProduct::new(factors.clone())?;
    let certificate = complex_isomorphism_with_budget(product.complex(), x, DEFAULT_BUDGET)?
        .ok_or_else(|| Error::InvalidSplit("product of the factors is not isomorphic to the input".into()))?;
    Ok(ComplexFactorization {
        factors,
        skeleton,
        groups,
        certificate,
    })
}

/// Whether no split of the skeleton lifts to a split of the complex.
/// Elementary complexes are prime without search.
pub fn is_prime_complex(x: &Complex) -> Result<bool> {
    is_prime_complex_with_budget(x, SPLIT_BUDGET)
}

pub fn is_prime_complex_with_budget(x: &Complex, budget: u64) -> Result<bool> {
    if !x.is_simple_complex() {
        return Err(Error::NotSimple("complex has repeated or multiply wrapped faces".into()));
    }
    if x.is_elementary() {
        return Ok(true);
    }
    let g = x.skeleton();
    let n = g.vertex_count();
    if !g.is_simple() {
        // A one-vertex factor makes every multiplicity even; otherwise both
        // factors need at least two vertices.
        let odd = g.multiplicities().iter().any(|m| m % 2 == 1);
        let composite = (2..n).any(|a| n % a == 0);
        if odd && !composite {
            return Ok(true);
        }
        return Err(Error::NotSimple("split search needs a simple skeleton".into()));
    }
    let mut prime = true;
    let mut failure = None;
    for_each_graph_split(g, GraphClass::S, budget, |s| {
        let outcome = SkeletonSplit::new(g, s.left, s.right, s.coords).and_then(|split| try_complex_split(x, &split));
        match outcome {
            Ok(SplitOutcome::Split(..)) => {
                prime = false;
                false
            }
            Ok(_) => true,
            Err(e) => {
                failure = Some(e);
                false
            }
        }
    })?;
    match failure {
        Some(e) => Err(e),
        None => Ok(prime),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{complete, cube_surface, cycle, one_gon, polygon, tetrahedron, wrapped_polygon};
    use crate::symmetry::{are_isomorphic, graph_isomorphism};

    #[test]
    fn graph_primes() {
        let k4 = complete(4);
        let f = graph_prime_factorization(&k4, GraphClass::S).unwrap();
        assert_eq!(f.factors.len(), 1);
        let k33 = tensor_product(&complete(3), &complete(3)).graph;
        let f = graph_prime_factorization(&k33, GraphClass::S).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.factors.iter().all(|p| graph_isomorphism(p, &complete(3)).is_some()));
        assert!(f.verify(&k33));
        let c15 = tensor_product(&cycle(3).unwrap(), &cycle(5).unwrap()).graph;
        let f = graph_prime_factorization(&c15, GraphClass::S).unwrap();
        assert_eq!(f.factors.iter().map(|g| g.vertex_count()).collect::<Vec<_>>(), vec![3, 5]);
        assert!(matches!(
            graph_prime_factorization(&cycle(6).unwrap(), GraphClass::S),
            Err(Error::HypothesisViolated(_))
        ));
    }

    #[test]
    fn looped_vertices_in_s0() {
        // K3 with a loop everywhere times K3: loops are units only on one vertex.
        let mut r = complete(3);
        for i in 0..3 {
            r.add_edge(format!("l{i}"), VertexId(i), VertexId(i));
        }
        let g = direct_product_s0(&r, &complete(3)).unwrap();
        let f = graph_prime_factorization(&g, GraphClass::S0).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.verify(&g));
        assert!(f.factors.iter().all(|p| p.vertex_count() > 1));
    }

    #[test]
    fn triangle_pentagon_split() {
        let p = complex_tensor_product(&polygon(3).unwrap(), &polygon(5).unwrap());
        let split = SkeletonSplit::from_product(&p);
        let l = reductive_projection(&p.complex, &split, FaceId(0), Factor::Left).unwrap();
        assert_eq!(l.boundary.len(), 3);
        let (a, b) = try_complex_split(&p.complex, &split).unwrap().factors().unwrap();
        assert!(are_isomorphic(&a, &polygon(3).unwrap()).unwrap());
        assert!(are_isomorphic(&b, &polygon(5).unwrap()).unwrap());
        assert!(!is_prime_complex(&p.complex).unwrap());
        let f = complex_prime_factorization(&p.complex).unwrap();
        assert_eq!(f.factors.len(), 2);
        assert!(f.verify(&p.complex));
    }

    #[test]
    fn deleted_face_gives_witness() {
        let p = complex_tensor_product(&polygon(3).unwrap(), &polygon(5).unwrap());
        let mut x = Complex::from_graph(p.complex.skeleton().clone());
        let f = &p.complex.faces()[1];
        x.add_face(f.name.clone(), f.boundary.steps.clone()).unwrap();
        let out = try_complex_split(&x, &SkeletonSplit::from_product(&p)).unwrap();
        assert!(matches!(out, SplitOutcome::MissingFace { .. }));
    }

    #[test]
    fn primes() {
        assert!(is_prime_complex(&cube_surface()).unwrap());
        assert!(is_prime_complex(&one_gon()).unwrap());
        assert!(is_prime_complex(&tetrahedron()).unwrap());
        assert!(matches!(is_prime_complex(&wrapped_polygon(15, 3).unwrap()), Err(Error::NotSimple(_))));
    }

    #[test]
    fn grouping_order() {
        assert_eq!(groupings(3), vec![vec![0], vec![1], vec![2]]);
        assert_eq!(groupings(4).len(), 7);
    }
}
