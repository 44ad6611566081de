//! Isomorphisms and automorphism groups of graphs and complexes.
//!
//! Vertices are matched by backtracking in breadth-first order under a joint
//! colour refinement; each complete vertex map is then lifted to darts and faces.

use std::collections::{BTreeMap, HashMap, HashSet, VecDeque};

use crate::complex_products::{ComplexHom, FaceImage, TensorProduct};
use crate::error::{Error, Result};
use crate::hom::GraphHom;
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};
use crate::perm::{PermGroup, Permutation};
use crate::polycomplex::{Complex, FaceId, Flag};
use crate::walk::vertex_cycle_key;

/// Default node budget for searches.
pub const DEFAULT_BUDGET: u64 = 50_000_000;

/// Most lifts of the identity vertex map explored before giving up.
const KERNEL_CAP: u64 = 200_000;

/// Positions of the cells of a complex in the permutation ground set:
/// vertices, then darts, then faces, then flags.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    pub vertices: usize,
    pub darts: usize,
    pub faces: usize,
    pub flags: usize,
    flag_offsets: Vec<usize>,
}

impl Layout {
    pub fn of(x: &Complex) -> Layout {
        Layout {
            vertices: x.skeleton().vertex_count(),
            darts: x.skeleton().dart_count(),
            faces: x.face_count(),
            flags: x.flag_count(),
            flag_offsets: x.flag_offsets(),
        }
    }

    pub fn degree(&self) -> usize {
        self.vertices + self.darts + self.faces + self.flags
    }

    pub fn vertex_range(&self) -> std::ops::Range<usize> {
        0..self.vertices
    }

    pub fn dart_range(&self) -> std::ops::Range<usize> {
        self.vertices..self.vertices + self.darts
    }

    pub fn face_range(&self) -> std::ops::Range<usize> {
        let s = self.vertices + self.darts;
        s..s + self.faces
    }

    pub fn flag_range(&self) -> std::ops::Range<usize> {
        let s = self.vertices + self.darts + self.faces;
        s..s + self.flags
    }

    pub fn vertex(&self, v: VertexId) -> u32 {
        v.0
    }

    pub fn dart(&self, d: Dart) -> u32 {
        (self.vertices + d.index()) as u32
    }

    pub fn face(&self, f: FaceId) -> u32 {
        (self.vertices + self.darts + f.index()) as u32
    }

    pub fn flag(&self, f: Flag) -> u32 {
        let s = self.vertices + self.darts + self.faces;
        (s + self.flag_offsets[f.corner.face.index()] + 2 * f.corner.position as usize + f.side as usize) as u32
    }

    /// Decodes a flag point.
    pub fn flag_at(&self, point: u32) -> Flag {
        let i = point as usize - self.flag_range().start;
        let face = self.flag_offsets.partition_point(|&o| o <= i) - 1;
        let r = i - self.flag_offsets[face];
        Flag {
            corner: crate::polycomplex::Corner {
                face: FaceId(face as u32),
                position: (r / 2) as u32,
            },
            side: (r % 2) as u8,
        }
    }
}

/// The action of a bijective self-map on the ground set.
pub fn hom_to_permutation(x: &Complex, h: &ComplexHom) -> Permutation {
    let l = Layout::of(x);
    let mut p = vec![0u32; l.degree()];
    for v in x.skeleton().vertices() {
        p[l.vertex(v) as usize] = l.vertex(h.vertex(v));
    }
    for d in x.skeleton().darts() {
        p[l.dart(d) as usize] = l.dart(h.dart(d));
    }
    for f in x.face_ids() {
        p[l.face(f) as usize] = l.face(h.face(f).face);
    }
    for fl in x.flags() {
        p[l.flag(fl) as usize] = l.flag(h.flag(x, fl));
    }
    Permutation(p)
}

/// Reads a self-map back from its action.
pub fn permutation_to_hom(x: &Complex, p: &Permutation) -> ComplexHom {
    let l = Layout::of(x);
    let vertex_map = x.skeleton().vertices().map(|v| VertexId(p.image(l.vertex(v)))).collect();
    let dart_map = x
        .skeleton()
        .darts()
        .map(|d| Dart::from_index(p.image(l.dart(d)) as usize - l.vertices))
        .collect();
    let face_map = x
        .face_ids()
        .map(|f| {
            let first = Flag {
                corner: crate::polycomplex::Corner { face: f, position: 0 },
                side: 0,
            };
            let img = l.flag_at(p.image(l.flag(first)));
            FaceImage {
                face: img.corner.face,
                offset: img.corner.position,
                reflect: img.side == 1,
            }
        })
        .collect();
    ComplexHom {
        graph: GraphHom { vertex_map, dart_map },
        face_map,
    }
}

/// An automorphism group acting on the ground set described by `layout`.
#[derive(Clone, Debug)]
pub struct AutGroup {
    pub group: PermGroup,
    pub layout: Layout,
}

impl AutGroup {
    pub fn order(&self) -> u128 {
        self.group.order()
    }

    pub fn vertex_orbits(&self) -> Vec<Vec<u32>> {
        self.group.orbits_on(self.layout.vertex_range())
    }

    pub fn dart_orbits(&self) -> Vec<Vec<u32>> {
        self.group.orbits_on(self.layout.dart_range())
    }

    pub fn face_orbits(&self) -> Vec<Vec<u32>> {
        self.group.orbits_on(self.layout.face_range())
    }

    pub fn flag_orbits(&self) -> Vec<Vec<u32>> {
        self.group.orbits_on(self.layout.flag_range())
    }

    /// Orbits on edges, each edge named by its index. A dart orbit and its
    /// mate orbit cover the same edges.
    pub fn edge_orbits(&self) -> Vec<Vec<u32>> {
        let start = self.layout.vertices as u32;
        let mut out: Vec<Vec<u32>> = self
            .dart_orbits()
            .iter()
            .map(|orbit| {
                let mut edges: Vec<u32> = orbit.iter().map(|d| (d - start) / 2).collect();
                edges.sort_unstable();
                edges.dedup();
                edges
            })
            .collect();
        out.sort();
        out.dedup();
        out
    }
}

struct Prepared {
    n: usize,
    mult: Vec<u32>,
    neighbors: Vec<Vec<u32>>,
    face_vertices: Vec<Vec<u32>>,
}

impl Prepared {
    fn new(x: &Complex) -> Prepared {
        let g = x.skeleton();
        Prepared {
            n: g.vertex_count(),
            mult: g.multiplicities(),
            neighbors: g
                .neighbor_sets()
                .into_iter()
                .map(|s| s.into_iter().map(|v| v.0).collect())
                .collect(),
            face_vertices: x
                .faces()
                .iter()
                .map(|f| f.boundary.corner_vertices(g).into_iter().map(|v| v.0).collect())
                .collect(),
        }
    }

    fn m(&self, a: u32, b: u32) -> u32 {
        self.mult[a as usize * self.n + b as usize]
    }
}

/// Colour refinement run on both complexes with a shared palette.
fn joint_colours(xs: [&Complex; 2], ps: [&Prepared; 2]) -> [Vec<u32>; 2] {
    let mut sigs: [Vec<Vec<u64>>; 2] = Default::default();
    for s in 0..2 {
        let x = xs[s];
        let g = x.skeleton();
        let mut corner_lengths = vec![Vec::new(); g.vertex_count()];
        for f in x.faces() {
            for t in &f.boundary.steps {
                corner_lengths[t.tail(g).index()].push(f.len() as u64);
            }
        }
        let degrees = g.degrees();
        sigs[s] = (0..g.vertex_count())
            .map(|v| {
                let mut c = std::mem::take(&mut corner_lengths[v]);
                c.sort();
                let mut sig = vec![degrees[v] as u64, ps[s].m(v as u32, v as u32) as u64];
                sig.extend(c);
                sig
            })
            .collect();
    }
    refine(ps, palette(&sigs))
}

/// Smallest rotation or reflection of a cyclic sequence.
fn cyclic_min(seq: &[u32]) -> Vec<u32> {
    let n = seq.len();
    let mut best: Option<Vec<u32>> = None;
    for rev in [false, true] {
        for r in 0..n {
            let cand: Vec<u32> = (0..n)
                .map(|k| if rev { seq[(r + n - k) % n] } else { seq[(r + k) % n] })
                .collect();
            if best.as_ref().map_or(true, |b| cand < *b) {
                best = Some(cand);
            }
        }
    }
    best.unwrap_or_default()
}

/// Refines two colourings with a shared palette until stable. A vertex sees
/// its neighbours with multiplicities and the faces through it, a face sees
/// the cyclic sequence of its corner colours.
fn refine(ps: [&Prepared; 2], mut colours: [Vec<u32>; 2]) -> [Vec<u32>; 2] {
    let mut classes = count_classes(&colours);
    let mut face_of: [Vec<Vec<u32>>; 2] = Default::default();
    for s in 0..2 {
        face_of[s] = vec![Vec::new(); ps[s].n];
        for (f, vs) in ps[s].face_vertices.iter().enumerate() {
            for &v in vs {
                face_of[s][v as usize].push(f as u32);
            }
        }
    }
    loop {
        let mut fsigs: [Vec<Vec<u64>>; 2] = Default::default();
        for s in 0..2 {
            fsigs[s] = ps[s]
                .face_vertices
                .iter()
                .map(|vs| {
                    let seq: Vec<u32> = vs.iter().map(|&v| colours[s][v as usize]).collect();
                    cyclic_min(&seq).into_iter().map(u64::from).collect()
                })
                .collect();
        }
        let fcol = palette(&fsigs);
        let mut sigs: [Vec<Vec<u64>>; 2] = Default::default();
        for s in 0..2 {
            let p = ps[s];
            sigs[s] = (0..p.n)
                .map(|v| {
                    let mut around: Vec<u64> = p.neighbors[v]
                        .iter()
                        .map(|&w| ((colours[s][w as usize] as u64) << 32) | p.m(v as u32, w) as u64)
                        .collect();
                    around.sort();
                    let mut faces: Vec<u64> = face_of[s][v].iter().map(|&f| fcol[s][f as usize] as u64).collect();
                    faces.sort();
                    let mut sig = vec![colours[s][v] as u64, around.len() as u64];
                    sig.extend(around);
                    sig.extend(faces);
                    sig
                })
                .collect();
        }
        let next = palette(&sigs);
        let c = count_classes(&next);
        colours = next;
        if c == classes {
            return colours;
        }
        classes = c;
    }
}

fn palette(sigs: &[Vec<Vec<u64>>; 2]) -> [Vec<u32>; 2] {
    let mut ids: BTreeMap<&Vec<u64>, u32> = BTreeMap::new();
    for s in sigs.iter().flatten() {
        ids.insert(s, 0);
    }
    for (i, v) in ids.values_mut().enumerate() {
        *v = i as u32;
    }
    [
        sigs[0].iter().map(|s| ids[s]).collect(),
        sigs[1].iter().map(|s| ids[s]).collect(),
    ]
}

fn count_classes(c: &[Vec<u32>; 2]) -> usize {
    c.iter().flatten().collect::<HashSet<_>>().len()
}

enum Flow {
    Continue,
    Stop,
}

struct VertexSearch<'a> {
    px: &'a Prepared,
    py: &'a Prepared,
    cx: Vec<u32>,
    cy: Vec<u32>,
    order: Vec<u32>,
    parent: Vec<Option<u32>>,
    face_checks: Vec<Vec<usize>>,
    target_keys: HashSet<Vec<u32>>,
    map: Vec<u32>,
    used: Vec<bool>,
    forced: Vec<Option<u32>>,
    nodes: u64,
    budget: u64,
}

const NONE: u32 = u32::MAX;

impl<'a> VertexSearch<'a> {
    fn new(px: &'a Prepared, py: &'a Prepared, cx: &[u32], cy: &[u32], budget: u64) -> VertexSearch<'a> {
        let (order, parent) = search_order(px, cx);
        let (cx, cy) = (cx.to_vec(), cy.to_vec());
        let mut pos = vec![0; px.n];
        for (k, &v) in order.iter().enumerate() {
            pos[v as usize] = k;
        }
        let mut face_checks = vec![Vec::new(); px.n];
        for (f, vs) in px.face_vertices.iter().enumerate() {
            let last = vs.iter().map(|&v| pos[v as usize]).max().unwrap();
            face_checks[last].push(f);
        }
        let target_keys = py.face_vertices.iter().map(|vs| vertex_cycle_key(vs)).collect();
        VertexSearch {
            px,
            py,
            cx,
            cy,
            order,
            parent,
            face_checks,
            target_keys,
            map: vec![NONE; px.n],
            used: vec![false; py.n],
            forced: vec![None; px.n],
            nodes: 0,
            budget,
        }
    }

    fn consistent(&self, k: usize, x: u32, w: u32) -> bool {
        if self.used[w as usize] || self.cx[x as usize] != self.cy[w as usize] {
            return false;
        }
        if self.px.m(x, x) != self.py.m(w, w) {
            return false;
        }
        self.order[..k]
            .iter()
            .all(|&u| self.px.m(x, u) == self.py.m(w, self.map[u as usize]))
    }

    fn faces_ok(&self, k: usize) -> bool {
        self.face_checks[k].iter().all(|&f| {
            let img: Vec<u32> = self.px.face_vertices[f].iter().map(|&v| self.map[v as usize]).collect();
            self.target_keys.contains(&vertex_cycle_key(&img))
        })
    }

    fn run(&mut self, k: usize, leaf: &mut dyn FnMut(&[u32]) -> Flow) -> Result<Flow> {
        if k == self.order.len() {
            return Ok(leaf(&self.map));
        }
        let x = self.order[k];
        let candidates: Vec<u32> = match (self.forced[k], self.parent[k]) {
            (Some(w), _) => vec![w],
            (None, Some(p)) => self.py.neighbors[self.map[p as usize] as usize].clone(),
            (None, None) => (0..self.py.n as u32).collect(),
        };
        let mut viable = Vec::new();
        for w in candidates {
            self.nodes += 1;
            if self.nodes > self.budget {
                return Err(Error::TooLarge(self.budget));
            }
            if self.consistent(k, x, w) {
                viable.push(w);
            }
        }
        let branching = viable.len() > 1;
        for w in viable {
            let saved = if branching {
                // Individualize x and w and refine; a mismatch rules w out.
                let top = self.cx.iter().chain(&self.cy).max().map_or(0, |&c| c + 1);
                let (mut ca, mut cb) = (self.cx.clone(), self.cy.clone());
                ca[x as usize] = top;
                cb[w as usize] = top;
                let [ca, cb] = refine([self.px, self.py], [ca, cb]);
                let (mut sa, mut sb) = (ca.clone(), cb.clone());
                sa.sort_unstable();
                sb.sort_unstable();
                if sa != sb || !self.order[..k].iter().all(|&u| ca[u as usize] == cb[self.map[u as usize] as usize]) {
                    continue;
                }
                Some((std::mem::replace(&mut self.cx, ca), std::mem::replace(&mut self.cy, cb)))
            } else {
                None
            };
            self.map[x as usize] = w;
            self.used[w as usize] = true;
            let flow = if self.faces_ok(k) { self.run(k + 1, leaf)? } else { Flow::Continue };
            self.map[x as usize] = NONE;
            self.used[w as usize] = false;
            if let Some((a, b)) = saved {
                self.cx = a;
                self.cy = b;
            }
            if let Flow::Stop = flow {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

/// Breadth-first order over components, each started at a vertex of its
/// rarest colour; also returns the position of each vertex's parent.
fn search_order(p: &Prepared, colours: &[u32]) -> (Vec<u32>, Vec<Option<u32>>) {
    let mut freq: HashMap<u32, usize> = HashMap::new();
    for &c in colours {
        *freq.entry(c).or_default() += 1;
    }
    let mut seen = vec![false; p.n];
    let mut order = Vec::new();
    let mut parent = Vec::new();
    for s in 0..p.n {
        if seen[s] {
            continue;
        }
        // Collect the component, then restart it at its rarest colour.
        let mut comp = vec![s];
        seen[s] = true;
        let mut i = 0;
        while i < comp.len() {
            for &w in &p.neighbors[comp[i]] {
                if !seen[w as usize] {
                    seen[w as usize] = true;
                    comp.push(w as usize);
                }
            }
            i += 1;
        }
        let start = *comp
            .iter()
            .min_by_key(|&&v| (freq[&colours[v]], v))
            .unwrap();
        let mut inner = HashSet::new();
        inner.insert(start);
        let mut queue = VecDeque::from([(start, None)]);
        while let Some((v, par)) = queue.pop_front() {
            order.push(v as u32);
            parent.push(par);
            for &w in &p.neighbors[v] {
                if inner.insert(w as usize) {
                    queue.push_back((w as usize, Some(v as u32)));
                }
            }
        }
    }
    (order, parent)
}

/// Enumerates the ways to extend a vertex bijection to darts and faces.
/// Faces are matched first, in an order where each face shares an edge with
/// an earlier one when possible, so every choice pins the edges it covers;
/// edges on no face are matched last.
struct Lifter<'a> {
    x: &'a Complex,
    y: &'a Complex,
    by_pair: HashMap<(u32, u32), Vec<EdgeId>>,
    faces_at: Vec<Vec<FaceId>>,
    face_order: Vec<usize>,
    free_edges: Vec<usize>,
    vmap: Vec<u32>,
    edge_map: Vec<Option<Dart>>,
    edge_used: Vec<bool>,
    face_map: Vec<FaceImage>,
    face_used: Vec<bool>,
    count: u64,
    cap: u64,
}

impl<'a> Lifter<'a> {
    fn new(x: &'a Complex, y: &'a Complex) -> Lifter<'a> {
        let h = y.skeleton();
        let mut by_pair: HashMap<(u32, u32), Vec<EdgeId>> = HashMap::new();
        for (i, e) in h.edges().iter().enumerate() {
            let (a, b) = (e.ends[0].0.min(e.ends[1].0), e.ends[0].0.max(e.ends[1].0));
            by_pair.entry((a, b)).or_default().push(EdgeId(i as u32));
        }
        let mut faces_at = vec![Vec::new(); h.vertex_count()];
        for f in y.face_ids() {
            let mut vs = y.face(f).boundary.corner_vertices(h);
            vs.sort();
            vs.dedup();
            for v in vs {
                faces_at[v.index()].push(f);
            }
        }
        let g = x.skeleton();
        let mut faces_on_edge = vec![Vec::new(); g.edge_count()];
        for (i, f) in x.faces().iter().enumerate() {
            for t in &f.boundary.steps {
                faces_on_edge[t.edge.index()].push(i);
            }
        }
        let mut placed = vec![false; x.face_count()];
        let mut face_order = Vec::new();
        for s in 0..x.face_count() {
            if placed[s] {
                continue;
            }
            placed[s] = true;
            let mut queue = VecDeque::from([s]);
            while let Some(f) = queue.pop_front() {
                face_order.push(f);
                for t in &x.faces()[f].boundary.steps {
                    for &n in &faces_on_edge[t.edge.index()] {
                        if !placed[n] {
                            placed[n] = true;
                            queue.push_back(n);
                        }
                    }
                }
            }
        }
        let free_edges = (0..g.edge_count()).filter(|&e| faces_on_edge[e].is_empty()).collect();
        let dummy = FaceImage {
            face: FaceId(0),
            offset: 0,
            reflect: false,
        };
        Lifter {
            x,
            y,
            by_pair,
            faces_at,
            face_order,
            free_edges,
            vmap: Vec::new(),
            edge_map: vec![None; g.edge_count()],
            edge_used: vec![false; h.edge_count()],
            face_map: vec![dummy; x.face_count()],
            face_used: vec![false; y.face_count()],
            count: 0,
            cap: u64::MAX,
        }
    }

    fn lift(&mut self, vmap: &[u32], visit: &mut dyn FnMut(&ComplexHom) -> Flow) -> Flow {
        self.vmap = vmap.to_vec();
        self.faces(0, visit)
    }

    fn emit(&mut self, visit: &mut dyn FnMut(&ComplexHom) -> Flow) -> Flow {
        if self.count >= self.cap {
            return Flow::Stop;
        }
        self.count += 1;
        let mut dart_map = Vec::with_capacity(2 * self.edge_map.len());
        for d in &self.edge_map {
            let d = d.expect("every edge is matched");
            dart_map.push(d);
            dart_map.push(d.mate());
        }
        let h = ComplexHom {
            graph: GraphHom {
                vertex_map: self.vmap.iter().map(|&v| VertexId(v)).collect(),
                dart_map,
            },
            face_map: self.face_map.clone(),
        };
        visit(&h)
    }

    /// Sends dart `d` of the source to dart `to`, recording newly matched
    /// edges in `fresh`. Fails on a clash with earlier choices.
    fn pin(&mut self, d: Dart, to: Dart, fresh: &mut Vec<usize>) -> bool {
        let (g, h) = (self.x.skeleton(), self.y.skeleton());
        let e = d.edge.index();
        let side0 = if d.side == 0 { to } else { to.mate() };
        match self.edge_map[e] {
            Some(prev) => prev == side0,
            None => {
                if self.edge_used[side0.edge.index()] {
                    return false;
                }
                let ok = (0..2u8).all(|s| {
                    let src = g.endpoint(Dart::new(d.edge, s));
                    let dst = h.endpoint(if s == 0 { side0 } else { side0.mate() });
                    self.vmap[src.index()] == dst.0
                });
                if ok {
                    self.edge_map[e] = Some(side0);
                    self.edge_used[side0.edge.index()] = true;
                    fresh.push(e);
                }
                ok
            }
        }
    }

    fn unpin(&mut self, fresh: &[usize]) {
        for &e in fresh {
            let d = self.edge_map[e].take().unwrap();
            self.edge_used[d.edge.index()] = false;
        }
    }

    fn faces(&mut self, k: usize, visit: &mut dyn FnMut(&ComplexHom) -> Flow) -> Flow {
        if k == self.face_order.len() {
            return self.edges(0, visit);
        }
        let f = self.face_order[k];
        let steps = self.x.faces()[f].boundary.steps.clone();
        let n = steps.len();
        let start = self.vmap[steps[0].tail(self.x.skeleton()).index()];
        let cands = self.faces_at[start as usize].clone();
        for g in cands {
            if self.face_used[g.index()] || self.y.face_len(g) != n {
                continue;
            }
            for reflect in [false, true] {
                for offset in 0..n as u32 {
                    let img = FaceImage { face: g, offset, reflect };
                    let mut fresh = Vec::new();
                    let ok = (0..n).all(|i| {
                        let to = img.step(self.y, i).tail_dart();
                        self.pin(steps[i].tail_dart(), to, &mut fresh)
                    });
                    if ok {
                        self.face_used[g.index()] = true;
                        self.face_map[f] = img;
                        let flow = self.faces(k + 1, visit);
                        self.face_used[g.index()] = false;
                        if let Flow::Stop = flow {
                            self.unpin(&fresh);
                            return Flow::Stop;
                        }
                    }
                    self.unpin(&fresh);
                }
            }
        }
        Flow::Continue
    }

    fn edges(&mut self, k: usize, visit: &mut dyn FnMut(&ComplexHom) -> Flow) -> Flow {
        if k == self.free_edges.len() {
            return self.emit(visit);
        }
        let e = self.free_edges[k];
        let ends = self.x.skeleton().edges()[e].ends;
        let (a, b) = (self.vmap[ends[0].index()], self.vmap[ends[1].index()]);
        let Some(cands) = self.by_pair.get(&(a.min(b), a.max(b))).cloned() else {
            return Flow::Continue;
        };
        let h = self.y.skeleton();
        for t in cands {
            if self.edge_used[t.index()] {
                continue;
            }
            let sides: &[u8] = if a == b {
                &[0, 1]
            } else if h.ends(t)[0].0 == a {
                &[0]
            } else {
                &[1]
            };
            self.edge_used[t.index()] = true;
            for &s in sides {
                self.edge_map[e] = Some(Dart::new(t, s));
                if let Flow::Stop = self.edges(k + 1, visit) {
                    self.edge_map[e] = None;
                    self.edge_used[t.index()] = false;
                    return Flow::Stop;
                }
            }
            self.edge_map[e] = None;
            self.edge_used[t.index()] = false;
        }
        Flow::Continue
    }
}

fn quick_reject(x: &Complex, y: &Complex) -> bool {
    let (g, h) = (x.skeleton(), y.skeleton());
    if g.vertex_count() != h.vertex_count() || g.edge_count() != h.edge_count() || x.face_count() != y.face_count() {
        return true;
    }
    let lens = |c: &Complex| {
        let mut v: Vec<usize> = c.faces().iter().map(|f| f.len()).collect();
        v.sort();
        v
    };
    lens(x) != lens(y)
}

pub fn complex_isomorphism(x: &Complex, y: &Complex) -> Result<Option<ComplexHom>> {
    complex_isomorphism_with_budget(x, y, DEFAULT_BUDGET)
}

pub fn complex_isomorphism_with_budget(x: &Complex, y: &Complex, budget: u64) -> Result<Option<ComplexHom>> {
    on_deep_stack(x, || isomorphism_search(x, y, budget))
}

/// The searches recurse once per vertex, so big complexes run on a thread
/// with a larger stack.
fn on_deep_stack<T: Send>(x: &Complex, f: impl FnOnce() -> T + Send) -> T {
    if x.skeleton().vertex_count() < 256 {
        return f();
    }
    std::thread::scope(|s| {
        std::thread::Builder::new()
            .stack_size(1 << 30)
            .spawn_scoped(s, f)
            .expect("spawn search thread")
            .join()
            .unwrap_or_else(|e| std::panic::resume_unwind(e))
    })
}

fn isomorphism_search(x: &Complex, y: &Complex, budget: u64) -> Result<Option<ComplexHom>> {
    if quick_reject(x, y) {
        return Ok(None);
    }
    let (px, py) = (Prepared::new(x), Prepared::new(y));
    let [cx, cy] = joint_colours([x, y], [&px, &py]);
    let (mut a, mut b) = (cx.clone(), cy.clone());
    a.sort();
    b.sort();
    if a != b {
        return Ok(None);
    }
    let mut search = VertexSearch::new(&px, &py, &cx, &cy, budget);
    let mut lifter = Lifter::new(x, y);
    let mut found = None;
    search.run(0, &mut |vmap| {
        let mut flow = Flow::Continue;
        lifter.lift(vmap, &mut |h| {
            found = Some(h.clone());
            flow = Flow::Stop;
            Flow::Stop
        });
        flow
    })?;
    Ok(found)
}

pub fn are_isomorphic(x: &Complex, y: &Complex) -> Result<bool> {
    Ok(complex_isomorphism(x, y)?.is_some())
}

/// A bijective homomorphism `g -> h`, if any. The search is unbounded.
pub fn graph_isomorphism(g: &MultiGraph, h: &MultiGraph) -> Option<GraphHom> {
    graph_isomorphism_with_budget(g, h, u64::MAX).ok().flatten()
}

pub fn graph_isomorphism_with_budget(g: &MultiGraph, h: &MultiGraph, budget: u64) -> Result<Option<GraphHom>> {
    let (x, y) = (Complex::from_graph(g.clone()), Complex::from_graph(h.clone()));
    Ok(complex_isomorphism_with_budget(&x, &y, budget)?.map(|m| m.graph))
}

pub fn complex_automorphism_group(x: &Complex) -> Result<AutGroup> {
    complex_automorphism_group_with_budget(x, DEFAULT_BUDGET)
}

pub fn complex_automorphism_group_with_budget(x: &Complex, budget: u64) -> Result<AutGroup> {
    on_deep_stack(x, || automorphism_search(x, budget))
}

fn automorphism_search(x: &Complex, budget: u64) -> Result<AutGroup> {
    let layout = Layout::of(x);
    let mut group = PermGroup::trivial(layout.degree());
    let p = Prepared::new(x);
    let [colours, _] = joint_colours([x, x], [&p, &p]);
    let mut lifter = Lifter::new(x, x);

    // Automorphisms fixing every vertex.
    let identity: Vec<u32> = (0..p.n as u32).collect();
    lifter.cap = KERNEL_CAP;
    lifter.lift(&identity, &mut |h| {
        group.add_generator(hom_to_permutation(x, h));
        Flow::Continue
    });
    if lifter.count >= KERNEL_CAP {
        return Err(Error::TooLarge(KERNEL_CAP));
    }
    lifter.cap = u64::MAX;

    let mut search = VertexSearch::new(&p, &p, &colours, &colours, budget);
    let order = search.order.clone();
    for i in (0..p.n).rev() {
        let xi = order[i];
        let prefix: HashSet<u32> = order[..i].iter().copied().collect();
        let candidates: Vec<u32> = (0..p.n as u32)
            .filter(|&w| {
                w != xi
                    && !prefix.contains(&w)
                    && colours[w as usize] == colours[xi as usize]
                    && p.m(w, w) == p.m(xi, xi)
                    && order[..i].iter().all(|&u| p.m(xi, u) == p.m(w, u))
            })
            .collect();
        let mut failed = Vec::new();
        for w in candidates {
            if point_orbit(&group, xi).contains(&w) {
                continue;
            }
            let around = point_orbit(&group, w);
            if failed.iter().any(|f| around.contains(f)) {
                continue;
            }
            // Individualize the fixed prefix and the candidate pair, then refine.
            let top = colours.iter().max().map_or(0, |&c| c + 1);
            let (mut ca, mut cb) = (colours.clone(), colours.clone());
            for (j, &u) in order[..i].iter().enumerate() {
                ca[u as usize] = top + j as u32;
                cb[u as usize] = top + j as u32;
            }
            ca[xi as usize] = top + i as u32;
            cb[w as usize] = top + i as u32;
            let [ca, cb] = refine([&p, &p], [ca, cb]);
            let (mut sa, mut sb) = (ca.clone(), cb.clone());
            sa.sort_unstable();
            sb.sort_unstable();
            if sa != sb {
                failed.push(w);
                continue;
            }
            search.cx = ca;
            search.cy = cb;
            for (j, &u) in order[..i].iter().enumerate() {
                search.forced[j] = Some(u);
            }
            search.forced[i] = Some(w);
            let mut found = None;
            search.run(0, &mut |vmap| {
                let mut flow = Flow::Continue;
                lifter.lift(vmap, &mut |h| {
                    found = Some(h.clone());
                    flow = Flow::Stop;
                    Flow::Stop
                });
                flow
            })?;
            search.forced.iter_mut().for_each(|f| *f = None);
            match found {
                Some(h) => {
                    group.add_generator(hom_to_permutation(x, &h));
                }
                None => failed.push(w),
            }
        }
    }
    Ok(AutGroup { group, layout })
}

fn point_orbit(group: &PermGroup, x: u32) -> HashSet<u32> {
    let mut seen = HashSet::from([x]);
    let mut stack = vec![x];
    while let Some(p) = stack.pop() {
        for g in group.generators() {
            let q = g.image(p);
            if seen.insert(q) {
                stack.push(q);
            }
        }
    }
    seen
}

pub fn graph_automorphism_group(g: &MultiGraph) -> Result<AutGroup> {
    complex_automorphism_group(&Complex::from_graph(g.clone()))
}

/// A single orbit on flags; complexes without flags count as transitive.
pub fn is_flag_transitive(x: &Complex) -> Result<bool> {
    Ok(complex_automorphism_group(x)?.flag_orbits().len() <= 1)
}

pub fn is_vertex_transitive(g: &MultiGraph) -> Result<bool> {
    Ok(graph_automorphism_group(g)?.vertex_orbits().len() <= 1)
}

pub fn is_edge_transitive(g: &MultiGraph) -> Result<bool> {
    Ok(graph_automorphism_group(g)?.edge_orbits().len() <= 1)
}

/// Transitive on darts, i.e. on ordered pairs of adjacent vertices.
pub fn is_arc_transitive(g: &MultiGraph) -> Result<bool> {
    Ok(graph_automorphism_group(g)?.dart_orbits().len() <= 1)
}

/// Subgroup of `Aut(ambient)` generated by factor automorphisms acting on one
/// coordinate and by exchanges of isomorphic factors. With `restrict_to`, the
/// stabilizer of that component (in `Complex::components` order) acting on
/// `component_subcomplex(ambient, c)`.
pub fn cartesian_subgroup(
    factors: &[Complex],
    ambient: &TensorProduct,
    restrict_to: Option<usize>,
) -> Result<AutGroup> {
    if factors != ambient.factors.as_slice() {
        return Err(Error::LabelMapMissing);
    }
    let x = ambient.complex();
    let m = factors.len();
    let base: Vec<ComplexHom> = (0..m).map(|i| ambient.projection(i).clone()).collect();
    let mut gens = Vec::new();
    for i in 0..m {
        let aut = complex_automorphism_group(&factors[i])?;
        for s in aut.group.generators() {
            let sigma = permutation_to_hom(&factors[i], s);
            let mut maps = base.clone();
            maps[i] = base[i].then(&sigma, &factors[i]);
            let psi = ambient.universal(&maps).ok_or(Error::LabelMapMissing)?;
            gens.push(hom_to_permutation(x, &psi));
        }
    }
    // Adjacent members of each isomorphism class are exchanged.
    for j in 1..m {
        for i in (0..j).rev() {
            if let Some(tau) = complex_isomorphism(&factors[i], &factors[j])? {
                let mut maps = base.clone();
                maps[i] = base[j].then(&tau.inverse(&factors[i]), &factors[i]);
                maps[j] = base[i].then(&tau, &factors[j]);
                let psi = ambient.universal(&maps).ok_or(Error::LabelMapMissing)?;
                gens.push(hom_to_permutation(x, &psi));
                break;
            }
        }
    }
    let group = PermGroup::from_generators(Layout::of(x).degree(), gens);
    match restrict_to {
        None => Ok(AutGroup {
            group,
            layout: Layout::of(x),
        }),
        Some(c) => restrict_to_component(x, &group, c),
    }
}

pub fn component_subcomplex(x: &Complex, c: usize) -> Complex {
    x.subcomplex(&x.components()[c]).0
}

/// The setwise stabilizer of component `c`, acting on that component alone.
pub fn restrict_to_component(x: &Complex, group: &PermGroup, c: usize) -> Result<AutGroup> {
    let comps = x.components();
    if c >= comps.len() {
        return Err(Error::RangeError(format!("component {c} of {}", comps.len())));
    }
    let mut comp_of = vec![0; x.skeleton().vertex_count()];
    for (i, vs) in comps.iter().enumerate() {
        for v in vs {
            comp_of[v.index()] = i;
        }
    }
    let act = |g: &Permutation, i: usize| comp_of[g.image(comps[i][0].0) as usize];
    let degree = group.degree();
    let mut transversal: HashMap<usize, Permutation> = HashMap::from([(c, Permutation::identity(degree))]);
    let mut queue = vec![c];
    let mut k = 0;
    while k < queue.len() {
        let p = queue[k];
        for s in group.generators() {
            let q = act(s, p);
            if !transversal.contains_key(&q) {
                let u = transversal[&p].then(s);
                transversal.insert(q, u);
                queue.push(q);
            }
        }
        k += 1;
    }
    let mut stabilizer = Vec::new();
    for &p in &queue {
        for s in group.generators() {
            let q = act(s, p);
            stabilizer.push(transversal[&p].then(s).then(&transversal[&q].inverse()));
        }
    }
    let (sub, map) = x.subcomplex(&comps[c]);
    let (lx, ls) = (Layout::of(x), Layout::of(&sub));
    let mut old_vertex = vec![u32::MAX; lx.vertices];
    for (i, v) in map.vertices.iter().enumerate() {
        old_vertex[v.index()] = i as u32;
    }
    let mut old_edge = vec![u32::MAX; x.skeleton().edge_count()];
    for (i, e) in map.edges.iter().enumerate() {
        old_edge[e.index()] = i as u32;
    }
    let mut old_face = vec![u32::MAX; lx.faces];
    for (i, f) in map.faces.iter().enumerate() {
        old_face[f.index()] = i as u32;
    }
    let restrict = |g: &Permutation| -> Permutation {
        let mut out = vec![0u32; ls.degree()];
        for (i, v) in map.vertices.iter().enumerate() {
            out[i] = old_vertex[g.image(lx.vertex(*v)) as usize];
        }
        for (i, e) in map.edges.iter().enumerate() {
            for side in 0..2 {
                let img = g.image(lx.dart(Dart::new(*e, side))) as usize - lx.vertices;
                let d = Dart::from_index(img);
                let new = Dart::new(EdgeId(old_edge[d.edge.index()]), d.side);
                out[ls.dart(Dart::new(EdgeId(i as u32), side)) as usize] = ls.dart(new);
            }
        }
        for (i, f) in map.faces.iter().enumerate() {
            let img = g.image(lx.face(*f)) as usize - lx.face_range().start;
            out[ls.face(FaceId(i as u32)) as usize] = ls.face(FaceId(old_face[img]));
            for fl in sub.flags().into_iter().filter(|fl| fl.corner.face.index() == i) {
                let mut old = fl;
                old.corner.face = *f;
                let mut img = lx.flag_at(g.image(lx.flag(old)));
                img.corner.face = FaceId(old_face[img.corner.face.index()]);
                out[ls.flag(fl) as usize] = ls.flag(img);
            }
        }
        Permutation(out)
    };
    let group = PermGroup::from_generators(ls.degree(), stabilizer.iter().map(restrict));
    Ok(AutGroup { group, layout: ls })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_products::{complex_tensor_product, is_complex_homomorphism};
    use crate::walk::Traversal;

    fn polygon(n: usize) -> Complex {
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        let es: Vec<_> = (0..n).map(|i| g.add_edge(format!("e{i}"), vs[i], vs[(i + 1) % n])).collect();
        let mut x = Complex::from_graph(g);
        x.add_face("f", es.into_iter().map(Traversal::forward).collect()).unwrap();
        x
    }

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

    #[test]
    fn polygon_groups_are_dihedral() {
        for n in 3..8 {
            let a = complex_automorphism_group(&polygon(n)).unwrap();
            assert_eq!(a.order(), 2 * n as u128);
            assert_eq!(a.flag_orbits().len(), 1);
        }
    }

    #[test]
    fn complete_graph_groups() {
        for n in 2..6 {
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(graph_automorphism_group(&complete(n)).unwrap().order(), fact);
        }
        assert!(is_arc_transitive(&complete(4)).unwrap());
    }

    #[test]
    fn loops_and_parallels_enter_the_kernel() {
        let mut g = MultiGraph::new();
        let v = g.add_vertex("v");
        g.add_edge("a", v, v);
        g.add_edge("b", v, v);
        // two loops, each reversible, and exchangeable
        assert_eq!(graph_automorphism_group(&g).unwrap().order(), 8);
    }

    #[test]
    fn isomorphisms_found_and_refused() {
        let c6 = polygon(6);
        let mut relabel = MultiGraph::new();
        let vs: Vec<_> = (0..6).map(|i| relabel.add_vertex(format!("w{i}"))).collect();
        for i in 0..6 {
            relabel.add_edge(format!("x{i}"), vs[(i * 5) % 6], vs[(i * 5 + 5) % 6]);
        }
        assert!(graph_isomorphism(c6.skeleton(), &relabel).is_some());
        let mut two = MultiGraph::new();
        let vs: Vec<_> = (0..6).map(|i| two.add_vertex(format!("u{i}"))).collect();
        for i in 0..6 {
            two.add_edge(format!("y{i}"), vs[i], vs[3 * (i / 3) + (i + 1) % 3]);
        }
        assert!(graph_isomorphism(c6.skeleton(), &two).is_none());

        let p = complex_tensor_product(&polygon(3), &polygon(4));
        let q = complex_tensor_product(&polygon(4), &polygon(3));
        let h = complex_isomorphism(&p.complex, &q.complex).unwrap().unwrap();
        assert!(is_complex_homomorphism(&p.complex, &q.complex, &h));
        assert!(h.is_bijective(&p.complex, &q.complex));
    }

    #[test]
    fn permutation_round_trip() {
        let x = polygon(5);
        let a = complex_automorphism_group(&x).unwrap();
        for g in a.group.elements(100) {
            let h = permutation_to_hom(&x, &g);
            assert!(is_complex_homomorphism(&x, &x, &h));
            assert_eq!(hom_to_permutation(&x, &h), g);
        }
    }

    #[test]
    fn cartesian_square_of_triangle() {
        let t = TensorProduct::new(vec![polygon(3), polygon(3)]).unwrap();
        let cart = cartesian_subgroup(&t.factors.clone(), &t, None).unwrap();
        assert_eq!(cart.order(), 6 * 6 * 2);
        let full = complex_automorphism_group(t.complex()).unwrap();
        assert!(cart.group.is_subgroup_of(&full.group));
        assert_eq!(
            cartesian_subgroup(&[polygon(4), polygon(3)], &t, None).unwrap_err(),
            Error::LabelMapMissing
        );
    }
}
