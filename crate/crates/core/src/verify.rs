//! Verification suites: each checks one structural statement about products
//! over built-in fixtures and seeded random instances.
//!
//! Trial `t` of a suite run with seed `s` draws from `rng(s + t)`, so any
//! single instance can be rebuilt from the seed and its trial number.

use std::fmt::Write as _;

use crate::blocks::{
    antipodal_multiplicities, block_graph, face_blocks_by_label, face_blocks_intrinsic, verify_block_incidence_equiv,
    IncidenceVerdict,
};
use crate::complex_products::{complex_tensor_product, TensorProduct};
use crate::document::emit;
use crate::error::{Error, Result};
use crate::factorization::{
    class_product, complex_prime_factorization, graph_prime_factorization_with_budget, GraphClass, SPLIT_BUDGET,
};
use crate::fixtures::{
    complete, complete_bipartite, cube_surface, cycle, hexagon_flower, hexagon_strip, loop_graph, path, polygon,
    projective_plane, tetrahedron, torus,
};
use crate::graph_products::{cartesian_product, tensor_product};
use crate::homsearch::count_graph_homomorphisms;
use crate::multigraph::{MultiGraph, VertexId};
use crate::polycomplex::Complex;
use crate::random::{random_complex, random_graph, relabel_complex, relabel_graph, rng, RandomShape, SeededRng};
use crate::symmetry::{
    are_isomorphic, cartesian_subgroup, complex_automorphism_group_with_budget, component_subcomplex,
    graph_isomorphism_with_budget, is_edge_transitive, DEFAULT_BUDGET,
};

/// Suite ids with one-line descriptions.
pub const SUITES: &[(&str, &str)] = &[
    ("e8", "the link at a product vertex is the product of the links"),
    ("e9", "products of flag-transitive complexes are flag-transitive"),
    ("bf", "a product of connected graphs has 2 components if both are bipartite, else 1"),
    ("e3a", "homomorphism counts into loops and into products"),
    ("g3", "prime factorization of connected non-bipartite graphs with loops is unique"),
    ("g11", "prime factorization of simple complexes recovers the factors"),
    ("g12", "automorphisms of products of primes are Cartesian"),
    ("h2", "automorphisms of even cycle products are Cartesian from length 6 on"),
    ("h6", "face blocks: label classes, antipodal sharing and block diameter"),
    ("h8", "incident face blocks: one-coordinate incidence versus face-wise incidence"),
    ("blockgraph", "the block graph is the Cartesian product of the face incidence graphs"),
];

#[derive(Clone, Copy, Debug)]
pub struct SuiteOptions {
    pub seed: u64,
    pub trials: usize,
    /// Node budget handed to every isomorphism and automorphism search.
    pub budget: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        SuiteOptions {
            seed: 0,
            trials: 20,
            budget: DEFAULT_BUDGET,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceResult {
    pub name: String,
    pub passed: bool,
    pub detail: String,
    /// On failure, a document rebuilding the instance.
    pub reproduction: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerificationReport {
    pub suite: String,
    pub seed: u64,
    pub trials: usize,
    pub instances: Vec<InstanceResult>,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.instances.iter().all(|i| i.passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &InstanceResult> {
        self.instances.iter().filter(|i| !i.passed)
    }

    /// Plain-text report. Contains no timings, so equal runs render equally.
    pub fn render(&self) -> String {
        let title = SUITES.iter().find(|s| s.0 == self.suite).map_or("", |s| s.1);
        let mut out = format!("suite {}: {}\nseed {} trials {}\n", self.suite, title, self.seed, self.trials);
        for i in &self.instances {
            let tag = if i.passed { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{tag} {}: {}", i.name, i.detail);
            if let Some(r) = &i.reproduction {
                for line in r.lines() {
                    let _ = writeln!(out, "    {line}");
                }
            }
        }
        let ok = self.instances.iter().filter(|i| i.passed).count();
        let verdict = if self.passed() { "PASS" } else { "FAIL" };
        let _ = writeln!(out, "result: {verdict} ({ok}/{} instances)", self.instances.len());
        out
    }
}

/// A reproduction document: how the instance was built, then each input
/// complex as `.pcc` text.
pub fn reproduction(construction: &str, complexes: &[(&str, &Complex)]) -> String {
    let mut out = String::new();
    for line in construction.lines() {
        let _ = writeln!(out, "# {line}");
    }
    for (name, x) in complexes {
        let _ = writeln!(out, "# --- {name}");
        out.push_str(&emit(x));
    }
    out
}

struct Collector {
    instances: Vec<InstanceResult>,
}

impl Collector {
    fn new() -> Collector {
        Collector { instances: Vec::new() }
    }

    fn record(&mut self, name: impl Into<String>, passed: bool, detail: impl Into<String>, repro: impl FnOnce() -> String) {
        let reproduction = if passed { None } else { Some(repro()) };
        self.instances.push(InstanceResult {
            name: name.into(),
            passed,
            detail: detail.into(),
            reproduction,
        });
    }
}

fn trial_rng(opts: &SuiteOptions, t: usize) -> SeededRng {
    rng(opts.seed.wrapping_add(t as u64))
}

fn faceless(g: MultiGraph) -> Complex {
    Complex::from_graph(g)
}

pub fn run_suite(id: &str, opts: &SuiteOptions) -> Result<VerificationReport> {
    let instances = match id {
        "e8" => suite_e8(opts)?,
        "e9" => suite_e9(opts)?,
        "bf" => suite_bf(opts)?,
        "e3a" => suite_e3a(opts)?,
        "g3" => suite_g3(opts)?,
        "g11" => suite_g11(opts)?,
        "g12" => suite_g12(opts)?,
        "h2" => suite_h2(opts)?,
        "h6" => suite_h6()?,
        "h8" => suite_h8()?,
        "blockgraph" => suite_blockgraph(opts)?,
        _ => {
            let known: Vec<&str> = SUITES.iter().map(|s| s.0).collect();
            return Err(Error::BadParameter(format!("unknown suite `{id}`; known: {}", known.join(", "))));
        }
    };
    Ok(VerificationReport {
        suite: id.to_string(),
        seed: opts.seed,
        trials: opts.trials,
        instances,
    })
}

/// Checks every vertex pair of `x ⊗ y`. Returns the number of pairs and the
/// first failing pair.
pub fn check_link_products(x: &Complex, y: &Complex, budget: u64) -> Result<(usize, Option<(VertexId, VertexId)>)> {
    let p = complex_tensor_product(x, y);
    let mut pairs = 0;
    for v in x.skeleton().vertices() {
        let lx = x.link(v)?;
        for u in y.skeleton().vertices() {
            let ly = y.link(u)?;
            let expected = tensor_product(&lx.graph, &ly.graph).graph;
            let actual = p.complex.link(p.vertex(v, u))?.graph;
            pairs += 1;
            if graph_isomorphism_with_budget(&expected, &actual, budget)?.is_none() {
                return Ok((pairs, Some((v, u))));
            }
        }
    }
    Ok((pairs, None))
}

fn suite_e8(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let shape = RandomShape::default();
    let mut c = Collector::new();
    for t in 0..opts.trials {
        let mut r = trial_rng(opts, t);
        let x = random_complex(&mut r, &shape);
        let y = random_complex(&mut r, &shape);
        let (pairs, bad) = check_link_products(&x, &y, opts.budget)?;
        let detail = match bad {
            None => format!("{pairs} vertex pair(s)"),
            Some((v, u)) => format!(
                "links differ at ({}, {})",
                x.skeleton().vertex_name(v),
                y.skeleton().vertex_name(u)
            ),
        };
        c.record(format!("pair {t}"), bad.is_none(), detail, || {
            reproduction(
                &format!("seed {} trial {t}: X and Y are the two random complexes drawn", opts.seed + t as u64),
                &[("X", &x), ("Y", &y)],
            )
        });
    }
    Ok(c.instances)
}

fn e9_factors() -> Vec<(String, Complex)> {
    let mut out: Vec<(String, Complex)> = (1..=6).map(|n| (format!("polygon {n}"), polygon(n).unwrap())).collect();
    out.push(("tetrahedron".into(), tetrahedron()));
    out.push(("cube".into(), cube_surface()));
    out.push(("torus".into(), torus()));
    out.push(("projective plane".into(), projective_plane()));
    out
}

fn flag_transitive(x: &Complex, budget: u64) -> Result<bool> {
    Ok(complex_automorphism_group_with_budget(x, budget)?.flag_orbits().len() <= 1)
}

fn suite_e9(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut transitive = Vec::new();
    for (name, x) in e9_factors() {
        if flag_transitive(&x, opts.budget)? {
            transitive.push((name, x));
        }
    }
    let mut c = Collector::new();
    for i in 0..transitive.len() {
        for j in i..transitive.len() {
            let (a, x) = &transitive[i];
            let (b, y) = &transitive[j];
            let p = complex_tensor_product(x, y);
            let orbits = complex_automorphism_group_with_budget(&p.complex, opts.budget)?.flag_orbits().len();
            c.record(format!("{a} x {b}"), orbits <= 1, format!("{} flags, {orbits} orbit(s)", p.complex.flag_count()), || {
                reproduction(&format!("product of fixtures {a} and {b}"), &[("X", x), ("Y", y)])
            });
        }
    }
    Ok(c.instances)
}

fn random_connected_simple(r: &mut SeededRng, max_vertices: usize) -> MultiGraph {
    let shape = RandomShape {
        max_vertices,
        max_edges: 2 * max_vertices,
        max_faces: 0,
        max_face_len: 1,
        loops: false,
    };
    loop {
        let g = random_graph(r, &shape);
        if g.is_simple() && g.is_connected() && g.edge_count() > 0 {
            return g;
        }
    }
}

fn suite_bf(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut graphs: Vec<(String, MultiGraph)> = vec![
        ("P1".into(), path(1)),
        ("P3".into(), path(3)),
        ("K4".into(), complete(4)),
        ("K5".into(), complete(5)),
        ("K2,3".into(), complete_bipartite(2, 3)),
        ("K3,3".into(), complete_bipartite(3, 3)),
    ];
    for n in 3..=6 {
        graphs.push((format!("C{n}"), cycle(n)?));
    }
    for t in 0..opts.trials {
        graphs.push((format!("random {t}"), random_connected_simple(&mut trial_rng(opts, t), 8)));
    }
    let mut c = Collector::new();
    for i in 0..graphs.len() {
        for j in i..graphs.len() {
            let (a, g) = &graphs[i];
            let (b, h) = &graphs[j];
            let expected = if g.is_bipartite() && h.is_bipartite() { 2 } else { 1 };
            let found = tensor_product(g, h).graph.components().len();
            c.record(format!("{a} x {b}"), found == expected, format!("{found} component(s), expected {expected}"), || {
                reproduction(
                    &format!("seed {}: tensor product of {a} and {b}", opts.seed),
                    &[("left", &faceless(g.clone())), ("right", &faceless(h.clone()))],
                )
            });
        }
    }
    Ok(c.instances)
}

/// Homomorphism count by summing over every vertex map the number of ways
/// to send each edge to a dart between the images.
pub fn brute_force_hom_count(g: &MultiGraph, h: &MultiGraph) -> u64 {
    let n = g.vertex_count();
    let k = h.vertex_count();
    if n == 0 {
        return 1;
    }
    if k == 0 {
        return 0;
    }
    let mut between = vec![0u64; k * k];
    for d in h.darts() {
        between[h.endpoint(d).index() * k + h.endpoint(d.mate()).index()] += 1;
    }
    let mut map = vec![0usize; n];
    let mut total = 0;
    loop {
        total += g
            .edges()
            .iter()
            .map(|e| between[map[e.ends[0].index()] * k + map[e.ends[1].index()]])
            .product::<u64>();
        let mut i = 0;
        while i < n && map[i] + 1 == k {
            map[i] = 0;
            i += 1;
        }
        if i == n {
            return total;
        }
        map[i] += 1;
    }
}

/// Every multigraph with at most `max_edges` edges and no isolated
/// vertices, up to relabelling, possibly more than once. The one-vertex
/// graph stands in for the edgeless case.
pub fn small_multigraphs(max_edges: usize) -> Vec<MultiGraph> {
    fn grow(edges: &mut Vec<(usize, usize)>, used: usize, max: usize, out: &mut Vec<MultiGraph>) {
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..used.max(1)).map(|i| g.add_vertex(format!("v{i}"))).collect();
        for (k, &(a, b)) in edges.iter().enumerate() {
            g.add_edge(format!("e{k}"), vs[a], vs[b]);
        }
        out.push(g);
        if edges.len() == max {
            return;
        }
        // Endpoints are existing vertices or the next unused labels.
        for a in 0..=used {
            let top = if a == used { used + 1 } else { used };
            for b in a..=top {
                edges.push((a, b));
                grow(edges, used.max(b + 1), max, out);
                edges.pop();
            }
        }
    }
    let mut out = Vec::new();
    grow(&mut Vec::new(), 0, max_edges, &mut out);
    out
}

fn suite_e3a(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    let lp = loop_graph();
    let all = small_multigraphs(4);
    let bad = all
        .iter()
        .find(|g| count_graph_homomorphisms(g, &lp) != 1u64 << g.edge_count());
    c.record(
        "loop target",
        bad.is_none(),
        format!("{} graphs with at most 4 edges", all.len()),
        || reproduction("hom count into one loop differs from 2^|E|", &[("graph", &faceless(bad.unwrap().clone()))]),
    );
    let source = RandomShape {
        max_vertices: 4,
        max_edges: 5,
        max_faces: 0,
        max_face_len: 1,
        loops: true,
    };
    let target = RandomShape {
        max_vertices: 3,
        max_edges: 4,
        ..source
    };
    for t in 0..opts.trials {
        let mut r = trial_rng(opts, t);
        let g = random_graph(&mut r, &source);
        let h1 = random_graph(&mut r, &target);
        let h2 = random_graph(&mut r, &target);
        let p = tensor_product(&h1, &h2).graph;
        let lhs = count_graph_homomorphisms(&g, &p);
        let rhs = count_graph_homomorphisms(&g, &h1) * count_graph_homomorphisms(&g, &h2);
        let oracle = brute_force_hom_count(&g, &p);
        c.record(
            format!("triple {t}"),
            lhs == rhs && lhs == oracle,
            format!("{lhs} = {rhs}, brute force {oracle}"),
            || {
                reproduction(
                    &format!("seed {} trial {t}: source, then two targets", opts.seed + t as u64),
                    &[("source", &faceless(g.clone())), ("left", &faceless(h1.clone())), ("right", &faceless(h2.clone()))],
                )
            },
        );
    }
    let k3 = complete(3);
    let kk = tensor_product(&k3, &k3).graph;
    let searched = count_graph_homomorphisms(&k3, &kk);
    let brute = brute_force_hom_count(&k3, &kk);
    c.record(
        "K3 into K3 x K3",
        searched == 36 && brute == 36,
        format!("search {searched}, brute force {brute}, expected 36"),
        || reproduction("K3 into K3 x K3", &[("K3", &faceless(k3.clone()))]),
    );
    Ok(c.instances)
}

/// Simple connected non-bipartite graph with loops allowed, on 2 to 4 vertices.
fn random_s0_factor(r: &mut SeededRng) -> MultiGraph {
    use rand::Rng;
    loop {
        let n = r.gen_range(2..=4);
        let mut g = MultiGraph::new();
        let vs: Vec<_> = (0..n).map(|i| g.add_vertex(format!("v{i}"))).collect();
        let mut k = 0;
        for a in 0..n {
            for b in a..n {
                let p = if a == b { 0.35 } else { 0.6 };
                if r.gen_bool(p) {
                    g.add_edge(format!("e{k}"), vs[a], vs[b]);
                    k += 1;
                }
            }
        }
        if g.is_connected() && !g.is_bipartite() {
            return g;
        }
    }
}

fn same_graph_multiset(a: &[MultiGraph], b: &[MultiGraph], budget: u64) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for g in a {
        let mut found = false;
        for (j, h) in b.iter().enumerate() {
            if !used[j] && graph_isomorphism_with_budget(g, h, budget)?.is_some() {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn sizes(gs: &[MultiGraph]) -> String {
    let s: Vec<String> = gs.iter().map(|g| g.vertex_count().to_string()).collect();
    format!("[{}]", s.join(","))
}

fn suite_g3(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    let factor = |g: &MultiGraph| graph_prime_factorization_with_budget(g, GraphClass::S0, SPLIT_BUDGET);
    for t in 0..opts.trials {
        let mut r = trial_rng(opts, t);
        let mut gens = vec![random_s0_factor(&mut r), random_s0_factor(&mut r)];
        if rand::Rng::gen_bool(&mut r, 0.3) {
            let third = random_s0_factor(&mut r);
            if gens.iter().map(|g| g.vertex_count()).product::<usize>() * third.vertex_count() <= 36 {
                gens.push(third);
            }
        }
        let product = class_product(&gens, GraphClass::S0)?;
        let mut expected = Vec::new();
        for g in &gens {
            expected.extend(factor(g)?.factors);
        }
        let found = factor(&product)?;
        let copy = relabel_graph(&product, &mut r);
        let found_copy = factor(&copy)?;
        let unique = found.verify(&product)
            && found_copy.verify(&copy)
            && same_graph_multiset(&found.factors, &expected, opts.budget)?
            && same_graph_multiset(&found_copy.factors, &expected, opts.budget)?;
        let loop_free = !is_edge_transitive(&product)? || found.factors.iter().all(|f| !f.has_loops());
        let gen_docs: Vec<Complex> = gens.iter().cloned().map(faceless).collect();
        c.record(
            format!("product {t}"),
            unique && loop_free,
            format!("{} vertices, primes of sizes {}", product.vertex_count(), sizes(&found.factors)),
            || {
                let named: Vec<(&str, &Complex)> = gen_docs.iter().map(|x| ("generator", x)).collect();
                reproduction(
                    &format!("seed {} trial {t}: direct product (loops as units) of the generators", opts.seed + t as u64),
                    &named,
                )
            },
        );
    }
    for (name, g) in [("K3 x K3", tensor_product(&complete(3), &complete(3)).graph), ("K3 x K4", tensor_product(&complete(3), &complete(4)).graph)] {
        let f = factor(&g)?;
        let transitive = is_edge_transitive(&g)?;
        let ok = f.verify(&g) && f.factors.len() == 2 && (!transitive || f.factors.iter().all(|p| !p.has_loops()));
        c.record(name, ok, format!("primes of sizes {}, edge-transitive {transitive}", sizes(&f.factors)), || {
            reproduction(name, &[("graph", &faceless(g.clone()))])
        });
    }
    Ok(c.instances)
}

fn g11_fixtures() -> Vec<(&'static str, Vec<Complex>)> {
    vec![
        ("tetrahedron x tetrahedron", vec![tetrahedron(), tetrahedron()]),
        ("triangle x pentagon", vec![polygon(3).unwrap(), polygon(5).unwrap()]),
        ("triangle x triangle", vec![polygon(3).unwrap(), polygon(3).unwrap()]),
    ]
}

fn same_complex_multiset(a: &[Complex], b: &[Complex]) -> Result<bool> {
    if a.len() != b.len() {
        return Ok(false);
    }
    let mut used = vec![false; b.len()];
    for x in a {
        let mut found = false;
        for (j, y) in b.iter().enumerate() {
            if !used[j] && are_isomorphic(x, y)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

fn suite_g11(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    for (name, factors) in g11_fixtures() {
        let p = TensorProduct::new(factors.clone())?;
        let mut inputs = vec![("as built".to_string(), p.complex().clone())];
        for t in 0..opts.trials.min(5) {
            inputs.push((format!("relabelled {t}"), relabel_complex(p.complex(), &mut trial_rng(opts, t))));
        }
        for (label, x) in inputs {
            let f = complex_prime_factorization(&x)?;
            let ok = f.verify(&x) && same_complex_multiset(&f.factors, &factors)?;
            c.record(format!("{name}, {label}"), ok, format!("{} prime factor(s)", f.factors.len()), || {
                reproduction(&format!("seed {}: {name}, {label}", opts.seed), &[("input", &x)])
            });
        }
    }
    Ok(c.instances)
}

fn suite_g12(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    for (name, factors) in g11_fixtures() {
        let p = TensorProduct::new(factors.clone())?;
        let aut = complex_automorphism_group_with_budget(p.complex(), opts.budget)?;
        let cart = cartesian_subgroup(&p.factors, &p, None)?;
        let equal = aut.group.same_group(&cart.group);
        let product_ft = aut.flag_orbits().len() <= 1;
        let mut factors_ft = true;
        if product_ft {
            for x in &complex_prime_factorization(p.complex())?.factors {
                factors_ft &= flag_transitive(x, opts.budget)?;
            }
        }
        c.record(
            name,
            equal && factors_ft,
            format!(
                "|Aut| = {}, Cartesian subgroup {}, flag-transitive product {product_ft}",
                aut.order(),
                cart.order()
            ),
            || reproduction(name, &[("product", p.complex())]),
        );
    }
    Ok(c.instances)
}

fn suite_h2(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    for (n, m) in [(2, 2), (3, 2), (4, 2), (5, 2), (3, 3)] {
        let factors = vec![faceless(cycle(2 * n)?); m];
        let p = TensorProduct::new(factors)?;
        let x = p.complex();
        for comp in 0..x.components().len() {
            let sub = component_subcomplex(x, comp);
            let full = complex_automorphism_group_with_budget(&sub, opts.budget)?;
            let cart = cartesian_subgroup(&p.factors, &p, Some(comp))?;
            let equal = full.group.same_group(&cart.group);
            let proper = cart.group.is_subgroup_of(&full.group) && cart.order() < full.order();
            let (ok, expect) = if n == 2 { (proper, "proper subgroup") } else { (equal, "equal") };
            c.record(
                format!("C{}^{m} component {comp}", 2 * n),
                ok,
                format!("|Aut| = {}, Cartesian {}, expected {expect}", full.order(), cart.order()),
                || reproduction(&format!("component {comp} of the {m}-fold product of C{}", 2 * n), &[("component", &sub)]),
            );
        }
    }
    Ok(c.instances)
}

fn hexagon_products() -> Vec<(&'static str, Vec<Complex>)> {
    let hex = || polygon(6).unwrap();
    vec![
        ("square x square", vec![polygon(4).unwrap(), polygon(4).unwrap()]),
        ("hexagon x hexagon", vec![hex(), hex()]),
        ("hexagon x strip2", vec![hex(), hexagon_strip(2).unwrap()]),
        ("strip2 x strip3", vec![hexagon_strip(2).unwrap(), hexagon_strip(3).unwrap()]),
        ("hexagon x flower", vec![hex(), hexagon_flower()]),
        ("hexagon^3", vec![hex(), hex(), hex()]),
    ]
}

fn suite_h6() -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    for (name, factors) in hexagon_products() {
        let m = factors.len();
        let half = factors[0].uniform_face_length().unwrap_or(0) / 2;
        let p = TensorProduct::new(factors)?;
        let x = p.complex();
        let mut by_label: Vec<Vec<_>> = face_blocks_by_label(&p)?.into_iter().map(|b| b.faces).collect();
        by_label.sort();
        let intrinsic = face_blocks_intrinsic(x)?;
        let diameter = intrinsic.iter().map(|b| b.diameter).max().unwrap_or(0);
        let mut intrinsic: Vec<Vec<_>> = intrinsic.into_iter().map(|b| b.faces).collect();
        intrinsic.sort();
        let shares = antipodal_multiplicities(x)?;
        let sharing = 1usize << (m - 1);
        let ok = by_label == intrinsic && shares.values().all(|&k| k == sharing) && diameter <= half;
        c.record(
            name,
            ok,
            format!(
                "{} blocks, antipodal pairs shared {}-fold, block diameter {diameter}",
                by_label.len(),
                sharing
            ),
            || reproduction(name, &[("product", x)]),
        );
    }
    Ok(c.instances)
}

fn suite_h8() -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    for (name, factors) in hexagon_products() {
        if factors.iter().any(|x| !x.is_ordinary() || x.uniform_face_length().is_none_or(|n| n < 4)) {
            continue;
        }
        let p = TensorProduct::new(factors)?;
        let blocks = face_blocks_by_label(&p)?;
        let (mut both, mut neither, mut bad) = (0, 0, None);
        for (i, b) in blocks.iter().enumerate() {
            for (j, d) in blocks.iter().enumerate() {
                match verify_block_incidence_equiv(&p, b, d) {
                    Ok(IncidenceVerdict::Both) => both += 1,
                    Ok(IncidenceVerdict::Neither) => neither += 1,
                    Ok(v) => bad = bad.or(Some((i, j, v))),
                    Err(Error::NotIncident) => {}
                    Err(e) => return Err(e),
                }
            }
        }
        c.record(name, bad.is_none(), format!("{both} incident pairs agree, {neither} disagree on both counts"), || {
            let (i, j, v) = bad.clone().unwrap();
            reproduction(&format!("{name}: blocks {i} and {j} give {v:?}"), &[("product", p.complex())])
        });
    }
    Ok(c.instances)
}

fn suite_blockgraph(opts: &SuiteOptions) -> Result<Vec<InstanceResult>> {
    let mut c = Collector::new();
    let strip = |k| hexagon_strip(k).unwrap();
    let cases = vec![
        ("strip2 x strip3", vec![strip(2), strip(3)]),
        ("hexagon x flower", vec![polygon(6)?, hexagon_flower()]),
        ("strip2 x strip2 x strip3", vec![strip(2), strip(2), strip(3)]),
        ("flower x strip2 x strip2", vec![hexagon_flower(), strip(2), strip(2)]),
    ];
    for (name, factors) in cases {
        let bg = block_graph(&factors)?;
        let mut grid = bg.factor_graphs[0].clone();
        for g in &bg.factor_graphs[1..] {
            grid = cartesian_product(&grid, g)?;
        }
        let ok = graph_isomorphism_with_budget(&bg.graph, &grid, opts.budget)?.is_some();
        c.record(
            name,
            ok,
            format!("{} blocks, {} adjacencies", bg.graph.vertex_count(), bg.graph.edge_count()),
            || {
                let named: Vec<(&str, &Complex)> = factors.iter().map(|x| ("factor", x)).collect();
                reproduction(name, &named)
            },
        );
    }
    Ok(c.instances)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn brute_force_counts() {
        assert_eq!(brute_force_hom_count(&complete(3), &complete(3)), 6);
        assert_eq!(brute_force_hom_count(&path(2), &loop_graph()), 4);
        assert_eq!(brute_force_hom_count(&complete(3), &complete_bipartite(2, 2)), 0);
        for g in small_multigraphs(3) {
            assert_eq!(brute_force_hom_count(&g, &complete(3)), count_graph_homomorphisms(&g, &complete(3)));
        }
    }

    #[test]
    fn small_multigraph_enumeration() {
        let all = small_multigraphs(2);
        assert!(all.iter().all(|g| g.edge_count() <= 2));
        let shapes: std::collections::HashSet<(usize, usize, bool)> =
            all.iter().map(|g| (g.vertex_count(), g.edge_count(), g.has_loops())).collect();
        // one vertex; loop; edge; two loops; loop + edge; double edge; path; two disjoint edges
        for s in [(1, 0, false), (1, 1, true), (2, 1, false), (1, 2, true), (2, 2, true), (2, 2, false), (3, 2, false), (4, 2, false)] {
            assert!(shapes.contains(&s), "{s:?}");
        }
    }

    #[test]
    fn unknown_suite() {
        assert!(matches!(run_suite("zz", &SuiteOptions::default()), Err(Error::BadParameter(_))));
    }

    #[test]
    fn report_is_deterministic() {
        let opts = SuiteOptions {
            seed: 3,
            trials: 4,
            budget: DEFAULT_BUDGET,
        };
        let a = run_suite("e3a", &opts).unwrap();
        assert!(a.passed(), "{}", a.render());
        assert_eq!(a.render(), run_suite("e3a", &opts).unwrap().render());
    }
}
