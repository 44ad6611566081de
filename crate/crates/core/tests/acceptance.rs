//! The acceptance criteria, one PASS/FAIL line each.
//!
//! Runs without the libtest harness so the lines always print.

use std::collections::BTreeSet;
use std::time::{Duration, Instant};

use polycell::blocks::{
    antipodal_multiplicities, block_graph, count_walk_arrivals, face_blocks_by_label, face_blocks_intrinsic,
    verify_block_incidence_equiv, IncidenceVerdict,
};
use polycell::complex_products::{complex_tensor_product, TensorProduct};
use polycell::conjecture::{search, Hypotheses, SearchOptions};
use polycell::factorization::complex_prime_factorization;
use polycell::fixtures::{
    complete, complete_bipartite, cycle, hexagon_flower, hexagon_strip, loop_graph, necklace, one_gon, path,
    polygon, strip, tetrahedron, wrapped_polygon,
};
use polycell::graph_products::{cartesian_product, gcd};
use polycell::homsearch::{count_graph_homomorphisms, has_complex_homomorphism};
use polycell::perm::{PermGroup, Permutation};
use polycell::random::{random_complex, random_graph, rng, RandomShape};
use polycell::symmetry::{
    are_isomorphic, cartesian_subgroup, complex_automorphism_group, component_subcomplex, graph_automorphism_group,
    graph_isomorphism, is_flag_transitive, DEFAULT_BUDGET,
};
use polycell::verify::{check_link_products, small_multigraphs};
use polycell::{tensor_product, MultiGraph, VertexId};

type Outcome = Result<String, String>;

const SECOND: Duration = Duration::from_secs(1);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn e<T: std::fmt::Debug>(err: T) -> String {
    format!("{err:?}")
}

/// Darts of `h` running from `u` to `v`.
fn darts_between(h: &MultiGraph, u: VertexId, v: VertexId) -> u64 {
    h.edges()
        .iter()
        .map(|edge| (0..2).filter(|&s| edge.ends[s] == u && edge.ends[1 - s] == v).count() as u64)
        .sum()
}

/// Sum over all vertex maps of the ways to send each edge along.
fn brute_homs(g: &MultiGraph, h: &MultiGraph) -> u64 {
    let (n, k) = (g.vertex_count(), h.vertex_count());
    if n == 0 {
        return 1;
    }
    let mut f = vec![0u32; n];
    let mut total = 0;
    loop {
        total += g
            .edges()
            .iter()
            .map(|edge| darts_between(h, VertexId(f[edge.ends[0].0 as usize]), VertexId(f[edge.ends[1].0 as usize])))
            .product::<u64>();
        let mut i = 0;
        while i < n {
            f[i] += 1;
            if (f[i] as usize) < k {
                break;
            }
            f[i] = 0;
            i += 1;
        }
        if i == n {
            return total;
        }
    }
}

/// Every automorphism of a connected simple graph, by extending vertex maps
/// along a breadth-first order.
fn brute_automorphisms(g: &MultiGraph) -> Vec<Vec<u32>> {
    let n = g.vertex_count();
    let adj: Vec<BTreeSet<u32>> = g.neighbor_sets().iter().map(|s| s.iter().map(|v| v.0).collect()).collect();
    let mut order = vec![0u32];
    let mut seen = vec![false; n];
    seen[0] = true;
    let mut i = 0;
    while i < order.len() {
        for &w in &adj[order[i] as usize] {
            if !seen[w as usize] {
                seen[w as usize] = true;
                order.push(w);
            }
        }
        i += 1;
    }
    assert_eq!(order.len(), n, "graph must be connected");
    struct S<'a> {
        adj: &'a [BTreeSet<u32>],
        order: &'a [u32],
        f: Vec<Option<u32>>,
        used: Vec<bool>,
        out: Vec<Vec<u32>>,
    }
    fn go(s: &mut S, i: usize) {
        if i == s.order.len() {
            s.out.push(s.f.iter().map(|x| x.unwrap()).collect());
            return;
        }
        let v = s.order[i] as usize;
        for w in 0..s.adj.len() {
            if s.used[w] || s.adj[v].len() != s.adj[w].len() {
                continue;
            }
            let ok = s.order[..i].iter().all(|&u| {
                let fu = s.f[u as usize].unwrap();
                s.adj[v].contains(&u) == s.adj[w].contains(&fu)
            });
            if ok {
                s.f[v] = Some(w as u32);
                s.used[w] = true;
                go(s, i + 1);
                s.used[w] = false;
                s.f[v] = None;
            }
        }
    }
    let mut s = S {
        adj: &adj,
        order: &order,
        f: vec![None; n],
        used: vec![false; n],
        out: Vec::new(),
    };
    go(&mut s, 0);
    s.out
}

fn is_graph_automorphism(g: &MultiGraph, f: &[u32]) -> bool {
    let sets = g.neighbor_sets();
    g.vertices().all(|v| {
        let image: BTreeSet<u32> = sets[v.0 as usize].iter().map(|w| f[w.0 as usize]).collect();
        let target: BTreeSet<u32> = sets[f[v.0 as usize] as usize].iter().map(|w| w.0).collect();
        image == target
    })
}

/// Ways to take `d` unit steps from `d - 2k` to `0`, the last leaving `from`.
fn brute_arrivals(d: u64, k: u64, from: i64) -> u128 {
    let mut count = 0;
    for bits in 0u32..(1 << d) {
        let mut pos = d as i64 - 2 * k as i64;
        let mut before = pos;
        for s in 0..d {
            before = pos;
            pos += if bits >> s & 1 == 1 { 1 } else { -1 };
        }
        if pos == 0 && before == from {
            count += 1;
        }
    }
    count
}

fn c1_counting() -> Outcome {
    let p = complex_tensor_product(&polygon(3).map_err(e)?, &polygon(5).map_err(e)?).complex;
    let s = p.skeleton();
    ensure(s.vertex_count() == 15 && s.edge_count() == 30 && p.face_count() == 2, || {
        format!("triangle x pentagon has {}/{}/{}", s.vertex_count(), s.edge_count(), p.face_count())
    })?;
    ensure(p.face_ids().all(|f| p.face_len(f) == 15), || "faces not of length 15".into())?;
    let w = complex_tensor_product(&wrapped_polygon(15, 3).map_err(e)?, &wrapped_polygon(15, 5).map_err(e)?).complex;
    ensure(w.face_count() == 30, || format!("wrapped product has {} faces", w.face_count()))?;
    for n in 1..=8 {
        for m in 1..=8 {
            let chi = complex_tensor_product(&polygon(n).map_err(e)?, &polygon(m).map_err(e)?)
                .complex
                .euler_characteristic();
            let expected = -((n * m) as i64) + 2 * gcd(n, m) as i64;
            ensure(chi == expected, || format!("chi({n}-gon x {m}-gon) = {chi}, expected {expected}"))?;
            ensure((chi >= 1) == (n == 1 && m == 1), || format!("chi({n}-gon x {m}-gon) = {chi}"))?;
        }
    }
    Ok("15/30/2, 30 wrapped faces, chi formula on 64 polygon pairs".into())
}

fn c2_links() -> Outcome {
    let shape = RandomShape::default();
    let mut pairs = 0;
    for t in 0..20u64 {
        let mut r = rng(2000 + t);
        let x = random_complex(&mut r, &shape);
        let y = random_complex(&mut r, &shape);
        let (n, bad) = check_link_products(&x, &y, DEFAULT_BUDGET).map_err(e)?;
        ensure(bad.is_none(), || format!("trial {t}: links differ at {bad:?}"))?;
        pairs += n;
    }
    Ok(format!("20 random pairs, {pairs} vertex pairs"))
}

fn c3_homs() -> Outcome {
    let lp = loop_graph();
    let graphs = small_multigraphs(4);
    for g in &graphs {
        let expected = 1u64 << g.edge_count();
        let n = count_graph_homomorphisms(g, &lp);
        ensure(n == expected && brute_homs(g, &lp) == expected, || {
            format!("{} edges: {n} homs into the loop", g.edge_count())
        })?;
    }
    let shape = RandomShape {
        max_vertices: 4,
        max_edges: 5,
        max_faces: 0,
        max_face_len: 1,
        loops: true,
    };
    for t in 0..10u64 {
        let mut r = rng(3000 + t);
        let (g, a, b) = (random_graph(&mut r, &shape), random_graph(&mut r, &shape), random_graph(&mut r, &shape));
        let p = tensor_product(&a, &b).graph;
        let direct = count_graph_homomorphisms(&g, &p);
        let split = count_graph_homomorphisms(&g, &a) * count_graph_homomorphisms(&g, &b);
        let brute = brute_homs(&g, &p);
        ensure(direct == split && direct == brute, || format!("triple {t}: {direct} vs {split} vs {brute}"))?;
    }
    let k3 = complete(3);
    let p = tensor_product(&k3, &k3).graph;
    let (n, brute) = (count_graph_homomorphisms(&k3, &p), brute_homs(&k3, &p));
    ensure(n == 36 && brute == 36, || format!("K3 -> K3 x K3: {n}, brute force {brute}"))?;
    Ok(format!("{} graphs into the loop, 10 triples, K3 -> K3 x K3 = 36", graphs.len()))
}

fn c4_strips() -> Outcome {
    let target = one_gon();
    let cases = [(2, false, true), (2, true, false), (3, true, true), (3, false, false)];
    for (k, twisted, expected) in cases {
        let found = has_complex_homomorphism(&strip(k, twisted).map_err(e)?, &target);
        ensure(found == expected, || format!("strip({k}, twisted {twisted}) -> 1-gon: {found}"))?;
    }
    Ok("2 untwisted yes, 2 twisted no, 3 twisted yes, 3 untwisted no".into())
}

fn c5_component_counts() -> Outcome {
    let mut graphs: Vec<(String, MultiGraph)> = Vec::new();
    for k in 1..=7 {
        graphs.push((format!("P{k}"), path(k)));
    }
    for n in 3..=8 {
        graphs.push((format!("C{n}"), cycle(n).map_err(e)?));
    }
    for n in 3..=6 {
        graphs.push((format!("K{n}"), complete(n)));
    }
    for (a, b) in [(1, 3), (2, 3), (3, 3), (2, 5), (4, 4)] {
        graphs.push((format!("K{a},{b}"), complete_bipartite(a, b)));
    }
    for (a, g) in &graphs {
        for (b, h) in &graphs {
            let comps = tensor_product(g, h).graph.components().len();
            let expected = if g.is_bipartite() && h.is_bipartite() { 2 } else { 1 };
            ensure(comps == expected, || format!("{a} x {b}: {comps} components"))?;
        }
    }
    Ok(format!("{} factor pairs", graphs.len() * graphs.len()))
}

fn c6_flags() -> Outcome {
    for (name, x) in [("tetrahedron", tetrahedron()), ("triangle", polygon(3).map_err(e)?)] {
        let p = complex_tensor_product(&x, &x).complex;
        ensure(is_flag_transitive(&p).map_err(e)?, || format!("{name} x {name} is not flag-transitive"))?;
    }
    Ok("tetrahedron^2 and triangle^2 flag-transitive".into())
}

fn c7_factorization() -> Outcome {
    let p = TensorProduct::new(vec![tetrahedron(), tetrahedron()]).map_err(e)?;
    let x = p.complex();
    let f = complex_prime_factorization(x).map_err(e)?;
    ensure(f.factors.len() == 2, || format!("{} factors", f.factors.len()))?;
    for y in &f.factors {
        ensure(are_isomorphic(y, &tetrahedron()).map_err(e)?, || "a factor is not a tetrahedron".into())?;
    }
    ensure(f.verify(x), || "certificate does not verify".into())?;
    let aut = complex_automorphism_group(x).map_err(e)?;
    let cart = cartesian_subgroup(&p.factors, &p, None).map_err(e)?;
    ensure(aut.order() == 1152, || format!("|Aut| = {}", aut.order()))?;
    ensure(aut.group.generators().iter().all(|g| cart.group.contains(g)), || {
        "an automorphism lies outside the Cartesian subgroup".into()
    })?;
    ensure(cart.group.generators().iter().all(|g| aut.group.contains(g)), || {
        "a Cartesian generator is not an automorphism".into()
    })?;
    Ok("two tetrahedra, certificate verified, |Aut| = 1152 = Cartesian".into())
}

fn c8_square() -> Outcome {
    let p = TensorProduct::new(vec![polygon(4).map_err(e)?, polygon(4).map_err(e)?]).map_err(e)?;
    let comp = component_subcomplex(p.complex(), 0);
    let graph_order = graph_automorphism_group(comp.skeleton()).map_err(e)?.order();
    let brute = brute_automorphisms(comp.skeleton()).len();
    ensure(graph_order == 1152 && brute == 1152, || format!("skeleton group {graph_order}, brute force {brute}"))?;
    let aut = complex_automorphism_group(&comp).map_err(e)?;
    let cart = cartesian_subgroup(&p.factors, &p, Some(0)).map_err(e)?;
    ensure(cart.group.is_subgroup_of(&aut.group) && aut.order() > cart.order(), || {
        format!("complex group {}, Cartesian {}", aut.order(), cart.order())
    })?;
    Ok(format!("skeleton group 1152, complex group {} > Cartesian {}", aut.order(), cart.order()))
}

/// Brute-force skeleton group of component 0 against the Cartesian subgroup
/// acting on its vertices.
fn cycle_power(m: usize) -> Result<(usize, u128), String> {
    let p = TensorProduct::new(vec![polygon(6).map_err(e)?; m]).map_err(e)?;
    let comp = component_subcomplex(p.complex(), 0);
    let g = comp.skeleton();
    let nv = g.vertex_count();
    let cart = cartesian_subgroup(&p.factors, &p, Some(0)).map_err(e)?;
    let on_vertices: Vec<Permutation> =
        cart.group.generators().iter().map(|s| Permutation(s.0[..nv].to_vec())).collect();
    for s in &on_vertices {
        ensure(is_graph_automorphism(g, &s.0), || "a Cartesian generator is not a graph automorphism".into())?;
    }
    let brute = brute_automorphisms(g).len();
    Ok((brute, PermGroup::from_generators(nv, on_vertices).order()))
}

fn c9_hexagon_cycles() -> Outcome {
    let (brute, cart) = cycle_power(2)?;
    ensure(brute as u128 == cart, || format!("C6 x C6: brute force {brute}, Cartesian {cart}"))?;
    let (brute3, cart3) = cycle_power(3)?;
    ensure(brute3 as u128 == cart3, || format!("C6^3: brute force {brute3}, Cartesian {cart3}"))?;
    Ok(format!("C6 x C6: {brute} = Cartesian; C6^3: {brute3} = Cartesian"))
}

fn c10_blocks() -> Outcome {
    let hex = || polygon(6).unwrap();
    let s = |k| hexagon_strip(k).unwrap();
    let fixtures = vec![
        ("hexagon x hexagon", vec![hex(), hex()]),
        ("hexagon x strip2", vec![hex(), s(2)]),
        ("hexagon x flower", vec![hex(), hexagon_flower()]),
        ("hexagon^3", vec![hex(), hex(), hex()]),
        ("hexagon x strip2 x strip2", vec![hex(), s(2), s(2)]),
    ];
    let mut pairs = 0;
    for (name, factors) in fixtures {
        let m = factors.len();
        let p = TensorProduct::new(factors.clone()).map_err(e)?;
        let x = p.complex();
        let labelled = face_blocks_by_label(&p).map_err(e)?;
        let mut a: Vec<_> = labelled.iter().map(|b| b.faces.clone()).collect();
        let mut b: Vec<_> = face_blocks_intrinsic(x).map_err(e)?.into_iter().map(|b| b.faces).collect();
        a.sort();
        b.sort();
        ensure(a == b, || format!("{name}: label and intrinsic blocks differ"))?;
        let mult = antipodal_multiplicities(x).map_err(e)?;
        ensure(!mult.is_empty() && mult.values().all(|&k| k == 1 << (m - 1)), || {
            format!("{name}: antipodal multiplicities {:?}", mult.values().collect::<BTreeSet<_>>())
        })?;
        for b in &labelled {
            for c in &labelled {
                match verify_block_incidence_equiv(&p, b, c) {
                    Ok(IncidenceVerdict::Counterexample { .. }) => return Err(format!("{name}: counterexample verdict")),
                    Ok(_) => pairs += 1,
                    Err(polycell::Error::NotIncident) => {}
                    Err(err) => return Err(e(err)),
                }
            }
        }
        let bg = block_graph(&factors).map_err(e)?;
        let mut grid = bg.factor_graphs[0].clone();
        for g in &bg.factor_graphs[1..] {
            grid = cartesian_product(&grid, g).map_err(e)?;
        }
        ensure(graph_isomorphism(&bg.graph, &grid).is_some(), || format!("{name}: block graph is not the grid"))?;
    }
    Ok(format!("5 fixtures, {pairs} incident block pairs"))
}

fn c11_walks() -> Outcome {
    for d in 1..=14u64 {
        let mut ratios = Vec::new();
        for k in 0..=d / 2 {
            let up = count_walk_arrivals(d, k, 1).map_err(e)?;
            let down = count_walk_arrivals(d, k, -1).map_err(e)?;
            ensure(up == brute_arrivals(d, k, 1) && down == brute_arrivals(d, k, -1), || {
                format!("d={d} k={k}: {up}/{down}")
            })?;
            if k >= 1 {
                ensure((up == down) == (d == 2 * k), || format!("d={d} k={k}: equality fails"))?;
                ratios.push((up, down));
            }
        }
        for w in ratios.windows(2) {
            let ((a, b), (c, d2)) = (w[0], w[1]);
            ensure(a * d2 > c * b, || format!("d={d}: ratio not decreasing"))?;
        }
    }
    Ok("d <= 14 against exhaustive walks".into())
}

fn c12_necklace() -> Outcome {
    let p = TensorProduct::new(vec![polygon(6).map_err(e)?, necklace(3, 6).map_err(e)?]).map_err(e)?;
    let comp = component_subcomplex(p.complex(), 0);
    let aut = complex_automorphism_group(&comp).map_err(e)?;
    let cart = cartesian_subgroup(&p.factors, &p, Some(0)).map_err(e)?;
    ensure(cart.group.is_subgroup_of(&aut.group) && aut.order() > cart.order(), || {
        format!("|Aut| = {}, Cartesian {}", aut.order(), cart.order())
    })?;
    Ok(format!("|Aut| = {}, Cartesian subgroup {}", aut.order(), cart.order()))
}

fn c13_conjectures() -> Outcome {
    let opts = SearchOptions::default();
    let mut summary = Vec::new();
    for hyp in [Hypotheses::H11, Hypotheses::H12] {
        let r = search(hyp, &opts).map_err(e)?;
        if r.counterexample.is_some() {
            return Err(r.render());
        }
        summary.push(format!("{}: {} examined, {} skipped", hyp.id(), r.examined.len(), r.skipped.len()));
    }
    Ok(format!("no counterexample within bounds ({})", summary.join("; ")))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome, Duration); 13] = [
        ("counting identities", c1_counting, 60 * SECOND),
        ("link theorem", c2_links, 120 * SECOND),
        ("hom counting", c3_homs, 60 * SECOND),
        ("strip homomorphisms", c4_strips, 60 * SECOND),
        ("component counts", c5_component_counts, 60 * SECOND),
        ("flag-transitivity", c6_flags, 120 * SECOND),
        ("factorization and automorphisms", c7_factorization, 300 * SECOND),
        ("square product automorphisms", c8_square, 60 * SECOND),
        ("hexagon cycle products", c9_hexagon_cycles, 300 * SECOND),
        ("face blocks", c10_blocks, 60 * SECOND),
        ("walk counts", c11_walks, 60 * SECOND),
        ("necklace regression", c12_necklace, 60 * SECOND),
        ("conjecture search", c13_conjectures, 60 * SECOND),
    ];
    let mut failed = 0;
    for (i, (name, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let outcome = run();
        let took = start.elapsed();
        let outcome = match outcome {
            Ok(detail) if took > *limit => Err(format!("{detail}, but took {took:?} (limit {limit:?})")),
            other => other,
        };
        match outcome {
            Ok(detail) => println!("PASS {:>2} {name}: {detail} [{:.2}s]", i + 1, took.as_secs_f64()),
            Err(why) => {
                failed += 1;
                println!("FAIL {:>2} {name}: {why} [{:.2}s]", i + 1, took.as_secs_f64());
            }
        }
    }
    if failed > 0 {
        eprintln!("{failed} criterion/criteria failed");
        std::process::exit(1);
    }
}
