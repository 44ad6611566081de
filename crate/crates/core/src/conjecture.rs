//! Bounded search for components of products of hexagonal patches whose
//! automorphism group is larger than the Cartesian subgroup.
//!
//! Two hypothesis sets are searched. Both ask for elementary ordinary factors
//! whose faces all have one even length of at least 6; `h11` further asks for
//! a bipartite skeleton, `h12` for a surface structure. Finding nothing is
//! evidence within the bound, not a proof.

use std::fmt::Write as _;

use crate::complex_products::TensorProduct;
use crate::error::{Error, Result};
use crate::fixtures::{hexagon_flower, hexagon_strip, polygon};
use crate::polycomplex::Complex;
use crate::random::{relabel_complex, rng};
use crate::symmetry::{
    cartesian_subgroup, complex_automorphism_group_with_budget, component_subcomplex, restrict_to_component,
    DEFAULT_BUDGET,
};
use crate::verify::reproduction;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Hypotheses {
    H11,
    H12,
}

impl Hypotheses {
    pub fn parse(s: &str) -> Result<Hypotheses> {
        match s {
            "h11" => Ok(Hypotheses::H11),
            "h12" => Ok(Hypotheses::H12),
            _ => Err(Error::BadParameter(format!("unknown conjecture `{s}`; known: h11, h12"))),
        }
    }

    pub fn id(self) -> &'static str {
        match self {
            Hypotheses::H11 => "h11",
            Hypotheses::H12 => "h12",
        }
    }

    /// The first hypothesis `x` fails, if any.
    pub fn violation(self, x: &Complex) -> Option<&'static str> {
        match x.uniform_face_length() {
            Some(n) if n % 2 == 0 && n >= 6 => {}
            _ => return Some("faces must share one even length of at least 6"),
        }
        if !x.is_elementary() {
            return Some("not elementary");
        }
        if !x.is_ordinary() {
            return Some("not ordinary");
        }
        match self {
            Hypotheses::H11 if !x.skeleton().is_bipartite() => Some("skeleton is not bipartite"),
            Hypotheses::H12 if !x.has_surface_structure() => Some("no surface structure"),
            _ => None,
        }
    }
}

/// Named bounds on factor size.
pub fn parse_max_size(s: &str) -> Result<usize> {
    match s {
        "small" => Ok(24),
        "medium" => Ok(60),
        "large" => Ok(120),
        _ => s
            .parse()
            .map_err(|_| Error::BadParameter(format!("max size `{s}` is not small, medium, large or a number"))),
    }
}

#[derive(Clone, Copy, Debug)]
pub struct SearchOptions {
    pub seed: u64,
    /// Largest factor skeleton, in vertices.
    pub max_size: usize,
    /// Largest product component, in vertices, that is examined.
    pub max_component: usize,
    pub max_factors: usize,
    pub budget: u64,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            seed: 0,
            max_size: 24,
            max_component: 300,
            max_factors: 3,
            budget: DEFAULT_BUDGET,
        }
    }
}

/// Hexagonal patches with at most `max_size` vertices: a hexagon, straight
/// strips of hexagons, and a hexagon ringed by six more.
pub fn patches(max_size: usize) -> Vec<(String, Complex)> {
    let mut out = vec![("hexagon".to_string(), polygon(6).unwrap())];
    for k in 2.. {
        if 4 * k + 2 > max_size {
            break;
        }
        out.push((format!("strip{k}"), hexagon_strip(k).unwrap()));
    }
    out.push(("flower".to_string(), hexagon_flower()));
    out.retain(|(_, x)| x.skeleton().vertex_count() <= max_size);
    out
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Counterexample {
    pub family: String,
    pub component: usize,
    pub aut_order: u128,
    pub cartesian_order: u128,
    /// Factors as `.pcc` text, with the seed and component index.
    pub document: String,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchReport {
    pub hypotheses: Hypotheses,
    pub seed: u64,
    pub max_size: usize,
    pub max_component: usize,
    /// Family name, a summary of its components, and the orders found.
    pub examined: Vec<(String, String, String)>,
    /// Family name and why it was not examined.
    pub skipped: Vec<(String, String)>,
    pub counterexample: Option<Counterexample>,
}

impl SearchReport {
    pub fn render(&self) -> String {
        let mut out = format!(
            "conjecture {} seed {} max-size {} max-component {}\n",
            self.hypotheses.id(),
            self.seed,
            self.max_size,
            self.max_component
        );
        for (name, comps, orders) in &self.examined {
            let _ = writeln!(out, "examined {name}: {comps}, {orders}");
        }
        for (name, why) in &self.skipped {
            let _ = writeln!(out, "skipped {name}: {why}");
        }
        match &self.counterexample {
            None => out.push_str("no counterexample within bounds\n"),
            Some(c) => {
                let _ = writeln!(
                    out,
                    "COUNTEREXAMPLE {} component {}: |Aut| = {}, Cartesian subgroup {}",
                    c.family, c.component, c.aut_order, c.cartesian_order
                );
                out.push_str(&c.document);
            }
        }
        out
    }
}

/// Multisets of `1..=k` indices into `0..n`, in lexicographic order.
fn multisets(n: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut cur = Vec::new();
    fn go(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if !cur.is_empty() {
            out.push(cur.clone());
        }
        if cur.len() == k {
            return;
        }
        for i in start..n {
            cur.push(i);
            go(i, n, k, cur, out);
            cur.pop();
        }
    }
    go(0, n, k, &mut cur, &mut out);
    out
}

pub fn search(hyp: Hypotheses, opts: &SearchOptions) -> Result<SearchReport> {
    let mut r = rng(opts.seed);
    let pool: Vec<(String, Complex)> = patches(opts.max_size)
        .into_iter()
        .map(|(name, x)| (name, relabel_complex(&x, &mut r)))
        .collect();
    let mut report = SearchReport {
        hypotheses: hyp,
        seed: opts.seed,
        max_size: opts.max_size,
        max_component: opts.max_component,
        examined: Vec::new(),
        skipped: Vec::new(),
        counterexample: None,
    };
    let mut usable = Vec::new();
    for (name, x) in &pool {
        match hyp.violation(x) {
            Some(why) => report.skipped.push((name.clone(), why.to_string())),
            None => usable.push((name.as_str(), x)),
        }
    }
    for family in multisets(usable.len(), opts.max_factors) {
        let names: Vec<&str> = family.iter().map(|&i| usable[i].0).collect();
        let name = names.join(" x ");
        let factors: Vec<Complex> = family.iter().map(|&i| usable[i].1.clone()).collect();
        let vertices: usize = factors.iter().map(|x| x.skeleton().vertex_count()).product();
        // Components of a product of connected bipartite factors have equal size.
        let bipartite = factors.iter().all(|x| x.skeleton().is_bipartite());
        let smallest = if bipartite { vertices >> (factors.len() - 1) } else { vertices };
        if smallest > opts.max_component {
            report.skipped.push((name, format!("components have {smallest} vertices")));
            continue;
        }
        let p = TensorProduct::new(factors.clone())?;
        let x = p.complex();
        let comps = x.components();
        let cart = cartesian_subgroup(&p.factors, &p, None)?;
        let reps = component_orbit_representatives(x, &comps, &cart.group);
        let mut orders = Vec::new();
        for &c in &reps {
            if comps[c].len() > opts.max_component {
                continue;
            }
            let sub = component_subcomplex(x, c);
            let aut = complex_automorphism_group_with_budget(&sub, opts.budget)?;
            let local = restrict_to_component(x, &cart.group, c)?;
            orders.push(aut.order().to_string());
            if !aut.group.same_group(&local.group) {
                let named: Vec<(&str, &Complex)> = names.iter().copied().zip(factors.iter()).collect();
                let document = reproduction(
                    &format!(
                        "conjecture {} seed {}: factors relabelled by the seed, in order;\nthe component is number {c} of their product in component order",
                        hyp.id(),
                        opts.seed
                    ),
                    &named,
                );
                report.counterexample = Some(Counterexample {
                    family: name,
                    component: c,
                    aut_order: aut.order(),
                    cartesian_order: local.order(),
                    document,
                });
                return Ok(report);
            }
        }
        orders.dedup();
        report.examined.push((
            name,
            format!("{} component(s) in {} Cartesian orbit(s)", comps.len(), reps.len()),
            format!("|Aut| = Cartesian = {}", orders.join("/")),
        ));
    }
    Ok(report)
}

/// One component from each orbit of `group`. Components in one orbit are
/// carried onto each other by an element of `group`, so checking one of
/// them settles the rest.
fn component_orbit_representatives(
    x: &Complex,
    comps: &[Vec<crate::multigraph::VertexId>],
    group: &crate::perm::PermGroup,
) -> Vec<usize> {
    let mut comp_of = vec![0; x.skeleton().vertex_count()];
    for (i, vs) in comps.iter().enumerate() {
        for v in vs {
            comp_of[v.index()] = i;
        }
    }
    let mut seen = vec![false; comps.len()];
    let mut reps = Vec::new();
    for c in 0..comps.len() {
        if seen[c] {
            continue;
        }
        reps.push(c);
        seen[c] = true;
        let mut stack = vec![c];
        while let Some(i) = stack.pop() {
            for g in group.generators() {
                // Vertices come first in the ground set.
                let j = comp_of[g.image(comps[i][0].0) as usize];
                if !seen[j] {
                    seen[j] = true;
                    stack.push(j);
                }
            }
        }
    }
    reps
}
