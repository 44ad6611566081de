//! The line-oriented `.pcc` text format and DOT export.
//!
//! ```text
//! pcc 1
//! # comments and blank lines are ignored
//! vertex v
//! edge e v v
//! face f e+ e+ e-
//! ```
//!
//! A step `e+` enters edge `e` at its side-0 end, `e-` at its side-1 end.
//! Records appear in id order, so emitting a parsed document is stable.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};
use crate::multigraph::{EdgeId, MultiGraph, VertexId};
use crate::polycomplex::Complex;
use crate::walk::{Direction, Traversal};

pub const FORMAT_VERSION: u32 = 1;

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into tokens with their 1-based columns.
fn tokens(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((s, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((s, &line[s..]));
    }
    out.into_iter()
        .map(|(s, t)| (line[..s].chars().count() + 1, t))
        .collect()
}

fn parse_step(tok: &str, line: usize, col: usize, edges: &HashMap<String, EdgeId>) -> Result<Traversal> {
    let (name, dir) = if let Some(n) = tok.strip_suffix('+') {
        (n, Direction::Forward)
    } else if let Some(n) = tok.strip_suffix('-').or_else(|| tok.strip_suffix('\u{2212}')) {
        (n, Direction::Backward)
    } else {
        return Err(parse_err(line, col, format!("step `{tok}` must end in + or -")));
    };
    let e = *edges
        .get(name)
        .ok_or_else(|| Error::Semantic(format!("line {line}: face step uses unknown edge `{name}`")))?;
    Ok(match dir {
        Direction::Forward => Traversal::forward(e),
        Direction::Backward => Traversal::backward(e),
    })
}

pub fn parse(text: &str) -> Result<Complex> {
    let mut header = false;
    let mut g = MultiGraph::new();
    let mut vertices: HashMap<String, VertexId> = HashMap::new();
    let mut edges: HashMap<String, EdgeId> = HashMap::new();
    let mut faces: Vec<(usize, String, Vec<Traversal>)> = Vec::new();
    let mut face_names: HashMap<String, usize> = HashMap::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let toks = tokens(raw);
        let Some(&(col, kw)) = toks.first() else { continue };
        if kw.starts_with('#') {
            continue;
        }
        if !header {
            if kw != "pcc" {
                return Err(parse_err(line, col, "document must start with `pcc <version>`"));
            }
            match toks.get(1).map(|t| t.1.parse::<u32>()) {
                Some(Ok(FORMAT_VERSION)) if toks.len() == 2 => header = true,
                Some(Ok(v)) if toks.len() == 2 => {
                    return Err(parse_err(line, toks[1].0, format!("unsupported version {v}")))
                }
                _ => return Err(parse_err(line, col, "expected `pcc 1`")),
            }
            continue;
        }
        let args = &toks[1..];
        match kw {
            "vertex" => {
                let [(c, name)] = args else {
                    return Err(parse_err(line, col, "expected `vertex <name>`"));
                };
                if vertices.contains_key(*name) {
                    return Err(Error::Semantic(format!("line {line}: duplicate vertex `{name}` (column {c})")));
                }
                vertices.insert(name.to_string(), g.add_vertex(*name));
            }
            "edge" => {
                let [(_, name), ends @ ..] = args else {
                    return Err(parse_err(line, col, "expected `edge <name> <end0> <end1>`"));
                };
                if ends.len() != 2 {
                    return Err(Error::Semantic(format!(
                        "line {line}: edge `{name}` needs exactly two endpoints, found {}",
                        ends.len()
                    )));
                }
                if edges.contains_key(*name) {
                    return Err(Error::Semantic(format!("line {line}: duplicate edge `{name}`")));
                }
                let mut vs = [VertexId(0); 2];
                for (k, (_, v)) in ends.iter().enumerate() {
                    vs[k] = *vertices.get(*v).ok_or_else(|| {
                        Error::Semantic(format!("line {line}: edge `{name}` references unknown vertex `{v}`"))
                    })?;
                }
                edges.insert(name.to_string(), g.add_edge(*name, vs[0], vs[1]));
            }
            "face" => {
                let [(_, name), steps @ ..] = args else {
                    return Err(parse_err(line, col, "expected `face <name> <step>...`"));
                };
                if steps.is_empty() {
                    return Err(Error::Semantic(format!("line {line}: face `{name}` has an empty boundary")));
                }
                if face_names.insert(name.to_string(), line).is_some() {
                    return Err(Error::Semantic(format!("line {line}: duplicate face `{name}`")));
                }
                let walk = steps
                    .iter()
                    .map(|&(c, t)| parse_step(t, line, c, &edges))
                    .collect::<Result<Vec<_>>>()?;
                faces.push((line, name.to_string(), walk));
            }
            other => return Err(parse_err(line, col, format!("unknown record `{other}`"))),
        }
    }
    if !header {
        return Err(parse_err(1, 1, "missing `pcc 1` header"));
    }
    let mut x = Complex::from_graph(g);
    for (line, name, steps) in faces {
        x.add_face(name.clone(), steps)
            .map_err(|e| Error::Semantic(format!("line {line}: face `{name}`: {e}")))?;
    }
    Ok(x)
}

pub fn emit(x: &Complex) -> String {
    let g = x.skeleton();
    let mut out = format!("pcc {FORMAT_VERSION}\n");
    for v in g.vertices() {
        let _ = writeln!(out, "vertex {}", g.vertex_name(v));
    }
    for e in g.edges() {
        let _ = writeln!(out, "edge {} {} {}", e.name, g.vertex_name(e.ends[0]), g.vertex_name(e.ends[1]));
    }
    for f in x.faces() {
        let _ = write!(out, "face {}", f.name);
        for t in &f.boundary.steps {
            let sign = if t.direction == Direction::Forward { '+' } else { '-' };
            let _ = write!(out, " {}{}", g.edge_name(t.edge), sign);
        }
        out.push('\n');
    }
    out
}

fn quote(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Undirected DOT rendering of a graph, edges labelled by name.
pub fn graph_dot(g: &MultiGraph, title: &str) -> String {
    let mut out = format!("graph {} {{\n", quote(title));
    for v in g.vertices() {
        let _ = writeln!(out, "  {};", quote(g.vertex_name(v)));
    }
    for e in g.edges() {
        let _ = writeln!(
            out,
            "  {} -- {} [label={}];",
            quote(g.vertex_name(e.ends[0])),
            quote(g.vertex_name(e.ends[1])),
            quote(&e.name)
        );
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complex_products::complex_tensor_product;
    use crate::fixtures::{dunce_hat, polygon};
    use crate::symmetry::are_isomorphic;

    #[test]
    fn dunce_hat_document() {
        let text = "pcc 1\nvertex v\nedge e v v\nface f e+ e+ e-\n";
        let x = parse(text).unwrap();
        assert_eq!(x.flag_count(), 6);
        assert_eq!(emit(&x), text);
        assert_eq!(emit(&dunce_hat()), text);
    }

    #[test]
    fn errors() {
        assert!(matches!(parse("pcc 1\nvertex v\nedge e v\n"), Err(Error::Semantic(_))));
        assert!(matches!(parse("pcc 1\nedge e v w\n"), Err(Error::Semantic(_))));
        assert!(matches!(parse("vertex v\n"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse("pcc 2\n"), Err(Error::Parse { .. })));
        assert!(matches!(
            parse("pcc 1\nvertex v\nedge e v v\nface f e*\n"),
            Err(Error::Parse { line: 4, column: 8, .. })
        ));
        assert!(matches!(parse("pcc 1\nvertex v\nsurface s\n"), Err(Error::Parse { line: 3, .. })));
        assert!(matches!(
            parse("pcc 1\nvertex a\nvertex b\nedge e a b\nface f e+\n"),
            Err(Error::Semantic(_))
        ));
    }

    #[test]
    fn product_round_trip() {
        let p = complex_tensor_product(&polygon(3).unwrap(), &polygon(5).unwrap());
        let text = emit(&p.complex);
        let back = parse(&text).unwrap();
        assert_eq!(emit(&back), text);
        assert!(are_isomorphic(&back, &p.complex).unwrap());
        assert!(parse("pcc 1\nvertex v\nedge e v v\nface f e\u{2212} e+ e+\n").is_ok());
    }

    #[test]
    fn dot() {
        let d = graph_dot(polygon(3).unwrap().skeleton(), "tri");
        assert!(d.starts_with("graph \"tri\" {"));
        assert_eq!(d.matches(" -- ").count(), 3);
    }
}
