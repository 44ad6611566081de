//! Walks as sequences of oriented edge traversals.

use std::fmt;

use crate::error::{Error, Result};
use crate::multigraph::{Dart, EdgeId, MultiGraph, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Direction {
    /// Enter the edge at its side-0 dart and leave through side 1.
    Forward,
    Backward,
}

impl Direction {
    pub fn flip(self) -> Direction {
        match self {
            Direction::Forward => Direction::Backward,
            Direction::Backward => Direction::Forward,
        }
    }

    fn bit(self) -> u8 {
        match self {
            Direction::Forward => 0,
            Direction::Backward => 1,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Traversal {
    pub edge: EdgeId,
    pub direction: Direction,
}

impl Traversal {
    pub fn forward(edge: EdgeId) -> Traversal {
        Traversal {
            edge,
            direction: Direction::Forward,
        }
    }

    pub fn backward(edge: EdgeId) -> Traversal {
        Traversal {
            edge,
            direction: Direction::Backward,
        }
    }

    /// The traversal leaving through `d`, i.e. the one whose tail dart is `d`.
    pub fn leaving(d: Dart) -> Traversal {
        if d.side == 0 {
            Traversal::forward(d.edge)
        } else {
            Traversal::backward(d.edge)
        }
    }

    pub fn reversed(self) -> Traversal {
        Traversal {
            edge: self.edge,
            direction: self.direction.flip(),
        }
    }

    /// Dart at the vertex the traversal starts from.
    pub fn tail_dart(self) -> Dart {
        Dart::new(self.edge, self.direction.bit())
    }

    /// Dart at the vertex the traversal arrives at.
    pub fn head_dart(self) -> Dart {
        Dart::new(self.edge, 1 - self.direction.bit())
    }

    pub fn tail(self, g: &MultiGraph) -> VertexId {
        g.endpoint(self.tail_dart())
    }

    pub fn head(self, g: &MultiGraph) -> VertexId {
        g.endpoint(self.head_dart())
    }

    /// Dense code `2 * edge + direction`, used for keys.
    pub fn code(self) -> u32 {
        2 * self.edge.0 + self.direction.bit() as u32
    }
}

impl fmt::Display for Traversal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let sign = match self.direction {
            Direction::Forward => '+',
            Direction::Backward => '-',
        };
        write!(f, "{}{}", self.edge.0, sign)
    }
}

/// A walk given by its start vertex and its steps. Closed walks end where they start.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Walk {
    pub start: VertexId,
    pub steps: Vec<Traversal>,
}

/// Closed walks share the representation of walks.
pub type ClosedWalk = Walk;

impl Walk {
    pub fn new(start: VertexId, steps: Vec<Traversal>) -> Walk {
        Walk { start, steps }
    }

    /// A closed walk read off its steps; the start is the tail of the first step.
    pub fn closed(g: &MultiGraph, steps: Vec<Traversal>) -> Result<Walk> {
        let first = steps.first().ok_or(Error::EmptyWalk)?;
        let w = Walk::new(first.tail(g), steps);
        w.check_closed(g)?;
        Ok(w)
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Checks that steps exist and chain; returns the final vertex.
    pub fn check(&self, g: &MultiGraph) -> Result<VertexId> {
        if !g.contains_vertex(self.start) {
            return Err(Error::InvalidWalk(format!("unknown start vertex #{}", self.start.0)));
        }
        let mut at = self.start;
        for (k, t) in self.steps.iter().enumerate() {
            if t.edge.index() >= g.edge_count() {
                return Err(Error::InvalidWalk(format!("step {k} uses unknown edge #{}", t.edge.0)));
            }
            if t.tail(g) != at {
                return Err(Error::InvalidWalk(format!(
                    "step {k} ({}) does not start at {}",
                    g.edge_name(t.edge),
                    g.vertex_name(at)
                )));
            }
            at = t.head(g);
        }
        Ok(at)
    }

    pub fn check_closed(&self, g: &MultiGraph) -> Result<()> {
        if self.is_empty() {
            return Err(Error::EmptyWalk);
        }
        let end = self.check(g)?;
        if end != self.start {
            return Err(Error::InvalidWalk(format!(
                "walk ends at {} instead of {}",
                g.vertex_name(end),
                g.vertex_name(self.start)
            )));
        }
        Ok(())
    }

    pub fn end(&self, g: &MultiGraph) -> VertexId {
        self.steps.last().map_or(self.start, |t| t.head(g))
    }

    /// Vertices visited, `len + 1` entries including both ends.
    pub fn vertices(&self, g: &MultiGraph) -> Vec<VertexId> {
        let mut out = Vec::with_capacity(self.len() + 1);
        out.push(self.start);
        out.extend(self.steps.iter().map(|t| t.head(g)));
        out
    }

    /// For a closed walk, the vertex before each step (the corners).
    pub fn corner_vertices(&self, g: &MultiGraph) -> Vec<VertexId> {
        self.steps.iter().map(|t| t.tail(g)).collect()
    }

    /// The same closed walk started `k` steps later.
    pub fn rotated(&self, g: &MultiGraph, k: usize) -> Walk {
        let n = self.len();
        if n == 0 {
            return self.clone();
        }
        let steps: Vec<_> = (0..n).map(|j| self.steps[(j + k) % n]).collect();
        Walk::new(steps[0].tail(g), steps)
    }

    /// The walk run backwards.
    pub fn reversed(&self, g: &MultiGraph) -> Walk {
        Walk::new(
            self.end(g),
            self.steps.iter().rev().map(|t| t.reversed()).collect(),
        )
    }

    pub fn repeated(&self, times: usize) -> Walk {
        let mut steps = Vec::with_capacity(self.len() * times);
        for _ in 0..times {
            steps.extend_from_slice(&self.steps);
        }
        Walk::new(self.start, steps)
    }
}

/// Splits a closed walk into its primitive period and the number of repeats.
pub fn reduce_closed_walk(w: &ClosedWalk) -> Result<(ClosedWalk, usize)> {
    let n = w.len();
    if n == 0 {
        return Err(Error::EmptyWalk);
    }
    let p = smallest_period(&w.steps);
    Ok((Walk::new(w.start, w.steps[..p].to_vec()), n / p))
}

pub(crate) fn smallest_period<T: PartialEq>(s: &[T]) -> usize {
    let n = s.len();
    (1..=n)
        .find(|&p| n % p == 0 && (p..n).all(|i| s[i] == s[i - p]))
        .unwrap_or(n)
}

/// Token identifying a closed walk up to rotation (and reversal, when enabled).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CycleKey(pub Vec<u32>);

/// Canonical key of a closed walk. Reversal runs the steps backwards with
/// every direction flipped.
pub fn canonical_cycle_key(w: &ClosedWalk, reversal: bool) -> Result<CycleKey> {
    if w.is_empty() {
        return Err(Error::EmptyWalk);
    }
    Ok(cycle_key_of_steps(&w.steps, reversal))
}

pub(crate) fn cycle_key_of_steps(steps: &[Traversal], reversal: bool) -> CycleKey {
    let codes: Vec<u32> = steps.iter().map(|t| t.code()).collect();
    let mut best = least_rotation(&codes);
    if reversal {
        let rev: Vec<u32> = steps.iter().rev().map(|t| t.reversed().code()).collect();
        best = best.min(least_rotation(&rev));
    }
    CycleKey(best)
}

/// Lexicographically least rotation of a sequence.
pub(crate) fn least_rotation<T: Ord + Copy>(s: &[T]) -> Vec<T> {
    let n = s.len();
    let mut best = 0;
    for k in 1..n {
        for j in 0..n {
            let (a, b) = (s[(k + j) % n], s[(best + j) % n]);
            if a != b {
                if a < b {
                    best = k;
                }
                break;
            }
        }
    }
    (0..n).map(|j| s[(best + j) % n]).collect()
}

/// Key of a cyclic vertex sequence up to rotation and reversal.
pub(crate) fn vertex_cycle_key(vs: &[u32]) -> Vec<u32> {
    let a = least_rotation(vs);
    let rev: Vec<u32> = vs.iter().rev().copied().collect();
    a.min(least_rotation(&rev))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle_with_doubles() -> MultiGraph {
        let mut g = MultiGraph::new();
        let v: Vec<_> = ["a", "b", "c"].iter().map(|n| g.add_vertex(*n)).collect();
        for (i, (x, y)) in [(0, 1), (1, 2), (2, 0), (0, 1), (1, 2), (2, 0)].iter().enumerate() {
            g.add_edge(format!("e{i}"), v[*x], v[*y]);
        }
        g
    }

    #[test]
    fn reduce_examples() {
        let g = triangle_with_doubles();
        let tri = Walk::closed(&g, (0..3).map(|i| Traversal::forward(EdgeId(i))).collect()).unwrap();
        assert_eq!(reduce_closed_walk(&tri).unwrap(), (tri.clone(), 1));
        assert_eq!(reduce_closed_walk(&tri.repeated(5)).unwrap(), (tri, 5));

        let mut l = MultiGraph::new();
        let v = l.add_vertex("v");
        let e = l.add_edge("e", v, v);
        let twice = Walk::closed(&l, vec![Traversal::forward(e); 2]).unwrap();
        assert_eq!(reduce_closed_walk(&twice).unwrap().1, 2);
        assert_eq!(reduce_closed_walk(&Walk::new(v, vec![])), Err(Error::EmptyWalk));
    }

    #[test]
    fn keys_respect_rotation_and_reversal() {
        let g = triangle_with_doubles();
        let tri = Walk::closed(&g, (0..3).map(|i| Traversal::forward(EdgeId(i))).collect()).unwrap();
        let key = |w: &Walk| canonical_cycle_key(w, true).unwrap();
        assert_eq!(key(&tri), key(&tri.rotated(&g, 1)));
        assert_eq!(key(&tri), key(&tri.reversed(&g)));
        assert_ne!(
            canonical_cycle_key(&tri, false).unwrap(),
            canonical_cycle_key(&tri.reversed(&g), false).unwrap()
        );
        // a -> c -> b along the second copies of the edges
        let other = Walk::closed(
            &g,
            vec![
                Traversal::backward(EdgeId(5)),
                Traversal::backward(EdgeId(4)),
                Traversal::backward(EdgeId(3)),
            ],
        )
        .unwrap();
        assert_ne!(key(&tri), key(&other));
    }

    #[test]
    fn walk_checks() {
        let g = triangle_with_doubles();
        let broken = Walk::new(VertexId(0), vec![Traversal::forward(EdgeId(1))]);
        assert!(matches!(broken.check(&g), Err(Error::InvalidWalk(_))));
        let open = Walk::new(VertexId(0), vec![Traversal::forward(EdgeId(0))]);
        assert!(matches!(open.check_closed(&g), Err(Error::InvalidWalk(_))));
    }
}
