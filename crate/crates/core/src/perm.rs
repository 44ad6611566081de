//! Permutations of `0..n` and permutation groups kept as a stabilizer chain.

use std::collections::HashMap;
use std::fmt;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(pub Vec<u32>);

impl Permutation {
    pub fn identity(n: usize) -> Permutation {
        Permutation((0..n as u32).collect())
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    /// Apply `self`, then `next`.
    pub fn then(&self, next: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| next.0[x as usize]).collect())
    }

    pub fn inverse(&self) -> Permutation {
        let mut out = vec![0; self.0.len()];
        for (i, &x) in self.0.iter().enumerate() {
            out[x as usize] = i as u32;
        }
        Permutation(out)
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i as u32 == x)
    }

    pub fn is_valid(&self) -> bool {
        let mut seen = vec![false; self.0.len()];
        self.0
            .iter()
            .all(|&x| (x as usize) < seen.len() && !std::mem::replace(&mut seen[x as usize], true))
    }

    pub fn first_moved(&self) -> Option<u32> {
        self.0.iter().enumerate().find(|(i, &x)| *i as u32 != x).map(|(i, _)| i as u32)
    }

    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let mut seen = vec![false; self.0.len()];
        let mut out = Vec::new();
        for start in 0..self.0.len() {
            if seen[start] || self.0[start] as usize == start {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start;
            while !seen[x] {
                seen[x] = true;
                cycle.push(x as u32);
                x = self.0[x] as usize;
            }
            out.push(cycle);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let parts: Vec<String> = c.iter().map(|x| x.to_string()).collect();
            write!(f, "({})", parts.join(" "))?;
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
struct Level {
    base: u32,
    gens: Vec<Permutation>,
    /// Orbit of the base point in discovery order, with `u_p` sending base to `p`.
    orbit: Vec<u32>,
    transversal: HashMap<u32, Permutation>,
    inverses: HashMap<u32, Permutation>,
}

impl Level {
    fn new(base: u32, n: usize) -> Level {
        let mut transversal = HashMap::new();
        transversal.insert(base, Permutation::identity(n));
        let inverses = transversal.clone();
        Level {
            base,
            gens: Vec::new(),
            orbit: vec![base],
            transversal,
            inverses,
        }
    }

    /// Extends the orbit under the current generators.
    fn grow(&mut self) {
        let mut i = 0;
        while i < self.orbit.len() {
            let p = self.orbit[i];
            for s in &self.gens {
                let q = s.image(p);
                if !self.transversal.contains_key(&q) {
                    let u = self.transversal[&p].then(s);
                    self.inverses.insert(q, u.inverse());
                    self.transversal.insert(q, u);
                    self.orbit.push(q);
                }
            }
            i += 1;
        }
    }
}

/// A permutation group given by generators, with a deterministic
/// Schreier-Sims stabilizer chain for membership and order.
#[derive(Clone, Debug)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: Vec<Level>,
}

impl PermGroup {
    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup {
            degree,
            generators: Vec::new(),
            chain: Vec::new(),
        }
    }

    pub fn from_generators(degree: usize, gens: impl IntoIterator<Item = Permutation>) -> PermGroup {
        let mut g = PermGroup::trivial(degree);
        for p in gens {
            g.add_generator(p);
        }
        g
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    /// Adds `p` unless it is already a member. Returns whether the group grew.
    pub fn add_generator(&mut self, p: Permutation) -> bool {
        assert_eq!(p.degree(), self.degree, "permutation degree mismatch");
        if self.contains(&p) {
            return false;
        }
        self.generators.push(p.clone());
        self.extend(0, p);
        true
    }

    fn sift(&self, from: usize, mut g: Permutation) -> (usize, Permutation) {
        for (i, level) in self.chain.iter().enumerate().skip(from) {
            let p = g.image(level.base);
            match level.inverses.get(&p) {
                Some(u) => g = g.then(u),
                None => return (i, g),
            }
        }
        (self.chain.len(), g)
    }

    fn extend(&mut self, level: usize, g: Permutation) {
        let (at, residue) = self.sift(level, g);
        if at == self.chain.len() {
            match residue.first_moved() {
                None => return,
                Some(b) => self.chain.push(Level::new(b, self.degree)),
            }
        }
        // Record the residue at every level from `level` down to `at`: it fixes those bases.
        let old_orbit_len: Vec<usize> = (level..=at).map(|i| self.chain[i].orbit.len()).collect();
        for i in level..=at {
            self.chain[i].gens.push(residue.clone());
        }
        for i in (level..=at).rev() {
            let old = old_orbit_len[i - level];
            self.chain[i].grow();
            let lvl = &self.chain[i];
            let new_gen = lvl.gens.len() - 1;
            // Schreier generators: new generator with all points, old generators with new points.
            let mut todo = Vec::new();
            for (pi, &p) in lvl.orbit.iter().enumerate() {
                for (si, s) in lvl.gens.iter().enumerate() {
                    if si != new_gen && pi < old {
                        continue;
                    }
                    let q = s.image(p);
                    let sg = lvl.transversal[&p].then(s).then(&lvl.inverses[&q]);
                    if !sg.is_identity() {
                        todo.push(sg);
                    }
                }
            }
            for sg in todo {
                if !self.contains_from(i + 1, &sg) {
                    self.extend(i + 1, sg);
                }
            }
        }
    }

    fn contains_from(&self, level: usize, p: &Permutation) -> bool {
        let (at, g) = self.sift(level, p.clone());
        at == self.chain.len() && g.is_identity()
    }

    pub fn contains(&self, p: &Permutation) -> bool {
        p.degree() == self.degree && self.contains_from(0, p)
    }

    pub fn order(&self) -> u128 {
        self.chain.iter().map(|l| l.orbit.len() as u128).product()
    }

    pub fn base(&self) -> Vec<u32> {
        self.chain.iter().map(|l| l.base).collect()
    }

    pub fn is_subgroup_of(&self, other: &PermGroup) -> bool {
        self.generators.iter().all(|g| other.contains(g))
    }

    /// Equality by mutual generator membership.
    pub fn same_group(&self, other: &PermGroup) -> bool {
        self.degree == other.degree && self.is_subgroup_of(other) && other.is_subgroup_of(self)
    }

    /// Orbits on the points of `range`, as sorted lists, ordered by least point.
    /// Points outside `range` are assumed not to mix with it.
    pub fn orbits_on(&self, range: std::ops::Range<usize>) -> Vec<Vec<u32>> {
        let mut parent: Vec<usize> = (0..self.degree).collect();
        fn find(parent: &mut [usize], mut x: usize) -> usize {
            while parent[x] != x {
                parent[x] = parent[parent[x]];
                x = parent[x];
            }
            x
        }
        for g in &self.generators {
            for x in range.clone() {
                let (a, b) = (find(&mut parent, x), find(&mut parent, g.image(x as u32) as usize));
                if a != b {
                    parent[a.max(b)] = a.min(b);
                }
            }
        }
        let mut groups: HashMap<usize, Vec<u32>> = HashMap::new();
        for x in range {
            let r = find(&mut parent, x);
            groups.entry(r).or_default().push(x as u32);
        }
        let mut out: Vec<Vec<u32>> = groups.into_values().collect();
        out.sort();
        out
    }

    pub fn orbits(&self) -> Vec<Vec<u32>> {
        self.orbits_on(0..self.degree)
    }

    /// Lists elements, stopping after `cap` of them.
    pub fn elements(&self, cap: usize) -> Vec<Permutation> {
        let mut out = vec![Permutation::identity(self.degree)];
        for level in self.chain.iter().rev() {
            let mut next = Vec::new();
            'outer: for g in &out {
                for p in &level.orbit {
                    next.push(g.then(&level.transversal[p]));
                    if next.len() >= cap {
                        break 'outer;
                    }
                }
            }
            out = next;
        }
        out.truncate(cap);
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cyc(n: usize) -> Permutation {
        Permutation((0..n as u32).map(|i| (i + 1) % n as u32).collect())
    }

    fn swap01(n: usize) -> Permutation {
        let mut v: Vec<u32> = (0..n as u32).collect();
        v.swap(0, 1);
        Permutation(v)
    }

    #[test]
    fn symmetric_groups() {
        for n in 2..7 {
            let g = PermGroup::from_generators(n, [cyc(n), swap01(n)]);
            let fact: u128 = (1..=n as u128).product();
            assert_eq!(g.order(), fact);
            assert_eq!(g.elements(10_000).len() as u128, fact);
        }
    }

    #[test]
    fn cyclic_and_dihedral() {
        let c = PermGroup::from_generators(8, [cyc(8)]);
        assert_eq!(c.order(), 8);
        let flip = Permutation((0..8u32).map(|i| (8 - i) % 8).collect());
        assert!(!c.contains(&flip));
        let d = PermGroup::from_generators(8, [cyc(8), flip.clone()]);
        assert_eq!(d.order(), 16);
        assert!(c.is_subgroup_of(&d));
        assert!(!d.same_group(&c));
        assert_eq!(d.orbits().len(), 1);
        let d2 = PermGroup::from_generators(8, [flip.clone(), flip.then(&cyc(8))]);
        assert!(d.same_group(&d2));
    }

    #[test]
    fn cycle_notation() {
        assert_eq!(cyc(3).to_string(), "(0 1 2)");
        assert_eq!(Permutation::identity(2).to_string(), "()");
    }
}
