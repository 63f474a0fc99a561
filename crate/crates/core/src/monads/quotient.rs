//! Finite quotients by generated equivalence relations.

use std::collections::HashMap;
use std::hash::Hash;

/// Generators in enumeration order, partitioned by union-find. The
/// representative of a class is its least generator.
#[derive(Clone, Debug)]
pub struct QuotientSet<G> {
    generators: Vec<G>,
    index: HashMap<G, usize>,
    parent: Vec<usize>,
    class: Vec<usize>,
    representatives: Vec<usize>,
    members: Vec<Vec<usize>>,
    relations: usize,
}

impl<G: Clone + Eq + Hash> QuotientSet<G> {
    /// The discrete quotient. Duplicate generators keep their first position.
    pub fn new(generators: impl IntoIterator<Item = G>) -> Self {
        let mut index = HashMap::new();
        let mut gens = Vec::new();
        for g in generators {
            if !index.contains_key(&g) {
                index.insert(g.clone(), gens.len());
                gens.push(g);
            }
        }
        let n = gens.len();
        let mut q = QuotientSet {
            generators: gens,
            index,
            parent: (0..n).collect(),
            class: Vec::new(),
            representatives: Vec::new(),
            members: Vec::new(),
            relations: 0,
        };
        q.refresh();
        q
    }

    fn root(&mut self, mut a: usize) -> usize {
        while self.parent[a] != a {
            self.parent[a] = self.parent[self.parent[a]];
            a = self.parent[a];
        }
        a
    }

    /// Identifies the classes of two generator positions.
    pub fn union(&mut self, a: usize, b: usize) {
        self.relations += 1;
        let (ra, rb) = (self.root(a), self.root(b));
        if ra != rb {
            let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
            self.parent[hi] = lo;
        }
    }

    /// Identifies two generators; `false` if either is not a generator.
    pub fn relate(&mut self, a: &G, b: &G) -> bool {
        match (self.index.get(a).copied(), self.index.get(b).copied()) {
            (Some(i), Some(j)) => {
                self.union(i, j);
                true
            }
            _ => false,
        }
    }

    /// Recomputes class numbers after a batch of unions. Classes are
    /// numbered in the order of their representatives.
    pub fn refresh(&mut self) {
        let n = self.generators.len();
        let roots: Vec<usize> = (0..n).map(|i| self.root(i)).collect();
        let mut number = vec![usize::MAX; n];
        self.representatives.clear();
        for (i, &r) in roots.iter().enumerate() {
            if number[r] == usize::MAX {
                number[r] = self.representatives.len();
                self.representatives.push(i);
            }
        }
        self.class = roots.iter().map(|&r| number[r]).collect();
        self.members = vec![Vec::new(); self.representatives.len()];
        for (i, &c) in self.class.iter().enumerate() {
            self.members[c].push(i);
        }
    }

    pub fn generators(&self) -> &[G] {
        &self.generators
    }

    pub fn position(&self, g: &G) -> Option<usize> {
        self.index.get(g).copied()
    }

    pub fn class_count(&self) -> usize {
        self.representatives.len()
    }

    /// Number of relation instances applied.
    pub fn relation_count(&self) -> usize {
        self.relations
    }

    pub fn class_of_position(&self, i: usize) -> usize {
        self.class[i]
    }

    pub fn class_of(&self, g: &G) -> Option<usize> {
        self.position(g).map(|i| self.class[i])
    }

    pub fn representative(&self, class: usize) -> &G {
        &self.generators[self.representatives[class]]
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = &G> + '_ {
        self.members[class].iter().map(|&i| &self.generators[i])
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn least_member_represents() {
        let mut q = QuotientSet::new([5, 3, 8, 1, 3]);
        assert_eq!(q.generators(), &[5, 3, 8, 1]);
        q.relate(&8, &3);
        q.relate(&1, &5);
        q.refresh();
        assert_eq!(q.class_count(), 2);
        assert_eq!(*q.representative(q.class_of(&1).unwrap()), 5);
        assert_eq!(*q.representative(q.class_of(&8).unwrap()), 3);
        assert!(!q.relate(&8, &9));
        let members: Vec<_> = q.members(1).copied().collect();
        assert_eq!(members, vec![3, 8]);
    }
}
