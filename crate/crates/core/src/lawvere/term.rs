//! The term theory of a presentation: morphisms `n → m` are m-tuples of
//! provability classes of terms over `x⃗ⁿ`, composed by simultaneous
//! substitution.

use std::collections::{BTreeSet, HashMap, HashSet};
use std::sync::atomic::{AtomicBool, Ordering};
use std::sync::Mutex;

use serde::Serialize;

use super::{HomFragment, LawvereTheory};
use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::terms::{enumerate_terms, variable_set, Term, TermFilter, TermInContext};
use crate::theories::{prove_equal, ProofVerdict, ProverStrategy, TheoryPresentation};

#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TupleMorphism {
    pub source: usize,
    pub components: Vec<Term>,
}

impl std::fmt::Debug for TupleMorphism {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.components.iter().map(ToString::to_string).collect();
        write!(f, "⟨{}⟩ : {}→{}", parts.join(", "), self.source, self.components.len())
    }
}

/// Representatives are normal forms when the prover is a normalizer, and
/// otherwise the first enumerated member of each class.
#[derive(Debug)]
pub struct TermTheory {
    theory: TheoryPresentation,
    reps: Mutex<HashMap<usize, Vec<Term>>>,
    unknown: AtomicBool,
}

impl TermTheory {
    pub fn new(theory: TheoryPresentation) -> Self {
        TermTheory {
            theory,
            reps: Mutex::new(HashMap::new()),
            unknown: AtomicBool::new(false),
        }
    }

    pub fn presentation(&self) -> &TheoryPresentation {
        &self.theory
    }

    pub fn is_authoritative(&self) -> bool {
        self.theory.prover.is_complete() && !self.unknown.load(Ordering::Relaxed)
    }

    /// Canonical representative of the class of `t` over `x⃗ⁿ`.
    pub fn canonical_term(&self, n: usize, t: &Term) -> Result<Term> {
        if let ProverStrategy::NormalForm(nz) = &self.theory.prover {
            return Ok(nz.normalize(t));
        }
        let lhs = TermInContext::new(n, t.clone())?;
        let mut reps = self.reps.lock().expect("not poisoned");
        let row = reps.entry(n).or_default();
        for rep in row.iter() {
            let rhs = TermInContext { context: n, body: rep.clone() };
            match prove_equal(&self.theory, &lhs, &rhs)? {
                ProofVerdict::Equal(_) => return Ok(rep.clone()),
                ProofVerdict::Unknown => self.unknown.store(true, Ordering::Relaxed),
                ProofVerdict::DistinctUpToBound => {}
            }
        }
        row.push(t.clone());
        Ok(t.clone())
    }

    pub fn morphism(&self, source: usize, components: Vec<Term>) -> Result<TupleMorphism> {
        let components = components
            .iter()
            .map(|t| {
                t.check(&self.theory.signature, source)?;
                self.canonical_term(source, t)
            })
            .collect::<Result<_>>()?;
        Ok(TupleMorphism { source, components })
    }

    fn classes(&self, n: usize, bound: usize, filter: TermFilter) -> Result<Vec<Term>> {
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        for t in enumerate_terms(&self.theory.signature, n, bound, filter) {
            let c = self.canonical_term(n, &t.body)?;
            if seen.insert(c.clone()) {
                out.push(c);
            }
        }
        Ok(out)
    }
}

fn tuples(items: &[Term], m: usize) -> Vec<Vec<Term>> {
    (0..m).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |t| {
                    let mut v = prefix.clone();
                    v.push(t.clone());
                    v
                })
            })
            .collect()
    })
}

fn is_linear(t: &Term) -> bool {
    let vars = t.variables();
    vars.len() == variable_set(t).len()
}

impl LawvereTheory for TermTheory {
    type Mor = TupleMorphism;

    fn name(&self) -> String {
        format!("L({})", self.theory.name)
    }

    fn source(&self, a: &TupleMorphism) -> usize {
        a.source
    }

    fn target(&self, a: &TupleMorphism) -> usize {
        a.components.len()
    }

    fn identity(&self, n: usize) -> TupleMorphism {
        TupleMorphism {
            source: n,
            components: (1..=n).map(Term::Var).collect(),
        }
    }

    fn compose(&self, g: &TupleMorphism, f: &TupleMorphism) -> Result<TupleMorphism> {
        if g.source != f.components.len() {
            return Err(Error::size(format!(
                "composing {}→{} after {}→{}",
                g.source,
                g.components.len(),
                f.source,
                f.components.len()
            )));
        }
        let components = g
            .components
            .iter()
            .map(|t| self.canonical_term(f.source, &t.map_variables(&|v| f.components[v - 1].clone())))
            .collect::<Result<_>>()?;
        Ok(TupleMorphism { source: f.source, components })
    }

    fn pi(&self, phi: &FinFunction) -> Result<TupleMorphism> {
        let components = phi
            .values()
            .iter()
            .map(|&v| self.canonical_term(phi.codomain(), &Term::Var(v)))
            .collect::<Result<_>>()?;
        Ok(TupleMorphism { source: phi.codomain(), components })
    }

    fn tuple(&self, n: usize, components: &[TupleMorphism]) -> Result<TupleMorphism> {
        let mut out = Vec::with_capacity(components.len());
        for c in components {
            if c.source != n || c.components.len() != 1 {
                return Err(Error::size(format!(
                    "tuple component {}→{}",
                    c.source,
                    c.components.len()
                )));
            }
            out.push(c.components[0].clone());
        }
        Ok(TupleMorphism { source: n, components: out })
    }

    /// Tuples of classes of terms with at most `bound` nodes each.
    fn hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<TupleMorphism>> {
        let classes = self.classes(n, bound, TermFilter::All)?;
        let morphisms = tuples(&classes, m)
            .into_iter()
            .map(|components| TupleMorphism { source: n, components })
            .collect();
        Ok(HomFragment {
            source: n,
            target: m,
            bound,
            morphisms,
            authoritative: self.is_authoritative(),
        })
    }

    /// Tuples of linear terms whose variable sets partition `x⃗ⁿ`.
    fn analytic_hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<TupleMorphism>> {
        let mut morphisms = BTreeSet::new();
        let linear = enumerate_terms(&self.theory.signature, n, bound, TermFilter::Linear);
        let mut pick = Vec::new();
        fn go(
            th: &TermTheory,
            n: usize,
            m: usize,
            linear: &[TermInContext],
            used: u64,
            pick: &mut Vec<Term>,
            out: &mut BTreeSet<TupleMorphism>,
        ) -> Result<()> {
            if pick.len() == m {
                if used.count_ones() as usize == n {
                    let components = pick
                        .iter()
                        .map(|t| th.canonical_term(n, t))
                        .collect::<Result<_>>()?;
                    out.insert(TupleMorphism { source: n, components });
                }
                return Ok(());
            }
            for t in linear {
                let mask = variable_set(&t.body).iter().fold(0u64, |acc, v| acc | 1 << v);
                if mask & used == 0 {
                    pick.push(t.body.clone());
                    go(th, n, m, linear, used | mask, pick, out)?;
                    pick.pop();
                }
            }
            Ok(())
        }
        go(self, n, m, &linear, 0, &mut pick, &mut morphisms)?;
        Ok(HomFragment {
            source: n,
            target: m,
            bound,
            morphisms: morphisms.into_iter().collect(),
            authoritative: self.is_authoritative(),
        })
    }

    fn is_analytic(&self, a: &TupleMorphism) -> Result<bool> {
        let mut seen = BTreeSet::new();
        for t in &a.components {
            if !is_linear(t) {
                return Ok(false);
            }
            for v in variable_set(t) {
                if !seen.insert(v) {
                    return Ok(false);
                }
            }
        }
        Ok(seen.len() == a.source)
    }

    fn display(&self, a: &TupleMorphism) -> String {
        format!("{a:?}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::theories::{commutative_monoid, monoid};

    #[test]
    fn commutative_hom_one_one() {
        let th = TermTheory::new(commutative_monoid());
        let frag = th.hom(1, 1, 3).unwrap();
        let shown: Vec<String> = frag.morphisms.iter().map(|a| a.components[0].to_string()).collect();
        assert_eq!(shown, vec!["x1", "e", "m(x1,x1)"]);
        assert!(frag.authoritative);
    }

    #[test]
    fn monoid_analytic_counts() {
        let th = TermTheory::new(monoid());
        for (n, count) in [(0, 1), (1, 1), (2, 2), (3, 6), (4, 24)] {
            let frag = th.analytic_hom(n, 1, 2 * n.max(1) - 1).unwrap();
            assert_eq!(frag.morphisms.len(), count, "n = {n}");
        }
        let id = th.identity(2);
        assert_eq!(id.components, vec![Term::Var(1), Term::Var(2)]);
    }
}
