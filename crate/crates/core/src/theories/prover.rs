//! Provability strategies and the single-step proof checker.
//!
//! Every `Equal` verdict produced by a rewriting strategy carries a chain of
//! terms in which consecutive entries differ by one instance of one axiom,
//! used in either direction at one position. [`check_chain`] replays such a
//! chain against the axioms without trusting the strategy that produced it.

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{Equation, TheoryPresentation};
use crate::error::{Error, Result};
use crate::terms::{Term, TermInContext};

/// Decides equality of terms by some external semantics.
pub trait EqualityOracle: Send + Sync {
    fn name(&self) -> String;

    /// `Ok(true)` iff the two terms over `x⃗ⁿ` are equal. Errors mean the
    /// oracle cannot decide within its own bounds.
    fn decide(&self, context: usize, lhs: &Term, rhs: &Term) -> Result<bool>;
}

/// Terminating rewriting normalizers shipped for the standard fixtures.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Normalizer {
    /// Syntactic equality; complete for presentations without axioms.
    Free,
    /// Right-nested words without unit.
    Monoid,
    /// Right-nested sorted words without unit.
    CommutativeMonoid,
    /// Inverse pushed onto variables, then right-nested words.
    AntiInvolutionMonoid,
}

impl Normalizer {
    pub fn from_name(name: &str) -> Option<Normalizer> {
        match name {
            "free" | "syntactic" => Some(Normalizer::Free),
            "monoid" => Some(Normalizer::Monoid),
            "commutative-monoid" => Some(Normalizer::CommutativeMonoid),
            "anti-involution-monoid" => Some(Normalizer::AntiInvolutionMonoid),
            _ => None,
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            Normalizer::Free => "free",
            Normalizer::Monoid => "monoid",
            Normalizer::CommutativeMonoid => "commutative-monoid",
            Normalizer::AntiInvolutionMonoid => "anti-involution-monoid",
        }
    }

    /// Symbols (with arities) the normalizer rewrites with.
    pub fn required_symbols(&self) -> &'static [(&'static str, usize)] {
        match self {
            Normalizer::Free => &[],
            Normalizer::Monoid | Normalizer::CommutativeMonoid => &[(MUL, 2), (UNIT, 0)],
            Normalizer::AntiInvolutionMonoid => &[(MUL, 2), (UNIT, 0), (INV, 1)],
        }
    }

    pub fn normalize(&self, t: &Term) -> Term {
        self.normalize_traced(t).0
    }

    /// Normal form of `t` and the rewrite chain from `t` to it.
    pub fn normalize_traced(&self, t: &Term) -> (Term, Vec<Term>) {
        let mut current = t.clone();
        let mut chain = vec![current.clone()];
        if *self == Normalizer::Free {
            return (current, chain);
        }
        'outer: loop {
            for pos in current.positions() {
                let sub = current.subterm(&pos).expect("position from positions()");
                if let Some(local) = self.local_rewrite(sub) {
                    for state in local {
                        current = current.replace(&pos, state).expect("valid position");
                        chain.push(current.clone());
                    }
                    continue 'outer;
                }
            }
            break;
        }
        (current, chain)
    }

    /// A rewrite at the root of `u`, as the sequence of states after each
    /// single axiom step.
    fn local_rewrite(&self, u: &Term) -> Option<Vec<Term>> {
        let Term::App(head, args) = u else {
            return None;
        };
        if head == MUL && args.len() == 2 {
            let (a, b) = (&args[0], &args[1]);
            if let Some([x, y]) = as_mul(a) {
                return Some(vec![mul(x.clone(), mul(y.clone(), b.clone()))]);
            }
            if is_unit(b) {
                return Some(vec![a.clone()]);
            }
            if is_unit(a) {
                return Some(vec![b.clone()]);
            }
            if *self == Normalizer::CommutativeMonoid && as_mul(a).is_none() {
                match as_mul(b) {
                    None if b < a => return Some(vec![mul(b.clone(), a.clone())]),
                    Some([c, d]) if as_mul(c).is_none() && c < a => {
                        // a(cd) -> (ac)d -> (ca)d -> c(ad)
                        return Some(vec![
                            mul(mul(a.clone(), c.clone()), d.clone()),
                            mul(mul(c.clone(), a.clone()), d.clone()),
                            mul(c.clone(), mul(a.clone(), d.clone())),
                        ]);
                    }
                    _ => {}
                }
            }
            return None;
        }
        if *self == Normalizer::AntiInvolutionMonoid && head == INV && args.len() == 1 {
            let a = &args[0];
            if let Some([x, y]) = as_mul(a) {
                return Some(vec![mul(inv(y.clone()), inv(x.clone()))]);
            }
            if let Term::App(h, inner) = a {
                if h == INV && inner.len() == 1 {
                    return Some(vec![inner[0].clone()]);
                }
            }
            if is_unit(a) {
                // s(e) = s(e)e = s(e)s(s(e)) = s(s(e)e) = s(s(e)) = e
                let e = Term::constant(UNIT);
                let se = inv(e.clone());
                return Some(vec![
                    mul(se.clone(), e.clone()),
                    mul(se.clone(), inv(se.clone())),
                    inv(mul(se.clone(), e.clone())),
                    inv(se.clone()),
                    e,
                ]);
            }
        }
        None
    }
}

pub(crate) const MUL: &str = "m";
pub(crate) const UNIT: &str = "e";
pub(crate) const INV: &str = "s";

fn mul(a: Term, b: Term) -> Term {
    Term::App(MUL.to_string(), vec![a, b])
}

fn inv(a: Term) -> Term {
    Term::App(INV.to_string(), vec![a])
}

fn as_mul(t: &Term) -> Option<&[Term; 2]> {
    match t {
        Term::App(h, args) if h == MUL && args.len() == 2 => {
            Some(args.as_slice().try_into().expect("two arguments"))
        }
        _ => None,
    }
}

fn is_unit(t: &Term) -> bool {
    matches!(t, Term::App(h, args) if h == UNIT && args.is_empty())
}

/// Limits for breadth-first proof search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SearchBudget {
    pub max_steps: usize,
    pub max_size: usize,
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget {
            max_steps: 6,
            max_size: 12,
        }
    }
}

#[derive(Clone)]
pub enum ProverStrategy {
    /// A normalizer declared complete for the presentation.
    NormalForm(Normalizer),
    /// Breadth-first search over single axiom steps in both directions.
    BoundedSearch(SearchBudget),
    /// Equality read off from an attached semantics.
    LawvereOracle(Arc<dyn EqualityOracle>),
}

impl ProverStrategy {
    pub fn is_complete(&self) -> bool {
        matches!(
            self,
            ProverStrategy::NormalForm(_) | ProverStrategy::LawvereOracle(_)
        )
    }

    pub fn describe(&self) -> String {
        match self {
            ProverStrategy::NormalForm(n) => format!("normalform:{}", n.name()),
            ProverStrategy::BoundedSearch(b) => format!("bounded:{},{}", b.max_steps, b.max_size),
            ProverStrategy::LawvereOracle(o) => format!("oracle:{}", o.name()),
        }
    }
}

impl fmt::Debug for ProverStrategy {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.describe())
    }
}

/// Evidence attached to an `Equal` verdict.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum Certificate {
    /// Consecutive terms differ by one axiom instance.
    Rewrites(Vec<Term>),
    /// Both sides evaluate to the same value under the named oracle.
    Evaluation { oracle: String },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub enum ProofVerdict {
    Equal(Certificate),
    DistinctUpToBound,
    Unknown,
}

impl ProofVerdict {
    pub fn is_equal(&self) -> bool {
        matches!(self, ProofVerdict::Equal(_))
    }
}

pub fn prove_equal(
    theory: &TheoryPresentation,
    lhs: &TermInContext,
    rhs: &TermInContext,
) -> Result<ProofVerdict> {
    if lhs.context != rhs.context {
        return Err(Error::SizeMismatch(format!(
            "comparing terms over contexts {} and {}",
            lhs.context, rhs.context
        )));
    }
    if lhs.body == rhs.body {
        return Ok(ProofVerdict::Equal(Certificate::Rewrites(vec![lhs.body.clone()])));
    }
    match &theory.prover {
        ProverStrategy::NormalForm(nz) => {
            let (nl, mut chain) = nz.normalize_traced(&lhs.body);
            let (nr, rchain) = nz.normalize_traced(&rhs.body);
            if nl != nr {
                return Ok(ProofVerdict::DistinctUpToBound);
            }
            chain.extend(rchain.into_iter().rev().skip(1));
            Ok(ProofVerdict::Equal(Certificate::Rewrites(chain)))
        }
        ProverStrategy::BoundedSearch(budget) => {
            Ok(bounded_search(&theory.axioms, &lhs.body, &rhs.body, *budget))
        }
        ProverStrategy::LawvereOracle(oracle) => {
            match oracle.decide(lhs.context, &lhs.body, &rhs.body) {
                Ok(true) => Ok(ProofVerdict::Equal(Certificate::Evaluation {
                    oracle: oracle.name(),
                })),
                Ok(false) => Ok(ProofVerdict::DistinctUpToBound),
                Err(_) => Ok(ProofVerdict::Unknown),
            }
        }
    }
}

/// Breadth-first search from `lhs` for `rhs`.
pub fn bounded_search(axioms: &[Equation], lhs: &Term, rhs: &Term, budget: SearchBudget) -> ProofVerdict {
    let complete_moves = axioms.iter().all(|ax| {
        let l = ax.lhs.variables();
        let r = ax.rhs.variables();
        r.iter().all(|v| l.contains(v)) && l.iter().all(|v| r.contains(v))
    });
    let mut parent: HashMap<Term, Option<Term>> = HashMap::new();
    parent.insert(lhs.clone(), None);
    let mut frontier = VecDeque::from([lhs.clone()]);
    let mut depth = 0;
    while !frontier.is_empty() {
        if depth == budget.max_steps {
            return ProofVerdict::Unknown;
        }
        let mut next = VecDeque::new();
        for t in frontier {
            for s in single_steps(axioms, &t, budget.max_size) {
                if parent.contains_key(&s) {
                    continue;
                }
                parent.insert(s.clone(), Some(t.clone()));
                if &s == rhs {
                    let mut chain = vec![s];
                    while let Some(Some(p)) = parent.get(chain.last().expect("nonempty")) {
                        chain.push(p.clone());
                    }
                    chain.reverse();
                    return ProofVerdict::Equal(Certificate::Rewrites(chain));
                }
                next.push_back(s);
            }
        }
        frontier = next;
        depth += 1;
    }
    if complete_moves {
        ProofVerdict::DistinctUpToBound
    } else {
        ProofVerdict::Unknown
    }
}

/// Terms reachable from `t` by one axiom instance, within `max_size` nodes.
/// Directions whose right side has variables unbound by the left are skipped.
fn single_steps(axioms: &[Equation], t: &Term, max_size: usize) -> Vec<Term> {
    let mut out = Vec::new();
    for pos in t.positions() {
        let sub = t.subterm(&pos).expect("valid position");
        for ax in axioms {
            for (from, to) in [(&ax.lhs, &ax.rhs), (&ax.rhs, &ax.lhs)] {
                let mut subst = vec![None; ax.context + 1];
                if !match_pattern(from, sub, &mut subst) {
                    continue;
                }
                if to.variables().iter().any(|&v| subst[v].is_none()) {
                    continue;
                }
                let image = to.map_variables(&|v| subst[v].clone().expect("bound"));
                let s = t.replace(&pos, image).expect("valid position");
                if s.size() <= max_size && &s != t {
                    out.push(s);
                }
            }
        }
    }
    out
}

/// Extends `subst` so that `pattern` instantiates to `target`.
pub(crate) fn match_pattern(pattern: &Term, target: &Term, subst: &mut [Option<Term>]) -> bool {
    match pattern {
        Term::Var(v) => match &subst[*v] {
            Some(bound) => bound == target,
            None => {
                subst[*v] = Some(target.clone());
                true
            }
        },
        Term::App(name, args) => match target {
            Term::App(tn, targs) if tn == name && targs.len() == args.len() => args
                .iter()
                .zip(targs)
                .all(|(p, t)| match_pattern(p, t, subst)),
            _ => false,
        },
    }
}

/// Whether `after` follows from `before` by one axiom instance at one position.
pub fn is_single_step(axioms: &[Equation], before: &Term, after: &Term) -> bool {
    for pos in before.positions() {
        let Some(new_sub) = after.subterm(&pos) else {
            continue;
        };
        if before.replace(&pos, new_sub.clone()).as_ref() != Some(after) {
            continue;
        }
        let old_sub = before.subterm(&pos).expect("valid position");
        for ax in axioms {
            for (from, to) in [(&ax.lhs, &ax.rhs), (&ax.rhs, &ax.lhs)] {
                let mut subst = vec![None; ax.context + 1];
                if match_pattern(from, old_sub, &mut subst) && match_pattern(to, new_sub, &mut subst) {
                    return true;
                }
            }
        }
    }
    false
}

/// Replays a rewrite chain: it must start at `lhs`, end at `rhs`, and every
/// consecutive pair must be a single axiom step.
pub fn check_chain(axioms: &[Equation], lhs: &Term, rhs: &Term, chain: &[Term]) -> Result<()> {
    if chain.first() != Some(lhs) || chain.last() != Some(rhs) {
        return Err(Error::LawViolation("chain endpoints do not match the equation".into()));
    }
    for (k, w) in chain.windows(2).enumerate() {
        if !is_single_step(axioms, &w[0], &w[1]) {
            return Err(Error::LawViolation(format!(
                "step {} `{}` -> `{}` is not an axiom instance",
                k + 1,
                w[0],
                w[1]
            )));
        }
    }
    Ok(())
}

/// Replays any certificate against `theory`.
pub fn replay(theory: &TheoryPresentation, lhs: &TermInContext, rhs: &TermInContext, cert: &Certificate) -> Result<()> {
    match cert {
        Certificate::Rewrites(chain) => check_chain(&theory.axioms, &lhs.body, &rhs.body, chain),
        Certificate::Evaluation { oracle } => match &theory.prover {
            ProverStrategy::LawvereOracle(o) if &o.name() == oracle => {
                if o.decide(lhs.context, &lhs.body, &rhs.body)? {
                    Ok(())
                } else {
                    Err(Error::LawViolation("oracle no longer agrees".into()))
                }
            }
            _ => Err(Error::LawViolation(format!("oracle `{oracle}` not attached"))),
        },
    }
}
