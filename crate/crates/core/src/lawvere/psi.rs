//! The linear-regular theory of a symmetric operad and the translation of
//! spans into terms, `⟨φ, !, g⟩ ↦ g(x_{φ(1)},…,x_{φ(m)})`.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{LawvereTheory, SpanMorphism, SpanTheory};
use crate::error::{Error, Result};
use crate::finset::{FinFunction, Permutation};
use crate::operads::{Op, SymmetricOperadData};
use crate::terms::{enumerate_terms, Signature, Term, TermFilter, TermInContext};
use crate::theories::{
    prove_equal, EqualityOracle, Equation, ProofVerdict, ProverStrategy, SearchBudget,
    TheoryPresentation,
};

fn symbol(g: Op) -> String {
    format!("o{}_{}", g.arity, g.index)
}

fn simple_term(g: Op, args: impl IntoIterator<Item = usize>) -> Term {
    Term::App(symbol(g), args.into_iter().map(Term::Var).collect())
}

/// Decides equality of terms by evaluating them as spans `n → 1`.
pub struct SpanEvaluation {
    theory: SpanTheory,
    symbols: HashMap<String, Op>,
}

impl SpanEvaluation {
    pub fn new(operad: Arc<SymmetricOperadData>) -> Self {
        let symbols = (0..=operad.max_arity())
            .flat_map(|n| operad.operations(n).collect::<Vec<_>>())
            .map(|g| (symbol(g), g))
            .collect();
        SpanEvaluation {
            theory: SpanTheory::new(operad),
            symbols,
        }
    }

    pub fn span_theory(&self) -> &SpanTheory {
        &self.theory
    }

    /// The span `n → 1` denoted by `t` over `x⃗ⁿ`.
    pub fn evaluate(&self, n: usize, t: &Term) -> Result<SpanMorphism> {
        match t {
            Term::Var(i) => self.theory.pi(&FinFunction::point(*i, n)?),
            Term::App(name, args) => {
                let g = *self
                    .symbols
                    .get(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if g.arity != args.len() {
                    return Err(Error::ArityMismatch(format!(
                        "{name} expects {} arguments, got {}",
                        g.arity,
                        args.len()
                    )));
                }
                let parts = args.iter().map(|a| self.evaluate(n, a)).collect::<Result<Vec<_>>>()?;
                let tuple = self.theory.tuple(n, &parts)?;
                self.theory.compose(&self.theory.operation(g)?, &tuple)
            }
        }
    }
}

impl EqualityOracle for SpanEvaluation {
    fn name(&self) -> String {
        format!("spans({})", self.theory.operad().name())
    }

    fn decide(&self, context: usize, lhs: &Term, rhs: &Term) -> Result<bool> {
        Ok(self.evaluate(context, lhs)? == self.evaluate(context, rhs)?)
    }
}

/// The presentation with one symbol per operation and the unit,
/// composition and action axioms, decided by span evaluation.
pub fn theory_from_operad(operad: Arc<SymmetricOperadData>) -> Result<TheoryPresentation> {
    let mut signature = Signature::new();
    for n in 0..=operad.max_arity() {
        for g in operad.operations(n) {
            signature.add(&symbol(g), n)?;
        }
    }
    let mut axioms = vec![Equation::new(1, simple_term(operad.unit(), [1]), Term::Var(1))?];

    for m in 0..=operad.max_arity() {
        for f in operad.operations(m) {
            let mut inner: Vec<Op> = Vec::with_capacity(m);
            composition_axioms(&operad, f, &mut inner, &mut axioms)?;
        }
    }
    for n in 0..=operad.max_arity() {
        for sigma in Permutation::all(n).into_iter().filter(|s| !s.is_identity()) {
            for f in operad.operations(n) {
                let lhs = simple_term(f, sigma.values().iter().copied());
                let rhs = simple_term(operad.act(&sigma, f)?, 1..=n);
                axioms.push(Equation::new(n, lhs, rhs)?);
            }
        }
    }
    let oracle = Arc::new(SpanEvaluation::new(Arc::clone(&operad)));
    TheoryPresentation::new(
        &format!("theory({})", operad.name()),
        signature,
        axioms,
        ProverStrategy::LawvereOracle(oracle),
    )
}

fn composition_axioms(
    operad: &SymmetricOperadData,
    f: Op,
    inner: &mut Vec<Op>,
    out: &mut Vec<Equation>,
) -> Result<()> {
    let used: usize = inner.iter().map(|g| g.arity).sum();
    if inner.len() == f.arity {
        let mut next = 1;
        let args = inner
            .iter()
            .map(|&g| {
                let t = simple_term(g, next..next + g.arity);
                next += g.arity;
                t
            })
            .collect();
        let lhs = Term::App(symbol(f), args);
        let rhs = simple_term(operad.compose(inner, f)?, 1..=used);
        out.push(Equation::new(used, lhs, rhs)?);
        return Ok(());
    }
    for k in 0..=operad.max_arity().saturating_sub(used) {
        for g in operad.operations(k) {
            inner.push(g);
            composition_axioms(operad, f, inner, out)?;
            inner.pop();
        }
    }
    Ok(())
}

/// The term tuple of a span: component `j` is `g_j` applied to the
/// variables `x_{φ(b)}` for `b` in the `j`-th fiber.
pub fn span_to_terms(s: &SpanMorphism) -> Vec<Term> {
    let mut next = 1;
    s.ops
        .iter()
        .map(|&g| {
            let t = simple_term(g, (next..next + g.arity).map(|b| s.phi.apply(b)));
            next += g.arity;
            t
        })
        .collect()
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PsiReport {
    pub operad: String,
    pub axioms: usize,
    pub axiom_failures: Vec<String>,
    /// `eval(ψ(s)) = s`; implies that ψ is faithful.
    pub round_trips: usize,
    pub round_trip_failures: Vec<String>,
    /// Non-canonical representatives translate to provably equal terms.
    pub representatives: usize,
    pub representative_failures: Vec<String>,
    /// Small terms are provably equal to the translation of their value.
    pub fullness: usize,
    pub fullness_failures: Vec<String>,
    /// `ψ(t∘s)` is provably equal to the substitution of `ψ(s)` into `ψ(t)`.
    pub functoriality: usize,
    pub functoriality_failures: Vec<String>,
    /// Proof searches that ran out of budget.
    pub inconclusive: usize,
}

impl PsiReport {
    pub fn passed(&self) -> bool {
        self.axiom_failures.is_empty()
            && self.round_trip_failures.is_empty()
            && self.representative_failures.is_empty()
            && self.fullness_failures.is_empty()
            && self.functoriality_failures.is_empty()
    }
}

/// Runs the translation checks on spans `n → 1` with `n ≤ max_object`,
/// and terms of at most `max_nodes` nodes; syntactic equalities are
/// searched within `budget`.
pub fn check_psi(
    operad: Arc<SymmetricOperadData>,
    max_object: usize,
    max_nodes: usize,
    budget: SearchBudget,
) -> Result<PsiReport> {
    let theory = theory_from_operad(Arc::clone(&operad))?;
    let eval = SpanEvaluation::new(Arc::clone(&operad));
    let spans = eval.span_theory();
    let syntactic = theory.with_prover(ProverStrategy::BoundedSearch(budget))?;
    let n_max = operad.max_arity();
    let mut report = PsiReport {
        operad: operad.name().to_string(),
        axioms: theory.axioms.len(),
        ..Default::default()
    };
    let mut provable = |n: usize, a: &Term, b: &Term, failures: &mut Vec<String>| -> Result<()> {
        let lhs = TermInContext::new(n, a.clone())?;
        let rhs = TermInContext::new(n, b.clone())?;
        match prove_equal(&syntactic, &lhs, &rhs)? {
            ProofVerdict::Equal(_) => {}
            ProofVerdict::Unknown => report.inconclusive += 1,
            ProofVerdict::DistinctUpToBound => failures.push(format!("{a} ≠ {b} over x⃗{n}")),
        }
        Ok(())
    };

    let mut axiom_failures = Vec::new();
    for ax in &theory.axioms {
        if !eval.decide(ax.context, &ax.lhs, &ax.rhs)? {
            axiom_failures.push(ax.to_string());
        }
    }

    let mut round_trips = 0;
    let mut round_trip_failures = Vec::new();
    let mut representatives = 0;
    let mut representative_failures = Vec::new();
    for n in 0..=max_object {
        for s in spans.hom(n, 1, n_max)?.morphisms {
            round_trips += 1;
            let t = span_to_terms(&s).remove(0);
            let back = eval.evaluate(n, &t)?;
            if back != s {
                round_trip_failures.push(format!("{} ↦ {t} ↦ {}", spans.display(&s), spans.display(&back)));
            }
            let g = s.ops[0];
            for sigma in Permutation::all(g.arity) {
                representatives += 1;
                let phi = s.phi.after(sigma.as_function())?;
                let other = SpanMorphism::new(phi, s.f.clone(), vec![operad.act(&sigma.inverse(), g)?])?;
                let u = span_to_terms(&other).remove(0);
                provable(n, &t, &u, &mut representative_failures)?;
            }
        }
    }

    let mut fullness = 0;
    let mut fullness_failures = Vec::new();
    for n in 0..=max_object {
        for t in enumerate_terms(&theory.signature, n, max_nodes, TermFilter::All) {
            let value = match eval.evaluate(n, &t.body) {
                Ok(v) => v,
                Err(Error::TruncationExceeded(_)) => continue,
                Err(e) => return Err(e),
            };
            fullness += 1;
            let simple = span_to_terms(&value).remove(0);
            provable(n, &t.body, &simple, &mut fullness_failures)?;
        }
    }

    let mut functoriality = 0;
    let mut functoriality_failures = Vec::new();
    for n in 0..=max_object {
        for m in 0..=max_object {
            let outer = spans.hom(m, 1, n_max)?.morphisms;
            let inner = spans.hom(n, m, n_max)?.morphisms;
            for t in &outer {
                for s in &inner {
                    let composite = match spans.compose(t, s) {
                        Ok(c) => c,
                        Err(Error::TruncationExceeded(_)) => continue,
                        Err(e) => return Err(e),
                    };
                    functoriality += 1;
                    let args = span_to_terms(s);
                    let substituted = span_to_terms(t)[0].map_variables(&|v| args[v - 1].clone());
                    let direct = span_to_terms(&composite).remove(0);
                    provable(n, &substituted, &direct, &mut functoriality_failures)?;
                }
            }
        }
    }

    report.axiom_failures = axiom_failures;
    report.round_trips = round_trips;
    report.round_trip_failures = round_trip_failures;
    report.representatives = representatives;
    report.representative_failures = representative_failures;
    report.fullness = fullness;
    report.fullness_failures = fullness_failures;
    report.functoriality = functoriality;
    report.functoriality_failures = functoriality_failures;
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{make_sym, terminal_operad};

    #[test]
    fn axioms_are_linear_regular() {
        let th = theory_from_operad(Arc::new(make_sym(2))).unwrap();
        assert!(th.is_linear_regular_presentation());
        assert!(th.prover.is_complete());
    }

    #[test]
    fn oracle_identifies_action() {
        let o = Arc::new(make_sym(2));
        let eval = SpanEvaluation::new(Arc::clone(&o));
        let swap = o.find("[2,1]").unwrap();
        let id = o.find("[1,2]").unwrap();
        let a = simple_term(id, [2, 1]);
        let b = simple_term(swap, [1, 2]);
        assert!(eval.decide(2, &a, &b).unwrap());
        assert!(!eval.decide(2, &a, &simple_term(id, [1, 2])).unwrap());
    }

    #[test]
    fn psi_small() {
        for o in [make_sym(2), terminal_operad(2)] {
            let r = check_psi(Arc::new(o), 2, 3, SearchBudget { max_steps: 3, max_size: 8 }).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.round_trips > 0 && r.fullness > 0 && r.functoriality > 0);
        }
    }
}
