//! Finitely presented equational theories, interpretations between them,
//! and the linear-regular / strongly-regular / rigidity classifiers.

mod fixtures;
mod prover;

use std::collections::BTreeMap;
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::Permutation;
use crate::terms::{
    classify, enumerate_terms, simple_substitute, substitute, Signature, Term, TermFilter,
    TermInContext,
};

pub use fixtures::{
    anti_involution_monoid, builtin_theory, commutative_monoid, empty_theory, monoid,
    sup_lattice, terminal_theory, BUILTIN_THEORIES,
};
pub use prover::{
    bounded_search, check_chain, is_single_step, prove_equal, replay, Certificate,
    EqualityOracle, Normalizer, ProofVerdict, ProverStrategy, SearchBudget,
};

/// An axiom `lhs = rhs : x⃗ⁿ`.
#[derive(Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Equation {
    pub context: usize,
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(context: usize, lhs: Term, rhs: Term) -> Result<Self> {
        TermInContext::new(context, lhs.clone())?;
        TermInContext::new(context, rhs.clone())?;
        Ok(Equation { context, lhs, rhs })
    }

    pub fn sides(&self) -> (TermInContext, TermInContext) {
        (
            TermInContext {
                context: self.context,
                body: self.lhs.clone(),
            },
            TermInContext {
                context: self.context,
                body: self.rhs.clone(),
            },
        )
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {} : x⃗{}", self.lhs, self.rhs, self.context)
    }
}

impl fmt::Debug for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

#[derive(Clone, Debug)]
pub struct TheoryPresentation {
    pub name: String,
    pub signature: Signature,
    pub axioms: Vec<Equation>,
    pub prover: ProverStrategy,
}

impl TheoryPresentation {
    /// Validates every axiom against the signature and the prover's needs.
    pub fn new(
        name: &str,
        signature: Signature,
        axioms: Vec<Equation>,
        prover: ProverStrategy,
    ) -> Result<Self> {
        for ax in &axioms {
            ax.lhs.check(&signature, ax.context)?;
            ax.rhs.check(&signature, ax.context)?;
        }
        if let ProverStrategy::NormalForm(nz) = &prover {
            for &(sym, arity) in nz.required_symbols() {
                if signature.arity(sym) != Some(arity) {
                    return Err(Error::Validation(format!(
                        "normalizer `{}` needs symbol `{sym}` of arity {arity}",
                        nz.name()
                    )));
                }
            }
            if *nz == Normalizer::Free && !axioms.is_empty() {
                return Err(Error::Validation(
                    "the syntactic normalizer is only complete without axioms".into(),
                ));
            }
        }
        Ok(TheoryPresentation {
            name: name.to_string(),
            signature,
            axioms,
            prover,
        })
    }

    pub fn with_prover(&self, prover: ProverStrategy) -> Result<Self> {
        TheoryPresentation::new(&self.name, self.signature.clone(), self.axioms.clone(), prover)
    }

    pub fn prove(&self, lhs: &TermInContext, rhs: &TermInContext) -> Result<ProofVerdict> {
        prove_equal(self, lhs, rhs)
    }

    /// Canonical representative of the provability class of `t`, when the
    /// prover is a normalizer.
    pub fn normal_form(&self, t: &TermInContext) -> Option<TermInContext> {
        match &self.prover {
            ProverStrategy::NormalForm(nz) => Some(TermInContext {
                context: t.context,
                body: nz.normalize(&t.body),
            }),
            _ => None,
        }
    }

    /// All axioms have linear-regular sides. Sufficient for the theory to be
    /// linear-regular, not necessary.
    pub fn is_linear_regular_presentation(&self) -> bool {
        self.axioms.iter().all(|ax| {
            let (l, r) = ax.sides();
            classify(&l).linear_regular && classify(&r).linear_regular
        })
    }

    pub fn is_regular_presentation(&self) -> bool {
        self.axioms.iter().all(|ax| {
            let (l, r) = ax.sides();
            classify(&l).regular && classify(&r).regular
        })
    }

    pub fn is_strongly_regular_presentation(&self) -> bool {
        self.axioms.iter().all(|ax| {
            let (l, r) = ax.sides();
            classify(&l).strongly_regular && classify(&r).strongly_regular
        })
    }
}

/// Budget for [`refute_rigidity`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct RigidityBudget {
    pub max_nodes: usize,
    pub max_context: usize,
}

/// A provable equation `t = τ·t` with `τ ≠ id`.
#[derive(Clone, Debug, Serialize)]
pub struct RigidityWitness {
    pub term: TermInContext,
    pub tau: Permutation,
    pub permuted: TermInContext,
    pub certificate: Certificate,
}

#[derive(Clone, Debug, Serialize)]
pub struct RigidityRefutation {
    pub witness: Option<RigidityWitness>,
    pub candidates_checked: usize,
    /// Candidate equations the prover could not decide.
    pub unknown: usize,
    pub warning: Option<String>,
}

/// Searches linear-regular terms (by node count) for a provable `t = τ·t`
/// with `τ ≠ id`. No witness within budget is inconclusive.
pub fn refute_rigidity(theory: &TheoryPresentation, budget: RigidityBudget) -> Result<RigidityRefutation> {
    let warning = (!theory.is_linear_regular_presentation())
        .then(|| format!("`{}` is not a linear-regular presentation", theory.name));
    let mut checked = 0;
    let mut unknown = 0;
    for n in 2..=budget.max_context {
        let perms: Vec<Permutation> = Permutation::all(n)
            .into_iter()
            .filter(|p| !p.is_identity())
            .collect();
        for t in enumerate_terms(&theory.signature, n, budget.max_nodes, TermFilter::LinearRegular) {
            for tau in &perms {
                let permuted = simple_substitute(&t, tau.as_function())?;
                checked += 1;
                match prove_equal(theory, &t, &permuted)? {
                    ProofVerdict::Equal(certificate) => {
                        return Ok(RigidityRefutation {
                            witness: Some(RigidityWitness {
                                term: t,
                                tau: tau.clone(),
                                permuted,
                                certificate,
                            }),
                            candidates_checked: checked,
                            unknown,
                            warning,
                        });
                    }
                    ProofVerdict::Unknown => unknown += 1,
                    ProofVerdict::DistinctUpToBound => {}
                }
            }
        }
    }
    Ok(RigidityRefutation {
        witness: None,
        candidates_checked: checked,
        unknown,
        warning,
    })
}

/// An assignment of target terms to source symbols.
#[derive(Clone, Debug)]
pub struct Interpretation {
    pub source: TheoryPresentation,
    pub target: TheoryPresentation,
    map: BTreeMap<String, TermInContext>,
}

/// Outcome of checking one source axiom under an interpretation.
#[derive(Clone, Debug)]
pub struct AxiomCheck {
    pub axiom: Equation,
    pub verdict: ProofVerdict,
}

impl Interpretation {
    pub fn new(
        source: TheoryPresentation,
        target: TheoryPresentation,
        map: BTreeMap<String, TermInContext>,
    ) -> Result<Self> {
        for (name, arity) in source.signature.symbols() {
            let image = map
                .get(name)
                .ok_or_else(|| Error::Validation(format!("no image for `{name}`")))?;
            if image.context != arity {
                return Err(Error::ArityMismatch(format!(
                    "image of `{name}` lives over {} variables, expected {arity}",
                    image.context
                )));
            }
            image.body.check(&target.signature, arity)?;
        }
        if let Some(extra) = map.keys().find(|k| source.signature.arity(k).is_none()) {
            return Err(Error::UnknownSymbol(extra.clone()));
        }
        Ok(Interpretation { source, target, map })
    }

    pub fn identity(theory: &TheoryPresentation) -> Self {
        let map = theory
            .signature
            .symbols()
            .map(|(name, arity)| (name.to_string(), TermInContext::generic(name, arity)))
            .collect();
        Interpretation {
            source: theory.clone(),
            target: theory.clone(),
            map,
        }
    }

    pub fn image(&self, symbol: &str) -> Option<&TermInContext> {
        self.map.get(symbol)
    }

    /// Extends the symbol assignment to all terms by structural recursion.
    pub fn extend(&self, t: &TermInContext) -> Result<TermInContext> {
        Ok(TermInContext {
            context: t.context,
            body: self.extend_body(&t.body, t.context)?,
        })
    }

    fn extend_body(&self, t: &Term, n: usize) -> Result<Term> {
        match t {
            Term::Var(i) => Ok(Term::Var(*i)),
            Term::App(f, args) => {
                let image = self
                    .map
                    .get(f)
                    .ok_or_else(|| Error::UnknownSymbol(f.clone()))?;
                let args: Vec<TermInContext> = args
                    .iter()
                    .map(|a| Ok(TermInContext { context: n, body: self.extend_body(a, n)? }))
                    .collect::<Result<_>>()?;
                if args.is_empty() {
                    if image.context != 0 {
                        return Err(Error::ArityMismatch(f.clone()));
                    }
                    return Ok(image.body.clone());
                }
                Ok(substitute(image, &args)?.body)
            }
        }
    }

    /// Checks that each source axiom is provable after translation.
    pub fn check_axioms(&self) -> Result<Vec<AxiomCheck>> {
        self.source
            .axioms
            .iter()
            .map(|ax| {
                let (l, r) = ax.sides();
                let verdict = prove_equal(&self.target, &self.extend(&l)?, &self.extend(&r)?)?;
                Ok(AxiomCheck {
                    axiom: ax.clone(),
                    verdict,
                })
            })
            .collect()
    }

    pub fn is_linear_regular(&self) -> bool {
        self.map.values().all(|t| classify(t).linear_regular)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tic(s: &str, n: usize) -> TermInContext {
        TermInContext::parse(s, n).unwrap()
    }

    #[test]
    fn prove_equal_examples() {
        let mon = monoid();
        let v = prove_equal(&mon, &tic("m(x1,e)", 1), &tic("x1", 1)).unwrap();
        assert!(v.is_equal());
        let t = tic("m(x1,m(x2,e))", 2);
        assert!(prove_equal(&mon, &t, &t).unwrap().is_equal());
        assert_eq!(
            prove_equal(&mon, &tic("m(x1,x2)", 2), &tic("m(x2,x1)", 2)).unwrap(),
            ProofVerdict::DistinctUpToBound
        );
        assert!(prove_equal(&mon, &tic("x1", 1), &tic("x1", 2)).is_err());
    }

    #[test]
    fn normal_form_chains_replay() {
        for theory in [monoid(), commutative_monoid(), anti_involution_monoid()] {
            let sig = theory.signature.clone();
            for n in 0..=2 {
                for t in enumerate_terms(&sig, n, 6, TermFilter::All) {
                    let nz = match &theory.prover {
                        ProverStrategy::NormalForm(nz) => nz.clone(),
                        _ => unreachable!(),
                    };
                    let (nf, chain) = nz.normalize_traced(&t.body);
                    check_chain(&theory.axioms, &t.body, &nf, &chain)
                        .unwrap_or_else(|e| panic!("{}: {t}: {e}", theory.name));
                    assert_eq!(nz.normalize(&nf), nf, "idempotent on {t}");
                }
            }
        }
    }

    #[test]
    fn anti_involution_unit_is_fixed() {
        let ai = anti_involution_monoid();
        let v = prove_equal(&ai, &tic("s(e)", 0), &tic("e", 0)).unwrap();
        let ProofVerdict::Equal(cert) = v else { panic!("expected Equal") };
        replay(&ai, &tic("s(e)", 0), &tic("e", 0), &cert).unwrap();
    }

    #[test]
    fn checker_rejects_bogus_steps() {
        let mon = monoid();
        let chain = vec![Term::parse("m(x1,x2)").unwrap(), Term::parse("m(x2,x1)").unwrap()];
        assert!(check_chain(&mon.axioms, &chain[0], &chain[1], &chain).is_err());
    }

    #[test]
    fn bounded_search_finds_short_proofs_and_exhausts() {
        let mon = monoid().with_prover(ProverStrategy::BoundedSearch(SearchBudget {
            max_steps: 4,
            max_size: 7,
        }))
        .unwrap();
        let l = tic("m(m(x1,e),x2)", 2);
        let r = tic("m(x1,x2)", 2);
        let ProofVerdict::Equal(cert) = prove_equal(&mon, &l, &r).unwrap() else {
            panic!("expected a proof");
        };
        replay(&mon, &l, &r, &cert).unwrap();

        // Size cap 3 leaves no room for unit insertion: the closure is {m(x1,x2)}.
        let tight = mon
            .with_prover(ProverStrategy::BoundedSearch(SearchBudget {
                max_steps: 10,
                max_size: 3,
            }))
            .unwrap();
        assert_eq!(
            prove_equal(&tight, &tic("m(x1,x2)", 2), &tic("m(x2,x1)", 2)).unwrap(),
            ProofVerdict::DistinctUpToBound
        );
    }

    #[test]
    fn bounded_search_with_unbound_variables_never_claims_distinct() {
        // x1 = e lets e rewrite to anything; exhaustion is not conclusive.
        let t = terminal_theory();
        let v = prove_equal(&t, &tic("x1", 2), &tic("x2", 2)).unwrap();
        assert_ne!(v, ProofVerdict::DistinctUpToBound);
    }

    #[test]
    fn presentation_classifiers() {
        assert!(commutative_monoid().is_linear_regular_presentation());
        assert!(!sup_lattice().is_linear_regular_presentation());
        assert!(sup_lattice().is_regular_presentation());
        assert!(empty_theory().is_linear_regular_presentation());
        assert!(monoid().is_strongly_regular_presentation());
        assert!(!anti_involution_monoid().is_strongly_regular_presentation());
        assert!(empty_theory().is_strongly_regular_presentation());
    }

    #[test]
    fn refute_rigidity_examples() {
        let r = refute_rigidity(
            &commutative_monoid(),
            RigidityBudget { max_nodes: 3, max_context: 2 },
        )
        .unwrap();
        let w = r.witness.expect("commutative monoids are not rigid");
        assert_eq!(w.term, tic("m(x1,x2)", 2));
        assert_eq!(w.tau, Permutation::new(vec![2, 1]).unwrap());
        replay(&commutative_monoid(), &w.term, &w.permuted, &w.certificate).unwrap();

        let budget = RigidityBudget { max_nodes: 5, max_context: 3 };
        assert!(refute_rigidity(&monoid(), budget).unwrap().witness.is_none());
        assert!(refute_rigidity(&anti_involution_monoid(), budget).unwrap().witness.is_none());
        assert!(refute_rigidity(&sup_lattice(), budget).unwrap().warning.is_some());
    }

    #[test]
    fn interpretation_recursion() {
        let mon = monoid();
        let id = Interpretation::identity(&mon);
        let t = tic("m(x1,m(x2,e))", 2);
        assert_eq!(id.extend(&t).unwrap(), t);
        assert_eq!(id.extend(&tic("x2", 3)).unwrap(), tic("x2", 3));

        let mut map = BTreeMap::new();
        map.insert("m".to_string(), tic("m(x2,x1)", 2));
        map.insert("e".to_string(), tic("e", 0));
        let op = Interpretation::new(mon.clone(), mon.clone(), map).unwrap();
        assert_eq!(
            op.extend(&tic("m(x1,m(x2,x3))", 3)).unwrap(),
            tic("m(m(x3,x2),x1)", 3)
        );
        // The opposite monoid is a model of the monoid axioms.
        assert!(op.check_axioms().unwrap().iter().all(|c| c.verdict.is_equal()));
        assert!(op.is_linear_regular());
    }

    #[test]
    fn interpretation_rejects_bad_maps() {
        let mon = monoid();
        let mut map = BTreeMap::new();
        map.insert("m".to_string(), tic("m(x1,x2)", 2));
        assert!(Interpretation::new(mon.clone(), mon.clone(), map.clone()).is_err());
        map.insert("e".to_string(), tic("e", 0));
        map.insert("k".to_string(), tic("e", 0));
        assert!(matches!(
            Interpretation::new(mon.clone(), mon, map),
            Err(Error::UnknownSymbol(_))
        ));
    }
}
