//! Lawvere theories as hom-enumerable interfaces, with the span theory of a
//! symmetric operad, the term theory of a presentation, the initial and
//! terminal theories, and generic checks (category and product laws,
//! simple automorphisms, rigidity, indecomposability of 1).

mod adjunction;
mod checks;
mod factorization;
mod psi;
mod small;
mod span;
mod term;

use std::fmt::Debug;
use std::hash::Hash;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::FinFunction;

pub use adjunction::{
    analytic_operad, counit, operad_unit, triangle_identities, AnalyticOperad, TriangleReport,
};
pub use checks::{
    check_category_laws, indecomposability_of_one, rigidity_check_lawvere,
    simple_automorphisms_check, CategoryLawReport, Decomposition, IndecomposabilityReport,
    SimpleAutomorphismReport,
};
pub use factorization::{check_factorization_system, FactorizationReport};
pub use psi::{check_psi, span_to_terms, theory_from_operad, PsiReport, SpanEvaluation};
pub use small::{InitialTheory, TerminalTheory};
pub use span::{
    all_factorizations, classify_morphism, diagonal_filler, factorize, span_equal,
    MorphismClassification, SpanMorphism, SpanTheory, Square,
};
pub use term::{TermTheory, TupleMorphism};

/// An enumerated piece of a hom-set.
#[derive(Clone, Debug, Serialize)]
pub struct HomFragment<M> {
    pub source: usize,
    pub target: usize,
    pub bound: usize,
    pub morphisms: Vec<M>,
    /// False when an incomplete prover may have split or merged classes.
    pub authoritative: bool,
}

/// A Lawvere theory given by canonical morphism values, so that equality of
/// morphisms is equality of values.
pub trait LawvereTheory {
    type Mor: Clone + Eq + Hash + Ord + Debug;

    fn name(&self) -> String;

    fn source(&self, a: &Self::Mor) -> usize;

    fn target(&self, a: &Self::Mor) -> usize;

    fn identity(&self, n: usize) -> Self::Mor;

    /// `g ∘ f`.
    fn compose(&self, g: &Self::Mor, f: &Self::Mor) -> Result<Self::Mor>;

    /// The image of `φ : m → n` in F, a morphism `n → m`.
    fn pi(&self, phi: &FinFunction) -> Result<Self::Mor>;

    /// `⟨a_1,…,a_m⟩ : n → m` from morphisms `a_i : n → 1`.
    fn tuple(&self, n: usize, components: &[Self::Mor]) -> Result<Self::Mor>;

    /// Morphisms `n → m` within `bound`, in a fixed order.
    fn hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<Self::Mor>>;

    fn is_analytic(&self, a: &Self::Mor) -> Result<bool>;

    fn display(&self, a: &Self::Mor) -> String;

    /// Analytic morphisms `n → m` within `bound`.
    fn analytic_hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<Self::Mor>> {
        let mut frag = self.hom(n, m, bound)?;
        let mut kept = Vec::new();
        for a in frag.morphisms {
            if self.is_analytic(&a)? {
                kept.push(a);
            }
        }
        frag.morphisms = kept;
        Ok(frag)
    }

    /// The chosen projection `π_i^n : n → 1`.
    fn projection(&self, i: usize, n: usize) -> Result<Self::Mor> {
        self.pi(&FinFunction::point(i, n)?)
    }

    /// `π_i ∘ a` for `a : n → m`.
    fn component(&self, a: &Self::Mor, i: usize) -> Result<Self::Mor> {
        self.compose(&self.projection(i, self.target(a))?, a)
    }

    /// `a_1 × … × a_k` for `a_i : n_i → m_i`.
    fn product(&self, factors: &[Self::Mor]) -> Result<Self::Mor> {
        let sources: Vec<usize> = factors.iter().map(|a| self.source(a)).collect();
        let total: usize = sources.iter().sum();
        let blocks = crate::finset::BlockStructure::new(sources);
        let mut components = Vec::new();
        for (i, a) in factors.iter().enumerate() {
            let proj = self.pi(&blocks.inclusion(i + 1))?;
            let restricted = self.compose(a, &proj)?;
            for j in 1..=self.target(a) {
                components.push(self.component(&restricted, j)?);
            }
        }
        self.tuple(total, &components)
    }

    /// Whether `a` has a two-sided inverse among `candidates`.
    fn inverse_in(&self, a: &Self::Mor, candidates: &[Self::Mor]) -> Result<Option<Self::Mor>> {
        let n = self.source(a);
        let m = self.target(a);
        for b in candidates {
            if self.source(b) != m || self.target(b) != n {
                continue;
            }
            // A composite beyond the truncation is never an identity.
            let is_identity = |c: Result<Self::Mor>, k: usize| match c {
                Ok(c) => Ok(c == self.identity(k)),
                Err(Error::TruncationExceeded(_)) => Ok(false),
                Err(e) => Err(e),
            };
            if is_identity(self.compose(b, a), n)? && is_identity(self.compose(a, b), m)? {
                return Ok(Some(b.clone()));
            }
        }
        Ok(None)
    }
}
