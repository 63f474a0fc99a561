//! Analytic functors by their coefficients: finite `S_n`-sets `A_n`, their
//! composite `(A∘B)_n`, and evaluation on finite sets.

use serde::Serialize;

use super::analytic::{tensor_quotient, weighted_words, Word};
use super::QuotientSet;
use crate::error::{Error, Result};
use crate::finset::{BlockStructure, FinFunction, Permutation};
use crate::operads::{sym_compose, Op, SymmetricOperadData};

/// Arity-indexed finite sets with left symmetric-group actions.
pub trait SymmetricSequence {
    fn max_arity(&self) -> usize;

    fn size(&self, n: usize) -> usize;

    /// `σ·a`.
    fn act(&self, sigma: &Permutation, a: Op) -> Result<Op>;
}

impl SymmetricSequence for SymmetricOperadData {
    fn max_arity(&self) -> usize {
        SymmetricOperadData::max_arity(self)
    }

    fn size(&self, n: usize) -> usize {
        SymmetricOperadData::size(self, n)
    }

    fn act(&self, sigma: &Permutation, a: Op) -> Result<Op> {
        SymmetricOperadData::act(self, sigma, a)
    }
}

/// Tabulated coefficients `A_0, …, A_N`.
#[derive(Clone, Debug, Serialize)]
pub struct AnalyticCoefficients {
    pub name: String,
    carriers: Vec<Vec<String>>,
    /// `action[n][rank(σ)][a]`.
    action: Vec<Vec<Vec<usize>>>,
}

impl AnalyticCoefficients {
    /// Tabulates `action` and checks that it is a left action.
    pub fn new(
        name: &str,
        carriers: Vec<Vec<String>>,
        action: impl Fn(usize, &Permutation, usize) -> Result<usize>,
    ) -> Result<Self> {
        let mut table = Vec::with_capacity(carriers.len());
        for (n, names) in carriers.iter().enumerate() {
            let perms = Permutation::all(n);
            let mut rows = Vec::with_capacity(perms.len());
            for sigma in &perms {
                let row = (0..names.len())
                    .map(|a| action(n, sigma, a))
                    .collect::<Result<Vec<_>>>()?;
                if row.iter().any(|&b| b >= names.len()) {
                    return Err(Error::Validation(format!("action of {sigma} leaves A_{n}")));
                }
                rows.push(row);
            }
            for sigma in &perms {
                for tau in &perms {
                    let st = sigma.then_after(tau)?.rank();
                    for a in 0..names.len() {
                        if rows[st][a] != rows[sigma.rank()][rows[tau.rank()][a]] {
                            return Err(Error::LawViolation(format!(
                                "({sigma}∘{tau})·{} ≠ {sigma}·({tau}·{})",
                                names[a], names[a]
                            )));
                        }
                    }
                }
            }
            if rows.first().is_some_and(|id| id.iter().enumerate().any(|(a, &b)| a != b)) {
                return Err(Error::LawViolation(format!("the identity of S_{n} acts nontrivially")));
            }
            table.push(rows);
        }
        Ok(AnalyticCoefficients {
            name: name.to_string(),
            carriers,
            action: table,
        })
    }

    pub fn of_operad(operad: &SymmetricOperadData) -> Result<Self> {
        let carriers = (0..=operad.max_arity())
            .map(|n| operad.operations(n).map(|a| operad.op_name(a).to_string()).collect())
            .collect();
        AnalyticCoefficients::new(operad.name(), carriers, |n, sigma, a| {
            Ok(operad.act(sigma, Op::new(n, a))?.index)
        })
    }

    /// `A_1 = {ι}` and `A_n = ∅` otherwise.
    pub fn identity(max_arity: usize) -> Self {
        let carriers = (0..=max_arity)
            .map(|n| if n == 1 { vec!["ι".to_string()] } else { Vec::new() })
            .collect();
        AnalyticCoefficients::new("Id", carriers, |_, _, a| Ok(a)).expect("trivial action")
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.carriers.iter().map(Vec::len).collect()
    }

    pub fn element_name(&self, a: Op) -> &str {
        &self.carriers[a.arity][a.index]
    }

    pub fn elements(&self, n: usize) -> impl Iterator<Item = Op> {
        (0..self.size(n)).map(move |i| Op::new(n, i))
    }
}

impl SymmetricSequence for AnalyticCoefficients {
    fn max_arity(&self) -> usize {
        self.carriers.len() - 1
    }

    fn size(&self, n: usize) -> usize {
        self.carriers.get(n).map_or(0, Vec::len)
    }

    fn act(&self, sigma: &Permutation, a: Op) -> Result<Op> {
        if a.arity >= self.carriers.len() || a.index >= self.carriers[a.arity].len() || sigma.size() != a.arity {
            return Err(Error::OutOfRange(format!("{sigma} acting on element {} of arity {}", a.index, a.arity)));
        }
        Ok(Op::new(a.arity, self.action[a.arity][sigma.rank()][a.index]))
    }
}

/// `⟨σ, b_1, …, b_m, a⟩`: `a(b_1(…), …, b_m(…))` on the variables `x⃗∘σ`
/// laid out in blocks.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct CompositeElement {
    pub sigma: Permutation,
    pub inner: Vec<Op>,
    pub outer: Op,
}

/// `(A∘B)_n` for `n ≤ N` with the classes behind each element.
#[derive(Clone, Debug)]
pub struct CompositeCoefficients {
    pub coefficients: AnalyticCoefficients,
    pub classes: Vec<QuotientSet<CompositeElement>>,
}

impl CompositeCoefficients {
    pub fn class_of(&self, e: &CompositeElement) -> Result<Op> {
        let n = e.sigma.size();
        self.classes
            .get(n)
            .and_then(|q| q.class_of(e))
            .map(|c| Op::new(n, c))
            .ok_or_else(|| Error::truncation(format!("{e:?} is outside the composite")))
    }

    pub fn representative(&self, c: Op) -> &CompositeElement {
        self.classes[c.arity].representative(c.index)
    }
}

/// Weak compositions of `n` into `m` parts of size at most `cap`.
pub(crate) fn compositions(n: usize, m: usize, cap: usize) -> Vec<Vec<usize>> {
    if m == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    for first in 0..=n.min(cap) {
        for mut rest in compositions(n - first, m - 1, cap) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

pub(crate) fn product_of<T: Clone>(choices: &[Vec<T>]) -> Vec<Vec<T>> {
    choices.iter().fold(vec![Vec::new()], |acc, options| {
        acc.into_iter()
            .flat_map(|prefix| {
                options.iter().map(move |o| {
                    let mut v = prefix.clone();
                    v.push(o.clone());
                    v
                })
            })
            .collect()
    })
}

/// `(A∘B)_n = Σ (S_n × B_{n_1} × … × B_{n_m} × A_m) / ∼_n` for `n ≤ N`, with
/// `⟨σ, σ_i·b_i, τ·a⟩ ∼ ⟨σ∘(⟨σ_i⟩⋆τ), b_{τ(i)}, a⟩` and the residual left
/// action on `σ`.
pub fn compose_coefficients(
    a: &AnalyticCoefficients,
    b: &AnalyticCoefficients,
    max_arity: usize,
) -> Result<CompositeCoefficients> {
    let mut classes = Vec::with_capacity(max_arity + 1);
    for n in 0..=max_arity {
        let mut generators = Vec::new();
        for m in 0..=a.max_arity() {
            for sizes in compositions(n, m, b.max_arity()) {
                let inner_choices: Vec<Vec<Op>> = sizes.iter().map(|&k| b.elements(k).collect()).collect();
                let inner_tuples = product_of(&inner_choices);
                for outer in a.elements(m) {
                    for sigma in Permutation::all(n) {
                        for inner in &inner_tuples {
                            generators.push(CompositeElement {
                                sigma: sigma.clone(),
                                inner: inner.clone(),
                                outer,
                            });
                        }
                    }
                }
            }
        }
        let mut q = QuotientSet::new(generators);
        for i in 0..q.generators().len() {
            let g = q.generators()[i].clone();
            let m = g.inner.len();
            let block_perms: Vec<Vec<Permutation>> = g.inner.iter().map(|c| Permutation::all(c.arity)).collect();
            for sigmas in product_of(&block_perms) {
                for tau in Permutation::all(m) {
                    let bs = g
                        .inner
                        .iter()
                        .zip(&sigmas)
                        .map(|(&c, s)| b.act(&s.inverse(), c))
                        .collect::<Result<Vec<_>>>()?;
                    let star = sym_compose(&sigmas, &tau)?;
                    let other = CompositeElement {
                        sigma: g.sigma.then_after(&star)?,
                        inner: (1..=m).map(|i| bs[tau.apply(i) - 1]).collect(),
                        outer: a.act(&tau.inverse(), g.outer)?,
                    };
                    if !q.relate(&g, &other) {
                        return Err(Error::Validation("composite generators are not closed".into()));
                    }
                }
            }
        }
        q.refresh();
        classes.push(q);
    }
    let carriers: Vec<Vec<String>> = classes
        .iter()
        .map(|q| {
            (0..q.class_count())
                .map(|c| {
                    let e = q.representative(c);
                    let inner: Vec<&str> = e.inner.iter().map(|&x| b.element_name(x)).collect();
                    format!("⟨{};{};{}⟩", e.sigma, inner.join(","), a.element_name(e.outer))
                })
                .collect()
        })
        .collect();
    let lookup = |n: usize, rho: &Permutation, c: usize| -> Result<usize> {
        let e = classes[n].representative(c);
        let moved = CompositeElement {
            sigma: rho.then_after(&e.sigma)?,
            ..e.clone()
        };
        classes[n]
            .class_of(&moved)
            .ok_or_else(|| Error::Validation("residual action leaves the composite".into()))
    };
    let coefficients = AnalyticCoefficients::new(&format!("{}∘{}", a.name, b.name), carriers, lookup)?;
    Ok(CompositeCoefficients { coefficients, classes })
}

/// `⟨f_1,…,f_m⟩⋆τ` for functions `f_i : (k_i] → (n_i]` along `τ : (l] → (m]`:
/// the map from blocks `(k_{τ(1)},…,k_{τ(l)})` to blocks `(n_1,…,n_m)`
/// sending `⟨j, r⟩` to `⟨τ(j), f_{τ(j)}(r)⟩`.
pub fn star_along(fs: &[FinFunction], tau: &FinFunction) -> Result<FinFunction> {
    if tau.codomain() != fs.len() {
        return Err(Error::size(format!("{} block maps along τ into ({}]", fs.len(), tau.codomain())));
    }
    let target = BlockStructure::new(fs.iter().map(FinFunction::codomain).collect());
    let mut values = Vec::new();
    for j in 1..=tau.domain() {
        let i = tau.apply(j);
        let f = &fs[i - 1];
        for r in 1..=f.domain() {
            values.push(target.lex_index(i, f.apply(r))?);
        }
    }
    FinFunction::new(target.total(), values)
}

/// `A(X) = Σ Xⁿ ⊗_{S_n} A_n` with letters weighted by `weights`, total
/// weight at most `max_weight`.
pub fn evaluate_on<S: SymmetricSequence + ?Sized>(
    a: &S,
    weights: &[usize],
    max_weight: usize,
) -> Result<QuotientSet<Word>> {
    tensor_quotient(a, weighted_words(a, weights, max_weight, a.max_arity()))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct CompositionEvaluationReport {
    /// `(|X|, |(A∘B)(X)|, |A(B(X))|)`.
    pub sizes: Vec<(usize, usize, usize)>,
}

impl CompositionEvaluationReport {
    pub fn passed(&self) -> bool {
        self.sizes.iter().all(|&(_, l, r)| l == r)
    }
}

/// Compares `|(A∘B)(X)|` with `|A(B(X))|` at total arity `≤ N`.
pub fn check_composition_by_evaluation(
    a: &AnalyticCoefficients,
    b: &AnalyticCoefficients,
    max_arity: usize,
    max_set_size: usize,
) -> Result<CompositionEvaluationReport> {
    let ab = compose_coefficients(a, b, max_arity)?;
    let mut report = CompositionEvaluationReport::default();
    for k in 0..=max_set_size {
        let left = evaluate_on(&ab.coefficients, &vec![1; k], max_arity)?.class_count();
        let bx = evaluate_on(b, &vec![1; k], max_arity)?;
        let weights: Vec<usize> = (0..bx.class_count()).map(|c| bx.representative(c).arity()).collect();
        let right = evaluate_on(a, &weights, max_arity)?.class_count();
        report.sizes.push((k, left, right));
    }
    Ok(report)
}
