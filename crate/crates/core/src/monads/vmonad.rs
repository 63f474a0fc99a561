//! The monad `V` on coefficient sequences, `V(A)_n = Σ_m (n]^m ⊗_{S_m} A_m`,
//! the coherence map `φ : V(A)∘V(A) → V(A∘A)`, and the algebra map of a
//! functor on finite sets.

use serde::Serialize;

use super::analytic::Word;
use super::coefficients::{
    compose_coefficients, evaluate_on, star_along, AnalyticCoefficients, CompositeCoefficients,
    CompositeElement, SymmetricSequence,
};
use super::QuotientSet;
use crate::error::{Error, Result};
use crate::finset::{BlockStructure, FinFunction, Permutation};
use crate::operads::Op;

const MAX_FAILURES: usize = 64;

/// `[f, a]` with `f : (m] → (n]` and `a ∈ A_m`; read as `a(x_{f(1)},…,x_{f(m)})`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct VElement {
    pub f: FinFunction,
    pub a: Op,
}

#[derive(Clone, Debug)]
pub struct VCoefficients {
    pub coefficients: AnalyticCoefficients,
    pub classes: Vec<QuotientSet<VElement>>,
}

impl VCoefficients {
    pub fn class_of(&self, e: &VElement) -> Result<Op> {
        let n = e.f.codomain();
        self.classes
            .get(n)
            .and_then(|q| q.class_of(e))
            .map(|c| Op::new(n, c))
            .ok_or_else(|| Error::truncation(format!("{e:?} is outside V(A)")))
    }

    pub fn representative(&self, c: Op) -> &VElement {
        self.classes[c.arity].representative(c.index)
    }
}

/// `V(A)_n` for `n ≤ N`, acting by `ρ·[f, a] = [ρ∘f, a]`.
pub fn v_coefficients(a: &AnalyticCoefficients, max_arity: usize) -> Result<VCoefficients> {
    let mut classes = Vec::with_capacity(max_arity + 1);
    for n in 0..=max_arity {
        let mut generators = Vec::new();
        for m in 0..=a.max_arity() {
            for x in a.elements(m) {
                for f in FinFunction::all(m, n) {
                    generators.push(VElement { f, a: x });
                }
            }
        }
        let mut q = QuotientSet::new(generators);
        for i in 0..q.generators().len() {
            let g = q.generators()[i].clone();
            for sigma in Permutation::generators(g.a.arity) {
                let left = VElement { f: g.f.after(sigma.as_function())?, a: g.a };
                let right = VElement { f: g.f.clone(), a: a.act(&sigma, g.a)? };
                q.relate(&left, &right);
            }
        }
        q.refresh();
        classes.push(q);
    }
    let carriers = classes
        .iter()
        .map(|q| {
            (0..q.class_count())
                .map(|c| {
                    let e = q.representative(c);
                    format!("[{};{}]", e.f, a.element_name(e.a))
                })
                .collect()
        })
        .collect();
    let action = |n: usize, rho: &Permutation, c: usize| -> Result<usize> {
        let e = classes[n].representative(c);
        let moved = VElement { f: rho.as_function().after(&e.f)?, a: e.a };
        classes[n]
            .class_of(&moved)
            .ok_or_else(|| Error::Validation("residual action leaves V(A)".into()))
    };
    let coefficients = AnalyticCoefficients::new(&format!("V({})", a.name), carriers, action)?;
    Ok(VCoefficients { coefficients, classes })
}

/// `a ↦ [1_n, a]`.
pub fn v_unit(v: &VCoefficients, a: Op) -> Result<Op> {
    v.class_of(&VElement { f: FinFunction::identity(a.arity), a })
}

/// `[g, [f, a]] ↦ [g∘f, a]` from `V(V(A))_n` to `V(A)_n`.
pub fn v_mult(v: &VCoefficients, vv: &VCoefficients, c: Op) -> Result<Op> {
    let outer = vv.representative(c);
    v_mult_element(v, outer)
}

fn v_mult_element(v: &VCoefficients, outer: &VElement) -> Result<Op> {
    let inner = v.representative(outer.a);
    v.class_of(&VElement { f: outer.f.after(&inner.f)?, a: inner.a })
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct VMonadReport {
    pub coefficients: String,
    pub max_arity: usize,
    pub sizes: Vec<usize>,
    pub unit_checked: usize,
    pub well_defined_checked: usize,
    pub associativity_checked: usize,
    pub failures: Vec<String>,
}

impl VMonadReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(message);
        }
    }
}

/// Unit laws, well-definedness of the multiplication on classes, and
/// associativity, exhaustively at arities `≤ N`.
pub fn check_v_monad(a: &AnalyticCoefficients, max_arity: usize) -> Result<VMonadReport> {
    let v = v_coefficients(a, max_arity)?;
    let vv = v_coefficients(&v.coefficients, max_arity)?;
    let vvv = v_coefficients(&vv.coefficients, max_arity)?;
    let mut report = VMonadReport {
        coefficients: a.name.clone(),
        max_arity,
        sizes: v.coefficients.sizes(),
        ..Default::default()
    };
    for n in 0..=max_arity {
        for c in v.coefficients.elements(n) {
            report.unit_checked += 1;
            let left = v_mult(&v, &vv, v_unit(&vv, c)?)?;
            let e = v.representative(c);
            let lifted = VElement { f: e.f.clone(), a: v_unit(&v, e.a)? };
            let right = v_mult_element(&v, &lifted)?;
            if left != c || right != c {
                report.fail(format!("unit law at {}", v.coefficients.element_name(c)));
            }
        }
        for (i, g) in vv.classes[n].generators().iter().enumerate() {
            let class = Op::new(n, vv.classes[n].class_of_position(i));
            report.well_defined_checked += 1;
            if v_mult_element(&v, g)? != v_mult(&v, &vv, class)? {
                report.fail(format!("μ_V depends on the representative {g:?}"));
            }
            let expected = v_mult_element(&v, g)?;
            for member in v.classes[g.a.arity].members(g.a.index) {
                report.well_defined_checked += 1;
                let got = v.class_of(&VElement { f: g.f.after(&member.f)?, a: member.a })?;
                if got != expected {
                    report.fail(format!("μ_V depends on the inner representative {member:?}"));
                }
            }
        }
        for c in 0..vvv.classes[n].class_count() {
            report.associativity_checked += 1;
            let top = vvv.classes[n].representative(c);
            let middle = vv.representative(top.a);
            let flattened = VElement { f: top.f.after(&middle.f)?, a: middle.a };
            let left = v_mult_element(&v, &flattened)?;
            let pushed = VElement { f: top.f.clone(), a: v_mult_element(&v, middle)? };
            let right = v_mult_element(&v, &pushed)?;
            if left != right {
                report.fail(format!("associativity of μ_V at {top:?}"));
            }
        }
    }
    Ok(report)
}

/// The pieces `φ` needs: `V(A)`, `V(A)∘V(A)`, `A∘A` and `V(A∘A)`.
pub struct PhiData {
    pub a: AnalyticCoefficients,
    pub va: VCoefficients,
    pub vava: CompositeCoefficients,
    pub aa: CompositeCoefficients,
    pub vaa: VCoefficients,
    pub max_arity: usize,
}

impl PhiData {
    pub fn new(a: &AnalyticCoefficients, max_arity: usize) -> Result<Self> {
        let va = v_coefficients(a, max_arity)?;
        let vava = compose_coefficients(&va.coefficients, &va.coefficients, max_arity)?;
        let aa = compose_coefficients(a, a, max_arity)?;
        let vaa = v_coefficients(&aa.coefficients, max_arity)?;
        Ok(PhiData {
            a: a.clone(),
            va,
            vava,
            aa,
            vaa,
            max_arity,
        })
    }

    /// `⟨σ, [f_i, a_i], [τ, a]⟩ ↦ [σ∘(⟨f_i⟩⋆τ), ⟨1, a_{τ(1)},…,a_{τ(l)}, a⟩]`
    /// on the given representatives.
    pub fn phi_on(&self, sigma: &Permutation, inner: &[&VElement], outer: &VElement) -> Result<Op> {
        let fs: Vec<FinFunction> = inner.iter().map(|e| e.f.clone()).collect();
        let star = star_along(&fs, &outer.f)?;
        let psi = sigma.as_function().after(&star)?;
        let p = psi.domain();
        if p > self.max_arity {
            return Err(Error::truncation(format!("φ reaches arity {p}")));
        }
        let composite = CompositeElement {
            sigma: Permutation::identity(p),
            inner: (1..=outer.f.domain()).map(|j| inner[outer.f.apply(j) - 1].a).collect(),
            outer: outer.a,
        };
        let d = self.aa.class_of(&composite)?;
        self.vaa.class_of(&VElement { f: psi, a: d })
    }

    /// `φ` on an element of `(V(A)∘V(A))_n`, using class representatives.
    pub fn phi(&self, e: &CompositeElement) -> Result<Op> {
        let inner: Vec<&VElement> = e.inner.iter().map(|&c| self.va.representative(c)).collect();
        self.phi_on(&e.sigma, &inner, self.va.representative(e.outer))
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct PhiReport {
    pub coefficients: String,
    pub max_arity: usize,
    pub max_set_size: usize,
    /// Generators of `(V(A)∘V(A))_n` compared with their class representative.
    pub generators_checked: usize,
    /// Inner and outer representatives varied on class representatives.
    pub representatives_checked: usize,
    pub truncated: usize,
    /// Elements evaluated on `Xⁿ` against the direct evaluation.
    pub evaluations_checked: usize,
    pub failures: Vec<String>,
}

impl PhiReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(message);
        }
    }
}

fn skip_truncation<T>(r: Result<T>, truncated: &mut usize) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TruncationExceeded(_)) => {
            *truncated += 1;
            Ok(None)
        }
        Err(e) => Err(e),
    }
}

fn all_tuples(set_size: usize, n: usize) -> Vec<Vec<usize>> {
    (0..n).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|p| {
                (0..set_size).map(move |x| {
                    let mut v = p.clone();
                    v.push(x);
                    v
                })
            })
            .collect()
    })
}

/// Checks that `φ` is constant on classes for `n ≤ N` and that evaluating
/// both sides on `x⃗ ∈ Xⁿ`, `|X| ≤ max_set_size`, gives the same element of
/// `A(A(X))`.
pub fn check_phi(a: &AnalyticCoefficients, max_arity: usize, max_set_size: usize) -> Result<PhiReport> {
    let data = PhiData::new(a, max_arity)?;
    let mut report = PhiReport {
        coefficients: a.name.clone(),
        max_arity,
        max_set_size,
        ..Default::default()
    };
    let mut truncated = 0;
    for n in 0..=max_arity {
        let q = &data.vava.classes[n];
        let reps: Vec<Option<Op>> = (0..q.class_count())
            .map(|c| skip_truncation(data.phi(q.representative(c)), &mut truncated))
            .collect::<Result<_>>()?;
        for (i, g) in q.generators().iter().enumerate() {
            let Some(expected) = reps[q.class_of_position(i)] else { continue };
            report.generators_checked += 1;
            match skip_truncation(data.phi(g), &mut truncated)? {
                Some(got) if got == expected => {}
                got => report.fail(format!("φ({g:?}) = {got:?} but its class gives {expected:?}")),
            }
        }
        for c in 0..q.class_count() {
            let Some(expected) = reps[c] else { continue };
            let e = q.representative(c);
            let inner: Vec<&VElement> = e.inner.iter().map(|&x| data.va.representative(x)).collect();
            let outer = data.va.representative(e.outer);
            for (pos, &x) in e.inner.iter().enumerate() {
                for member in data.va.classes[x.arity].members(x.index) {
                    let mut varied = inner.clone();
                    varied[pos] = member;
                    report.representatives_checked += 1;
                    if skip_truncation(data.phi_on(&e.sigma, &varied, outer), &mut truncated)? != Some(expected) {
                        report.fail(format!("φ depends on the representative {member:?} in {e:?}"));
                    }
                }
            }
            for member in data.va.classes[e.outer.arity].members(e.outer.index) {
                report.representatives_checked += 1;
                if skip_truncation(data.phi_on(&e.sigma, &inner, member), &mut truncated)? != Some(expected) {
                    report.fail(format!("φ depends on the outer representative {member:?} in {e:?}"));
                }
            }
        }
    }

    for k in 0..=max_set_size {
        let ax = evaluate_on(a, &vec![1; k], max_arity)?;
        let weights: Vec<usize> = (0..ax.class_count()).map(|c| ax.representative(c).arity()).collect();
        let aax = evaluate_on(a, &weights, max_arity)?;
        let inner_word = |letters: Vec<usize>, op: Op| -> Result<usize> {
            ax.class_of(&Word { letters, op })
                .ok_or_else(|| Error::truncation("an inner word leaves A(X)"))
        };
        for n in 0..=max_arity {
            let q = &data.vava.classes[n];
            for c in 0..q.class_count() {
                let e = q.representative(c);
                let Some(image) = skip_truncation(data.phi(e), &mut truncated)? else { continue };
                for x in all_tuples(k, n) {
                    report.evaluations_checked += 1;
                    let v: Vec<usize> = (1..=n).map(|t| x[e.sigma.apply(t) - 1]).collect();
                    let blocks = BlockStructure::new(e.inner.iter().map(|c| c.arity).collect());
                    let mut values = Vec::with_capacity(e.inner.len());
                    for (i, &ci) in e.inner.iter().enumerate() {
                        let rep = data.va.representative(ci);
                        let inc = blocks.inclusion(i + 1);
                        let letters = (1..=rep.f.domain()).map(|r| v[inc.apply(rep.f.apply(r)) - 1]).collect();
                        values.push(inner_word(letters, rep.a)?);
                    }
                    let outer = data.va.representative(e.outer);
                    let left = Word {
                        letters: (1..=outer.f.domain()).map(|j| values[outer.f.apply(j) - 1]).collect(),
                        op: outer.a,
                    };

                    let out = data.vaa.representative(image);
                    let w: Vec<usize> = (1..=out.f.domain()).map(|t| x[out.f.apply(t) - 1]).collect();
                    let d = data.aa.representative(out.a);
                    let v2: Vec<usize> = (1..=d.sigma.size()).map(|t| w[d.sigma.apply(t) - 1]).collect();
                    let blocks2 = BlockStructure::new(d.inner.iter().map(|b| b.arity).collect());
                    let mut letters = Vec::with_capacity(d.inner.len());
                    for (j, &b) in d.inner.iter().enumerate() {
                        let inc = blocks2.inclusion(j + 1);
                        letters.push(inner_word((1..=b.arity).map(|r| v2[inc.apply(r) - 1]).collect(), b)?);
                    }
                    let right = Word { letters, op: d.outer };
                    if aax.class_of(&left) != aax.class_of(&right) || aax.class_of(&left).is_none() {
                        report.fail(format!("|X|={k}, x⃗={x:?}: φ({e:?}) disagrees with evaluation"));
                    }
                }
            }
        }
    }
    report.truncated = truncated;
    Ok(report)
}

/// A functor on the finite sets `(0],…,(N]`, given on elements.
pub trait FinFunctor {
    fn name(&self) -> String;
    fn max_arity(&self) -> usize;
    fn size(&self, n: usize) -> usize;
    /// `G(u)(t)` for `u : (m] → (n]` and `t ∈ G(m]`.
    fn apply(&self, u: &FinFunction, t: usize) -> Result<usize>;
    fn element_name(&self, n: usize, t: usize) -> String;
}

/// `G(n]` = multisets over `(n]` of size at most `max_size`, sorted.
#[derive(Clone, Debug)]
pub struct MultisetFunctor {
    max_arity: usize,
    max_size: usize,
    elements: Vec<Vec<Vec<usize>>>,
}

impl MultisetFunctor {
    pub fn new(max_arity: usize, max_size: usize) -> Self {
        let elements = (0..=max_arity)
            .map(|n| {
                let mut out = vec![Vec::new()];
                let mut frontier = vec![Vec::new()];
                for _ in 0..max_size {
                    frontier = frontier
                        .into_iter()
                        .flat_map(|m: Vec<usize>| {
                            let start = m.last().copied().unwrap_or(1);
                            (start..=n).map(move |x| {
                                let mut m = m.clone();
                                m.push(x);
                                m
                            })
                        })
                        .collect();
                    out.extend(frontier.iter().cloned());
                }
                out
            })
            .collect();
        MultisetFunctor {
            max_arity,
            max_size,
            elements,
        }
    }

    fn index_of(&self, n: usize, m: &[usize]) -> Result<usize> {
        self.elements[n]
            .iter()
            .position(|x| x == m)
            .ok_or_else(|| Error::OutOfRange(format!("{m:?} is not a multiset over ({n}]")))
    }
}

impl FinFunctor for MultisetFunctor {
    fn name(&self) -> String {
        format!("Multiset≤{}", self.max_size)
    }

    fn max_arity(&self) -> usize {
        self.max_arity
    }

    fn size(&self, n: usize) -> usize {
        self.elements.get(n).map_or(0, Vec::len)
    }

    fn apply(&self, u: &FinFunction, t: usize) -> Result<usize> {
        let (m, n) = (u.domain(), u.codomain());
        if m > self.max_arity || n > self.max_arity || t >= self.size(m) {
            return Err(Error::truncation(format!("G({m}] → G({n}] is outside the table")));
        }
        let mut image: Vec<usize> = self.elements[m][t].iter().map(|&x| u.apply(x)).collect();
        image.sort_unstable();
        self.index_of(n, &image)
    }

    fn element_name(&self, n: usize, t: usize) -> String {
        let m: Vec<String> = self.elements[n][t].iter().map(|x| format!("x{x}")).collect();
        format!("{{{}}}", m.join(","))
    }
}

/// `G` restricted to bijections, as coefficients `σ·t = G(σ)(t)`.
pub fn restrict_to_bijections<G: FinFunctor + ?Sized>(g: &G) -> Result<AnalyticCoefficients> {
    let carriers = (0..=g.max_arity())
        .map(|n| (0..g.size(n)).map(|t| g.element_name(n, t)).collect())
        .collect();
    AnalyticCoefficients::new(&g.name(), carriers, |_, sigma, t| g.apply(sigma.as_function(), t))
}

/// `α[f, t] = G(f)(t)`.
pub fn alpha<G: FinFunctor + ?Sized>(g: &G, e: &VElement) -> Result<Op> {
    Ok(Op::new(e.f.codomain(), g.apply(&e.f, e.a.index)?))
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct AlphaReport {
    pub functor: String,
    pub max_arity: usize,
    pub max_set_size: usize,
    pub well_defined_checked: usize,
    pub equivariance_checked: usize,
    pub unit_checked: usize,
    pub associativity_checked: usize,
    /// Elements of `V(G)(X)` pushed to `G(X)`.
    pub evaluations_checked: usize,
    pub failures: Vec<String>,
}

impl AlphaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(message);
        }
    }
}

/// Checks that `α : V(G) → G` is a well defined equivariant `V`-algebra and
/// that it induces a well defined map `V(G)(X) → G(X)` for `|X| ≤ max_set_size`.
pub fn check_alpha<G: FinFunctor + ?Sized>(g: &G, max_set_size: usize) -> Result<AlphaReport> {
    let max_arity = g.max_arity();
    let ga = restrict_to_bijections(g)?;
    let v = v_coefficients(&ga, max_arity)?;
    let vv = v_coefficients(&v.coefficients, max_arity)?;
    let mut report = AlphaReport {
        functor: g.name(),
        max_arity,
        max_set_size,
        ..Default::default()
    };
    let on_class = |c: Op| alpha(g, v.representative(c));
    for n in 0..=max_arity {
        let q = &v.classes[n];
        for (i, e) in q.generators().iter().enumerate() {
            report.well_defined_checked += 1;
            if alpha(g, e)? != on_class(Op::new(n, q.class_of_position(i)))? {
                report.fail(format!("α depends on the representative {e:?}"));
            }
        }
        for c in v.coefficients.elements(n) {
            let image = on_class(c)?;
            for rho in Permutation::all(n) {
                report.equivariance_checked += 1;
                if on_class(v.coefficients.act(&rho, c)?)? != ga.act(&rho, image)? {
                    report.fail(format!("α(ρ·c) ≠ ρ·α(c) at ρ = {rho}, c = {}", v.coefficients.element_name(c)));
                }
            }
        }
        for t in ga.elements(n) {
            report.unit_checked += 1;
            if on_class(v_unit(&v, t)?)? != t {
                report.fail(format!("α∘η ≠ 1 at {}", ga.element_name(t)));
            }
        }
        for c in vv.coefficients.elements(n) {
            report.associativity_checked += 1;
            let outer = vv.representative(c);
            let left = on_class(v_mult(&v, &vv, c)?)?;
            let right = alpha(g, &VElement { f: outer.f.clone(), a: on_class(outer.a)? })?;
            if left != right {
                report.fail(format!("α∘μ ≠ α∘V(α) at {outer:?}"));
            }
        }
    }
    for k in 0..=max_set_size {
        let vx = evaluate_on(&v.coefficients, &vec![1; k], max_arity)?;
        let gx = evaluate_on(&ga, &vec![1; k], max_arity)?;
        for c in 0..vx.class_count() {
            let mut images = Vec::new();
            for w in vx.members(c) {
                report.evaluations_checked += 1;
                let pushed = Word { letters: w.letters.clone(), op: on_class(w.op)? };
                images.push(gx.class_of(&pushed));
            }
            images.dedup();
            if images.len() != 1 || images[0].is_none() {
                report.fail(format!("|X|={k}: α_X is not well defined at {:?}", vx.representative(c)));
            }
        }
    }
    Ok(report)
}
