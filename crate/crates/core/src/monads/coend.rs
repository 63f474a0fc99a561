//! The monad of a Lawvere theory as the coend `∫ⁿ Xⁿ × T(n,1)`, and the
//! comparison `κ` with the analytic monad of an operad.

use std::sync::Arc;

use serde::Serialize;

use super::analytic::{eval_analytic, weighted_words, MonadValue};
use super::QuotientSet;
use crate::error::{Error, Result};
use crate::finset::FinFunction;
use crate::lawvere::{LawvereTheory, SpanTheory};
use crate::operads::SymmetricOperadData;

/// A generator `⟨x⃗, f⟩` with `x⃗ ∈ Xⁿ` and `f : n → 1`.
pub type CoendGenerator<M> = (Vec<usize>, M);

#[derive(Clone, Debug)]
pub struct CoendValue<M> {
    pub set_size: usize,
    pub max_arity: usize,
    pub bound: usize,
    pub quotient: QuotientSet<CoendGenerator<M>>,
    pub unit: Vec<usize>,
    /// Relation instances whose right side left the enumerated fragment.
    pub uncovered: usize,
    pub authoritative: bool,
}

fn tuples(set_size: usize, n: usize) -> Vec<Vec<usize>> {
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

/// Generators for `n ≤ N` and `f` in the fragment `hom(n, 1, bound)`,
/// related by `⟨x⃗∘u, f⟩ ∼ ⟨x⃗, f∘π_u⟩` for every `u : (n] → (m]`, `m ≤ N`.
pub fn eval_coend<T: LawvereTheory>(
    th: &T,
    set_size: usize,
    max_arity: usize,
    bound: usize,
) -> Result<CoendValue<T::Mor>> {
    let mut homs = Vec::with_capacity(max_arity + 1);
    let mut authoritative = true;
    for n in 0..=max_arity {
        let frag = th.hom(n, 1, bound)?;
        authoritative &= frag.authoritative;
        homs.push(frag.morphisms);
    }
    let all_tuples: Vec<Vec<Vec<usize>>> = (0..=max_arity).map(|n| tuples(set_size, n)).collect();
    let mut generators = Vec::new();
    for n in 0..=max_arity {
        for f in &homs[n] {
            for x in &all_tuples[n] {
                generators.push((x.clone(), f.clone()));
            }
        }
    }
    let mut quotient = QuotientSet::new(generators);
    let mut uncovered = 0;
    for n in 0..=max_arity {
        for m in 0..=max_arity {
            for u in FinFunction::all(n, m) {
                let pi_u = th.pi(&u)?;
                for f in &homs[n] {
                    let moved = match th.compose(f, &pi_u) {
                        Ok(g) => g,
                        Err(Error::TruncationExceeded(_)) => {
                            uncovered += all_tuples[m].len();
                            continue;
                        }
                        Err(e) => return Err(e),
                    };
                    for x in &all_tuples[m] {
                        let left = ((1..=n).map(|i| x[u.apply(i) - 1]).collect(), f.clone());
                        if !quotient.relate(&left, &(x.clone(), moved.clone())) {
                            uncovered += 1;
                        }
                    }
                }
            }
        }
    }
    quotient.refresh();
    let mut value = CoendValue {
        set_size,
        max_arity,
        bound,
        quotient,
        unit: Vec::new(),
        uncovered,
        authoritative,
    };
    if max_arity >= 1 {
        value.unit = (0..set_size)
            .map(|x| value.class_of(&(vec![x], th.identity(1))))
            .collect::<Result<_>>()?;
    }
    Ok(value)
}

impl<M: Clone + Eq + std::hash::Hash> CoendValue<M> {
    pub fn size(&self) -> usize {
        self.quotient.class_count()
    }

    pub fn class_of(&self, g: &CoendGenerator<M>) -> Result<usize> {
        self.quotient
            .class_of(g)
            .ok_or_else(|| Error::truncation("the generator is outside the enumerated fragment"))
    }

    pub fn representative(&self, class: usize) -> &CoendGenerator<M> {
        self.quotient.representative(class)
    }

    /// `μ` on `⟨y⃗, f⟩` with letters classes of `M(X)`:
    /// `⟨x⃗_1⋯x⃗_n, f∘(g_1×…×g_n)⟩` on representatives `y_i = ⟨x⃗_i, g_i⟩`.
    pub fn multiply<T: LawvereTheory<Mor = M>>(&self, th: &T, letters: &[usize], f: &M) -> Result<usize> {
        let mut xs = Vec::new();
        let mut factors = Vec::with_capacity(letters.len());
        for &y in letters {
            let (x, g) = self.representative(y);
            xs.extend_from_slice(x);
            factors.push(g.clone());
        }
        if xs.len() > self.max_arity {
            return Err(Error::truncation(format!("multiplication reaches {} variables", xs.len())));
        }
        let product = th.product(&factors)?;
        self.class_of(&(xs, th.compose(f, &product)?))
    }

    /// `M(h)` into `target = M(Y)`.
    pub fn map(&self, h: &[usize], target: &CoendValue<M>) -> Result<Vec<usize>> {
        (0..self.size())
            .map(|c| {
                let (x, f) = self.representative(c);
                target.class_of(&(x.iter().map(|&v| h[v]).collect(), f.clone()))
            })
            .collect()
    }
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct KappaReport {
    pub operad: String,
    pub max_arity: usize,
    pub max_set_size: usize,
    /// `(|X|, |M_a(X)|, |M_l(X)|)`.
    pub sizes: Vec<(usize, usize, usize)>,
    pub members_checked: usize,
    pub unit_checked: usize,
    pub multiplication_checked: usize,
    pub naturality_checked: usize,
    pub failures: Vec<String>,
}

impl KappaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// `κ([x⃗, a]) = [x⃗, ⟨id_n, !, a⟩]` as class indices.
pub fn kappa(
    spans: &SpanTheory,
    analytic: &MonadValue,
    coend: &CoendValue<<SpanTheory as LawvereTheory>::Mor>,
) -> Result<Vec<usize>> {
    (0..analytic.size())
        .map(|c| {
            let w = analytic.representative(c);
            coend.class_of(&(w.letters.clone(), spans.operation(w.op)?))
        })
        .collect()
}

/// Checks that `κ` is well defined, bijective, preserves `η` and `μ`, and is
/// natural along every function between sets of size `≤ max_set_size`.
pub fn check_kappa(
    operad: &Arc<SymmetricOperadData>,
    max_set_size: usize,
    max_arity: usize,
) -> Result<KappaReport> {
    let spans = SpanTheory::new(Arc::clone(operad));
    let mut report = KappaReport {
        operad: operad.name().to_string(),
        max_arity,
        max_set_size,
        ..Default::default()
    };
    let mut analytic = Vec::new();
    let mut coends = Vec::new();
    let mut kappas = Vec::new();
    for k in 0..=max_set_size {
        let a = eval_analytic(operad, k, max_arity)?;
        let c = eval_coend(&spans, k, max_arity, max_arity)?;
        let map = kappa(&spans, &a, &c)?;
        report.sizes.push((k, a.size(), c.size()));

        for class in 0..a.size() {
            for w in a.quotient.members(class) {
                report.members_checked += 1;
                let image = c.class_of(&(w.letters.clone(), spans.operation(w.op)?))?;
                if image != map[class] {
                    report.failures.push(format!("|X|={k}: κ depends on the representative {}", a.display_word(w)));
                }
            }
        }
        let mut hit = vec![false; c.size()];
        for &y in &map {
            if std::mem::replace(&mut hit[y], true) {
                report.failures.push(format!("|X|={k}: κ is not injective at coend class {y}"));
            }
        }
        if let Some(y) = hit.iter().position(|&h| !h) {
            report.failures.push(format!("|X|={k}: coend class {y} is not in the image of κ"));
        }
        for x in 0..k {
            report.unit_checked += 1;
            if map[a.unit[x]] != c.unit[x] {
                report.failures.push(format!("|X|={k}: κ∘η ≠ η at {x}"));
            }
        }
        let weights: Vec<usize> = (0..a.size()).map(|c| a.arity_of(c)).collect();
        for w in weighted_words(&**operad, &weights, max_arity, max_arity) {
            report.multiplication_checked += 1;
            let left = map[a.multiply(&w)?];
            let lifted: Vec<usize> = w.letters.iter().map(|&y| map[y]).collect();
            let right = c.multiply(&spans, &lifted, &spans.operation(w.op)?)?;
            if left != right {
                report.failures.push(format!("|X|={k}: κ∘μ ≠ μ∘κκ at {w:?}"));
            }
        }
        analytic.push(a);
        coends.push(c);
        kappas.push(map);
    }
    for k in 0..=max_set_size {
        for l in 0..=max_set_size {
            for h in FinFunction::all(k, l) {
                let h: Vec<usize> = h.values().iter().map(|v| v - 1).collect();
                let ma = analytic[k].map(&h, &analytic[l])?;
                let mc = coends[k].map(&h, &coends[l])?;
                for class in 0..analytic[k].size() {
                    report.naturality_checked += 1;
                    if kappas[l][ma[class]] != mc[kappas[k][class]] {
                        report.failures.push(format!(
                            "naturality fails for h = {h:?} at {}",
                            analytic[k].display_class(class)
                        ));
                    }
                }
            }
        }
    }
    Ok(report)
}
