//! The operad of analytic operations of a Lawvere theory, the unit
//! `O → Q(P(O))`, the counit `P(Q(T)) → T`, and the triangle identities.

use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::{LawvereTheory, SpanMorphism, SpanTheory};
use crate::error::{Error, Result};
use crate::finset::Permutation;
use crate::operads::{check_operad_morphism, Op, SymmetricOperadData};

/// `Q(T)` truncated: analytic morphisms `n → 1` as an operad, acting by
/// `σ·a = a∘π_σ` and composing by `⟨g_i⟩∗f = f∘(g_1×…×g_k)`.
pub struct AnalyticOperad<T: LawvereTheory> {
    pub operad: Arc<SymmetricOperadData>,
    morphisms: Arc<Vec<Vec<T::Mor>>>,
    index: Arc<HashMap<T::Mor, Op>>,
}

impl<T: LawvereTheory> AnalyticOperad<T> {
    pub fn morphism(&self, a: Op) -> &T::Mor {
        &self.morphisms[a.arity][a.index]
    }

    pub fn op_of(&self, a: &T::Mor) -> Option<Op> {
        self.index.get(a).copied()
    }
}

/// Builds `Q(T)` up to `max_arity` from the analytic hom fragments.
pub fn analytic_operad<T>(th: Arc<T>, max_arity: usize, bound: usize) -> Result<AnalyticOperad<T>>
where
    T: LawvereTheory + Send + Sync + 'static,
    T::Mor: Send + Sync + 'static,
{
    let max_arity = max_arity.max(1);
    let mut morphisms = Vec::with_capacity(max_arity + 1);
    let mut authoritative = true;
    for n in 0..=max_arity {
        let frag = th.analytic_hom(n, 1, bound.max(n))?;
        authoritative &= frag.authoritative;
        morphisms.push(frag.morphisms);
    }
    let mut index = HashMap::new();
    for (n, row) in morphisms.iter().enumerate() {
        for (i, a) in row.iter().enumerate() {
            index.insert(a.clone(), Op::new(n, i));
        }
    }
    let carriers: Vec<Vec<String>> = morphisms
        .iter()
        .map(|row| row.iter().map(|a| th.display(a)).collect())
        .collect();
    let morphisms = Arc::new(morphisms);
    let index = Arc::new(index);
    let unit = *index
        .get(&th.identity(1))
        .ok_or_else(|| Error::Validation("identity of 1 is not analytic".into()))?;

    let (th_a, mor_a, idx_a) = (Arc::clone(&th), Arc::clone(&morphisms), Arc::clone(&index));
    let action = move |n: usize, sigma: &Permutation, a: usize| -> Result<usize> {
        let acted = th_a.compose(&mor_a[n][a], &th_a.pi(sigma.as_function())?)?;
        idx_a
            .get(&acted)
            .map(|o| o.index)
            .ok_or_else(|| Error::truncation(format!("{} is not enumerated", th_a.display(&acted))))
    };
    let (th_c, mor_c, idx_c) = (Arc::clone(&th), Arc::clone(&morphisms), Arc::clone(&index));
    let compose = Arc::new(move |inner: &[Op], outer: Op| -> Result<Op> {
        let factors: Vec<T::Mor> = inner.iter().map(|g| mor_c[g.arity][g.index].clone()).collect();
        let prod = th_c.product(&factors)?;
        let value = th_c.compose(&mor_c[outer.arity][outer.index], &prod)?;
        idx_c
            .get(&value)
            .copied()
            .ok_or_else(|| Error::truncation(format!("{} is not enumerated", th_c.display(&value))))
    });
    let mut operad =
        SymmetricOperadData::from_parts(&format!("Q({})", th.name()), carriers, unit, action, compose)?;
    if !authoritative {
        operad.mark_non_authoritative();
    }
    Ok(AnalyticOperad {
        operad: Arc::new(operad),
        morphisms,
        index,
    })
}

/// `η_O(g) = ⟨id_n, !, g⟩` as an operation of `Q(P(O))`.
pub fn operad_unit(span: &SpanTheory, q: &AnalyticOperad<SpanTheory>, g: Op) -> Result<Op> {
    let image = span.operation(g)?;
    q.op_of(&image)
        .ok_or_else(|| Error::truncation(format!("{} is not enumerated", span.display(&image))))
}

/// `ε_T(⟨φ, f, h_i⟩) = (h_1×…×h_m)∘π_φ` for a span over `Q(T)`.
pub fn counit<T: LawvereTheory>(th: &T, q: &AnalyticOperad<T>, s: &SpanMorphism) -> Result<T::Mor> {
    let factors: Vec<T::Mor> = s.ops.iter().map(|&h| q.morphism(h).clone()).collect();
    let prod = th.product(&factors)?;
    th.compose(&prod, &th.pi(&s.phi)?)
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct TriangleReport {
    pub operad: String,
    pub max_arity: usize,
    /// `Q(ε_T)∘η_{Q(T)} = id`, one instance per operation of `Q(T)`.
    pub first_checked: usize,
    pub first_failures: Vec<String>,
    /// `ε_{P(O)}∘P(η_O) = id`, one instance per enumerated span.
    pub second_checked: usize,
    pub second_failures: Vec<String>,
    /// `η_O` commutes with units, actions and composition.
    pub unit_is_operad_morphism: bool,
}

impl TriangleReport {
    pub fn passed(&self) -> bool {
        self.first_failures.is_empty() && self.second_failures.is_empty() && self.unit_is_operad_morphism
    }
}

/// Checks both triangle identities for `T = P(O)` on every operation of
/// arity `≤ max_arity` and every span between objects `≤ max_object` of
/// total arity `≤ max_arity`.
pub fn triangle_identities(
    operad: Arc<SymmetricOperadData>,
    max_arity: usize,
    max_object: usize,
) -> Result<TriangleReport> {
    let n_max = max_arity.min(operad.max_arity());
    let t = Arc::new(SpanTheory::new(Arc::clone(&operad)));
    let q = analytic_operad(Arc::clone(&t), n_max, n_max)?;
    let pq = SpanTheory::new(Arc::clone(&q.operad));
    let mut report = TriangleReport {
        operad: operad.name().to_string(),
        max_arity: n_max,
        ..Default::default()
    };

    for n in 0..=n_max {
        for d in q.operad.operations(n) {
            report.first_checked += 1;
            let eta = pq.operation(d)?;
            let back = counit(t.as_ref(), &q, &eta)?;
            if q.op_of(&back) != Some(d) {
                report.first_failures.push(format!(
                    "{} ↦ {}",
                    q.operad.op_name(d),
                    t.display(&back)
                ));
            }
        }
    }

    let eta_o = |g: Op| operad_unit(&t, &q, g);
    for n in 0..=max_object {
        for m in 0..=max_object {
            for s in t.hom(n, m, n_max)?.morphisms {
                report.second_checked += 1;
                let ops = s.ops.iter().map(|&g| eta_o(g)).collect::<Result<Vec<_>>>()?;
                let lifted = pq.span(s.phi.clone(), s.f.clone(), ops)?;
                let back = counit(t.as_ref(), &q, &lifted)?;
                if back != s {
                    report.second_failures.push(format!("{} ↦ {}", t.display(&s), t.display(&back)));
                }
            }
        }
    }

    report.unit_is_operad_morphism = check_operad_morphism(&operad, &q.operad, &eta_o)?.passed();
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{check_operad_laws, make_sym, terminal_operad};

    #[test]
    fn analytic_operad_of_sym_spans_is_sym() {
        let t = Arc::new(SpanTheory::new(Arc::new(make_sym(3))));
        let q = analytic_operad(t, 3, 3).unwrap();
        assert_eq!(q.operad.sizes(), vec![1, 1, 2, 6]);
        assert!(check_operad_laws(&q.operad).passed());
    }

    #[test]
    fn triangles_small() {
        for o in [make_sym(3), terminal_operad(3)] {
            let r = triangle_identities(Arc::new(o), 3, 2).unwrap();
            assert!(r.passed(), "{r:?}");
            assert!(r.first_checked > 0 && r.second_checked > 0);
        }
    }
}
