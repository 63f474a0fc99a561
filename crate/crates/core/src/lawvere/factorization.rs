//! Exhaustive checks of the structural-analytic factorization system on
//! small fragments of a span theory.

use serde::Serialize;

use super::span::{all_factorizations, classify_morphism, diagonal_filler, factorize, span_equal};
use super::{LawvereTheory, SpanMorphism, SpanTheory, Square};
use crate::error::Result;

const MAX_FAILURES: usize = 64;
const SQUARE_LIMIT: usize = 2;

#[derive(Clone, Debug, Default, Serialize)]
pub struct FactorizationReport {
    pub operad: String,
    pub max_object: usize,
    pub max_arity: usize,
    pub spans: usize,
    /// Factorizations of one span compared up to an isomorphism of the middle.
    pub uniqueness_checked: usize,
    pub squares_checked: usize,
    pub failures: Vec<String>,
}

impl FactorizationReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, message: String) {
        if self.failures.len() < MAX_FAILURES {
            self.failures.push(message);
        }
    }
}

/// Isomorphisms `p → p`: spans that are both structural and analytic.
fn isomorphisms(theory: &SpanTheory, p: usize) -> Result<Vec<SpanMorphism>> {
    Ok(theory
        .spans_of_arity(p, p, p)?
        .into_iter()
        .filter(|u| {
            let c = classify_morphism(u, theory.operad());
            c.structural && c.analytic
        })
        .collect())
}

/// For every span between objects `≤ max_object` of total arity
/// `≤ max_arity`: the factorization recomposes, has the right classes, and
/// any two factorizations differ by an isomorphism. Every square built from
/// two factorizations of one span, and every square `(l, r, d∘l, r∘d)` with
/// `l` structural, `r` analytic and `d` arbitrary among spans between
/// objects `≤ 2` of arity `≤ 2`, has exactly one filler.
pub fn check_factorization_system(
    theory: &SpanTheory,
    max_object: usize,
    max_arity: usize,
) -> Result<FactorizationReport> {
    let operad = theory.operad();
    let mut report = FactorizationReport {
        operad: operad.name().to_string(),
        max_object,
        max_arity,
        ..Default::default()
    };
    let mut isos = Vec::new();
    for p in 0..=max_arity {
        isos.push(isomorphisms(theory, p)?);
    }
    let mut homs = Vec::new();
    for n in 0..=max_object {
        for m in 0..=max_object {
            for s in theory.hom(n, m, max_arity)?.morphisms {
                homs.push(s);
            }
        }
    }

    for s in &homs {
        report.spans += 1;
        let (l, r) = factorize(theory, s)?;
        if !classify_morphism(&l, operad).structural || !classify_morphism(&r, operad).analytic {
            report.fail(format!("{} factors through the wrong classes", theory.display(s)));
        }
        if !span_equal(&theory.compose(&r, &l)?, s, operad)? {
            report.fail(format!("{} does not recompose", theory.display(s)));
        }
        let all = all_factorizations(theory, s, s.arity())?;
        if all.is_empty() {
            report.fail(format!("the search finds no factorization of {}", theory.display(s)));
        }
        for (l2, r2) in &all {
            report.uniqueness_checked += 1;
            let p = l2.target();
            let related = p == l.target()
                && isos[p].iter().try_fold(false, |found, u| -> Result<bool> {
                    Ok(found || (theory.compose(u, &l)? == *l2 && theory.compose(r2, u)? == r))
                })?;
            if !related {
                report.fail(format!(
                    "{} and {} are not related by an isomorphism",
                    theory.display(&l),
                    theory.display(l2)
                ));
            }
            let square = Square {
                left: l.clone(),
                right: r2.clone(),
                top: l2.clone(),
                bottom: r.clone(),
            };
            check_square(theory, &square, None, &mut report)?;
        }
    }

    let small: Vec<&SpanMorphism> = homs
        .iter()
        .filter(|s| s.source() <= SQUARE_LIMIT && s.target() <= SQUARE_LIMIT && s.arity() <= SQUARE_LIMIT)
        .collect();
    let structural: Vec<&SpanMorphism> = small.iter().copied().filter(|s| classify_morphism(s, operad).structural).collect();
    let analytic: Vec<&SpanMorphism> = small.iter().copied().filter(|s| classify_morphism(s, operad).analytic).collect();
    for l in &structural {
        for r in &analytic {
            for d in small.iter().filter(|d| d.source() == l.target() && d.target() == r.source()) {
                let (Ok(top), Ok(bottom)) = (theory.compose(d, l), theory.compose(r, d)) else { continue };
                if top.arity() > max_arity || bottom.arity() > max_arity {
                    continue;
                }
                let square = Square {
                    left: (*l).clone(),
                    right: (*r).clone(),
                    top,
                    bottom,
                };
                check_square(theory, &square, Some(*d), &mut report)?;
            }
        }
    }
    Ok(report)
}

fn check_square(
    theory: &SpanTheory,
    square: &Square,
    expected: Option<&SpanMorphism>,
    report: &mut FactorizationReport,
) -> Result<()> {
    report.squares_checked += 1;
    match diagonal_filler(theory, square) {
        Ok(d) if expected.is_none_or(|e| *e == d) => {}
        Ok(d) => report.fail(format!("the filler {} is not the diagonal used to build the square", theory.display(&d))),
        Err(e) => report.fail(format!(
            "square with left {} and right {}: {e}",
            theory.display(&square.left),
            theory.display(&square.right)
        )),
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::operads::{make_sym, terminal_operad};

    #[test]
    fn small_fragments() {
        let th = SpanTheory::new(Arc::new(make_sym(2)));
        let report = check_factorization_system(&th, 2, 2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.squares_checked > report.spans);
    }

    #[test]
    fn commutative_operations_have_two_fillers() {
        // swap∘diagonal = diagonal and m∘swap = m, so id and swap both fill.
        let th = SpanTheory::new(Arc::new(terminal_operad(2)));
        let report = check_factorization_system(&th, 2, 2).unwrap();
        assert!(!report.failures.is_empty());
        assert!(report.failures.iter().all(|f| f.contains("2 diagonal fillers")));
    }
}
