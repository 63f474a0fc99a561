//! Generic checks over enumerated fragments of a Lawvere theory.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use super::LawvereTheory;
use crate::error::{Error, Result};
use crate::finset::Permutation;

#[derive(Clone, Debug, Default, Serialize)]
pub struct CategoryLawReport {
    pub checked: usize,
    /// Instances skipped because a composite left the truncation.
    pub truncated: usize,
    pub violations: Vec<String>,
    pub authoritative: bool,
}

impl CategoryLawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    fn record(&mut self, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok && self.violations.len() < 64 {
            self.violations.push(witness());
        }
    }
}

fn truncated<T>(r: Result<T>) -> Result<Option<T>> {
    match r {
        Ok(v) => Ok(Some(v)),
        Err(Error::TruncationExceeded(_)) => Ok(None),
        Err(e) => Err(e),
    }
}

/// Unit and associativity laws, and the product laws for chosen
/// projections, on every hom fragment between objects `≤ max_object`.
pub fn check_category_laws<T: LawvereTheory>(
    th: &T,
    max_object: usize,
    bound: usize,
) -> Result<CategoryLawReport> {
    let mut report = CategoryLawReport { authoritative: true, ..Default::default() };
    let mut homs = BTreeMap::new();
    for n in 0..=max_object {
        for m in 0..=max_object {
            let frag = th.hom(n, m, bound)?;
            report.authoritative &= frag.authoritative;
            homs.insert((n, m), frag.morphisms);
        }
    }
    for (&(n, m), mors) in &homs {
        for a in mors {
            let l = th.compose(&th.identity(m), a)?;
            let r = th.compose(a, &th.identity(n))?;
            report.record(l == *a && r == *a, || format!("unit law fails for {}", th.display(a)));
            // a = ⟨π_1∘a, …, π_m∘a⟩
            let comps = (1..=m).map(|i| th.component(a, i)).collect::<Result<Vec<_>>>()?;
            let rebuilt = th.tuple(n, &comps)?;
            report.record(rebuilt == *a, || format!("tupling components of {}", th.display(a)));
        }
    }
    for a in 0..=max_object {
        for b in 0..=max_object {
            for c in 0..=max_object {
                for d in 0..=max_object {
                    for f in &homs[&(a, b)] {
                        for g in &homs[&(b, c)] {
                            let Some(gf) = truncated(th.compose(g, f))? else {
                                report.truncated += homs[&(c, d)].len();
                                continue;
                            };
                            for h in &homs[&(c, d)] {
                                let lhs = truncated(th.compose(h, &gf))?;
                                let hg = truncated(th.compose(h, g))?;
                                let rhs = match hg {
                                    Some(hg) => truncated(th.compose(&hg, f))?,
                                    None => None,
                                };
                                match (lhs, rhs) {
                                    (Some(l), Some(r)) => report.record(l == r, || {
                                        format!(
                                            "associativity fails for {} ∘ {} ∘ {}",
                                            th.display(h),
                                            th.display(g),
                                            th.display(f)
                                        )
                                    }),
                                    _ => report.truncated += 1,
                                }
                            }
                        }
                    }
                }
            }
        }
    }
    // π_i ∘ ⟨a_1,…,a_m⟩ = a_i
    for n in 0..=max_object {
        let ones = &homs[&(n, 1)];
        for m in 0..=max_object {
            let mut idx = vec![0usize; m];
            if m > 0 && ones.is_empty() {
                continue;
            }
            loop {
                let comps: Vec<T::Mor> = idx.iter().map(|&i| ones[i].clone()).collect();
                let t = th.tuple(n, &comps)?;
                for (i, c) in comps.iter().enumerate() {
                    let got = th.component(&t, i + 1)?;
                    report.record(got == *c, || {
                        format!("projection {} of a tuple returns {}", i + 1, th.display(&got))
                    });
                }
                let Some(pos) = (0..m).rev().find(|&p| idx[p] + 1 < ones.len()) else { break };
                idx[pos] += 1;
                for later in &mut idx[pos + 1..] {
                    *later = 0;
                }
            }
        }
    }
    Ok(report)
}

/// Automorphisms of `n` within the fragment bounded by `bound`.
fn automorphisms<T: LawvereTheory>(th: &T, n: usize, bound: usize) -> Result<Vec<T::Mor>> {
    let frag = th.hom(n, n, bound)?.morphisms;
    let mut out = Vec::new();
    for a in &frag {
        if th.inverse_in(a, &frag)?.is_some() {
            out.push(a.clone());
        }
    }
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct SimpleAutomorphismReport {
    pub n: usize,
    pub automorphisms_of_n: usize,
    pub automorphisms_of_one: usize,
    /// `n! · |Aut(1)|ⁿ`.
    pub domain_size: usize,
    pub injective: bool,
    pub surjective: bool,
}

impl SimpleAutomorphismReport {
    pub fn holds(&self) -> bool {
        self.injective && self.surjective
    }
}

/// Whether `(σ, a⃗) ↦ (a_1×…×a_n)∘π_σ` is a bijection onto the enumerated
/// automorphisms of `n`.
pub fn simple_automorphisms_check<T: LawvereTheory>(
    th: &T,
    n: usize,
    bound: usize,
) -> Result<SimpleAutomorphismReport> {
    let aut_one = automorphisms(th, 1, bound)?;
    let aut_n: BTreeSet<T::Mor> = automorphisms(th, n, bound)?.into_iter().collect();
    let mut image = BTreeSet::new();
    let mut domain_size = 0;
    let mut injective = true;
    let mut surjective = true;
    for sigma in Permutation::all(n) {
        let pi_sigma = th.pi(sigma.as_function())?;
        let mut idx = vec![0usize; n];
        if n > 0 && aut_one.is_empty() {
            continue;
        }
        loop {
            let factors: Vec<T::Mor> = idx.iter().map(|&i| aut_one[i].clone()).collect();
            let prod = if n == 0 { th.identity(0) } else { th.product(&factors)? };
            let value = th.compose(&prod, &pi_sigma)?;
            domain_size += 1;
            if !aut_n.contains(&value) {
                surjective = false; // a value outside the fragment
            }
            if !image.insert(value) {
                injective = false;
            }
            let Some(pos) = (0..n).rev().find(|&p| idx[p] + 1 < aut_one.len()) else { break };
            idx[pos] += 1;
            for later in &mut idx[pos + 1..] {
                *later = 0;
            }
        }
    }
    if !aut_n.is_subset(&image) {
        surjective = false;
    }
    Ok(SimpleAutomorphismReport {
        n,
        automorphisms_of_n: aut_n.len(),
        automorphisms_of_one: aut_one.len(),
        domain_size,
        injective,
        surjective,
    })
}

/// Whether `a ∘ π_σ = a` forces `σ = id` for every enumerated analytic
/// `a : n → 1`. Returns a counterexample when there is one.
pub fn rigidity_check_lawvere<T: LawvereTheory>(
    th: &T,
    n: usize,
    bound: usize,
) -> Result<Option<(T::Mor, Permutation)>> {
    let analytic = th.analytic_hom(n, 1, bound)?.morphisms;
    let perms: Vec<(Permutation, T::Mor)> = Permutation::all(n)
        .into_iter()
        .filter(|s| !s.is_identity())
        .map(|s| {
            let p = th.pi(s.as_function())?;
            Ok((s, p))
        })
        .collect::<Result<_>>()?;
    for a in &analytic {
        for (sigma, p) in &perms {
            if th.compose(a, p)? == *a {
                return Ok(Some((a.clone(), sigma.clone())));
            }
        }
    }
    Ok(None)
}

#[derive(Clone, Debug, Serialize)]
pub struct Decomposition {
    pub left_object: usize,
    pub right_object: usize,
    pub left: String,
    pub right: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct IndecomposabilityReport {
    pub indecomposable: bool,
    pub decomposition: Option<Decomposition>,
    pub candidates_checked: usize,
}

/// Searches pairs `p : 1 → m`, `p' : 1 → m'` with `m, m' ≥ 1` and
/// `m + m' ≤ max_sum` such that `a ↦ (p∘a, p'∘a)` is a bijection
/// `hom(k,1) → hom(k,m) × hom(k,m')` on every test object `k ≤ max_test`
/// (within the enumerated fragments).
pub fn indecomposability_of_one<T: LawvereTheory>(
    th: &T,
    max_sum: usize,
    max_test: usize,
    bound: usize,
) -> Result<IndecomposabilityReport> {
    let mut checked = 0;
    for m in 1..max_sum {
        for m2 in 1..=max_sum - m {
            let lefts = th.hom(1, m, bound)?.morphisms;
            let rights = th.hom(1, m2, bound)?.morphisms;
            for p in &lefts {
                for p2 in &rights {
                    checked += 1;
                    if exhibits_product(th, p, p2, m, m2, max_test, bound)? {
                        return Ok(IndecomposabilityReport {
                            indecomposable: false,
                            decomposition: Some(Decomposition {
                                left_object: m,
                                right_object: m2,
                                left: th.display(p),
                                right: th.display(p2),
                            }),
                            candidates_checked: checked,
                        });
                    }
                }
            }
        }
    }
    Ok(IndecomposabilityReport {
        indecomposable: true,
        decomposition: None,
        candidates_checked: checked,
    })
}

fn exhibits_product<T: LawvereTheory>(
    th: &T,
    p: &T::Mor,
    p2: &T::Mor,
    m: usize,
    m2: usize,
    max_test: usize,
    bound: usize,
) -> Result<bool> {
    for k in 0..=max_test {
        let ones = th.hom(k, 1, bound)?.morphisms;
        let lefts: BTreeSet<T::Mor> = th.hom(k, m, bound)?.morphisms.into_iter().collect();
        let rights: BTreeSet<T::Mor> = th.hom(k, m2, bound)?.morphisms.into_iter().collect();
        if ones.len() != lefts.len() * rights.len() {
            return Ok(false);
        }
        let mut hit = BTreeSet::new();
        for a in &ones {
            let (Some(l), Some(r)) = (truncated(th.compose(p, a))?, truncated(th.compose(p2, a))?) else {
                return Ok(false);
            };
            if !lefts.contains(&l) || !rights.contains(&r) || !hit.insert((l, r)) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lawvere::{InitialTheory, SpanTheory, TermTheory, TerminalTheory};
    use crate::operads::{make_sym, terminal_operad};
    use crate::theories::commutative_monoid;

    #[test]
    fn simple_automorphism_examples() {
        let sym = SpanTheory::new(Arc::new(make_sym(3)));
        let r = simple_automorphisms_check(&sym, 2, 2).unwrap();
        assert!(r.holds());
        assert_eq!(r.automorphisms_of_n, 2);
        assert_eq!(r.automorphisms_of_one, 1);
        let one = simple_automorphisms_check(&TerminalTheory, 2, 0).unwrap();
        assert!(!one.holds());
        assert_eq!((one.automorphisms_of_n, one.domain_size), (1, 2));
        for n in 0..=1 {
            assert!(simple_automorphisms_check(&sym, n, 1).unwrap().holds());
            assert!(simple_automorphisms_check(&TerminalTheory, n, 0).unwrap().holds());
        }
        assert!(simple_automorphisms_check(&InitialTheory, 3, 0).unwrap().holds());
    }

    #[test]
    fn rigidity_examples() {
        let sym = SpanTheory::new(Arc::new(make_sym(4)));
        for n in 0..=4 {
            assert!(rigidity_check_lawvere(&sym, n, n).unwrap().is_none());
        }
        let term = SpanTheory::new(Arc::new(terminal_operad(3)));
        assert!(rigidity_check_lawvere(&term, 2, 2).unwrap().is_some());
        let cm = TermTheory::new(commutative_monoid());
        let (a, sigma) = rigidity_check_lawvere(&cm, 2, 3).unwrap().unwrap();
        assert_eq!(format!("{a:?}"), "⟨m(x1,x2)⟩ : 2→1");
        assert!(!sigma.is_identity());
    }

    #[test]
    fn indecomposability_examples() {
        let sym = SpanTheory::new(Arc::new(make_sym(3)));
        assert!(indecomposability_of_one(&sym, 3, 1, 2).unwrap().indecomposable);
        let term = SpanTheory::new(Arc::new(terminal_operad(3)));
        assert!(indecomposability_of_one(&term, 3, 1, 2).unwrap().indecomposable);
        assert!(!indecomposability_of_one(&TerminalTheory, 3, 1, 0).unwrap().indecomposable);
    }

    #[test]
    fn category_laws_small() {
        let sym = SpanTheory::new(Arc::new(make_sym(3)));
        let r = check_category_laws(&sym, 2, 2).unwrap();
        assert!(r.passed(), "{:?}", r.violations);
        assert!(check_category_laws(&InitialTheory, 2, 0).unwrap().passed());
        assert!(check_category_laws(&TerminalTheory, 2, 0).unwrap().passed());
    }
}
