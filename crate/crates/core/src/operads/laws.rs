//! Exhaustive law checking for truncated operads.

use serde::Serialize;

use super::{for_each_tuple, sym_compose, Op, SymmetricOperadData};
use crate::error::Result;
use crate::finset::Permutation;

/// Above this many full associativity instances the checker switches to
/// the partial-composition generating set.
pub const FULL_ASSOCIATIVITY_LIMIT: u128 = 3_000_000;

const STORED_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    pub witness: String,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub enum AssociativityMode {
    /// Every triple `(f, g⃗, h⃗)` within the truncation.
    #[default]
    Exhaustive,
    /// Decomposition of each composite into one-slot composites, plus the
    /// sequential and parallel laws for one-slot composites.
    Generating,
}

#[derive(Clone, Debug, Default, Serialize)]
pub struct OperadLawReport {
    pub checked: usize,
    pub violation_count: usize,
    /// The first violations found, in enumeration order.
    pub violations: Vec<Violation>,
    pub associativity: AssociativityMode,
    pub equivariance: AssociativityMode,
    /// Instances that could not be evaluated (truncation or a failing
    /// composition); they count as violations.
    pub errors: usize,
}

impl OperadLawReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    pub(crate) fn record(&mut self, law: &str, ok: bool, witness: impl FnOnce() -> String) {
        self.checked += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < STORED_VIOLATIONS {
                self.violations.push(Violation {
                    law: law.to_string(),
                    witness: witness(),
                });
            }
        }
    }

    fn record_result(&mut self, law: &str, outcome: Result<bool>, witness: impl FnOnce() -> String) {
        match outcome {
            Ok(ok) => self.record(law, ok, witness),
            Err(e) => {
                self.errors += 1;
                let w = witness();
                self.record(law, false, || format!("{w}: {e}"));
            }
        }
    }
}

fn names(o: &SymmetricOperadData, ops: &[Op]) -> String {
    ops.iter().map(|&g| o.op_name(g)).collect::<Vec<_>>().join(",")
}

/// Number of full associativity instances, computed by counting tuples.
pub(crate) fn full_associativity_count(o: &SymmetricOperadData) -> u128 {
    let n = o.max_arity();
    // tuples[len][total] = number of tuples of that length and total arity
    let mut tuples = vec![vec![0u128; n + 1]; n + 2];
    tuples[0][0] = 1;
    for len in 1..=n + 1 {
        for total in 0..=n {
            tuples[len][total] = (0..=total)
                .map(|a| o.size(a) as u128 * tuples[len - 1][total - a])
                .sum();
        }
    }
    let within = |len: usize| -> u128 { tuples.get(len).map_or(0, |row| row.iter().sum()) };
    (0..=n)
        .map(|k| {
            (0..=n)
                .map(|m| o.size(k) as u128 * tuples[k][m] * within(m))
                .sum::<u128>()
        })
        .sum()
}

/// Checks action, unit, equivariance and associativity laws on every
/// instance within the truncation.
pub fn check_operad_laws(o: &SymmetricOperadData) -> OperadLawReport {
    let mode = |count: u128| {
        if count <= FULL_ASSOCIATIVITY_LIMIT {
            AssociativityMode::Exhaustive
        } else {
            AssociativityMode::Generating
        }
    };
    run_checks(o, mode(full_equivariance_count(o)), mode(full_associativity_count(o)))
}

fn run_checks(o: &SymmetricOperadData, equivariance: AssociativityMode, associativity: AssociativityMode) -> OperadLawReport {
    let mut report = OperadLawReport {
        equivariance,
        associativity,
        ..Default::default()
    };
    check_actions(o, &mut report);
    check_units(o, &mut report);
    check_equivariance(o, equivariance, &mut report);
    match associativity {
        AssociativityMode::Exhaustive => check_associativity_full(o, &mut report),
        AssociativityMode::Generating => check_associativity_generating(o, &mut report),
    }
    report
}

/// Same as [`check_operad_laws`] with the equivariance and associativity
/// mode forced.
pub fn check_operad_laws_with(o: &SymmetricOperadData, mode: AssociativityMode) -> OperadLawReport {
    run_checks(o, mode, mode)
}

fn check_actions(o: &SymmetricOperadData, report: &mut OperadLawReport) {
    for n in 0..=o.max_arity() {
        let perms = Permutation::all(n);
        for a in o.operations(n) {
            let id = Permutation::identity(n);
            report.record_result("action identity", o.act(&id, a).map(|b| b == a), || {
                format!("id·{}", o.op_name(a))
            });
            for s in &perms {
                for t in &perms {
                    let outcome = (|| Ok(o.act(&s.then_after(t)?, a)? == o.act(s, o.act(t, a)?)?))();
                    report.record_result("action composition", outcome, || {
                        format!("({s}∘{t})·{}", o.op_name(a))
                    });
                }
            }
        }
    }
}

fn check_units(o: &SymmetricOperadData, report: &mut OperadLawReport) {
    let unit = o.unit();
    for n in 0..=o.max_arity() {
        for f in o.operations(n) {
            let units = vec![unit; n];
            report.record_result("right unit", o.compose(&units, f).map(|r| r == f), || {
                format!("⟨ι,…,ι⟩∗{}", o.op_name(f))
            });
            report.record_result("left unit", o.compose(&[f], unit).map(|r| r == f), || {
                format!("⟨{}⟩∗ι", o.op_name(f))
            });
        }
    }
}

/// All tuples of permutations, one of each given size.
fn permutation_tuples(sizes: &[usize]) -> Vec<Vec<Permutation>> {
    let mut out = vec![Vec::new()];
    for &s in sizes {
        let perms = Permutation::all(s);
        out = out
            .into_iter()
            .flat_map(|prefix| {
                perms.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect();
    }
    out
}

/// Pairs `(σ⃗, τ)` generating `S_{n_1}×…×S_{n_k}` together with `S_k`:
/// one adjacent transposition in one slot, or in `τ`.
fn generating_pairs(sizes: &[usize]) -> Vec<(Vec<Permutation>, Permutation)> {
    let ids: Vec<Permutation> = sizes.iter().map(|&s| Permutation::identity(s)).collect();
    let k = sizes.len();
    let mut out = vec![(ids.clone(), Permutation::identity(k))];
    for (i, &s) in sizes.iter().enumerate() {
        for g in Permutation::generators(s) {
            let mut sigmas = ids.clone();
            sigmas[i] = g;
            out.push((sigmas, Permutation::identity(k)));
        }
    }
    for t in Permutation::generators(k) {
        out.push((ids.clone(), t));
    }
    out
}

fn all_pairs(sizes: &[usize]) -> Vec<(Vec<Permutation>, Permutation)> {
    let taus = Permutation::all(sizes.len());
    permutation_tuples(sizes)
        .into_iter()
        .flat_map(|sigmas| taus.iter().map(move |t| (sigmas.clone(), t.clone())))
        .collect()
}

pub(crate) fn full_equivariance_count(o: &SymmetricOperadData) -> u128 {
    let n = o.max_arity();
    let fact = |m: usize| (1..=m as u128).product::<u128>();
    // tuples[len][total]: Σ over tuples of ∏ |O_{a_i}|·a_i!.
    let mut tuples = vec![vec![0u128; n + 1]; n + 1];
    tuples[0][0] = 1;
    for len in 1..=n {
        for total in 0..=n {
            tuples[len][total] = (0..=total)
                .map(|a| o.size(a) as u128 * fact(a) * tuples[len - 1][total - a])
                .sum();
        }
    }
    (0..=n)
        .map(|k| o.size(k) as u128 * fact(k) * tuples[k].iter().sum::<u128>())
        .sum()
}

/// `⟨σ_i·g_i⟩∗(τ·f) = (⟨σ_1,…,σ_k⟩⋆τ)·(⟨g_τ(1),…,g_τ(k)⟩∗f)`, on every
/// `(σ⃗, τ)` or on generators.
fn check_equivariance(o: &SymmetricOperadData, mode: AssociativityMode, report: &mut OperadLawReport) {
    let n = o.max_arity();
    for k in 0..=n {
        for f in o.operations(k) {
            for_each_tuple(o, k, n, &mut |gs| {
                let sizes: Vec<usize> = gs.iter().map(|g| g.arity).collect();
                let pairs = match mode {
                    AssociativityMode::Exhaustive => all_pairs(&sizes),
                    AssociativityMode::Generating => generating_pairs(&sizes),
                };
                for (sigmas, tau) in &pairs {
                    {
                        let outcome = (|| {
                            let acted: Vec<Op> = gs
                                .iter()
                                .zip(sigmas)
                                .map(|(&g, s)| o.act(s, g))
                                .collect::<Result<_>>()?;
                            let lhs = o.compose(&acted, o.act(tau, f)?)?;
                            let reordered: Vec<Op> =
                                (1..=k).map(|i| gs[tau.apply(i) - 1]).collect();
                            // ⋆ takes σ's listed by target block, i.e. in the order of g⃗.
                            let twist = sym_compose(sigmas, tau)?;
                            let rhs = o.act(&twist, o.compose(&reordered, f)?)?;
                            Ok(lhs == rhs)
                        })();
                        report.record_result("equivariance", outcome, || {
                            let s: Vec<String> = sigmas.iter().map(ToString::to_string).collect();
                            format!(
                                "f={} g=⟨{}⟩ σ=⟨{}⟩ τ={tau}",
                                o.op_name(f),
                                names(o, gs),
                                s.join(",")
                            )
                        });
                    }
                }
            });
        }
    }
}

fn check_associativity_full(o: &SymmetricOperadData, report: &mut OperadLawReport) {
    let n = o.max_arity();
    for k in 0..=n {
        for f in o.operations(k) {
            for_each_tuple(o, k, n, &mut |gs| {
                let middle = o.compose(gs, f);
                let m: usize = gs.iter().map(|g| g.arity).sum();
                for_each_tuple(o, m, n, &mut |hs| {
                    let outcome = (|| {
                        let lhs = o.compose(hs, middle.clone()?)?;
                        let mut blocks = Vec::with_capacity(k);
                        let mut start = 0;
                        for &g in gs {
                            blocks.push(o.compose(&hs[start..start + g.arity], g)?);
                            start += g.arity;
                        }
                        Ok(lhs == o.compose(&blocks, f)?)
                    })();
                    report.record_result("associativity", outcome, || {
                        format!("f={} g=⟨{}⟩ h=⟨{}⟩", o.op_name(f), names(o, gs), names(o, hs))
                    });
                });
            });
        }
    }
}

fn check_associativity_generating(o: &SymmetricOperadData, report: &mut OperadLawReport) {
    let n = o.max_arity();
    let unit = o.unit();
    // Decomposition: peel one non-unit input off each composite.
    for k in 0..=n {
        for f in o.operations(k) {
            for_each_tuple(o, k, n, &mut |gs| {
                let peel = gs
                    .iter()
                    .rposition(|&g| g != unit && g.arity >= 1)
                    .or_else(|| gs.iter().rposition(|&g| g != unit));
                let Some(i) = peel else { return };
                let outcome = (|| {
                    let mut middle = gs.to_vec();
                    middle[i] = unit;
                    let before: usize = gs[..i].iter().map(|g| g.arity).sum();
                    let after: usize = gs[i + 1..].iter().map(|g| g.arity).sum();
                    let mut inner = vec![unit; before];
                    inner.push(gs[i]);
                    inner.extend(std::iter::repeat_n(unit, after));
                    let rhs = o.compose(&inner, o.compose(&middle, f)?)?;
                    Ok(o.compose(gs, f)? == rhs)
                })();
                report.record_result("associativity (decomposition)", outcome, || {
                    format!("f={} g=⟨{}⟩ peel {}", o.op_name(f), names(o, gs), i + 1)
                });
            });
        }
    }
    for k in 1..=n {
        for a in 0..=n {
            for b in 0..=n {
                if k + a - 1 > n || k + a + b > n + 2 {
                    continue;
                }
                for f in o.operations(k) {
                    for g in o.operations(a) {
                        for h in o.operations(b) {
                            sequential_and_parallel(o, report, f, g, h);
                        }
                    }
                }
            }
        }
    }
}

fn sequential_and_parallel(o: &SymmetricOperadData, report: &mut OperadLawReport, f: Op, g: Op, h: Op) {
    let (k, a, b) = (f.arity, g.arity, h.arity);
    let n = o.max_arity();
    for i in 1..=k {
        if a + b >= 1 && a + b - 1 <= n {
            for j in 1..=a {
                let outcome = (|| {
                    let lhs = o.partial_compose(o.partial_compose(f, i, g)?, i + j - 1, h)?;
                    let rhs = o.partial_compose(f, i, o.partial_compose(g, j, h)?)?;
                    Ok(lhs == rhs)
                })();
                report.record_result("associativity (sequential)", outcome, || {
                    format!("({}∘{i}{})∘{}{}", o.op_name(f), o.op_name(g), i + j - 1, o.op_name(h))
                });
            }
        }
        if k + b - 1 <= n {
            for j in i + 1..=k {
                let outcome = (|| {
                    let lhs = o.partial_compose(o.partial_compose(f, i, g)?, j + a - 1, h)?;
                    let rhs = o.partial_compose(o.partial_compose(f, j, h)?, i, g)?;
                    Ok(lhs == rhs)
                })();
                report.record_result("associativity (parallel)", outcome, || {
                    format!("{} with {} at {i} and {} at {j}", o.op_name(f), o.op_name(g), o.op_name(h))
                });
            }
        }
    }
}
