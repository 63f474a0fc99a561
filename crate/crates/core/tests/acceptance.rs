//! Acceptance suite. Prints one `PASS` or `FAIL` line per criterion and exits
//! non-zero if any criterion fails. Criterion numbers passed as arguments
//! select a subset: `cargo test --test acceptance -- 2 5`.

use std::process::ExitCode;
use std::sync::Arc;
use std::time::{Duration, Instant};

use analytic_theories::finset::Permutation;
use analytic_theories::lawvere::{
    check_factorization_system, rigidity_check_lawvere, triangle_identities, LawvereTheory, SpanTheory, TermTheory,
};
use analytic_theories::monads::{
    check_kappa, check_monad_laws, check_phi, eval_analytic, eval_coend, AnalyticCoefficients,
};
use analytic_theories::operads::{
    check_operad_laws, default_node_budget, free_symmetric_operad, make_sym, operad_from_theory, sym_compose,
    terminal_operad,
};
use analytic_theories::terms::Signature;
use analytic_theories::theories::{builtin_theory, refute_rigidity, RigidityBudget, BUILTIN_THEORIES};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(ok: bool, message: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(message())
    }
}

fn factorial(n: usize) -> usize {
    (1..=n).product()
}

fn operad_laws() -> Outcome {
    let free = free_symmetric_operad(&Signature::from_pairs([("m", 2)]).map_err(|e| e.to_string())?, 4)
        .map_err(|e| e.to_string())?;
    let mut parts = Vec::new();
    for (label, operad) in [("Sym N=5", make_sym(5)), ("terminal N=5", terminal_operad(5)), ("free{m:2} N=4", free)] {
        let start = Instant::now();
        let r = check_operad_laws(&operad);
        let elapsed = start.elapsed();
        ensure(r.passed(), || format!("{label}: {} violations, first {:?}", r.violation_count, r.violations.first()))?;
        ensure(elapsed < Duration::from_secs(60), || format!("{label} took {elapsed:?}"))?;
        parts.push(format!("{label} {} instances in {:.1}s", r.checked, elapsed.as_secs_f64()));
    }
    Ok(parts.join(", "))
}

/// All lists of `len` permutations of sizes in `min..` summing to at most `budget`.
fn perm_lists(len: usize, min: usize, budget: usize) -> Vec<Vec<Permutation>> {
    if len == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in min..=budget {
        for p in Permutation::all(k) {
            for mut rest in perm_lists(len - 1, min, budget - k) {
                rest.insert(0, p.clone());
                out.push(rest);
            }
        }
    }
    out
}

/// Associativity instances `(a; bs; cs)` with every level of arity at most
/// `limit` and every operation of arity at least `min`.
fn sym_associativity(limit: usize, min: usize) -> Result<usize, String> {
    let mut checked = 0;
    let cs_by_inner: Vec<Vec<Vec<Permutation>>> = (0..=limit).map(|n| perm_lists(n, min, limit)).collect();
    for m in min..=limit {
        let outer = Permutation::all(m);
        for bs in perm_lists(m, min, limit) {
            let inner: usize = bs.iter().map(Permutation::size).sum();
            let composites = outer.iter().map(|a| sym_compose(&bs, a)).collect::<Result<Vec<_>, _>>().map_err(|e| e.to_string())?;
            for cs in &cs_by_inner[inner] {
                let mut offset = 0;
                let mut blocks = Vec::with_capacity(m);
                for b in &bs {
                    blocks.push(sym_compose(&cs[offset..offset + b.size()], b).map_err(|e| e.to_string())?);
                    offset += b.size();
                }
                for (a, ab) in outer.iter().zip(&composites) {
                    let left = sym_compose(cs, ab).map_err(|e| e.to_string())?;
                    let right = sym_compose(&blocks, a).map_err(|e| e.to_string())?;
                    ensure(left == right, || format!("associativity fails at {a}, {bs:?}, {cs:?}"))?;
                    checked += 1;
                }
            }
        }
    }
    Ok(checked)
}

fn sym_compose_laws() -> Outcome {
    let mut units = 0;
    for m in 0..=5 {
        for a in Permutation::all(m) {
            let ids = vec![Permutation::identity(1); m];
            ensure(sym_compose(&ids, &a).ok() == Some(a.clone()), || format!("left unit fails at {a}"))?;
            ensure(sym_compose(std::slice::from_ref(&a), &Permutation::identity(1)).ok() == Some(a.clone()), || {
                format!("right unit fails at {a}")
            })?;
            units += 2;
        }
    }
    let positive = sym_associativity(5, 1)?;
    let nullary = sym_associativity(4, 0)?;
    let swap = Permutation::new(vec![2, 1]).map_err(|e| e.to_string())?;
    let pinned = sym_compose(&[Permutation::identity(1), Permutation::identity(2)], &swap).map_err(|e| e.to_string())?;
    ensure(pinned.values() == [2, 3, 1], || format!("pinned value is {pinned}"))?;
    Ok(format!(
        "{units} unit instances to arity 5, {positive} associativity instances of positive arity to total arity 5, \
         {nullary} with nullary operations to arity 4, pinned [2,3,1]"
    ))
}

fn triangles() -> Outcome {
    let mut parts = Vec::new();
    for operad in [make_sym(4), terminal_operad(4)] {
        let r = triangle_identities(Arc::new(operad), 4, 2).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?} {:?}", r.operad, r.first_failures, r.second_failures))?;
        parts.push(format!("{} {} + {} instances", r.operad, r.first_checked, r.second_checked));
    }
    Ok(parts.join(", "))
}

fn factorization() -> Outcome {
    let th = SpanTheory::new(Arc::new(make_sym(3)));
    let r = check_factorization_system(&th, 3, 3).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{:?}", r.failures.first()))?;
    Ok(format!("{} spans, {} factorization pairs, {} squares", r.spans, r.uniqueness_checked, r.squares_checked))
}

fn monad_laws() -> Outcome {
    let mut checked = 0;
    for operad in [make_sym(4), terminal_operad(4)] {
        let operad = Arc::new(operad);
        for k in 0..=3 {
            let m = eval_analytic(&operad, k, 4).map_err(|e| e.to_string())?;
            let r = check_monad_laws(&m).map_err(|e| e.to_string())?;
            ensure(r.passed(), || format!("{} at |X|={k}: {:?}", operad.name(), r.violations.first()))?;
            checked += 1;
        }
    }
    let sym = eval_analytic(&Arc::new(make_sym(3)), 2, 3).map_err(|e| e.to_string())?.size();
    let terminal = eval_analytic(&Arc::new(terminal_operad(3)), 2, 3).map_err(|e| e.to_string())?.size();
    ensure(sym == 15 && terminal == 10, || format!("|M_Sym(2)| = {sym}, |M_terminal(2)| = {terminal}"))?;
    Ok(format!("{checked} monads, |M_Sym(2)| = 15, |M_terminal(2)| = 10"))
}

fn kappa() -> Outcome {
    let mut parts = Vec::new();
    for operad in [make_sym(3), terminal_operad(3)] {
        let r = check_kappa(&Arc::new(operad), 3, 3).map_err(|e| e.to_string())?;
        ensure(r.passed(), || format!("{}: {:?}", r.operad, r.failures.first()))?;
        parts.push(format!("{} {} members", r.operad, r.members_checked));
    }
    Ok(parts.join(", "))
}

fn rigidity() -> Outcome {
    let small = RigidityBudget {
        max_nodes: 3,
        max_context: 3,
    };
    let r = refute_rigidity(&builtin_theory("commutative-monoid").unwrap(), small).map_err(|e| e.to_string())?;
    let w = r.witness.ok_or("no transposition found for the commutative monoid")?;
    ensure(w.tau.size() == 2 && !w.tau.is_identity(), || format!("witness permutation {}", w.tau))?;

    let large = RigidityBudget {
        max_nodes: 7,
        max_context: 4,
    };
    for name in ["monoid", "anti-involution-monoid"] {
        let r = refute_rigidity(&builtin_theory(name).unwrap(), large).map_err(|e| e.to_string())?;
        ensure(r.witness.is_none(), || format!("{name} refuted: {}", r.witness.as_ref().unwrap().term))?;
    }

    let mut compared = 0;
    for (name, _) in BUILTIN_THEORIES {
        let theory = builtin_theory(name).unwrap();
        let operad = operad_from_theory(&theory, 3, default_node_budget(&theory, 3)).map_err(|e| e.to_string())?;
        let th = TermTheory::new(theory.clone());
        for n in 0..=3 {
            let bound = default_node_budget(&theory, n);
            let rigid = rigidity_check_lawvere(&th, n, bound).map_err(|e| e.to_string())?.is_none();
            let free = operad.is_free_action(n).map_err(|e| e.to_string())?;
            ensure(rigid == free, || format!("{name} at n={n}: lawvere rigid {rigid}, operad free {free}"))?;
            compared += 1;
        }
    }
    Ok(format!(
        "commutative monoid refuted by τ = {}, monoid and anti-involution unrefuted, {compared} fixture arities agree",
        w.tau
    ))
}

fn analytic_homs() -> Outcome {
    let monoid = builtin_theory("monoid").unwrap();
    let th = TermTheory::new(monoid.clone());
    for n in 0..=4 {
        let got = th.analytic_hom(n, 1, default_node_budget(&monoid, n)).map_err(|e| e.to_string())?.morphisms.len();
        ensure(got == factorial(n), || format!("monoid analytic hom({n}, 1) = {got}"))?;
    }
    let operad = operad_from_theory(&monoid, 4, default_node_budget(&monoid, 4)).map_err(|e| e.to_string())?;
    for n in 0..=4 {
        ensure(operad.size(n) == factorial(n) && operad.is_free_action(n).unwrap_or(false), || {
            format!("monoid operad at arity {n} has {} operations", operad.size(n))
        })?;
    }
    let anti = builtin_theory("anti-involution-monoid").unwrap();
    let th = TermTheory::new(anti.clone());
    for n in 0..=3 {
        let got = th.analytic_hom(n, 1, default_node_budget(&anti, n)).map_err(|e| e.to_string())?.morphisms.len();
        ensure(got == (1 << n) * factorial(n), || format!("anti-involution analytic hom({n}, 1) = {got}"))?;
    }
    Ok("monoid n! for n ≤ 4 with free transitive actions, anti-involution 2ⁿ·n! for n ≤ 3".into())
}

fn coend() -> Outcome {
    let th = TermTheory::new(builtin_theory("commutative-monoid").unwrap());
    let terminal = Arc::new(terminal_operad(3));
    let mut sizes = Vec::new();
    for k in 0..=3 {
        let left = eval_coend(&th, k, 3, 5).map_err(|e| e.to_string())?.size();
        let right = eval_analytic(&terminal, k, 3).map_err(|e| e.to_string())?.size();
        ensure(left == right, || format!("|X| = {k}: coend {left}, analytic {right}"))?;
        sizes.push(left.to_string());
    }
    Ok(format!("sizes {} for |X| = 0..3", sizes.join(", ")))
}

fn phi() -> Outcome {
    let a = AnalyticCoefficients::of_operad(&make_sym(3)).map_err(|e| e.to_string())?;
    let r = check_phi(&a, 3, 2).map_err(|e| e.to_string())?;
    ensure(r.passed(), || format!("{:?}", r.failures.first()))?;
    ensure(r.evaluations_checked > 0, || "no evaluations".into())?;
    Ok(format!(
        "{} generators, {} representative variations, {} evaluations",
        r.generators_checked, r.representatives_checked, r.evaluations_checked
    ))
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("operad laws", operad_laws),
        ("sym_compose laws", sym_compose_laws),
        ("triangle identities", triangles),
        ("factorization system", factorization),
        ("monad laws", monad_laws),
        ("kappa", kappa),
        ("rigidity", rigidity),
        ("analytic homs", analytic_homs),
        ("coend", coend),
        ("phi", phi),
    ];
    // Criterion numbers given as arguments select a subset.
    let selected: Vec<usize> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        if !selected.is_empty() && !selected.contains(&(i + 1)) {
            continue;
        }
        let start = Instant::now();
        let outcome = run();
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS criterion {}: {name}: {detail} ({secs:.1}s)", i + 1),
            Err(detail) => {
                failed += 1;
                println!("FAIL criterion {}: {name}: {detail} ({secs:.1}s)", i + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
