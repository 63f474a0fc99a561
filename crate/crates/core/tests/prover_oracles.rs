use analytic_theories::terms::{enumerate_terms, Term, TermFilter};
use analytic_theories::theories::{
    builtin_theory, prove_equal, replay, ProofVerdict, ProverStrategy, SearchBudget, TheoryPresentation,
};

/// Value in the free model: a word of (variable, inverted) letters. Without
/// an involution every letter is uninverted.
fn evaluate(t: &Term, commutative: bool) -> Vec<(usize, bool)> {
    let mut word = match t {
        Term::Var(i) => vec![(*i, false)],
        Term::App(f, args) => match (f.as_str(), args.as_slice()) {
            ("e", []) => Vec::new(),
            ("m", [a, b]) => {
                let mut w = evaluate(a, commutative);
                w.extend(evaluate(b, commutative));
                w
            }
            ("s", [a]) => evaluate(a, commutative).into_iter().rev().map(|(x, inv)| (x, !inv)).collect(),
            _ => panic!("unexpected symbol {f}"),
        },
    };
    if commutative {
        word.sort();
    }
    word
}

fn check_against_model(theory: &TheoryPresentation, context: usize, max_nodes: usize, commutative: bool) -> usize {
    let terms = enumerate_terms(&theory.signature, context, max_nodes, TermFilter::All);
    let mut equal_pairs = 0;
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i..] {
            let model = evaluate(&a.body, commutative) == evaluate(&b.body, commutative);
            match prove_equal(theory, a, b).unwrap() {
                ProofVerdict::Equal(cert) => {
                    assert!(model, "{} proved equal to {} but the model separates them", a.body, b.body);
                    replay(theory, a, b, &cert).unwrap();
                    equal_pairs += 1;
                }
                ProofVerdict::DistinctUpToBound => assert!(!model, "{} = {} holds in the model", a.body, b.body),
                ProofVerdict::Unknown => panic!("normal forms always decide"),
            }
        }
    }
    equal_pairs
}

#[test]
fn normal_forms_agree_with_free_models() {
    assert!(check_against_model(&builtin_theory("monoid").unwrap(), 2, 5, false) > 0);
    assert!(check_against_model(&builtin_theory("commutative-monoid").unwrap(), 2, 5, true) > 0);
    assert!(check_against_model(&builtin_theory("anti-involution-monoid").unwrap(), 2, 5, false) > 0);
}

#[test]
fn bounded_search_is_sound_and_finds_short_proofs() {
    let monoid = builtin_theory("monoid").unwrap();
    let search = monoid
        .with_prover(ProverStrategy::BoundedSearch(SearchBudget { max_steps: 3, max_size: 7 }))
        .unwrap();
    let terms = enumerate_terms(&monoid.signature, 2, 4, TermFilter::All);
    let mut proved = 0;
    for (i, a) in terms.iter().enumerate() {
        for b in &terms[i..] {
            let model = evaluate(&a.body, false) == evaluate(&b.body, false);
            let verdict = prove_equal(&search, a, b).unwrap();
            if let ProofVerdict::Equal(cert) = &verdict {
                assert!(model, "{} = {} is false", a.body, b.body);
                replay(&search, a, b, cert).unwrap();
                proved += 1;
            }
            if model && prove_equal(&monoid, a, b).unwrap().is_equal() && a.body.size() + b.body.size() <= 6 {
                assert!(verdict.is_equal(), "search misses {} = {}", a.body, b.body);
            }
        }
    }
    assert!(proved > terms.len());
}
