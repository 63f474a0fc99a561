use std::sync::Arc;

use analytic_theories::finset::Permutation;
use analytic_theories::monads::eval_analytic;
use analytic_theories::operads::{free_symmetric_operad, make_sym, terminal_operad, Op, SymmetricOperadData};
use analytic_theories::terms::Signature;

fn cycles(p: &Permutation) -> usize {
    let n = p.size();
    let mut seen = vec![false; n + 1];
    let mut count = 0;
    for start in 1..=n {
        if !seen[start] {
            count += 1;
            let mut i = start;
            while !seen[i] {
                seen[i] = true;
                i = p.apply(i);
            }
        }
    }
    count
}

/// Orbit count of `O_n × Xⁿ` under the diagonal action, by Burnside.
fn burnside(o: &SymmetricOperadData, k: usize, max_arity: usize) -> usize {
    let mut total = 0;
    for n in 0..=max_arity {
        let perms = Permutation::all(n);
        let mut sum = 0;
        for sigma in &perms {
            let fixed = (0..o.size(n)).filter(|&i| o.act(sigma, Op::new(n, i)).unwrap() == Op::new(n, i)).count();
            sum += k.pow(cycles(sigma) as u32) * fixed;
        }
        assert_eq!(sum % perms.len(), 0);
        total += sum / perms.len();
    }
    total
}

#[test]
fn analytic_sizes_match_burnside() {
    let free = free_symmetric_operad(&Signature::from_pairs([("m", 2)]).unwrap(), 3).unwrap();
    for o in [make_sym(3), terminal_operad(3), free] {
        let o = Arc::new(o);
        for k in 0..=3 {
            let got = eval_analytic(&o, k, 3).unwrap();
            assert_eq!(got.size(), burnside(&o, k, 3), "{} at |X| = {k}", o.name());
        }
    }
}

#[test]
fn sym_gives_words_and_terminal_gives_multisets() {
    let sym = Arc::new(make_sym(4));
    let terminal = Arc::new(terminal_operad(4));
    for k in 0..=3usize {
        let words: usize = (0..=4).map(|n| k.pow(n)).sum();
        assert_eq!(eval_analytic(&sym, k, 4).unwrap().size(), words);
        // Multisets of size ≤ 4 on k letters: C(k + 4, 4).
        let multisets = (1..=4).fold(1, |acc, i| acc * (k + i) / i);
        assert_eq!(eval_analytic(&terminal, k, 4).unwrap().size(), multisets);
    }
}
