use analytic_theories::finset::{pullback, BlockStructure, FinFunction, Permutation};
use analytic_theories::operads::sym_compose;
use proptest::prelude::*;

fn perm(max: usize) -> impl Strategy<Value = Permutation> {
    (0..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

fn function(max_domain: usize, codomain: usize) -> impl Strategy<Value = FinFunction> {
    prop::collection::vec(1..=codomain, 0..=max_domain).prop_map(move |v| FinFunction::new(codomain, v).unwrap())
}

/// Substitution of words: `a` read as `x_{a(1)}⋯x_{a(m)}`, each `x_i`
/// replaced by the word of `bs[i]` over its own block of variables.
fn substitute_words(bs: &[Permutation], a: &Permutation) -> Vec<usize> {
    let mut offsets = vec![0];
    for b in bs {
        offsets.push(offsets.last().unwrap() + b.size());
    }
    let mut word = Vec::new();
    for &i in a.values() {
        let b = &bs[i - 1];
        word.extend(b.values().iter().map(|&r| offsets[i - 1] + r));
    }
    word
}

proptest! {
    #[test]
    fn inverse_and_rank(p in perm(6)) {
        let n = p.size();
        prop_assert!(p.then_after(&p.inverse()).unwrap().is_identity());
        prop_assert!(p.inverse().then_after(&p).unwrap().is_identity());
        prop_assert_eq!(Permutation::unrank(n, p.rank()).unwrap(), p.clone());
        prop_assert_eq!(&Permutation::all(n)[p.rank()], &p);
    }

    #[test]
    fn composition_is_associative(
        (f, g, h) in (0usize..4, 1usize..4, 1usize..4, 1usize..4).prop_flat_map(|(a, b, c, d)| {
            (
                prop::collection::vec(1..=b, a).prop_map(move |v| FinFunction::new(b, v).unwrap()),
                prop::collection::vec(1..=c, b).prop_map(move |v| FinFunction::new(c, v).unwrap()),
                prop::collection::vec(1..=d, c).prop_map(move |v| FinFunction::new(d, v).unwrap()),
            )
        })
    ) {
        let left = h.after(&g.after(&f).unwrap()).unwrap();
        let right = h.after(&g).unwrap().after(&f).unwrap();
        prop_assert_eq!(left, right);
        prop_assert_eq!(f.after(&FinFunction::identity(f.domain())).unwrap(), f.clone());
        prop_assert_eq!(FinFunction::identity(f.codomain()).after(&f).unwrap(), f);
    }

    #[test]
    fn sym_compose_is_word_substitution(
        (bs, a) in (0usize..4).prop_flat_map(|m| (prop::collection::vec(perm(3), m), Just((1..=m).collect::<Vec<_>>()).prop_shuffle()))
    ) {
        let a = Permutation::new(a).unwrap();
        let got = sym_compose(&bs, &a).unwrap();
        let expected = substitute_words(&bs, &a);
        prop_assert_eq!(got.values(), expected.as_slice());
    }

    #[test]
    fn sym_compose_units(p in perm(5)) {
        let n = p.size();
        let ids = vec![Permutation::identity(1); n];
        prop_assert_eq!(sym_compose(&ids, &p).unwrap(), p.clone());
        prop_assert_eq!(sym_compose(std::slice::from_ref(&p), &Permutation::identity(1)).unwrap(), p);
    }

    #[test]
    fn blocks_round_trip(sizes in prop::collection::vec(0usize..4, 0..5)) {
        let b = BlockStructure::new(sizes.clone());
        prop_assert_eq!(b.total(), sizes.iter().sum::<usize>());
        for pos in 1..=b.total() {
            let (i, r) = b.lex_pair(pos).unwrap();
            prop_assert_eq!(b.lex_index(i, r).unwrap(), pos);
            prop_assert_eq!(b.inclusion(i).apply(r), pos);
        }
    }

    #[test]
    fn pullback_is_the_fibre_product(f in function(4, 3), p in function(4, 3)) {
        let pb = pullback(&f, &p).unwrap();
        let expected = f.values().iter().map(|&x| p.values().iter().filter(|&&y| y == x).count()).sum::<usize>();
        prop_assert_eq!(pb.size(), expected);
        prop_assert_eq!(f.after(&pb.q1).unwrap(), p.after(&pb.q2).unwrap());
    }
}

#[test]
fn pinned_star_value() {
    let swap = Permutation::new(vec![2, 1]).unwrap();
    let got = sym_compose(&[Permutation::identity(1), Permutation::identity(2)], &swap).unwrap();
    assert_eq!(got.values(), &[2, 3, 1]);
}
