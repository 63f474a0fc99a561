use analytic_theories::finset::Permutation;
use analytic_theories::operads::{
    check_operad_laws, check_operad_laws_with, free_symmetric_operad, make_sym, terminal_operad,
    AssociativityMode, Op,
};
use analytic_theories::terms::Signature;

#[test]
fn sym_modes_agree_at_four() {
    let sym = make_sym(4);
    let full = check_operad_laws_with(&sym, AssociativityMode::Exhaustive);
    let gen = check_operad_laws_with(&sym, AssociativityMode::Generating);
    assert!(full.passed(), "{:?}", full.violations);
    assert!(gen.passed(), "{:?}", gen.violations);
    assert!(full.checked > gen.checked);
}

#[test]
fn corrupted_sym_is_caught_by_both_modes() {
    let sym = make_sym(4);
    // ⟨id_1, id_1⟩ ∗ id_2 is id_2; send it to the swap instead.
    let id1 = Op::new(1, 0);
    let id2 = Op::new(2, 0);
    let swap = sym.find("[2,1]").unwrap();
    let bad = sym.with_override(vec![id1, id1], id2, swap);
    for mode in [AssociativityMode::Exhaustive, AssociativityMode::Generating] {
        let report = check_operad_laws_with(&bad, mode);
        assert!(!report.passed());
        assert!(!report.violations.is_empty());
    }
    // A corruption that survives the unit laws: ⟨id_2, id_1⟩ ∗ swap.
    let target = sym.compose(&[id2, id1], swap).unwrap();
    let other = sym.operations(3).find(|&o| o != target).unwrap();
    let bad = sym.with_override(vec![id2, id1], swap, other);
    for mode in [AssociativityMode::Exhaustive, AssociativityMode::Generating] {
        assert!(!check_operad_laws_with(&bad, mode).passed());
    }
}

#[test]
fn terminal_and_free_exhaustive() {
    let t = terminal_operad(5);
    let r = check_operad_laws(&t);
    assert_eq!(r.associativity, AssociativityMode::Exhaustive);
    assert!(r.passed());
    let free = free_symmetric_operad(&Signature::from_pairs([("m", 2)]).unwrap(), 4).unwrap();
    let r = check_operad_laws(&free);
    assert_eq!(r.associativity, AssociativityMode::Exhaustive);
    assert!(r.passed(), "{:?}", r.violations);
    assert_eq!(free.sizes(), vec![0, 1, 2, 12, 120]);
}

#[test]
fn free_actions() {
    let sym = make_sym(4);
    let free = free_symmetric_operad(&Signature::from_pairs([("m", 2), ("k", 3)]).unwrap(), 4).unwrap();
    for n in 0..=4 {
        assert!(sym.is_free_action(n).unwrap());
        assert!(free.is_free_action(n).unwrap());
    }
    assert!(!terminal_operad(4).is_free_action(2).unwrap());
    assert!(sym.is_free_action(5).is_err());
    let id = Permutation::identity(3);
    for a in sym.operations(3) {
        assert_eq!(sym.act(&id, a).unwrap(), a);
    }
}
