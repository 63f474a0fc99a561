//! The operad of symmetries and the terminal operad.

use std::sync::Arc;

use serde::Serialize;

use super::{Op, SymmetricOperadData};
use crate::error::{Error, Result};
use crate::finset::{BlockStructure, Permutation};

/// `⟨σ_1,…,σ_k⟩⋆τ`: sends `⟨i,r⟩` in the source blocks
/// `(n_τ(1),…,n_τ(k))` to `⟨τ(i), σ_τ(i)(r)⟩` in the target blocks
/// `(n_1,…,n_k)`, where `n_i` is the size of `σ_i`.
pub fn sym_compose(sigmas: &[Permutation], tau: &Permutation) -> Result<Permutation> {
    if sigmas.len() != tau.size() {
        return Err(Error::size(format!(
            "{} block permutations for τ in S_{}",
            sigmas.len(),
            tau.size()
        )));
    }
    let target = BlockStructure::new(sigmas.iter().map(Permutation::size).collect());
    let source = BlockStructure::new((1..=tau.size()).map(|i| sigmas[tau.apply(i) - 1].size()).collect());
    let mut values = Vec::with_capacity(target.total());
    for i in 1..=tau.size() {
        let j = tau.apply(i);
        let sigma = &sigmas[j - 1];
        for r in 1..=sigma.size() {
            values.push(target.lex_index(j, sigma.apply(r))?);
        }
    }
    debug_assert_eq!(values.len(), source.total());
    Permutation::new(values)
}

/// Sym truncated at `max_arity`: `S_n` in arity `n`, acting by left
/// multiplication, composed by [`sym_compose`]. Operation `i` of arity `n`
/// is the permutation of lexicographic rank `i`.
pub fn make_sym(max_arity: usize) -> SymmetricOperadData {
    let max_arity = max_arity.max(1);
    let carriers: Vec<Vec<String>> = (0..=max_arity)
        .map(|n| Permutation::all(n).iter().map(ToString::to_string).collect())
        .collect();
    let unrank = |a: Op| Permutation::unrank(a.arity, a.index);
    let compose = Arc::new(move |inner: &[Op], outer: Op| -> Result<Op> {
        let sigmas: Vec<Permutation> = inner.iter().map(|&g| unrank(g)).collect::<Result<_>>()?;
        let p = sym_compose(&sigmas, &unrank(outer)?)?;
        Ok(Op::new(p.size(), p.rank()))
    });
    SymmetricOperadData::from_parts(
        "Sym",
        carriers,
        Op::new(1, 0),
        |n, sigma, a| Ok(sigma.then_after(&Permutation::unrank(n, a)?)?.rank()),
        compose,
    )
    .expect("Sym data is well formed")
}

/// One operation per arity with trivial actions.
pub fn terminal_operad(max_arity: usize) -> SymmetricOperadData {
    let max_arity = max_arity.max(1);
    let carriers = (0..=max_arity).map(|n| vec![format!("c{n}")]).collect();
    let compose = Arc::new(|inner: &[Op], _outer: Op| -> Result<Op> {
        Ok(Op::new(inner.iter().map(|g| g.arity).sum(), 0))
    });
    SymmetricOperadData::from_parts("terminal", carriers, Op::new(1, 0), |_, _, _| Ok(0), compose)
        .expect("terminal data is well formed")
}

/// Two composable inputs to `⋆` on which it fails to be multiplicative:
/// `(⟨σ⟩⋆τ)∘(⟨σ'⟩⋆τ') ≠ ⟨σ_i∘σ'_i⟩⋆(τ∘τ')`.
#[derive(Clone, Debug, Serialize)]
pub struct NonHomomorphismWitness {
    pub sigmas: Vec<Permutation>,
    pub tau: Permutation,
    pub sigmas2: Vec<Permutation>,
    pub tau2: Permutation,
    pub product_of_stars: Permutation,
    pub star_of_products: Permutation,
}

/// Searches blocks of equal size `n ≤ max_block` and `k ≤ max_k` blocks,
/// in lexicographic order, for a witness.
pub fn find_non_homomorphism(max_k: usize, max_block: usize) -> Option<NonHomomorphismWitness> {
    for k in 1..=max_k {
        for n in 1..=max_block {
            let block_tuples = tuples(&Permutation::all(n), k);
            let taus = Permutation::all(k);
            for tau in &taus {
                for sigmas in &block_tuples {
                    let first = sym_compose(sigmas, tau).ok()?;
                    for tau2 in &taus {
                        for sigmas2 in &block_tuples {
                            let second = sym_compose(sigmas2, tau2).ok()?;
                            let product_of_stars = first.then_after(&second).ok()?;
                            let products: Vec<Permutation> = sigmas
                                .iter()
                                .zip(sigmas2)
                                .map(|(a, b)| a.then_after(b))
                                .collect::<Result<_>>()
                                .ok()?;
                            let star_of_products = sym_compose(&products, &tau.then_after(tau2).ok()?).ok()?;
                            if product_of_stars != star_of_products {
                                return Some(NonHomomorphismWitness {
                                    sigmas: sigmas.clone(),
                                    tau: tau.clone(),
                                    sigmas2: sigmas2.clone(),
                                    tau2: tau2.clone(),
                                    product_of_stars,
                                    star_of_products,
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

fn tuples(items: &[Permutation], k: usize) -> Vec<Vec<Permutation>> {
    (0..k).fold(vec![Vec::new()], |acc, _| {
        acc.into_iter()
            .flat_map(|prefix| {
                items.iter().map(move |p| {
                    let mut v = prefix.clone();
                    v.push(p.clone());
                    v
                })
            })
            .collect()
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::check_operad_laws;

    fn p(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn star_examples() {
        let id2 = Permutation::identity(2);
        assert_eq!(sym_compose(&[id2.clone(), id2.clone()], &id2).unwrap(), Permutation::identity(4));
        assert_eq!(
            sym_compose(&[Permutation::identity(1), id2.clone()], &p(&[2, 1])).unwrap(),
            p(&[2, 3, 1])
        );
        let s = p(&[3, 1, 2]);
        assert_eq!(sym_compose(std::slice::from_ref(&s), &Permutation::identity(1)).unwrap(), s);
        assert!(sym_compose(&[s], &id2).is_err());
    }

    #[test]
    fn sym_sizes_and_laws() {
        let sym = make_sym(3);
        assert_eq!(sym.sizes(), vec![1, 1, 2, 6]);
        let report = check_operad_laws(&sym);
        assert!(report.passed(), "{:?}", report.violations);
        assert!(sym.is_free_action(3).unwrap());
        let t = terminal_operad(3);
        assert!(check_operad_laws(&t).passed());
        assert!(!t.is_free_action(2).unwrap());
        assert!(t.is_free_action(1).unwrap());
    }

    #[test]
    fn star_is_not_multiplicative() {
        let w = find_non_homomorphism(3, 2).expect("a witness at small sizes");
        assert_ne!(w.product_of_stars, w.star_of_products);
    }
}
