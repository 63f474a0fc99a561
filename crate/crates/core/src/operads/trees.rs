//! Operads whose operations are classes of linear-regular terms: the free
//! operad on a signature and the operad of a linear-regular theory.

use std::collections::HashMap;
use std::sync::{Arc, Mutex};

use super::{Op, SymmetricOperadData};
use crate::error::{Error, Result};
use crate::terms::{enumerate_terms, Signature, Term, TermFilter, TermInContext};
use crate::theories::{
    prove_equal, Normalizer, ProofVerdict, ProverStrategy, TheoryPresentation,
};

/// Classes of linear-regular terms per arity, each named by its least member.
struct TermClasses {
    theory: TheoryPresentation,
    reps: Vec<Vec<Term>>,
    index: Vec<HashMap<Term, usize>>,
    /// Set when the prover answered `Unknown` while sorting terms.
    unknown: Mutex<bool>,
}

impl TermClasses {
    fn key(&self, t: &Term) -> Term {
        match &self.theory.prover {
            ProverStrategy::NormalForm(nz) => nz.normalize(t),
            _ => t.clone(),
        }
    }

    /// The class of `t` over `n` variables, if it is among the enumerated ones.
    fn find(&self, n: usize, t: &Term) -> Result<Option<usize>> {
        let key = self.key(t);
        if let Some(&i) = self.index[n].get(&key) {
            return Ok(Some(i));
        }
        if matches!(self.theory.prover, ProverStrategy::NormalForm(_)) {
            return Ok(None);
        }
        let lhs = TermInContext::new(n, t.clone())?;
        for (i, rep) in self.reps[n].iter().enumerate() {
            let rhs = TermInContext { context: n, body: rep.clone() };
            match prove_equal(&self.theory, &lhs, &rhs)? {
                ProofVerdict::Equal(_) => return Ok(Some(i)),
                ProofVerdict::Unknown => *self.unknown.lock().expect("not poisoned") = true,
                ProofVerdict::DistinctUpToBound => {}
            }
        }
        Ok(None)
    }

    fn build(theory: TheoryPresentation, max_arity: usize, max_nodes: usize) -> Result<Self> {
        let mut classes = TermClasses {
            theory,
            reps: vec![Vec::new(); max_arity + 1],
            index: vec![HashMap::new(); max_arity + 1],
            unknown: Mutex::new(false),
        };
        for n in 0..=max_arity {
            let sig = classes.theory.signature.clone();
            for t in enumerate_terms(&sig, n, max_nodes, TermFilter::LinearRegular) {
                if classes.find(n, &t.body)?.is_some() {
                    continue;
                }
                let key = classes.key(&t.body);
                classes.index[n].insert(key, classes.reps[n].len());
                classes.reps[n].push(t.body);
            }
        }
        Ok(classes)
    }
}

fn shifted_composite(inner: &[&Term], arities: &[usize], outer: &Term) -> Term {
    let mut offset = 0;
    let shifted: Vec<Term> = inner
        .iter()
        .zip(arities)
        .map(|(g, &n)| {
            let off = offset;
            offset += n;
            g.map_variables(&|v| Term::Var(v + off))
        })
        .collect();
    outer.map_variables(&|v| shifted[v - 1].clone())
}

fn term_operad(name: &str, classes: TermClasses) -> Result<SymmetricOperadData> {
    let classes = Arc::new(classes);
    if classes.reps.len() < 2 || classes.reps[1].is_empty() {
        return Err(Error::Validation("no unary class for the unit".into()));
    }
    let unit_index = classes.find(1, &Term::Var(1))?.expect("x1 is enumerated");
    let carriers: Vec<Vec<String>> = classes
        .reps
        .iter()
        .map(|row| row.iter().map(ToString::to_string).collect())
        .collect();
    let for_action = Arc::clone(&classes);
    let action = move |n: usize, sigma: &crate::finset::Permutation, a: usize| -> Result<usize> {
        let t = for_action.reps[n][a].map_variables(&|v| Term::Var(sigma.apply(v)));
        for_action.find(n, &t)?.ok_or_else(|| {
            Error::truncation(format!("{t} is outside the enumerated classes"))
        })
    };
    let for_compose = Arc::clone(&classes);
    let compose = Arc::new(move |inner: &[Op], outer: Op| -> Result<Op> {
        let c = &for_compose;
        let gs: Vec<&Term> = inner.iter().map(|g| &c.reps[g.arity][g.index]).collect();
        let arities: Vec<usize> = inner.iter().map(|g| g.arity).collect();
        let t = shifted_composite(&gs, &arities, &c.reps[outer.arity][outer.index]);
        let n = arities.iter().sum();
        match c.find(n, &t)? {
            Some(i) => Ok(Op::new(n, i)),
            None => Err(Error::truncation(format!("{t} is outside the enumerated classes"))),
        }
    });
    let mut data = SymmetricOperadData::from_parts(name, carriers, Op::new(1, unit_index), action, compose)?;
    if *classes.unknown.lock().expect("not poisoned") {
        data.mark_non_authoritative();
    }
    Ok(data)
}

/// Leaf-labeled signature trees with at most `max_arity` labels. When the
/// signature has constants or unary symbols the trees are cut at
/// `2·max_arity + 1` nodes and the result is marked non-authoritative.
pub fn free_symmetric_operad(sig: &Signature, max_arity: usize) -> Result<SymmetricOperadData> {
    let max_arity = max_arity.max(1);
    let finite = sig.symbols().all(|(_, a)| a >= 2);
    let max_nodes = if finite { 2 * max_arity - 1 } else { 2 * max_arity + 1 };
    let theory = TheoryPresentation::new(
        "free",
        sig.clone(),
        Vec::new(),
        ProverStrategy::NormalForm(Normalizer::Free),
    )?;
    let classes = TermClasses::build(theory, max_arity, max_nodes)?;
    let symbols: Vec<String> = sig.symbols().map(|(s, a)| format!("{s}:{a}")).collect();
    let mut data = term_operad(&format!("free({{{}}})", symbols.join(",")), classes)?;
    if !finite {
        data.mark_non_authoritative();
    }
    Ok(data)
}

/// Provability classes of linear-regular terms with at most `max_nodes`
/// nodes, acting by permuting variables and composing by substitution into
/// disjoint variable blocks. Marked non-authoritative when the presentation
/// is not linear-regular or the prover is incomplete.
pub fn operad_from_theory(
    theory: &TheoryPresentation,
    max_arity: usize,
    max_nodes: usize,
) -> Result<SymmetricOperadData> {
    let max_arity = max_arity.max(1);
    let classes = TermClasses::build(theory.clone(), max_arity, max_nodes.max(1))?;
    let mut data = term_operad(&format!("Q({})", theory.name), classes)?;
    if !theory.prover.is_complete() || !theory.is_linear_regular_presentation() {
        data.mark_non_authoritative();
    }
    Ok(data)
}

/// Node budget that covers the normal forms of the built-in normalizers
/// up to `max_arity` variables.
pub fn default_node_budget(theory: &TheoryPresentation, max_arity: usize) -> usize {
    match &theory.prover {
        ProverStrategy::NormalForm(Normalizer::AntiInvolutionMonoid) => 3 * max_arity.max(1) - 1,
        _ => 2 * max_arity.max(1) - 1,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::check_operad_laws;
    use crate::theories::{anti_involution_monoid, commutative_monoid, monoid};

    #[test]
    fn free_binary_operad_sizes() {
        let sig = Signature::from_pairs([("m", 2)]).unwrap();
        let free = free_symmetric_operad(&sig, 3).unwrap();
        assert_eq!(free.sizes(), vec![0, 1, 2, 12]);
        assert!(free.is_authoritative());
        assert!((0..=3).all(|n| free.is_free_action(n).unwrap()));
        assert!(check_operad_laws(&free).passed());
        let empty = free_symmetric_operad(&Signature::new(), 2).unwrap();
        assert_eq!(empty.sizes(), vec![0, 1, 0]);
    }

    #[test]
    fn theory_operad_sizes() {
        let mon = operad_from_theory(&monoid(), 3, 5).unwrap();
        assert_eq!(mon.size(3), 6);
        assert!(mon.is_authoritative());
        let cm = operad_from_theory(&commutative_monoid(), 3, 5).unwrap();
        assert_eq!(cm.sizes(), vec![1, 1, 1, 1]);
        let ai = operad_from_theory(&anti_involution_monoid(), 2, 5).unwrap();
        assert_eq!(ai.size(2), 8);
        assert!(check_operad_laws(&ai).passed());
        assert!(check_operad_laws(&mon).passed());
    }
}
