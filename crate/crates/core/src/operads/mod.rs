//! Truncated symmetric operads as finite data, with exhaustive law checking.
//!
//! Operations are addressed by [`Op`] (arity and index into that arity's
//! carrier). Actions are tabulated at construction; composition is a
//! function supplied by each constructor, optionally patched by an override
//! table.

mod laws;
mod sym;
mod trees;

use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::{factorial, Permutation};

pub use laws::{check_operad_laws, check_operad_laws_with, AssociativityMode, OperadLawReport, Violation, FULL_ASSOCIATIVITY_LIMIT};
pub use sym::{
    find_non_homomorphism, make_sym, sym_compose, terminal_operad, NonHomomorphismWitness,
};
pub use trees::{default_node_budget, free_symmetric_operad, operad_from_theory};

/// An operation of a truncated operad.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Op {
    pub arity: usize,
    pub index: usize,
}

impl Op {
    pub fn new(arity: usize, index: usize) -> Self {
        Op { arity, index }
    }
}

/// `compose(inner, outer)` computes `⟨inner_1,…,inner_k⟩ ∗ outer`.
pub type ComposeFn = dyn Fn(&[Op], Op) -> Result<Op> + Send + Sync;

#[derive(Clone)]
pub struct SymmetricOperadData {
    name: String,
    max_arity: usize,
    carriers: Vec<Vec<String>>,
    lookup: HashMap<String, Op>,
    unit: Op,
    /// `action[n][rank(σ)][a] = index of σ·a`.
    action: Vec<Vec<Vec<usize>>>,
    compose: Arc<ComposeFn>,
    overrides: HashMap<(Vec<Op>, Op), Op>,
    authoritative: bool,
}

impl fmt::Debug for SymmetricOperadData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SymmetricOperadData")
            .field("name", &self.name)
            .field("max_arity", &self.max_arity)
            .field("sizes", &self.sizes())
            .finish()
    }
}

impl SymmetricOperadData {
    /// Tabulates `action(n, σ, a)` for every arity and checks names are
    /// unique. `carriers[n]` lists the names of the n-ary operations.
    pub fn from_parts(
        name: &str,
        carriers: Vec<Vec<String>>,
        unit: Op,
        action: impl Fn(usize, &Permutation, usize) -> Result<usize>,
        compose: Arc<ComposeFn>,
    ) -> Result<Self> {
        if carriers.len() < 2 {
            return Err(Error::Validation("an operad needs carriers up to arity 1".into()));
        }
        let max_arity = carriers.len() - 1;
        if unit.arity != 1 || unit.index >= carriers[1].len() {
            return Err(Error::Validation("the unit must be a unary operation".into()));
        }
        let mut lookup = HashMap::new();
        for (n, names) in carriers.iter().enumerate() {
            for (i, s) in names.iter().enumerate() {
                if lookup.insert(s.clone(), Op::new(n, i)).is_some() {
                    return Err(Error::Validation(format!("duplicate operation name `{s}`")));
                }
            }
        }
        let mut table = Vec::with_capacity(carriers.len());
        for (n, names) in carriers.iter().enumerate() {
            let mut per_perm = Vec::with_capacity(factorial(n));
            for sigma in Permutation::all(n) {
                let row = (0..names.len())
                    .map(|a| {
                        let b = action(n, &sigma, a)?;
                        if b >= names.len() {
                            return Err(Error::OutOfRange(format!("action result {b} in arity {n}")));
                        }
                        Ok(b)
                    })
                    .collect::<Result<Vec<_>>>()?;
                per_perm.push(row);
            }
            table.push(per_perm);
        }
        Ok(SymmetricOperadData {
            name: name.to_string(),
            max_arity,
            carriers,
            lookup,
            unit,
            action: table,
            compose,
            overrides: HashMap::new(),
            authoritative: true,
        })
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn max_arity(&self) -> usize {
        self.max_arity
    }

    pub fn unit(&self) -> Op {
        self.unit
    }

    pub fn is_authoritative(&self) -> bool {
        self.authoritative
    }

    pub(crate) fn mark_non_authoritative(&mut self) {
        self.authoritative = false;
    }

    pub fn size(&self, n: usize) -> usize {
        self.carriers.get(n).map_or(0, Vec::len)
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.carriers.iter().map(Vec::len).collect()
    }

    pub fn operations(&self, n: usize) -> impl Iterator<Item = Op> + '_ {
        (0..self.size(n)).map(move |i| Op::new(n, i))
    }

    pub fn op_name(&self, a: Op) -> &str {
        &self.carriers[a.arity][a.index]
    }

    pub fn find(&self, name: &str) -> Option<Op> {
        self.lookup.get(name).copied()
    }

    fn check_op(&self, a: Op) -> Result<()> {
        if a.arity > self.max_arity || a.index >= self.size(a.arity) {
            return Err(Error::OutOfRange(format!(
                "no operation {} of arity {} in `{}`",
                a.index, a.arity, self.name
            )));
        }
        Ok(())
    }

    /// `σ·a`.
    pub fn act(&self, sigma: &Permutation, a: Op) -> Result<Op> {
        self.check_op(a)?;
        if sigma.size() != a.arity {
            return Err(Error::size(format!(
                "permutation of {} acting on an operation of arity {}",
                sigma.size(),
                a.arity
            )));
        }
        Ok(Op::new(a.arity, self.action[a.arity][sigma.rank()][a.index]))
    }

    /// `⟨inner_1,…,inner_k⟩ ∗ outer`.
    pub fn compose(&self, inner: &[Op], outer: Op) -> Result<Op> {
        self.check_op(outer)?;
        if inner.len() != outer.arity {
            return Err(Error::ArityMismatch(format!(
                "{} inputs supplied to an operation of arity {}",
                inner.len(),
                outer.arity
            )));
        }
        for &g in inner {
            self.check_op(g)?;
        }
        let total: usize = inner.iter().map(|g| g.arity).sum();
        if total > self.max_arity {
            return Err(Error::truncation(format!(
                "composite arity {total} exceeds {}",
                self.max_arity
            )));
        }
        if !self.overrides.is_empty() {
            if let Some(&r) = self.overrides.get(&(inner.to_vec(), outer)) {
                return Ok(r);
            }
        }
        let r = (self.compose)(inner, outer)?;
        if r.arity != total {
            return Err(Error::LawViolation(format!(
                "composite has arity {} instead of {total}",
                r.arity
            )));
        }
        Ok(r)
    }

    /// `f ∘_i g`: plug `g` into input `i` (1-based), units elsewhere.
    pub fn partial_compose(&self, f: Op, i: usize, g: Op) -> Result<Op> {
        let mut inner = vec![self.unit; f.arity];
        *inner
            .get_mut(i.wrapping_sub(1))
            .ok_or_else(|| Error::OutOfRange(format!("input {i} of arity {}", f.arity)))? = g;
        self.compose(&inner, f)
    }

    /// Replaces one composition entry; used for mutation testing.
    pub fn with_override(&self, inner: Vec<Op>, outer: Op, result: Op) -> Self {
        let mut out = self.clone();
        out.name = format!("{}*", self.name);
        out.overrides.insert((inner, outer), result);
        out
    }

    /// Whether `σ·a = a` forces `σ = id` for every n-ary `a`.
    pub fn is_free_action(&self, n: usize) -> Result<bool> {
        if n > self.max_arity {
            return Err(Error::OutOfRange(format!("arity {n} above {}", self.max_arity)));
        }
        Ok(self.action[n]
            .iter()
            .enumerate()
            .skip(1) // rank 0 is the identity
            .all(|(_, row)| row.iter().enumerate().all(|(a, &b)| a != b)))
    }

    /// Orbit representatives (least index) of the n-ary operations.
    pub fn orbit_representatives(&self, n: usize) -> Vec<Op> {
        (0..self.size(n))
            .filter(|&a| self.action[n].iter().all(|row| row[a] >= a))
            .map(|a| Op::new(n, a))
            .collect()
    }

    /// The least element of the orbit of `a`, with a permutation reaching it.
    pub fn orbit_min(&self, a: Op) -> (Op, Permutation) {
        let n = a.arity;
        let (rank, idx) = self.action[n]
            .iter()
            .enumerate()
            .map(|(r, row)| (r, row[a.index]))
            .min_by_key(|&(r, i)| (i, r))
            .expect("S_n is nonempty");
        (Op::new(n, idx), Permutation::unrank(n, rank).expect("rank below n!"))
    }

    /// Invertible unary operations with their inverses.
    pub fn unary_inverse(&self, a: Op) -> Option<Op> {
        if a.arity != 1 {
            return None;
        }
        self.operations(1).find(|&b| {
            self.compose(&[b], a).ok() == Some(self.unit) && self.compose(&[a], b).ok() == Some(self.unit)
        })
    }

    pub fn summary(&self) -> String {
        let sizes: Vec<String> = self.sizes().iter().map(ToString::to_string).collect();
        format!("{} (max arity {}): |O_n| = {}", self.name, self.max_arity, sizes.join(", "))
    }
}

/// Calls `visit` on every tuple of `len` operations whose arities sum to at
/// most `budget`, in lexicographic order of (arity, index) per slot.
pub(crate) fn for_each_tuple(
    operad: &SymmetricOperadData,
    len: usize,
    budget: usize,
    visit: &mut dyn FnMut(&[Op]),
) {
    fn go(
        operad: &SymmetricOperadData,
        len: usize,
        budget: usize,
        prefix: &mut Vec<Op>,
        visit: &mut dyn FnMut(&[Op]),
    ) {
        if prefix.len() == len {
            visit(prefix);
            return;
        }
        for a in 0..=budget.min(operad.max_arity) {
            for op in operad.operations(a) {
                prefix.push(op);
                go(operad, len, budget - a, prefix, visit);
                prefix.pop();
            }
        }
    }
    go(operad, len, budget, &mut Vec::with_capacity(len), visit);
}

/// A map of carriers commuting with units, actions and composition,
/// checked on every instance within the truncation.
pub fn check_operad_morphism(
    source: &SymmetricOperadData,
    target: &SymmetricOperadData,
    map: &dyn Fn(Op) -> Result<Op>,
) -> Result<OperadLawReport> {
    let mut report = OperadLawReport::default();
    let n_max = source.max_arity.min(target.max_arity);
    report.record("unit", map(source.unit)? == target.unit, || "unit not preserved".into());
    for n in 0..=n_max {
        for a in source.operations(n) {
            for sigma in Permutation::all(n) {
                let l = map(source.act(&sigma, a)?)?;
                let r = target.act(&sigma, map(a)?)?;
                report.record("action", l == r, || {
                    format!("{sigma}·{}", source.op_name(a))
                });
            }
        }
    }
    for k in 0..=n_max {
        for f in source.operations(k) {
            let mut failure = None;
            for_each_tuple(source, k, n_max, &mut |inner| {
                if failure.is_some() {
                    return;
                }
                let step = || -> Result<bool> {
                    let l = map(source.compose(inner, f)?)?;
                    let mapped: Vec<Op> = inner.iter().map(|&g| map(g)).collect::<Result<_>>()?;
                    Ok(l == target.compose(&mapped, map(f)?)?)
                };
                match step() {
                    Ok(ok) => report.record("composition", ok, || {
                        let names: Vec<&str> = inner.iter().map(|&g| source.op_name(g)).collect();
                        format!("⟨{}⟩∗{}", names.join(","), source.op_name(f))
                    }),
                    Err(e) => failure = Some(e),
                }
            });
            if let Some(e) = failure {
                return Err(e);
            }
        }
    }
    Ok(report)
}
