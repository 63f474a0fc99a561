//! Terms in context over a finitary signature.
//!
//! A context is just a length `n`; variables are the indices `1..=n` and are
//! written `x1 .. xn` in the concrete syntax.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::finset::FinFunction;

/// Operation symbols with their arities.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Signature {
    symbols: BTreeMap<String, usize>,
}

impl Signature {
    pub fn new() -> Self {
        Signature::default()
    }

    pub fn from_pairs<'a>(pairs: impl IntoIterator<Item = (&'a str, usize)>) -> Result<Self> {
        let mut sig = Signature::new();
        for (name, arity) in pairs {
            sig.add(name, arity)?;
        }
        Ok(sig)
    }

    pub fn add(&mut self, name: &str, arity: usize) -> Result<()> {
        if !is_symbol_name(name) {
            return Err(Error::Validation(format!("`{name}` is not a valid symbol name")));
        }
        if self.symbols.insert(name.to_string(), arity).is_some() {
            return Err(Error::Validation(format!("symbol `{name}` declared twice")));
        }
        Ok(())
    }

    pub fn arity(&self, name: &str) -> Option<usize> {
        self.symbols.get(name).copied()
    }

    pub fn symbols(&self) -> impl Iterator<Item = (&str, usize)> {
        self.symbols.iter().map(|(k, &v)| (k.as_str(), v))
    }

    pub fn len(&self) -> usize {
        self.symbols.len()
    }

    pub fn is_empty(&self) -> bool {
        self.symbols.is_empty()
    }
}

/// Symbol names must not collide with variable names `x<digits>`.
fn is_symbol_name(name: &str) -> bool {
    let mut chars = name.chars();
    let Some(first) = chars.next() else {
        return false;
    };
    if !(first.is_alphabetic() || first == '_') {
        return false;
    }
    if !name.chars().all(|c| c.is_alphanumeric() || c == '_' || c == '\'') {
        return false;
    }
    parse_variable(name).is_none()
}

fn parse_variable(token: &str) -> Option<usize> {
    let digits = token.strip_prefix('x')?;
    if digits.is_empty() || !digits.chars().all(|c| c.is_ascii_digit()) {
        return None;
    }
    digits.parse().ok().filter(|&i| i >= 1)
}

/// A term body: variables are 1-based indices into the context.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Term {
    Var(usize),
    App(String, Vec<Term>),
}

impl Term {
    pub fn var(i: usize) -> Term {
        Term::Var(i)
    }

    pub fn app(name: &str, args: Vec<Term>) -> Term {
        Term::App(name.to_string(), args)
    }

    pub fn constant(name: &str) -> Term {
        Term::App(name.to_string(), Vec::new())
    }

    /// Number of symbol and variable nodes.
    pub fn size(&self) -> usize {
        match self {
            Term::Var(_) => 1,
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
        }
    }

    /// Variable occurrences, left to right.
    pub fn variables(&self) -> Vec<usize> {
        let mut out = Vec::new();
        self.collect_variables(&mut out);
        out
    }

    fn collect_variables(&self, out: &mut Vec<usize>) {
        match self {
            Term::Var(i) => out.push(*i),
            Term::App(_, args) => args.iter().for_each(|a| a.collect_variables(out)),
        }
    }

    pub fn max_variable(&self) -> usize {
        self.variables().into_iter().max().unwrap_or(0)
    }

    /// Replaces every variable `x_i` by `f(i)`.
    pub fn map_variables(&self, f: &impl Fn(usize) -> Term) -> Term {
        match self {
            Term::Var(i) => f(*i),
            Term::App(name, args) => {
                Term::App(name.clone(), args.iter().map(|a| a.map_variables(f)).collect())
            }
        }
    }

    pub fn subterm(&self, pos: &[usize]) -> Option<&Term> {
        match pos.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, args) => args.get(i)?.subterm(rest),
                Term::Var(_) => None,
            },
        }
    }

    /// A copy of `self` with the subterm at `pos` replaced.
    pub fn replace(&self, pos: &[usize], with: Term) -> Option<Term> {
        match pos.split_first() {
            None => Some(with),
            Some((&i, rest)) => match self {
                Term::App(name, args) if i < args.len() => {
                    let mut args = args.clone();
                    args[i] = args[i].replace(rest, with)?;
                    Some(Term::App(name.clone(), args))
                }
                _ => None,
            },
        }
    }

    /// All positions in preorder (root first, children left to right).
    pub fn positions(&self) -> Vec<Vec<usize>> {
        let mut out = Vec::new();
        self.collect_positions(&mut Vec::new(), &mut out);
        out
    }

    fn collect_positions(&self, prefix: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        out.push(prefix.clone());
        if let Term::App(_, args) = self {
            for (i, a) in args.iter().enumerate() {
                prefix.push(i);
                a.collect_positions(prefix, out);
                prefix.pop();
            }
        }
    }

    /// Checks symbol arities against `sig` and variables against `context`.
    pub fn check(&self, sig: &Signature, context: usize) -> Result<()> {
        match self {
            Term::Var(i) if *i >= 1 && *i <= context => Ok(()),
            Term::Var(i) => Err(Error::Validation(format!(
                "variable x{i} outside context of length {context}"
            ))),
            Term::App(name, args) => {
                let arity = sig
                    .arity(name)
                    .ok_or_else(|| Error::UnknownSymbol(name.clone()))?;
                if arity != args.len() {
                    return Err(Error::ArityMismatch(format!(
                        "`{name}` has arity {arity} but is applied to {} arguments",
                        args.len()
                    )));
                }
                args.iter().try_for_each(|a| a.check(sig, context))
            }
        }
    }

    pub fn parse(text: &str) -> Result<Term> {
        let mut p = TermParser::new(text);
        let t = p.term()?;
        p.skip_ws();
        if p.pos < p.chars.len() {
            return Err(p.error("trailing input after term"));
        }
        Ok(t)
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(i) => write!(f, "x{i}"),
            Term::App(name, args) if args.is_empty() => write!(f, "{name}"),
            Term::App(name, args) => {
                write!(f, "{name}(")?;
                for (k, a) in args.iter().enumerate() {
                    if k > 0 {
                        write!(f, ",")?;
                    }
                    write!(f, "{a}")?;
                }
                write!(f, ")")
            }
        }
    }
}

impl fmt::Debug for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

struct TermParser {
    chars: Vec<char>,
    pos: usize,
}

impl TermParser {
    fn new(text: &str) -> Self {
        TermParser {
            chars: text.chars().collect(),
            pos: 0,
        }
    }

    fn error(&self, message: &str) -> Error {
        Error::Parse {
            line: 1,
            column: self.pos + 1,
            message: message.to_string(),
        }
    }

    fn skip_ws(&mut self) {
        while self.chars.get(self.pos).is_some_and(|c| c.is_whitespace()) {
            self.pos += 1;
        }
    }

    fn ident(&mut self) -> Result<String> {
        self.skip_ws();
        let start = self.pos;
        while self
            .chars
            .get(self.pos)
            .is_some_and(|&c| c.is_alphanumeric() || c == '_' || c == '\'')
        {
            self.pos += 1;
        }
        if start == self.pos {
            return Err(self.error("expected a symbol or variable"));
        }
        Ok(self.chars[start..self.pos].iter().collect())
    }

    fn term(&mut self) -> Result<Term> {
        let name = self.ident()?;
        if let Some(i) = parse_variable(&name) {
            return Ok(Term::Var(i));
        }
        self.skip_ws();
        if self.chars.get(self.pos) != Some(&'(') {
            return Ok(Term::App(name, Vec::new()));
        }
        self.pos += 1;
        let mut args = Vec::new();
        self.skip_ws();
        if self.chars.get(self.pos) == Some(&')') {
            self.pos += 1;
            return Ok(Term::App(name, args));
        }
        loop {
            args.push(self.term()?);
            self.skip_ws();
            match self.chars.get(self.pos) {
                Some(',') => self.pos += 1,
                Some(')') => {
                    self.pos += 1;
                    return Ok(Term::App(name, args));
                }
                _ => return Err(self.error("expected `,` or `)`")),
            }
        }
    }
}

/// A term together with the length of its context.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TermInContext {
    pub context: usize,
    pub body: Term,
}

impl TermInContext {
    pub fn new(context: usize, body: Term) -> Result<Self> {
        if let Some(v) = body.variables().into_iter().find(|&v| v == 0 || v > context) {
            return Err(Error::Validation(format!(
                "variable x{v} outside context of length {context}"
            )));
        }
        Ok(TermInContext { context, body })
    }

    pub fn variable(i: usize, context: usize) -> Result<Self> {
        TermInContext::new(context, Term::Var(i))
    }

    pub fn parse(text: &str, context: usize) -> Result<Self> {
        TermInContext::new(context, Term::parse(text)?)
    }

    /// The term `f(x_1, ..., x_k)`.
    pub fn generic(name: &str, arity: usize) -> Self {
        TermInContext {
            context: arity,
            body: Term::app(name, (1..=arity).map(Term::Var).collect()),
        }
    }

    pub fn size(&self) -> usize {
        self.body.size()
    }
}

impl fmt::Display for TermInContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} : x⃗{}", self.body, self.context)
    }
}

impl fmt::Debug for TermInContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Simultaneous substitution of `args[i]` for `x_{i+1}` in `t`.
pub fn substitute(t: &TermInContext, args: &[TermInContext]) -> Result<TermInContext> {
    if args.len() != t.context {
        return Err(Error::ArityMismatch(format!(
            "substituting {} terms into a context of length {}",
            args.len(),
            t.context
        )));
    }
    let n = match args.first() {
        Some(a) => a.context,
        None => 0,
    };
    if args.iter().any(|a| a.context != n) {
        return Err(Error::ArityMismatch(
            "substituted terms must share one context".into(),
        ));
    }
    Ok(TermInContext {
        context: n,
        body: t.body.map_variables(&|i| args[i - 1].body.clone()),
    })
}

/// Substitution whose arguments live in a context of explicit length `n`
/// (needed when `args` is empty).
pub fn substitute_into(t: &TermInContext, args: &[Term], n: usize) -> Result<TermInContext> {
    let args: Vec<TermInContext> = args
        .iter()
        .map(|a| TermInContext::new(n, a.clone()))
        .collect::<Result<_>>()?;
    if args.is_empty() {
        if t.context != 0 {
            return Err(Error::ArityMismatch(format!(
                "substituting 0 terms into a context of length {}",
                t.context
            )));
        }
        return Ok(TermInContext {
            context: n,
            body: t.body.clone(),
        });
    }
    substitute(t, &args)
}

/// Renames `x_i` to `x_{φ(i)}`; the context becomes the codomain of `φ`.
pub fn simple_substitute(t: &TermInContext, phi: &FinFunction) -> Result<TermInContext> {
    if phi.domain() != t.context {
        return Err(Error::SizeMismatch(format!(
            "renaming {phi:?} on a context of length {}",
            t.context
        )));
    }
    Ok(TermInContext {
        context: phi.codomain(),
        body: t.body.map_variables(&|i| Term::Var(phi.apply(i))),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct TermClassification {
    pub regular: bool,
    pub linear: bool,
    pub linear_regular: bool,
    pub strongly_regular: bool,
}

pub fn classify(t: &TermInContext) -> TermClassification {
    let vars = t.body.variables();
    let mut counts = vec![0usize; t.context + 1];
    for &v in &vars {
        counts[v] += 1;
    }
    let regular = counts[1..].iter().all(|&c| c >= 1);
    let linear = counts[1..].iter().all(|&c| c <= 1);
    let linear_regular = regular && linear;
    let strongly_regular = linear_regular && vars.iter().enumerate().all(|(i, &v)| v == i + 1);
    TermClassification {
        regular,
        linear,
        linear_regular,
        strongly_regular,
    }
}

/// Which terms [`enumerate_terms`] keeps.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TermFilter {
    All,
    Regular,
    Linear,
    LinearRegular,
    StronglyRegular,
}

impl TermFilter {
    pub fn accepts(self, c: &TermClassification) -> bool {
        match self {
            TermFilter::All => true,
            TermFilter::Regular => c.regular,
            TermFilter::Linear => c.linear,
            TermFilter::LinearRegular => c.linear_regular,
            TermFilter::StronglyRegular => c.strongly_regular,
        }
    }

    fn forces_linear(self) -> bool {
        matches!(
            self,
            TermFilter::Linear | TermFilter::LinearRegular | TermFilter::StronglyRegular
        )
    }
}

/// All terms over `x⃗ⁿ` with at most `max_nodes` nodes passing `filter`,
/// ordered by size and then by the derived term order.
pub fn enumerate_terms(
    sig: &Signature,
    n: usize,
    max_nodes: usize,
    filter: TermFilter,
) -> Vec<TermInContext> {
    let mut out: Vec<Term> = if filter.forces_linear() {
        linear_terms(sig, n, max_nodes)
    } else {
        all_terms(sig, n, max_nodes)
    };
    out.sort_by(|a, b| a.size().cmp(&b.size()).then_with(|| a.cmp(b)));
    out.into_iter()
        .map(|body| TermInContext { context: n, body })
        .filter(|t| filter.accepts(&classify(t)))
        .collect()
}

fn all_terms(sig: &Signature, n: usize, max_nodes: usize) -> Vec<Term> {
    // by_size[s] holds every term with exactly s nodes.
    let mut by_size: Vec<Vec<Term>> = vec![Vec::new(); max_nodes + 1];
    for s in 1..=max_nodes {
        let mut here = Vec::new();
        if s == 1 {
            here.extend((1..=n).map(Term::Var));
        }
        for (name, arity) in sig.symbols() {
            if arity == 0 {
                if s == 1 {
                    here.push(Term::constant(name));
                }
                continue;
            }
            for sizes in size_splits(s - 1, arity) {
                let pools: Vec<&Vec<Term>> = sizes.iter().map(|&k| &by_size[k]).collect();
                for args in cartesian(&pools) {
                    here.push(Term::App(name.to_string(), args));
                }
            }
        }
        by_size[s] = here;
    }
    by_size.into_iter().flatten().collect()
}

/// Linear terms, generated with the set of used variables tracked so that
/// no variable is ever repeated.
fn linear_terms(sig: &Signature, n: usize, max_nodes: usize) -> Vec<Term> {
    // table[s] maps a variable bitmask to terms of size s using exactly those variables.
    let mut table: Vec<BTreeMap<u64, Vec<Term>>> = vec![BTreeMap::new(); max_nodes + 1];
    for s in 1..=max_nodes {
        let mut here: BTreeMap<u64, Vec<Term>> = BTreeMap::new();
        if s == 1 {
            for i in 1..=n {
                here.entry(1u64 << i).or_default().push(Term::Var(i));
            }
        }
        for (name, arity) in sig.symbols() {
            if arity == 0 {
                if s == 1 {
                    here.entry(0).or_default().push(Term::constant(name));
                }
                continue;
            }
            for sizes in size_splits(s - 1, arity) {
                let mut partial: Vec<(u64, Vec<Term>)> = vec![(0, Vec::new())];
                for &k in &sizes {
                    let mut next = Vec::new();
                    for (mask, args) in &partial {
                        for (&m, terms) in &table[k] {
                            if m & mask != 0 {
                                continue;
                            }
                            for t in terms {
                                let mut a = args.clone();
                                a.push(t.clone());
                                next.push((mask | m, a));
                            }
                        }
                    }
                    partial = next;
                }
                for (mask, args) in partial {
                    here.entry(mask)
                        .or_default()
                        .push(Term::App(name.to_string(), args));
                }
            }
        }
        table[s] = here;
    }
    table
        .into_iter()
        .flat_map(|m| m.into_values().flatten())
        .collect()
}

/// Ordered splits of `total` into `parts` positive summands.
fn size_splits(total: usize, parts: usize) -> Vec<Vec<usize>> {
    fn go(total: usize, parts: usize, acc: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        if total < parts {
            return;
        }
        for k in 1..=(total - (parts - 1)) {
            acc.push(k);
            go(total - k, parts - 1, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    go(total, parts, &mut Vec::new(), &mut out);
    out
}

fn cartesian(pools: &[&Vec<Term>]) -> Vec<Vec<Term>> {
    let mut out: Vec<Vec<Term>> = vec![Vec::new()];
    for pool in pools {
        let mut next = Vec::with_capacity(out.len() * pool.len());
        for prefix in &out {
            for t in pool.iter() {
                let mut p = prefix.clone();
                p.push(t.clone());
                next.push(p);
            }
        }
        out = next;
    }
    out
}

/// Distinct variables of a term, sorted.
pub fn variable_set(t: &Term) -> BTreeSet<usize> {
    t.variables().into_iter().collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn tic(s: &str, n: usize) -> TermInContext {
        TermInContext::parse(s, n).unwrap()
    }

    fn monoid_sig() -> Signature {
        Signature::from_pairs([("m", 2), ("e", 0)]).unwrap()
    }

    #[test]
    fn parse_and_display_round_trip() {
        let t = Term::parse("m(x1, m(e, s(x2)))").unwrap();
        assert_eq!(t.to_string(), "m(x1,m(e,s(x2)))");
        assert_eq!(t.size(), 6);
        assert!(Term::parse("m(x1,").is_err());
        assert!(matches!(Term::parse("m(x1) x2"), Err(Error::Parse { .. })));
    }

    #[test]
    fn check_reports_unknown_symbols_and_arity() {
        let sig = monoid_sig();
        assert!(matches!(
            Term::parse("k(x1)").unwrap().check(&sig, 1),
            Err(Error::UnknownSymbol(_))
        ));
        assert!(matches!(
            Term::parse("m(x1)").unwrap().check(&sig, 1),
            Err(Error::ArityMismatch(_))
        ));
        assert!(Term::parse("m(x1,x3)").unwrap().check(&sig, 2).is_err());
    }

    #[test]
    fn substitute_examples() {
        let r = substitute(&tic("x1", 1), &[tic("m(x1,x2)", 2)]).unwrap();
        assert_eq!(r, tic("m(x1,x2)", 2));
        let r = substitute(&tic("m(x1,x2)", 2), &[tic("e", 0), tic("e", 0)]).unwrap();
        assert_eq!(r, tic("m(e,e)", 0));
        assert!(matches!(
            substitute(&tic("m(x1,x2)", 2), &[tic("e", 0)]),
            Err(Error::ArityMismatch(_))
        ));
    }

    #[test]
    fn simple_substitute_examples() {
        let t = tic("m(x1,x2)", 2);
        assert_eq!(simple_substitute(&t, &FinFunction::identity(2)).unwrap(), t);
        let swap = FinFunction::new(2, vec![2, 1]).unwrap();
        assert_eq!(simple_substitute(&t, &swap).unwrap(), tic("m(x2,x1)", 2));
        let c = FinFunction::constant(2, 1, 1).unwrap();
        assert_eq!(simple_substitute(&t, &c).unwrap(), tic("m(x1,x1)", 1));
        assert!(simple_substitute(&t, &FinFunction::identity(3)).is_err());
    }

    #[test]
    fn classify_examples() {
        let c = classify(&tic("m(x1,m(x2,x3))", 3));
        assert!(c.linear_regular && c.strongly_regular);
        let c = classify(&tic("join(x1,x1)", 1));
        assert!(c.regular && !c.linear);
        let c = classify(&tic("x2", 2));
        assert!(c.linear && !c.regular);
        let c = classify(&tic("m(x2,x1)", 2));
        assert!(c.linear_regular && !c.strongly_regular);
    }

    #[test]
    fn enumerate_examples() {
        let sig = monoid_sig();
        let t = enumerate_terms(&sig, 0, 1, TermFilter::All);
        assert_eq!(t, vec![tic("e", 0)]);
        let t = enumerate_terms(&sig, 2, 3, TermFilter::LinearRegular);
        assert_eq!(t, vec![tic("m(x1,x2)", 2), tic("m(x2,x1)", 2)]);

        let sig = Signature::from_pairs([("s", 1), ("m", 2), ("e", 0)]).unwrap();
        let t = enumerate_terms(&sig, 1, 2, TermFilter::LinearRegular);
        assert_eq!(t, vec![tic("x1", 1), tic("s(x1)", 1)]);
    }

    #[test]
    fn linear_enumeration_matches_brute_force() {
        let sig = Signature::from_pairs([("s", 1), ("m", 2), ("e", 0)]).unwrap();
        for n in 0..=3 {
            for nodes in 1..=6 {
                for filter in [
                    TermFilter::Linear,
                    TermFilter::LinearRegular,
                    TermFilter::StronglyRegular,
                ] {
                    let fast = enumerate_terms(&sig, n, nodes, filter);
                    let slow: Vec<TermInContext> = enumerate_terms(&sig, n, nodes, TermFilter::All)
                        .into_iter()
                        .filter(|t| filter.accepts(&classify(t)))
                        .collect();
                    assert_eq!(fast, slow, "n={n} nodes={nodes} {filter:?}");
                }
            }
        }
    }

    #[test]
    fn positions_and_replace() {
        let t = Term::parse("m(x1,s(x2))").unwrap();
        assert_eq!(t.positions().len(), 4);
        assert_eq!(t.subterm(&[1, 0]), Some(&Term::Var(2)));
        let r = t.replace(&[1], Term::constant("e")).unwrap();
        assert_eq!(r.to_string(), "m(x1,e)");
        assert!(t.replace(&[0, 0], Term::Var(1)).is_none());
    }
}
