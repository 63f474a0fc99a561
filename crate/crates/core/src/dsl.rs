//! Line-oriented text formats for theory presentations and finite operads.
//! See [`parse_operad`] for the operad format.
//!
//! ```text
//! theory Monoid
//! op m : 2
//! op e : 0
//! ax m(x1,m(x2,x3)) = m(m(x1,x2),x3)
//! prover normalform:monoid
//! ```
//!
//! An axiom lives over the context `x⃗ⁿ` where `n` is the largest variable
//! index on either side, unless `ax[n]` fixes it explicitly.
//! `#` starts a comment.

use std::collections::HashMap;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::finset::Permutation;
use crate::operads::{free_symmetric_operad, make_sym, terminal_operad, Op, SymmetricOperadData};
use crate::terms::{Signature, Term};
use crate::theories::{Equation, Normalizer, ProverStrategy, SearchBudget, TheoryPresentation};

pub(crate) struct Line<'a> {
    pub number: usize,
    /// Column of the first character of `text`.
    pub offset: usize,
    pub text: &'a str,
}

impl Line<'_> {
    pub fn error(&self, column: usize, message: impl Into<String>) -> Error {
        Error::Parse {
            line: self.number,
            column: self.offset + column,
            message: message.into(),
        }
    }

    /// Column (1-based) of `part`, which must be a subslice of `self.text`.
    pub fn column_of(&self, part: &str) -> usize {
        part.as_ptr() as usize - self.text.as_ptr() as usize + 1
    }

    pub fn keyword(&self) -> (&str, &str) {
        match self.text.split_once(char::is_whitespace) {
            Some((k, rest)) => (k, rest.trim()),
            None => (self.text, ""),
        }
    }
}

/// Non-empty lines with comments stripped.
pub(crate) fn lines(src: &str) -> impl Iterator<Item = Line<'_>> {
    src.lines().enumerate().filter_map(|(i, raw)| {
        let body = raw.split('#').next().unwrap_or("");
        let trimmed = body.trim_start();
        let offset = body.len() - trimmed.len();
        let text = trimmed.trim_end();
        (!text.is_empty()).then_some(Line {
            number: i + 1,
            offset,
            text,
        })
    })
}

fn parse_term_at(line: &Line<'_>, part: &str) -> Result<Term> {
    Term::parse(part).map_err(|e| match e {
        Error::Parse { column, message, .. } => line.error(line.column_of(part) + column - 1, message),
        other => other,
    })
}

fn parse_prover(line: &Line<'_>, spec: &str) -> Result<ProverStrategy> {
    let col = line.column_of(spec);
    if let Some(name) = spec.strip_prefix("normalform:") {
        return Normalizer::from_name(name.trim())
            .map(ProverStrategy::NormalForm)
            .ok_or_else(|| line.error(col, format!("unknown normalizer `{}`", name.trim())));
    }
    if let Some(rest) = spec.strip_prefix("bounded:") {
        let parts: Vec<&str> = rest.split(',').map(str::trim).collect();
        let nums: Option<Vec<usize>> = parts.iter().map(|p| p.parse().ok()).collect();
        return match nums.as_deref() {
            Some([steps, size]) => Ok(ProverStrategy::BoundedSearch(SearchBudget {
                max_steps: *steps,
                max_size: *size,
            })),
            _ => Err(line.error(col, "expected `bounded:<steps>,<size>`")),
        };
    }
    Err(line.error(col, "expected `normalform:<name>` or `bounded:<steps>,<size>`"))
}

/// Parses a theory presentation. Without a `prover` line the theory gets a
/// default bounded search.
pub fn parse_theory(src: &str) -> Result<TheoryPresentation> {
    let mut name = None;
    let mut signature = Signature::new();
    let mut raw_axioms = Vec::new();
    let mut prover = None;
    let mut last_line = 1;
    for line in lines(src) {
        last_line = line.number;
        let (kw, rest) = line.keyword();
        let rest_col = if rest.is_empty() { line.text.len() + 1 } else { line.column_of(rest) };
        match kw {
            "theory" => {
                if name.is_some() {
                    return Err(line.error(1, "duplicate `theory` header"));
                }
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(line.error(rest_col, "expected a single theory name"));
                }
                name = Some(rest.to_string());
            }
            _ if name.is_none() => return Err(line.error(1, "expected `theory <name>` first")),
            "op" => {
                let Some((sym, arity)) = rest.split_once(':') else {
                    return Err(line.error(rest_col, "expected `op <name> : <arity>`"));
                };
                let arity_part = arity.trim();
                let arity: usize = arity_part
                    .parse()
                    .map_err(|_| line.error(line.column_of(arity), "arity must be a natural number"))?;
                signature
                    .add(sym.trim(), arity)
                    .map_err(|e| line.error(rest_col, e.to_string()))?;
            }
            "prover" => {
                if prover.is_some() {
                    return Err(line.error(1, "duplicate `prover` line"));
                }
                prover = Some(parse_prover(&line, rest)?);
            }
            _ if kw == "ax" || kw.starts_with("ax[") => {
                let explicit = match kw.strip_prefix("ax[").and_then(|k| k.strip_suffix(']')) {
                    Some(n) => Some(
                        n.parse::<usize>()
                            .map_err(|_| line.error(4, "context length must be a number"))?,
                    ),
                    None if kw == "ax" => None,
                    None => return Err(line.error(1, "malformed `ax[n]`")),
                };
                let Some((l, r)) = rest.split_once('=') else {
                    return Err(line.error(rest_col, "expected `ax <lhs> = <rhs>`"));
                };
                let lhs = parse_term_at(&line, l)?;
                let rhs = parse_term_at(&line, r)?;
                let context = explicit.unwrap_or(lhs.max_variable().max(rhs.max_variable()));
                raw_axioms.push((line.number, rest_col, context, lhs, rhs));
            }
            other => return Err(line.error(1, format!("unknown keyword `{other}`"))),
        }
    }
    let Some(name) = name else {
        return Err(Error::Parse {
            line: last_line,
            column: 1,
            message: "missing `theory <name>` header".into(),
        });
    };
    let mut axioms = Vec::new();
    for (number, column, context, lhs, rhs) in raw_axioms {
        let wrap = |e: Error| match e {
            Error::UnknownSymbol(_) => Error::Validation(format!("axiom on line {number}: {e}")),
            other => Error::Parse {
                line: number,
                column,
                message: other.to_string(),
            },
        };
        lhs.check(&signature, context).map_err(wrap)?;
        rhs.check(&signature, context).map_err(wrap)?;
        axioms.push(Equation::new(context, lhs, rhs).map_err(wrap)?);
    }
    let prover = prover.unwrap_or(ProverStrategy::BoundedSearch(SearchBudget::default()));
    TheoryPresentation::new(&name, signature, axioms, prover)
}

/// Renders a presentation back into the theory format.
pub fn render_theory(theory: &TheoryPresentation) -> String {
    let mut out = format!("theory {}\n", theory.name);
    for (sym, arity) in theory.signature.symbols() {
        out.push_str(&format!("op {sym} : {arity}\n"));
    }
    for ax in &theory.axioms {
        let implied = ax.lhs.max_variable().max(ax.rhs.max_variable());
        if implied == ax.context {
            out.push_str(&format!("ax {} = {}\n", ax.lhs, ax.rhs));
        } else {
            out.push_str(&format!("ax[{}] {} = {}\n", ax.context, ax.lhs, ax.rhs));
        }
    }
    if !matches!(theory.prover, ProverStrategy::LawvereOracle(_)) {
        out.push_str(&format!("prover {}\n", theory.prover.describe()));
    }
    out
}

fn parse_permutation(line: &Line<'_>, part: &str) -> Result<Permutation> {
    let col = line.column_of(part);
    let inner = part
        .strip_prefix('[')
        .and_then(|p| p.strip_suffix(']'))
        .ok_or_else(|| line.error(col, "expected a permutation `[σ(1),…,σ(n)]`"))?;
    let values: Option<Vec<usize>> = if inner.trim().is_empty() {
        Some(Vec::new())
    } else {
        inner.split(',').map(|v| v.trim().parse().ok()).collect()
    };
    let values = values.ok_or_else(|| line.error(col, "permutation entries must be numbers"))?;
    Permutation::new(values).map_err(|e| line.error(col, e.to_string()))
}

fn lookup_op(line: &Line<'_>, names: &HashMap<String, Op>, part: &str) -> Result<Op> {
    names
        .get(part)
        .copied()
        .ok_or_else(|| line.error(line.column_of(part), format!("unknown operation `{part}`")))
}

/// Parses a finite operad.
///
/// ```text
/// operad Name maxarity 2
/// carrier 1: id
/// carrier 2: a b
/// unit id
/// act [2,1] a -> b
/// comp a [id,id] -> a
/// ```
///
/// `act` lines give generators of the actions; the rest follows by
/// composing permutations. Composites without a `comp` line are errors
/// when used. The headers `operad sym maxarity N`, `operad terminal
/// maxarity N` and `operad free maxarity N` (followed by `op` lines) name
/// the built-in operads.
pub fn parse_operad(src: &str) -> Result<SymmetricOperadData> {
    let mut lines = lines(src);
    let Some(header) = lines.next() else {
        return Err(Error::Parse {
            line: 1,
            column: 1,
            message: "missing `operad <name> maxarity <N>` header".into(),
        });
    };
    let words: Vec<&str> = header.text.split_whitespace().collect();
    let (name, max_arity) = match words.as_slice() {
        ["operad", name, "maxarity", n] => {
            let n: usize = n
                .parse()
                .ok()
                .filter(|&n| n >= 1)
                .ok_or_else(|| header.error(header.column_of(words[3]), "maxarity must be at least 1"))?;
            (*name, n)
        }
        _ => return Err(header.error(1, "expected `operad <name> maxarity <N>`")),
    };
    let rest: Vec<Line<'_>> = lines.collect();
    match name {
        "sym" | "terminal" => {
            if let Some(l) = rest.first() {
                return Err(l.error(1, format!("the built-in `{name}` takes no further lines")));
            }
            return Ok(if name == "sym" { make_sym(max_arity) } else { terminal_operad(max_arity) });
        }
        "free" => {
            let mut signature = Signature::new();
            for l in &rest {
                let (kw, body) = l.keyword();
                let parsed = (kw == "op")
                    .then(|| body.split_once(':'))
                    .flatten()
                    .and_then(|(s, a)| Some((s.trim(), a.trim().parse::<usize>().ok()?)));
                let Some((sym, arity)) = parsed else {
                    return Err(l.error(1, "expected `op <name> : <arity>`"));
                };
                signature.add(sym, arity).map_err(|e| l.error(1, e.to_string()))?;
            }
            return free_symmetric_operad(&signature, max_arity);
        }
        _ => {}
    }

    let mut carriers: Vec<Vec<String>> = vec![Vec::new(); max_arity + 1];
    let mut names: HashMap<String, Op> = HashMap::new();
    let mut unit = None;
    let mut acts: Vec<(usize, Permutation, usize, usize)> = Vec::new();
    let mut comps: HashMap<(Vec<Op>, Op), Op> = HashMap::new();
    for l in &rest {
        let (kw, body) = l.keyword();
        match kw {
            "carrier" => {
                let Some((n, ops)) = body.split_once(':') else {
                    return Err(l.error(1, "expected `carrier <arity>: <names>`"));
                };
                let n: usize = n
                    .trim()
                    .parse()
                    .ok()
                    .filter(|&n| n <= max_arity)
                    .ok_or_else(|| l.error(l.column_of(n), format!("arity must be at most {max_arity}")))?;
                for op in ops.split_whitespace() {
                    let o = Op::new(n, carriers[n].len());
                    if names.insert(op.to_string(), o).is_some() {
                        return Err(l.error(l.column_of(op), format!("duplicate operation `{op}`")));
                    }
                    carriers[n].push(op.to_string());
                }
            }
            "unit" => unit = Some(lookup_op(l, &names, body)?),
            "act" => {
                let parts: Vec<&str> = body.split_whitespace().collect();
                let [sigma, a, "->", b] = parts.as_slice() else {
                    return Err(l.error(1, "expected `act [σ] <a> -> <b>`"));
                };
                let sigma_p = parse_permutation(l, sigma)?;
                let (a_op, b_op) = (lookup_op(l, &names, a)?, lookup_op(l, &names, b)?);
                if a_op.arity != sigma_p.size() || b_op.arity != a_op.arity {
                    return Err(l.error(l.column_of(sigma), "arities of the action do not match"));
                }
                acts.push((a_op.arity, sigma_p, a_op.index, b_op.index));
            }
            "comp" => {
                let (Some(open), Some(close)) = (body.find('['), body.find(']')) else {
                    return Err(l.error(1, "expected `comp <f> [g1,…] -> <h>`"));
                };
                let f = lookup_op(l, &names, body[..open].trim())?;
                let list = &body[open + 1..close];
                let inner = list
                    .split(',')
                    .map(str::trim)
                    .filter(|g| !g.is_empty())
                    .map(|g| lookup_op(l, &names, g))
                    .collect::<Result<Vec<_>>>()?;
                let Some(h) = body[close + 1..].trim().strip_prefix("->") else {
                    return Err(l.error(l.column_of(&body[close..]), "expected `-> <h>`"));
                };
                let h = lookup_op(l, &names, h.trim())?;
                if inner.len() != f.arity || h.arity != inner.iter().map(|g| g.arity).sum::<usize>() {
                    return Err(l.error(1, "arities of the composite do not match"));
                }
                if comps.insert((inner, f), h).is_some() {
                    return Err(l.error(1, "duplicate `comp` entry"));
                }
            }
            other => return Err(l.error(1, format!("unknown keyword `{other}`"))),
        }
    }
    let unit = unit.ok_or_else(|| Error::Validation("missing `unit` line".into()))?;
    let table = action_closure(&carriers, &acts)?;
    let comps = Arc::new(comps);
    let compose = Arc::new(move |inner: &[Op], outer: Op| -> Result<Op> {
        comps
            .get(&(inner.to_vec(), outer))
            .copied()
            .ok_or_else(|| Error::Validation(format!("composite of {inner:?} into {outer:?} is not tabulated")))
    });
    SymmetricOperadData::from_parts(
        name,
        carriers,
        unit,
        move |n, sigma, a| {
            table
                .get(&(n, sigma.rank(), a))
                .copied()
                .ok_or_else(|| Error::Validation(format!("action of {sigma} on operation {a} of arity {n} is undetermined")))
        },
        compose,
    )
}

/// Closes generator entries `σ·a = b` under `τ·(σ·a) = (τσ)·a`.
fn action_closure(
    carriers: &[Vec<String>],
    acts: &[(usize, Permutation, usize, usize)],
) -> Result<HashMap<(usize, usize, usize), usize>> {
    let mut table = HashMap::new();
    for (n, ops) in carriers.iter().enumerate() {
        let id = Permutation::identity(n).rank();
        for a in 0..ops.len() {
            table.insert((n, id, a), a);
        }
    }
    let insert = |table: &mut HashMap<(usize, usize, usize), usize>, key, b: usize| -> Result<bool> {
        match table.get(&key) {
            Some(&c) if c != b => Err(Error::Validation(format!(
                "inconsistent action: arity {} permutation rank {} sends {} to both {c} and {b}",
                key.0, key.1, key.2
            ))),
            Some(_) => Ok(false),
            None => {
                table.insert(key, b);
                Ok(true)
            }
        }
    };
    let mut frontier: Vec<(usize, Permutation, usize, usize)> = carriers
        .iter()
        .enumerate()
        .flat_map(|(n, ops)| (0..ops.len()).map(move |a| (n, Permutation::identity(n), a, a)))
        .collect();
    while let Some((n, sigma, a, b)) = frontier.pop() {
        for (m, tau, c, d) in acts {
            if *m != n || *c != b {
                continue;
            }
            let composite = tau.then_after(&sigma)?;
            if insert(&mut table, (n, composite.rank(), a), *d)? {
                frontier.push((n, composite, a, *d));
            }
        }
    }
    Ok(table)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_monoid() {
        let t = parse_theory(
            "theory Monoid  # associative with unit\n\
             op m : 2\nop e : 0\n\n\
             ax m(x1,m(x2,x3)) = m(m(x1,x2),x3)\n\
             ax m(x1,e) = x1\nax m(e,x1) = x1\n\
             prover normalform:monoid\n",
        )
        .unwrap();
        assert_eq!(t.name, "Monoid");
        assert_eq!(t.axioms.len(), 3);
        assert_eq!(t.axioms[0].context, 3);
        let again = parse_theory(&render_theory(&t)).unwrap();
        assert_eq!(again.axioms, t.axioms);
    }

    #[test]
    fn reports_positions() {
        let err = parse_theory("theory T\nop m : 2\nax m(x1 = x1\n").unwrap_err();
        let Error::Parse { line, .. } = err else { panic!("{err}") };
        assert_eq!(line, 3);

        let err = parse_theory("theory T\nop m : two\n").unwrap_err();
        assert_eq!(
            err,
            Error::Parse { line: 2, column: 7, message: "arity must be a natural number".into() }
        );

        let err = parse_theory("theory T\nop m : 2\nax m(x1) = x1\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 4, .. }), "{err}");

        let err = parse_theory("op m : 2\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 1, column: 1, .. }));

        let err = parse_theory("theory T\nprover magic\n").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 2, column: 8, .. }), "{err}");
    }

    #[test]
    fn explicit_context() {
        let t = parse_theory("theory T\nop e : 0\nax[2] e = e\n").unwrap();
        assert_eq!(t.axioms[0].context, 2);
        assert!(render_theory(&t).contains("ax[2] e = e"));
    }
    const TERMINAL_TWO: &str = "
        operad T2 maxarity 2
        carrier 0: c0
        carrier 1: c1
        carrier 2: c2
        unit c1
        act [2,1] c2 -> c2
        comp c0 [] -> c0
        comp c1 [c0] -> c0
        comp c1 [c1] -> c1
        comp c1 [c2] -> c2
        comp c2 [c0,c0] -> c0
        comp c2 [c0,c1] -> c1
        comp c2 [c1,c0] -> c1
        comp c2 [c1,c1] -> c2
        comp c2 [c0,c2] -> c2
        comp c2 [c2,c0] -> c2
    ";

    #[test]
    fn tabulated_operad_satisfies_laws() {
        let o = parse_operad(TERMINAL_TWO).unwrap();
        assert_eq!(o.sizes(), vec![1, 1, 1]);
        let r = crate::operads::check_operad_laws(&o);
        assert!(r.passed(), "{:?} {:?}", r.violations, r.errors);
    }

    #[test]
    fn builtin_operads() {
        assert_eq!(parse_operad("operad sym maxarity 3").unwrap().sizes(), vec![1, 1, 2, 6]);
        assert_eq!(parse_operad("operad terminal maxarity 2").unwrap().sizes(), vec![1, 1, 1]);
        let free = parse_operad("operad free maxarity 3\nop m : 2").unwrap();
        assert_eq!(free.sizes(), vec![0, 1, 2, 12]);
    }

    #[test]
    fn operad_errors() {
        let err = parse_operad("operad X maxarity 2\ncarrier 1: id\nunit idd").unwrap_err();
        assert!(matches!(err, Error::Parse { line: 3, column: 6, .. }), "{err:?}");
        let err = parse_operad(
            "operad X maxarity 2\ncarrier 1: id\ncarrier 2: a b\nunit id\nact [2,1] a -> b\nact [2,1] b -> b",
        )
        .unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
        let err = parse_operad("operad X maxarity 2\ncarrier 1: id\ncarrier 2: a\nunit id").unwrap_err();
        assert!(err.to_string().contains("undetermined"), "{err}");
    }

    #[test]
    fn undeclared_symbol_is_a_validation_error() {
        let err = parse_theory("theory T\nop m : 2\nax m(x1,k(x2)) = x1").unwrap_err();
        assert!(matches!(err, Error::Validation(_)), "{err:?}");
    }
}
