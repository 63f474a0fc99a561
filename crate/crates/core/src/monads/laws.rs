//! Unit, well-definedness and associativity of `μ` on every instance whose
//! composites stay within the truncation.

use serde::Serialize;

use super::analytic::{doubly_weighted_words, tensor_quotient, MonadValue, Word};
use super::QuotientSet;
use crate::error::{Error, Result};

const MAX_VIOLATIONS: usize = 64;

#[derive(Clone, Debug, Default, Serialize)]
pub struct MonadLawReport {
    pub operad: String,
    pub set_size: usize,
    pub max_arity: usize,
    pub size: usize,
    pub left_unit: usize,
    pub right_unit: usize,
    /// Instances of `μ` compared across representatives.
    pub well_defined: usize,
    pub associativity: usize,
    pub violation_count: usize,
    pub violations: Vec<String>,
}

impl MonadLawReport {
    pub fn passed(&self) -> bool {
        self.violation_count == 0
    }

    fn violate(&mut self, law: &str, witness: String) {
        self.violation_count += 1;
        if self.violations.len() < MAX_VIOLATIONS {
            self.violations.push(format!("{law}: {witness}"));
        }
    }
}

/// The quotient one level up: words over the classes of the level below
/// whose letter weights and leaf counts both sum to at most `N`.
fn next_level(m: &MonadValue, weights: &[usize], leaves: &[usize]) -> Result<QuotientSet<Word>> {
    let words = doubly_weighted_words(&*m.operad, weights, leaves, m.max_arity, m.max_arity);
    Ok(if m.quotiented {
        tensor_quotient(&*m.operad, words)?
    } else {
        QuotientSet::new(words)
    })
}

pub fn check_monad_laws(m: &MonadValue) -> Result<MonadLawReport> {
    let mut report = MonadLawReport {
        operad: m.operad.name().to_string(),
        set_size: m.set_size,
        max_arity: m.max_arity,
        size: m.size(),
        ..Default::default()
    };
    let unit_op = m.operad.unit();

    for t in 0..m.size() {
        report.left_unit += 1;
        let got = m.multiply(&Word { letters: vec![t], op: unit_op })?;
        if got != t {
            report.violate("left unit", format!("μ(η({})) = {}", m.display_class(t), m.display_class(got)));
        }
        report.right_unit += 1;
        let rep = m.representative(t);
        let lifted = Word {
            letters: rep.letters.iter().map(|&x| m.unit[x]).collect(),
            op: rep.op,
        };
        let got = m.multiply(&lifted)?;
        if got != t {
            report.violate("right unit", format!("μ(M(η)({})) = {}", m.display_class(t), m.display_class(got)));
        }
    }

    let weights: Vec<usize> = (0..m.size()).map(|c| m.arity_of(c)).collect();
    let level2 = next_level(m, &weights, &weights)?;
    for (i, w) in level2.generators().iter().enumerate() {
        let rep = level2.representative(level2.class_of_position(i));
        report.well_defined += 1;
        let (a, b) = (m.multiply(w)?, m.multiply(rep)?);
        if a != b {
            report.violate("μ well defined", format!("{w:?} ↦ {a} but {rep:?} ↦ {b}"));
        }
    }
    for c in 0..level2.class_count() {
        let w = level2.representative(c);
        let expected = m.multiply(w)?;
        for (pos, &y) in w.letters.iter().enumerate() {
            for member in m.quotient.members(y) {
                report.well_defined += 1;
                let got = multiply_with(m, w, pos, member)?;
                if got != expected {
                    report.violate(
                        "μ well defined",
                        format!("letter {} of {w:?} as {}", pos + 1, m.display_word(member)),
                    );
                }
            }
        }
    }

    let leaf_weights: Vec<usize> = (0..level2.class_count())
        .map(|c| level2.representative(c).letters.iter().map(|&y| weights[y]).sum())
        .collect();
    // Letters are weighted by arity so that the flattened word stays within
    // the truncation.
    let arities: Vec<usize> = (0..level2.class_count()).map(|c| level2.representative(c).arity()).collect();
    let level3 = next_level(m, &arities, &leaf_weights)?;
    for c in 0..level3.class_count() {
        let w = level3.representative(c);
        let zs: Vec<&Word> = w.letters.iter().map(|&z| level2.representative(z)).collect();
        let mut letters = Vec::new();
        let mut inner = Vec::with_capacity(zs.len());
        for z in &zs {
            letters.extend_from_slice(&z.letters);
            inner.push(z.op);
        }
        report.associativity += 1;
        let flattened = Word { letters, op: m.operad.compose(&inner, w.op)? };
        let a = m.multiply(&flattened)?;
        let pushed = Word {
            letters: zs.iter().map(|z| m.multiply(z)).collect::<Result<_>>()?,
            op: w.op,
        };
        let b = m.multiply(&pushed)?;
        if a != b {
            report.violate(
                "associativity",
                format!("{w:?}: μ∘μ_M gives {} but μ∘M(μ) gives {}", m.display_class(a), m.display_class(b)),
            );
        }
    }
    Ok(report)
}

/// `μ` computed with `member` in place of the representative of letter `pos`.
fn multiply_with(m: &MonadValue, w: &Word, pos: usize, member: &Word) -> Result<usize> {
    let mut letters = Vec::new();
    let mut inner = Vec::new();
    for (i, &y) in w.letters.iter().enumerate() {
        let rep = if i == pos { member } else { m.representative(y) };
        letters.extend_from_slice(&rep.letters);
        inner.push(rep.op);
    }
    if letters.len() > m.max_arity {
        return Err(Error::truncation("multiplication beyond the truncation"));
    }
    m.class_of(&Word { letters, op: m.operad.compose(&inner, w.op)? })
}
