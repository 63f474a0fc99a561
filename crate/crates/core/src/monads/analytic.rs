//! `Σ Xⁿ ⊗_{S_n} O_n` and its polynomial counterpart `Σ Xⁿ × O_n`,
//! truncated at arity `N`.

use std::sync::Arc;

use serde::Serialize;

use super::{QuotientSet, SymmetricSequence};
use crate::error::{Error, Result};
use crate::finset::Permutation;
use crate::operads::{Op, SymmetricOperadData};

/// `op(x_1,…,x_n)` with letters drawn from some finite alphabet.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Word {
    pub letters: Vec<usize>,
    pub op: Op,
}

impl Word {
    pub fn arity(&self) -> usize {
        self.letters.len()
    }

    /// `⟨x⃗∘σ, a⟩`.
    pub fn permute_letters(&self, sigma: &Permutation) -> Word {
        Word {
            letters: (1..=self.arity()).map(|i| self.letters[sigma.apply(i) - 1]).collect(),
            op: self.op,
        }
    }
}

/// Words whose letter weights sum to at most `max_weight`, ordered by
/// arity, then operation, then letters.
pub(crate) fn weighted_words<S: SymmetricSequence + ?Sized>(
    operad: &S,
    weights: &[usize],
    max_weight: usize,
    max_arity: usize,
) -> Vec<Word> {
    doubly_weighted_words(operad, weights, weights, max_weight, max_arity)
}

/// Words whose letters respect both weightings, each summing to at most
/// `max_weight`.
pub(crate) fn doubly_weighted_words<S: SymmetricSequence + ?Sized>(
    operad: &S,
    first: &[usize],
    second: &[usize],
    max_weight: usize,
    max_arity: usize,
) -> Vec<Word> {
    let mut out = Vec::new();
    let mut letters = Vec::new();
    for n in 0..=max_arity.min(operad.max_arity()) {
        let mut tuples = Vec::new();
        collect_tuples(first, second, n, (max_weight, max_weight), &mut letters, &mut tuples);
        for op in (0..operad.size(n)).map(|i| Op::new(n, i)) {
            for t in &tuples {
                out.push(Word { letters: t.clone(), op });
            }
        }
    }
    out
}

fn collect_tuples(
    first: &[usize],
    second: &[usize],
    n: usize,
    budget: (usize, usize),
    prefix: &mut Vec<usize>,
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() == n {
        out.push(prefix.clone());
        return;
    }
    for (x, (&w, &v)) in first.iter().zip(second).enumerate() {
        if w <= budget.0 && v <= budget.1 {
            prefix.push(x);
            collect_tuples(first, second, n, (budget.0 - w, budget.1 - v), prefix, out);
            prefix.pop();
        }
    }
}

/// Applies `⟨x⃗∘σ, a⟩ ∼ ⟨x⃗, σ·a⟩` for generating permutations `σ`.
pub(crate) fn tensor_quotient<S: SymmetricSequence + ?Sized>(
    operad: &S,
    words: Vec<Word>,
) -> Result<QuotientSet<Word>> {
    let mut q = QuotientSet::new(words);
    let gens_by_arity: Vec<Vec<Permutation>> =
        (0..=operad.max_arity()).map(Permutation::generators).collect();
    for i in 0..q.generators().len() {
        let w = q.generators()[i].clone();
        for sigma in &gens_by_arity[w.arity()] {
            let left = w.permute_letters(sigma);
            let right = Word {
                letters: w.letters.clone(),
                op: operad.act(sigma, w.op)?,
            };
            if !q.relate(&left, &right) {
                return Err(Error::Validation("weighted words are not closed under permutation".into()));
            }
        }
    }
    q.refresh();
    Ok(q)
}

/// `M(X)` for an operad on a set `X = {0,…,k-1}`.
#[derive(Clone, Debug)]
pub struct MonadValue {
    pub operad: Arc<SymmetricOperadData>,
    pub set_size: usize,
    pub max_arity: usize,
    pub quotient: QuotientSet<Word>,
    /// `η_X(x)` as a class.
    pub unit: Vec<usize>,
    /// False for the polynomial construction.
    pub quotiented: bool,
}

fn check_truncation(operad: &SymmetricOperadData, max_arity: usize) -> Result<()> {
    if max_arity > operad.max_arity() {
        return Err(Error::truncation(format!(
            "N = {max_arity} exceeds the operad's maximum arity {}",
            operad.max_arity()
        )));
    }
    Ok(())
}

/// Classes of `⟨x⃗, a⟩`, `x⃗ ∈ Xⁿ`, `a ∈ O_n`, `n ≤ N`, under
/// `⟨x⃗∘σ, a⟩ ∼ ⟨x⃗, σ·a⟩`.
pub fn eval_analytic(operad: &Arc<SymmetricOperadData>, set_size: usize, max_arity: usize) -> Result<MonadValue> {
    check_truncation(operad, max_arity)?;
    let words = weighted_words(&**operad, &vec![1; set_size], max_arity, max_arity);
    let quotient = tensor_quotient(&**operad, words)?;
    MonadValue::assemble(operad, set_size, max_arity, quotient, true)
}

/// `Σ Xⁿ × O_n` without the quotient.
pub fn eval_polynomial(operad: &Arc<SymmetricOperadData>, set_size: usize, max_arity: usize) -> Result<MonadValue> {
    check_truncation(operad, max_arity)?;
    let words = weighted_words(&**operad, &vec![1; set_size], max_arity, max_arity);
    MonadValue::assemble(operad, set_size, max_arity, QuotientSet::new(words), false)
}

impl MonadValue {
    fn assemble(
        operad: &Arc<SymmetricOperadData>,
        set_size: usize,
        max_arity: usize,
        quotient: QuotientSet<Word>,
        quotiented: bool,
    ) -> Result<Self> {
        let mut value = MonadValue {
            operad: Arc::clone(operad),
            set_size,
            max_arity,
            quotient,
            unit: Vec::new(),
            quotiented,
        };
        value.unit = (0..set_size)
            .map(|x| value.class_of(&Word { letters: vec![x], op: operad.unit() }))
            .collect::<Result<_>>()?;
        Ok(value)
    }

    pub fn size(&self) -> usize {
        self.quotient.class_count()
    }

    /// Number of classes of each arity `0..=N`.
    pub fn sizes_by_arity(&self) -> Vec<usize> {
        let mut out = vec![0; self.max_arity + 1];
        for c in 0..self.size() {
            out[self.quotient.representative(c).arity()] += 1;
        }
        out
    }

    pub fn class_of(&self, w: &Word) -> Result<usize> {
        if w.arity() > self.max_arity {
            return Err(Error::truncation(format!("a word of arity {} exceeds {}", w.arity(), self.max_arity)));
        }
        self.quotient
            .class_of(w)
            .ok_or_else(|| Error::OutOfRange(format!("{w:?} is not a word over a set of size {}", self.set_size)))
    }

    pub fn representative(&self, class: usize) -> &Word {
        self.quotient.representative(class)
    }

    pub fn arity_of(&self, class: usize) -> usize {
        self.representative(class).arity()
    }

    /// `μ_X` on `⟨y⃗, a⟩` whose letters are classes of `M(X)`:
    /// `⟨x⃗_1⋯x⃗_m, ⟨b_1,…,b_m⟩∗a⟩` on representatives `y_i = ⟨x⃗_i, b_i⟩`.
    pub fn multiply(&self, w: &Word) -> Result<usize> {
        let mut letters = Vec::new();
        let mut inner = Vec::with_capacity(w.arity());
        for &y in &w.letters {
            let rep = self.representative(y);
            letters.extend_from_slice(&rep.letters);
            inner.push(rep.op);
        }
        if letters.len() > self.max_arity {
            return Err(Error::truncation(format!(
                "multiplication reaches arity {} beyond {}",
                letters.len(),
                self.max_arity
            )));
        }
        let op = self.operad.compose(&inner, w.op)?;
        self.class_of(&Word { letters, op })
    }

    /// `M(h)` for `h : X → Y` given by its values, into `target = M(Y)`.
    pub fn map(&self, h: &[usize], target: &MonadValue) -> Result<Vec<usize>> {
        if h.len() != self.set_size || h.iter().any(|&y| y >= target.set_size) {
            return Err(Error::size("map does not go from X to Y"));
        }
        (0..self.size())
            .map(|c| {
                let rep = self.representative(c);
                target.class_of(&Word {
                    letters: rep.letters.iter().map(|&x| h[x]).collect(),
                    op: rep.op,
                })
            })
            .collect()
    }

    pub fn display_word(&self, w: &Word) -> String {
        let letters: Vec<String> = w.letters.iter().map(|&x| element_name(x)).collect();
        format!("{}({})", self.operad.op_name(w.op), letters.join(","))
    }

    pub fn display_class(&self, class: usize) -> String {
        format!("[{}]", self.display_word(self.representative(class)))
    }
}

/// `a, b, c, …` for elements of a finite set.
pub fn element_name(x: usize) -> String {
    if x < 26 {
        ((b'a' + x as u8) as char).to_string()
    } else {
        format!("e{x}")
    }
}
