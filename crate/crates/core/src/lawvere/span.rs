//! The span theory of a symmetric operad: morphisms `n → m` are classes of
//! spans `n ←φ− r −f→ m` with `f` monotone and an operation on each fiber.

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use super::{HomFragment, LawvereTheory};
use crate::error::{Error, Result};
use crate::finset::{pullback, BlockStructure, FinFunction, Permutation};
use crate::operads::{Op, SymmetricOperadData};

/// `⟨φ, f, g_1,…,g_m⟩ : n → m` with `φ : r → n`, `f : r → m` monotone and
/// `g_i` of arity `|f⁻¹(i)|`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct SpanMorphism {
    pub phi: FinFunction,
    pub f: FinFunction,
    pub ops: Vec<Op>,
}

impl SpanMorphism {
    pub fn new(phi: FinFunction, f: FinFunction, ops: Vec<Op>) -> Result<Self> {
        if phi.domain() != f.domain() {
            return Err(Error::size(format!(
                "legs with domains {} and {}",
                phi.domain(),
                f.domain()
            )));
        }
        if !f.is_monotone() {
            return Err(Error::Validation(format!("right leg {f} is not monotone")));
        }
        let fibers = f.fiber_sizes();
        if ops.len() != fibers.len() {
            return Err(Error::size(format!("{} operations for {} fibers", ops.len(), fibers.len())));
        }
        if let Some((i, (g, r))) = ops.iter().zip(&fibers).enumerate().find(|(_, (g, r))| g.arity != **r) {
            return Err(Error::ArityMismatch(format!(
                "operation {} has arity {} but fiber {} has {r} points",
                i + 1,
                g.arity,
                i + 1
            )));
        }
        Ok(SpanMorphism { phi, f, ops })
    }

    pub fn source(&self) -> usize {
        self.phi.codomain()
    }

    pub fn target(&self) -> usize {
        self.f.codomain()
    }

    /// Total arity `r`.
    pub fn arity(&self) -> usize {
        self.phi.domain()
    }

    fn blocks(&self) -> BlockStructure {
        BlockStructure::new(self.f.fiber_sizes())
    }
}

impl fmt::Debug for SpanMorphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let ops: Vec<String> = self.ops.iter().map(|o| format!("{}.{}", o.arity, o.index)).collect();
        write!(f, "⟨φ={}, f={}, [{}]⟩", self.phi, self.f, ops.join("|"))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct MorphismClassification {
    pub structural: bool,
    pub analytic: bool,
}

/// Structural iff `f` is a bijection and each `g_i` is invertible in `O_1`;
/// analytic iff `φ` is a bijection.
pub fn classify_morphism(s: &SpanMorphism, operad: &SymmetricOperadData) -> MorphismClassification {
    MorphismClassification {
        structural: s.f.is_bijective() && s.ops.iter().all(|&g| operad.unary_inverse(g).is_some()),
        analytic: s.phi.is_bijective(),
    }
}

/// Equality of span classes by searching blockwise permutations with
/// `g_i = σ_i·g'_i` and `φ∘Σσ_i = φ'`.
pub fn span_equal(a: &SpanMorphism, b: &SpanMorphism, operad: &SymmetricOperadData) -> Result<bool> {
    if a.source() != b.source() || a.target() != b.target() {
        return Err(Error::size("comparing spans with different endpoints"));
    }
    if a.f != b.f {
        return Ok(false);
    }
    let blocks = a.blocks();
    for (i, (&g, &h)) in a.ops.iter().zip(&b.ops).enumerate() {
        let off = blocks.inclusion(i + 1);
        let found = Permutation::all(g.arity).into_iter().any(|sigma| {
            operad.act(&sigma, h).ok() == Some(g)
                && (1..=g.arity).all(|l| a.phi.apply(off.apply(sigma.apply(l))) == b.phi.apply(off.apply(l)))
        });
        if !found {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `P_a(O)`: spans over a truncated operad, stored in canonical form.
#[derive(Clone, Debug)]
pub struct SpanTheory {
    operad: Arc<SymmetricOperadData>,
}

impl SpanTheory {
    pub fn new(operad: Arc<SymmetricOperadData>) -> Self {
        SpanTheory { operad }
    }

    pub fn operad(&self) -> &SymmetricOperadData {
        &self.operad
    }

    pub fn operad_arc(&self) -> Arc<SymmetricOperadData> {
        Arc::clone(&self.operad)
    }

    /// The least representative: per fiber, the least `(φ∘σ, σ⁻¹·g)`.
    pub fn canonical(&self, s: &SpanMorphism) -> Result<SpanMorphism> {
        let blocks = s.blocks();
        let mut phi = Vec::with_capacity(s.arity());
        let mut ops = Vec::with_capacity(s.ops.len());
        for (i, &g) in s.ops.iter().enumerate() {
            let inc = blocks.inclusion(i + 1);
            let mut best: Option<(Vec<usize>, Op)> = None;
            for sigma in Permutation::all(g.arity) {
                let values: Vec<usize> = (1..=g.arity).map(|l| s.phi.apply(inc.apply(sigma.apply(l)))).collect();
                let op = self.operad.act(&sigma.inverse(), g)?;
                let cand = (values, op);
                if best.as_ref().is_none_or(|b| cand < *b) {
                    best = Some(cand);
                }
            }
            let (values, op) = best.expect("S_r is nonempty");
            phi.extend(values);
            ops.push(op);
        }
        SpanMorphism::new(FinFunction::new(s.source(), phi)?, s.f.clone(), ops)
    }

    pub fn span(&self, phi: FinFunction, f: FinFunction, ops: Vec<Op>) -> Result<SpanMorphism> {
        for &g in &ops {
            if g.arity > self.operad.max_arity() || g.index >= self.operad.size(g.arity) {
                return Err(Error::OutOfRange(format!("operation {}.{}", g.arity, g.index)));
            }
        }
        self.canonical(&SpanMorphism::new(phi, f, ops)?)
    }

    /// `⟨id_n, !, g⟩ : n → 1`.
    pub fn operation(&self, g: Op) -> Result<SpanMorphism> {
        self.span(FinFunction::identity(g.arity), FinFunction::constant(g.arity, 1, 1)?, vec![g])
    }

    /// Spans `n → m` of total arity exactly `r`, in canonical form.
    pub fn spans_of_arity(&self, n: usize, m: usize, r: usize) -> Result<Vec<SpanMorphism>> {
        let mut out = BTreeSet::new();
        for f in FinFunction::all_monotone(r, m) {
            let fibers = f.fiber_sizes();
            if fibers.iter().any(|&k| k > self.operad.max_arity()) {
                continue;
            }
            let op_tuples = op_tuples(&self.operad, &fibers);
            for phi in FinFunction::all(r, n) {
                for ops in &op_tuples {
                    out.insert(self.canonical(&SpanMorphism::new(phi.clone(), f.clone(), ops.clone())?)?);
                }
            }
        }
        Ok(out.into_iter().collect())
    }
}

fn op_tuples(operad: &SymmetricOperadData, arities: &[usize]) -> Vec<Vec<Op>> {
    arities.iter().fold(vec![Vec::new()], |acc, &k| {
        acc.into_iter()
            .flat_map(|prefix| {
                operad.operations(k).map(move |g| {
                    let mut v = prefix.clone();
                    v.push(g);
                    v
                })
            })
            .collect()
    })
}

impl LawvereTheory for SpanTheory {
    type Mor = SpanMorphism;

    fn name(&self) -> String {
        format!("P({})", self.operad.name())
    }

    fn source(&self, a: &SpanMorphism) -> usize {
        a.source()
    }

    fn target(&self, a: &SpanMorphism) -> usize {
        a.target()
    }

    fn identity(&self, n: usize) -> SpanMorphism {
        self.pi(&FinFunction::identity(n)).expect("identity span is well formed")
    }

    /// Pull `f` back along `φ'`, then compose operations fiberwise.
    fn compose(&self, g: &SpanMorphism, f: &SpanMorphism) -> Result<SpanMorphism> {
        if f.target() != g.source() {
            return Err(Error::size(format!(
                "composing {}→{} after {}→{}",
                g.source(),
                g.target(),
                f.source(),
                f.target()
            )));
        }
        let pb = pullback(&f.f, &g.phi)?;
        let phi = f.phi.after(&pb.q1)?;
        let right = g.f.after(&pb.q2)?;
        let mut ops = Vec::with_capacity(g.ops.len());
        for (j, &outer) in g.ops.iter().enumerate() {
            let inner: Vec<Op> = g.f.fiber(j + 1).into_iter().map(|b| f.ops[g.phi.apply(b) - 1]).collect();
            ops.push(self.operad.compose(&inner, outer)?);
        }
        self.canonical(&SpanMorphism::new(phi, right, ops)?)
    }

    /// `π_φ = ⟨φ, id_m, ι,…,ι⟩`.
    fn pi(&self, phi: &FinFunction) -> Result<SpanMorphism> {
        let m = phi.domain();
        SpanMorphism::new(phi.clone(), FinFunction::identity(m), vec![self.operad.unit(); m])
    }

    fn tuple(&self, n: usize, components: &[SpanMorphism]) -> Result<SpanMorphism> {
        let mut phi = Vec::new();
        let mut sizes = Vec::new();
        let mut ops = Vec::new();
        for c in components {
            if c.source() != n || c.target() != 1 {
                return Err(Error::size(format!("tuple component {}→{}", c.source(), c.target())));
            }
            phi.extend_from_slice(c.phi.values());
            sizes.push(c.arity());
            ops.push(c.ops[0]);
        }
        self.canonical(&SpanMorphism::new(
            FinFunction::new(n, phi)?,
            FinFunction::monotone_from_fiber_sizes(&sizes),
            ops,
        )?)
    }

    /// Spans of total arity at most `bound`.
    fn hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<SpanMorphism>> {
        let mut morphisms = Vec::new();
        for r in 0..=bound {
            morphisms.extend(self.spans_of_arity(n, m, r)?);
        }
        Ok(HomFragment {
            source: n,
            target: m,
            bound,
            morphisms,
            authoritative: self.operad.is_authoritative(),
        })
    }

    fn analytic_hom(&self, n: usize, m: usize, _bound: usize) -> Result<HomFragment<SpanMorphism>> {
        let morphisms = self
            .spans_of_arity(n, m, n)?
            .into_iter()
            .filter(|s| s.phi.is_bijective())
            .collect();
        Ok(HomFragment {
            source: n,
            target: m,
            bound: n,
            morphisms,
            authoritative: self.operad.is_authoritative(),
        })
    }

    fn is_analytic(&self, a: &SpanMorphism) -> Result<bool> {
        Ok(a.phi.is_bijective())
    }

    fn display(&self, a: &SpanMorphism) -> String {
        let ops: Vec<&str> = a.ops.iter().map(|&g| self.operad.op_name(g)).collect();
        format!("⟨φ={}, f={}, [{}]⟩ : {}→{}", a.phi, a.f, ops.join("|"), a.source(), a.target())
    }
}

/// Structural-analytic factorization `s = ⟨id_r, f, g⟩ ∘ π_φ`.
pub fn factorize(theory: &SpanTheory, s: &SpanMorphism) -> Result<(SpanMorphism, SpanMorphism)> {
    let structural = theory.pi(&s.phi)?;
    let analytic = theory.canonical(&SpanMorphism::new(
        FinFunction::identity(s.arity()),
        s.f.clone(),
        s.ops.clone(),
    )?)?;
    Ok((structural, analytic))
}

/// Every factorization of `s` as analytic after structural through an
/// object `p ≤ max_middle`, found by search.
pub fn all_factorizations(
    theory: &SpanTheory,
    s: &SpanMorphism,
    max_middle: usize,
) -> Result<Vec<(SpanMorphism, SpanMorphism)>> {
    let operad = theory.operad();
    let mut out = Vec::new();
    for p in 0..=max_middle {
        let lefts: Vec<SpanMorphism> = theory
            .spans_of_arity(s.source(), p, p)?
            .into_iter()
            .filter(|l| classify_morphism(l, operad).structural)
            .collect();
        let rights: Vec<SpanMorphism> = theory
            .spans_of_arity(p, s.target(), s.arity())?
            .into_iter()
            .filter(|r| r.phi.is_bijective())
            .collect();
        for l in &lefts {
            for r in &rights {
                if theory.compose(r, l)? == *s {
                    out.push((l.clone(), r.clone()));
                }
            }
        }
    }
    Ok(out)
}

/// A square `right ∘ top = bottom ∘ left`.
#[derive(Clone, Debug, Serialize)]
pub struct Square {
    pub left: SpanMorphism,
    pub right: SpanMorphism,
    pub top: SpanMorphism,
    pub bottom: SpanMorphism,
}

/// The unique `d` with `d ∘ left = top` and `right ∘ d = bottom`, found by
/// exhausting every span of the only possible total arity.
pub fn diagonal_filler(theory: &SpanTheory, square: &Square) -> Result<SpanMorphism> {
    let Square { left, right, top, bottom } = square;
    let operad = theory.operad();
    if !classify_morphism(left, operad).structural {
        return Err(Error::NotOrthogonal("left leg is not structural".into()));
    }
    if !classify_morphism(right, operad).analytic {
        return Err(Error::NotOrthogonal("right leg is not analytic".into()));
    }
    if theory.compose(right, top)? != theory.compose(bottom, left)? {
        return Err(Error::NotOrthogonal("the square does not commute".into()));
    }
    // A structural left leg has a bijective right leg, so d ∘ left keeps the
    // total arity of d.
    let mut fillers = Vec::new();
    for d in theory.spans_of_arity(left.target(), right.source(), top.arity())? {
        if theory.compose(&d, left)? == *top && theory.compose(right, &d)? == *bottom {
            fillers.push(d);
        }
    }
    match fillers.len() {
        1 => Ok(fillers.pop().expect("one filler")),
        0 => Err(Error::NotOrthogonal("no diagonal filler".into())),
        k => Err(Error::NotOrthogonal(format!(
            "{k} diagonal fillers, e.g. {} and {}",
            theory.display(&fillers[0]),
            theory.display(&fillers[1])
        ))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::operads::{make_sym, terminal_operad};

    fn ff(m: usize, v: &[usize]) -> FinFunction {
        FinFunction::new(m, v.to_vec()).unwrap()
    }

    fn sym_theory() -> SpanTheory {
        SpanTheory::new(Arc::new(make_sym(3)))
    }

    #[test]
    fn span_equal_examples() {
        let th = sym_theory();
        let o = th.operad();
        let swap = o.find("[2,1]").unwrap();
        let id = o.find("[1,2]").unwrap();
        let a = SpanMorphism::new(FinFunction::identity(2), ff(1, &[1, 1]), vec![swap]).unwrap();
        let b = SpanMorphism::new(ff(2, &[2, 1]), ff(1, &[1, 1]), vec![id]).unwrap();
        assert!(span_equal(&a, &a, o).unwrap());
        assert!(span_equal(&a, &b, o).unwrap());
        assert_eq!(th.canonical(&a).unwrap(), th.canonical(&b).unwrap());
        let c = SpanMorphism::new(FinFunction::identity(2), FinFunction::identity(2), vec![o.unit(); 2]).unwrap();
        let d = SpanMorphism::new(ff(2, &[1, 2]), ff(2, &[1, 1]), vec![id, Op::new(0, 0)]).unwrap();
        assert!(!span_equal(&c, &d, o).unwrap());
    }

    #[test]
    fn classification_examples() {
        let th = sym_theory();
        let o = th.operad();
        let id = th.identity(2);
        assert_eq!(classify_morphism(&id, o), MorphismClassification { structural: true, analytic: true });
        let diag = th.pi(&ff(1, &[1, 1])).unwrap();
        assert_eq!(classify_morphism(&diag, o), MorphismClassification { structural: true, analytic: false });
        let swap = th.operation(o.find("[2,1]").unwrap()).unwrap();
        assert_eq!(classify_morphism(&swap, o), MorphismClassification { structural: false, analytic: true });
    }

    #[test]
    fn composition_matches_star() {
        let th = sym_theory();
        let o = th.operad();
        let id1 = th.operation(o.unit()).unwrap();
        let id2 = th.operation(o.find("[1,2]").unwrap()).unwrap();
        let swap = th.operation(o.find("[2,1]").unwrap()).unwrap();
        let inner = th.product(&[id1, id2]).unwrap();
        let composite = th.compose(&swap, &inner).unwrap();
        assert_eq!(composite, th.operation(o.find("[2,3,1]").unwrap()).unwrap());
    }

    #[test]
    fn pi_is_contravariant() {
        let th = SpanTheory::new(Arc::new(terminal_operad(3)));
        for a in 0..=2 {
            for b in 0..=2 {
                for c in 0..=2 {
                    for phi in FinFunction::all(a, b) {
                        for psi in FinFunction::all(b, c) {
                            let lhs = th.compose(&th.pi(&phi).unwrap(), &th.pi(&psi).unwrap()).unwrap();
                            let rhs = th.pi(&psi.after(&phi).unwrap()).unwrap();
                            assert_eq!(lhs, th.canonical(&rhs).unwrap());
                        }
                    }
                }
            }
        }
    }
}
