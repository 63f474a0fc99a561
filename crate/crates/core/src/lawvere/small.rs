//! The initial Lawvere theory `F^op` and the terminal theory `𝟙`.

use super::{HomFragment, LawvereTheory};
use crate::error::{Error, Result};
use crate::finset::FinFunction;

/// Morphisms `n → m` are functions `(m] → (n]`.
#[derive(Clone, Copy, Debug, Default)]
pub struct InitialTheory;

impl LawvereTheory for InitialTheory {
    type Mor = FinFunction;

    fn name(&self) -> String {
        "F^op".into()
    }

    fn source(&self, a: &FinFunction) -> usize {
        a.codomain()
    }

    fn target(&self, a: &FinFunction) -> usize {
        a.domain()
    }

    fn identity(&self, n: usize) -> FinFunction {
        FinFunction::identity(n)
    }

    fn compose(&self, g: &FinFunction, f: &FinFunction) -> Result<FinFunction> {
        f.after(g)
    }

    fn pi(&self, phi: &FinFunction) -> Result<FinFunction> {
        Ok(phi.clone())
    }

    fn tuple(&self, n: usize, components: &[FinFunction]) -> Result<FinFunction> {
        let mut values = Vec::with_capacity(components.len());
        for c in components {
            if c.codomain() != n || c.domain() != 1 {
                return Err(Error::size("tuple component is not a morphism n → 1"));
            }
            values.push(c.apply(1));
        }
        FinFunction::new(n, values)
    }

    fn hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<FinFunction>> {
        Ok(HomFragment {
            source: n,
            target: m,
            bound,
            morphisms: FinFunction::all(m, n).collect(),
            authoritative: true,
        })
    }

    fn is_analytic(&self, a: &FinFunction) -> Result<bool> {
        Ok(a.is_bijective())
    }

    fn display(&self, a: &FinFunction) -> String {
        format!("π_{a} : {}→{}", a.codomain(), a.domain())
    }
}

/// One morphism between any two objects.
#[derive(Clone, Copy, Debug, Default)]
pub struct TerminalTheory;

impl LawvereTheory for TerminalTheory {
    type Mor = (usize, usize);

    fn name(&self) -> String {
        "𝟙".into()
    }

    fn source(&self, a: &(usize, usize)) -> usize {
        a.0
    }

    fn target(&self, a: &(usize, usize)) -> usize {
        a.1
    }

    fn identity(&self, n: usize) -> (usize, usize) {
        (n, n)
    }

    fn compose(&self, g: &(usize, usize), f: &(usize, usize)) -> Result<(usize, usize)> {
        if f.1 != g.0 {
            return Err(Error::size("endpoints do not match"));
        }
        Ok((f.0, g.1))
    }

    fn pi(&self, phi: &FinFunction) -> Result<(usize, usize)> {
        Ok((phi.codomain(), phi.domain()))
    }

    fn tuple(&self, n: usize, components: &[(usize, usize)]) -> Result<(usize, usize)> {
        if components.iter().any(|&c| c != (n, 1)) {
            return Err(Error::size("tuple component is not a morphism n → 1"));
        }
        Ok((n, components.len()))
    }

    fn hom(&self, n: usize, m: usize, bound: usize) -> Result<HomFragment<(usize, usize)>> {
        Ok(HomFragment {
            source: n,
            target: m,
            bound,
            morphisms: vec![(n, m)],
            authoritative: true,
        })
    }

    /// Every morphism is invertible, hence analytic.
    fn is_analytic(&self, _a: &(usize, usize)) -> Result<bool> {
        Ok(true)
    }

    fn display(&self, a: &(usize, usize)) -> String {
        format!("! : {}→{}", a.0, a.1)
    }
}
