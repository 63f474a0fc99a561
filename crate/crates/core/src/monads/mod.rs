//! Analytic and polynomial monads of operads, the coend monad of a Lawvere
//! theory, and the monad `V` on coefficient sequences.

mod analytic;
mod coefficients;
mod coend;
mod laws;
mod quotient;
mod vmonad;

pub use analytic::{element_name, eval_analytic, eval_polynomial, MonadValue, Word};
pub use coefficients::{
    check_composition_by_evaluation, compose_coefficients, evaluate_on, star_along, AnalyticCoefficients,
    CompositeCoefficients, CompositeElement, CompositionEvaluationReport, SymmetricSequence,
};
pub use coend::{check_kappa, eval_coend, kappa, CoendGenerator, CoendValue, KappaReport};
pub use laws::{check_monad_laws, MonadLawReport};
pub use quotient::QuotientSet;
pub use vmonad::{
    alpha, check_alpha, check_phi, check_v_monad, restrict_to_bijections, v_coefficients, v_mult, v_unit,
    AlphaReport, FinFunctor, MultisetFunctor, PhiData, PhiReport, VCoefficients, VElement, VMonadReport,
};

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use super::*;
    use crate::lawvere::InitialTheory;
    use crate::operads::{make_sym, terminal_operad};

    #[test]
    fn analytic_sizes() {
        let sym = Arc::new(make_sym(3));
        let terminal = Arc::new(terminal_operad(3));
        assert_eq!(eval_analytic(&sym, 2, 3).unwrap().size(), 15);
        assert_eq!(eval_analytic(&terminal, 2, 3).unwrap().size(), 10);
        assert_eq!(eval_analytic(&terminal, 2, 3).unwrap().sizes_by_arity(), vec![1, 2, 3, 4]);
        assert_eq!(eval_polynomial(&Arc::new(make_sym(2)), 2, 2).unwrap().size(), 11);
        assert_eq!(eval_analytic(&sym, 1, 3).unwrap().size(), 4);
        assert_eq!(eval_analytic(&sym, 0, 3).unwrap().size(), 1);
    }

    #[test]
    fn monad_laws_hold() {
        for operad in [make_sym(3), terminal_operad(3)] {
            let m = eval_analytic(&Arc::new(operad), 2, 3).unwrap();
            let report = check_monad_laws(&m).unwrap();
            assert!(report.passed(), "{:?}", report.violations);
        }
    }

    #[test]
    fn coend_of_functions_is_identity() {
        for k in 0..4 {
            let c = eval_coend(&InitialTheory, k, 3, 3).unwrap();
            assert_eq!(c.size(), k);
            assert_eq!(c.unit.len(), k);
        }
    }

    #[test]
    fn kappa_is_an_isomorphism() {
        for operad in [make_sym(3), terminal_operad(3)] {
            let report = check_kappa(&Arc::new(operad), 2, 3).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
        }
    }

    #[test]
    fn composition_matches_evaluation() {
        let sym = AnalyticCoefficients::of_operad(&make_sym(3)).unwrap();
        let terminal = AnalyticCoefficients::of_operad(&terminal_operad(3)).unwrap();
        let report = check_composition_by_evaluation(&sym, &terminal, 3, 2).unwrap();
        assert!(report.passed(), "{:?}", report.sizes);
        let unit = compose_coefficients(&AnalyticCoefficients::identity(3), &sym, 3).unwrap();
        assert_eq!(unit.coefficients.sizes(), sym.sizes());
    }

    #[test]
    fn v_laws_phi_and_alpha() {
        let sym = AnalyticCoefficients::of_operad(&make_sym(2)).unwrap();
        let report = check_v_monad(&sym, 2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        let report = check_phi(&sym, 2, 2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert!(report.generators_checked > 0 && report.evaluations_checked > 0);
        let report = check_alpha(&MultisetFunctor::new(2, 2), 2).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
    }
}
