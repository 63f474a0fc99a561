//! Theory presentations shipped with the crate.

use super::TheoryPresentation;
use crate::dsl::parse_theory;

const MONOID: &str = include_str!("../../fixtures/monoid.theory");
const COMMUTATIVE_MONOID: &str = include_str!("../../fixtures/commutative-monoid.theory");
const ANTI_INVOLUTION_MONOID: &str = include_str!("../../fixtures/anti-involution-monoid.theory");
const SUP_LATTICE: &str = include_str!("../../fixtures/sup-lattice.theory");
const EMPTY: &str = include_str!("../../fixtures/empty.theory");
const TERMINAL: &str = include_str!("../../fixtures/terminal.theory");

/// Names accepted by [`builtin_theory`], with their sources.
pub const BUILTIN_THEORIES: &[(&str, &str)] = &[
    ("monoid", MONOID),
    ("commutative-monoid", COMMUTATIVE_MONOID),
    ("anti-involution-monoid", ANTI_INVOLUTION_MONOID),
    ("sup-lattice", SUP_LATTICE),
    ("empty", EMPTY),
    ("terminal", TERMINAL),
];

pub fn builtin_theory(name: &str) -> Option<TheoryPresentation> {
    BUILTIN_THEORIES
        .iter()
        .find(|(n, _)| *n == name)
        .map(|(_, src)| parse_theory(src).expect("shipped fixture parses"))
}

pub fn monoid() -> TheoryPresentation {
    parse_theory(MONOID).expect("shipped fixture parses")
}

pub fn commutative_monoid() -> TheoryPresentation {
    parse_theory(COMMUTATIVE_MONOID).expect("shipped fixture parses")
}

pub fn anti_involution_monoid() -> TheoryPresentation {
    parse_theory(ANTI_INVOLUTION_MONOID).expect("shipped fixture parses")
}

pub fn sup_lattice() -> TheoryPresentation {
    parse_theory(SUP_LATTICE).expect("shipped fixture parses")
}

pub fn empty_theory() -> TheoryPresentation {
    parse_theory(EMPTY).expect("shipped fixture parses")
}

pub fn terminal_theory() -> TheoryPresentation {
    parse_theory(TERMINAL).expect("shipped fixture parses")
}
