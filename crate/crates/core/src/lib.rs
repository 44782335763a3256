//! Finite ternary Boolean algebras.
//!
//! * [`algebra`]: explicit finite ternary systems and Boolean algebras, the
//!   derived negation/meet/join, conversions through the if-then-else,
//!   majority and rejection formulas, and exhaustive property checkers.
//! * [`search`]: enumeration of every ternary table on a small carrier that
//!   satisfies a chosen set of axioms.
//! * [`proof`]: a first-order term language with a one-step rewrite checker
//!   that replays equational proof scripts.

pub mod algebra;
pub mod proof;
pub mod search;
