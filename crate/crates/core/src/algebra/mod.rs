//! Finite ternary systems, finite Boolean algebras, the conversions between
//! them, and exhaustive property checkers.

mod convert;
mod properties;
mod structures;
mod theorem;

use thiserror::Error;

pub use convert::{derive_ring_ops, ensure_boolean, ternary_from_boolean, Formula, RingOps};
pub use properties::{
    check_law, check_property, format_tuple, BooleanLaw, PropertyId, PropertyReport, Subject,
    SubjectKind,
};
pub use structures::{
    boolean_from_ternary, compare_tables, derive_signature, eval_p, power_set_algebra,
    DerivedSignature, FiniteBooleanAlgebra, FiniteTernarySystem,
};
pub use theorem::{verify_theorem1, Theorem1Report};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("element {index} out of range for carrier of size {size}")]
    OutOfRange { index: usize, size: usize },
    #[error("malformed structure: {0}")]
    Malformed(String),
    #[error("not a Boolean algebra: {law} fails at {}", format_tuple(.counterexample))]
    NotBoolean {
        law: BooleanLaw,
        counterexample: Vec<usize>,
    },
    #[error("property {property} is not defined on a {subject}")]
    KindMismatch {
        property: PropertyId,
        subject: SubjectKind,
    },
    #[error("power-set exponent {0} outside 1..=4")]
    ExponentOutOfRange(u32),
    #[error("carrier sizes differ: {0} vs {1}")]
    SizeMismatch(usize, usize),
    #[error("unknown property `{0}`")]
    UnknownProperty(String),
    #[error("unknown formula `{0}` (expected ite, grau or whiteman)")]
    UnknownFormula(String),
}
