use std::fmt;
use std::str::FromStr;

use super::properties::{check_property, PropertyId, Subject};
use super::structures::{FiniteBooleanAlgebra, FiniteTernarySystem};
use super::AlgebraError;

/// Ternary operations definable in a Boolean algebra.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Formula {
    /// If-then-else with the middle argument as selector: `(b' ∧ a) ∨ (b ∧ c)`.
    Ite,
    /// Majority: `(a ∧ b) ∨ (b ∧ c) ∨ (c ∧ a)`.
    Grau,
    /// Ternary rejection: `(a' ∧ b') ∨ (b' ∧ c') ∨ (c' ∧ a')`.
    Whiteman,
}

impl Formula {
    pub const ALL: [Formula; 3] = [Formula::Ite, Formula::Grau, Formula::Whiteman];

    pub fn name(self) -> &'static str {
        match self {
            Formula::Ite => "ite",
            Formula::Grau => "grau",
            Formula::Whiteman => "whiteman",
        }
    }

    /// Evaluates the formula pointwise in `ba`.
    pub fn eval(self, ba: &FiniteBooleanAlgebra, a: usize, b: usize, c: usize) -> usize {
        let m = |x, y| ba.meet(x, y);
        let j = |x, y| ba.join(x, y);
        let n = |x| ba.neg(x);
        match self {
            Formula::Ite => j(m(n(b), a), m(b, c)),
            Formula::Grau => j(j(m(a, b), m(b, c)), m(c, a)),
            Formula::Whiteman => j(j(m(n(a), n(b)), m(n(b), n(c))), m(n(c), n(a))),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Formula {
    type Err = AlgebraError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Formula::ALL
            .into_iter()
            .find(|f| f.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| AlgebraError::UnknownFormula(s.to_string()))
    }
}

/// Fails with [`AlgebraError::NotBoolean`] naming the first broken law.
pub fn ensure_boolean(ba: &FiniteBooleanAlgebra) -> Result<(), AlgebraError> {
    let report = check_property(Subject::Boolean(ba), PropertyId::BA, None)?;
    match (report.failed_law, report.counterexample) {
        (Some(law), Some(counterexample)) => Err(AlgebraError::NotBoolean {
            law,
            counterexample,
        }),
        _ => Ok(()),
    }
}

/// Tabulates `formula` over a validated Boolean algebra, with
/// `zero = bottom` and `one = top`.
pub fn ternary_from_boolean(
    ba: &FiniteBooleanAlgebra,
    formula: Formula,
) -> Result<FiniteTernarySystem, AlgebraError> {
    ensure_boolean(ba)?;
    FiniteTernarySystem::from_fn(ba.size(), ba.bottom(), ba.top(), |a, b, c| {
        formula.eval(ba, a, b, c)
    })
}

/// Boolean-ring operations of a Boolean algebra.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RingOps {
    size: usize,
    /// `a + b = (b' ∧ a) ∨ (b ∧ a')`, row-major.
    pub add: Vec<usize>,
    /// `ab = a ∧ b`, row-major.
    pub mul: Vec<usize>,
}

impl RingOps {
    pub fn add(&self, a: usize, b: usize) -> usize {
        self.add[a * self.size + b]
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mul[a * self.size + b]
    }
}

pub(crate) fn ring_tables(ba: &FiniteBooleanAlgebra) -> (Vec<usize>, Vec<usize>) {
    let n = ba.size();
    let mut add = Vec::with_capacity(n * n);
    let mut mul = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            add.push(ba.join(ba.meet(ba.neg(b), a), ba.meet(b, ba.neg(a))));
            mul.push(ba.meet(a, b));
        }
    }
    (add, mul)
}

pub fn derive_ring_ops(ba: &FiniteBooleanAlgebra) -> Result<RingOps, AlgebraError> {
    ensure_boolean(ba)?;
    let (add, mul) = ring_tables(ba);
    Ok(RingOps {
        size: ba.size(),
        add,
        mul,
    })
}
