//! Evaluation of terms in finite ternary systems.

use std::collections::BTreeMap;

use crate::algebra::FiniteTernarySystem;

use super::rules::Equation;
use super::term::{Op, Term};

pub type Assignment = BTreeMap<String, usize>;

/// Value of `term` in `sys`, reading `bar`, `meet` and `join` through their
/// definitions in terms of `p`. `None` if a variable is unassigned or an
/// assigned value is out of range.
pub fn evaluate(term: &Term, sys: &FiniteTernarySystem, assignment: &Assignment) -> Option<usize> {
    let n = sys.size();
    match term {
        Term::Var(v) => assignment.get(v).copied().filter(|&x| x < n),
        Term::Zero => Some(sys.zero()),
        Term::One => Some(sys.one()),
        Term::App(op, args) => {
            let vals = args
                .iter()
                .map(|t| evaluate(t, sys, assignment))
                .collect::<Option<Vec<_>>>()?;
            let (z, o) = (sys.zero(), sys.one());
            Some(match op {
                Op::P => sys.p(vals[0], vals[1], vals[2]),
                Op::Bar => sys.p(o, vals[0], z),
                Op::Meet => sys.p(z, vals[0], vals[1]),
                Op::Join => sys.p(vals[0], vals[1], o),
            })
        }
    }
}

/// The first assignment, in lexicographic order over the alphabetically
/// sorted variables, under which the two sides differ.
pub fn equation_counterexample(eq: &Equation, sys: &FiniteTernarySystem) -> Option<Assignment> {
    let mut vars: Vec<&str> = eq.lhs.variables().into_iter().collect();
    vars.extend(eq.rhs.variables());
    vars.sort_unstable();
    vars.dedup();

    let n = sys.size();
    let mut digits = vec![0usize; vars.len()];
    loop {
        let assignment: Assignment = vars
            .iter()
            .map(|v| v.to_string())
            .zip(digits.iter().copied())
            .collect();
        if evaluate(&eq.lhs, sys, &assignment) != evaluate(&eq.rhs, sys, &assignment) {
            return Some(assignment);
        }
        let mut i = digits.len();
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            digits[i] += 1;
            if digits[i] < n {
                break;
            }
            digits[i] = 0;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power_set_algebra, ternary_from_boolean, Formula};
    use crate::proof::parse_term;

    fn ite(k: u32) -> FiniteTernarySystem {
        ternary_from_boolean(&power_set_algebra(k).unwrap(), Formula::Ite).unwrap()
    }

    #[test]
    fn derived_operations_evaluate_through_p() {
        let sys = ite(1);
        let env = Assignment::from([("a".to_string(), 0)]);
        assert_eq!(
            evaluate(&parse_term("bar(a)").unwrap(), &sys, &env),
            Some(1)
        );
        assert_eq!(
            evaluate(&parse_term("join(a,1)").unwrap(), &sys, &env),
            Some(1)
        );
        assert_eq!(
            evaluate(&parse_term("meet(a,1)").unwrap(), &sys, &env),
            Some(0)
        );
        assert_eq!(evaluate(&parse_term("b").unwrap(), &sys, &env), None);
    }

    #[test]
    fn counterexamples_are_lexicographically_first() {
        let sys = ite(1);
        let swap = Equation::parse("p(a,b,c) = p(a,c,b)").unwrap();
        let cx = equation_counterexample(&swap, &sys).unwrap();
        assert_eq!(cx.values().copied().collect::<Vec<_>>(), vec![1, 0, 1]);
        assert!(
            equation_counterexample(&Equation::parse("bar(bar(a)) = a").unwrap(), &ite(2))
                .is_none()
        );
        assert!(equation_counterexample(&Equation::parse("0 = 0").unwrap(), &sys).is_none());
        assert!(equation_counterexample(&Equation::parse("0 = 1").unwrap(), &sys).is_some());
    }
}
