use super::properties::{check_property, PropertyId, PropertyReport, Subject};
use super::structures::{boolean_from_ternary, FiniteTernarySystem};

/// Verdicts for the hypotheses and the three equivalent conditions of the
/// characterization theorem, evaluated on one finite system.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Theorem1Report {
    /// C1, C2, C3, C4 in order.
    pub c_axioms: [PropertyReport; 4],
    pub meet_commutative: PropertyReport,
    /// Condition (i): the derived structure is a Boolean algebra.
    pub cond_i: PropertyReport,
    /// Condition (ii): `p(a,b,c) = (b' ∧ a) ∨ (b ∧ c)`.
    pub cond_ii: PropertyReport,
    /// Condition (iii): `p(a,a,b) = p(0,a,b)`.
    pub cond_iii: PropertyReport,
    /// False only when every hypothesis holds yet (i), (ii), (iii) disagree.
    pub equivalence_respected: bool,
}

impl Theorem1Report {
    pub fn hypotheses_hold(&self) -> bool {
        self.c_axioms.iter().all(|r| r.holds) && self.meet_commutative.holds
    }

    pub fn conditions(&self) -> [&PropertyReport; 3] {
        [&self.cond_i, &self.cond_ii, &self.cond_iii]
    }

    /// Every verdict in the report, in display order.
    pub fn lines(&self) -> Vec<String> {
        let mut out: Vec<String> = self.c_axioms.iter().map(|r| r.to_string()).collect();
        out.push(self.meet_commutative.to_string());
        for (label, r) in ["cond_i", "cond_ii", "cond_iii"]
            .iter()
            .zip(self.conditions())
        {
            out.push(format!(
                "{} {label} [{}]",
                if r.holds { "PASS" } else { "FAIL" },
                r
            ));
        }
        out.push(format!(
            "{} equivalence",
            if self.equivalence_respected {
                "PASS"
            } else {
                "FAIL"
            }
        ));
        out
    }
}

pub fn verify_theorem1(sys: &FiniteTernarySystem) -> Theorem1Report {
    let check = |p| check_property(Subject::Ternary(sys), p, None).expect("ternary-side property");
    let c_axioms = PropertyId::C_AXIOMS.map(check);
    let meet_commutative = check(PropertyId::CommMeet);
    let derived = boolean_from_ternary(sys);
    let cond_i = check_property(Subject::Boolean(&derived), PropertyId::BA, None)
        .expect("Boolean-side property");
    let cond_ii = check(PropertyId::CondII);
    let cond_iii = check(PropertyId::CondIII);

    let hypotheses = c_axioms.iter().all(|r| r.holds) && meet_commutative.holds;
    let all_equal = cond_i.holds == cond_ii.holds && cond_ii.holds == cond_iii.holds;
    Theorem1Report {
        c_axioms,
        meet_commutative,
        cond_i,
        cond_ii,
        cond_iii,
        equivalence_respected: !hypotheses || all_equal,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power_set_algebra, ternary_from_boolean, Formula};

    #[test]
    fn ite_fixtures_satisfy_everything() {
        for k in [1, 4] {
            let sys = ternary_from_boolean(&power_set_algebra(k).unwrap(), Formula::Ite).unwrap();
            let report = verify_theorem1(&sys);
            assert!(report.hypotheses_hold(), "k={k}");
            assert!(report.conditions().iter().all(|r| r.holds), "k={k}");
            assert!(report.equivalence_respected);
        }
    }

    #[test]
    fn grau_system_fails_c4() {
        let sys = ternary_from_boolean(&power_set_algebra(1).unwrap(), Formula::Grau).unwrap();
        let report = verify_theorem1(&sys);
        let c4 = &report.c_axioms[3];
        assert!(!c4.holds);
        // (a,b) = (0,1): p(1,1,0) is the median 1, not a = 0
        assert_eq!(c4.counterexample, Some(vec![0, 1]));
        assert!(!report.hypotheses_hold());
        assert!(report.equivalence_respected);
    }
}
