//! Proven lemmas hold in every finite model of the axioms and hypotheses
//! they were proved from.

use tba_core::algebra::{
    check_property, power_set_algebra, ternary_from_boolean, FiniteTernarySystem, Formula,
    PropertyId, PropertyId::*,
};
use tba_core::proof::{
    builtin_corpus, builtin_theory, equation_counterexample, verify_corpus, Equation, Theory,
};
use tba_core::search::{search, SearchConstraints};

fn models() -> Vec<FiniteTernarySystem> {
    let mut out = Vec::new();
    for n in [2, 3] {
        out.extend(search(&SearchConstraints::new(n, [C1, C2, C3, C4])).unwrap());
    }
    for k in 1..=3 {
        out.push(ternary_from_boolean(&power_set_algebra(k).unwrap(), Formula::Ite).unwrap());
    }
    out
}

fn proven() -> Theory {
    let mut env = builtin_theory();
    for r in verify_corpus(&builtin_corpus(), &mut env) {
        assert!(r.verified(), "{r}");
    }
    env
}

fn satisfies(sys: &FiniteTernarySystem, eq: &Equation) -> bool {
    equation_counterexample(eq, sys).is_none()
}

#[test]
fn lemmas_hold_wherever_their_hypotheses_do() {
    let env = proven();
    let models = models();
    let mut applicable = 0;
    for (name, entry) in env.lemmas() {
        for m in &models {
            if entry.hypotheses.values().all(|h| satisfies(m, h)) {
                applicable += 1;
                for eq in &entry.equations {
                    assert!(satisfies(m, eq), "{name}: {eq} fails in {:?}", m.table());
                }
            }
        }
    }
    assert!(applicable > env.lemmas().count());
}

#[test]
fn axioms_and_definitions_hold_in_every_model() {
    let env = builtin_theory();
    for m in models() {
        for (name, entry) in env.rules() {
            for eq in &entry.equations {
                assert!(satisfies(&m, eq), "{name} fails");
            }
        }
    }
}

#[test]
fn templates_agree_with_the_property_checker() {
    let env = builtin_theory();
    let pairs: [(&str, PropertyId); 3] = [
        ("COMM_MEET", CommMeet),
        ("COMM_JOIN", CommJoin),
        ("COND_III", CondIII),
    ];
    let mut systems = models();
    for k in 1..=2 {
        for f in Formula::ALL {
            systems.push(ternary_from_boolean(&power_set_algebra(k).unwrap(), f).unwrap());
        }
    }
    for m in &systems {
        for (template, prop) in pairs {
            let kernel = satisfies(m, env.template(template).unwrap());
            let checker = check_property(m.into(), prop, None).unwrap().holds;
            assert_eq!(kernel, checker, "{template} on {:?}", m.table());
        }
        let idem = satisfies(m, env.template("IDEM_MEET").unwrap())
            && satisfies(m, env.template("IDEM_JOIN").unwrap());
        assert_eq!(idem, check_property(m.into(), Idem, None).unwrap().holds);
    }
}

#[test]
fn lemma_one_scripts_agree_with_the_lemma_one_checks() {
    // every C1-C4 model passes both the proven lemma equations and the
    // exhaustive L1-L10 checks
    let env = proven();
    for m in models() {
        for prop in PropertyId::LEMMA1 {
            assert!(
                check_property((&m).into(), prop, None).unwrap().holds,
                "{prop}"
            );
        }
        for name in ["L1", "L2", "L3", "L4", "L5", "L6a", "L6b", "L9a", "L10b"] {
            for eq in &env.get(name).unwrap().equations {
                assert!(satisfies(&m, eq));
            }
        }
    }
}
