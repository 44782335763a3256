use proptest::prelude::*;

use tba_core::algebra::{
    boolean_from_ternary, check_property, power_set_algebra, ternary_from_boolean, verify_theorem1,
    FiniteBooleanAlgebra, Formula, PropertyId,
};
use tba_core::proof::{builtin_theory, check_step, parse_term, RewriteRule, Term};
use tba_core::search::{canonical_form, permute};

fn term() -> impl Strategy<Value = Term> {
    let leaf = prop_oneof![
        Just(Term::Zero),
        Just(Term::One),
        prop::sample::select(vec!["a", "b", "c", "b1", "x'"]).prop_map(Term::var),
    ];
    leaf.prop_recursive(4, 32, 3, |inner| {
        prop_oneof![
            (inner.clone(), inner.clone(), inner.clone()).prop_map(|(a, b, c)| Term::p(a, b, c)),
            inner.clone().prop_map(Term::bar),
            (inner.clone(), inner.clone()).prop_map(|(a, b)| Term::meet(a, b)),
            (inner.clone(), inner).prop_map(|(a, b)| Term::join(a, b)),
        ]
    })
}

/// A permutation of `0..n` fixing 0 and 1.
fn relabeling(n: usize) -> impl Strategy<Value = Vec<usize>> {
    Just((2..n).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|rest| {
            let mut perm = vec![0, 1];
            perm.extend(rest);
            perm
        })
}

fn relabel(ba: &FiniteBooleanAlgebra, perm: &[usize]) -> FiniteBooleanAlgebra {
    let n = ba.size();
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut neg = vec![0; n];
    for a in 0..n {
        neg[perm[a]] = perm[ba.neg(a)];
        for b in 0..n {
            meet[perm[a] * n + perm[b]] = perm[ba.meet(a, b)];
            join[perm[a] * n + perm[b]] = perm[ba.join(a, b)];
        }
    }
    FiniteBooleanAlgebra::new(n, perm[ba.bottom()], perm[ba.top()], meet, join, neg).unwrap()
}

proptest! {
    #[test]
    fn display_then_parse_is_identity(t in term()) {
        prop_assert_eq!(parse_term(&t.to_string()).unwrap(), t);
    }

    #[test]
    fn a_rule_rewrites_its_own_instances(t in term(), u in term(), v in term()) {
        let theory = builtin_theory();
        for (name, entry) in theory.rules() {
            let eq = &entry.equations[0];
            let subst = [("a", &t), ("b", &u), ("c", &v), ("b1", &t), ("b2", &u), ("b3", &v)]
                .into_iter()
                .map(|(k, x)| (k.to_string(), x.clone()))
                .collect();
            let (lhs, rhs) = (eq.lhs.apply(&subst), eq.rhs.apply(&subst));
            let rule = RewriteRule::new(name, eq.clone(), entry.kind);
            prop_assert!(check_step(&lhs, &rhs, &rule).is_valid());
            prop_assert!(check_step(&Term::bar(rhs.clone()), &Term::bar(lhs.clone()), &rule).is_valid());
        }
    }

    #[test]
    fn relabeled_power_sets_stay_boolean((k, perm) in (2u32..=3).prop_flat_map(|k| (Just(k), relabeling(1 << k)))) {
        let ba = power_set_algebra(k).unwrap();
        let relabeled = relabel(&ba, &perm);
        prop_assert!(check_property((&relabeled).into(), PropertyId::BA, None).unwrap().holds);
        let sys = ternary_from_boolean(&relabeled, Formula::Ite).unwrap();
        prop_assert_eq!(boolean_from_ternary(&sys), relabeled.clone());
        prop_assert!(verify_theorem1(&sys).equivalence_respected);
        let direct = permute(&ternary_from_boolean(&ba, Formula::Ite).unwrap(), &perm);
        prop_assert_eq!(direct, sys);
    }

    #[test]
    fn property_verdicts_are_relabeling_invariant(perm in relabeling(4), f in prop::sample::select(Formula::ALL.to_vec())) {
        let sys = ternary_from_boolean(&power_set_algebra(2).unwrap(), f).unwrap();
        let image = permute(&sys, &perm);
        prop_assert_eq!(canonical_form(&image), canonical_form(&sys));
        for prop in PropertyId::ALL {
            if prop.subject_kind() == tba_core::algebra::SubjectKind::Ternary {
                let before = check_property((&sys).into(), prop, None).unwrap().holds;
                let after = check_property((&image).into(), prop, None).unwrap().holds;
                prop_assert_eq!(before, after, "{}", prop);
            }
        }
    }
}
