//! The pruned search against a naive enumerator with its own axiom checks.

use tba_core::algebra::{check_property, FiniteTernarySystem, PropertyId, PropertyId::*};
use tba_core::search::{count_models, search, search_parallel, SearchConstraints, SEARCHABLE};

fn holds(t: &[usize], n: usize, prop: PropertyId) -> bool {
    let p = |a: usize, b: usize, c: usize| t[(a * n + b) * n + c];
    let r = 0..n;
    let all2 = |f: &dyn Fn(usize, usize) -> bool| r.clone().all(|a| r.clone().all(|b| f(a, b)));
    let all3 =
        |f: &dyn Fn(usize, usize, usize) -> bool| all2(&|a, b| r.clone().all(|c| f(a, b, c)));
    match prop {
        C1 => r.clone().all(|a| p(0, a, 1) == a),
        C2 => all2(&|a, b| p(a, b, a) == a),
        C3 => all3(&|a, c, b1| {
            all3(&|b2, b3, _| p(a, p(b1, b2, b3), c) == p(p(a, b1, c), b2, p(a, b3, c)))
        }),
        C4 => all2(&|a, b| p(a, 0, b) == a && p(b, 1, a) == a),
        CommMeet => all2(&|a, b| p(0, a, b) == p(0, b, a)),
        CondIII => all2(&|a, b| p(a, a, b) == p(0, a, b)),
        CC => all3(&|a, b, c| p(a, b, c) == p(a, c, b) && p(a, b, c) == p(c, a, b)),
        Idem => r.clone().all(|a| p(0, a, a) == a && p(a, a, 1) == a),
        Concl => all2(&|a, b| p(0, a, b) == p(0, b, a) && p(0, b, a) == p(a, a, b)),
        other => panic!("oracle does not cover {other}"),
    }
}

/// Every table with the forced C1/C2/C4 cells fixed and the rest free.
fn naive(n: usize, required: &[PropertyId], forbidden: &[PropertyId]) -> Vec<Vec<usize>> {
    let mut base = vec![None; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                let forced = if b == 0 {
                    Some(a)
                } else if b == 1 {
                    Some(c)
                } else if a == c {
                    Some(a)
                } else if (a, c) == (0, 1) {
                    Some(b)
                } else {
                    None
                };
                base[(a * n + b) * n + c] = forced;
            }
        }
    }
    let free: Vec<usize> = (0..base.len()).filter(|&i| base[i].is_none()).collect();
    let mut out = Vec::new();
    let total = n.pow(free.len() as u32);
    for code in 0..total {
        let mut t: Vec<usize> = base.iter().map(|c| c.unwrap_or(0)).collect();
        let mut rest = code;
        for &i in free.iter().rev() {
            t[i] = rest % n;
            rest /= n;
        }
        if required.iter().all(|&q| holds(&t, n, q)) && forbidden.iter().all(|&q| !holds(&t, n, q))
        {
            out.push(t);
        }
    }
    out.sort();
    out
}

fn tables(models: &[FiniteTernarySystem]) -> Vec<Vec<usize>> {
    models.iter().map(|m| m.table().to_vec()).collect()
}

#[test]
fn every_requirement_subset_matches_the_oracle_at_size_three() {
    let extras = [CommMeet, CondIII, CC, Idem, Concl];
    for mask in 0..(1 << extras.len()) {
        let mut required = vec![C1, C2, C3, C4];
        required.extend(
            (0..extras.len())
                .filter(|i| mask & (1 << i) != 0)
                .map(|i| extras[i]),
        );
        let expected = naive(3, &required, &[]);
        let got = search(&SearchConstraints::new(3, required.iter().copied())).unwrap();
        assert_eq!(tables(&got), expected, "required {required:?}");
    }
}

#[test]
fn forbidden_sets_match_the_oracle() {
    let base = [C1, C2, C3, C4];
    for forbidden in [vec![CC], vec![CommMeet], vec![CondIII, Idem], vec![Concl]] {
        for n in [2, 3] {
            let expected = naive(n, &base, &forbidden);
            let c = SearchConstraints::new(n, base).forbid(forbidden.iter().copied());
            assert_eq!(
                tables(&search(&c).unwrap()),
                expected,
                "n={n} forbidden {forbidden:?}"
            );
        }
    }
}

#[test]
fn every_requirement_subset_matches_brute_force_at_size_two() {
    let all: Vec<Vec<usize>> = (0..256usize)
        .map(|code| (0..8).map(|i| (code >> (7 - i)) & 1).collect())
        .collect();
    for mask in 0..(1usize << SEARCHABLE.len()) {
        let required: Vec<PropertyId> = (0..SEARCHABLE.len())
            .filter(|i| mask & (1 << i) != 0)
            .map(|i| SEARCHABLE[i])
            .collect();
        let expected: Vec<Vec<usize>> = all
            .iter()
            .filter(|t| required.iter().all(|&q| holds(t, 2, q)))
            .cloned()
            .collect();
        let got = search(&SearchConstraints::new(2, required.iter().copied())).unwrap();
        assert_eq!(tables(&got), expected, "required {required:?}");
    }
}

#[test]
fn results_pass_the_library_checker() {
    let c = SearchConstraints::new(3, [C1, C2, C3, C4]).forbid([CC]);
    for m in search(&c).unwrap() {
        for q in [C1, C2, C3, C4] {
            assert!(check_property((&m).into(), q, None).unwrap().holds);
        }
        assert!(!check_property((&m).into(), CC, None).unwrap().holds);
    }
}

#[test]
fn parallel_and_counting_agree_with_sequential() {
    for n in [2, 3] {
        for extra in SEARCHABLE.iter().skip(4) {
            let c = SearchConstraints::new(n, [C1, C2, C3, C4, *extra]);
            let seq = search(&c).unwrap();
            assert_eq!(search_parallel(&c).unwrap(), seq);
            assert_eq!(count_models(&c).unwrap(), seq.len());
        }
    }
}
