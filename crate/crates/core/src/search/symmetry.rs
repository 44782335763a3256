use std::collections::BTreeMap;

use crate::algebra::FiniteTernarySystem;

use super::SearchError;

/// Relabels `sys` by `perm`: the image satisfies
/// `p'(perm a, perm b, perm c) = perm p(a,b,c)`.
///
/// `perm` must be a permutation fixing the designated constants.
pub fn permute(sys: &FiniteTernarySystem, perm: &[usize]) -> FiniteTernarySystem {
    let n = sys.size();
    let mut table = vec![0; n * n * n];
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                table[(perm[a] * n + perm[b]) * n + perm[c]] = perm[sys.p(a, b, c)];
            }
        }
    }
    FiniteTernarySystem::new(n, perm[sys.zero()], perm[sys.one()], table)
        .expect("permutation preserves shape")
}

/// Every permutation of `{0..n-1}` fixing `zero` and `one`, identity first.
fn stabilizer(n: usize, zero: usize, one: usize) -> Vec<Vec<usize>> {
    let movable: Vec<usize> = (0..n).filter(|&x| x != zero && x != one).collect();
    let mut images = Vec::new();
    permutations(
        &movable,
        &mut Vec::new(),
        &mut vec![false; movable.len()],
        &mut images,
    );
    images
        .into_iter()
        .map(|image| {
            let mut perm: Vec<usize> = (0..n).collect();
            for (&from, &to) in movable.iter().zip(&image) {
                perm[from] = to;
            }
            perm
        })
        .collect()
}

fn permutations(
    items: &[usize],
    prefix: &mut Vec<usize>,
    used: &mut [bool],
    out: &mut Vec<Vec<usize>>,
) {
    if prefix.len() == items.len() {
        out.push(prefix.clone());
        return;
    }
    for i in 0..items.len() {
        if !used[i] {
            used[i] = true;
            prefix.push(items[i]);
            permutations(items, prefix, used, out);
            prefix.pop();
            used[i] = false;
        }
    }
}

/// The lexicographically least table in the orbit of `sys`.
pub fn canonical_form(sys: &FiniteTernarySystem) -> FiniteTernarySystem {
    stabilizer(sys.size(), sys.zero(), sys.one())
        .iter()
        .map(|perm| permute(sys, perm))
        .min()
        .expect("stabilizer contains the identity")
}

pub fn is_canonical(sys: &FiniteTernarySystem) -> bool {
    stabilizer(sys.size(), sys.zero(), sys.one())
        .iter()
        .skip(1)
        .all(|perm| permute(sys, perm).table() >= sys.table())
}

/// Keeps the least listed member of each orbit, sorted.
///
/// The orbit computation is factorial in `size - 2`.
pub fn symmetry_reduce(
    models: &[FiniteTernarySystem],
) -> Result<Vec<FiniteTernarySystem>, SearchError> {
    let Some(first) = models.first() else {
        return Ok(Vec::new());
    };
    let shape = (first.size(), first.zero(), first.one());
    if models
        .iter()
        .any(|m| (m.size(), m.zero(), m.one()) != shape)
    {
        return Err(SearchError::MixedModels);
    }
    let mut best: BTreeMap<FiniteTernarySystem, &FiniteTernarySystem> = BTreeMap::new();
    for m in models {
        best.entry(canonical_form(m))
            .and_modify(|cur| {
                if m < *cur {
                    *cur = m;
                }
            })
            .or_insert(m);
    }
    let mut out: Vec<FiniteTernarySystem> = best.into_values().cloned().collect();
    out.sort();
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power_set_algebra, ternary_from_boolean, Formula, PropertyId::*};
    use crate::search::{search, SearchConstraints};

    #[test]
    fn stabilizer_sizes() {
        assert_eq!(stabilizer(2, 0, 1).len(), 1);
        assert_eq!(stabilizer(4, 0, 1).len(), 2);
        assert_eq!(stabilizer(5, 3, 0).len(), 6);
        for perm in stabilizer(5, 3, 0) {
            assert_eq!((perm[3], perm[0]), (3, 0));
        }
    }

    #[test]
    fn two_element_lists_are_unchanged() {
        let ite = ternary_from_boolean(&power_set_algebra(1).unwrap(), Formula::Ite).unwrap();
        assert_eq!(
            symmetry_reduce(std::slice::from_ref(&ite)).unwrap(),
            vec![ite]
        );
    }

    #[test]
    fn swapped_atoms_collapse() {
        let ite = ternary_from_boolean(&power_set_algebra(2).unwrap(), Formula::Ite).unwrap();
        let swapped = permute(&ite, &[0, 1, 3, 2]);
        let reduced = symmetry_reduce(&[ite.clone(), swapped.clone()]).unwrap();
        assert_eq!(reduced.len(), 1);
        assert_eq!(reduced[0], ite.clone().min(swapped));
    }

    #[test]
    fn mixed_sizes_are_rejected() {
        let a = ternary_from_boolean(&power_set_algebra(1).unwrap(), Formula::Ite).unwrap();
        let b = ternary_from_boolean(&power_set_algebra(2).unwrap(), Formula::Ite).unwrap();
        assert_eq!(symmetry_reduce(&[a, b]), Err(SearchError::MixedModels));
    }

    #[test]
    fn reduction_never_grows_and_matches_search_flag() {
        let all = search(&SearchConstraints::new(3, [C1, C2, C3, C4])).unwrap();
        let reduced = symmetry_reduce(&all).unwrap();
        assert!(reduced.len() <= all.len());
        let flagged =
            search(&SearchConstraints::new(3, [C1, C2, C3, C4]).with_symmetry_reduction()).unwrap();
        assert_eq!(reduced, flagged);
    }
}
