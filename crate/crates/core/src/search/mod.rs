//! Exhaustive enumeration of ternary tables on small carriers.
//!
//! Cells forced by `p(0,a,1) = a`, `p(a,b,a) = a` and `p(a,0,b) = a = p(b,1,a)`
//! are pinned up front. The remaining cells are assigned in lexicographic
//! order with values ascending, so models come out sorted by flattened
//! table. After each assignment only the grounded instances of the
//! right-distributivity axiom that read the new cell are re-checked, along
//! with the cell-pair equalities of any required commutativity-style
//! property. Every complete table is re-verified against all required and
//! forbidden properties before it is reported.

mod partial;
mod symmetry;

use std::collections::BTreeSet;

use thiserror::Error;

use crate::algebra::{check_property, FiniteTernarySystem, PropertyId, Subject, SubjectKind};

pub use partial::{c3_consistent, pin_forced_cells, PartialTable};
pub use symmetry::{canonical_form, is_canonical, permute, symmetry_reduce};

use partial::{pin_cells, Pins};

/// Largest carrier the search accepts.
pub const MAX_SEARCH_SIZE: usize = 4;

/// Properties that may appear in [`SearchConstraints::required`].
pub const SEARCHABLE: [PropertyId; 9] = [
    PropertyId::C1,
    PropertyId::C2,
    PropertyId::C3,
    PropertyId::C4,
    PropertyId::CommMeet,
    PropertyId::CondIII,
    PropertyId::CC,
    PropertyId::Idem,
    PropertyId::Concl,
];

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SearchError {
    #[error("invalid search constraints: {0}")]
    InvalidConstraints(String),
    #[error("pin conflict at ({},{},{}): already {existing}, requested {requested}", .triple.0, .triple.1, .triple.2)]
    PinConflict {
        triple: (usize, usize, usize),
        existing: usize,
        requested: usize,
    },
    #[error("search interrupted after {} model(s)", .partial.len())]
    Interrupted { partial: Vec<FiniteTernarySystem> },
    #[error("models differ in size or designated constants")]
    MixedModels,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchConstraints {
    pub size: usize,
    pub required: BTreeSet<PropertyId>,
    /// Every returned model must violate each of these.
    pub forbidden: BTreeSet<PropertyId>,
    pub limit: Option<usize>,
    /// Keep only the lexicographically least table of each orbit under
    /// relabelings that fix the designated constants.
    pub symmetry_reduce: bool,
}

impl SearchConstraints {
    pub fn new(size: usize, required: impl IntoIterator<Item = PropertyId>) -> Self {
        Self {
            size,
            required: required.into_iter().collect(),
            forbidden: BTreeSet::new(),
            limit: None,
            symmetry_reduce: false,
        }
    }

    pub fn forbid(mut self, props: impl IntoIterator<Item = PropertyId>) -> Self {
        self.forbidden.extend(props);
        self
    }

    pub fn with_limit(mut self, limit: usize) -> Self {
        self.limit = Some(limit);
        self
    }

    pub fn with_symmetry_reduction(mut self) -> Self {
        self.symmetry_reduce = true;
        self
    }

    pub fn validate(&self) -> Result<(), SearchError> {
        if !(2..=MAX_SEARCH_SIZE).contains(&self.size) {
            return Err(SearchError::InvalidConstraints(format!(
                "size {} outside 2..={MAX_SEARCH_SIZE}",
                self.size
            )));
        }
        if let Some(p) = self.required.iter().find(|p| !SEARCHABLE.contains(p)) {
            return Err(SearchError::InvalidConstraints(format!(
                "{p} cannot be required in a search"
            )));
        }
        if let Some(p) = self
            .forbidden
            .iter()
            .find(|p| p.subject_kind() != SubjectKind::Ternary)
        {
            return Err(SearchError::InvalidConstraints(format!(
                "{p} is not a ternary-side property"
            )));
        }
        if let Some(p) = self.required.intersection(&self.forbidden).next() {
            return Err(SearchError::InvalidConstraints(format!(
                "{p} is both required and forbidden"
            )));
        }
        Ok(())
    }
}

/// Search state: the partial table plus the static constraint structure.
#[derive(Clone)]
struct Engine<'c> {
    constraints: &'c SearchConstraints,
    table: PartialTable,
    free: Vec<usize>,
    prune_c3: bool,
    /// Cells that must carry the same value as the indexed cell.
    partners: Vec<Vec<usize>>,
    /// Values fixed for individual cells beyond the pins.
    forced: Vec<Option<usize>>,
}

impl<'c> Engine<'c> {
    fn new(constraints: &'c SearchConstraints) -> Result<Self, SearchError> {
        constraints.validate()?;
        let n = constraints.size;
        let (zero, one) = (0, 1);
        let req = |p| constraints.required.contains(&p);
        let table = pin_cells(
            n,
            zero,
            one,
            Pins {
                c1: req(PropertyId::C1),
                c2: req(PropertyId::C2),
                c4: req(PropertyId::C4),
            },
        )?;
        let idx = |a: usize, b: usize, c: usize| (a * n + b) * n + c;

        let mut partners = vec![Vec::new(); n * n * n];
        let mut link = |x: usize, y: usize| {
            if x != y {
                partners[x].push(y);
                partners[y].push(x);
            }
        };
        let comm_meet = req(PropertyId::CommMeet) || req(PropertyId::Concl);
        let cond_iii = req(PropertyId::CondIII) || req(PropertyId::Concl);
        for a in 0..n {
            for b in 0..n {
                if comm_meet {
                    link(idx(zero, a, b), idx(zero, b, a));
                }
                if cond_iii {
                    link(idx(a, a, b), idx(zero, a, b));
                }
                if req(PropertyId::CC) {
                    for c in 0..n {
                        link(idx(a, b, c), idx(a, c, b));
                        link(idx(a, b, c), idx(c, a, b));
                    }
                }
            }
        }
        for list in &mut partners {
            list.sort_unstable();
            list.dedup();
        }

        let mut forced = vec![None; n * n * n];
        if req(PropertyId::Idem) {
            for a in 0..n {
                forced[idx(zero, a, a)] = Some(a);
                forced[idx(a, a, one)] = Some(a);
            }
        }

        let free = table.free_indices();
        Ok(Self {
            constraints,
            table,
            free,
            prune_c3: req(PropertyId::C3),
            partners,
            forced,
        })
    }

    fn local_ok(&self, cell: usize) -> bool {
        let cells = self.table.cells();
        let Some(v) = cells[cell] else { return true };
        if self.forced[cell].is_some_and(|f| f != v) {
            return false;
        }
        if self.partners[cell]
            .iter()
            .any(|&q| cells[q].is_some_and(|w| w != v))
        {
            return false;
        }
        if self.prune_c3 {
            let (i, j, k) = self.table.triple(cell);
            return self.table.c3_consistent_at(i, j, k);
        }
        true
    }

    /// Consistency of the pinned cells alone.
    fn root_ok(&self) -> bool {
        let cells = self.table.cells();
        let unit_and_pairs = (0..cells.len()).all(|i| {
            let Some(v) = cells[i] else { return true };
            self.forced[i].is_none_or(|f| f == v)
                && self.partners[i]
                    .iter()
                    .all(|&q| cells[q].is_none_or(|w| w == v))
        });
        unit_and_pairs && (!self.prune_c3 || c3_consistent(&self.table))
    }

    fn accepts(&self, sys: &FiniteTernarySystem) -> bool {
        let holds = |p: &PropertyId| {
            check_property(Subject::Ternary(sys), *p, None)
                .expect("constraints validated as ternary-side")
                .holds
        };
        self.constraints.required.iter().all(holds)
            && !self.constraints.forbidden.iter().any(holds)
            && (!self.constraints.symmetry_reduce || is_canonical(sys))
    }

    /// Depth-first enumeration from `depth`; returns false when stopped.
    fn run(
        &mut self,
        depth: usize,
        out: &mut Vec<FiniteTernarySystem>,
        limit: Option<usize>,
        stop: &mut dyn FnMut() -> bool,
    ) -> bool {
        if stop() {
            return false;
        }
        if limit.is_some_and(|l| out.len() >= l) {
            return true;
        }
        if depth == self.free.len() {
            let sys = self.table.to_system().expect("all cells assigned");
            if self.accepts(&sys) {
                out.push(sys);
            }
            return true;
        }
        let cell = self.free[depth];
        for v in 0..self.constraints.size {
            self.table.set(cell, Some(v));
            if self.local_ok(cell) && !self.run(depth + 1, out, limit, stop) {
                self.table.set(cell, None);
                return false;
            }
        }
        self.table.set(cell, None);
        true
    }
}

/// Enumerates models, polling `should_stop` at every search node. When it
/// returns true the models found so far come back in
/// [`SearchError::Interrupted`].
pub fn search_until(
    constraints: &SearchConstraints,
    mut should_stop: impl FnMut() -> bool,
) -> Result<Vec<FiniteTernarySystem>, SearchError> {
    let mut engine = Engine::new(constraints)?;
    let mut out = Vec::new();
    if !engine.root_ok() {
        return Ok(out);
    }
    if !engine.run(0, &mut out, constraints.limit, &mut should_stop) {
        return Err(SearchError::Interrupted { partial: out });
    }
    Ok(out)
}

/// All models satisfying `constraints`, sorted by flattened table.
pub fn search(constraints: &SearchConstraints) -> Result<Vec<FiniteTernarySystem>, SearchError> {
    search_until(constraints, || false)
}

/// Same result as [`search`], with the tree split across threads on the
/// values of the first free cell.
pub fn search_parallel(
    constraints: &SearchConstraints,
) -> Result<Vec<FiniteTernarySystem>, SearchError> {
    let engine = Engine::new(constraints)?;
    if !engine.root_ok() {
        return Ok(Vec::new());
    }
    let Some(&first) = engine.free.first() else {
        return search(constraints);
    };
    let branches: Vec<Vec<FiniteTernarySystem>> = std::thread::scope(|scope| {
        let handles: Vec<_> = (0..constraints.size)
            .map(|v| {
                let mut worker = engine.clone();
                scope.spawn(move || {
                    let mut out = Vec::new();
                    worker.table.set(first, Some(v));
                    if worker.local_ok(first) {
                        worker.run(1, &mut out, constraints.limit, &mut || false);
                    }
                    out
                })
            })
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("search worker panicked"))
            .collect()
    });
    let mut models: Vec<_> = branches.into_iter().flatten().collect();
    models.sort();
    if let Some(limit) = constraints.limit {
        models.truncate(limit);
    }
    Ok(models)
}

/// Number of models; counts orbits instead when symmetry reduction is on.
pub fn count_models(constraints: &SearchConstraints) -> Result<usize, SearchError> {
    search(constraints).map(|m| m.len())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{power_set_algebra, ternary_from_boolean, Formula};
    use PropertyId::*;

    #[test]
    fn unique_two_element_model_is_ite() {
        let models = search(&SearchConstraints::new(2, [C1, C2, C3, C4])).unwrap();
        let ite = ternary_from_boolean(&power_set_algebra(1).unwrap(), Formula::Ite).unwrap();
        assert_eq!(models, vec![ite]);
    }

    #[test]
    fn two_element_model_is_not_completely_commutative() {
        let c = SearchConstraints::new(2, [C1, C2, C3, C4]).forbid([CC]);
        assert_eq!(count_models(&c).unwrap(), 1);
        let c = SearchConstraints::new(2, [C1, C2, C3, C4, CC]);
        assert_eq!(count_models(&c).unwrap(), 0);
    }

    #[test]
    fn no_three_element_boolean_models() {
        let c = SearchConstraints::new(3, [C1, C2, C3, C4, CommMeet, CondIII]);
        assert_eq!(count_models(&c).unwrap(), 0);
    }

    #[test]
    fn conclusion_condition_matches_its_parts() {
        let a = count_models(&SearchConstraints::new(3, [C1, C2, C3, C4, Concl])).unwrap();
        let b = count_models(&SearchConstraints::new(
            3,
            [C1, C2, C3, C4, CommMeet, CondIII],
        ))
        .unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn constraint_validation() {
        assert!(matches!(
            search(&SearchConstraints::new(5, [C1])),
            Err(SearchError::InvalidConstraints(_))
        ));
        assert!(matches!(
            search(&SearchConstraints::new(1, [C1])),
            Err(SearchError::InvalidConstraints(_))
        ));
        assert!(search(&SearchConstraints::new(3, [C1, L3])).is_err());
        assert!(search(&SearchConstraints::new(3, [C1, CC]).forbid([CC])).is_err());
        assert!(search(&SearchConstraints::new(3, [C1]).forbid([BA])).is_err());
    }

    #[test]
    fn limit_truncates_in_order() {
        let all = search(&SearchConstraints::new(3, [C1, C2, C4])).unwrap();
        assert!(all.len() > 2);
        let two = search(&SearchConstraints::new(3, [C1, C2, C4]).with_limit(2)).unwrap();
        assert_eq!(two, all[..2].to_vec());
    }

    #[test]
    fn parallel_matches_sequential() {
        for c in [
            SearchConstraints::new(3, [C1, C2, C3, C4]),
            SearchConstraints::new(3, [C1, C2, C4]).with_limit(7),
            SearchConstraints::new(3, [C1, C2, C4]).with_symmetry_reduction(),
            SearchConstraints::new(2, [C1, C2, C3, C4]),
        ] {
            assert_eq!(search(&c).unwrap(), search_parallel(&c).unwrap());
        }
    }

    #[test]
    fn interruption_returns_partial_results() {
        let mut calls = 0;
        let err = search_until(&SearchConstraints::new(3, [C1, C2, C4]), || {
            calls += 1;
            calls > 40
        })
        .unwrap_err();
        let SearchError::Interrupted { partial } = err else {
            panic!("expected interruption")
        };
        let all = search(&SearchConstraints::new(3, [C1, C2, C4])).unwrap();
        assert!(partial.len() < all.len());
        assert_eq!(partial, all[..partial.len()].to_vec());
    }
}
