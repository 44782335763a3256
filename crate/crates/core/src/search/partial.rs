use crate::algebra::FiniteTernarySystem;

use super::SearchError;

/// A ternary table with possibly unassigned cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PartialTable {
    size: usize,
    zero: usize,
    one: usize,
    cells: Vec<Option<usize>>,
}

impl PartialTable {
    /// A table with every cell unassigned.
    pub fn empty(size: usize, zero: usize, one: usize) -> Result<Self, SearchError> {
        if size < 2 || zero >= size || one >= size || zero == one {
            return Err(SearchError::InvalidConstraints(format!(
                "bad carrier: size {size}, zero {zero}, one {one}"
            )));
        }
        Ok(Self {
            size,
            zero,
            one,
            cells: vec![None; size * size * size],
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn zero(&self) -> usize {
        self.zero
    }

    pub fn one(&self) -> usize {
        self.one
    }

    #[inline]
    pub fn index(&self, a: usize, b: usize, c: usize) -> usize {
        (a * self.size + b) * self.size + c
    }

    pub fn triple(&self, index: usize) -> (usize, usize, usize) {
        let n = self.size;
        (index / (n * n), (index / n) % n, index % n)
    }

    #[inline]
    pub fn get(&self, a: usize, b: usize, c: usize) -> Option<usize> {
        self.cells[self.index(a, b, c)]
    }

    pub fn cells(&self) -> &[Option<usize>] {
        &self.cells
    }

    /// Assigns a cell, failing if it already holds a different value.
    pub fn pin(&mut self, a: usize, b: usize, c: usize, value: usize) -> Result<(), SearchError> {
        if value >= self.size || a >= self.size || b >= self.size || c >= self.size {
            return Err(SearchError::InvalidConstraints(format!(
                "pin p({a},{b},{c}) = {value} out of range for size {}",
                self.size
            )));
        }
        let i = self.index(a, b, c);
        match self.cells[i] {
            Some(existing) if existing != value => Err(SearchError::PinConflict {
                triple: (a, b, c),
                existing,
                requested: value,
            }),
            _ => {
                self.cells[i] = Some(value);
                Ok(())
            }
        }
    }

    pub(crate) fn set(&mut self, index: usize, value: Option<usize>) {
        self.cells[index] = value;
    }

    /// Unassigned cells in lexicographic order.
    pub fn free_cells(&self) -> Vec<(usize, usize, usize)> {
        self.free_indices()
            .into_iter()
            .map(|i| self.triple(i))
            .collect()
    }

    pub(crate) fn free_indices(&self) -> Vec<usize> {
        (0..self.cells.len())
            .filter(|&i| self.cells[i].is_none())
            .collect()
    }

    /// The completed system, if every cell is assigned.
    pub fn to_system(&self) -> Option<FiniteTernarySystem> {
        let table: Option<Vec<usize>> = self.cells.iter().copied().collect();
        FiniteTernarySystem::new(self.size, self.zero, self.one, table?).ok()
    }

    /// Evaluates one instance of the right-distributivity axiom
    /// `p(a,p(b1,b2,b3),c) = p(p(a,b1,c),b2,p(a,b3,c))`; `None` when some
    /// cell it reads is unassigned.
    #[inline]
    fn c3_instance(&self, a: usize, b1: usize, b2: usize, b3: usize, c: usize) -> Option<bool> {
        let inner = self.get(b1, b2, b3)?;
        let lhs = self.get(a, inner, c)?;
        let x = self.get(a, b1, c)?;
        let y = self.get(a, b3, c)?;
        let rhs = self.get(x, b2, y)?;
        Some(lhs == rhs)
    }

    /// Checks every grounded instance of the axiom that reads the cell
    /// `(i,j,k)`. Sufficient for incremental search: an instance that becomes
    /// fully assigned after this cell is set necessarily reads it.
    pub(crate) fn c3_consistent_at(&self, i: usize, j: usize, k: usize) -> bool {
        let n = self.size;
        let bad = |r: Option<bool>| r == Some(false);
        // cell is the inner p(b1,b2,b3)
        for a in 0..n {
            for c in 0..n {
                if bad(self.c3_instance(a, i, j, k, c)) {
                    return false;
                }
            }
        }
        // cell is the outer p(a, inner, c)
        for b1 in 0..n {
            for b2 in 0..n {
                for b3 in 0..n {
                    if self.get(b1, b2, b3) == Some(j) && bad(self.c3_instance(i, b1, b2, b3, k)) {
                        return false;
                    }
                }
            }
        }
        // cell is p(a,b1,c) or p(a,b3,c)
        for x in 0..n {
            for y in 0..n {
                if bad(self.c3_instance(i, j, x, y, k)) || bad(self.c3_instance(i, x, y, j, k)) {
                    return false;
                }
            }
        }
        // cell is the outer p(x, b2, y)
        for a in 0..n {
            for c in 0..n {
                for b1 in 0..n {
                    if self.get(a, b1, c) != Some(i) {
                        continue;
                    }
                    for b3 in 0..n {
                        if self.get(a, b3, c) == Some(k) && bad(self.c3_instance(a, b1, j, b3, c)) {
                            return false;
                        }
                    }
                }
            }
        }
        true
    }
}

/// Which of the pinning axioms to apply.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) struct Pins {
    pub c1: bool,
    pub c2: bool,
    pub c4: bool,
}

pub(crate) fn pin_cells(
    size: usize,
    zero: usize,
    one: usize,
    pins: Pins,
) -> Result<PartialTable, SearchError> {
    let mut pt = PartialTable::empty(size, zero, one)?;
    for a in 0..size {
        for b in 0..size {
            if pins.c4 {
                pt.pin(a, zero, b, a)?;
                pt.pin(b, one, a, a)?;
            }
            if pins.c2 {
                pt.pin(a, b, a, a)?;
            }
        }
        if pins.c1 {
            pt.pin(zero, a, one, a)?;
        }
    }
    Ok(pt)
}

/// Assigns every cell forced directly by `p(0,a,1) = a`, `p(a,b,a) = a` and
/// `p(a,0,b) = a = p(b,1,a)`.
pub fn pin_forced_cells(size: usize, zero: usize, one: usize) -> Result<PartialTable, SearchError> {
    pin_cells(
        size,
        zero,
        one,
        Pins {
            c1: true,
            c2: true,
            c4: true,
        },
    )
}

/// True iff no fully assigned instance of the right-distributivity axiom is
/// violated.
pub fn c3_consistent(pt: &PartialTable) -> bool {
    let n = pt.size;
    for a in 0..n {
        for b1 in 0..n {
            for b2 in 0..n {
                for b3 in 0..n {
                    for c in 0..n {
                        if pt.c3_instance(a, b1, b2, b3, c) == Some(false) {
                            return false;
                        }
                    }
                }
            }
        }
    }
    true
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_elements_are_fully_pinned() {
        let pt = pin_forced_cells(2, 0, 1).unwrap();
        assert!(pt.free_cells().is_empty());
        let sys = pt.to_system().unwrap();
        // the multiplexer: p(a,0,c) = a, p(a,1,c) = c
        assert_eq!(sys.table(), &[0, 0, 0, 1, 1, 1, 0, 1]);
        assert!(c3_consistent(&pt));
    }

    #[test]
    fn free_cell_counts() {
        let pt3 = pin_forced_cells(3, 0, 1).unwrap();
        // independent count: (a,2,c) with a != c, minus (0,2,1)
        let expected: Vec<_> = (0..3)
            .flat_map(|a| (0..3).map(move |c| (a, 2, c)))
            .filter(|&(a, _, c)| a != c && (a, c) != (0, 1))
            .collect();
        assert_eq!(pt3.free_cells(), expected);
        assert_eq!(expected.len(), 5);

        assert_eq!(pin_forced_cells(4, 0, 1).unwrap().free_cells().len(), 22);
    }

    #[test]
    fn pins_respect_designated_labels() {
        // constants need not sit at indices 0 and 1
        let pt = pin_forced_cells(3, 2, 0).unwrap();
        assert_eq!(pt.get(1, 2, 0), Some(1));
        assert_eq!(pt.get(0, 0, 1), Some(1));
        assert_eq!(pt.free_cells().len(), 5);
    }

    #[test]
    fn bad_carrier_is_rejected() {
        assert!(pin_forced_cells(3, 1, 1).is_err());
        assert!(pin_forced_cells(1, 0, 0).is_err());
    }

    #[test]
    fn conflicting_pin_is_reported() {
        let mut pt = PartialTable::empty(3, 0, 1).unwrap();
        pt.pin(0, 2, 1, 2).unwrap();
        assert_eq!(
            pt.pin(0, 2, 1, 1),
            Err(SearchError::PinConflict {
                triple: (0, 2, 1),
                existing: 2,
                requested: 1
            })
        );
    }

    #[test]
    fn empty_table_is_vacuously_consistent() {
        assert!(c3_consistent(&PartialTable::empty(3, 0, 1).unwrap()));
    }
}
