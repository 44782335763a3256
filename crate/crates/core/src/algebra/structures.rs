//! Finite carriers with explicit operation tables.

use super::AlgebraError;

/// A ternary operation on `{0..n-1}` together with two designated constants.
///
/// The table is stored flat: the value of `p(a, b, c)` lives at
/// `(a * n + b) * n + c`, so iterating the table visits triples in
/// lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteTernarySystem {
    size: usize,
    zero: usize,
    one: usize,
    table: Vec<usize>,
}

impl FiniteTernarySystem {
    pub fn new(
        size: usize,
        zero: usize,
        one: usize,
        table: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        check_header(size, zero, one)?;
        if table.len() != size * size * size {
            return Err(AlgebraError::Malformed(format!(
                "ternary table has {} cells, expected {}",
                table.len(),
                size * size * size
            )));
        }
        if let Some(&bad) = table.iter().find(|&&v| v >= size) {
            return Err(AlgebraError::OutOfRange { index: bad, size });
        }
        Ok(Self {
            size,
            zero,
            one,
            table,
        })
    }

    /// Builds a system by evaluating `f` on every triple.
    pub fn from_fn(
        size: usize,
        zero: usize,
        one: usize,
        mut f: impl FnMut(usize, usize, usize) -> usize,
    ) -> Result<Self, AlgebraError> {
        let mut table = Vec::with_capacity(size * size * size);
        for a in 0..size {
            for b in 0..size {
                for c in 0..size {
                    table.push(f(a, b, c));
                }
            }
        }
        Self::new(size, zero, one, table)
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

    /// The flattened table in lexicographic triple order.
    pub fn table(&self) -> &[usize] {
        &self.table
    }

    /// Unchecked lookup. Panics on out-of-range arguments; use [`eval_p`]
    /// for a fallible version.
    #[inline]
    pub fn p(&self, a: usize, b: usize, c: usize) -> usize {
        self.table[(a * self.size + b) * self.size + c]
    }
}

/// A finite Boolean-algebra candidate: meet, join and negation tables with a
/// designated bottom and top. Nothing about the laws is assumed.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct FiniteBooleanAlgebra {
    size: usize,
    bottom: usize,
    top: usize,
    meet: Vec<usize>,
    join: Vec<usize>,
    neg: Vec<usize>,
}

impl FiniteBooleanAlgebra {
    pub fn new(
        size: usize,
        bottom: usize,
        top: usize,
        meet: Vec<usize>,
        join: Vec<usize>,
        neg: Vec<usize>,
    ) -> Result<Self, AlgebraError> {
        check_header(size, bottom, top)?;
        for (name, table, len) in [
            ("meet", &meet, size * size),
            ("join", &join, size * size),
            ("neg", &neg, size),
        ] {
            if table.len() != len {
                return Err(AlgebraError::Malformed(format!(
                    "{name} table has {} cells, expected {len}",
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= size) {
                return Err(AlgebraError::OutOfRange { index: bad, size });
            }
        }
        Ok(Self {
            size,
            bottom,
            top,
            meet,
            join,
            neg,
        })
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn bottom(&self) -> usize {
        self.bottom
    }

    pub fn top(&self) -> usize {
        self.top
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }

    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    pub fn meet_table(&self) -> &[usize] {
        &self.meet
    }

    pub fn join_table(&self) -> &[usize] {
        &self.join
    }

    pub fn neg_table(&self) -> &[usize] {
        &self.neg
    }
}

fn check_header(size: usize, zero: usize, one: usize) -> Result<(), AlgebraError> {
    if size < 2 {
        return Err(AlgebraError::Malformed(format!(
            "carrier size {size} is below 2"
        )));
    }
    for index in [zero, one] {
        if index >= size {
            return Err(AlgebraError::OutOfRange { index, size });
        }
    }
    if zero == one {
        return Err(AlgebraError::Malformed(format!(
            "designated constants coincide (both {zero})"
        )));
    }
    Ok(())
}

/// Negation, meet and join read off a ternary system:
/// `neg a = p(1,a,0)`, `a ∧ b = p(0,a,b)`, `a ∨ b = p(a,b,1)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DerivedSignature {
    size: usize,
    pub neg: Vec<usize>,
    pub meet: Vec<usize>,
    pub join: Vec<usize>,
}

impl DerivedSignature {
    #[inline]
    pub fn neg(&self, a: usize) -> usize {
        self.neg[a]
    }

    #[inline]
    pub fn meet(&self, a: usize, b: usize) -> usize {
        self.meet[a * self.size + b]
    }

    #[inline]
    pub fn join(&self, a: usize, b: usize) -> usize {
        self.join[a * self.size + b]
    }
}

/// Range-checked table lookup.
pub fn eval_p(
    sys: &FiniteTernarySystem,
    a: usize,
    b: usize,
    c: usize,
) -> Result<usize, AlgebraError> {
    for index in [a, b, c] {
        if index >= sys.size {
            return Err(AlgebraError::OutOfRange {
                index,
                size: sys.size,
            });
        }
    }
    Ok(sys.p(a, b, c))
}

pub fn derive_signature(sys: &FiniteTernarySystem) -> DerivedSignature {
    let n = sys.size;
    let (zero, one) = (sys.zero, sys.one);
    let neg = (0..n).map(|a| sys.p(one, a, zero)).collect();
    let mut meet = Vec::with_capacity(n * n);
    let mut join = Vec::with_capacity(n * n);
    for a in 0..n {
        for b in 0..n {
            meet.push(sys.p(zero, a, b));
            join.push(sys.p(a, b, one));
        }
    }
    DerivedSignature {
        size: n,
        neg,
        meet,
        join,
    }
}

/// The candidate Boolean algebra carried by the derived signature, with
/// `bottom = zero` and `top = one`. The result is not validated.
pub fn boolean_from_ternary(sys: &FiniteTernarySystem) -> FiniteBooleanAlgebra {
    let sig = derive_signature(sys);
    FiniteBooleanAlgebra {
        size: sys.size,
        bottom: sys.zero,
        top: sys.one,
        meet: sig.meet,
        join: sig.join,
        neg: sig.neg,
    }
}

/// The power-set algebra of a `k`-element set, `1 <= k <= 4`.
///
/// Elements are bit masks, except that the full mask and mask `1` trade
/// places so that the top element sits at index 1 (bottom is mask 0).
pub fn power_set_algebra(k: u32) -> Result<FiniteBooleanAlgebra, AlgebraError> {
    if !(1..=4).contains(&k) {
        return Err(AlgebraError::ExponentOutOfRange(k));
    }
    let n = 1usize << k;
    let full = n - 1;
    // relabeling is an involution, so the same map converts both ways
    let relabel = |x: usize| match x {
        x if x == full => 1,
        1 => full,
        x => x,
    };
    let mut meet = vec![0; n * n];
    let mut join = vec![0; n * n];
    let mut neg = vec![0; n];
    for a in 0..n {
        let ma = relabel(a);
        neg[a] = relabel(!ma & full);
        for b in 0..n {
            let mb = relabel(b);
            meet[a * n + b] = relabel(ma & mb);
            join[a * n + b] = relabel(ma | mb);
        }
    }
    FiniteBooleanAlgebra::new(n, 0, 1, meet, join, neg)
}

/// Lexicographically first triple at which the two tables differ.
pub fn compare_tables(
    t1: &FiniteTernarySystem,
    t2: &FiniteTernarySystem,
) -> Result<Option<(usize, usize, usize)>, AlgebraError> {
    if t1.size != t2.size {
        return Err(AlgebraError::SizeMismatch(t1.size, t2.size));
    }
    let n = t1.size;
    Ok(t1
        .table
        .iter()
        .zip(&t2.table)
        .position(|(x, y)| x != y)
        .map(|i| (i / (n * n), (i / n) % n, i % n)))
}
