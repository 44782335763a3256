//! Exhaustive checkers for the equational properties of ternary systems and
//! Boolean algebras.
//!
//! Every property is a universally quantified equation (or a conjunction of
//! equations) over the carrier. Checks enumerate all instantiations in
//! lexicographic order of the quantified variables and report the first
//! failing one. The variable order of each property is given in its doc
//! comment.

use std::fmt;
use std::str::FromStr;

use super::structures::{derive_signature, FiniteBooleanAlgebra, FiniteTernarySystem};
use super::AlgebraError;

/// Identifiers for every checkable property.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum PropertyId {
    /// `p(0,a,1) = a`; vars `(a)`.
    C1,
    /// `p(a,b,a) = a`; vars `(a,b)`.
    C2,
    /// `p(a,p(b1,b2,b3),c) = p(p(a,b1,c),b2,p(a,b3,c))`; vars `(a,b1,b2,b3,c)`.
    C3,
    /// `p(a,0,b) = a = p(b,1,a)`; vars `(a,b)`.
    C4,
    /// `p(a,b,p(c,d,e)) = p(p(a,b,c),d,p(a,b,e))`; vars `(a,b,c,d,e)`.
    A1,
    /// `p(a,b,b) = p(b,b,a) = b`; vars `(a,b)`.
    A2,
    /// `p(a,b,b') = p(b',b,a)` with `b'` the primitive negation; vars `(a,b)`.
    A3,
    /// `p(0,a,1) = a`; vars `(a)`.
    B1,
    /// `p(a,b,a) = a`; vars `(a,b)`.
    B2,
    /// `p(p(a,b,c),d,e) = p(p(a,d,e),b,p(c,d,e))`; vars `(a,b,c,d,e)`.
    B3,
    /// `p(a,b,c) = p(b,a,c) = p(b,c,a)`; vars `(a,b,c)`.
    B4,
    /// Complete commutativity `p(a,b,c) = p(a,c,b) = p(c,a,b)`; vars `(a,b,c)`.
    CC,
    /// `p(a,b,c) = (b' ∧ a) ∨ (b ∧ c)` over the derived signature; vars `(a,b,c)`.
    CondII,
    /// `p(a,a,b) = p(0,a,b)`; vars `(a,b)`.
    CondIII,
    /// `p(b,b,a) = p(0,b,a) = p(0,a,b) = p(a,a,b)`; vars `(a,b)`.
    T4,
    /// `p(0,a,a) = a` and `p(a,a,1) = a`; vars `(a)`.
    Idem,
    /// `a ∧ b = b ∧ a`; vars `(a,b)`.
    CommMeet,
    /// `a ∨ b = b ∨ a`; vars `(a,b)`.
    CommJoin,
    /// `1' = 0` and `0' = 1`; no vars.
    L1,
    /// `a'' = a`; vars `(a)`.
    L2,
    /// `p(c,b,a) = p(a,b',c)`; vars `(a,b,c)`.
    L3,
    /// `p(a,b,c)' = p(a',b,c')`; vars `(a,b,c)`.
    L4,
    /// `p(a,b,c)' = p(c',b',a')`; vars `(a,b,c)`.
    L5,
    /// `(a ∧ b)' = b' ∨ a'` and `(a ∨ b)' = b' ∧ a'`; vars `(a,b)`.
    L6,
    /// `(A, ∧, 1)` is a monoid; vars `(a,b,c)`.
    L7,
    /// `(A, ∨, 0)` is a monoid; vars `(a,b,c)`.
    L8,
    /// `a ∧ 0 = 0 = 0 ∧ a`; vars `(a)`.
    L9,
    /// `a ∨ 1 = 1 = 1 ∨ a`; vars `(a)`.
    L10,
    /// `a ∨ (b ∧ a) = a` and `(b ∧ a) ∨ a = a`; vars `(a,b)`.
    Absorb,
    /// `a' ∧ a = 0`; vars `(a)`.
    Complement,
    /// Bounded distributive complemented lattice laws, see [`BooleanLaw`].
    BA,
    /// `p(0,a,b) = p(0,b,a) = p(a,a,b)`; vars `(a,b)`.
    Concl,
    /// `(b' ∧ a) ∨ (b ∧ c) = b'a + bc` in the derived Boolean ring; vars `(a,b,c)`.
    RingIdent,
    /// `x ∧ a = x2 ∧ a` and `a ∨ x = a ∨ x2` imply `x = x2`; vars `(x,x2,a)`.
    Cancel,
}

/// Which kind of structure a property is stated over.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum SubjectKind {
    Ternary,
    Boolean,
}

impl fmt::Display for SubjectKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SubjectKind::Ternary => "ternary system",
            SubjectKind::Boolean => "Boolean algebra",
        })
    }
}

impl PropertyId {
    pub const ALL: [PropertyId; 34] = [
        PropertyId::C1,
        PropertyId::C2,
        PropertyId::C3,
        PropertyId::C4,
        PropertyId::A1,
        PropertyId::A2,
        PropertyId::A3,
        PropertyId::B1,
        PropertyId::B2,
        PropertyId::B3,
        PropertyId::B4,
        PropertyId::CC,
        PropertyId::CondII,
        PropertyId::CondIII,
        PropertyId::T4,
        PropertyId::Idem,
        PropertyId::CommMeet,
        PropertyId::CommJoin,
        PropertyId::L1,
        PropertyId::L2,
        PropertyId::L3,
        PropertyId::L4,
        PropertyId::L5,
        PropertyId::L6,
        PropertyId::L7,
        PropertyId::L8,
        PropertyId::L9,
        PropertyId::L10,
        PropertyId::Absorb,
        PropertyId::Complement,
        PropertyId::BA,
        PropertyId::Concl,
        PropertyId::RingIdent,
        PropertyId::Cancel,
    ];

    pub const C_AXIOMS: [PropertyId; 4] = [
        PropertyId::C1,
        PropertyId::C2,
        PropertyId::C3,
        PropertyId::C4,
    ];
    pub const A_AXIOMS: [PropertyId; 3] = [PropertyId::A1, PropertyId::A2, PropertyId::A3];
    pub const B_AXIOMS: [PropertyId; 4] = [
        PropertyId::B1,
        PropertyId::B2,
        PropertyId::B3,
        PropertyId::B4,
    ];
    pub const LEMMA1: [PropertyId; 10] = [
        PropertyId::L1,
        PropertyId::L2,
        PropertyId::L3,
        PropertyId::L4,
        PropertyId::L5,
        PropertyId::L6,
        PropertyId::L7,
        PropertyId::L8,
        PropertyId::L9,
        PropertyId::L10,
    ];

    pub fn name(self) -> &'static str {
        use PropertyId::*;
        match self {
            C1 => "C1",
            C2 => "C2",
            C3 => "C3",
            C4 => "C4",
            A1 => "A1",
            A2 => "A2",
            A3 => "A3",
            B1 => "B1",
            B2 => "B2",
            B3 => "B3",
            B4 => "B4",
            CC => "CC",
            CondII => "COND_II",
            CondIII => "COND_III",
            T4 => "T4",
            Idem => "IDEM",
            CommMeet => "COMM_MEET",
            CommJoin => "COMM_JOIN",
            L1 => "L1",
            L2 => "L2",
            L3 => "L3",
            L4 => "L4",
            L5 => "L5",
            L6 => "L6",
            L7 => "L7",
            L8 => "L8",
            L9 => "L9",
            L10 => "L10",
            Absorb => "ABSORB",
            Complement => "COMPLEMENT",
            BA => "BA",
            Concl => "CONCL",
            RingIdent => "RING_IDENT",
            Cancel => "CANCEL",
        }
    }

    pub fn subject_kind(self) -> SubjectKind {
        match self {
            PropertyId::BA | PropertyId::RingIdent | PropertyId::Cancel => SubjectKind::Boolean,
            _ => SubjectKind::Ternary,
        }
    }
}

impl fmt::Display for PropertyId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for PropertyId {
    type Err = AlgebraError;

    /// Case-insensitive match on [`PropertyId::name`].
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        PropertyId::ALL
            .into_iter()
            .find(|p| p.name().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| AlgebraError::UnknownProperty(s.to_string()))
    }
}

/// The individual laws making up [`PropertyId::BA`], in checking order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum BooleanLaw {
    MeetCommutative,
    JoinCommutative,
    MeetAssociative,
    JoinAssociative,
    MeetAbsorption,
    JoinAbsorption,
    MeetDistributive,
    JoinDistributive,
    MeetBottom,
    JoinTop,
    MeetTop,
    JoinBottom,
    MeetComplement,
    JoinComplement,
}

impl BooleanLaw {
    pub const ALL: [BooleanLaw; 14] = [
        BooleanLaw::MeetCommutative,
        BooleanLaw::JoinCommutative,
        BooleanLaw::MeetAssociative,
        BooleanLaw::JoinAssociative,
        BooleanLaw::MeetAbsorption,
        BooleanLaw::JoinAbsorption,
        BooleanLaw::MeetDistributive,
        BooleanLaw::JoinDistributive,
        BooleanLaw::MeetBottom,
        BooleanLaw::JoinTop,
        BooleanLaw::MeetTop,
        BooleanLaw::JoinBottom,
        BooleanLaw::MeetComplement,
        BooleanLaw::JoinComplement,
    ];

    pub fn name(self) -> &'static str {
        use BooleanLaw::*;
        match self {
            MeetCommutative => "meet-commutative",
            JoinCommutative => "join-commutative",
            MeetAssociative => "meet-associative",
            JoinAssociative => "join-associative",
            MeetAbsorption => "meet-absorption",
            JoinAbsorption => "join-absorption",
            MeetDistributive => "meet-distributive",
            JoinDistributive => "join-distributive",
            MeetBottom => "meet-bottom",
            JoinTop => "join-top",
            MeetTop => "meet-top",
            JoinBottom => "join-bottom",
            MeetComplement => "meet-complement",
            JoinComplement => "join-complement",
        }
    }

    fn arity(self) -> usize {
        use BooleanLaw::*;
        match self {
            MeetCommutative | JoinCommutative | MeetAbsorption | JoinAbsorption => 2,
            MeetAssociative | JoinAssociative | MeetDistributive | JoinDistributive => 3,
            _ => 1,
        }
    }

    fn holds(self, ba: &FiniteBooleanAlgebra, v: &[usize]) -> bool {
        use BooleanLaw::*;
        let (m, j) = (|x, y| ba.meet(x, y), |x, y| ba.join(x, y));
        let (bot, top) = (ba.bottom(), ba.top());
        match self {
            MeetCommutative => m(v[0], v[1]) == m(v[1], v[0]),
            JoinCommutative => j(v[0], v[1]) == j(v[1], v[0]),
            MeetAssociative => m(m(v[0], v[1]), v[2]) == m(v[0], m(v[1], v[2])),
            JoinAssociative => j(j(v[0], v[1]), v[2]) == j(v[0], j(v[1], v[2])),
            MeetAbsorption => m(v[0], j(v[0], v[1])) == v[0],
            JoinAbsorption => j(v[0], m(v[0], v[1])) == v[0],
            MeetDistributive => m(v[0], j(v[1], v[2])) == j(m(v[0], v[1]), m(v[0], v[2])),
            JoinDistributive => j(v[0], m(v[1], v[2])) == m(j(v[0], v[1]), j(v[0], v[2])),
            MeetBottom => m(v[0], bot) == bot,
            JoinTop => j(v[0], top) == top,
            MeetTop => m(v[0], top) == v[0],
            JoinBottom => j(v[0], bot) == v[0],
            MeetComplement => m(v[0], ba.neg(v[0])) == bot,
            JoinComplement => j(v[0], ba.neg(v[0])) == top,
        }
    }
}

impl fmt::Display for BooleanLaw {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Outcome of a property check.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: PropertyId,
    pub holds: bool,
    /// First failing instantiation; `Some` exactly when `holds` is false.
    pub counterexample: Option<Vec<usize>>,
    /// For [`PropertyId::BA`], the first law that failed.
    pub failed_law: Option<BooleanLaw>,
}

impl PropertyReport {
    fn from_search(property: PropertyId, counterexample: Option<Vec<usize>>) -> Self {
        Self {
            property,
            holds: counterexample.is_none(),
            counterexample,
            failed_law: None,
        }
    }
}

impl fmt::Display for PropertyReport {
    /// `PASS C1` or `FAIL CC at (0,0,1)`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.holds {
            return write!(f, "PASS {}", self.property);
        }
        write!(f, "FAIL {}", self.property)?;
        if let Some(law) = self.failed_law {
            write!(f, " ({law})")?;
        }
        if let Some(cx) = &self.counterexample {
            write!(f, " at {}", format_tuple(cx))?;
        }
        Ok(())
    }
}

pub fn format_tuple(values: &[usize]) -> String {
    let parts: Vec<String> = values.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

/// Something a property can be checked on.
#[derive(Clone, Copy, Debug)]
pub enum Subject<'a> {
    Ternary(&'a FiniteTernarySystem),
    Boolean(&'a FiniteBooleanAlgebra),
}

impl Subject<'_> {
    pub fn kind(&self) -> SubjectKind {
        match self {
            Subject::Ternary(_) => SubjectKind::Ternary,
            Subject::Boolean(_) => SubjectKind::Boolean,
        }
    }
}

impl<'a> From<&'a FiniteTernarySystem> for Subject<'a> {
    fn from(sys: &'a FiniteTernarySystem) -> Self {
        Subject::Ternary(sys)
    }
}

impl<'a> From<&'a FiniteBooleanAlgebra> for Subject<'a> {
    fn from(ba: &'a FiniteBooleanAlgebra) -> Self {
        Subject::Boolean(ba)
    }
}

/// First tuple in `{0..n-1}^arity` (lexicographic) where `holds` is false.
pub(crate) fn first_failure(
    n: usize,
    arity: usize,
    mut holds: impl FnMut(&[usize]) -> bool,
) -> Option<Vec<usize>> {
    let mut v = vec![0; arity];
    loop {
        if !holds(&v) {
            return Some(v);
        }
        // odometer increment, last variable fastest
        let mut i = arity;
        loop {
            if i == 0 {
                return None;
            }
            i -= 1;
            v[i] += 1;
            if v[i] < n {
                break;
            }
            v[i] = 0;
        }
    }
}

/// Checks `prop` exhaustively on `subject`.
///
/// `aux` supplies a primitive negation for [`PropertyId::A3`]; when absent
/// the derived negation `p(1,a,0)` is used. It is ignored by every other
/// property.
pub fn check_property(
    subject: Subject<'_>,
    prop: PropertyId,
    aux: Option<&[usize]>,
) -> Result<PropertyReport, AlgebraError> {
    if subject.kind() != prop.subject_kind() {
        return Err(AlgebraError::KindMismatch {
            property: prop,
            subject: subject.kind(),
        });
    }
    match subject {
        Subject::Ternary(sys) => check_ternary(sys, prop, aux),
        Subject::Boolean(ba) => Ok(check_boolean(ba, prop)),
    }
}

fn check_ternary(
    sys: &FiniteTernarySystem,
    prop: PropertyId,
    aux: Option<&[usize]>,
) -> Result<PropertyReport, AlgebraError> {
    use PropertyId::*;

    let n = sys.size();
    let sig = derive_signature(sys);
    let (z, o) = (sys.zero(), sys.one());
    let p = |a, b, c| sys.p(a, b, c);
    let neg = |a| sig.neg(a);
    let meet = |a, b| sig.meet(a, b);
    let join = |a, b| sig.join(a, b);

    let primitive_neg: &[usize] = match aux {
        Some(table) => {
            if table.len() != n {
                return Err(AlgebraError::Malformed(format!(
                    "negation table has {} entries, expected {n}",
                    table.len()
                )));
            }
            if let Some(&bad) = table.iter().find(|&&v| v >= n) {
                return Err(AlgebraError::OutOfRange {
                    index: bad,
                    size: n,
                });
            }
            table
        }
        None => &sig.neg,
    };

    let cx = match prop {
        C1 | B1 => first_failure(n, 1, |v| p(z, v[0], o) == v[0]),
        C2 | B2 => first_failure(n, 2, |v| p(v[0], v[1], v[0]) == v[0]),
        C3 => first_failure(n, 5, |v| {
            let [a, b1, b2, b3, c] = [v[0], v[1], v[2], v[3], v[4]];
            p(a, p(b1, b2, b3), c) == p(p(a, b1, c), b2, p(a, b3, c))
        }),
        C4 => first_failure(n, 2, |v| {
            p(v[0], z, v[1]) == v[0] && p(v[1], o, v[0]) == v[0]
        }),
        A1 => first_failure(n, 5, |v| {
            let [a, b, c, d, e] = [v[0], v[1], v[2], v[3], v[4]];
            p(a, b, p(c, d, e)) == p(p(a, b, c), d, p(a, b, e))
        }),
        A2 => first_failure(n, 2, |v| {
            p(v[0], v[1], v[1]) == v[1] && p(v[1], v[1], v[0]) == v[1]
        }),
        A3 => first_failure(n, 2, |v| {
            let nb = primitive_neg[v[1]];
            p(v[0], v[1], nb) == p(nb, v[1], v[0])
        }),
        B3 => first_failure(n, 5, |v| {
            let [a, b, c, d, e] = [v[0], v[1], v[2], v[3], v[4]];
            p(p(a, b, c), d, e) == p(p(a, d, e), b, p(c, d, e))
        }),
        B4 => first_failure(n, 3, |v| {
            let x = p(v[0], v[1], v[2]);
            x == p(v[1], v[0], v[2]) && x == p(v[1], v[2], v[0])
        }),
        CC => first_failure(n, 3, |v| {
            let x = p(v[0], v[1], v[2]);
            x == p(v[0], v[2], v[1]) && x == p(v[2], v[0], v[1])
        }),
        CondII => first_failure(n, 3, |v| {
            let [a, b, c] = [v[0], v[1], v[2]];
            p(a, b, c) == join(meet(neg(b), a), meet(b, c))
        }),
        CondIII => first_failure(n, 2, |v| p(v[0], v[0], v[1]) == p(z, v[0], v[1])),
        T4 => first_failure(n, 2, |v| {
            let [a, b] = [v[0], v[1]];
            let x = p(b, b, a);
            x == p(z, b, a) && x == p(z, a, b) && x == p(a, a, b)
        }),
        Idem => first_failure(n, 1, |v| {
            p(z, v[0], v[0]) == v[0] && p(v[0], v[0], o) == v[0]
        }),
        CommMeet => first_failure(n, 2, |v| meet(v[0], v[1]) == meet(v[1], v[0])),
        CommJoin => first_failure(n, 2, |v| join(v[0], v[1]) == join(v[1], v[0])),
        L1 => first_failure(n, 0, |_| neg(o) == z && neg(z) == o),
        L2 => first_failure(n, 1, |v| neg(neg(v[0])) == v[0]),
        L3 => first_failure(n, 3, |v| p(v[2], v[1], v[0]) == p(v[0], neg(v[1]), v[2])),
        L4 => first_failure(n, 3, |v| {
            neg(p(v[0], v[1], v[2])) == p(neg(v[0]), v[1], neg(v[2]))
        }),
        L5 => first_failure(n, 3, |v| {
            neg(p(v[0], v[1], v[2])) == p(neg(v[2]), neg(v[1]), neg(v[0]))
        }),
        L6 => first_failure(n, 2, |v| {
            let [a, b] = [v[0], v[1]];
            neg(meet(a, b)) == join(neg(b), neg(a)) && neg(join(a, b)) == meet(neg(b), neg(a))
        }),
        L7 => first_failure(n, 3, |v| {
            let [a, b, c] = [v[0], v[1], v[2]];
            meet(meet(a, b), c) == meet(a, meet(b, c)) && meet(a, o) == a && meet(o, a) == a
        }),
        L8 => first_failure(n, 3, |v| {
            let [a, b, c] = [v[0], v[1], v[2]];
            join(join(a, b), c) == join(a, join(b, c)) && join(a, z) == a && join(z, a) == a
        }),
        L9 => first_failure(n, 1, |v| meet(v[0], z) == z && meet(z, v[0]) == z),
        L10 => first_failure(n, 1, |v| join(v[0], o) == o && join(o, v[0]) == o),
        Absorb => first_failure(n, 2, |v| {
            let [a, b] = [v[0], v[1]];
            join(a, meet(b, a)) == a && join(meet(b, a), a) == a
        }),
        Complement => first_failure(n, 1, |v| meet(neg(v[0]), v[0]) == z),
        Concl => first_failure(n, 2, |v| {
            let [a, b] = [v[0], v[1]];
            let x = p(z, a, b);
            x == p(z, b, a) && x == p(a, a, b)
        }),
        BA | RingIdent | Cancel => unreachable!("Boolean-side property routed to ternary checker"),
    };
    Ok(PropertyReport::from_search(prop, cx))
}

fn check_boolean(ba: &FiniteBooleanAlgebra, prop: PropertyId) -> PropertyReport {
    let n = ba.size();
    let meet = |a, b| ba.meet(a, b);
    let join = |a, b| ba.join(a, b);
    match prop {
        PropertyId::BA => {
            for law in BooleanLaw::ALL {
                let report = check_law(ba, law);
                if !report.holds {
                    return report;
                }
            }
            PropertyReport::from_search(PropertyId::BA, None)
        }
        PropertyId::RingIdent => {
            let (add, mul) = super::convert::ring_tables(ba);
            let add = |a: usize, b: usize| add[a * n + b];
            let mul = |a: usize, b: usize| mul[a * n + b];
            let cx = first_failure(n, 3, |v| {
                let [a, b, c] = [v[0], v[1], v[2]];
                let nb = ba.neg(b);
                join(meet(nb, a), meet(b, c)) == add(mul(nb, a), mul(b, c))
            });
            PropertyReport::from_search(prop, cx)
        }
        PropertyId::Cancel => {
            let cx = first_failure(n, 3, |v| {
                let [x, x2, a] = [v[0], v[1], v[2]];
                let premise = meet(x, a) == meet(x2, a) && join(a, x) == join(a, x2);
                !premise || x == x2
            });
            PropertyReport::from_search(prop, cx)
        }
        _ => unreachable!("ternary-side property routed to Boolean checker"),
    }
}

/// Checks a single Boolean-algebra law; the report is tagged
/// [`PropertyId::BA`] with `failed_law` set on failure.
pub fn check_law(ba: &FiniteBooleanAlgebra, law: BooleanLaw) -> PropertyReport {
    let cx = first_failure(ba.size(), law.arity(), |v| law.holds(ba, v));
    PropertyReport {
        property: PropertyId::BA,
        holds: cx.is_none(),
        failed_law: cx.as_ref().map(|_| law),
        counterexample: cx,
    }
}
