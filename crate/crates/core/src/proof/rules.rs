use std::collections::BTreeMap;
use std::fmt;

use super::term::{match_term, parse_term, Substitution, Term};

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Self {
        Self { lhs, rhs }
    }

    /// Parses `lhs = rhs`.
    pub fn parse(text: &str) -> Result<Self, String> {
        let (l, r) = text
            .split_once('=')
            .ok_or_else(|| format!("expected `lhs = rhs`, got `{text}`"))?;
        let lhs = parse_term(l).map_err(|e| e.to_string())?;
        let rhs = parse_term(r).map_err(|e| e.to_string())?;
        Ok(Self { lhs, rhs })
    }
}

impl fmt::Display for Equation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} = {}", self.lhs, self.rhs)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RuleKind {
    Axiom,
    Definition,
    Hypothesis,
    Lemma,
}

impl fmt::Display for RuleKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RuleKind::Axiom => "axiom",
            RuleKind::Definition => "definition",
            RuleKind::Hypothesis => "hypothesis",
            RuleKind::Lemma => "lemma",
        })
    }
}

/// A named equation, usable in either direction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RewriteRule {
    pub name: String,
    pub lhs: Term,
    pub rhs: Term,
    pub kind: RuleKind,
}

impl RewriteRule {
    pub fn new(name: &str, equation: Equation, kind: RuleKind) -> Self {
        Self {
            name: name.to_string(),
            lhs: equation.lhs,
            rhs: equation.rhs,
            kind,
        }
    }

    pub fn equation(&self) -> Equation {
        Equation::new(self.lhs.clone(), self.rhs.clone())
    }
}

/// Result of checking one proof step.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StepVerdict {
    /// The rule rewrites at `position` (a child-index path); `reversed` when
    /// it was applied right to left.
    Valid {
        position: Vec<usize>,
        reversed: bool,
    },
    Invalid {
        diagnostic: String,
    },
}

impl StepVerdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, StepVerdict::Valid { .. })
    }
}

/// Whether `next` is `prev` with one occurrence of an instance of the rule's
/// left side replaced by the same instance of its right side, or vice versa.
///
/// The substitution is found by matching both sides at once: the rewritten
/// side against the subterm of `prev` and the replacement side against the
/// subterm of `next`, so a variable occurring on one side only is bound by
/// whatever the step introduces.
pub fn check_step(prev: &Term, next: &Term, rule: &RewriteRule) -> StepVerdict {
    for (from, to, reversed) in [(&rule.lhs, &rule.rhs, false), (&rule.rhs, &rule.lhs, true)] {
        let mut path = Vec::new();
        if find_rewrite(prev, next, from, to, &mut path) {
            return StepVerdict::Valid {
                position: path,
                reversed,
            };
        }
    }
    StepVerdict::Invalid {
        diagnostic: format!(
            "no single application of {} ({} = {}) rewrites {prev} to {next}",
            rule.name, rule.lhs, rule.rhs
        ),
    }
}

fn find_rewrite(prev: &Term, next: &Term, from: &Term, to: &Term, path: &mut Vec<usize>) -> bool {
    let mut subst = Substitution::new();
    if match_term(from, prev, &mut subst) && match_term(to, next, &mut subst) {
        return true;
    }
    let (Term::App(f, xs), Term::App(g, ys)) = (prev, next) else {
        return false;
    };
    if f != g || xs.len() != ys.len() {
        return false;
    }
    let differing: Vec<usize> = (0..xs.len()).filter(|&i| xs[i] != ys[i]).collect();
    let candidates = match differing.len() {
        0 => (0..xs.len()).collect(),
        1 => differing,
        _ => return false,
    };
    for i in candidates {
        path.push(i);
        if find_rewrite(&xs[i], &ys[i], from, to, path) {
            return true;
        }
        path.pop();
    }
    false
}

/// A registered rule: one or more equations under a single name.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RuleEntry {
    pub kind: RuleKind,
    pub equations: Vec<Equation>,
    /// Hypotheses a lemma was proved under, by name.
    pub hypotheses: BTreeMap<String, Equation>,
}

/// The rule store scripts are checked against: axioms, definitions and
/// proven lemmas, plus hypothesis templates that become usable only when a
/// script declares them.
#[derive(Clone, Debug, Default)]
pub struct Theory {
    rules: BTreeMap<String, RuleEntry>,
    templates: BTreeMap<String, Equation>,
}

impl Theory {
    pub fn get(&self, name: &str) -> Option<&RuleEntry> {
        self.rules.get(name)
    }

    pub fn template(&self, name: &str) -> Option<&Equation> {
        self.templates.get(name)
    }

    pub fn templates(&self) -> impl Iterator<Item = (&str, &Equation)> {
        self.templates.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn rules(&self) -> impl Iterator<Item = (&str, &RuleEntry)> {
        self.rules.iter().map(|(k, v)| (k.as_str(), v))
    }

    pub fn contains(&self, name: &str) -> bool {
        self.rules.contains_key(name)
    }

    pub fn lemmas(&self) -> impl Iterator<Item = (&str, &RuleEntry)> {
        self.rules().filter(|(_, e)| e.kind == RuleKind::Lemma)
    }

    pub(crate) fn insert(&mut self, name: &str, entry: RuleEntry) {
        self.rules.insert(name.to_string(), entry);
    }

    fn add_base(&mut self, name: &str, kind: RuleKind, equation: &str) {
        let eq = Equation::parse(equation).expect("builtin equation parses");
        self.insert(
            name,
            RuleEntry {
                kind,
                equations: vec![eq],
                hypotheses: BTreeMap::new(),
            },
        );
    }
}

/// The base theory: the four axioms (the last split in two), the three
/// definitions, and the hypothesis templates.
pub fn builtin_theory() -> Theory {
    let mut t = Theory::default();
    t.add_base("C1", RuleKind::Axiom, "p(0,a,1) = a");
    t.add_base("C2", RuleKind::Axiom, "p(a,b,a) = a");
    t.add_base(
        "C3",
        RuleKind::Axiom,
        "p(a,p(b1,b2,b3),c) = p(p(a,b1,c),b2,p(a,b3,c))",
    );
    t.add_base("C4a", RuleKind::Axiom, "p(a,0,b) = a");
    t.add_base("C4b", RuleKind::Axiom, "p(b,1,a) = a");
    t.add_base("def-bar", RuleKind::Definition, "bar(a) = p(1,a,0)");
    t.add_base("def-meet", RuleKind::Definition, "meet(a,b) = p(0,a,b)");
    t.add_base("def-join", RuleKind::Definition, "join(a,b) = p(a,b,1)");
    for (name, eq) in [
        ("COMM_MEET", "meet(a,b) = meet(b,a)"),
        ("COMM_JOIN", "join(a,b) = join(b,a)"),
        ("IDEM_MEET", "p(0,a,a) = a"),
        ("IDEM_JOIN", "p(a,a,1) = a"),
        ("COND_II", "p(a,b,c) = join(meet(bar(b),a),meet(b,c))"),
        ("COND_III", "p(a,a,b) = p(0,a,b)"),
        ("T4", "p(a,a,b) = p(0,b,a)"),
    ] {
        t.templates.insert(
            name.to_string(),
            Equation::parse(eq).expect("template parses"),
        );
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rule(theory: &Theory, name: &str) -> RewriteRule {
        let entry = theory.get(name).unwrap();
        RewriteRule::new(name, entry.equations[0].clone(), entry.kind)
    }

    fn t(s: &str) -> Term {
        parse_term(s).unwrap()
    }

    #[test]
    fn base_theory_shape() {
        let th = builtin_theory();
        assert_eq!(th.rules().count(), 8);
        assert!(th.contains("C4a") && th.contains("C4b") && !th.contains("C4"));
        assert_eq!(th.templates().count(), 7);
        assert!(!th.contains("COMM_MEET"));
        assert_eq!(th.lemmas().count(), 0);
    }

    #[test]
    fn one_step_with_c4b() {
        let th = builtin_theory();
        let v = check_step(&t("p(1,1,0)"), &t("0"), &rule(&th, "C4b"));
        assert_eq!(
            v,
            StepVerdict::Valid {
                position: vec![],
                reversed: false
            }
        );
    }

    #[test]
    fn one_step_with_c3_inside_context() {
        let th = builtin_theory();
        let v = check_step(
            &t("p(1,p(1,a,0),0)"),
            &t("p(p(1,1,0),a,p(1,0,0))"),
            &rule(&th, "C3"),
        );
        assert!(v.is_valid());
        let v = check_step(
            &t("bar(p(1,p(1,a,0),0))"),
            &t("bar(p(p(1,1,0),a,p(1,0,0)))"),
            &rule(&th, "C3"),
        );
        assert_eq!(
            v,
            StepVerdict::Valid {
                position: vec![0],
                reversed: false
            }
        );
    }

    #[test]
    fn mismatched_step_is_rejected() {
        let th = builtin_theory();
        let v = check_step(&t("p(0,a,1)"), &t("1"), &rule(&th, "C1"));
        assert!(!v.is_valid());
    }

    #[test]
    fn reverse_application_may_introduce_variables() {
        // a step introducing p(0,1,c) for c uses p(b,1,a) = a right to left
        let th = builtin_theory();
        let v = check_step(&t("p(x,b,c)"), &t("p(x,b,p(0,1,c))"), &rule(&th, "C4b"));
        assert_eq!(
            v,
            StepVerdict::Valid {
                position: vec![2],
                reversed: true
            }
        );
    }

    #[test]
    fn two_rewrites_in_one_step_are_rejected() {
        let th = builtin_theory();
        let v = check_step(
            &t("p(p(1,1,0),a,p(1,0,0))"),
            &t("p(0,a,1)"),
            &rule(&th, "C4b"),
        );
        assert!(!v.is_valid());
    }

    #[test]
    fn rewriting_inside_identical_terms() {
        // a rewrite whose two sides coincide leaves the term unchanged
        let comm = RewriteRule::new(
            "comm",
            Equation::parse("meet(a,b) = meet(b,a)").unwrap(),
            RuleKind::Hypothesis,
        );
        assert!(check_step(&t("bar(meet(x,x))"), &t("bar(meet(x,x))"), &comm).is_valid());
        assert!(!check_step(&t("bar(meet(x,y))"), &t("bar(meet(x,y))"), &comm).is_valid());
    }
}
