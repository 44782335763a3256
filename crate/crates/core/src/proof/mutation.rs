//! Single-step mutation of proof scripts.

use std::fmt;

use super::rules::Theory;
use super::script::{check_script, dependency_order, ProofScript};
use super::term::Term;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum MutationKind {
    RuleName,
    ResultTerm,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Mutant {
    pub script: String,
    /// 1-based, counted across chains.
    pub step: usize,
    pub kind: MutationKind,
    pub replacement: String,
    pub mutated: ProofScript,
}

impl fmt::Display for Mutant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let what = match self.kind {
            MutationKind::RuleName => "rule",
            MutationKind::ResultTerm => "result",
        };
        write!(
            f,
            "{} step {}: {what} -> {}",
            self.script, self.step, self.replacement
        )
    }
}

/// Two mutants per step: the cited rule replaced by the next different name
/// in the script's scope list, and the result term with its first constant
/// flipped (or, lacking constants, its first variable renamed).
pub fn mutants(script: &ProofScript) -> Vec<Mutant> {
    let scope = script.scope_names();
    let mut out = Vec::new();
    for step in 1..=script.step_count() {
        let original = script.steps().nth(step - 1).expect("step in range");

        let rule = match scope.iter().position(|n| *n == original.rule) {
            Some(i) if scope.len() > 1 => scope[(i + 1) % scope.len()].clone(),
            _ => format!("{}'", original.rule),
        };
        let mut mutated = script.clone();
        mutated.step_mut(step - 1).unwrap().rule = rule.clone();
        out.push(Mutant {
            script: script.name.clone(),
            step,
            kind: MutationKind::RuleName,
            replacement: rule,
            mutated,
        });

        let term = mutate_term(&original.result);
        let mut mutated = script.clone();
        mutated.step_mut(step - 1).unwrap().result = term.clone();
        out.push(Mutant {
            script: script.name.clone(),
            step,
            kind: MutationKind::ResultTerm,
            replacement: term.to_string(),
            mutated,
        });
    }
    out
}

fn mutate_term(term: &Term) -> Term {
    let mut t = term.clone();
    if !flip_first_constant(&mut t) {
        let fresh = fresh_variable(term);
        rename_first_variable(&mut t, &fresh);
    }
    t
}

fn flip_first_constant(t: &mut Term) -> bool {
    match t {
        Term::Zero => {
            *t = Term::One;
            true
        }
        Term::One => {
            *t = Term::Zero;
            true
        }
        Term::Var(_) => false,
        Term::App(_, args) => args.iter_mut().any(flip_first_constant),
    }
}

fn rename_first_variable(t: &mut Term, fresh: &str) -> bool {
    match t {
        Term::Var(v) => {
            *v = fresh.to_string();
            true
        }
        Term::Zero | Term::One => false,
        Term::App(_, args) => args.iter_mut().any(|a| rename_first_variable(a, fresh)),
    }
}

fn fresh_variable(t: &Term) -> String {
    let used = t.variables();
    (0..)
        .map(|i| format!("z{i}"))
        .find(|v| !used.contains(v.as_str()))
        .expect("unbounded supply")
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct MutationSummary {
    pub total: usize,
    pub rejected: usize,
    pub survivors: Vec<Mutant>,
}

impl MutationSummary {
    pub fn all_rejected(&self) -> bool {
        self.total == self.rejected
    }
}

/// Checks every mutant of every script against the theory as it stands
/// just before that script is verified. Scripts that do not verify
/// themselves contribute no mutants.
pub fn mutation_pass(scripts: &[ProofScript], base: &Theory) -> MutationSummary {
    let mut env = base.clone();
    let mut summary = MutationSummary::default();
    let (order, _cyclic) = dependency_order(scripts);
    for i in order {
        let snapshot = env.clone();
        if !check_script(&scripts[i], &mut env).verified() {
            continue;
        }
        for m in mutants(&scripts[i]) {
            summary.total += 1;
            if check_script(&m.mutated, &mut snapshot.clone()).verified() {
                summary.survivors.push(m);
            } else {
                summary.rejected += 1;
            }
        }
    }
    summary
}
