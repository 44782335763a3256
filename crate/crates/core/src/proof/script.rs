//! Proof scripts: parsing, printing and replay.
//!
//! ```text
//! script L2
//! use def-bar
//! use C3
//! goal bar(bar(a)) = a
//! start bar(bar(a))
//! step def-bar p(1,bar(a),0)
//! ...
//! qed
//! ```
//!
//! A script has one goal proved by one chain running from one side to the
//! other, one goal proved by two chains that start from the two sides and
//! end on the same term, or two goals (the second written after `chain`)
//! proved by one chain each.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

use super::rules::{check_step, Equation, RewriteRule, RuleEntry, RuleKind, StepVerdict, Theory};
use super::term::{parse_term, Term};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Step {
    pub rule: String,
    pub result: Term,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Chain {
    pub start: Term,
    pub steps: Vec<Step>,
}

impl Chain {
    pub fn end(&self) -> &Term {
        self.steps.last().map_or(&self.start, |s| &s.result)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ProofScript {
    pub name: String,
    pub uses: Vec<String>,
    pub assumptions: Vec<(String, Equation)>,
    pub goals: Vec<Equation>,
    pub chains: Vec<Chain>,
}

impl ProofScript {
    pub fn step_count(&self) -> usize {
        self.chains.iter().map(|c| c.steps.len()).sum()
    }

    /// Names a step may cite: `use` entries, then assumption names.
    pub fn scope_names(&self) -> Vec<String> {
        let mut names = self.uses.clone();
        for (name, _) in &self.assumptions {
            if !names.contains(name) {
                names.push(name.clone());
            }
        }
        names
    }

    pub fn steps(&self) -> impl Iterator<Item = &Step> {
        self.chains.iter().flat_map(|c| c.steps.iter())
    }

    /// Mutable access to the `index`-th step counted across chains.
    pub fn step_mut(&mut self, index: usize) -> Option<&mut Step> {
        self.chains
            .iter_mut()
            .flat_map(|c| c.steps.iter_mut())
            .nth(index)
    }
}

impl fmt::Display for ProofScript {
    /// The canonical text form; parses back to the same script.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "script {}", self.name)?;
        for u in &self.uses {
            writeln!(f, "use {u}")?;
        }
        for (name, eq) in &self.assumptions {
            writeln!(f, "assume {name}: {eq}")?;
        }
        for (i, chain) in self.chains.iter().enumerate() {
            if i > 0 {
                writeln!(f, "chain")?;
            }
            if let Some(goal) = self.goals.get(i) {
                writeln!(f, "goal {goal}")?;
            }
            writeln!(f, "start {}", chain.start)?;
            for step in &chain.steps {
                writeln!(f, "step {} {}", step.rule, step.result)?;
            }
        }
        writeln!(f, "qed")
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ScriptParseError {
    pub line: usize,
    pub message: String,
}

#[derive(Default)]
struct Draft {
    name: String,
    uses: Vec<String>,
    assumptions: Vec<(String, Equation)>,
    goals: Vec<Equation>,
    chains: Vec<Chain>,
    awaiting_start: bool,
}

/// Parses every `script … qed` block in `text`.
pub fn parse_scripts(text: &str) -> Result<Vec<ProofScript>, ScriptParseError> {
    let mut scripts = Vec::new();
    let mut draft: Option<Draft> = None;
    let mut last_line = 0;

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        last_line = line_no;
        let err = |message: String| ScriptParseError {
            line: line_no,
            message,
        };
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (directive, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();

        if directive == "script" {
            if draft.is_some() {
                return Err(err("`script` before `qed` of the previous script".into()));
            }
            if rest.is_empty() || rest.contains(char::is_whitespace) {
                return Err(err("expected `script <name>`".into()));
            }
            draft = Some(Draft {
                name: rest.to_string(),
                awaiting_start: true,
                ..Draft::default()
            });
            continue;
        }
        let Some(d) = draft.as_mut() else {
            return Err(err(format!("`{directive}` outside a script block")));
        };
        let term = |s: &str| parse_term(s).map_err(|e| err(e.to_string()));
        match directive {
            "use" => {
                if rest.is_empty() || rest.contains(char::is_whitespace) {
                    return Err(err("expected `use <rule-name>`".into()));
                }
                d.uses.push(rest.to_string());
            }
            "assume" => {
                let (name, eq) = rest
                    .split_once(':')
                    .ok_or_else(|| err("expected `assume <name>: <lhs> = <rhs>`".into()))?;
                let eq = Equation::parse(eq).map_err(err)?;
                d.assumptions.push((name.trim().to_string(), eq));
            }
            "goal" => {
                if d.goals.len() > d.chains.len()
                    || (d.goals.len() == d.chains.len() && !d.awaiting_start)
                {
                    return Err(err("unexpected `goal`".into()));
                }
                d.goals.push(Equation::parse(rest).map_err(err)?);
            }
            "start" => {
                if !d.awaiting_start {
                    return Err(err("`start` already given for this chain".into()));
                }
                d.chains.push(Chain {
                    start: term(rest)?,
                    steps: Vec::new(),
                });
                d.awaiting_start = false;
            }
            "step" => {
                let (rule, t) = rest
                    .split_once(char::is_whitespace)
                    .ok_or_else(|| err("expected `step <rule-name> <term>`".into()))?;
                let chain = d
                    .chains
                    .last_mut()
                    .filter(|_| !d.awaiting_start)
                    .ok_or_else(|| err("`step` before `start`".into()))?;
                chain.steps.push(Step {
                    rule: rule.to_string(),
                    result: term(t.trim())?,
                });
            }
            "chain" => {
                if d.awaiting_start || d.chains.len() >= 2 {
                    return Err(err("unexpected `chain`".into()));
                }
                d.awaiting_start = true;
            }
            "qed" => {
                let d = draft.take().expect("inside a script");
                if d.awaiting_start {
                    return Err(err("chain without `start`".into()));
                }
                if d.goals.is_empty() {
                    return Err(err("script has no `goal`".into()));
                }
                scripts.push(ProofScript {
                    name: d.name,
                    uses: d.uses,
                    assumptions: d.assumptions,
                    goals: d.goals,
                    chains: d.chains,
                });
            }
            other => return Err(err(format!("unknown directive `{other}`"))),
        }
    }
    if draft.is_some() {
        return Err(ScriptParseError {
            line: last_line,
            message: "missing `qed`".into(),
        });
    }
    Ok(scripts)
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScriptError {
    #[error("unresolved rule `{0}`")]
    UnresolvedRule(String),
    #[error(
        "lemma `{lemma}` depends on hypothesis {hypothesis}, which this script does not assume"
    )]
    MissingHypothesis { lemma: String, hypothesis: String },
    #[error("hypothesis `{0}` shadows a rule of the theory")]
    ShadowedRule(String),
    #[error("`{0}` is already proven")]
    Duplicate(String),
    #[error("chain endpoints do not match the goal: {0}")]
    GoalMismatch(String),
    #[error("cyclic dependency among {}", .0.join(", "))]
    Cyclic(Vec<String>),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Verified {
        steps: usize,
    },
    /// `step` is 1-based, counted across chains.
    StepFailed {
        step: usize,
        diagnostic: String,
    },
    Rejected(ScriptError),
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScriptReport {
    pub name: String,
    pub verdict: Verdict,
}

impl ScriptReport {
    pub fn verified(&self) -> bool {
        matches!(self.verdict, Verdict::Verified { .. })
    }
}

impl fmt::Display for ScriptReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.verdict {
            Verdict::Verified { steps } => {
                write!(
                    f,
                    "{}: VERIFIED ({steps} step{})",
                    self.name,
                    if *steps == 1 { "" } else { "s" }
                )
            }
            Verdict::StepFailed { step, diagnostic } => {
                write!(f, "{}: FAILED at step {step}: {diagnostic}", self.name)
            }
            Verdict::Rejected(e) => write!(f, "{}: REJECTED: {e}", self.name),
        }
    }
}

struct Scope {
    rules: BTreeMap<String, Vec<RewriteRule>>,
    /// Hypotheses each in-scope name brings along when cited.
    brings: BTreeMap<String, BTreeMap<String, Equation>>,
}

fn build_scope(script: &ProofScript, env: &Theory) -> Result<Scope, ScriptError> {
    let mut declared: BTreeMap<String, Equation> = BTreeMap::new();
    for (name, eq) in &script.assumptions {
        if env.contains(name) {
            return Err(ScriptError::ShadowedRule(name.clone()));
        }
        declared.insert(name.clone(), eq.clone());
    }
    for name in &script.uses {
        if !env.contains(name) && !declared.contains_key(name) {
            match env.template(name) {
                Some(eq) => {
                    declared.insert(name.clone(), eq.clone());
                }
                None => return Err(ScriptError::UnresolvedRule(name.clone())),
            }
        }
    }

    let mut scope = Scope {
        rules: BTreeMap::new(),
        brings: BTreeMap::new(),
    };
    for name in &script.uses {
        let Some(entry) = env.get(name) else { continue };
        for (h, eq) in &entry.hypotheses {
            if declared.get(h) != Some(eq) {
                return Err(ScriptError::MissingHypothesis {
                    lemma: name.clone(),
                    hypothesis: format!("{h}: {eq}"),
                });
            }
        }
        let rules = entry
            .equations
            .iter()
            .map(|eq| RewriteRule::new(name, eq.clone(), entry.kind))
            .collect();
        scope.rules.insert(name.clone(), rules);
        scope.brings.insert(name.clone(), entry.hypotheses.clone());
    }
    for (name, eq) in declared {
        scope.rules.insert(
            name.clone(),
            vec![RewriteRule::new(&name, eq.clone(), RuleKind::Hypothesis)],
        );
        scope
            .brings
            .insert(name.clone(), BTreeMap::from([(name, eq)]));
    }
    Ok(scope)
}

fn check_endpoints(script: &ProofScript) -> Result<(), ScriptError> {
    let mismatch = |msg: String| Err(ScriptError::GoalMismatch(msg));
    let proves = |chain: &Chain, goal: &Equation| {
        (chain.start == goal.lhs && *chain.end() == goal.rhs)
            || (chain.start == goal.rhs && *chain.end() == goal.lhs)
    };
    match (script.goals.as_slice(), script.chains.as_slice()) {
        ([goal], [chain]) => {
            if proves(chain, goal) {
                Ok(())
            } else {
                mismatch(format!(
                    "chain runs {} ~> {}, goal is {goal}",
                    chain.start,
                    chain.end()
                ))
            }
        }
        ([goal], [first, second]) => {
            let starts_ok = (first.start == goal.lhs && second.start == goal.rhs)
                || (first.start == goal.rhs && second.start == goal.lhs);
            if !starts_ok {
                mismatch(format!(
                    "chains start at {} and {}, goal is {goal}",
                    first.start, second.start
                ))
            } else if first.end() != second.end() {
                mismatch(format!(
                    "chains end at {} and {}",
                    first.end(),
                    second.end()
                ))
            } else {
                Ok(())
            }
        }
        ([g1, g2], [c1, c2]) => {
            for (i, (chain, goal)) in [(c1, g1), (c2, g2)].into_iter().enumerate() {
                if !proves(chain, goal) {
                    return mismatch(format!(
                        "chain {} runs {} ~> {}, goal is {goal}",
                        i + 1,
                        chain.start,
                        chain.end()
                    ));
                }
            }
            Ok(())
        }
        (goals, chains) => mismatch(format!(
            "{} goal(s) with {} chain(s)",
            goals.len(),
            chains.len()
        )),
    }
}

/// Replays `script` against `env`; on success the goal equations are
/// registered in `env` as a lemma named after the script, together with
/// the hypotheses its steps relied on.
pub fn check_script(script: &ProofScript, env: &mut Theory) -> ScriptReport {
    let report = |verdict| ScriptReport {
        name: script.name.clone(),
        verdict,
    };
    if env.contains(&script.name) {
        return report(Verdict::Rejected(ScriptError::Duplicate(
            script.name.clone(),
        )));
    }
    let scope = match build_scope(script, env) {
        Ok(s) => s,
        Err(e) => return report(Verdict::Rejected(e)),
    };

    let mut used_hypotheses = BTreeMap::new();
    let mut index = 0;
    for chain in &script.chains {
        let mut current = &chain.start;
        for step in &chain.steps {
            index += 1;
            let Some(rules) = scope.rules.get(&step.rule) else {
                return report(Verdict::StepFailed {
                    step: index,
                    diagnostic: format!("rule `{}` is not in scope", step.rule),
                });
            };
            let mut last = None;
            let valid = rules.iter().any(|r| {
                let v = check_step(current, &step.result, r);
                let ok = v.is_valid();
                last = Some(v);
                ok
            });
            if !valid {
                let diagnostic = match last {
                    Some(StepVerdict::Invalid { diagnostic }) if rules.len() == 1 => diagnostic,
                    _ => format!(
                        "no equation of `{}` rewrites {current} to {}",
                        step.rule, step.result
                    ),
                };
                return report(Verdict::StepFailed {
                    step: index,
                    diagnostic,
                });
            }
            used_hypotheses.extend(scope.brings[&step.rule].clone());
            current = &step.result;
        }
    }
    if let Err(e) = check_endpoints(script) {
        return report(Verdict::Rejected(e));
    }

    env.insert(
        &script.name,
        RuleEntry {
            kind: RuleKind::Lemma,
            equations: script.goals.clone(),
            hypotheses: used_hypotheses,
        },
    );
    report(Verdict::Verified {
        steps: script.step_count(),
    })
}

/// Indices of `scripts` in verification order (a script comes after every
/// other script it `use`s, input order breaking ties), followed by the
/// indices left over because they lie on or behind a dependency cycle.
pub fn dependency_order(scripts: &[ProofScript]) -> (Vec<usize>, Vec<usize>) {
    let by_name: BTreeMap<&str, usize> = scripts
        .iter()
        .enumerate()
        .map(|(i, s)| (s.name.as_str(), i))
        .collect();
    let deps: Vec<BTreeSet<usize>> = scripts
        .iter()
        .map(|s| {
            s.uses
                .iter()
                .filter_map(|u| by_name.get(u.as_str()).copied())
                .collect()
        })
        .collect();

    let mut done = vec![false; scripts.len()];
    let mut order = Vec::with_capacity(scripts.len());
    while let Some(next) =
        (0..scripts.len()).find(|&i| !done[i] && deps[i].iter().all(|&d| done[d]))
    {
        done[next] = true;
        order.push(next);
    }
    let stuck = (0..scripts.len()).filter(|&i| !done[i]).collect();
    (order, stuck)
}

/// Verifies `scripts` in dependency order. Scripts on or behind a
/// dependency cycle are rejected without being replayed.
pub fn verify_corpus(scripts: &[ProofScript], env: &mut Theory) -> Vec<ScriptReport> {
    let (order, stuck) = dependency_order(scripts);
    let mut reports: Vec<ScriptReport> = order
        .into_iter()
        .map(|i| check_script(&scripts[i], env))
        .collect();
    let names: Vec<String> = stuck.iter().map(|&i| scripts[i].name.clone()).collect();
    for name in &names {
        reports.push(ScriptReport {
            name: name.clone(),
            verdict: Verdict::Rejected(ScriptError::Cyclic(names.clone())),
        });
    }
    reports
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::proof::builtin_theory;

    const L2: &str = "\
script L2
use def-bar
use C3
use C4a
use C4b
use C1
goal bar(bar(a)) = a
start bar(bar(a))
step def-bar p(1,bar(a),0)
step def-bar p(1,p(1,a,0),0)
step C3 p(p(1,1,0),a,p(1,0,0))
step C4b p(0,a,p(1,0,0))
step C4a p(0,a,1)
step C1 a
qed
";

    fn parse_one(text: &str) -> ProofScript {
        let mut v = parse_scripts(text).unwrap();
        assert_eq!(v.len(), 1);
        v.pop().unwrap()
    }

    #[test]
    fn involution_verifies() {
        let mut env = builtin_theory();
        let report = check_script(&parse_one(L2), &mut env);
        assert_eq!(report.to_string(), "L2: VERIFIED (6 steps)");
        assert_eq!(env.get("L2").unwrap().kind, RuleKind::Lemma);
    }

    #[test]
    fn corrupted_step_is_located() {
        let corrupted = L2.replace("step def-bar p(1,p(1,a,0),0)", "step def-bar p(0,a,0)");
        let report = check_script(&parse_one(&corrupted), &mut builtin_theory());
        assert!(
            matches!(report.verdict, Verdict::StepFailed { step: 2, .. }),
            "{report}"
        );
    }

    #[test]
    fn rule_outside_scope_fails_the_step() {
        let text = L2.replace("step C1 a", "step C2 a");
        let report = check_script(&parse_one(&text), &mut builtin_theory());
        assert!(matches!(
            report.verdict,
            Verdict::StepFailed { step: 6, .. }
        ));
    }

    #[test]
    fn unresolved_use_is_rejected() {
        let text = L2.replace("use C1", "use L77");
        let report = check_script(&parse_one(&text), &mut builtin_theory());
        assert_eq!(
            report.verdict,
            Verdict::Rejected(ScriptError::UnresolvedRule("L77".into()))
        );
    }

    #[test]
    fn wrong_goal_is_rejected() {
        let text = L2.replace("goal bar(bar(a)) = a", "goal bar(bar(b)) = b");
        let report = check_script(&parse_one(&text), &mut builtin_theory());
        assert!(matches!(
            report.verdict,
            Verdict::Rejected(ScriptError::GoalMismatch(_))
        ));
    }

    #[test]
    fn duplicate_names_are_rejected() {
        let mut env = builtin_theory();
        assert!(check_script(&parse_one(L2), &mut env).verified());
        assert_eq!(
            check_script(&parse_one(L2), &mut env).verdict,
            Verdict::Rejected(ScriptError::Duplicate("L2".into()))
        );
    }

    #[test]
    fn hypotheses_must_be_declared() {
        let text = "\
script idem
use def-meet
goal meet(a,a) = a
start meet(a,a)
step def-meet p(0,a,a)
step IDEM_MEET a
qed
";
        let report = check_script(&parse_one(text), &mut builtin_theory());
        assert!(matches!(
            report.verdict,
            Verdict::StepFailed { step: 2, .. }
        ));

        let with_use = text.replace("use def-meet", "use def-meet\nuse IDEM_MEET");
        let mut env = builtin_theory();
        assert!(check_script(&parse_one(&with_use), &mut env).verified());
        assert_eq!(
            env.get("idem")
                .unwrap()
                .hypotheses
                .keys()
                .collect::<Vec<_>>(),
            vec!["IDEM_MEET"]
        );

        // a lemma proved under a hypothesis is only usable where it is assumed too
        let user = "\
script user
use idem
goal meet(0,0) = 0
start meet(0,0)
step idem 0
qed
";
        let report = check_script(&parse_one(user), &mut env);
        assert!(matches!(
            report.verdict,
            Verdict::Rejected(ScriptError::MissingHypothesis { .. })
        ));
        let user = user.replace("use idem", "use idem\nuse IDEM_MEET");
        assert!(check_script(&parse_one(&user), &mut env).verified());
    }

    #[test]
    fn explicit_assumption_must_match_lemma_hypothesis() {
        let mut env = builtin_theory();
        let base = "\
script h
assume H: meet(a,b) = meet(b,a)
goal meet(x,y) = meet(y,x)
start meet(x,y)
step H meet(y,x)
qed
";
        assert!(check_script(&parse_one(base), &mut env).verified());
        let other = "\
script k
use h
assume H: join(a,b) = join(b,a)
goal meet(u,v) = meet(v,u)
start meet(u,v)
step h meet(v,u)
qed
";
        let r = check_script(&parse_one(other), &mut env);
        assert!(matches!(
            r.verdict,
            Verdict::Rejected(ScriptError::MissingHypothesis { .. })
        ));
    }

    #[test]
    fn two_chains_meeting_in_the_middle() {
        let text = "\
script m
use def-meet
use C4a
goal meet(0,a) = p(0,0,b)
start meet(0,a)
step def-meet p(0,0,a)
step C4a 0
chain
start p(0,0,b)
step C4a 0
qed
";
        assert!(check_script(&parse_one(text), &mut builtin_theory()).verified());
        let bad = text.replace("start p(0,0,b)", "start p(0,1,b)");
        let r = check_script(&parse_one(&bad), &mut builtin_theory());
        assert!(!r.verified());
    }

    #[test]
    fn two_goals_register_a_family() {
        let text = "\
script L1
use def-bar
use C4a
use C4b
goal bar(1) = 0
start bar(1)
step def-bar p(1,1,0)
step C4b 0
chain
goal bar(0) = 1
start bar(0)
step def-bar p(1,0,0)
step C4a 1
qed
";
        let mut env = builtin_theory();
        assert!(check_script(&parse_one(text), &mut env).verified());
        assert_eq!(env.get("L1").unwrap().equations.len(), 2);
    }

    #[test]
    fn cycles_are_detected() {
        let text = "\
script x
use y
goal 0 = 0
start 0
qed
script y
use x
goal 1 = 1
start 1
qed
script z
goal a = a
start a
qed
";
        let scripts = parse_scripts(text).unwrap();
        let reports = verify_corpus(&scripts, &mut builtin_theory());
        assert!(reports.iter().find(|r| r.name == "z").unwrap().verified());
        for name in ["x", "y"] {
            let r = reports.iter().find(|r| r.name == name).unwrap();
            assert!(
                matches!(&r.verdict, Verdict::Rejected(ScriptError::Cyclic(c)) if c.len() == 2)
            );
        }
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        let err = parse_scripts("script a\ngoal a = a\nstart a\nstep C1\nqed\n").unwrap_err();
        assert_eq!(err.line, 4);
        let err = parse_scripts("script a\ngoal a = a\nstart p(a\nqed\n").unwrap_err();
        assert_eq!(err.line, 3);
        assert!(parse_scripts("script a\ngoal a = a\nstart a\n").is_err());
        assert!(parse_scripts("use C1\n").is_err());
        assert!(parse_scripts("script a\nfrobnicate\nqed\n").is_err());
    }

    #[test]
    fn display_round_trips() {
        let s = parse_one(L2);
        assert_eq!(parse_one(&s.to_string()), s);
        // CRLF and comments are tolerated
        let crlf = L2
            .replace('\n', "\r\n")
            .replace("use C3", "use C3   # right distributivity");
        assert_eq!(parse_one(&crlf), s);
    }
}
