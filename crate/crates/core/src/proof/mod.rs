//! Equational proof checking over the signature `p`, `bar`, `meet`, `join`,
//! `0`, `1`.

mod corpus;
mod eval;
mod mutation;
mod rules;
mod script;
mod term;

pub use corpus::{builtin_corpus, CORPUS_FILES};
pub use eval::{equation_counterexample, evaluate, Assignment};
pub use mutation::{mutants, mutation_pass, Mutant, MutationKind, MutationSummary};
pub use rules::{
    builtin_theory, check_step, Equation, RewriteRule, RuleEntry, RuleKind, StepVerdict, Theory,
};
pub use script::{
    check_script, dependency_order, parse_scripts, verify_corpus, Chain, ProofScript, ScriptError,
    ScriptParseError, ScriptReport, Step, Verdict,
};
pub use term::{match_term, parse_term, Op, Substitution, Term, TermParseError};
