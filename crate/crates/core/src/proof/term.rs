//! First-order terms over `{p/3, bar/1, meet/2, join/2, 0, 1}`.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use thiserror::Error;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Op {
    P,
    Bar,
    Meet,
    Join,
}

impl Op {
    pub const ALL: [Op; 4] = [Op::P, Op::Bar, Op::Meet, Op::Join];

    pub fn arity(self) -> usize {
        match self {
            Op::P => 3,
            Op::Bar => 1,
            Op::Meet | Op::Join => 2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Op::P => "p",
            Op::Bar => "bar",
            Op::Meet => "meet",
            Op::Join => "join",
        }
    }

    pub fn from_name(name: &str) -> Option<Op> {
        Op::ALL.into_iter().find(|op| op.name() == name)
    }
}

/// A term. Applications built through the constructors or the parser are
/// always arity-correct.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Term {
    Var(String),
    Zero,
    One,
    App(Op, Vec<Term>),
}

pub type Substitution = BTreeMap<String, Term>;

impl Term {
    pub fn var(name: &str) -> Term {
        Term::Var(name.to_string())
    }

    pub fn p(a: Term, b: Term, c: Term) -> Term {
        Term::App(Op::P, vec![a, b, c])
    }

    pub fn bar(a: Term) -> Term {
        Term::App(Op::Bar, vec![a])
    }

    pub fn meet(a: Term, b: Term) -> Term {
        Term::App(Op::Meet, vec![a, b])
    }

    pub fn join(a: Term, b: Term) -> Term {
        Term::App(Op::Join, vec![a, b])
    }

    pub fn variables(&self) -> BTreeSet<&str> {
        let mut out = BTreeSet::new();
        self.collect_vars(&mut out);
        out
    }

    fn collect_vars<'a>(&'a self, out: &mut BTreeSet<&'a str>) {
        match self {
            Term::Var(v) => {
                out.insert(v);
            }
            Term::App(_, args) => args.iter().for_each(|t| t.collect_vars(out)),
            Term::Zero | Term::One => {}
        }
    }

    pub fn subterm(&self, position: &[usize]) -> Option<&Term> {
        match position.split_first() {
            None => Some(self),
            Some((&i, rest)) => match self {
                Term::App(_, args) => args.get(i)?.subterm(rest),
                _ => None,
            },
        }
    }

    /// Instantiates variables bound in `subst`; unbound ones stay as they are.
    pub fn apply(&self, subst: &Substitution) -> Term {
        match self {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            Term::App(op, args) => Term::App(*op, args.iter().map(|t| t.apply(subst)).collect()),
            Term::Zero | Term::One => self.clone(),
        }
    }

    /// Number of symbol occurrences.
    pub fn size(&self) -> usize {
        match self {
            Term::App(_, args) => 1 + args.iter().map(Term::size).sum::<usize>(),
            _ => 1,
        }
    }
}

/// Extends `subst` so that `pattern` instantiated by it equals `subject`.
/// Leaves `subst` in an unspecified state on failure.
pub fn match_term(pattern: &Term, subject: &Term, subst: &mut Substitution) -> bool {
    match (pattern, subject) {
        (Term::Var(v), _) => match subst.get(v) {
            Some(bound) => bound == subject,
            None => {
                subst.insert(v.clone(), subject.clone());
                true
            }
        },
        (Term::Zero, Term::Zero) | (Term::One, Term::One) => true,
        (Term::App(f, xs), Term::App(g, ys)) => {
            f == g
                && xs.len() == ys.len()
                && xs.iter().zip(ys).all(|(x, y)| match_term(x, y, subst))
        }
        _ => false,
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Var(v) => f.write_str(v),
            Term::Zero => f.write_str("0"),
            Term::One => f.write_str("1"),
            Term::App(op, args) => {
                write!(f, "{}(", op.name())?;
                for (i, a) in args.iter().enumerate() {
                    if i > 0 {
                        f.write_str(",")?;
                    }
                    write!(f, "{a}")?;
                }
                f.write_str(")")
            }
        }
    }
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("parse error at offset {position}: expected {expected}, found {found}")]
pub struct TermParseError {
    pub position: usize,
    pub expected: String,
    pub found: String,
}

struct Parser<'a> {
    src: &'a str,
    pos: usize,
}

impl<'a> Parser<'a> {
    fn skip_ws(&mut self) {
        while let Some(c) = self.peek() {
            if !c.is_whitespace() {
                break;
            }
            self.pos += c.len_utf8();
        }
    }

    fn peek(&self) -> Option<char> {
        self.src[self.pos..].chars().next()
    }

    fn error(&self, expected: &str) -> TermParseError {
        let found = match self.peek() {
            Some(c) => format!("`{c}`"),
            None => "end of input".to_string(),
        };
        TermParseError {
            position: self.pos,
            expected: expected.to_string(),
            found,
        }
    }

    fn expect(&mut self, want: char) -> Result<(), TermParseError> {
        self.skip_ws();
        if self.peek() == Some(want) {
            self.pos += 1;
            Ok(())
        } else {
            Err(self.error(&format!("`{want}`")))
        }
    }

    fn ident(&mut self) -> &'a str {
        let start = self.pos;
        while let Some(c) = self.peek() {
            if c.is_ascii_alphanumeric() || c == '_' {
                self.pos += 1;
            } else {
                break;
            }
        }
        while self.peek() == Some('\'') {
            self.pos += 1;
        }
        &self.src[start..self.pos]
    }

    fn term(&mut self) -> Result<Term, TermParseError> {
        self.skip_ws();
        match self.peek() {
            Some('0') => {
                self.pos += 1;
                Ok(Term::Zero)
            }
            Some('1') => {
                self.pos += 1;
                Ok(Term::One)
            }
            Some(c) if c.is_ascii_alphabetic() || c == '_' => {
                let start = self.pos;
                let name = self.ident();
                if let Some(op) = Op::from_name(name) {
                    self.expect('(')?;
                    let mut args = Vec::with_capacity(op.arity());
                    for i in 0..op.arity() {
                        if i > 0 {
                            self.expect(',')?;
                        }
                        args.push(self.term()?);
                    }
                    self.expect(')')?;
                    Ok(Term::App(op, args))
                } else {
                    self.skip_ws();
                    if self.peek() == Some('(') {
                        return Err(TermParseError {
                            position: start,
                            expected: "one of p, bar, meet, join".to_string(),
                            found: format!("`{name}`"),
                        });
                    }
                    Ok(Term::Var(name.to_string()))
                }
            }
            _ => Err(self.error("a term")),
        }
    }
}

/// Parses the concrete syntax
/// `term := var | 0 | 1 | p(t,t,t) | bar(t) | meet(t,t) | join(t,t)`.
pub fn parse_term(text: &str) -> Result<Term, TermParseError> {
    let mut parser = Parser { src: text, pos: 0 };
    let term = parser.term()?;
    parser.skip_ws();
    if parser.pos < text.len() {
        return Err(parser.error("end of input"));
    }
    Ok(term)
}
