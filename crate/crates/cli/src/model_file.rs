//! Text formats for ternary systems (`.tba`) and Boolean algebras (`.bba`).
//!
//! ```text
//! ternary-system v1        boolean-algebra v1
//! size 2                   size 2
//! zero 0                   zero 0
//! one 1                    one 1
//! table                    meet
//! p 0 0 0 = 0              m 0 0 = 0
//! ...                      ...
//! end                      join
//!                          j 0 0 = 0
//!                          ...
//!                          neg
//!                          n 0 = 1
//!                          n 1 = 0
//!                          end
//! ```

use std::fmt::Write as _;

use thiserror::Error;

use tba_core::algebra::{format_tuple, FiniteBooleanAlgebra, FiniteTernarySystem};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Model {
    Ternary(FiniteTernarySystem),
    Boolean(FiniteBooleanAlgebra),
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ModelFileError {
    pub line: usize,
    pub message: String,
}

struct Lines<'a> {
    inner: std::iter::Peekable<Box<dyn Iterator<Item = (usize, &'a str)> + 'a>>,
    last: usize,
}

impl<'a> Lines<'a> {
    fn new(text: &'a str) -> Self {
        let it: Box<dyn Iterator<Item = (usize, &'a str)>> = Box::new(
            text.lines()
                .enumerate()
                .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
                .filter(|(_, l)| !l.is_empty()),
        );
        Lines {
            inner: it.peekable(),
            last: 0,
        }
    }

    fn next(&mut self, expected: &str) -> Result<(usize, &'a str), ModelFileError> {
        match self.inner.next() {
            Some((n, l)) => {
                self.last = n;
                Ok((n, l))
            }
            None => Err(ModelFileError {
                line: self.last,
                message: format!("unexpected end of file, expected {expected}"),
            }),
        }
    }

    fn keyword_value(&mut self, key: &str) -> Result<(usize, usize), ModelFileError> {
        let (n, l) = self.next(&format!("`{key} <n>`"))?;
        match l.split_whitespace().collect::<Vec<_>>().as_slice() {
            [k, v] if *k == key => v
                .parse()
                .map(|v| (n, v))
                .map_err(|_| err(n, format!("`{v}` is not a number"))),
            _ => Err(err(n, format!("expected `{key} <n>`, found `{l}`"))),
        }
    }

    fn expect_line(&mut self, want: &str) -> Result<usize, ModelFileError> {
        let (n, l) = self.next(&format!("`{want}`"))?;
        if l == want {
            Ok(n)
        } else {
            Err(err(n, format!("expected `{want}`, found `{l}`")))
        }
    }
}

fn err(line: usize, message: impl Into<String>) -> ModelFileError {
    ModelFileError {
        line,
        message: message.into(),
    }
}

/// Reads `tag i1 .. ik = v` cells until the next line that does not start
/// with `tag`, filling `table` (indexed lexicographically).
fn read_cells(
    lines: &mut Lines<'_>,
    tag: &str,
    arity: usize,
    size: usize,
) -> Result<Vec<usize>, ModelFileError> {
    let mut table: Vec<Option<usize>> = vec![None; size.pow(arity as u32)];
    let mut seen_at = vec![0usize; table.len()];
    while let Some(&(n, l)) = lines.inner.peek() {
        let mut words = l.split_whitespace();
        if words.next() != Some(tag) {
            break;
        }
        lines.next("a cell")?;
        let rest: Vec<&str> = words.collect();
        if rest.len() != arity + 2 || rest[arity] != "=" {
            return Err(err(n, format!("malformed cell line `{l}`")));
        }
        let mut nums = Vec::with_capacity(arity + 1);
        for w in rest[..arity].iter().chain(&rest[arity + 1..]) {
            let v: usize = w
                .parse()
                .map_err(|_| err(n, format!("`{w}` is not a number")))?;
            if v >= size {
                return Err(err(n, format!("value {v} out of range for size {size}")));
            }
            nums.push(v);
        }
        let index = nums[..arity].iter().fold(0, |acc, &x| acc * size + x);
        if table[index].is_some() {
            return Err(err(
                n,
                format!(
                    "duplicate cell {} (first given on line {})",
                    format_tuple(&nums[..arity]),
                    seen_at[index]
                ),
            ));
        }
        table[index] = Some(nums[arity]);
        seen_at[index] = n;
    }
    let here = lines.inner.peek().map_or(lines.last, |&(n, _)| n);
    table
        .iter()
        .enumerate()
        .map(|(i, v)| {
            v.ok_or_else(|| {
                let mut digits = vec![0; arity];
                let mut rest = i;
                for d in digits.iter_mut().rev() {
                    *d = rest % size;
                    rest /= size;
                }
                err(here, format!("missing cell {}", format_tuple(&digits)))
            })
        })
        .collect()
}

pub fn parse_model_file(text: &str) -> Result<Model, ModelFileError> {
    let mut lines = Lines::new(text);
    let (header_line, header) = lines.next("a header")?;
    let (_, size) = lines.keyword_value("size")?;
    let (zero_line, zero) = lines.keyword_value("zero")?;
    let (one_line, one) = lines.keyword_value("one")?;
    if size < 2 {
        return Err(err(
            header_line + 1,
            format!("size must be at least 2, got {size}"),
        ));
    }
    for (line, v) in [(zero_line, zero), (one_line, one)] {
        if v >= size {
            return Err(err(line, format!("value {v} out of range for size {size}")));
        }
    }
    if zero == one {
        return Err(err(one_line, "zero and one must differ"));
    }
    let model = match header {
        "ternary-system v1" => {
            lines.expect_line("table")?;
            let table = read_cells(&mut lines, "p", 3, size)?;
            lines.expect_line("end")?;
            FiniteTernarySystem::new(size, zero, one, table).map(Model::Ternary)
        }
        "boolean-algebra v1" => {
            lines.expect_line("meet")?;
            let meet = read_cells(&mut lines, "m", 2, size)?;
            lines.expect_line("join")?;
            let join = read_cells(&mut lines, "j", 2, size)?;
            lines.expect_line("neg")?;
            let neg = read_cells(&mut lines, "n", 1, size)?;
            lines.expect_line("end")?;
            FiniteBooleanAlgebra::new(size, zero, one, meet, join, neg).map(Model::Boolean)
        }
        other => {
            return Err(err(
                header_line,
                format!("expected `ternary-system v1` or `boolean-algebra v1`, found `{other}`"),
            ))
        }
    };
    if let Ok((n, l)) = lines.next("") {
        return Err(err(n, format!("unexpected content after `end`: `{l}`")));
    }
    model.map_err(|e| err(lines.last, e.to_string()))
}

/// Canonical text: cells in lexicographic order, single spaces, trailing
/// newline.
pub fn write_model_file(model: &Model) -> String {
    let mut out = String::new();
    match model {
        Model::Ternary(sys) => {
            let n = sys.size();
            let _ = write!(
                out,
                "ternary-system v1\nsize {n}\nzero {}\none {}\ntable\n",
                sys.zero(),
                sys.one()
            );
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        let _ = writeln!(out, "p {a} {b} {c} = {}", sys.p(a, b, c));
                    }
                }
            }
        }
        Model::Boolean(ba) => {
            let n = ba.size();
            let _ = write!(
                out,
                "boolean-algebra v1\nsize {n}\nzero {}\none {}\n",
                ba.bottom(),
                ba.top()
            );
            for (section, tag, f) in [
                (
                    "meet",
                    "m",
                    FiniteBooleanAlgebra::meet as fn(&FiniteBooleanAlgebra, usize, usize) -> usize,
                ),
                ("join", "j", FiniteBooleanAlgebra::join),
            ] {
                let _ = writeln!(out, "{section}");
                for a in 0..n {
                    for b in 0..n {
                        let _ = writeln!(out, "{tag} {a} {b} = {}", f(ba, a, b));
                    }
                }
            }
            out.push_str("neg\n");
            for a in 0..n {
                let _ = writeln!(out, "n {a} = {}", ba.neg(a));
            }
        }
    }
    out.push_str("end\n");
    out
}
