use std::collections::BTreeSet;
use std::ffi::OsString;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::{Duration, Instant};

use clap::{Args, Parser, Subcommand, ValueEnum};
use thiserror::Error;

use tba_core::algebra::{
    boolean_from_ternary, check_property, compare_tables, format_tuple, ternary_from_boolean,
    verify_theorem1, AlgebraError, FiniteBooleanAlgebra, FiniteTernarySystem, Formula, PropertyId,
    Subject, SubjectKind,
};
use tba_core::proof::{builtin_theory, parse_scripts, verify_corpus, ProofScript};
use tba_core::search::{
    search_parallel, search_until, symmetry_reduce, SearchConstraints, SearchError,
};

use crate::model_file::{parse_model_file, write_model_file, Model, ModelFileError};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_BUDGET: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "tba",
    version,
    about = "Finite ternary Boolean algebras: checks, conversions, model search, proofs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check properties of a model file.
    Check {
        file: PathBuf,
        /// Comma-separated property names or groups (all-c, all-a, all-b, lemma1, theorem1).
        #[arg(long, value_delimiter = ',', required = true)]
        props: Vec<String>,
    },
    /// Build a ternary system from a Boolean algebra.
    Derive {
        file: PathBuf,
        #[arg(long, value_enum)]
        formula: FormulaArg,
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Derive the Boolean structure of a ternary system.
    ToBoolean {
        file: PathBuf,
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Also check that the result is a Boolean algebra.
        #[arg(long)]
        validate: bool,
    },
    /// Enumerate ternary systems on a small carrier.
    Search(SearchArgs),
    /// Verify proof scripts.
    Prove {
        #[arg(required = true)]
        files: Vec<PathBuf>,
        /// Directory of `.tbp` scripts verified alongside the given files.
        #[arg(long)]
        corpus: Option<PathBuf>,
    },
    /// Convert to the other structure and back, and compare.
    Roundtrip { file: PathBuf },
}

#[derive(Args, Debug)]
struct SearchArgs {
    #[arg(long)]
    size: usize,
    #[arg(long, value_delimiter = ',', required = true)]
    require: Vec<String>,
    #[arg(long, value_delimiter = ',')]
    forbid: Vec<String>,
    #[arg(long)]
    limit: Option<usize>,
    /// Keep one representative per relabeling orbit.
    #[arg(long)]
    sym: bool,
    #[arg(long)]
    count_only: bool,
    #[arg(long)]
    budget_seconds: Option<f64>,
    /// Write each model to its own file in this directory.
    #[arg(short, long)]
    output: Option<PathBuf>,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum FormulaArg {
    Ite,
    Grau,
    Whiteman,
}

impl From<FormulaArg> for Formula {
    fn from(f: FormulaArg) -> Formula {
        match f {
            FormulaArg::Ite => Formula::Ite,
            FormulaArg::Grau => Formula::Grau,
            FormulaArg::Whiteman => Formula::Whiteman,
        }
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{}: {source}", .path.display())]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{}: {source}", .path.display())]
    ModelFile {
        path: PathBuf,
        source: ModelFileError,
    },
    #[error("{}: {message}", .path.display())]
    Script { path: PathBuf, message: String },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
    #[error(transparent)]
    Search(#[from] SearchError),
    #[error("cannot write output: {0}")]
    Output(#[from] std::io::Error),
}

impl CliError {
    fn exit_code(&self) -> i32 {
        match self {
            CliError::Algebra(AlgebraError::NotBoolean { .. }) => EXIT_FAILED,
            _ => EXIT_USAGE,
        }
    }
}

/// Runs the command line `args` (program name first), writing results to
/// `out` and diagnostics to `err`. Returns the process exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match dispatch(cli.command, out, err) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

fn dispatch(command: Command, out: &mut dyn Write, err: &mut dyn Write) -> Result<i32, CliError> {
    match command {
        Command::Check { file, props } => check(&file, &props, out),
        Command::Derive {
            file,
            formula,
            output,
        } => derive(&file, formula.into(), output.as_deref(), out),
        Command::ToBoolean {
            file,
            output,
            validate,
        } => to_boolean(&file, output.as_deref(), validate, out),
        Command::Search(args) => search_cmd(&args, out, err),
        Command::Prove { files, corpus } => prove(&files, corpus.as_deref(), out),
        Command::Roundtrip { file } => roundtrip(&file, out),
    }
}

fn read(path: &Path) -> Result<String, CliError> {
    std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn load_model(path: &Path) -> Result<Model, CliError> {
    parse_model_file(&read(path)?).map_err(|source| CliError::ModelFile {
        path: path.to_path_buf(),
        source,
    })
}

fn load_ternary(path: &Path) -> Result<FiniteTernarySystem, CliError> {
    match load_model(path)? {
        Model::Ternary(sys) => Ok(sys),
        Model::Boolean(_) => Err(CliError::Usage(format!(
            "{}: expected a ternary system",
            path.display()
        ))),
    }
}

fn load_boolean(path: &Path) -> Result<FiniteBooleanAlgebra, CliError> {
    match load_model(path)? {
        Model::Boolean(ba) => Ok(ba),
        Model::Ternary(_) => Err(CliError::Usage(format!(
            "{}: expected a Boolean algebra",
            path.display()
        ))),
    }
}

fn emit(text: &str, output: Option<&Path>, out: &mut dyn Write) -> Result<(), CliError> {
    match output {
        Some(path) => {
            std::fs::write(path, text).map_err(|source| CliError::Io {
                path: path.to_path_buf(),
                source,
            })?;
            writeln!(out, "wrote {}", path.display())?;
        }
        None => out.write_all(text.as_bytes())?,
    }
    Ok(())
}

enum Request {
    Property(PropertyId),
    Theorem1,
}

/// Expands names and groups, keeping first occurrences in order.
fn expand_props(names: &[String], allow_theorem: bool) -> Result<Vec<Request>, CliError> {
    let mut seen = BTreeSet::new();
    let mut theorem = false;
    let mut out = Vec::new();
    for name in names.iter().map(|n| n.trim()).filter(|n| !n.is_empty()) {
        let group: Vec<PropertyId> = match name.to_ascii_lowercase().as_str() {
            "all-c" => PropertyId::C_AXIOMS.to_vec(),
            "all-a" => PropertyId::A_AXIOMS.to_vec(),
            "all-b" => PropertyId::B_AXIOMS.to_vec(),
            "lemma1" => PropertyId::LEMMA1.to_vec(),
            "theorem1" if allow_theorem => {
                if !theorem {
                    theorem = true;
                    out.push(Request::Theorem1);
                }
                continue;
            }
            _ => vec![name.parse::<PropertyId>()?],
        };
        for p in group {
            if seen.insert(p) {
                out.push(Request::Property(p));
            }
        }
    }
    if out.is_empty() {
        return Err(CliError::Usage("no properties given".into()));
    }
    Ok(out)
}

fn check(path: &Path, props: &[String], out: &mut dyn Write) -> Result<i32, CliError> {
    let requests = expand_props(props, true)?;
    let model = load_model(path)?;
    let derived = match &model {
        Model::Ternary(sys) => Some(boolean_from_ternary(sys)),
        Model::Boolean(_) => None,
    };
    let mut lines = Vec::new();
    let mut ok = true;
    for request in requests {
        match (request, &model) {
            (Request::Theorem1, Model::Ternary(sys)) => {
                let report = verify_theorem1(sys);
                let report_lines = report.lines();
                ok &= report_lines.iter().all(|l| l.starts_with("PASS"));
                lines.extend(report_lines);
            }
            (Request::Theorem1, Model::Boolean(_)) => {
                return Err(CliError::Usage(
                    "theorem1 applies to ternary systems".into(),
                ));
            }
            (Request::Property(p), _) => {
                // Boolean-side properties of a ternary file are checked on its derived structure
                let subject = match (&model, p.subject_kind()) {
                    (Model::Ternary(_), SubjectKind::Boolean) => {
                        Subject::Boolean(derived.as_ref().unwrap())
                    }
                    (Model::Ternary(sys), SubjectKind::Ternary) => Subject::Ternary(sys),
                    (Model::Boolean(ba), _) => Subject::Boolean(ba),
                };
                let report = check_property(subject, p, None)?;
                ok &= report.holds;
                lines.push(report.to_string());
            }
        }
    }
    for line in lines {
        writeln!(out, "{line}")?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn derive(
    path: &Path,
    formula: Formula,
    output: Option<&Path>,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let ba = load_boolean(path)?;
    let sys = ternary_from_boolean(&ba, formula)?;
    emit(&write_model_file(&Model::Ternary(sys)), output, out)?;
    Ok(EXIT_OK)
}

fn to_boolean(
    path: &Path,
    output: Option<&Path>,
    validate: bool,
    out: &mut dyn Write,
) -> Result<i32, CliError> {
    let sys = load_ternary(path)?;
    let ba = boolean_from_ternary(&sys);
    emit(&write_model_file(&Model::Boolean(ba.clone())), output, out)?;
    if !validate {
        return Ok(EXIT_OK);
    }
    let report = check_property(Subject::Boolean(&ba), PropertyId::BA, None)?;
    writeln!(out, "{report}")?;
    Ok(if report.holds { EXIT_OK } else { EXIT_FAILED })
}

fn parse_ids(names: &[String]) -> Result<Vec<PropertyId>, CliError> {
    expand_props(names, false)?
        .into_iter()
        .map(|r| match r {
            Request::Property(p) => Ok(p),
            Request::Theorem1 => unreachable!("theorem1 not allowed here"),
        })
        .collect()
}

fn search_cmd(
    args: &SearchArgs,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<i32, CliError> {
    let mut constraints = SearchConstraints::new(args.size, parse_ids(&args.require)?);
    if !args.forbid.is_empty() {
        constraints = constraints.forbid(parse_ids(&args.forbid)?);
    }
    if let Some(limit) = args.limit {
        constraints = constraints.with_limit(limit);
    }
    if args.sym {
        constraints = constraints.with_symmetry_reduction();
    }
    constraints.validate()?;

    let (models, interrupted) = match args.budget_seconds {
        None => (search_parallel(&constraints)?, false),
        Some(secs) => {
            let budget = Duration::try_from_secs_f64(secs)
                .map_err(|_| CliError::Usage(format!("invalid budget `{secs}`")))?;
            let start = Instant::now();
            match search_until(&constraints, || start.elapsed() >= budget) {
                Ok(models) => (models, false),
                Err(SearchError::Interrupted { partial }) => (partial, true),
                Err(e) => return Err(e.into()),
            }
        }
    };
    // partial results come straight from the tree walk; reduce them the same way
    let models = if interrupted && args.sym {
        symmetry_reduce(&models)?
    } else {
        models
    };

    if !args.count_only {
        match &args.output {
            Some(dir) => {
                std::fs::create_dir_all(dir).map_err(|source| CliError::Io {
                    path: dir.clone(),
                    source,
                })?;
                for (i, m) in models.iter().enumerate() {
                    let path = dir.join(format!("model-{:04}.tba", i + 1));
                    std::fs::write(&path, write_model_file(&Model::Ternary(m.clone()))).map_err(
                        |source| CliError::Io {
                            path: path.clone(),
                            source,
                        },
                    )?;
                }
            }
            None => {
                for m in &models {
                    writeln!(out, "{}", write_model_file(&Model::Ternary(m.clone())))?;
                }
            }
        }
    }
    writeln!(out, "models: {}", models.len())?;
    if interrupted {
        writeln!(
            err,
            "search budget exceeded; {} model(s) found before stopping",
            models.len()
        )?;
        return Ok(EXIT_BUDGET);
    }
    Ok(EXIT_OK)
}

fn load_scripts(path: &Path) -> Result<Vec<ProofScript>, CliError> {
    parse_scripts(&read(path)?).map_err(|e| CliError::Script {
        path: path.to_path_buf(),
        message: e.to_string(),
    })
}

fn prove(files: &[PathBuf], corpus: Option<&Path>, out: &mut dyn Write) -> Result<i32, CliError> {
    let mut requested = Vec::new();
    for f in files {
        requested.extend(load_scripts(f)?);
    }
    let mut scripts = Vec::new();
    if let Some(dir) = corpus {
        let entries = std::fs::read_dir(dir).map_err(|source| CliError::Io {
            path: dir.to_path_buf(),
            source,
        })?;
        let mut paths: Vec<PathBuf> = entries
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "tbp"))
            .collect();
        paths.sort();
        let named: BTreeSet<String> = requested.iter().map(|s| s.name.clone()).collect();
        for p in paths {
            scripts.extend(
                load_scripts(&p)?
                    .into_iter()
                    .filter(|s| !named.contains(&s.name)),
            );
        }
    }
    scripts.extend(requested);

    let mut env = builtin_theory();
    let reports = verify_corpus(&scripts, &mut env);
    let mut ok = true;
    for r in &reports {
        ok &= r.verified();
        writeln!(out, "{r}")?;
    }
    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
}

fn first_difference(a: &[usize], b: &[usize], n: usize, arity: usize) -> Option<Vec<usize>> {
    let i = (0..a.len()).find(|&i| a[i] != b[i])?;
    let mut digits = vec![0; arity];
    let mut rest = i;
    for d in digits.iter_mut().rev() {
        *d = rest % n;
        rest /= n;
    }
    Some(digits)
}

fn roundtrip(path: &Path, out: &mut dyn Write) -> Result<i32, CliError> {
    let (label, difference) = match load_model(path)? {
        Model::Ternary(sys) => {
            let label = "ternary -> boolean -> ternary";
            let ba = boolean_from_ternary(&sys);
            match ternary_from_boolean(&ba, Formula::Ite) {
                Ok(back) => (
                    label,
                    compare_tables(&sys, &back)?
                        .map(|(a, b, c)| format!("p differs at ({a},{b},{c})")),
                ),
                Err(AlgebraError::NotBoolean {
                    law,
                    counterexample,
                }) => (
                    label,
                    Some(format!(
                        "derived structure is not a Boolean algebra ({law} at {})",
                        format_tuple(&counterexample)
                    )),
                ),
                Err(e) => return Err(e.into()),
            }
        }
        Model::Boolean(ba) => {
            let label = "boolean -> ternary -> boolean";
            let sys = ternary_from_boolean(&ba, Formula::Ite)?;
            let back = boolean_from_ternary(&sys);
            let n = ba.size();
            let diff = [
                ("meet", ba.meet_table(), back.meet_table(), 2),
                ("join", ba.join_table(), back.join_table(), 2),
                ("neg", ba.neg_table(), back.neg_table(), 1),
            ]
            .into_iter()
            .find_map(|(name, x, y, arity)| {
                first_difference(x, y, n, arity)
                    .map(|d| format!("{name} differs at {}", format_tuple(&d)))
            });
            (label, diff)
        }
    };
    match difference {
        None => {
            writeln!(out, "PASS roundtrip ({label})")?;
            Ok(EXIT_OK)
        }
        Some(d) => {
            writeln!(out, "FAIL roundtrip ({label}): {d}")?;
            Ok(EXIT_FAILED)
        }
    }
}
