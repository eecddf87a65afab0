//! Subcommand implementations. Each returns the exact text for stdout and
//! stderr along with the exit code; nothing here touches the process.

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand};
use parikh_core::algebra::reduced_groebner_basis;
use parikh_core::analysis::{self, AnalysisError};
use parikh_core::decider::{decide_parikh, DecideError, DecideOptions, Verdict};
use parikh_core::grammar::Grammar;
use parikh_core::regularizer::{regularize, RegularizerError};
use parikh_core::series::AlgebraicSystem;
use parikh_core::{Semiring, SemiringKind};
use thiserror::Error;

use crate::document::{parse_document, render, AnyGrammar, DocumentError};

/// Process exit codes.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
#[repr(u8)]
pub enum Exit {
    Ok = 0,
    Differs = 1,
    Malformed = 2,
    NotCycleFree = 3,
    Expansive = 4,
    WrongSemiring = 5,
    Mismatch = 6,
    Internal = 7,
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Document {
        path: PathBuf,
        source: DocumentError,
    },
    #[error("{path}: the grammar is not cycle-free ({cycle})")]
    NotCycleFree { path: PathBuf, cycle: String },
    #[error("{path}: the grammar is expansive")]
    Expansive { path: PathBuf },
    #[error("{path}: this command needs semiring Q, the document declares {found}")]
    WrongSemiring { path: PathBuf, found: SemiringKind },
    #[error("{0}")]
    Mismatch(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn exit(&self) -> Exit {
        match self {
            CliError::Io { .. } | CliError::Document { .. } => Exit::Malformed,
            CliError::NotCycleFree { .. } => Exit::NotCycleFree,
            CliError::Expansive { .. } => Exit::Expansive,
            CliError::WrongSemiring { .. } => Exit::WrongSemiring,
            CliError::Mismatch(_) => Exit::Mismatch,
            CliError::Internal(_) => Exit::Internal,
        }
    }
}

#[derive(Parser, Debug)]
#[command(name = "parikh", version, about = "Parikh images of weighted context-free grammars")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Structural analyses: cycle-freeness, nonexpansiveness, degree, dimension bound.
    Check { file: PathBuf },
    /// Truncated Parikh series of the start symbol.
    Series {
        file: PathBuf,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Parikh-equivalent regular grammar of a nonexpansive grammar.
    Regularize {
        file: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Dimension level; clamped to [dimension bound, number of variables].
        #[arg(long)]
        k: Option<usize>,
    },
    /// Decide whether a Q-weighted grammar has a Parikh-equivalent regular grammar.
    Decide {
        file: PathBuf,
        #[arg(long)]
        emit_witness: Option<PathBuf>,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Compare two truncated Parikh series.
    Equiv {
        first: PathBuf,
        second: PathBuf,
        #[arg(long, default_value_t = 10)]
        order: usize,
        #[arg(long, default_value_t = 10_000)]
        max_iters: usize,
    },
    /// Reduced Groebner basis of the algebraic system and its univariate element.
    Groebner { file: PathBuf },
}

/// What a command printed and how it ended.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Outcome {
    pub stdout: String,
    pub stderr: String,
    pub exit: Exit,
}

impl Outcome {
    fn ok(stdout: String) -> Self {
        Outcome {
            stdout,
            stderr: String::new(),
            exit: Exit::Ok,
        }
    }
}

macro_rules! with_grammar {
    ($any:expr, $g:ident => $body:expr) => {
        match $any {
            AnyGrammar::Rationals($g) => $body,
            AnyGrammar::Naturals($g) => $body,
            AnyGrammar::Tropical($g) => $body,
        }
    };
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.exit_code() == 0 {
                Outcome::ok(text)
            } else {
                Outcome {
                    stdout: String::new(),
                    stderr: text,
                    exit: Exit::Malformed,
                }
            };
        }
    };
    execute(&cli.command)
}

pub fn execute(command: &Command) -> Outcome {
    let mut stderr = String::new();
    let result = match command {
        Command::Check { file } => check(file),
        Command::Series {
            file,
            order,
            max_iters,
        } => series(file, *order, *max_iters),
        Command::Regularize { file, out, k } => regularize_cmd(file, out.as_deref(), *k, &mut stderr),
        Command::Decide {
            file,
            emit_witness,
            max_iters,
        } => decide(file, emit_witness.as_deref(), *max_iters, &mut stderr),
        Command::Equiv {
            first,
            second,
            order,
            max_iters,
        } => equiv(first, second, *order, *max_iters),
        Command::Groebner { file } => groebner(file),
    };
    match result {
        Ok((stdout, exit)) => Outcome { stdout, stderr, exit },
        Err(e) => {
            let _ = writeln!(stderr, "error: {e}");
            Outcome {
                stdout: String::new(),
                stderr,
                exit: e.exit(),
            }
        }
    }
}

type CommandResult = Result<(String, Exit), CliError>;

pub fn load(path: &Path) -> Result<AnyGrammar, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_document(&text).map_err(|source| CliError::Document {
        path: path.to_path_buf(),
        source,
    })
}

fn write_file(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })
}

fn rule_text<S: Semiring>(g: &Grammar<S>, rule: usize) -> String {
    let r = g.rule(rule);
    let rhs: Vec<&str> = r.rhs.iter().map(|&s| g.symbol_name(s)).collect();
    let rhs = if rhs.is_empty() { "eps".to_string() } else { rhs.join(" ") };
    format!("{} -> {}", g.variables()[r.lhs], rhs)
}

fn cycle_text<S: Semiring>(g: &Grammar<S>) -> Option<String> {
    analysis::cycle_witness(g).map(|w| {
        w.variables
            .iter()
            .map(|&v| g.variables()[v].as_str())
            .collect::<Vec<_>>()
            .join(" -> ")
    })
}

fn ensure_cycle_free<S: Semiring>(g: &Grammar<S>, path: &Path) -> Result<(), CliError> {
    match cycle_text(g) {
        Some(cycle) => Err(CliError::NotCycleFree {
            path: path.to_path_buf(),
            cycle,
        }),
        None => Ok(()),
    }
}

fn check(path: &Path) -> CommandResult {
    let any = load(path)?;
    let kind = any.kind();
    let out = with_grammar!(&any, g => check_report(g, kind));
    Ok((out, Exit::Ok))
}

fn check_report<S: Semiring>(g: &Grammar<S>, kind: SemiringKind) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "semiring: {kind}");
    let _ = writeln!(out, "terminals: {}", g.terminals().len());
    let _ = writeln!(out, "variables: {}", g.variables().len());
    let _ = writeln!(out, "rules: {}", g.rules().len());
    match cycle_text(g) {
        None => {
            let _ = writeln!(out, "cycle-free: true");
        }
        Some(cycle) => {
            let _ = writeln!(out, "cycle-free: false");
            let _ = writeln!(out, "cycle witness: {cycle}");
        }
    }
    match analysis::expansion_witness(g) {
        None => {
            let _ = writeln!(out, "nonexpansive: true");
        }
        Some(w) => {
            let _ = writeln!(out, "nonexpansive: false");
            let _ = writeln!(
                out,
                "expansion witness: {} via rule {}",
                g.variables()[w.variable],
                rule_text(g, w.branch_rule)
            );
        }
    }
    let _ = writeln!(out, "degree: {}", analysis::degree(g));
    match analysis::dimension_bound(g) {
        Ok(k) => {
            let _ = writeln!(out, "dimension bound: {k}");
        }
        Err(AnalysisError::Expansive) => {
            let _ = writeln!(out, "dimension bound: expansive");
        }
    }
    out
}

fn series(path: &Path, order: usize, max_iters: usize) -> CommandResult {
    let any = load(path)?;
    let out = with_grammar!(&any, g => series_text(g, path, order, max_iters)?);
    Ok((out, Exit::Ok))
}

fn series_text<S: Semiring>(g: &Grammar<S>, path: &Path, order: usize, max_iters: usize) -> Result<String, CliError> {
    ensure_cycle_free(g, path)?;
    let sol = AlgebraicSystem::from_grammar(g)
        .approximate(order, max_iters)
        .map_err(|e| CliError::Internal(e.to_string()))?;
    Ok(format!("{}\n", sol[0].display(g.terminals())))
}

fn regularize_cmd(path: &Path, out: Option<&Path>, k: Option<usize>, stderr: &mut String) -> CommandResult {
    let any = load(path)?;
    let (document, stats) = with_grammar!(&any, g => regularize_text(g, path, k, stderr)?);
    match out {
        Some(target) => {
            write_file(target, &document)?;
            Ok((format!("{stats}\n"), Exit::Ok))
        }
        None => Ok((document, Exit::Ok)),
    }
}

fn regularize_text<S: Semiring>(
    g: &Grammar<S>,
    path: &Path,
    k: Option<usize>,
    stderr: &mut String,
) -> Result<(String, String), CliError> {
    let expansive = || CliError::Expansive {
        path: path.to_path_buf(),
    };
    let bound = analysis::dimension_bound(g).map_err(|_| expansive())?;
    let cap = g.variables().len().max(bound);
    let k = k.map(|k| {
        let clamped = k.clamp(bound, cap);
        if clamped != k {
            let _ = writeln!(stderr, "warning: --k {k} is outside [{bound}, {cap}]; using {clamped}");
        }
        clamped
    });
    let result = regularize(g, k).map_err(|e| match e {
        RegularizerError::ExpansiveGrammar => expansive(),
        other => CliError::Internal(other.to_string()),
    })?;
    let stats = result.stats.to_string();
    Ok((format!("# {stats}\n{}", render(&result.grammar)), stats))
}

fn decide(path: &Path, witness_path: Option<&Path>, max_iters: usize, stderr: &mut String) -> CommandResult {
    let any = load(path)?;
    let AnyGrammar::Rationals(g) = any else {
        return Err(CliError::WrongSemiring {
            path: path.to_path_buf(),
            found: any.kind(),
        });
    };
    ensure_cycle_free(&g, path)?;
    let options = DecideOptions {
        max_iters,
        ..DecideOptions::default()
    };
    let report = decide_parikh(&g, options).map_err(|e| match e {
        DecideError::NotCycleFree => CliError::NotCycleFree {
            path: path.to_path_buf(),
            cycle: cycle_text(&g).unwrap_or_default(),
        },
        other => CliError::Internal(other.to_string()),
    })?;
    let mut out = format!("{report}\n");
    if let Some(w) = &report.witness {
        let document = render(w);
        out.push_str("witness:\n");
        for line in document.lines() {
            let _ = writeln!(out, "  {line}");
        }
        if let Some(target) = witness_path {
            write_file(target, &document)?;
        }
    } else if witness_path.is_some() {
        let _ = writeln!(stderr, "note: no witness to write, the verdict is {}", Verdict::Fails);
    }
    Ok((out, Exit::Ok))
}

fn equiv(first: &Path, second: &Path, order: usize, max_iters: usize) -> CommandResult {
    let a = load(first)?;
    let b = load(second)?;
    if a.kind() != b.kind() {
        return Err(CliError::Mismatch(format!(
            "semirings differ: {} declares {}, {} declares {}",
            first.display(),
            a.kind(),
            second.display(),
            b.kind()
        )));
    }
    if a.terminals() != b.terminals() {
        return Err(CliError::Mismatch(format!(
            "terminal alphabets differ: [{}] vs [{}]",
            a.terminals().join(" "),
            b.terminals().join(" ")
        )));
    }
    match (&a, &b) {
        (AnyGrammar::Rationals(x), AnyGrammar::Rationals(y)) => compare(x, y, first, second, order, max_iters),
        (AnyGrammar::Naturals(x), AnyGrammar::Naturals(y)) => compare(x, y, first, second, order, max_iters),
        (AnyGrammar::Tropical(x), AnyGrammar::Tropical(y)) => compare(x, y, first, second, order, max_iters),
        _ => unreachable!("kinds were compared above"),
    }
}

fn compare<S: Semiring>(
    x: &Grammar<S>,
    y: &Grammar<S>,
    first: &Path,
    second: &Path,
    order: usize,
    max_iters: usize,
) -> CommandResult {
    ensure_cycle_free(x, first)?;
    ensure_cycle_free(y, second)?;
    let solve = |g: &Grammar<S>| {
        AlgebraicSystem::from_grammar(g)
            .approximate(order, max_iters)
            .map(|mut s| s.swap_remove(0))
            .map_err(|e| CliError::Internal(e.to_string()))
    };
    let (sx, sy) = (solve(x)?, solve(y)?);
    match sx.first_difference(&sy) {
        None => Ok(("equal\n".to_string(), Exit::Ok)),
        Some(m) => Ok((
            format!(
                "differs at {}: {} vs {}\n",
                m.display(x.terminals()),
                sx.get(&m),
                sy.get(&m)
            ),
            Exit::Differs,
        )),
    }
}

fn groebner(path: &Path) -> CommandResult {
    let any = load(path)?;
    let AnyGrammar::Rationals(g) = any else {
        return Err(CliError::WrongSemiring {
            path: path.to_path_buf(),
            found: any.kind(),
        });
    };
    let sys = AlgebraicSystem::from_grammar(&g);
    let basis = reduced_groebner_basis(&sys.generators());
    let (vars, terms) = (sys.variables(), sys.terminals());
    let mut out = String::new();
    let _ = writeln!(out, "order: {}", vars.iter().rev().cloned().collect::<Vec<_>>().join(" > "));
    let _ = writeln!(out, "basis:");
    for p in &basis {
        let _ = writeln!(out, "  {}", p.display(vars, terms));
    }
    match basis.iter().find(|p| p.is_univariate_in_first()) {
        Some(p) => {
            let _ = writeln!(out, "g: {}", p.display(vars, terms));
        }
        None => {
            let _ = writeln!(out, "g: none");
        }
    }
    Ok((out, Exit::Ok))
}
