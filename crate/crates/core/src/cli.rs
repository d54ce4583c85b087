//! The `qgje` command line.
//!
//! Subcommands: `rref`, `solve`, `grover`, `deutsch`, `add`, `cost`.
//! Output is a pure function of the arguments, the input file bytes and
//! `--seed`. Exit status is 0 on success, 1 on a domain error (for example
//! an inconsistent system given to `solve`) and 2 on usage or I/O errors.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::error::ErrorKind;
use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};
use thiserror::Error;

use crate::cost::{format_sig5, CostModel, CostRow};
use crate::grover::{self, GroverPlan, Oracle};
use crate::labeled_rng;
use crate::ledger::CostLedger;
use crate::linalg::text::{parse_system, FormatError};
use crate::linalg::{rref, solve_from_rref, AugmentedSystem, ClassicalScan, Matrix, SolutionKind};
use crate::qft;
use crate::qgje::{cost_report, qgje_rref, SimulationSettings};
use crate::rational::Rational;

/// Largest register the `grover` and `add` subcommands accept.
pub const MAX_QUBITS: usize = 20;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("unknown command: {0}")]
    UnknownCommand(String),
    #[error("missing input: {0}")]
    MissingInput(String),
    #[error("malformed flag: {0}")]
    MalformedFlag(String),
    /// `--help` or `--version`; the text goes to stdout and the exit is 0.
    #[error("{0}")]
    Info(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Format { path: PathBuf, source: FormatError },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Info(_) => 0,
            _ => 2,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum PivotKind {
    Classical,
    Grover,
}

#[derive(Debug, Clone, PartialEq, Eq, Parser)]
#[command(
    name = "qgje",
    version,
    about = "Exact RREF with Grover pivot search, QFT adder and cost audit"
)]
pub struct RunConfig {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, PartialEq, Eq, Subcommand)]
pub enum Command {
    /// Reduced row echelon form of an augmented system file.
    Rref {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = PivotKind::Classical)]
        pivot: PivotKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Print the operation ledger and formula totals.
        #[arg(long)]
        ledger: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Solution set of an augmented system file.
    Solve {
        input: PathBuf,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Grover search for marked basis states.
    Grover {
        #[arg(long)]
        n: usize,
        #[arg(long, value_delimiter = ',', required = true, num_args = 1)]
        marked: Vec<usize>,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Override the iteration count of the first attempt.
        #[arg(long)]
        iters: Option<usize>,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Constant/balanced test for a one-bit function.
    Deutsch {
        /// Truth table `f(0),f(1)`, e.g. `0,1`.
        #[arg(long, value_parser = parse_table)]
        table: TruthTable,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// (a + b) mod 2^n with the Fourier-basis phase adder.
    Add {
        #[arg(long)]
        n: usize,
        a: u64,
        b: u64,
        /// Print the phase word after each digit stage.
        #[arg(long)]
        trace: bool,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
    /// Operation-count table for N = 1..=max-n.
    Cost {
        #[arg(long = "max-n")]
        max_n: u64,
        /// Skip the simulated column.
        #[arg(long)]
        no_sim: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random systems per N for the simulated column.
        #[arg(long, default_value_t = 8)]
        trials: usize,
        #[arg(long, value_enum, default_value_t = OutputFormat::Text)]
        format: OutputFormat,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TruthTable(pub [bool; 2]);

fn parse_table(s: &str) -> Result<TruthTable, String> {
    let bits: Vec<&str> = s.split(',').map(str::trim).collect();
    let bit = |b: &str| match b {
        "0" => Ok(false),
        "1" => Ok(true),
        _ => Err(format!("`{b}` is not 0 or 1")),
    };
    match bits.as_slice() {
        [b0, b1] => Ok(TruthTable([bit(b0)?, bit(b1)?])),
        _ => Err("expected exactly two entries `b0,b1`".into()),
    }
}

impl RunConfig {
    pub fn seed(&self) -> u64 {
        match &self.command {
            Command::Rref { seed, .. }
            | Command::Grover { seed, .. }
            | Command::Cost { seed, .. } => *seed,
            _ => 0,
        }
    }

    pub fn format(&self) -> OutputFormat {
        match &self.command {
            Command::Rref { format, .. }
            | Command::Solve { format, .. }
            | Command::Grover { format, .. }
            | Command::Deutsch { format, .. }
            | Command::Add { format, .. }
            | Command::Cost { format, .. } => *format,
        }
    }

    pub fn input_path(&self) -> Option<&Path> {
        match &self.command {
            Command::Rref { input, .. } | Command::Solve { input, .. } => Some(input),
            _ => None,
        }
    }

    fn validate(&self) -> Result<(), CliError> {
        let bad = |m: String| Err(CliError::MalformedFlag(m));
        if self.format() == OutputFormat::Csv && !matches!(self.command, Command::Cost { .. }) {
            return bad("--format csv is only available for `cost`".into());
        }
        let check_n = |n: usize| {
            if n == 0 || n > MAX_QUBITS {
                bad(format!("--n must be between 1 and {MAX_QUBITS}, got {n}"))
            } else {
                Ok(())
            }
        };
        match &self.command {
            Command::Grover { n, marked, .. } => {
                check_n(*n)?;
                if let Some(i) = marked.iter().find(|&&i| i >> n != 0) {
                    return bad(format!("--marked index {i} does not fit in {n} qubits"));
                }
            }
            Command::Add { n, a, b, .. } => {
                check_n(*n)?;
                for v in [a, b] {
                    if v >> n != 0 {
                        return bad(format!("operand {v} does not fit in {n} qubits"));
                    }
                }
            }
            Command::Cost { max_n, .. } if *max_n == 0 => {
                return bad("--max-n must be at least 1".into());
            }
            _ => {}
        }
        Ok(())
    }
}

/// Parses arguments (without the program name) into a validated config.
pub fn parse_args<I, T>(argv: I) -> Result<RunConfig, CliError>
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let args = std::iter::once(OsString::from("qgje")).chain(argv.into_iter().map(Into::into));
    let config = RunConfig::try_parse_from(args).map_err(|e| {
        let first_line = |e: &clap::Error| {
            e.to_string()
                .lines()
                .next()
                .unwrap_or("")
                .trim_start_matches("error: ")
                .to_string()
        };
        match e.kind() {
            ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => CliError::Info(e.to_string()),
            ErrorKind::InvalidSubcommand => CliError::UnknownCommand(first_line(&e)),
            ErrorKind::MissingRequiredArgument
            | ErrorKind::MissingSubcommand
            | ErrorKind::DisplayHelpOnMissingArgumentOrSubcommand => {
                CliError::MissingInput(first_line(&e))
            }
            _ => CliError::MalformedFlag(first_line(&e)),
        }
    })?;
    config.validate()?;
    Ok(config)
}

/// Reads and parses a matrix file into an augmented system.
pub fn load_system(path: &Path) -> Result<AugmentedSystem, CliError> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_path_buf(),
        source,
    })?;
    parse_system(&text).map_err(|source| CliError::Format {
        path: path.to_path_buf(),
        source,
    })
}

/// Parses `argv`, runs the command and returns the exit status.
pub fn main_with_args<I, T>(argv: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    match parse_args(argv) {
        Ok(config) => run(&config, out, err),
        Err(CliError::Info(text)) => {
            let _ = write!(out, "{text}");
            0
        }
        Err(e) => {
            let _ = writeln!(err, "qgje: {e}");
            e.exit_code()
        }
    }
}

/// Runs a parsed command, writing its report to `out`.
pub fn run(config: &RunConfig, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let result = match &config.command {
        Command::Rref {
            input,
            pivot,
            seed,
            ledger,
            format,
        } => load_system(input).map(|sys| cmd_rref(&sys, *pivot, *seed, *ledger, *format)),
        Command::Solve { input, format } => load_system(input).map(|sys| cmd_solve(&sys, *format)),
        Command::Grover {
            n,
            marked,
            seed,
            iters,
            format,
        } => Ok(cmd_grover(*n, marked, *seed, *iters, *format)),
        Command::Deutsch { table, format } => Ok(cmd_deutsch(table.0, *format)),
        Command::Add {
            n,
            a,
            b,
            trace,
            format,
        } => Ok(cmd_add(*n, *a, *b, *trace, *format)),
        Command::Cost {
            max_n,
            no_sim,
            seed,
            trials,
            format,
        } => Ok(cmd_cost(*max_n, *no_sim, *seed, *trials, *format)),
    };
    match result {
        Ok((text, code)) => {
            if out.write_all(text.as_bytes()).is_err() {
                return 2;
            }
            code
        }
        Err(e) => {
            let _ = writeln!(err, "qgje: {e}");
            e.exit_code()
        }
    }
}

fn json_text(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json value");
    s.push('\n');
    s
}

fn sig5_value(x: f64) -> Value {
    format_sig5(x)
        .parse::<f64>()
        .map(Value::from)
        .unwrap_or(Value::Null)
}

/// Whole numbers below 2^53 as JSON integers, anything else as a float.
fn integral_value(x: f64) -> Value {
    if x.fract() == 0.0 && x.abs() < 9_007_199_254_740_992.0 {
        Value::from(x as i64)
    } else {
        Value::from(x)
    }
}

fn matrix_json(m: &Matrix) -> Value {
    Value::Array(
        (0..m.rows())
            .map(|r| {
                m.row(r)
                    .iter()
                    .map(|e| Value::from(e.to_string()))
                    .collect()
            })
            .collect(),
    )
}

fn vector_text(v: &[Rational]) -> String {
    let parts: Vec<String> = v.iter().map(ToString::to_string).collect();
    format!("({})", parts.join(", "))
}

fn ledger_json(l: &CostLedger) -> Value {
    let mut map = serde_json::Map::new();
    for (k, v) in l.entries() {
        map.insert(k.into(), v.into());
    }
    map.insert("total".into(), l.total().into());
    Value::Object(map)
}

fn cmd_rref(
    sys: &AugmentedSystem,
    pivot: PivotKind,
    seed: u64,
    show_ledger: bool,
    format: OutputFormat,
) -> (String, i32) {
    let (res, ledger, formulas) = match pivot {
        PivotKind::Classical => {
            let mut ledger = CostLedger::new();
            let res = rref(sys, &mut ClassicalScan, &mut ledger);
            let rounds = sys.coefficients().rows() as u64;
            (res, ledger, CostRow::formulas(rounds))
        }
        PivotKind::Grover => {
            let report = qgje_rref(sys, seed);
            (
                report.rref_result,
                report.ledger,
                CostRow::formulas(report.rounds),
            )
        }
    };

    if format == OutputFormat::Json {
        let mut v = json!({
            "pivot": res.strategy,
            "seed": seed,
            "rows": res.reduced.rows(),
            "cols": res.reduced.cols(),
            "rank": res.rank,
            "coefficient_rank": res.coefficient_rank(),
            "consistent": res.is_consistent(),
            "pivot_columns": res.pivot_columns,
            "reduced": matrix_json(&res.reduced),
            "row_operations": res.row_op_log.len(),
        });
        if show_ledger {
            v["ledger"] = ledger_json(&ledger);
            v["formulas"] = json!({
                "rounds": formulas.n,
                "paper_total": sig5_value(formulas.paper_total),
                "closed_form": sig5_value(formulas.closed_form),
                "printed_form": sig5_value(formulas.printed_form),
                "ratio": sig5_value(formulas.ratio),
            });
        }
        return (json_text(&v), 0);
    }

    let mut s = String::new();
    let cols: Vec<String> = res.pivot_columns.iter().map(ToString::to_string).collect();
    writeln!(s, "pivot: {}", res.strategy).unwrap();
    writeln!(s, "rank: {}", res.rank).unwrap();
    writeln!(s, "pivot_columns: {}", cols.join(" ")).unwrap();
    writeln!(s, "consistent: {}", res.is_consistent()).unwrap();
    writeln!(s, "reduced:").unwrap();
    write!(s, "{}", res.reduced).unwrap();
    if show_ledger {
        writeln!(s, "ledger:").unwrap();
        writeln!(s, "{ledger}").unwrap();
        writeln!(s, "formulas at N = {}:", formulas.n).unwrap();
        writeln!(s, "  paper_total   {}", format_sig5(formulas.paper_total)).unwrap();
        writeln!(s, "  closed_form   {}", format_sig5(formulas.closed_form)).unwrap();
        writeln!(s, "  printed_form  {}", format_sig5(formulas.printed_form)).unwrap();
        writeln!(s, "  ratio         {}", format_sig5(formulas.ratio)).unwrap();
    }
    (s, 0)
}

fn cmd_solve(sys: &AugmentedSystem, format: OutputFormat) -> (String, i32) {
    let res = rref(sys, &mut ClassicalScan, &mut CostLedger::new());
    let space = solve_from_rref(&res);
    let code = if space.kind == SolutionKind::Inconsistent {
        1
    } else {
        0
    };
    let kind = match space.kind {
        SolutionKind::Unique => "unique",
        SolutionKind::Affine => "affine",
        SolutionKind::Inconsistent => "inconsistent",
    };

    if format == OutputFormat::Json {
        let vec_json =
            |v: &[Rational]| Value::Array(v.iter().map(|e| Value::from(e.to_string())).collect());
        let v = json!({
            "kind": kind,
            "rank": res.coefficient_rank(),
            "dimension": space.dimension(),
            "particular": space.particular.as_deref().map(vec_json),
            "basis": space.basis.iter().map(|b| vec_json(b)).collect::<Vec<_>>(),
        });
        return (json_text(&v), code);
    }

    let mut s = String::new();
    writeln!(s, "kind: {kind}").unwrap();
    if let Some(p) = &space.particular {
        writeln!(s, "dimension: {}", space.dimension()).unwrap();
        writeln!(s, "particular: {}", vector_text(p)).unwrap();
        if !space.basis.is_empty() {
            writeln!(s, "basis:").unwrap();
            for b in &space.basis {
                writeln!(s, "  {}", vector_text(b)).unwrap();
            }
        }
    } else {
        writeln!(s, "no solution: the reduced system contains a row 0 = 1").unwrap();
    }
    (s, code)
}

fn cmd_grover(
    n: usize,
    marked: &[usize],
    seed: u64,
    iters: Option<usize>,
    format: OutputFormat,
) -> (String, i32) {
    let oracle = Oracle::from_indices(n, marked).expect("validated indices");
    let t = oracle.marked_count();
    let k = oracle.search_size();
    let mut plan = GroverPlan::new(n, (t > 0).then_some(t)).expect("validated n");
    if let Some(m) = iters {
        plan = plan.with_iterations(m);
    }
    let optimal = grover::iteration_count(k, t.max(1)).expect("t within K");

    let mut trace_oracle = oracle.clone();
    let trace = grover::marked_probability_trace(&mut trace_oracle, plan.iterations)
        .expect("oracle and register agree");

    let mut search_oracle = oracle;
    let mut rng = labeled_rng(seed, "grover");
    let result = grover::grover_search(&mut search_oracle, &mut rng, &plan, true)
        .expect("oracle and plan agree");

    if format == OutputFormat::Json {
        let v = json!({
            "n": n,
            "search_size": k,
            "marked": oracle_marked(marked),
            "iterations": plan.iterations,
            "optimal_iterations": optimal,
            "retry_schedule": plan.retry_schedule,
            "trace": trace.iter().map(|&p| sig5_value(p)).collect::<Vec<_>>(),
            "found": result.found,
            "verified": result.verified,
            "oracle_queries": result.oracle_queries,
            "grover_iterations": result.grover_iterations,
            "measurements": result.measurements,
            "fallback_scanned": result.fallback_scanned,
        });
        return (json_text(&v), 0);
    }

    let mut s = String::new();
    writeln!(
        s,
        "plan: n={n} K={k} marked={t} iterations={} optimal={optimal}",
        plan.iterations
    )
    .unwrap();
    writeln!(s, "trace:").unwrap();
    for (m, p) in trace.iter().enumerate() {
        writeln!(s, "  m={m:<3} p_marked={}", format_sig5(*p)).unwrap();
    }
    match result.found {
        Some(i) => writeln!(s, "measured: {i}").unwrap(),
        None => writeln!(s, "measured: none").unwrap(),
    }
    writeln!(s, "verified: {}", result.verified).unwrap();
    writeln!(
        s,
        "queries: oracle={} iterations={} measurements={} fallback={}",
        result.oracle_queries,
        result.grover_iterations,
        result.measurements,
        result.fallback_scanned
    )
    .unwrap();
    (s, 0)
}

fn oracle_marked(marked: &[usize]) -> Vec<usize> {
    let mut m = marked.to_vec();
    m.sort_unstable();
    m.dedup();
    m
}

fn cmd_deutsch(table: [bool; 2], format: OutputFormat) -> (String, i32) {
    let class = grover::deutsch_classify(table);
    let name = match class {
        grover::DeutschClass::Constant => "constant",
        grover::DeutschClass::Balanced => "balanced",
    };
    let bits = format!("{},{}", table[0] as u8, table[1] as u8);
    if format == OutputFormat::Json {
        return (json_text(&json!({ "table": bits, "class": name })), 0);
    }
    (format!("table: {bits}\nclass: {name}\n"), 0)
}

fn cmd_add(n: usize, a: u64, b: u64, trace: bool, format: OutputFormat) -> (String, i32) {
    let t = qft::quantum_add_traced(a, b, n).expect("validated operands");
    if format == OutputFormat::Json {
        let mut v = json!({ "n": n, "a": a, "b": b, "sum": t.sum });
        if trace {
            v["initial"] = json!({ "phase_word": t.initial_word, "fraction": t.initial_fraction });
            v["stages"] = serde_json::to_value(&t.stages).expect("stages");
        }
        return (json_text(&v), 0);
    }
    let mut s = String::new();
    if trace {
        writeln!(
            s,
            "qft |{a}>: phase word {} = {}",
            t.initial_fraction, t.initial_word
        )
        .unwrap();
        for st in &t.stages {
            writeln!(
                s,
                "add {}*2^{}: phase word {} = {}",
                st.digit, st.position, st.fraction, st.phase_word
            )
            .unwrap();
        }
    }
    writeln!(s, "{a} + {b} mod 2^{n} = {}", t.sum).unwrap();
    (s, 0)
}

fn cmd_cost(
    max_n: u64,
    no_sim: bool,
    seed: u64,
    trials: usize,
    format: OutputFormat,
) -> (String, i32) {
    let settings = SimulationSettings {
        seed,
        trials,
        ..SimulationSettings::default()
    };
    let rows = cost_report(max_n, (!no_sim).then_some(&settings));
    let sim = |r: &CostRow| r.simulated_mean.map(format_sig5).unwrap_or_default();
    let mut s = String::new();
    match format {
        OutputFormat::Csv => {
            writeln!(
                s,
                "N,paper_total,closed_form,floored_closed_form,simulated_mean,ratio"
            )
            .unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "{},{},{},{:.0},{},{}",
                    r.n,
                    format_sig5(r.paper_total),
                    format_sig5(r.closed_form),
                    r.floored_closed_form,
                    sim(r),
                    format_sig5(r.ratio)
                )
                .unwrap();
            }
        }
        OutputFormat::Json => {
            let v: Vec<Value> = rows
                .iter()
                .map(|r| {
                    json!({
                        "n": r.n,
                        "paper_total": sig5_value(r.paper_total),
                        "closed_form": sig5_value(r.closed_form),
                        "floored_closed_form": integral_value(r.floored_closed_form),
                        "printed_form": sig5_value(r.printed_form),
                        "simulated_mean": r.simulated_mean.map(sig5_value),
                        "ratio": sig5_value(r.ratio),
                    })
                })
                .collect();
            s = json_text(&Value::Array(v));
        }
        OutputFormat::Text => {
            writeln!(s, "paper_total:  {}", CostModel::PaperFormula.description()).unwrap();
            writeln!(
                s,
                "closed_form:  N(N+1) + (N-1)N(2N-1)/3 + sqrt2 (sqrt2^N - 1)/(sqrt2 - 1)"
            )
            .unwrap();
            writeln!(
                s,
                "printed_form: N(N-1)(2N+1)/3 + [sqrt2 (sqrt2^N - 1)/(sqrt2 - 1)]"
            )
            .unwrap();
            writeln!(s, "simulated:    {}", CostModel::Simulated.description()).unwrap();
            writeln!(
                s,
                "note: the round sum charges 2(n-1)^2 for clearing a column, the same as \
                 (n-1) rows x 2(n-1) operations;\n      the simulated ledger counts the \
                 operations actually performed on [A|b], skipping zero entries"
            )
            .unwrap();
            writeln!(
                s,
                "{:>4} {:>14} {:>14} {:>14} {:>14} {:>12} {:>8}",
                "N", "paper_total", "closed_form", "floored", "printed_form", "simulated", "ratio"
            )
            .unwrap();
            for r in &rows {
                writeln!(
                    s,
                    "{:>4} {:>14} {:>14} {:>14.0} {:>14} {:>12} {:>8}",
                    r.n,
                    format_sig5(r.paper_total),
                    format_sig5(r.closed_form),
                    r.floored_closed_form,
                    format_sig5(r.printed_form),
                    sim(r),
                    format_sig5(r.ratio)
                )
                .unwrap();
            }
        }
    }
    (s, 0)
}
