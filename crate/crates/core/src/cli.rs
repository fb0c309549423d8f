//! Command-line front end. [`run`] parses arguments, executes one
//! subcommand and returns the process exit code.

use std::ffi::OsString;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::budget::Deadline;
use crate::charsample::{characteristic_sample, random_minimal_moore};
use crate::error::Error;
use crate::eval::{csv_row, format_table, run_benchmark_with, scores, BenchmarkConfig, CSV_HEADER};
use crate::formats::{
    machine_from_json, machine_to_json, moore_to_dot, read_traces, read_traces_with, write_traces_as, TraceFormat,
};
use crate::learners::{learn_within, Algorithm};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_DATA: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "moore-learn",
    version,
    about = "Learn Moore machines from input-output traces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Learn a machine from a trace file and check it against every trace.
    Learn(LearnArgs),
    /// Generate a random minimal machine and its characteristic sample.
    Generate(GenerateArgs),
    /// Score a machine on a test trace file.
    Evaluate(EvaluateArgs),
    /// Run the generate/learn/evaluate experiment over several seeds.
    Benchmark(BenchmarkArgs),
    /// Convert a machine file to DOT.
    ExportDot(ExportDotArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Line,
    Structured,
    Dot,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum AlgoArg {
    Ptap,
    Prpni,
    Mooremi,
}

impl From<AlgoArg> for Algorithm {
    fn from(a: AlgoArg) -> Self {
        match a {
            AlgoArg::Ptap => Algorithm::Ptap,
            AlgoArg::Prpni => Algorithm::Prpni,
            AlgoArg::Mooremi => Algorithm::MooreMi,
        }
    }
}

#[derive(Args, Debug)]
struct LearnArgs {
    /// Trace file, line format or JSON.
    traces: PathBuf,
    #[arg(long, value_enum, default_value = "mooremi")]
    algo: AlgoArg,
    /// Machine output path; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
    /// Also write a DOT rendering here.
    #[arg(long)]
    dot: Option<PathBuf>,
    /// Machine output format: structured or dot.
    #[arg(long, value_enum, default_value = "structured")]
    format: Format,
    #[arg(long)]
    timeout_s: Option<f64>,
}

#[derive(Args, Debug)]
struct GenerateArgs {
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[arg(long)]
    states: usize,
    #[arg(long)]
    inputs: usize,
    #[arg(long)]
    outputs: usize,
    /// Machine output path (JSON); not written when omitted.
    #[arg(long)]
    machine_out: Option<PathBuf>,
    /// Sample output path; stdout when omitted.
    #[arg(long)]
    sample_out: Option<PathBuf>,
    /// Sample format: line or structured.
    #[arg(long, value_enum, default_value = "line")]
    format: Format,
    /// Print shortest prefixes, nucleus and suffixes to stderr.
    #[arg(long)]
    report: bool,
}

#[derive(Args, Debug)]
struct EvaluateArgs {
    /// Machine file (JSON).
    machine: PathBuf,
    /// Test trace file.
    test: PathBuf,
}

#[derive(Args, Debug)]
struct BenchmarkArgs {
    /// Flat TOML config; flags below override its keys.
    config: Option<PathBuf>,
    #[arg(long)]
    states: Option<usize>,
    #[arg(long)]
    inputs: Option<usize>,
    #[arg(long)]
    outputs: Option<usize>,
    /// Number of seeds.
    #[arg(long)]
    seeds: Option<u64>,
    /// First seed.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    timeout_s: Option<f64>,
    /// Restrict to one algorithm.
    #[arg(long, value_enum)]
    algo: Option<AlgoArg>,
    /// Write the CSV here instead of stdout.
    #[arg(long)]
    csv: Option<PathBuf>,
}

#[derive(Args, Debug)]
struct ExportDotArgs {
    machine: PathBuf,
    #[arg(long, short)]
    out: Option<PathBuf>,
}

/// Failure of a subcommand, carrying its exit code.
#[derive(Debug)]
struct Failure {
    code: i32,
    message: String,
}

impl Failure {
    fn usage(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: message.into(),
        }
    }

    fn internal(message: impl Into<String>) -> Self {
        Failure {
            code: EXIT_INTERNAL,
            message: message.into(),
        }
    }
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::InvalidArgument(_) => EXIT_USAGE,
            _ => EXIT_DATA,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

type CmdResult = Result<(), Failure>;

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| Failure {
        code: EXIT_DATA,
        message: format!("{}: {e}", path.display()),
    })
}

fn emit(path: Option<&Path>, text: &str, stdout: &mut dyn Write) -> CmdResult {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure {
            code: EXIT_DATA,
            message: format!("{}: {e}", p.display()),
        }),
        None => stdout
            .write_all(text.as_bytes())
            .map_err(|e| Failure::internal(e.to_string())),
    }
}

fn deadline(timeout_s: Option<f64>) -> Result<Deadline, Failure> {
    match timeout_s {
        None => Ok(Deadline::none()),
        Some(t) if t.is_finite() && t > 0.0 => Ok(Deadline::after(Duration::from_secs_f64(t))),
        Some(_) => Err(Failure::usage("--timeout-s must be positive")),
    }
}

fn cmd_learn(a: LearnArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    if a.format == Format::Line {
        return Err(Failure::usage("learned machines are written as structured or dot"));
    }
    let ts = read_traces(&read(&a.traces)?)?;
    let learned = learn_within(&ts, a.algo.into(), deadline(a.timeout_s)?)?;
    let m = &learned.machine;
    for t in &ts {
        if m.run(t.input()).ok().as_deref() != Some(t.output()) {
            return Err(Failure::internal(format!(
                "learned machine disagrees with trace `{}`",
                ts.inputs().display_word(t.input())
            )));
        }
    }
    let s = &learned.stats;
    let _ = writeln!(
        stderr,
        "{}: {} states ({} before completion), {} traces, {:.3} s; merges {}/{}; consistent with all traces",
        a.algo.to_possible_value().unwrap().get_name(),
        m.num_states(),
        s.states_before_completion,
        ts.len(),
        s.elapsed.as_secs_f64(),
        s.merges_accepted,
        s.merge_attempts,
    );
    let text = match a.format {
        Format::Dot => moore_to_dot(m),
        _ => machine_to_json(m) + "\n",
    };
    emit(a.out.as_deref(), &text, stdout)?;
    if let Some(p) = a.dot.as_deref() {
        emit(Some(p), &moore_to_dot(m), stdout)?;
    }
    Ok(())
}

fn cmd_generate(a: GenerateArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let format = match a.format {
        Format::Line => TraceFormat::Line,
        Format::Structured => TraceFormat::Structured,
        Format::Dot => return Err(Failure::usage("samples are written as line or structured")),
    };
    let m = random_minimal_moore(a.seed, a.states, a.inputs, a.outputs)?;
    let report = characteristic_sample(&m)?;
    if a.report {
        let w = |x: &[usize]| m.inputs().display_word(x);
        for (q, u) in report.shortest_prefixes.iter().enumerate() {
            let _ = writeln!(stderr, "prefix q{q}: {}", w(u.as_slice()));
        }
        let nl: Vec<_> = report.nucleus.iter().map(|v| w(v.as_slice())).collect();
        let _ = writeln!(stderr, "nucleus: {}", nl.join(", "));
        for (p, q, s) in &report.suffixes {
            let _ = writeln!(stderr, "suffix q{p} q{q}: {}", w(s));
        }
    }
    if let Some(p) = a.machine_out.as_deref() {
        emit(Some(p), &(machine_to_json(&m) + "\n"), stdout)?;
    }
    emit(
        a.sample_out.as_deref(),
        &write_traces_as(&report.sample, format),
        stdout,
    )
}

fn cmd_evaluate(a: EvaluateArgs, stdout: &mut dyn Write) -> CmdResult {
    let m = machine_from_json(&read(&a.machine)?)?;
    let test = read_traces_with(&read(&a.test)?, Some((m.inputs(), m.outputs())))?;
    let s = scores(&test, &m)?;
    let text = format!(
        "strong: {:.2}%\nmedium: {:.2}%\nweak: {:.2}%\n",
        100.0 * s.strong,
        100.0 * s.medium,
        100.0 * s.weak
    );
    emit(None, &text, stdout)
}

fn cmd_benchmark(a: BenchmarkArgs, stdout: &mut dyn Write, stderr: &mut dyn Write) -> CmdResult {
    let mut cfg = match a.config.as_deref() {
        Some(p) => BenchmarkConfig::from_toml(&read(p)?).map_err(|e| match e {
            Error::Structured(m) => Failure::usage(format!("{}: {m}", p.display())),
            e => Failure::usage(e.to_string()),
        })?,
        None => {
            let (Some(s), Some(i), Some(o)) = (a.states, a.inputs, a.outputs) else {
                return Err(Failure::usage(
                    "benchmark needs a config file or --states, --inputs and --outputs",
                ));
            };
            BenchmarkConfig::new(s, i, o)
        }
    };
    if let Some(v) = a.states {
        cfg.states = v;
    }
    if let Some(v) = a.inputs {
        cfg.inputs = v;
    }
    if let Some(v) = a.outputs {
        cfg.outputs = v;
    }
    if let Some(v) = a.seeds {
        cfg.seeds = v;
    }
    if let Some(v) = a.seed {
        cfg.first_seed = v;
    }
    if let Some(v) = a.timeout_s {
        deadline(Some(v))?;
        cfg.timeout_s = v;
    }
    if let Some(v) = a.algo {
        cfg.algorithms = Algorithm::from(v).name().to_string();
    }
    let mut csv = format!("{CSV_HEADER}\n");
    let results = run_benchmark_with(&cfg, |r| {
        let row = csv_row(r);
        let _ = writeln!(stderr, "{row}");
        csv.push_str(&row);
        csv.push('\n');
    })?;
    match a.csv.as_deref() {
        Some(p) => emit(Some(p), &csv, stdout)?,
        None => emit(None, &(csv + "\n"), stdout)?,
    }
    emit(None, &format_table(&cfg, &results), stdout)
}

fn cmd_export_dot(a: ExportDotArgs, stdout: &mut dyn Write) -> CmdResult {
    let m = machine_from_json(&read(&a.machine)?)?;
    emit(a.out.as_deref(), &moore_to_dot(&m), stdout)
}

/// Runs the command line `args` (program name first) and returns the exit code.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                EXIT_USAGE
            } else {
                let _ = stdout.write_all(text.as_bytes());
                EXIT_OK
            };
        }
    };
    let result = match cli.command {
        Command::Learn(a) => cmd_learn(a, stdout, stderr),
        Command::Generate(a) => cmd_generate(a, stdout, stderr),
        Command::Evaluate(a) => cmd_evaluate(a, stdout),
        Command::Benchmark(a) => cmd_benchmark(a, stdout, stderr),
        Command::ExportDot(a) => cmd_export_dot(a, stdout),
    };
    match result {
        Ok(()) => EXIT_OK,
        Err(f) => {
            let _ = writeln!(stderr, "error: {}", f.message);
            f.code
        }
    }
}
