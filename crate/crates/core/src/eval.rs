//! Accuracy of a learned machine on test traces, test-set generation and the
//! benchmark harness.

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Deserialize;

use crate::automata::{MooreMachine, Symbol};
use crate::budget::Deadline;
use crate::charsample::{characteristic_sample, random_minimal_moore};
use crate::error::{Error, Result};
use crate::learners::{learn_within, Algorithm};
use crate::traces::{MooreTrace, TraceSet};

/// How a produced output sequence is scored against the expected one.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum AccuracyPolicy {
    /// 1 on an exact match, else 0.
    Strong,
    /// Length of the longest matching prefix over the sequence length.
    Medium,
    /// Fraction of matching positions.
    Weak,
}

impl AccuracyPolicy {
    pub const ALL: [AccuracyPolicy; 3] = [AccuracyPolicy::Strong, AccuracyPolicy::Medium, AccuracyPolicy::Weak];
}

/// Scores two output sequences of equal length.
pub fn score_outputs(policy: AccuracyPolicy, expected: &[Symbol], produced: &[Symbol]) -> f64 {
    debug_assert_eq!(expected.len(), produced.len());
    let n = expected.len() as f64;
    let pairs = expected.iter().zip(produced);
    match policy {
        AccuracyPolicy::Strong => f64::from(u8::from(expected == produced)),
        AccuracyPolicy::Medium => pairs.take_while(|(y, z)| y == z).count() as f64 / n,
        AccuracyPolicy::Weak => pairs.filter(|(y, z)| y == z).count() as f64 / n,
    }
}

fn produced(expected: &MooreTrace, m: &MooreMachine) -> Result<Vec<Symbol>> {
    if let Some(&a) = expected.input().iter().find(|&&a| a >= m.inputs().len()) {
        return Err(Error::UnknownSymbol(format!("input ordinal {a}")));
    }
    m.run(expected.input())
}

/// Score of `m` on one trace. `m` must define every transition the trace uses.
pub fn score_trace(policy: AccuracyPolicy, expected: &MooreTrace, m: &MooreMachine) -> Result<f64> {
    Ok(score_outputs(policy, expected.output(), &produced(expected, m)?))
}

/// Mean score over a non-empty test set.
pub fn accuracy(policy: AccuracyPolicy, test: &TraceSet, m: &MooreMachine) -> Result<f64> {
    Ok(match policy {
        AccuracyPolicy::Strong => scores(test, m)?.strong,
        AccuracyPolicy::Medium => scores(test, m)?.medium,
        AccuracyPolicy::Weak => scores(test, m)?.weak,
    })
}

/// All three mean scores, as fractions in `[0, 1]`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Scores {
    pub strong: f64,
    pub medium: f64,
    pub weak: f64,
}

/// Runs `m` once per test trace and averages every policy.
pub fn scores(test: &TraceSet, m: &MooreMachine) -> Result<Scores> {
    if test.is_empty() {
        return Err(Error::EmptyTestSet);
    }
    if test.inputs() != m.inputs() {
        return Err(Error::AlphabetMismatch);
    }
    let (mut s, mut md, mut w) = (0.0, 0.0, 0.0);
    for t in test {
        let z = produced(t, m)?;
        s += score_outputs(AccuracyPolicy::Strong, t.output(), &z);
        md += score_outputs(AccuracyPolicy::Medium, t.output(), &z);
        w += score_outputs(AccuracyPolicy::Weak, t.output(), &z);
    }
    let n = test.len() as f64;
    Ok(Scores {
        strong: s / n,
        medium: md / n,
        weak: w / n,
    })
}

/// `2·|training|` traces of `m` on uniformly random inputs of length
/// `2·(longest training input)`. Duplicate words are redrawn, so when fewer
/// distinct words of that length exist, all of them are returned.
pub fn generate_test_set(m: &MooreMachine, training: &TraceSet, seed: u64) -> Result<TraceSet> {
    if !m.is_complete() {
        return Err(Error::Incomplete);
    }
    let len = 2 * training.max_input_len();
    let k = m.inputs().len();
    let available = u32::try_from(len)
        .ok()
        .and_then(|l| k.checked_pow(l))
        .unwrap_or(usize::MAX);
    let target = (2 * training.len()).min(available);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut out = TraceSet::new(m.inputs().clone(), m.outputs().clone());
    while out.len() < target {
        let input: Vec<Symbol> = (0..len).map(|_| rng.random_range(0..k)).collect();
        let output = m.run(&input)?;
        out.push(MooreTrace::new(input, output)?)?;
    }
    Ok(out)
}

/// Benchmark parameters, read from a flat TOML file.
///
/// ```toml
/// states = 50
/// inputs = 25
/// outputs = 25
/// seeds = 5          # seeds first_seed .. first_seed + seeds
/// first_seed = 1
/// timeout_s = 60
/// algorithms = "ptap,prpni,mooremi"
/// ```
#[derive(Clone, Debug, Deserialize, PartialEq)]
#[serde(deny_unknown_fields)]
pub struct BenchmarkConfig {
    pub states: usize,
    pub inputs: usize,
    pub outputs: usize,
    #[serde(default = "default_seeds")]
    pub seeds: u64,
    #[serde(default = "default_first_seed")]
    pub first_seed: u64,
    #[serde(default = "default_timeout")]
    pub timeout_s: f64,
    #[serde(default = "default_algorithms")]
    pub algorithms: String,
}

fn default_seeds() -> u64 {
    5
}
fn default_first_seed() -> u64 {
    1
}
fn default_timeout() -> f64 {
    60.0
}
fn default_algorithms() -> String {
    "ptap,prpni,mooremi".into()
}

impl BenchmarkConfig {
    pub fn new(states: usize, inputs: usize, outputs: usize) -> Self {
        BenchmarkConfig {
            states,
            inputs,
            outputs,
            seeds: default_seeds(),
            first_seed: default_first_seed(),
            timeout_s: default_timeout(),
            algorithms: default_algorithms(),
        }
    }

    pub fn from_toml(text: &str) -> Result<Self> {
        let cfg: BenchmarkConfig = toml::from_str(text).map_err(|e| Error::Structured(e.to_string()))?;
        cfg.algorithm_list()?;
        if !(cfg.timeout_s.is_finite() && cfg.timeout_s > 0.0) {
            return Err(Error::InvalidArgument("timeout_s must be positive".into()));
        }
        Ok(cfg)
    }

    pub fn algorithm_list(&self) -> Result<Vec<Algorithm>> {
        self.algorithms
            .split(',')
            .map(str::trim)
            .filter(|s| !s.is_empty())
            .map(str::parse)
            .collect()
    }

    pub fn seed_list(&self) -> impl Iterator<Item = u64> {
        let first = self.first_seed;
        (0..self.seeds).map(move |i| first.wrapping_add(i))
    }
}

/// One learner run on one generated machine.
#[derive(Clone, Debug, PartialEq)]
pub struct BenchmarkResult {
    pub seed: u64,
    pub algorithm: Algorithm,
    pub states_target: usize,
    /// `None` on timeout.
    pub states_learned: Option<usize>,
    pub time_s: f64,
    /// Percentages, `None` on timeout.
    pub strong: Option<f64>,
    pub medium: Option<f64>,
    pub weak: Option<f64>,
    pub timeout: bool,
}

const TEST_SEED_SALT: u64 = 0x7e57_5eed_0000_0001;

/// Per seed: generate a minimal machine, learn it from its characteristic
/// sample with each algorithm under the timeout, and score the result on a
/// fresh test set. Runs are sequential so wall times are comparable.
pub fn run_benchmark(config: &BenchmarkConfig) -> Result<Vec<BenchmarkResult>> {
    run_benchmark_with(config, |_| {})
}

/// [`run_benchmark`], reporting each result as soon as it is available.
pub fn run_benchmark_with(
    config: &BenchmarkConfig,
    mut on_result: impl FnMut(&BenchmarkResult),
) -> Result<Vec<BenchmarkResult>> {
    let algorithms = config.algorithm_list()?;
    let timeout = Duration::from_secs_f64(config.timeout_s);
    let mut results = Vec::new();
    for seed in config.seed_list() {
        let target = random_minimal_moore(seed, config.states, config.inputs, config.outputs)?;
        let training = characteristic_sample(&target)?.sample;
        let test = generate_test_set(&target, &training, seed ^ TEST_SEED_SALT)?;
        for &algorithm in &algorithms {
            let start = Instant::now();
            let result = match learn_within(&training, algorithm, Deadline::after(timeout)) {
                Ok(learned) => {
                    let time_s = start.elapsed().as_secs_f64();
                    let s = scores(&test, &learned.machine)?;
                    BenchmarkResult {
                        seed,
                        algorithm,
                        states_target: config.states,
                        states_learned: Some(learned.machine.num_states()),
                        time_s,
                        strong: Some(100.0 * s.strong),
                        medium: Some(100.0 * s.medium),
                        weak: Some(100.0 * s.weak),
                        timeout: false,
                    }
                }
                Err(Error::Timeout) => BenchmarkResult {
                    seed,
                    algorithm,
                    states_target: config.states,
                    states_learned: None,
                    time_s: start.elapsed().as_secs_f64(),
                    strong: None,
                    medium: None,
                    weak: None,
                    timeout: true,
                },
                Err(e) => return Err(e),
            };
            on_result(&result);
            results.push(result);
        }
    }
    Ok(results)
}

pub const CSV_HEADER: &str = "seed,algo,states_target,states_learned,time_s,strong,medium,weak,timeout";

fn opt<T: std::fmt::Display>(v: Option<T>) -> String {
    v.map(|x| x.to_string()).unwrap_or_default()
}

pub fn csv_row(r: &BenchmarkResult) -> String {
    format!(
        "{},{},{},{},{:.6},{},{},{},{}",
        r.seed,
        r.algorithm,
        r.states_target,
        opt(r.states_learned),
        r.time_s,
        opt(r.strong.map(|v| format!("{v:.4}"))),
        opt(r.medium.map(|v| format!("{v:.4}"))),
        opt(r.weak.map(|v| format!("{v:.4}"))),
        r.timeout
    )
}

/// Header plus one line per result.
pub fn to_csv(results: &[BenchmarkResult]) -> String {
    let mut out = String::from(CSV_HEADER);
    out.push('\n');
    for r in results {
        out.push_str(&csv_row(r));
        out.push('\n');
    }
    out
}

/// Averages of one algorithm over its non-timed-out runs.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Summary {
    pub algorithm: Algorithm,
    pub runs: usize,
    pub timeouts: usize,
    /// `None` when every run timed out.
    pub time_s: Option<f64>,
    pub states: Option<f64>,
    pub strong: Option<f64>,
    pub medium: Option<f64>,
    pub weak: Option<f64>,
}

pub fn summarize(results: &[BenchmarkResult]) -> Vec<Summary> {
    let mut algorithms: Vec<Algorithm> = results.iter().map(|r| r.algorithm).collect();
    algorithms.sort();
    algorithms.dedup();
    algorithms
        .into_iter()
        .map(|algorithm| {
            let all: Vec<_> = results.iter().filter(|r| r.algorithm == algorithm).collect();
            let done: Vec<_> = all.iter().filter(|r| !r.timeout).collect();
            let mean = |f: &dyn Fn(&BenchmarkResult) -> f64| {
                (!done.is_empty()).then(|| done.iter().map(|r| f(r)).sum::<f64>() / done.len() as f64)
            };
            Summary {
                algorithm,
                runs: all.len(),
                timeouts: all.len() - done.len(),
                time_s: mean(&|r| r.time_s),
                states: mean(&|r| r.states_learned.unwrap_or(0) as f64),
                strong: mean(&|r| r.strong.unwrap_or(0.0)),
                medium: mean(&|r| r.medium.unwrap_or(0.0)),
                weak: mean(&|r| r.weak.unwrap_or(0.0)),
            }
        })
        .collect()
}

/// Text table with one row per algorithm: time, states and the three
/// accuracies, averaged over runs that finished.
pub fn format_table(config: &BenchmarkConfig, results: &[BenchmarkResult]) -> String {
    let mut out = String::new();
    let _ = writeln!(
        out,
        "|Q| = {}, |I| = {}, |O| = {}, timeout {} s",
        config.states, config.inputs, config.outputs, config.timeout_s
    );
    let _ = writeln!(
        out,
        "{:<10} {:>10} {:>10} {:>8} {:>8} {:>8} {:>9}",
        "Algorithm", "Time (s)", "States", "Strong", "Medium", "Weak", "Timeouts"
    );
    let cell = |v: Option<f64>, prec: usize| match v {
        Some(x) => format!("{x:.prec$}"),
        None => "timeout".into(),
    };
    for s in summarize(results) {
        let _ = writeln!(
            out,
            "{:<10} {:>10} {:>10} {:>8} {:>8} {:>8} {:>9}",
            s.algorithm.name().to_uppercase(),
            cell(s.time_s, 3),
            cell(s.states, 1),
            cell(s.strong, 2),
            cell(s.medium, 2),
            cell(s.weak, 2),
            format!("{}/{}", s.timeouts, s.runs)
        );
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::automata::Alphabet;
    use crate::fixtures::{fig4a, m1, m1_sample};
    use crate::learners::learn;

    fn digits() -> TraceSet {
        TraceSet::new(Alphabet::new(["a"]).unwrap(), Alphabet::new(["0", "1", "2"]).unwrap())
    }

    #[test]
    fn worked_example_scores() {
        let (y, z) = ([0, 0, 1, 2], [0, 0, 2, 2]);
        assert_eq!(score_outputs(AccuracyPolicy::Strong, &y, &z), 0.0);
        assert_eq!(score_outputs(AccuracyPolicy::Medium, &y, &z), 0.5);
        assert_eq!(score_outputs(AccuracyPolicy::Weak, &y, &z), 0.75);
        for p in AccuracyPolicy::ALL {
            assert_eq!(score_outputs(p, &y, &y), 1.0);
            assert_eq!(score_outputs(p, &[1], &[2]), 0.0);
        }
    }

    #[test]
    fn empty_test_set_rejected() {
        let m = MooreMachine::new(
            Alphabet::new(["a"]).unwrap(),
            Alphabet::new(["0", "1", "2"]).unwrap(),
            0,
            vec![vec![Some(0)]],
            vec![0],
        )
        .unwrap();
        assert!(matches!(
            accuracy(AccuracyPolicy::Weak, &digits(), &m),
            Err(Error::EmptyTestSet)
        ));
    }

    #[test]
    fn mean_of_two_traces() {
        let m = m1();
        let mut test = TraceSet::new(m.inputs().clone(), m.outputs().clone());
        test.push(MooreTrace::new(vec![0], vec![0, 0]).unwrap()).unwrap();
        test.push(MooreTrace::new(vec![1], vec![0, 0]).unwrap()).unwrap();
        assert_eq!(accuracy(AccuracyPolicy::Strong, &test, &m).unwrap(), 0.5);
        assert_eq!(accuracy(AccuracyPolicy::Weak, &test, &m).unwrap(), 0.75);
    }

    #[test]
    fn test_set_shape() {
        let m = fig4a();
        let training = crate::fixtures::fig3_traces();
        let test = generate_test_set(&m, &training, 3).unwrap();
        assert_eq!(test.len(), 6);
        assert!(test.iter().all(|t| t.input().len() == 4 && t.output().len() == 5));
        let again = generate_test_set(&m, &training, 3).unwrap();
        assert_eq!(test.traces(), again.traces());
        let learned = learn(&m1_sample(), Algorithm::MooreMi).unwrap().machine;
        let t = generate_test_set(&m1(), &m1_sample(), 9).unwrap();
        assert_eq!(
            scores(&t, &learned).unwrap(),
            Scores {
                strong: 1.0,
                medium: 1.0,
                weak: 1.0
            }
        );
    }

    #[test]
    fn config_parsing() {
        let c = BenchmarkConfig::from_toml("states = 4\ninputs = 2\noutputs = 2\nseeds = 2\n").unwrap();
        assert_eq!(c.seed_list().collect::<Vec<_>>(), vec![1, 2]);
        assert_eq!(c.algorithm_list().unwrap(), Algorithm::ALL.to_vec());
        assert!(BenchmarkConfig::from_toml("states = 4\ninputs = 2\noutputs = 2\nalgorithms = \"x\"").is_err());
        assert!(BenchmarkConfig::from_toml("states = 4\ninputs = 2\noutputs = 2\nbogus = 1").is_err());
    }

    #[test]
    fn toy_benchmark() {
        let mut c = BenchmarkConfig::new(4, 2, 2);
        c.seeds = 2;
        let r = run_benchmark(&c).unwrap();
        assert_eq!(r.len(), 6);
        let moore: Vec<_> = r.iter().filter(|r| r.algorithm == Algorithm::MooreMi).collect();
        assert!(moore
            .iter()
            .all(|r| r.strong == Some(100.0) && r.states_learned == Some(4)));
        let csv = to_csv(&r);
        assert_eq!(csv.lines().count(), 7);
        assert!(format_table(&c, &r).contains("MOOREMI"));
    }
}
