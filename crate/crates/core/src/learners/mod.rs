//! The three learners: PTAP (prefix tree product, completed with
//! self-loops), PRPNI (one RPNI run per output bit, then a synchronous
//! product) and MooreMI (red/blue state merging on all bits at once).

mod pta;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

pub use pta::{build_ptap, MergeRejected, PtaProduct, UndoLog};

use crate::automata::{product_aligned, product_general_within, Alphabet, Dfa, MooreMachine, StateId, StateWord};
use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::traces::{
    make_encoding, partition_examples, traces_to_examples, BitExamples, ExamplePartition, OutputEncoding, TraceSet,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Algorithm {
    Ptap,
    Prpni,
    MooreMi,
}

impl Algorithm {
    pub const ALL: [Algorithm; 3] = [Algorithm::Ptap, Algorithm::Prpni, Algorithm::MooreMi];

    pub fn name(self) -> &'static str {
        match self {
            Algorithm::Ptap => "ptap",
            Algorithm::Prpni => "prpni",
            Algorithm::MooreMi => "mooremi",
        }
    }
}

impl fmt::Display for Algorithm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Algorithm {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "ptap" => Ok(Algorithm::Ptap),
            "prpni" => Ok(Algorithm::Prpni),
            "mooremi" => Ok(Algorithm::MooreMi),
            other => Err(Error::InvalidArgument(format!("unknown algorithm `{other}`"))),
        }
    }
}

/// Counters collected by one learner run.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct LearnStats {
    pub merge_attempts: u64,
    pub merges_accepted: u64,
    /// Determinization merges where the red-side state was the larger one.
    pub survivor_swaps: u64,
    /// States of the initial prefix tree product.
    pub tree_states: usize,
    pub states_before_completion: usize,
    pub states_after_completion: usize,
    pub self_loops_added: usize,
    pub elapsed: Duration,
}

/// A learned machine and the statistics of the run that produced it.
#[derive(Clone, Debug)]
pub struct Learned {
    pub machine: MooreMachine,
    pub stats: LearnStats,
}

struct Prepared {
    encoding: OutputEncoding,
    partition: ExamplePartition,
}

fn prepare(ts: &TraceSet) -> Result<Prepared> {
    let examples = traces_to_examples(ts)?;
    let encoding = make_encoding(ts.outputs());
    let partition = partition_examples(&examples, &encoding);
    Ok(Prepared { encoding, partition })
}

/// Red/blue merge loop shared by RPNI and MooreMI.
///
/// Blue states are taken smallest first; each is merged into the first red
/// state (smallest first) that accepts it, otherwise it is promoted to red.
fn red_blue(p: &mut PtaProduct, deadline: Deadline, stats: &mut LearnStats) -> Result<()> {
    let mut red: BTreeSet<StateId> = BTreeSet::from([p.find(0)]);
    let mut blue: BTreeSet<StateId> = p.successors(p.find(0)).filter(|t| !red.contains(t)).collect();
    let mut ticks = 0u32;
    while let Some(b) = blue.pop_first() {
        deadline.tick(&mut ticks)?;
        if !p.is_alive(b) || red.contains(&b) {
            continue;
        }
        let mut accepted = false;
        for &r in &red {
            stats.merge_attempts += 1;
            if let Ok(log) = p.try_merge(r, b) {
                stats.merges_accepted += 1;
                stats.survivor_swaps += log.swaps() as u64;
                if log.swaps() > 0 {
                    red = red.iter().map(|&q| p.find(q)).collect();
                }
                accepted = true;
                break;
            }
        }
        if accepted {
            for &r in &red {
                blue.extend(p.successors(r).filter(|t| !red.contains(t)));
            }
        } else {
            red.insert(b);
            blue.extend(p.successors(b).filter(|t| !red.contains(t)));
        }
    }
    Ok(())
}

/// Prefix tree product, overlaid and completed with self-loops.
pub fn learn_ptap(ts: &TraceSet) -> Result<Learned> {
    learn_ptap_within(ts, Deadline::none())
}

pub fn learn_ptap_within(ts: &TraceSet, deadline: Deadline) -> Result<Learned> {
    let start = Instant::now();
    let prep = prepare(ts)?;
    let p = build_ptap(&prep.partition, ts.inputs())?;
    deadline.check()?;
    finish_aligned(&p, &prep.encoding, start, LearnStats::default())
}

/// State merging on all output bits at once over one shared skeleton.
pub fn learn_mooremi(ts: &TraceSet) -> Result<Learned> {
    learn_mooremi_within(ts, Deadline::none())
}

pub fn learn_mooremi_within(ts: &TraceSet, deadline: Deadline) -> Result<Learned> {
    let start = Instant::now();
    let prep = prepare(ts)?;
    let mut p = build_ptap(&prep.partition, ts.inputs())?;
    let mut stats = LearnStats::default();
    red_blue(&mut p, deadline, &mut stats)?;
    finish_aligned(&p, &prep.encoding, start, stats)
}

fn finish_aligned(p: &PtaProduct, enc: &OutputEncoding, start: Instant, mut stats: LearnStats) -> Result<Learned> {
    if stats.tree_states == 0 {
        stats.tree_states = p.capacity();
    }
    let partial = product_aligned(&p.to_dfas(), enc)?;
    let machine = partial.complete_with_self_loops();
    stats.states_before_completion = partial.num_states();
    stats.states_after_completion = machine.num_states();
    stats.self_loops_added = partial.missing_transitions();
    stats.elapsed = start.elapsed();
    Ok(Learned { machine, stats })
}

/// Classical RPNI on one positive/negative pair, completed with self-loops.
pub fn rpni(positive: &BTreeSet<StateWord>, negative: &BTreeSet<StateWord>, inputs: &Alphabet) -> Result<Dfa> {
    let bit = BitExamples {
        positive: positive.clone(),
        negative: negative.clone(),
    };
    Ok(rpni_within(&bit, inputs, Deadline::none(), &mut LearnStats::default())?.complete_with_self_loops())
}

fn rpni_within(bit: &BitExamples, inputs: &Alphabet, deadline: Deadline, stats: &mut LearnStats) -> Result<Dfa> {
    let partition = ExamplePartition {
        bits: vec![bit.clone()],
    };
    let mut p = build_ptap(&partition, inputs)?;
    stats.tree_states += p.capacity();
    red_blue(&mut p, deadline, stats)?;
    Ok(p.to_dfas().pop().expect("one bit"))
}

/// One RPNI per output bit, joined by the reachable synchronous product of
/// the partial DFAs and then completed with self-loops.
pub fn learn_prpni(ts: &TraceSet) -> Result<Learned> {
    learn_prpni_within(ts, Deadline::none())
}

pub fn learn_prpni_within(ts: &TraceSet, deadline: Deadline) -> Result<Learned> {
    let start = Instant::now();
    let prep = prepare(ts)?;
    let mut stats = LearnStats::default();
    let dfas = prep
        .partition
        .bits
        .iter()
        .map(|bit| rpni_within(bit, ts.inputs(), deadline, &mut stats))
        .collect::<Result<Vec<_>>>()?;
    let product = product_general_within(&dfas, &prep.encoding, deadline)?;
    stats.states_before_completion = product.num_states();
    stats.self_loops_added = product.missing_transitions();
    let machine = product.complete_with_self_loops();
    stats.states_after_completion = machine.num_states();
    stats.elapsed = start.elapsed();
    Ok(Learned { machine, stats })
}

pub fn learn(ts: &TraceSet, algorithm: Algorithm) -> Result<Learned> {
    learn_within(ts, algorithm, Deadline::none())
}

pub fn learn_within(ts: &TraceSet, algorithm: Algorithm, deadline: Deadline) -> Result<Learned> {
    match algorithm {
        Algorithm::Ptap => learn_ptap_within(ts, deadline),
        Algorithm::Prpni => learn_prpni_within(ts, deadline),
        Algorithm::MooreMi => learn_mooremi_within(ts, deadline),
    }
}
