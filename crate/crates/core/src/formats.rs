//! Text and JSON formats for trace sets and machines, and DOT export.
//!
//! Line trace format, one trace per line, `#` starts a comment:
//!
//! ```text
//! !inputs: a b
//! !outputs: 0 1 2
//! a a | 0 2 0
//! | 0
//! ```
//!
//! Without `!inputs:` / `!outputs:` headers the alphabets are the sorted
//! sets of symbols that occur.

use std::collections::BTreeSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::automata::{Alphabet, Dfa, Mark, MooreMachine, StateId};
use crate::error::{Error, Result};
use crate::traces::{MooreTrace, TraceSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TraceFormat {
    Line,
    Structured,
}

struct RawTrace<'a> {
    line: usize,
    inputs: Vec<&'a str>,
    outputs: Vec<&'a str>,
}

fn header<'a>(line: usize, rest: &'a str, slot: &mut Option<Vec<&'a str>>) -> Result<()> {
    if slot.is_some() {
        return Err(Error::Parse {
            line,
            message: "alphabet declared twice".into(),
        });
    }
    *slot = Some(rest.split_whitespace().collect());
    Ok(())
}

fn declared(line: usize, symbols: Option<Vec<&str>>, used: BTreeSet<&str>) -> Result<Alphabet> {
    let parse_err = |e: Error| Error::Parse {
        line,
        message: e.to_string(),
    };
    match symbols {
        Some(s) => Alphabet::new(s).map_err(parse_err),
        None if used.is_empty() => Err(Error::Parse {
            line,
            message: "no symbols found".into(),
        }),
        None => Alphabet::sorted(used).map_err(parse_err),
    }
}

/// Parses the line trace format.
pub fn parse_traces(text: &str) -> Result<TraceSet> {
    parse_traces_with(text, None)
}

/// Parses the line trace format, taking undeclared alphabets from
/// `defaults` instead of inferring them.
pub fn parse_traces_with(text: &str, defaults: Option<(&Alphabet, &Alphabet)>) -> Result<TraceSet> {
    let mut inputs_decl = None;
    let mut outputs_decl = None;
    let (mut in_line, mut out_line) = (0, 0);
    let mut raw = Vec::new();
    for (idx, full) in text.lines().enumerate() {
        let line = idx + 1;
        let body = full.split('#').next().unwrap().trim();
        if body.is_empty() {
            continue;
        }
        if let Some(rest) = body.strip_prefix("!inputs:") {
            in_line = line;
            header(line, rest, &mut inputs_decl)?;
            continue;
        }
        if let Some(rest) = body.strip_prefix("!outputs:") {
            out_line = line;
            header(line, rest, &mut outputs_decl)?;
            continue;
        }
        let (lhs, rhs) = body.split_once('|').ok_or_else(|| Error::Parse {
            line,
            message: "expected `inputs | outputs`".into(),
        })?;
        let inputs: Vec<&str> = lhs.split_whitespace().collect();
        let outputs: Vec<&str> = rhs.split_whitespace().collect();
        if outputs.len() != inputs.len() + 1 {
            return Err(Error::Parse {
                line,
                message: format!(
                    "{} outputs for {} inputs (expected inputs + 1)",
                    outputs.len(),
                    inputs.len()
                ),
            });
        }
        raw.push(RawTrace { line, inputs, outputs });
    }
    let (inputs, outputs) = match defaults {
        Some((i, o)) => (
            inputs_decl.map_or_else(|| Ok(i.clone()), |s| declared(in_line, Some(s), BTreeSet::new()))?,
            outputs_decl.map_or_else(|| Ok(o.clone()), |s| declared(out_line, Some(s), BTreeSet::new()))?,
        ),
        None => {
            let used_in = raw.iter().flat_map(|r| r.inputs.iter().copied()).collect();
            let used_out = raw.iter().flat_map(|r| r.outputs.iter().copied()).collect();
            (
                declared(in_line, inputs_decl, used_in)?,
                declared(out_line, outputs_decl, used_out)?,
            )
        }
    };
    let mut ts = TraceSet::new(inputs, outputs);
    for r in raw {
        let at = |e: Error| Error::Parse {
            line: r.line,
            message: e.to_string(),
        };
        let i = ts.inputs().word_from(&r.inputs).map_err(at)?;
        let o = ts.outputs().word_from(&r.outputs).map_err(at)?;
        ts.push(MooreTrace::new(i, o).map_err(at)?).map_err(at)?;
    }
    Ok(ts)
}

/// Writes the line trace format with explicit alphabet headers.
pub fn write_traces(ts: &TraceSet) -> String {
    let mut out = format!(
        "!inputs: {}\n!outputs: {}\n",
        ts.inputs().symbols().join(" "),
        ts.outputs().symbols().join(" ")
    );
    for t in ts {
        let i = ts.inputs().join(t.input());
        let o = ts.outputs().join(t.output());
        if i.is_empty() {
            let _ = writeln!(out, "| {o}");
        } else {
            let _ = writeln!(out, "{i} | {o}");
        }
    }
    out
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceDoc {
    inputs: Vec<String>,
    outputs: Vec<String>,
    traces: Vec<TraceEntry>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct TraceEntry {
    input: Vec<String>,
    output: Vec<String>,
}

fn json_err(e: serde_json::Error) -> Error {
    Error::Structured(e.to_string())
}

pub fn traces_to_json(ts: &TraceSet) -> String {
    let doc = TraceDoc {
        inputs: ts.inputs().symbols().to_vec(),
        outputs: ts.outputs().symbols().to_vec(),
        traces: ts
            .iter()
            .map(|t| TraceEntry {
                input: t.input().iter().map(|&a| ts.inputs().symbol(a).to_string()).collect(),
                output: t.output().iter().map(|&o| ts.outputs().symbol(o).to_string()).collect(),
            })
            .collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

pub fn traces_from_json(text: &str) -> Result<TraceSet> {
    let doc: TraceDoc = serde_json::from_str(text).map_err(json_err)?;
    let mut ts = TraceSet::new(Alphabet::new(doc.inputs)?, Alphabet::new(doc.outputs)?);
    for (n, t) in doc.traces.iter().enumerate() {
        let at = |e: Error| Error::Structured(format!("trace {n}: {e}"));
        let i = ts.inputs().word_from(&t.input).map_err(at)?;
        let o = ts.outputs().word_from(&t.output).map_err(at)?;
        ts.push(MooreTrace::new(i, o).map_err(at)?).map_err(at)?;
    }
    Ok(ts)
}

/// Reads either format, choosing JSON when the text starts with `{`.
pub fn read_traces(text: &str) -> Result<TraceSet> {
    read_traces_with(text, None)
}

/// [`read_traces`] with fallback alphabets for line-format input.
pub fn read_traces_with(text: &str, defaults: Option<(&Alphabet, &Alphabet)>) -> Result<TraceSet> {
    if text.trim_start().starts_with('{') {
        traces_from_json(text)
    } else {
        parse_traces_with(text, defaults)
    }
}

pub fn write_traces_as(ts: &TraceSet, format: TraceFormat) -> String {
    match format {
        TraceFormat::Line => write_traces(ts),
        TraceFormat::Structured => traces_to_json(ts) + "\n",
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MachineDoc {
    inputs: Vec<String>,
    outputs: Vec<String>,
    initial: StateId,
    /// `delta[q][a]`, `null` where undefined.
    delta: Vec<Vec<Option<StateId>>>,
    /// Output symbol per state.
    lambda: Vec<String>,
}

pub fn machine_to_json(m: &MooreMachine) -> String {
    let doc = MachineDoc {
        inputs: m.inputs().symbols().to_vec(),
        outputs: m.outputs().symbols().to_vec(),
        initial: m.initial(),
        delta: (0..m.num_states()).map(|q| m.row(q).to_vec()).collect(),
        lambda: m
            .outputs_table()
            .iter()
            .map(|&o| m.outputs().symbol(o).to_string())
            .collect(),
    };
    serde_json::to_string_pretty(&doc).unwrap()
}

pub fn machine_from_json(text: &str) -> Result<MooreMachine> {
    let doc: MachineDoc = serde_json::from_str(text).map_err(json_err)?;
    let inputs = Alphabet::new(doc.inputs)?;
    let outputs = Alphabet::new(doc.outputs)?;
    let lambda = outputs.word_from(&doc.lambda)?;
    MooreMachine::new(inputs, outputs, doc.initial, doc.delta, lambda)
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// DOT graph with states labelled `q{id}/{output}`; parallel edges are
/// merged into one edge with a comma-separated label.
pub fn moore_to_dot(m: &MooreMachine) -> String {
    let mut out = String::from("digraph moore {\n  rankdir=LR;\n  node [shape=circle];\n");
    let _ = writeln!(out, "  __start [shape=point];\n  __start -> q{};", m.initial());
    for q in 0..m.num_states() {
        let _ = writeln!(
            out,
            "  q{q} [label=\"q{q}/{}\"];",
            escape(m.outputs().symbol(m.output(q)))
        );
    }
    edges(&mut out, m.num_states(), m.inputs(), |q| m.row(q));
    out.push_str("}\n");
    out
}

/// DOT graph of a DFA; accepting states are double circles and unknown
/// states are dashed.
pub fn dfa_to_dot(d: &Dfa) -> String {
    let mut out = String::from("digraph dfa {\n  rankdir=LR;\n");
    let _ = writeln!(out, "  __start [shape=point];\n  __start -> q{};", d.initial());
    for q in 0..d.num_states() {
        let style = match d.mark(q) {
            Mark::Accepting => "shape=doublecircle",
            Mark::Rejecting => "shape=circle",
            Mark::Unknown => "shape=circle, style=dashed",
        };
        let _ = writeln!(out, "  q{q} [label=\"q{q}\", {style}];");
    }
    edges(&mut out, d.num_states(), d.alphabet(), |q| d.row(q));
    out.push_str("}\n");
    out
}

fn edges<'a>(out: &mut String, n: usize, alphabet: &Alphabet, row: impl Fn(StateId) -> &'a [Option<StateId>]) {
    for q in 0..n {
        let mut targets: Vec<(StateId, Vec<&str>)> = Vec::new();
        for (a, t) in row(q).iter().enumerate() {
            let Some(t) = *t else { continue };
            match targets.iter_mut().find(|(x, _)| *x == t) {
                Some((_, labels)) => labels.push(alphabet.symbol(a)),
                None => targets.push((t, vec![alphabet.symbol(a)])),
            }
        }
        for (t, labels) in targets {
            let _ = writeln!(out, "  q{q} -> q{t} [label=\"{}\"];", escape(&labels.join(",")));
        }
    }
}
