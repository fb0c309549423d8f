//! Moore traces and examples, the output-bit encoding and the split of
//! examples into per-bit positive/negative sets.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use crate::automata::{Alphabet, StateWord, Symbol, Word};
use crate::error::{Error, Result};

/// An input word together with the output word it produced.
/// The output includes the initial output, so it is one symbol longer.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreTrace {
    input: Word,
    output: Word,
}

impl MooreTrace {
    pub fn new(input: Word, output: Word) -> Result<Self> {
        if output.len() != input.len() + 1 {
            return Err(Error::TraceLength {
                inputs: input.len(),
                outputs: output.len(),
            });
        }
        Ok(Self { input, output })
    }

    pub fn input(&self) -> &[Symbol] {
        &self.input
    }

    pub fn output(&self) -> &[Symbol] {
        &self.output
    }

    pub fn len(&self) -> usize {
        self.input.len()
    }

    pub fn is_empty(&self) -> bool {
        self.input.is_empty()
    }
}

/// An input word labelled with the single output of the state it reaches.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MooreExample {
    pub input: Word,
    pub output: Symbol,
}

/// A set of traces over fixed input and output alphabets.
///
/// Exact duplicates are collapsed on insertion; insertion order is kept.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TraceSet {
    inputs: Alphabet,
    outputs: Alphabet,
    traces: Vec<MooreTrace>,
    seen: HashSet<MooreTrace>,
}

impl TraceSet {
    pub fn new(inputs: Alphabet, outputs: Alphabet) -> Self {
        Self {
            inputs,
            outputs,
            traces: Vec::new(),
            seen: HashSet::new(),
        }
    }

    pub fn from_traces(
        inputs: Alphabet,
        outputs: Alphabet,
        traces: impl IntoIterator<Item = MooreTrace>,
    ) -> Result<Self> {
        let mut set = Self::new(inputs, outputs);
        for t in traces {
            set.push(t)?;
        }
        Ok(set)
    }

    /// Convenience constructor from `(input, output)` strings of
    /// whitespace separated symbols.
    pub fn from_strs(inputs: Alphabet, outputs: Alphabet, traces: &[(&str, &str)]) -> Result<Self> {
        let mut set = Self::new(inputs, outputs);
        for (i, o) in traces {
            let t = MooreTrace::new(set.inputs.parse_word(i)?, set.outputs.parse_word(o)?)?;
            set.push(t)?;
        }
        Ok(set)
    }

    /// Adds a trace. Returns whether it was new.
    pub fn push(&mut self, trace: MooreTrace) -> Result<bool> {
        if let Some(&s) = trace.input.iter().find(|&&s| s >= self.inputs.len()) {
            return Err(Error::InvalidArgument(format!("input ordinal {s} out of range")));
        }
        if let Some(&s) = trace.output.iter().find(|&&s| s >= self.outputs.len()) {
            return Err(Error::InvalidArgument(format!("output ordinal {s} out of range")));
        }
        if self.seen.insert(trace.clone()) {
            self.traces.push(trace);
            Ok(true)
        } else {
            Ok(false)
        }
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn traces(&self) -> &[MooreTrace] {
        &self.traces
    }

    pub fn iter(&self) -> std::slice::Iter<'_, MooreTrace> {
        self.traces.iter()
    }

    pub fn len(&self) -> usize {
        self.traces.len()
    }

    pub fn is_empty(&self) -> bool {
        self.traces.is_empty()
    }

    pub fn max_input_len(&self) -> usize {
        self.traces.iter().map(MooreTrace::len).max().unwrap_or(0)
    }

    pub fn total_input_len(&self) -> usize {
        self.traces.iter().map(MooreTrace::len).sum()
    }
}

impl<'a> IntoIterator for &'a TraceSet {
    type Item = &'a MooreTrace;
    type IntoIter = std::slice::Iter<'a, MooreTrace>;

    fn into_iter(self) -> Self::IntoIter {
        self.traces.iter()
    }
}

/// Unrolls every trace `(x1..xn, y0..yn)` into the examples
/// `(ε, y0), (x1, y1), ..., (x1..xn, yn)`.
///
/// The result is de-duplicated and sorted in shortlex order of the input
/// word. Two traces assigning different outputs to the same prefix are an
/// error.
pub fn traces_to_examples(ts: &TraceSet) -> Result<Vec<MooreExample>> {
    let mut examples: BTreeMap<StateWord, Symbol> = BTreeMap::new();
    for trace in ts {
        for (len, &y) in trace.output.iter().enumerate() {
            let word = StateWord(trace.input[..len].to_vec());
            match examples.get(&word) {
                Some(&prev) if prev != y => {
                    return Err(Error::InconsistentTraces {
                        word: ts.inputs().display_word(word.as_slice()),
                        first: ts.outputs().symbol(prev).to_string(),
                        second: ts.outputs().symbol(y).to_string(),
                    });
                }
                Some(_) => {}
                None => {
                    examples.insert(word, y);
                }
            }
        }
    }
    Ok(examples
        .into_iter()
        .map(|(w, output)| MooreExample { input: w.0, output })
        .collect())
}

/// Bijection between output symbols and fixed-width bit codes.
///
/// The symbol with ordinal `k` is encoded as the binary representation of
/// `k`, most significant bit first, so bit index 0 is the leading bit.
/// Codes at or above `|O|` are invalid; [`OutputEncoding::decode_or_fallback`]
/// maps them to the ordinal-0 symbol.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OutputEncoding {
    outputs: Alphabet,
    bit_count: usize,
    symbol_count: usize,
}

impl OutputEncoding {
    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn bit_count(&self) -> usize {
        self.bit_count
    }

    pub fn symbol_count(&self) -> usize {
        self.symbol_count
    }

    pub fn fallback(&self) -> Symbol {
        0
    }

    pub fn code(&self, symbol: Symbol) -> u64 {
        debug_assert!(symbol < self.symbol_count);
        symbol as u64
    }

    /// Bit `index` (0-based, most significant first) of the code of `symbol`.
    pub fn bit(&self, symbol: Symbol, index: usize) -> bool {
        (self.code(symbol) >> (self.bit_count - 1 - index)) & 1 == 1
    }

    pub fn encode(&self, symbol: Symbol) -> Vec<bool> {
        (0..self.bit_count).map(|i| self.bit(symbol, i)).collect()
    }

    /// Packs bits (most significant first) into a code.
    pub fn code_of_bits(&self, bits: impl IntoIterator<Item = bool>) -> u64 {
        bits.into_iter().fold(0, |acc, b| (acc << 1) | u64::from(b))
    }

    pub fn decode(&self, code: u64) -> Option<Symbol> {
        (code < self.symbol_count as u64).then_some(code as Symbol)
    }

    pub fn decode_or_fallback(&self, code: u64) -> Symbol {
        self.decode(code).unwrap_or(self.fallback())
    }
}

/// `N = max(1, ⌈log2 |O|⌉)` bits, ordinal `k` encoded as binary `k`.
pub fn make_encoding(outputs: &Alphabet) -> OutputEncoding {
    let symbol_count = outputs.len().max(1);
    let mut bit_count = 0;
    while (1usize << bit_count) < symbol_count {
        bit_count += 1;
    }
    OutputEncoding {
        outputs: outputs.clone(),
        bit_count: bit_count.max(1),
        symbol_count,
    }
}

/// Positive and negative word sets for one output bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BitExamples {
    pub positive: BTreeSet<StateWord>,
    pub negative: BTreeSet<StateWord>,
}

/// One `(S_i+, S_i-)` pair per output bit.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExamplePartition {
    pub bits: Vec<BitExamples>,
}

impl ExamplePartition {
    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    /// All words mentioned by any bit, in shortlex order.
    pub fn words(&self) -> BTreeSet<StateWord> {
        self.bits
            .iter()
            .flat_map(|b| b.positive.iter().chain(&b.negative))
            .cloned()
            .collect()
    }
}

/// Splits examples per output bit: `w ∈ S_i+` iff bit `i` of the output's code is 1.
pub fn partition_examples(examples: &[MooreExample], enc: &OutputEncoding) -> ExamplePartition {
    let mut bits = vec![BitExamples::default(); enc.bit_count()];
    for ex in examples {
        for (i, b) in bits.iter_mut().enumerate() {
            let w = StateWord(ex.input.clone());
            if enc.bit(ex.output, i) {
                b.positive.insert(w);
            } else {
                b.negative.insert(w);
            }
        }
    }
    ExamplePartition { bits }
}
