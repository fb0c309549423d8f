use thiserror::Error;

use crate::automata::StateId;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("alphabet must not be empty")]
    EmptyAlphabet,
    #[error("duplicate symbol `{0}` in alphabet")]
    DuplicateSymbol(String),
    #[error("unknown symbol `{0}`")]
    UnknownSymbol(String),
    #[error("no transition from state {state} on input `{symbol}`")]
    UndefinedTransition { state: StateId, symbol: String },
    #[error("machines are defined over different alphabets")]
    AlphabetMismatch,
    #[error("machine is not complete")]
    Incomplete,
    #[error("automata do not share one state/transition skeleton")]
    SkeletonMismatch,
    #[error("state {state} carries bit code {code:#b} which decodes to no output")]
    InvalidCode { state: StateId, code: u64 },
    #[error("expected {expected} automata for the encoding, got {got}")]
    BitCountMismatch { expected: usize, got: usize },
    #[error("input word `{word}` is labelled with both `{first}` and `{second}`")]
    InconsistentTraces {
        word: String,
        first: String,
        second: String,
    },
    #[error("word `{word}` is both a positive and a negative example for bit {bit}")]
    MarkConflict { bit: usize, word: String },
    #[error("trace has {outputs} outputs for {inputs} inputs (expected inputs + 1)")]
    TraceLength { inputs: usize, outputs: usize },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("invalid structured document: {0}")]
    Structured(String),
    #[error("state {0} is unreachable from the initial state")]
    Unreachable(StateId),
    #[error("states {0} and {1} are not distinguishable")]
    NotDistinguishable(StateId, StateId),
    #[error("could not generate a minimal machine with {states} states after {attempts} attempts")]
    GenerationFailure { states: usize, attempts: usize },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("test set is empty")]
    EmptyTestSet,
    #[error("time budget exhausted")]
    Timeout,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
