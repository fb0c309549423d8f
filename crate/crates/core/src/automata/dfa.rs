use super::alphabet::{Alphabet, Symbol};
use super::StateId;
use crate::error::{Error, Result};

/// Tri-state marking of a DFA state.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Mark {
    Accepting,
    Rejecting,
    Unknown,
}

impl Mark {
    pub fn is_accepting(self) -> bool {
        self == Mark::Accepting
    }

    /// Joins two marks of states being merged. `None` on an
    /// accepting/rejecting clash.
    pub fn join(self, other: Mark) -> Option<Mark> {
        match (self, other) {
            (Mark::Unknown, m) | (m, Mark::Unknown) => Some(m),
            (a, b) if a == b => Some(a),
            _ => None,
        }
    }
}

/// Deterministic, possibly incomplete acceptor. Reading `Accepting` as final
/// and everything else as non-final gives the classical DFA.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Dfa {
    alphabet: Alphabet,
    initial: StateId,
    delta: Vec<Option<StateId>>,
    marks: Vec<Mark>,
}

impl Dfa {
    pub fn new(
        alphabet: Alphabet,
        initial: StateId,
        rows: Vec<Vec<Option<StateId>>>,
        marks: Vec<Mark>,
    ) -> Result<Self> {
        let width = alphabet.len();
        if rows.len() != marks.len() || rows.iter().any(|r| r.len() != width) {
            return Err(Error::InvalidArgument("transition table has the wrong shape".into()));
        }
        Self::from_flat(alphabet, initial, rows.into_iter().flatten().collect(), marks)
    }

    pub(crate) fn from_flat(
        alphabet: Alphabet,
        initial: StateId,
        delta: Vec<Option<StateId>>,
        marks: Vec<Mark>,
    ) -> Result<Self> {
        let n = marks.len();
        if n == 0 || initial >= n {
            return Err(Error::InvalidArgument("initial state out of range".into()));
        }
        if delta.len() != n * alphabet.len() || delta.iter().flatten().any(|&t| t >= n) {
            return Err(Error::InvalidArgument("bad transition table".into()));
        }
        Ok(Self {
            alphabet,
            initial,
            delta,
            marks,
        })
    }

    pub fn alphabet(&self) -> &Alphabet {
        &self.alphabet
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.marks.len()
    }

    pub fn mark(&self, state: StateId) -> Mark {
        self.marks[state]
    }

    pub fn marks(&self) -> &[Mark] {
        &self.marks
    }

    pub fn next(&self, state: StateId, symbol: Symbol) -> Option<StateId> {
        self.delta[state * self.alphabet.len() + symbol]
    }

    pub fn row(&self, state: StateId) -> &[Option<StateId>] {
        let w = self.alphabet.len();
        &self.delta[state * w..(state + 1) * w]
    }

    pub(crate) fn delta(&self) -> &[Option<StateId>] {
        &self.delta
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    pub fn walk(&self, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(self.initial, |q, &a| self.next(q, a))
    }

    /// Classical acceptance: the run exists and ends in an accepting state.
    pub fn accepts(&self, word: &[Symbol]) -> bool {
        self.walk(word).is_some_and(|q| self.marks[q].is_accepting())
    }

    pub fn complete_with_self_loops(&self) -> Dfa {
        let w = self.alphabet.len();
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(i, t)| Some(t.unwrap_or(i / w)))
            .collect();
        Dfa { delta, ..self.clone() }
    }

    /// True iff both automata have the same states, initial state and
    /// transitions. Marks may differ.
    pub fn same_skeleton(&self, other: &Dfa) -> bool {
        self.alphabet == other.alphabet && self.initial == other.initial && self.delta == other.delta
    }
}
