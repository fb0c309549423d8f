use std::collections::{HashMap, VecDeque};

use super::alphabet::{Alphabet, Symbol, Word};
use super::StateId;
use crate::error::{Error, Result};

/// Deterministic, possibly incomplete Moore machine.
///
/// States are dense ids `0..num_states()`. The transition table is stored
/// row-major, one row of `|I|` optional targets per state.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreMachine {
    inputs: Alphabet,
    outputs: Alphabet,
    initial: StateId,
    delta: Vec<Option<StateId>>,
    lambda: Vec<Symbol>,
}

impl MooreMachine {
    /// Builds a machine from one transition row per state.
    pub fn new(
        inputs: Alphabet,
        outputs: Alphabet,
        initial: StateId,
        rows: Vec<Vec<Option<StateId>>>,
        lambda: Vec<Symbol>,
    ) -> Result<Self> {
        let n = lambda.len();
        if rows.len() != n {
            return Err(Error::InvalidArgument(format!(
                "{} transition rows for {} states",
                rows.len(),
                n
            )));
        }
        let width = inputs.len();
        let mut delta = Vec::with_capacity(n * width);
        for row in rows {
            if row.len() != width {
                return Err(Error::InvalidArgument(format!(
                    "transition row of length {} for {} inputs",
                    row.len(),
                    width
                )));
            }
            delta.extend(row);
        }
        Self::from_flat(inputs, outputs, initial, delta, lambda)
    }

    pub(crate) fn from_flat(
        inputs: Alphabet,
        outputs: Alphabet,
        initial: StateId,
        delta: Vec<Option<StateId>>,
        lambda: Vec<Symbol>,
    ) -> Result<Self> {
        let n = lambda.len();
        if n == 0 {
            return Err(Error::InvalidArgument("machine needs at least one state".into()));
        }
        if initial >= n {
            return Err(Error::InvalidArgument(format!("initial state {initial} out of range")));
        }
        if delta.len() != n * inputs.len() {
            return Err(Error::InvalidArgument("transition table has the wrong size".into()));
        }
        if let Some(t) = delta.iter().flatten().find(|&&t| t >= n) {
            return Err(Error::InvalidArgument(format!("transition target {t} out of range")));
        }
        if let Some(o) = lambda.iter().find(|&&o| o >= outputs.len()) {
            return Err(Error::InvalidArgument(format!("output ordinal {o} out of range")));
        }
        Ok(Self {
            inputs,
            outputs,
            initial,
            delta,
            lambda,
        })
    }

    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn outputs(&self) -> &Alphabet {
        &self.outputs
    }

    pub fn initial(&self) -> StateId {
        self.initial
    }

    pub fn num_states(&self) -> usize {
        self.lambda.len()
    }

    pub fn output(&self, state: StateId) -> Symbol {
        self.lambda[state]
    }

    pub fn outputs_table(&self) -> &[Symbol] {
        &self.lambda
    }

    pub fn next(&self, state: StateId, input: Symbol) -> Option<StateId> {
        self.delta[state * self.inputs.len() + input]
    }

    pub fn row(&self, state: StateId) -> &[Option<StateId>] {
        let w = self.inputs.len();
        &self.delta[state * w..(state + 1) * w]
    }

    pub fn is_complete(&self) -> bool {
        self.delta.iter().all(Option::is_some)
    }

    /// Number of undefined `(state, input)` entries.
    pub fn missing_transitions(&self) -> usize {
        self.delta.iter().filter(|t| t.is_none()).count()
    }

    /// `δ*(state, word)`, `None` as soon as a transition is missing.
    pub fn walk(&self, state: StateId, word: &[Symbol]) -> Option<StateId> {
        word.iter().try_fold(state, |q, &a| self.next(q, a))
    }

    /// `λ*(q0, input)`: the initial output followed by one output per input symbol.
    pub fn run(&self, input: &[Symbol]) -> Result<Word> {
        self.run_from(self.initial, input)
    }

    pub fn run_from(&self, state: StateId, input: &[Symbol]) -> Result<Word> {
        let mut out = Vec::with_capacity(input.len() + 1);
        let mut q = state;
        out.push(self.lambda[q]);
        for &a in input {
            q = self.next(q, a).ok_or_else(|| Error::UndefinedTransition {
                state: q,
                symbol: self.inputs.symbol(a).to_string(),
            })?;
            out.push(self.lambda[q]);
        }
        Ok(out)
    }

    /// Fills every undefined transition with a self-loop.
    pub fn complete_with_self_loops(&self) -> MooreMachine {
        let w = self.inputs.len();
        let delta = self
            .delta
            .iter()
            .enumerate()
            .map(|(i, t)| Some(t.unwrap_or(i / w)))
            .collect();
        MooreMachine { delta, ..self.clone() }
    }

    /// States reachable from the initial state, in BFS order with inputs
    /// expanded by ordinal.
    pub fn reachable(&self) -> Vec<StateId> {
        let mut seen = vec![false; self.num_states()];
        let mut order = Vec::new();
        let mut queue = VecDeque::from([self.initial]);
        seen[self.initial] = true;
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for t in self.row(q).iter().flatten() {
                if !seen[*t] {
                    seen[*t] = true;
                    queue.push_back(*t);
                }
            }
        }
        order
    }

    /// Moore-style partition refinement seeded by output classes.
    ///
    /// Unreachable states are dropped and the result is numbered in BFS
    /// order from the initial state. Undefined transitions are treated as a
    /// distinguished successor, so partial machines are reduced soundly too.
    pub fn minimize(&self) -> MooreMachine {
        let order = self.reachable();
        let width = self.inputs.len();
        let mut class = vec![usize::MAX; self.num_states()];
        let mut count = {
            let mut ids = HashMap::new();
            for &q in &order {
                let next = ids.len();
                class[q] = *ids.entry(self.lambda[q]).or_insert(next);
            }
            ids.len()
        };
        loop {
            let mut ids: HashMap<Vec<usize>, usize> = HashMap::new();
            let mut refined = vec![usize::MAX; self.num_states()];
            for &q in &order {
                let mut sig = Vec::with_capacity(width + 1);
                sig.push(class[q]);
                sig.extend(self.row(q).iter().map(|t| t.map_or(usize::MAX, |t| class[t])));
                let next = ids.len();
                refined[q] = *ids.entry(sig).or_insert(next);
            }
            class = refined;
            if ids.len() == count {
                break;
            }
            count = ids.len();
        }
        // Renumber classes in BFS order of the quotient.
        let mut rep = vec![usize::MAX; count];
        for &q in &order {
            if rep[class[q]] == usize::MAX {
                rep[class[q]] = q;
            }
        }
        let mut new_id = vec![usize::MAX; count];
        let mut queue = VecDeque::from([class[self.initial]]);
        new_id[class[self.initial]] = 0;
        let mut bfs = Vec::with_capacity(count);
        while let Some(c) = queue.pop_front() {
            bfs.push(c);
            for t in self.row(rep[c]).iter().flatten() {
                let tc = class[*t];
                if new_id[tc] == usize::MAX {
                    new_id[tc] = bfs.len() + queue.len();
                    queue.push_back(tc);
                }
            }
        }
        let mut delta = Vec::with_capacity(count * width);
        let mut lambda = Vec::with_capacity(count);
        for &c in &bfs {
            let q = rep[c];
            lambda.push(self.lambda[q]);
            delta.extend(self.row(q).iter().map(|t| t.map(|t| new_id[class[t]])));
        }
        MooreMachine {
            inputs: self.inputs.clone(),
            outputs: self.outputs.clone(),
            initial: 0,
            delta,
            lambda,
        }
    }

    /// Shortest input word on which the two machines produce different
    /// output words, if any. Both machines must be complete and share alphabets.
    pub fn distinguishing_word(&self, other: &MooreMachine) -> Result<Option<Word>> {
        if self.inputs != other.inputs || self.outputs != other.outputs {
            return Err(Error::AlphabetMismatch);
        }
        if !self.is_complete() || !other.is_complete() {
            return Err(Error::Incomplete);
        }
        let n2 = other.num_states();
        let start = (self.initial, other.initial);
        // Pair -> (predecessor pair, symbol); `None` for the start pair.
        type Back = Option<((StateId, StateId), Symbol)>;
        let mut pred: HashMap<(StateId, StateId), Back> = HashMap::from([(start, None)]);
        let mut queue = VecDeque::from([start]);
        while let Some((p, q)) = queue.pop_front() {
            if self.lambda[p] != other.lambda[q] {
                let mut word = Vec::new();
                let mut cur = (p, q);
                while let Some(Some((prev, a))) = pred.get(&cur) {
                    word.push(*a);
                    cur = *prev;
                }
                word.reverse();
                return Ok(Some(word));
            }
            for a in 0..self.inputs.len() {
                let succ = (self.next(p, a).expect("complete"), other.next(q, a).expect("complete"));
                if let std::collections::hash_map::Entry::Vacant(e) = pred.entry(succ) {
                    e.insert(Some(((p, q), a)));
                    queue.push_back(succ);
                }
            }
            debug_assert!(pred.len() <= self.num_states() * n2);
        }
        Ok(None)
    }

    /// True iff both machines agree on every input word.
    pub fn equivalent(&self, other: &MooreMachine) -> Result<bool> {
        Ok(self.distinguishing_word(other)?.is_none())
    }

    /// True iff a bijection between the state sets preserves the initial
    /// state, transitions and outputs. Determinism leaves at most one
    /// candidate bijection, found by walking both machines in lockstep.
    pub fn isomorphic(&self, other: &MooreMachine) -> bool {
        if self.inputs != other.inputs || self.outputs != other.outputs || self.num_states() != other.num_states() {
            return false;
        }
        let n = self.num_states();
        let mut fwd = vec![usize::MAX; n];
        let mut bwd = vec![usize::MAX; n];
        let mut queue = VecDeque::from([(self.initial, other.initial)]);
        fwd[self.initial] = other.initial;
        bwd[other.initial] = self.initial;
        let mut mapped = 1;
        while let Some((p, q)) = queue.pop_front() {
            if self.lambda[p] != other.lambda[q] {
                return false;
            }
            for a in 0..self.inputs.len() {
                match (self.next(p, a), other.next(q, a)) {
                    (None, None) => {}
                    (Some(p2), Some(q2)) => match (fwd[p2], bwd[q2]) {
                        (usize::MAX, usize::MAX) => {
                            fwd[p2] = q2;
                            bwd[q2] = p2;
                            mapped += 1;
                            queue.push_back((p2, q2));
                        }
                        (f, b) if f == q2 && b == p2 => {}
                        _ => return false,
                    },
                    _ => return false,
                }
            }
        }
        mapped == n
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    #[test]
    fn run_m1() {
        let m1 = fixtures::m1();
        let i = m1.inputs().clone();
        let out = m1.run(&i.parse_word("x2 x1").unwrap()).unwrap();
        assert_eq!(m1.outputs().join(&out), "y1 y2 y1");
        assert_eq!(m1.run(&[]).unwrap(), vec![m1.output(m1.initial())]);
    }

    #[test]
    fn run_fig4a() {
        let m = fixtures::fig4a();
        let out = m.run(&m.inputs().parse_word("b a a").unwrap()).unwrap();
        assert_eq!(m.outputs().join(&out), "0 1 2 2");
    }

    #[test]
    fn run_reports_missing_transition() {
        let i = Alphabet::new(["a"]).unwrap();
        let o = Alphabet::new(["0"]).unwrap();
        let m = MooreMachine::new(i, o, 0, vec![vec![None]], vec![0]).unwrap();
        assert!(matches!(m.run(&[0]), Err(Error::UndefinedTransition { state: 0, .. })));
        assert_eq!(m.run(&[]).unwrap(), vec![0]);
    }

    #[test]
    fn self_loop_completion() {
        let i = Alphabet::new(["a", "b"]).unwrap();
        let o = Alphabet::new(["0"]).unwrap();
        let m = MooreMachine::new(i, o, 0, vec![vec![None, None]], vec![0]).unwrap();
        let c = m.complete_with_self_loops();
        assert!(c.is_complete());
        assert_eq!(c.row(0), &[Some(0), Some(0)]);
        let full = fixtures::m1();
        assert_eq!(full.complete_with_self_loops(), full);
    }

    #[test]
    fn minimize_merges_duplicate_state() {
        let m = fixtures::fig4a();
        // Clone state 1 (q1) into a fresh state 4 and route q0 --b--> 4.
        let mut rows: Vec<Vec<Option<StateId>>> = (0..m.num_states()).map(|q| m.row(q).to_vec()).collect();
        rows.push(m.row(1).to_vec());
        rows[0][1] = Some(4);
        let mut lambda = m.outputs_table().to_vec();
        lambda.push(m.output(1));
        let dup = MooreMachine::new(m.inputs().clone(), m.outputs().clone(), 0, rows, lambda).unwrap();
        let min = dup.minimize();
        assert_eq!(min.num_states(), 4);
        assert!(min.isomorphic(&m));
        assert!(min.equivalent(&dup).unwrap());
    }

    #[test]
    fn fig4_machines_differ_on_baa() {
        let a = fixtures::fig4a();
        assert!(a.equivalent(&a).unwrap());
        let w = a.inputs().parse_word("b a a").unwrap();
        // Relabel: swap states 2 and 3 and compare as a renamed copy.
        let perm = [0usize, 1, 3, 2];
        let mut rows = vec![vec![None; 2]; 4];
        let mut lambda = vec![0; 4];
        for q in 0..4 {
            lambda[perm[q]] = a.output(q);
            for (s, slot) in rows[perm[q]].iter_mut().enumerate() {
                *slot = a.next(q, s).map(|t| perm[t]);
            }
        }
        let renamed = MooreMachine::new(a.inputs().clone(), a.outputs().clone(), 0, rows, lambda).unwrap();
        assert!(renamed.isomorphic(&a));
        assert_eq!(renamed.run(&w).unwrap(), a.run(&w).unwrap());
    }

    #[test]
    fn alphabet_mismatch_is_an_error() {
        assert_eq!(
            fixtures::m1().equivalent(&fixtures::fig4a()),
            Err(Error::AlphabetMismatch)
        );
        assert!(!fixtures::m1().isomorphic(&fixtures::fig4a()));
    }
}
