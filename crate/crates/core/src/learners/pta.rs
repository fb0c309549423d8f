use std::collections::{BTreeSet, HashMap, VecDeque};

use crate::automata::{Alphabet, Dfa, Mark, StateId, StateWord, Symbol};
use crate::error::{Error, Result};
use crate::traces::ExamplePartition;

const NONE: usize = usize::MAX;

/// `N` partial DFAs sharing one transition skeleton, one mark vector per DFA.
///
/// Built as a prefix tree whose state ids follow the shortlex order of the
/// access words, so comparing ids compares access words. Merges are done in
/// place; a merged-away state forwards to its survivor through
/// `merged_into`, and every change is recorded so a rejected merge can be
/// rolled back exactly.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PtaProduct {
    inputs: Alphabet,
    delta: Vec<StateId>,
    marks: Vec<Vec<Mark>>,
    parent: Vec<Option<(StateId, Symbol)>>,
    access: Vec<StateWord>,
    alive: Vec<bool>,
    merged_into: Vec<StateId>,
    live: usize,
}

/// Reversible record of one merge attempt.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct UndoLog {
    changes: Vec<Change>,
    swaps: usize,
}

impl UndoLog {
    pub fn len(&self) -> usize {
        self.changes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.changes.is_empty()
    }

    /// Determinization merges in which the red-side state was the larger one.
    pub fn swaps(&self) -> usize {
        self.swaps
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
enum Change {
    Delta {
        index: usize,
        old: StateId,
    },
    Mark {
        bit: usize,
        state: StateId,
        old: Mark,
    },
    Parent {
        state: StateId,
        old: Option<(StateId, Symbol)>,
    },
    Kill {
        state: StateId,
    },
}

/// A merge that would join an accepting with a rejecting state.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MergeRejected {
    pub bit: usize,
    pub survivor: StateId,
    pub removed: StateId,
}

/// Builds the prefix tree over every word of the partition.
///
/// State of word `w` in DFA `i` is `Accepting` if `w ∈ S_i+`, `Rejecting`
/// if `w ∈ S_i-` and `Unknown` otherwise.
pub fn build_ptap(partition: &ExamplePartition, inputs: &Alphabet) -> Result<PtaProduct> {
    let words = partition.words();
    let mut prefixes: BTreeSet<StateWord> = BTreeSet::new();
    prefixes.insert(StateWord::empty());
    for w in &words {
        if let Some(&s) = w.as_slice().iter().find(|&&s| s >= inputs.len()) {
            return Err(Error::InvalidArgument(format!("input ordinal {s} out of range")));
        }
        for len in 1..=w.len() {
            prefixes.insert(StateWord(w.as_slice()[..len].to_vec()));
        }
    }
    let n = prefixes.len();
    let width = inputs.len();
    let mut ids: HashMap<&StateWord, StateId> = HashMap::with_capacity(n);
    let mut delta = vec![NONE; n * width];
    let mut parent = vec![None; n];
    for (id, w) in prefixes.iter().enumerate() {
        if let Some((&last, head)) = w.as_slice().split_last() {
            let p = ids[&StateWord(head.to_vec())];
            delta[p * width + last] = id;
            parent[id] = Some((p, last));
        }
        ids.insert(w, id);
    }
    let mut marks = vec![vec![Mark::Unknown; n]; partition.len()];
    for (bit, ex) in partition.bits.iter().enumerate() {
        for w in &ex.positive {
            marks[bit][ids[w]] = Mark::Accepting;
        }
        for w in &ex.negative {
            let slot = &mut marks[bit][ids[w]];
            if *slot == Mark::Accepting {
                return Err(Error::MarkConflict {
                    bit,
                    word: inputs.display_word(w.as_slice()),
                });
            }
            *slot = Mark::Rejecting;
        }
    }
    drop(ids);
    Ok(PtaProduct {
        inputs: inputs.clone(),
        delta,
        marks,
        parent,
        access: prefixes.into_iter().collect(),
        alive: vec![true; n],
        merged_into: vec![NONE; n],
        live: n,
    })
}

impl PtaProduct {
    pub fn inputs(&self) -> &Alphabet {
        &self.inputs
    }

    pub fn bit_count(&self) -> usize {
        self.marks.len()
    }

    /// States ever created, including merged-away ones.
    pub fn capacity(&self) -> usize {
        self.alive.len()
    }

    pub fn live_states(&self) -> usize {
        self.live
    }

    pub fn is_alive(&self, state: StateId) -> bool {
        self.alive[state]
    }

    pub fn mark(&self, bit: usize, state: StateId) -> Mark {
        self.marks[bit][state]
    }

    pub fn access_word(&self, state: StateId) -> &StateWord {
        &self.access[state]
    }

    pub fn parent(&self, state: StateId) -> Option<(StateId, Symbol)> {
        self.parent[state]
    }

    /// State of the given access word in the unmerged tree.
    pub fn state_of(&self, word: &[Symbol]) -> Option<StateId> {
        self.access.binary_search(&StateWord(word.to_vec())).ok()
    }

    /// Follows forwarding pointers to the live representative.
    pub fn find(&self, mut state: StateId) -> StateId {
        while self.merged_into[state] != NONE {
            state = self.merged_into[state];
        }
        state
    }

    pub fn next(&self, state: StateId, symbol: Symbol) -> Option<StateId> {
        let t = self.delta[state * self.inputs.len() + symbol];
        (t != NONE).then(|| self.find(t))
    }

    pub fn successors(&self, state: StateId) -> impl Iterator<Item = StateId> + '_ {
        (0..self.inputs.len()).filter_map(move |a| self.next(state, a))
    }

    fn set_delta(&mut self, log: &mut UndoLog, state: StateId, symbol: Symbol, target: StateId) {
        let index = state * self.inputs.len() + symbol;
        log.changes.push(Change::Delta {
            index,
            old: self.delta[index],
        });
        self.delta[index] = target;
    }

    fn set_parent(&mut self, log: &mut UndoLog, state: StateId, value: Option<(StateId, Symbol)>) {
        log.changes.push(Change::Parent {
            state,
            old: self.parent[state],
        });
        self.parent[state] = value;
    }

    fn kill(&mut self, log: &mut UndoLog, state: StateId, survivor: StateId) {
        log.changes.push(Change::Kill { state });
        self.alive[state] = false;
        self.merged_into[state] = survivor;
        self.live -= 1;
    }

    /// Rolls back every change in the log, newest first.
    pub fn undo(&mut self, log: UndoLog) {
        for change in log.changes.into_iter().rev() {
            match change {
                Change::Delta { index, old } => self.delta[index] = old,
                Change::Mark { bit, state, old } => self.marks[bit][state] = old,
                Change::Parent { state, old } => self.parent[state] = old,
                Change::Kill { state } => {
                    self.alive[state] = true;
                    self.merged_into[state] = NONE;
                    self.live += 1;
                }
            }
        }
    }

    /// Merges `blue` into `red` on all `N` DFAs at once, folding the
    /// resulting nondeterminism by further merges.
    ///
    /// The parent edge of `blue` is redirected to `red`. For every later
    /// pair the state with the smaller access word survives. Marks are
    /// joined per DFA; an accepting/rejecting clash rejects the merge and
    /// the product is restored before returning. On success the returned
    /// log can still be passed to [`PtaProduct::undo`].
    pub fn try_merge(&mut self, red: StateId, blue: StateId) -> Result<UndoLog, MergeRejected> {
        let mut log = UndoLog::default();
        match self.merge_into(&mut log, red, blue) {
            Ok(()) => Ok(log),
            Err(rejected) => {
                self.undo(log);
                Err(rejected)
            }
        }
    }

    fn merge_into(&mut self, log: &mut UndoLog, red: StateId, blue: StateId) -> Result<(), MergeRejected> {
        let (p, a) = self.parent[blue].expect("blue state has a parent");
        let p = self.find(p);
        self.set_delta(log, p, a, red);
        let mut stack = vec![(red, blue)];
        let mut first = true;
        while let Some((q1, q2)) = stack.pop() {
            let (mut q1, mut q2) = (self.find(q1), self.find(q2));
            if q1 == q2 {
                continue;
            }
            if !first && q2 < q1 {
                std::mem::swap(&mut q1, &mut q2);
                log.swaps += 1;
                // The survivor takes over the incoming edge of the removed state.
                let inherited = self.parent[q2];
                self.set_parent(log, q1, inherited);
            }
            first = false;
            self.kill(log, q2, q1);
            for bit in 0..self.marks.len() {
                let m2 = self.marks[bit][q2];
                let m1 = self.marks[bit][q1];
                match m1.join(m2) {
                    None => {
                        return Err(MergeRejected {
                            bit,
                            survivor: q1,
                            removed: q2,
                        })
                    }
                    Some(joined) if joined != m1 => {
                        log.changes.push(Change::Mark {
                            bit,
                            state: q1,
                            old: m1,
                        });
                        self.marks[bit][q1] = joined;
                    }
                    Some(_) => {}
                }
            }
            for sym in 0..self.inputs.len() {
                if let Some(t2) = self.next(q2, sym) {
                    match self.next(q1, sym) {
                        Some(t1) => stack.push((t1, t2)),
                        None => {
                            self.set_delta(log, q1, sym, t2);
                            self.set_parent(log, t2, Some((q1, sym)));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// Live states reachable from the root, in BFS order.
    pub fn reachable(&self) -> Vec<StateId> {
        let root = self.find(0);
        let mut seen = HashMap::from([(root, ())]);
        let mut order = vec![];
        let mut queue = VecDeque::from([root]);
        while let Some(q) = queue.pop_front() {
            order.push(q);
            for t in self.successors(q) {
                if seen.insert(t, ()).is_none() {
                    queue.push_back(t);
                }
            }
        }
        order
    }

    /// Renumbers the reachable live states densely and returns one DFA per
    /// bit over the shared skeleton.
    pub fn to_dfas(&self) -> Vec<Dfa> {
        let order = self.reachable();
        let mut id = HashMap::with_capacity(order.len());
        for (i, &q) in order.iter().enumerate() {
            id.insert(q, i);
        }
        let width = self.inputs.len();
        let mut delta = Vec::with_capacity(order.len() * width);
        for &q in &order {
            delta.extend((0..width).map(|a| self.next(q, a).map(|t| id[&t])));
        }
        (0..self.bit_count())
            .map(|bit| {
                let marks = order.iter().map(|&q| self.marks[bit][q]).collect();
                Dfa::from_flat(self.inputs.clone(), 0, delta.clone(), marks).expect("skeleton is well formed")
            })
            .collect()
    }
}
