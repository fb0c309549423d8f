//! Characteristic samples for minimal complete Moore machines, and a random
//! generator for such machines.

use std::collections::{BTreeSet, HashSet, VecDeque};

use rand::seq::SliceRandom;
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::automata::{Alphabet, MooreMachine, StateId, StateWord, Symbol, Word};
use crate::error::{Error, Result};
use crate::traces::{MooreTrace, TraceSet};

/// Attempts made by [`random_minimal_moore`] before giving up.
pub const GENERATION_ATTEMPTS: usize = 1000;

fn require_complete(m: &MooreMachine) -> Result<()> {
    if m.is_complete() {
        Ok(())
    } else {
        Err(Error::Incomplete)
    }
}

/// Shortlex-least access word of every state, indexed by state id.
///
/// Fails with [`Error::Unreachable`] if some state has no access word.
pub fn shortest_prefixes(m: &MooreMachine) -> Result<Vec<StateWord>> {
    let mut access: Vec<Option<StateWord>> = vec![None; m.num_states()];
    let mut queue = VecDeque::from([m.initial()]);
    access[m.initial()] = Some(StateWord::empty());
    while let Some(q) = queue.pop_front() {
        let here = access[q].clone().unwrap();
        for a in 0..m.inputs().len() {
            if let Some(t) = m.next(q, a) {
                if access[t].is_none() {
                    access[t] = Some(here.extended(a));
                    queue.push_back(t);
                }
            }
        }
    }
    access
        .into_iter()
        .enumerate()
        .map(|(q, w)| w.ok_or(Error::Unreachable(q)))
        .collect()
}

/// `{ε} ∪ {u·a | u a shortest prefix, a an input}`.
pub fn nucleus(m: &MooreMachine) -> Result<BTreeSet<StateWord>> {
    let prefixes = shortest_prefixes(m)?;
    let mut out = BTreeSet::from([StateWord::empty()]);
    for u in &prefixes {
        for a in 0..m.inputs().len() {
            out.insert(u.extended(a));
        }
    }
    Ok(out)
}

/// Shortlex-least word whose output sequences from `p` and `q` differ.
///
/// Returns `ε` when the two states already differ in output. Requires a
/// complete machine.
pub fn min_distinguishing_suffix(m: &MooreMachine, p: StateId, q: StateId) -> Result<Word> {
    require_complete(m)?;
    let n = m.num_states();
    if p >= n || q >= n {
        return Err(Error::InvalidArgument(format!("state out of range for {n} states")));
    }
    // Pair graph BFS with symbols expanded in order visits paths in shortlex order.
    let mut from: Vec<Option<(usize, Symbol)>> = vec![None; n * n];
    let mut seen = vec![false; n * n];
    let start = p * n + q;
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    while let Some(cur) = queue.pop_front() {
        let (x, y) = (cur / n, cur % n);
        if m.output(x) != m.output(y) {
            let mut word = Vec::new();
            let mut at = cur;
            while let Some((prev, a)) = from[at] {
                word.push(a);
                at = prev;
            }
            word.reverse();
            return Ok(word);
        }
        for a in 0..m.inputs().len() {
            let nx = m.next(x, a).unwrap() * n + m.next(y, a).unwrap();
            if !seen[nx] {
                seen[nx] = true;
                from[nx] = Some((cur, a));
                queue.push_back(nx);
            }
        }
    }
    Err(Error::NotDistinguishable(p, q))
}

/// Minimal distinguishing suffixes for every pair of states of a complete
/// machine, computed together.
#[derive(Clone, Debug)]
pub struct SuffixTable {
    n: usize,
    /// `u32::MAX` marks indistinguishable pairs.
    dist: Vec<u32>,
    /// First symbol of the suffix and the pair it leads to.
    step: Vec<(Symbol, usize)>,
}

impl SuffixTable {
    /// Builds the table by backward layering over the pair graph: a pair at
    /// distance `k` takes the least symbol whose successor pair is at `k - 1`.
    pub fn new(m: &MooreMachine) -> Result<Self> {
        require_complete(m)?;
        let n = m.num_states();
        let k = m.inputs().len();
        let mut preds: Vec<Vec<Vec<StateId>>> = vec![vec![Vec::new(); n]; k];
        for q in 0..n {
            for (a, pa) in preds.iter_mut().enumerate() {
                pa[m.next(q, a).unwrap()].push(q);
            }
        }
        let mut dist = vec![u32::MAX; n * n];
        let mut step = vec![(0, 0); n * n];
        let mut layer = Vec::new();
        for p in 0..n {
            for q in 0..n {
                if m.output(p) != m.output(q) {
                    dist[p * n + q] = 0;
                    layer.push(p * n + q);
                }
            }
        }
        let mut depth = 0u32;
        let mut candidate = vec![false; n * n];
        while !layer.is_empty() {
            let mut found = Vec::new();
            for &pair in &layer {
                let (x, y) = (pair / n, pair % n);
                for pa in &preds {
                    for &px in &pa[x] {
                        for &py in &pa[y] {
                            let idx = px * n + py;
                            if dist[idx] == u32::MAX && !candidate[idx] {
                                candidate[idx] = true;
                                found.push(idx);
                            }
                        }
                    }
                }
            }
            for &idx in &found {
                candidate[idx] = false;
                let (x, y) = (idx / n, idx % n);
                for a in 0..k {
                    let child = m.next(x, a).unwrap() * n + m.next(y, a).unwrap();
                    if dist[child] == depth {
                        step[idx] = (a, child);
                        break;
                    }
                }
            }
            for &idx in &found {
                dist[idx] = depth + 1;
            }
            depth += 1;
            layer = found;
        }
        Ok(SuffixTable { n, dist, step })
    }

    pub fn num_states(&self) -> usize {
        self.n
    }

    /// Length of the minimal suffix, `None` for equivalent states.
    pub fn distance(&self, p: StateId, q: StateId) -> Option<usize> {
        let d = self.dist[p * self.n + q];
        (d != u32::MAX).then_some(d as usize)
    }

    pub fn suffix(&self, p: StateId, q: StateId) -> Result<Word> {
        let mut at = p * self.n + q;
        let len = self.distance(p, q).ok_or(Error::NotDistinguishable(p, q))?;
        let mut word = Vec::with_capacity(len);
        for _ in 0..len {
            let (a, next) = self.step[at];
            word.push(a);
            at = next;
        }
        Ok(word)
    }
}

/// A characteristic sample together with the sets it was built from.
#[derive(Clone, Debug)]
pub struct CharSampleReport {
    pub sample: TraceSet,
    /// Indexed by state id.
    pub shortest_prefixes: Vec<StateWord>,
    pub nucleus: BTreeSet<StateWord>,
    /// Every `(state of u, state of v, suffix)` used to separate a shortest
    /// prefix from a nucleus word.
    pub suffixes: Vec<(StateId, StateId, Word)>,
}

/// Builds a characteristic sample of a minimal complete machine: the nucleus
/// plus, for each shortest prefix `u` and nucleus word `v` reaching different
/// states, `u·w` and `v·w` with `w` their minimal distinguishing suffix.
/// Inputs that are prefixes of other inputs are dropped.
pub fn characteristic_sample(m: &MooreMachine) -> Result<CharSampleReport> {
    let prefixes = shortest_prefixes(m)?;
    let nucleus = nucleus(m)?;
    let table = SuffixTable::new(m)?;
    let mut words: BTreeSet<StateWord> = nucleus.clone();
    let mut used = BTreeSet::new();
    for u in &prefixes {
        let su = m.walk(m.initial(), u.as_slice()).unwrap();
        for v in &nucleus {
            let sv = m.walk(m.initial(), v.as_slice()).unwrap();
            if su == sv {
                continue;
            }
            let w = table.suffix(su, sv)?;
            words.insert(u.concat(&w));
            words.insert(v.concat(&w));
            used.insert((su, sv, w));
        }
    }
    let mut sample = TraceSet::new(m.inputs().clone(), m.outputs().clone());
    for w in prune_prefixes(&words) {
        let out = m.run(w.as_slice())?;
        sample.push(MooreTrace::new(w.0.clone(), out)?)?;
    }
    Ok(CharSampleReport {
        sample,
        shortest_prefixes: prefixes,
        nucleus,
        suffixes: used.into_iter().collect(),
    })
}

/// Words of `words` that are not a proper prefix of another member.
fn prune_prefixes(words: &BTreeSet<StateWord>) -> Vec<&StateWord> {
    let mut inner: HashSet<&[Symbol]> = HashSet::new();
    for w in words {
        for i in 0..w.len() {
            inner.insert(&w.as_slice()[..i]);
        }
    }
    words.iter().filter(|w| !inner.contains(w.as_slice())).collect()
}

/// Why a trace set fails to be characteristic.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Violation {
    /// A nucleus word is not a prefix of any trace input.
    MissingNucleus { word: Word },
    /// `missing`, one of `u·w` and `v·w`, is not a prefix of any trace input.
    MissingSuffix {
        u: Word,
        v: Word,
        suffix: Word,
        missing: Word,
    },
}

/// Result of [`is_characteristic`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Characteristic,
    Violated(Violation),
}

impl Verdict {
    pub fn holds(&self) -> bool {
        matches!(self, Verdict::Characteristic)
    }
}

/// Checks the two characteristic-sample conditions for `ts` against a
/// minimal complete `m`, reporting the first violation found with `u` in
/// shortlex order of the shortest prefixes and `v` in shortlex order of the
/// nucleus.
pub fn is_characteristic(ts: &TraceSet, m: &MooreMachine) -> Result<Verdict> {
    if ts.inputs() != m.inputs() {
        return Err(Error::AlphabetMismatch);
    }
    let mut prefixes = shortest_prefixes(m)?;
    prefixes.sort();
    let nucleus = nucleus(m)?;
    let table = SuffixTable::new(m)?;
    let mut pref: HashSet<&[Symbol]> = HashSet::new();
    for t in ts {
        for i in 0..=t.input().len() {
            pref.insert(&t.input()[..i]);
        }
    }
    if let Some(v) = nucleus.iter().find(|v| !pref.contains(v.as_slice())) {
        return Ok(Verdict::Violated(Violation::MissingNucleus { word: v.0.clone() }));
    }
    for u in &prefixes {
        let su = m.walk(m.initial(), u.as_slice()).unwrap();
        for v in &nucleus {
            let sv = m.walk(m.initial(), v.as_slice()).unwrap();
            if su == sv {
                continue;
            }
            let w = table.suffix(su, sv)?;
            for x in [u, v] {
                let word = x.concat(&w);
                if !pref.contains(word.as_slice()) {
                    return Ok(Verdict::Violated(Violation::MissingSuffix {
                        u: u.0.clone(),
                        v: v.0.clone(),
                        suffix: w,
                        missing: word.0,
                    }));
                }
            }
        }
    }
    Ok(Verdict::Characteristic)
}

/// Random minimal complete machine with exactly `n_states` states, every
/// output used and every state reachable, over alphabets `i0..` and `o0..`.
/// Deterministic in `seed`.
pub fn random_minimal_moore(seed: u64, n_states: usize, n_inputs: usize, n_outputs: usize) -> Result<MooreMachine> {
    if n_states == 0 || n_inputs == 0 || n_outputs == 0 {
        return Err(Error::InvalidArgument(
            "states, inputs and outputs must be positive".into(),
        ));
    }
    if n_outputs > n_states {
        return Err(Error::InvalidArgument(format!(
            "{n_outputs} outputs cannot all appear on {n_states} states"
        )));
    }
    let inputs = Alphabet::numbered("i", n_inputs)?;
    let outputs = Alphabet::numbered("o", n_outputs)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..GENERATION_ATTEMPTS {
        let mut lambda: Vec<Symbol> = (0..n_states).map(|_| rng.random_range(0..n_outputs)).collect();
        let mut order: Vec<StateId> = (0..n_states).collect();
        order.shuffle(&mut rng);
        for (o, &q) in order.iter().take(n_outputs).enumerate() {
            lambda[q] = o;
        }
        let mut delta: Vec<Option<StateId>> = (0..n_states * n_inputs)
            .map(|_| Some(rng.random_range(0..n_states)))
            .collect();
        // A random chain from the initial state through all others.
        let mut chain: Vec<StateId> = (1..n_states).collect();
        chain.shuffle(&mut rng);
        chain.insert(0, 0);
        for pair in chain.windows(2) {
            let a = rng.random_range(0..n_inputs);
            delta[pair[0] * n_inputs + a] = Some(pair[1]);
        }
        let m = MooreMachine::from_flat(inputs.clone(), outputs.clone(), 0, delta, lambda)?.minimize();
        if m.num_states() == n_states {
            return Ok(m);
        }
    }
    Err(Error::GenerationFailure {
        states: n_states,
        attempts: GENERATION_ATTEMPTS,
    })
}
