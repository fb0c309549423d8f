//! Brute-force oracles and random generators shared by the integration
//! tests. Nothing here calls the library's algorithms beyond accessors.
#![allow(dead_code)]

use std::collections::{HashMap, HashSet, VecDeque};

use moore_learn::automata::{Alphabet, MooreMachine};
use moore_learn::traces::{MooreTrace, TraceSet};
use rand::{Rng, RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Words over `k` symbols in shortlex order, up to length `max_len`.
pub fn words_upto(k: usize, max_len: usize) -> impl Iterator<Item = Vec<usize>> {
    (0..=max_len).flat_map(move |len| {
        let total = (k as u64).pow(len as u32);
        (0..total).map(move |mut code| {
            let mut w = vec![0; len];
            for slot in w.iter_mut().rev() {
                *slot = (code % k as u64) as usize;
                code /= k as u64;
            }
            w
        })
    })
}

pub fn step(m: &MooreMachine, q: usize, word: &[usize]) -> usize {
    word.iter().fold(q, |q, &a| m.next(q, a).expect("complete machine"))
}

pub fn outputs_from(m: &MooreMachine, q: usize, word: &[usize]) -> Vec<usize> {
    let mut out = vec![m.output(q)];
    let mut s = q;
    for &a in word {
        s = m.next(s, a).unwrap();
        out.push(m.output(s));
    }
    out
}

/// Shortlex-least access word per state by enumeration.
pub fn brute_access_words(m: &MooreMachine) -> Vec<Vec<usize>> {
    let n = m.num_states();
    let mut found: Vec<Option<Vec<usize>>> = vec![None; n];
    for w in words_upto(m.inputs().len(), n) {
        let q = step(m, m.initial(), &w);
        if found[q].is_none() {
            found[q] = Some(w);
        }
        if found.iter().all(Option::is_some) {
            break;
        }
    }
    found.into_iter().map(|w| w.expect("reachable")).collect()
}

/// Shortlex-least word on which the output sequences from `p` and `q`
/// differ, by enumeration up to `max_len`.
pub fn brute_min_suffix(m: &MooreMachine, p: usize, q: usize, max_len: usize) -> Option<Vec<usize>> {
    words_upto(m.inputs().len(), max_len).find(|w| outputs_from(m, p, w) != outputs_from(m, q, w))
}

/// Product BFS equivalence of two complete machines over the same inputs.
pub fn oracle_equivalent(a: &MooreMachine, b: &MooreMachine) -> bool {
    let mut seen = HashSet::from([(a.initial(), b.initial())]);
    let mut queue = VecDeque::from([(a.initial(), b.initial())]);
    while let Some((x, y)) = queue.pop_front() {
        if a.outputs().symbol(a.output(x)) != b.outputs().symbol(b.output(y)) {
            return false;
        }
        for s in 0..a.inputs().len() {
            let next = (a.next(x, s).unwrap(), b.next(y, s).unwrap());
            if seen.insert(next) {
                queue.push_back(next);
            }
        }
    }
    true
}

/// State-renaming invariant form: BFS numbering from the initial state,
/// then transition and output tables (outputs by symbol name).
pub fn canonical_form(m: &MooreMachine) -> (Vec<Vec<usize>>, Vec<String>) {
    let mut id: HashMap<usize, usize> = HashMap::from([(m.initial(), 0)]);
    let mut order = vec![m.initial()];
    let mut i = 0;
    while i < order.len() {
        let q = order[i];
        for a in 0..m.inputs().len() {
            let t = m.next(q, a).unwrap();
            if let std::collections::hash_map::Entry::Vacant(e) = id.entry(t) {
                e.insert(order.len());
                order.push(t);
            }
        }
        i += 1;
    }
    let rows = order
        .iter()
        .map(|&q| (0..m.inputs().len()).map(|a| id[&m.next(q, a).unwrap()]).collect())
        .collect();
    let outs = order
        .iter()
        .map(|&q| m.outputs().symbol(m.output(q)).to_string())
        .collect();
    (rows, outs)
}

pub fn oracle_isomorphic(a: &MooreMachine, b: &MooreMachine) -> bool {
    a.num_states() == b.num_states() && canonical_form(a) == canonical_form(b)
}

/// Random complete machine, not necessarily minimal or connected.
pub fn random_machine(r: &mut impl Rng, n: usize, ni: usize, no: usize) -> MooreMachine {
    let rows = (0..n)
        .map(|_| (0..ni).map(|_| Some(r.random_range(0..n))).collect())
        .collect();
    let lambda = (0..n).map(|_| r.random_range(0..no)).collect();
    MooreMachine::new(
        Alphabet::numbered("a", ni).unwrap(),
        Alphabet::numbered("y", no).unwrap(),
        0,
        rows,
        lambda,
    )
    .unwrap()
}

pub fn random_word(r: &mut impl Rng, k: usize, max_len: usize) -> Vec<usize> {
    let len = r.random_range(0..=max_len);
    (0..len).map(|_| r.random_range(0..k)).collect()
}

/// Traces of `m` on `count` random words (duplicates collapse).
pub fn sample_traces(m: &MooreMachine, r: &mut impl Rng, count: usize, max_len: usize) -> TraceSet {
    let mut ts = TraceSet::new(m.inputs().clone(), m.outputs().clone());
    for _ in 0..count {
        let w = random_word(r, m.inputs().len(), max_len);
        let out = outputs_from(m, m.initial(), &w);
        ts.push(MooreTrace::new(w, out).unwrap()).unwrap();
    }
    ts
}

/// Both characteristic-sample conditions, checked from enumerated access
/// words and enumerated minimal suffixes.
pub fn oracle_characteristic(ts: &TraceSet, m: &MooreMachine) -> bool {
    let n = m.num_states();
    let k = m.inputs().len();
    let mut pref: HashSet<Vec<usize>> = HashSet::new();
    for t in ts {
        for i in 0..=t.input().len() {
            pref.insert(t.input()[..i].to_vec());
        }
    }
    let access = brute_access_words(m);
    let mut nucleus = vec![vec![]];
    for u in &access {
        for a in 0..k {
            let mut v = u.clone();
            v.push(a);
            nucleus.push(v);
        }
    }
    if !nucleus.iter().all(|v| pref.contains(v)) {
        return false;
    }
    for u in &access {
        let su = step(m, m.initial(), u);
        for v in &nucleus {
            let sv = step(m, m.initial(), v);
            if su == sv {
                continue;
            }
            let w = brute_min_suffix(m, su, sv, n).expect("minimal machine");
            let uw: Vec<usize> = u.iter().chain(&w).copied().collect();
            let vw: Vec<usize> = v.iter().chain(&w).copied().collect();
            if !pref.contains(&uw) || !pref.contains(&vw) {
                return false;
            }
        }
    }
    true
}

pub fn consistent(m: &MooreMachine, ts: &TraceSet) -> bool {
    ts.iter().all(|t| outputs_from(m, m.initial(), t.input()) == t.output())
}
