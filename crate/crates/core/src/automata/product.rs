use std::collections::{HashMap, VecDeque};

use super::dfa::Dfa;
use super::moore::MooreMachine;
use super::StateId;
use crate::budget::Deadline;
use crate::error::{Error, Result};
use crate::traces::OutputEncoding;

/// Overlays `N` DFAs that share one skeleton into a Moore machine.
///
/// State `q` outputs the symbol whose code has bit `i` set iff `q` is
/// accepting in DFA `i`. A code outside the encoding is reported as
/// [`Error::InvalidCode`] rather than remapped: merged skeletons only ever
/// carry codes present in the examples.
pub fn product_aligned(dfas: &[Dfa], enc: &OutputEncoding) -> Result<MooreMachine> {
    if dfas.len() != enc.bit_count() {
        return Err(Error::BitCountMismatch {
            expected: enc.bit_count(),
            got: dfas.len(),
        });
    }
    let first = &dfas[0];
    if dfas[1..].iter().any(|d| !d.same_skeleton(first)) {
        return Err(Error::SkeletonMismatch);
    }
    let lambda = (0..first.num_states())
        .map(|q| {
            let code = enc.code_of_bits(dfas.iter().map(|d| d.mark(q).is_accepting()));
            enc.decode(code).ok_or(Error::InvalidCode { state: q, code })
        })
        .collect::<Result<Vec<_>>>()?;
    MooreMachine::from_flat(
        first.alphabet().clone(),
        enc.outputs().clone(),
        first.initial(),
        first.delta().to_vec(),
        lambda,
    )
}

/// Reachable synchronous product of DFAs over one alphabet.
///
/// States are tuples of component states, numbered in BFS order. A product
/// transition exists only where every component defines one. Codes that
/// decode to no output take the encoding's fallback (ordinal 0).
pub fn product_general(dfas: &[Dfa], enc: &OutputEncoding) -> Result<MooreMachine> {
    product_general_within(dfas, enc, Deadline::none())
}

pub fn product_general_within(dfas: &[Dfa], enc: &OutputEncoding, deadline: Deadline) -> Result<MooreMachine> {
    if dfas.len() != enc.bit_count() {
        return Err(Error::BitCountMismatch {
            expected: enc.bit_count(),
            got: dfas.len(),
        });
    }
    let alphabet = dfas[0].alphabet();
    if dfas.iter().any(|d| d.alphabet() != alphabet) {
        return Err(Error::AlphabetMismatch);
    }
    let width = alphabet.len();
    let start: Vec<StateId> = dfas.iter().map(Dfa::initial).collect();
    let mut ids: HashMap<Vec<StateId>, StateId> = HashMap::from([(start.clone(), 0)]);
    let mut tuples = vec![start];
    let mut queue = VecDeque::from([0usize]);
    let mut delta: Vec<Option<StateId>> = Vec::new();
    let mut lambda = Vec::new();
    let mut ticks = 0u32;
    while let Some(id) = queue.pop_front() {
        deadline.tick(&mut ticks)?;
        // BFS pops ids in creation order, so rows are appended in id order.
        debug_assert_eq!(id, lambda.len());
        let tuple = tuples[id].clone();
        let code = enc.code_of_bits(dfas.iter().zip(&tuple).map(|(d, &q)| d.mark(q).is_accepting()));
        lambda.push(enc.decode_or_fallback(code));
        for a in 0..width {
            let Some(succ) = dfas
                .iter()
                .zip(&tuple)
                .map(|(d, &q)| d.next(q, a))
                .collect::<Option<Vec<StateId>>>()
            else {
                delta.push(None);
                continue;
            };
            let next = ids.len();
            let target = *ids.entry(succ.clone()).or_insert_with(|| {
                tuples.push(succ);
                queue.push_back(next);
                next
            });
            delta.push(Some(target));
        }
    }
    MooreMachine::from_flat(alphabet.clone(), enc.outputs().clone(), 0, delta, lambda)
}
