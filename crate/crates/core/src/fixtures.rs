//! Small machines and trace sets used throughout the docs and tests.

use crate::automata::{Alphabet, MooreMachine};
use crate::traces::TraceSet;

/// Two-state machine over `I = {x1, x2}`, `O = {y1, y2}`: `x1` leads to the
/// `y1` state and `x2` to the `y2` state from anywhere.
pub fn m1() -> MooreMachine {
    MooreMachine::new(
        Alphabet::new(["x1", "x2"]).unwrap(),
        Alphabet::new(["y1", "y2"]).unwrap(),
        0,
        vec![vec![Some(0), Some(1)], vec![Some(0), Some(1)]],
        vec![0, 1],
    )
    .unwrap()
}

/// Characteristic sample of [`m1`].
pub fn m1_sample() -> TraceSet {
    TraceSet::from_strs(
        Alphabet::new(["x1", "x2"]).unwrap(),
        Alphabet::new(["y1", "y2"]).unwrap(),
        &[("x1", "y1 y1"), ("x2 x1", "y1 y2 y1"), ("x2 x2", "y1 y2 y2")],
    )
    .unwrap()
}

/// Four-state machine over `I = {a, b}`, `O = {0, 1, 2}` where states 2 and
/// 3 share output `2` and are told apart only by the suffix `a`.
pub fn fig4a() -> MooreMachine {
    MooreMachine::new(
        Alphabet::new(["a", "b"]).unwrap(),
        Alphabet::new(["0", "1", "2"]).unwrap(),
        0,
        vec![
            vec![Some(2), Some(1)],
            vec![Some(3), Some(3)],
            vec![Some(0), Some(3)],
            vec![Some(2), Some(2)],
        ],
        vec![0, 1, 2, 2],
    )
    .unwrap()
}

fn ab_012(traces: &[(&str, &str)]) -> TraceSet {
    TraceSet::from_strs(
        Alphabet::new(["a", "b"]).unwrap(),
        Alphabet::new(["0", "1", "2"]).unwrap(),
        traces,
    )
    .unwrap()
}

/// Traces of [`fig4a`] covering the nucleus but missing the suffix that
/// separates states 2 and 3.
pub fn fig4_sample1() -> TraceSet {
    ab_012(&[
        ("a a", "0 2 0"),
        ("b a", "0 1 2"),
        ("b b", "0 1 2"),
        ("a b a", "0 2 2 2"),
        ("a b b", "0 2 2 2"),
    ])
}

/// A characteristic sample of [`fig4a`].
pub fn fig4_sample2() -> TraceSet {
    ab_012(&[
        ("a a", "0 2 0"),
        ("b a a", "0 1 2 2"),
        ("b b a", "0 1 2 2"),
        ("a b a a", "0 2 2 2 0"),
        ("a b b a", "0 2 2 2 0"),
    ])
}

/// Traces behind the examples `(b, 0), (aa, 1), (ab, 2)` with the prefixes
/// `ε` and `a` labelled `0`.
pub fn fig3_traces() -> TraceSet {
    ab_012(&[("b", "0 0"), ("a a", "0 0 1"), ("a b", "0 0 2")])
}
