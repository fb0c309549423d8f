//! Passive learning of deterministic, complete Moore machines from
//! input-output traces.

pub mod automata;
mod budget;
pub mod charsample;
pub mod cli;
pub mod error;
pub mod eval;
pub mod fixtures;
pub mod formats;
pub mod learners;
pub mod traces;

pub use budget::Deadline;
pub use error::{Error, Result};
