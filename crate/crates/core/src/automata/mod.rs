//! Moore machines, partial DFAs and the operations on them: execution,
//! completion, products, minimization, equivalence and isomorphism.

mod alphabet;
mod dfa;
mod moore;
mod product;

pub use alphabet::{shortlex, Alphabet, StateWord, Symbol, Word};
pub use dfa::{Dfa, Mark};
pub use moore::MooreMachine;
pub use product::{product_aligned, product_general, product_general_within};

/// Dense 0-based state identifier.
pub type StateId = usize;
