//! Subsequence matching and analysis under gap constraints.
//!
//! A gapped sequence is a pattern `p` together with one constraint per gap
//! between consecutive pattern symbols: a length window, a regular
//! language given by a complete DFA, or both. This crate decides whether a
//! word contains such a pattern, counts embeddings, compares the sets of
//! gapped subsequences of two words, and generates hard instances.

pub mod analysis;
pub mod automata;
pub mod bench;
pub mod error;
pub mod io;
pub mod matchers;
pub mod model;
pub mod multiplicity;
pub mod reductions;

pub use error::{Error, Result};
pub use model::{
    normalize, verify_embedding, wrap_boundary, Alphabet, DfaId, Embedding, GapConstraint,
    GapConstraints, GappedSequence, Symbol, UpperBound, Word,
};
