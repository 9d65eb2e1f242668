//! Automatic infinite permutations.
//!
//! An infinite permutation is a linear order on ℕ. This crate works with
//! permutations given by finite automata reading pairs of base-k digits
//! ([`automaton`]), decides whether such an automaton really defines an
//! order ([`validity`]), compiles uniform morphisms with codings into such
//! automata ([`compiler`]), and computes k-kernels ([`kernel`]).
//!
//! ```
//! use autoperm::{fixtures, perm::rank_window, automaton::OracleMode};
//!
//! let tm = fixtures::thue_morse_automaton();
//! let ranks = rank_window(&tm.as_oracle(OracleMode::Checked)?, 4)?;
//! assert_eq!(ranks.ranks(), &[2, 4, 3, 1]);
//! # Ok::<(), autoperm::Error>(())
//! ```

pub mod automaton;
pub mod cli;
pub mod compiler;
pub mod error;
pub mod fixtures;
pub mod kernel;
pub mod perm;
pub mod validity;
pub mod words;

pub use automaton::{ComparisonAutomaton, OracleMode};
pub use error::{Error, Result};
pub use perm::{pair_encode, rank_window, PermutationOracle, Radix, Relation};
