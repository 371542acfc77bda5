//! Longest common subsequence of two strings excluding a forbidden substring
//! (STR-EC-LCS).
//!
//! Given inputs X and Y and a nonempty pattern P, the solvers find a longest
//! common subsequence of X and Y that does not contain P as a contiguous run.
//! The dynamic program indexes partial solutions by their *state* — the
//! length of their longest suffix that is a prefix of P — which is what makes
//! the exclusion constraint compositional; see [`solve_optimized`] for the
//! O(nmr) solver and the `reference` module for the baselines it is differentially
//! tested against, including an earlier published recurrence that reports
//! wrong answers. [`difftest`] drives seeded cross-checking campaigns with
//! counterexample minimization.
//!
//! ```
//! use strec::{solve_optimized, ConstraintPattern, Sequence};
//!
//! let x = Sequence::new("abbb").unwrap();
//! let y = Sequence::new("aab").unwrap();
//! let p = ConstraintPattern::new("ab").unwrap();
//! let outcome = solve_optimized(&x, &y, &p).unwrap();
//! // the plain LCS "ab" contains the pattern, so only one symbol survives
//! assert_eq!(outcome.length, 1);
//! assert_eq!(outcome.witness.unwrap().symbols(), b"b");
//! ```

pub mod difftest;
mod dp;
mod error;
mod pattern;
pub mod reference;
mod sequence;

pub use dp::{
    backtrace, max_sigma, solve_length_only, solve_naive, solve_optimized, DpTensor, SolveOutcome,
    TENSOR_BYTE_LIMIT,
};
pub use error::Error;
pub use pattern::{ConstraintPattern, PrefixFunction, TransitionTable};
pub use sequence::{Sequence, MAX_SEQUENCE_LEN};
