use std::fmt;

/// Errors surfaced by solvers, oracles and campaign plumbing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Error {
    /// The empty pattern occurs in every string, so no sequence can exclude
    /// it; the problem is infeasible rather than trivially zero.
    EmptyPattern,
    /// Inputs are capped so that every length fits in an `i32` DP cell.
    SequenceTooLong { len: usize },
    /// The requested DP tensor would exceed the memory guard.
    TensorTooLarge { n: usize, m: usize, states: usize },
    /// The brute-force oracle refuses instances it cannot enumerate.
    OracleBound { n: usize, m: usize, limit: usize },
    /// Backtracing found a cell whose value no recurrence case explains.
    InconsistentTensor { i: usize, j: usize, state: usize },
    /// A campaign spec violated one of its invariants.
    InvalidSpec(&'static str),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::EmptyPattern => write!(f, "empty constraint pattern is infeasible"),
            Error::SequenceTooLong { len } => {
                write!(f, "sequence of {len} symbols exceeds the supported maximum")
            }
            Error::TensorTooLarge { n, m, states } => write!(
                f,
                "dp tensor for n={n} m={m} states={states} exceeds the memory guard"
            ),
            Error::OracleBound { n, m, limit } => write!(
                f,
                "oracle refuses n={n} m={m}: n + m must be at most {limit}"
            ),
            Error::InconsistentTensor { i, j, state } => write!(
                f,
                "tensor cell (i={i}, j={j}, k={state}) is not explained by any recurrence case"
            ),
            Error::InvalidSpec(msg) => write!(f, "invalid campaign spec: {msg}"),
        }
    }
}

impl std::error::Error for Error {}
