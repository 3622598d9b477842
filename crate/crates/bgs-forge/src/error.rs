//! Crate-wide error type.
//!
//! Most operations in this crate are total by construction; the errors below
//! are the few explicit refusals (caps, gates) and arithmetic limits that the
//! library reports instead of silently degrading.

use thiserror::Error;

use crate::cnf::DimacsError;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForgeError {
    /// The exhaustive oracle refuses formulas with more variables than its cap.
    #[error("variable count {var_count} exceeds the oracle cap {cap}{}",
        rank.map(|r| format!(" (instance rank {r})")).unwrap_or_default())]
    VarCapExceeded {
        var_count: u64,
        cap: u32,
        /// Instance rank being scanned when the refusal happened, if any.
        rank: Option<u64>,
    },

    /// A polynomial clock bound does not fit the 64-bit cycle budget.
    #[error("clock bound overflows u64 at input length {input_len}")]
    ClockBoundOverflow { input_len: u64 },

    #[error("malformed turing machine: {0}")]
    InvalidMachine(String),

    #[error("clock polynomial must have at least one coefficient, all >= 1")]
    InvalidClockPolynomial,

    #[error("literal uses variable 0; variables are numbered from 1")]
    InvalidLiteral,

    #[error(transparent)]
    Dimacs(#[from] DimacsError),

    /// `trivial_instance_solver` only packages satisfiable instances.
    #[error("instance is unsatisfiable; no single-instance solver exists for it")]
    UnsatisfiableInstance,

    /// Busy Beaver censuses are capped at 4 states.
    #[error("busy beaver census supports 1..=4 states, got {0}")]
    BeaverStateCount(u8),

    /// The 4-state census runs for minutes and must be requested explicitly.
    #[error("4-state census is a long run; pass --allow-long or set BGS_FORGE_LONG_RUNS=1")]
    LongRunGated,

    /// A contract the library promises to uphold was observed broken.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

impl ForgeError {
    /// True for errors that are explicit precondition refusals (caps, gates)
    /// rather than malformed input or broken invariants.
    pub fn is_refusal(&self) -> bool {
        matches!(
            self,
            ForgeError::VarCapExceeded { .. }
                | ForgeError::ClockBoundOverflow { .. }
                | ForgeError::BeaverStateCount(_)
                | ForgeError::LongRunGated
                | ForgeError::UnsatisfiableInstance
        )
    }
}
