//! A desk-scale laboratory around the machinery of the P versus NP question:
//! a total Gödel numbering of Turing machines, the enumeration of clocked
//! polynomial-time machines as ⟨machine, clock⟩ couples, SAT instances as
//! binary strings with an exhaustive satisfiability oracle, enumerate-and-test
//! universal search, counterexample scans, and small Busy Beaver censuses.
//!
//! Everything is deterministic and budget-stamped: semi-decidable questions
//! are always scanned under explicit rank/index/cycle budgets, and no solver
//! answer is ever trusted without an explicit verification step.
//!
//! The `examples/` directory has one runnable walkthrough per capability;
//! the `bgs-forge` binary exposes the same operations as subcommands that
//! emit one JSON record per result.

pub mod beaver;
pub mod bgs;
pub mod bits;
pub mod cli;
pub mod cnf;
pub mod counterexample;
pub mod error;
pub mod folklore;
pub mod machine;
pub mod report;
pub mod search;
pub mod solver;

pub use bgs::{ClockPolynomial, ClockedMachine};
pub use bits::BitString;
pub use cnf::CnfFormula;
pub use error::ForgeError;
pub use machine::{RunResult, RunStatus, TuringMachine};
pub use solver::{Solver, SolverFamily, SolverOutcome};
