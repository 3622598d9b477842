//! The enumeration of clocked polynomial-time machines `P_0, P_1, ...` as
//! couples ⟨machine, clock⟩.
//!
//! Index `k` splits through the Cantor pairing inverse into `(i, j)`; `i` is
//! a machine index for [`decode_machine`] and `j` selects a polynomial clock.
//! The clock shuts the machine down after `p(|x|)` cycles, where `p` has
//! positive integer coefficients, so every couple is a polynomial-time total
//! procedure. Interruption by the clock is a failure with empty output; an
//! unfinished computation is never credited with an answer.
//!
//! The pairing and the polynomial coding are conventions of this crate, not
//! forced by anything: any bijection would do. Both are total, so every
//! natural number is a legal couple.

use serde::Serialize;

use crate::bits::{cantor_pair, cantor_unpair, gamma_read, rank_to_bits_u64, BitString};
use crate::error::ForgeError;
use crate::machine::{decode_machine, run, RunResult, RunStatus, TuringMachine};

/// `p(n) = a_0 + a_1 n + ... + a_d n^d` with every `a_t >= 1`, so
/// `p(n) >= 1` for all `n >= 0`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ClockPolynomial {
    coefficients: Vec<u64>,
}

impl ClockPolynomial {
    pub fn new(coefficients: Vec<u64>) -> Result<Self, ForgeError> {
        if coefficients.is_empty() || coefficients.contains(&0) {
            return Err(ForgeError::InvalidClockPolynomial);
        }
        Ok(ClockPolynomial { coefficients })
    }

    pub fn coefficients(&self) -> &[u64] {
        &self.coefficients
    }

    /// Exact `p(input_len)` with overflow reported, never wrapped.
    pub fn bound(&self, input_len: u64) -> Result<u64, ForgeError> {
        let overflow = || ForgeError::ClockBoundOverflow { input_len };
        let mut total: u64 = 0;
        let mut power: u64 = 1;
        for (t, &coeff) in self.coefficients.iter().enumerate() {
            if t > 0 {
                power = power.checked_mul(input_len).ok_or_else(overflow)?;
            }
            let term = coeff.checked_mul(power).ok_or_else(overflow)?;
            total = total.checked_add(term).ok_or_else(overflow)?;
        }
        Ok(total)
    }
}

/// A couple ⟨machine, clock⟩ together with its enumeration index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClockedMachine {
    pub machine: TuringMachine,
    pub clock: ClockPolynomial,
    pub index: u64,
}

/// Decodes the clock polynomial at index `j`: the length-lex string of `j`
/// parsed as a greedy sequence of gamma codes, one coefficient each. An
/// incomplete trailing code is dropped; no codes at all means `p(n) = 1`.
pub fn decode_poly(index: u64) -> ClockPolynomial {
    let bits = rank_to_bits_u64(index);
    let mut r = bits.reader();
    let mut coefficients = Vec::new();
    while let Some(value) = gamma_read(&mut r) {
        coefficients.push(value);
    }
    if coefficients.is_empty() {
        coefficients.push(1);
    }
    ClockPolynomial { coefficients }
}

/// The couple at enumeration index `k`. Total and deterministic; every
/// (machine index, clock index) pair appears at exactly one `k`.
pub fn decode_bgs(index: u64) -> ClockedMachine {
    let (machine_index, poly_index) = cantor_unpair(index);
    ClockedMachine {
        machine: decode_machine(&machine_index.into()),
        clock: decode_poly(poly_index),
        index,
    }
}

/// Recombines a (machine index, clock index) pair into its enumeration
/// position.
pub fn bgs_index(machine_index: u64, poly_index: u64) -> Option<u64> {
    cantor_pair(machine_index, poly_index)
}

/// `p(|input|)`, the exact cycle budget the clock grants on this input.
pub fn clock_bound(clock: &ClockPolynomial, input_len: u64) -> Result<u64, ForgeError> {
    clock.bound(input_len)
}

/// Runs the couple on `input` under its clock. A budget exhaustion is
/// reported as [`RunStatus::ClockInterrupt`] with empty output.
pub fn run_clocked(cm: &ClockedMachine, input: &BitString) -> Result<RunResult, ForgeError> {
    let budget = cm.clock.bound(input.len() as u64)?;
    let mut result = run(&cm.machine, input, budget);
    if result.status == RunStatus::BudgetExceeded {
        result.status = RunStatus::ClockInterrupt;
    }
    Ok(result)
}
