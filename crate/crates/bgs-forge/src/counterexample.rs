//! Counterexample scans: the least instance on which solver `k` fails, its
//! extension over an all-machines numbering, and the empirical bound index.
//!
//! The true counterexample function is only semi-computable — a solver that
//! never fails would keep the scan running forever — so every operation here
//! carries an explicit rank or index budget and reports the ceiling it
//! scanned instead of ever asserting totality. Likewise, "is this machine a
//! polynomial-time machine" is undecidable for arbitrary indices; the F′
//! variant replaces that semantic test with a decidable syntactic tag (even
//! indices carry couples, odd indices do not).

use serde::Serialize;

use crate::bits::{rank_to_bits_u64, BitString};
use crate::cnf::{brute_force_solve, decode_instance, verify, CnfFormula, SolveOutcome};
use crate::error::ForgeError;
use crate::solver::{bgs_family, FailureReason, OutcomeKind, SolverFamily};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum FailureKind {
    /// Output missing, too short, or not a satisfying line.
    WrongOutput,
    /// The clock fired first.
    Interrupted,
}

/// Result of scanning for the least failure of one solver.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Counterexample {
    /// Least satisfiable rank the solver does not settle; every satisfiable
    /// rank below it was answered with a verified line.
    FailsAt { rank: u64, detail: FailureKind },
    /// No failure within the budget. Says nothing about larger ranks.
    NoFailureFound { scanned: u64 },
    /// The oracle refused an instance mid-scan, so the scan cannot continue
    /// honestly.
    OracleRefused { rank: u64 },
}

enum Classified {
    Unsatisfiable,
    Satisfiable(CnfFormula, BitString),
    Refused,
}

fn classify(rank: u64, var_cap: u32) -> Result<Classified, ForgeError> {
    let bits = rank_to_bits_u64(rank);
    let formula = decode_instance(&bits);
    match brute_force_solve(&formula, var_cap) {
        Ok(SolveOutcome::Unsatisfiable) => Ok(Classified::Unsatisfiable),
        Ok(SolveOutcome::Satisfiable(_)) => Ok(Classified::Satisfiable(formula, bits)),
        Err(ForgeError::VarCapExceeded { .. }) => Ok(Classified::Refused),
        Err(other) => Err(other),
    }
}

/// `F(k)`: scans ranks `0, 1, 2, ...` up to `rank_budget`, skipping
/// unsatisfiable instances, and returns the first satisfiable rank where
/// solver `k` fails to produce a verified satisfying line.
pub fn counterexample_f(
    k: u64,
    family: &dyn SolverFamily,
    rank_budget: u64,
    var_cap: u32,
) -> Result<Counterexample, ForgeError> {
    for rank in 0..rank_budget {
        let (formula, bits) = match classify(rank, var_cap)? {
            Classified::Unsatisfiable => continue,
            Classified::Refused => return Ok(Counterexample::OracleRefused { rank }),
            Classified::Satisfiable(formula, bits) => (formula, bits),
        };
        let outcome = family.solve_at(k, &bits)?;
        let failure = match &outcome.kind {
            OutcomeKind::Answered(line) if verify(&formula, line) => None,
            OutcomeKind::Failed(FailureReason::ClockInterrupt) => Some(FailureKind::Interrupted),
            _ => Some(FailureKind::WrongOutput),
        };
        if let Some(detail) = failure {
            return Ok(Counterexample::FailsAt { rank, detail });
        }
    }
    Ok(Counterexample::NoFailureFound { scanned: rank_budget })
}

/// Re-checks the minimality contract of a `FailsAt(z)` result: every
/// satisfiable rank below `z` must be answered with a verified line.
pub fn audit_minimality(
    k: u64,
    family: &dyn SolverFamily,
    fails_at: u64,
    var_cap: u32,
) -> Result<bool, ForgeError> {
    for rank in 0..fails_at {
        let (formula, bits) = match classify(rank, var_cap)? {
            Classified::Satisfiable(formula, bits) => (formula, bits),
            _ => continue,
        };
        let outcome = family.solve_at(k, &bits)?;
        let ok = matches!(&outcome.kind, OutcomeKind::Answered(line) if verify(&formula, line));
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `F'(k)` over the all-machines numbering with a decidable couple tag.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum FPrime {
    /// The index is not tagged as a couple.
    Zero,
    /// The index carries couple `k/2`; the payload is `F(k/2)` over the
    /// couple enumeration.
    Couple {
        bgs_index: u64,
        #[serde(flatten)]
        result: Counterexample,
    },
}

/// Even indices are tagged as couples and delegate to `F`; odd indices give
/// zero outright.
pub fn counterexample_fprime(
    k: u64,
    rank_budget: u64,
    var_cap: u32,
) -> Result<FPrime, ForgeError> {
    if k % 2 != 0 {
        return Ok(FPrime::Zero);
    }
    let bgs_index = k / 2;
    let result = counterexample_f(bgs_index, &bgs_family(), rank_budget, var_cap)?;
    Ok(FPrime::Couple { bgs_index, result })
}

/// Result of the empirical bound scan.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum EmpiricalR {
    /// Least index that settles every satisfiable instance of the window.
    Found { k: u64 },
    /// No index up to the budget settles the window; reports the budget,
    /// never nonexistence.
    NotFoundWithin { index_budget: u64 },
}

/// "How far up do we have to go": the least `k <= index_budget` whose solver
/// answers every satisfiable instance of rank below `rank_bound` with a
/// verified line.
pub fn empirical_r(
    rank_bound: u64,
    family: &dyn SolverFamily,
    index_budget: u64,
    var_cap: u32,
) -> Result<EmpiricalR, ForgeError> {
    // The oracle verdicts are the same for every k; classify each rank once.
    let mut window = Vec::with_capacity(rank_bound as usize);
    for rank in 0..rank_bound {
        match classify(rank, var_cap)? {
            Classified::Unsatisfiable => continue,
            Classified::Refused => {
                return Err(ForgeError::VarCapExceeded {
                    var_count: decode_instance(&rank_to_bits_u64(rank)).var_count(),
                    cap: var_cap,
                    rank: Some(rank),
                })
            }
            Classified::Satisfiable(formula, bits) => window.push((formula, bits)),
        }
    }
    'indices: for k in 0..=index_budget {
        for (formula, bits) in &window {
            let outcome = family.solve_at(k, bits)?;
            let ok = matches!(&outcome.kind, OutcomeKind::Answered(line) if verify(formula, line));
            if !ok {
                continue 'indices;
            }
        }
        return Ok(EmpiricalR::Found { k });
    }
    Ok(EmpiricalR::NotFoundWithin { index_budget })
}

/// One row of the growth tabulation.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthRow {
    pub k: u64,
    pub rank_budget: u64,
    #[serde(flatten)]
    pub result: Counterexample,
}

/// Tabulates `F` across the given indices (sorted, deduplicated) for
/// side-by-side reporting against a Busy Beaver census. Purely descriptive.
pub fn growth_table(
    ks: &[u64],
    family: &dyn SolverFamily,
    rank_budget: u64,
    var_cap: u32,
) -> Result<Vec<GrowthRow>, ForgeError> {
    let mut ks: Vec<u64> = ks.to_vec();
    ks.sort_unstable();
    ks.dedup();
    let mut rows = Vec::with_capacity(ks.len());
    for k in ks {
        let result = counterexample_f(k, family, rank_budget, var_cap)?;
        rows.push(GrowthRow { k, rank_budget, result });
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::bgs::bgs_index;
    use crate::cnf::DEFAULT_VAR_CAP;
    use crate::folklore::lookup_solver;
    use crate::machine::{blank_runner, encode_machine};
    use crate::solver::native_family;
    use std::sync::Arc;

    fn native_lookup(n: u64) -> crate::solver::NativeFamily {
        native_family(vec![Arc::new(lookup_solver(n, DEFAULT_VAR_CAP).unwrap())])
    }

    #[test]
    fn echo_couple_fails_first_at_the_negative_singleton() {
        // The index-0 couple echoes its input. Rank 59 ("11100", the clause
        // (x1)) is echoed as a line with x1 = 1 and passes; rank 61
        // ("11110", the clause (not x1)) is echoed as x1 = 1 and fails.
        let result = counterexample_f(0, &bgs_family(), 128, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(
            result,
            Counterexample::FailsAt { rank: 61, detail: FailureKind::WrongOutput }
        );
        assert!(audit_minimality(0, &bgs_family(), 61, DEFAULT_VAR_CAP).unwrap());
    }

    #[test]
    fn never_halting_couple_fails_at_rank_zero_by_interrupt() {
        // Couple ⟨blank-runner, p(n) = 1⟩: the machine never halts on its
        // own, and rank 0 (the empty formula) is satisfiable, so the very
        // first scan step is an interrupt failure.
        let machine_index = encode_machine(&blank_runner());
        let machine_index = u64::try_from(&machine_index).expect("small index");
        let k = bgs_index(machine_index, 0).unwrap();
        let result = counterexample_f(k, &bgs_family(), 16, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(result, Counterexample::FailsAt { rank: 0, detail: FailureKind::Interrupted });
    }

    #[test]
    fn table_backed_family_has_no_failure_in_its_window() {
        let family = native_lookup(64);
        let result = counterexample_f(0, &family, 64, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(result, Counterexample::NoFailureFound { scanned: 64 });
    }

    #[test]
    fn fprime_parity_tagging() {
        assert_eq!(counterexample_fprime(1, 64, DEFAULT_VAR_CAP).unwrap(), FPrime::Zero);
        for k in (1..100u64).step_by(2) {
            assert_eq!(counterexample_fprime(k, 8, DEFAULT_VAR_CAP).unwrap(), FPrime::Zero);
        }
        let delegated = counterexample_fprime(0, 128, DEFAULT_VAR_CAP).unwrap();
        let direct = counterexample_f(0, &bgs_family(), 128, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(delegated, FPrime::Couple { bgs_index: 0, result: direct });
        // Parity alone decides the shape for every small index.
        for k in (0..100u64).step_by(2) {
            assert!(matches!(
                counterexample_fprime(k, 4, DEFAULT_VAR_CAP).unwrap(),
                FPrime::Couple { bgs_index, .. } if bgs_index == k / 2
            ));
        }
    }

    #[test]
    fn empirical_r_base_cases() {
        // Rank 0 is the empty formula; the index-0 couple answers it.
        let r = empirical_r(1, &bgs_family(), 10, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(r, EmpiricalR::Found { k: 0 });

        let family = native_lookup(64);
        let r = empirical_r(64, &family, 10, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(r, EmpiricalR::Found { k: 0 });
    }

    #[test]
    fn empirical_r_reports_its_budget_when_nothing_qualifies() {
        // Settling every satisfiable rank below 64 requires answering both
        // (x1) at rank 59 and (not x1) at rank 61; no couple this deep in
        // the enumeration computes anything that discriminating.
        let r = empirical_r(64, &bgs_family(), 1000, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(r, EmpiricalR::NotFoundWithin { index_budget: 1000 });
    }

    struct EmptyInputOnly;

    impl crate::solver::Solver for EmptyInputOnly {
        fn name(&self) -> String {
            "empty-input-only".into()
        }

        fn solve(&self, input: &BitString) -> crate::solver::SolverOutcome {
            if input.is_empty() {
                crate::solver::SolverOutcome::answered(BitString::new(), 0)
            } else {
                crate::solver::SolverOutcome::failed(FailureReason::Declined, input.len() as u64)
            }
        }
    }

    #[test]
    fn empirical_r_is_monotone_in_the_window() {
        // Solver 0 answers only the rank-0 instance; solver 1 covers the
        // whole window. R jumps from 0 to 1 as soon as the window widens and
        // never decreases.
        let family = native_family(vec![
            Arc::new(EmptyInputOnly),
            Arc::new(lookup_solver(16, DEFAULT_VAR_CAP).unwrap()),
        ]);
        let mut last = 0u64;
        for rank_bound in 1..=16u64 {
            match empirical_r(rank_bound, &family, 50, DEFAULT_VAR_CAP).unwrap() {
                EmpiricalR::Found { k } => {
                    assert!(k >= last, "window {rank_bound}: {k} < {last}");
                    last = k;
                }
                EmpiricalR::NotFoundWithin { .. } => break,
            }
        }
        assert_eq!(last, 1, "the wider windows should need the second solver");
    }

    #[test]
    fn growth_table_delegates_and_sorts() {
        let family = bgs_family();
        let rows = growth_table(&[0], &family, 128, DEFAULT_VAR_CAP).unwrap();
        assert_eq!(rows.len(), 1);
        assert_eq!(rows[0].result, counterexample_f(0, &family, 128, DEFAULT_VAR_CAP).unwrap());

        assert!(growth_table(&[], &family, 16, DEFAULT_VAR_CAP).unwrap().is_empty());

        let shuffled = growth_table(&[7, 0, 3, 7], &family, 16, DEFAULT_VAR_CAP).unwrap();
        let ks: Vec<u64> = shuffled.iter().map(|r| r.k).collect();
        assert_eq!(ks, vec![0, 3, 7]);
    }
}
