//! Folklore constructions around polynomial-time SAT solvers: the finite
//! witness-tuple check for the "some machine settles everything fast" shape,
//! per-instance trivial solvers, the chain of lookup solvers that settle all
//! instances up to `n` plus an infinite syntactic family, and windowed
//! strict-dominance comparison.
//!
//! # Native solver cost model
//!
//! Native solvers are not cycle-accurate machines, so they charge a
//! deterministic surrogate instead: `cycles_charged = |input| * degree`,
//! where the degree stands in for the order of the procedure's polynomial
//! (trivial lookup 1, table solver 2, exhaustive oracle 3).

use std::collections::BTreeSet;

use serde::Serialize;

use crate::bits::{rank_to_bits_u64, BitString};
use crate::cnf::{
    brute_force_solve, decode_instance, encode_instance, sat_instances_upto, small_rank, verify,
    CnfFormula, SolveOutcome,
};
use crate::error::ForgeError;
use crate::solver::{FailureReason, OutcomeKind, Solver, SolverFamily, SolverOutcome};

fn charge(degree: u64, input: &BitString) -> u64 {
    input.len() as u64 * degree
}

/// A claimed fast solver: index `m` of a family plus the bound exponent `a`
/// and offset `b`, both positive.
pub struct WitnessTuple<'a> {
    pub family: &'a dyn SolverFamily,
    pub index: u64,
    pub a: u32,
    pub b: u64,
}

impl<'a> WitnessTuple<'a> {
    pub fn new(family: &'a dyn SolverFamily, index: u64, a: u32, b: u64) -> Self {
        assert!(a >= 1 && b >= 1, "witness bounds must be positive");
        WitnessTuple { family, index, a, b }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum Violation {
    /// The answer failed verification (or the solver declined / returned
    /// something other than a line).
    WrongOutput,
    /// The answer was right but took `cycles >= bound = |x|^a + b`.
    TooSlow { cycles: u64, bound: u64 },
    /// The clock fired before the machine finished.
    Interrupted,
}

/// Outcome of a windowed witness check: how many satisfiable instances were
/// run and which of them violated the tuple's claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WitnessReport {
    pub checked: u64,
    pub violations: Vec<(u64, Violation)>,
}

impl WitnessReport {
    pub fn clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Runs the tuple's solver on every satisfiable instance of rank below
/// `rank_bound` and records violations. An empty violation list means the
/// tuple witnesses the fast-solver shape on this finite window — and says
/// nothing beyond it.
pub fn check_witness_tuple(
    tuple: &WitnessTuple<'_>,
    rank_bound: u64,
    var_cap: u32,
) -> Result<WitnessReport, ForgeError> {
    let mut checked = 0;
    let mut violations = Vec::new();
    for rank in 0..rank_bound {
        let bits = rank_to_bits_u64(rank);
        let formula = decode_instance(&bits);
        match brute_force_solve(&formula, var_cap) {
            Ok(SolveOutcome::Unsatisfiable) => continue,
            Ok(SolveOutcome::Satisfiable(_)) => {}
            Err(ForgeError::VarCapExceeded { var_count, cap, .. }) => {
                return Err(ForgeError::VarCapExceeded { var_count, cap, rank: Some(rank) });
            }
            Err(other) => return Err(other),
        }
        checked += 1;
        let outcome = tuple.family.solve_at(tuple.index, &bits)?;
        // |x|^a + b, evaluated wide: an unrepresentable bound can never be
        // reached by a u64 cycle count.
        let bound = (bits.len() as u128)
            .checked_pow(tuple.a)
            .and_then(|p| p.checked_add(tuple.b as u128));
        match &outcome.kind {
            OutcomeKind::Failed(FailureReason::ClockInterrupt) => {
                violations.push((rank, Violation::Interrupted));
            }
            OutcomeKind::Failed(_) => violations.push((rank, Violation::WrongOutput)),
            OutcomeKind::Answered(line) if !verify(&formula, line) => {
                violations.push((rank, Violation::WrongOutput));
            }
            OutcomeKind::Answered(_) => {
                if let Some(bound) = bound {
                    if outcome.cycles_charged as u128 >= bound {
                        violations
                            .push((rank, Violation::TooSlow { cycles: outcome.cycles_charged, bound: bound as u64 }));
                    }
                }
            }
        }
    }
    Ok(WitnessReport { checked, violations })
}

/// A constant-time solver that answers exactly one instance with a stored
/// oracle line and declines everything else.
#[derive(Debug)]
pub struct TrivialInstanceSolver {
    code: BitString,
    line: BitString,
}

/// Packages the trivial solver for a satisfiable instance. Rejects
/// unsatisfiable formulas: no amount of table lookup settles those.
pub fn trivial_instance_solver(
    formula: &CnfFormula,
    var_cap: u32,
) -> Result<TrivialInstanceSolver, ForgeError> {
    match brute_force_solve(formula, var_cap)? {
        SolveOutcome::Satisfiable(line) => {
            Ok(TrivialInstanceSolver { code: encode_instance(formula).bits, line })
        }
        SolveOutcome::Unsatisfiable => Err(ForgeError::UnsatisfiableInstance),
    }
}

impl Solver for TrivialInstanceSolver {
    fn name(&self) -> String {
        format!("trivial:{}", self.code)
    }

    fn solve(&self, input: &BitString) -> SolverOutcome {
        let cycles = charge(1, input);
        if *input == self.code {
            SolverOutcome::answered(self.line.clone(), cycles)
        } else {
            SolverOutcome::failed(FailureReason::Declined, cycles)
        }
    }
}

// Lines longer than this are never materialized by the heuristic; asking for
// one means the instance was adversarially huge, and declining is sound.
const MAX_HEURISTIC_LINE: u64 = 1 << 26;

/// The syntactic heuristic H: all-ones when every clause has a positive
/// literal, all-zeros when every clause has a negative literal, otherwise no
/// answer. Whenever H answers, the answer satisfies the formula.
pub fn heuristic_answer(formula: &CnfFormula) -> Option<BitString> {
    if formula.var_count() > MAX_HEURISTIC_LINE {
        return None;
    }
    let len = formula.var_count() as usize;
    if formula.clauses().iter().all(|c| c.iter().any(|l| !l.negated)) {
        Some(BitString::ones(len))
    } else if formula.clauses().iter().all(|c| c.iter().any(|l| l.negated)) {
        Some(BitString::zeros(len))
    } else {
        None
    }
}

/// The folklore chain member: a table of oracle lines for every satisfiable
/// instance of rank below `n`, falling back to the heuristic H above `n`.
/// Settles all instances up to `n` plus the infinite all-positive-clause and
/// all-negative-clause families, in time polynomial in the input length.
pub struct LookupSolver {
    n: u64,
    table: Vec<Option<BitString>>,
}

/// Builds the chain member for window `n`.
pub fn lookup_solver(n: u64, var_cap: u32) -> Result<LookupSolver, ForgeError> {
    let mut table = vec![None; n as usize];
    for instance in sat_instances_upto(n, var_cap)? {
        table[instance.rank as usize] = Some(instance.line);
    }
    Ok(LookupSolver { n, table })
}

impl LookupSolver {
    pub fn window(&self) -> u64 {
        self.n
    }
}

impl Solver for LookupSolver {
    fn name(&self) -> String {
        format!("lookup:{}", self.n)
    }

    fn solve(&self, input: &BitString) -> SolverOutcome {
        let cycles = charge(2, input);
        if let Some(rank) = small_rank(input) {
            if rank < self.n {
                return match &self.table[rank as usize] {
                    Some(line) => SolverOutcome::answered(line.clone(), cycles),
                    None => SolverOutcome::failed(FailureReason::Declined, cycles),
                };
            }
        }
        match heuristic_answer(&decode_instance(input)) {
            Some(line) => SolverOutcome::answered(line, cycles),
            None => SolverOutcome::failed(FailureReason::Declined, cycles),
        }
    }
}

/// The exhaustive oracle wrapped as a solver. Declines unsatisfiable
/// instances and instances above its cap.
pub struct OracleSolver {
    pub var_cap: u32,
}

impl Solver for OracleSolver {
    fn name(&self) -> String {
        format!("oracle:{}", self.var_cap)
    }

    fn solve(&self, input: &BitString) -> SolverOutcome {
        let cycles = charge(3, input);
        match brute_force_solve(&decode_instance(input), self.var_cap) {
            Ok(SolveOutcome::Satisfiable(line)) => SolverOutcome::answered(line, cycles),
            Ok(SolveOutcome::Unsatisfiable) | Err(_) => {
                SolverOutcome::failed(FailureReason::Declined, cycles)
            }
        }
    }
}

/// The solver that settles nothing.
pub struct DeclineAll;

impl Solver for DeclineAll {
    fn name(&self) -> String {
        "decline".to_string()
    }

    fn solve(&self, input: &BitString) -> SolverOutcome {
        SolverOutcome::failed(FailureReason::Declined, charge(1, input))
    }
}

/// Ranks below `rank_bound` that are satisfiable and that `solver` answers
/// with a line passing verification.
pub fn settled_set(
    solver: &dyn Solver,
    rank_bound: u64,
    var_cap: u32,
) -> Result<BTreeSet<u64>, ForgeError> {
    let mut settled = BTreeSet::new();
    for rank in 0..rank_bound {
        let bits = rank_to_bits_u64(rank);
        let formula = decode_instance(&bits);
        match brute_force_solve(&formula, var_cap) {
            Ok(SolveOutcome::Unsatisfiable) => continue,
            Ok(SolveOutcome::Satisfiable(_)) => {}
            Err(ForgeError::VarCapExceeded { var_count, cap, .. }) => {
                return Err(ForgeError::VarCapExceeded { var_count, cap, rank: Some(rank) });
            }
            Err(other) => return Err(other),
        }
        if let OutcomeKind::Answered(line) = solver.solve(&bits).kind {
            if verify(&formula, &line) {
                settled.insert(rank);
            }
        }
    }
    Ok(settled)
}

/// Verdict of a windowed settled-set comparison. The window makes this
/// finite evidence, not an asymptotic claim.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "verdict")]
pub enum Dominance {
    /// The candidate settles a strict superset; `witnesses` are the ranks it
    /// alone settles.
    StrictlyMore { witnesses: Vec<u64> },
    Equal,
    /// Neither settled set contains the other (or the candidate settles
    /// strictly less); both difference sets are reported.
    Incomparable { candidate_only: Vec<u64>, baseline_only: Vec<u64> },
}

/// Compares what `candidate` and `baseline` settle below `rank_bound`.
pub fn dominates(
    candidate: &dyn Solver,
    baseline: &dyn Solver,
    rank_bound: u64,
    var_cap: u32,
) -> Result<Dominance, ForgeError> {
    let cand = settled_set(candidate, rank_bound, var_cap)?;
    let base = settled_set(baseline, rank_bound, var_cap)?;
    let candidate_only: Vec<u64> = cand.difference(&base).copied().collect();
    let baseline_only: Vec<u64> = base.difference(&cand).copied().collect();
    Ok(match (candidate_only.is_empty(), baseline_only.is_empty()) {
        (true, true) => Dominance::Equal,
        (false, true) => Dominance::StrictlyMore { witnesses: candidate_only },
        _ => Dominance::Incomparable { candidate_only, baseline_only },
    })
}
