//! Enumerate-and-test universal search: feed the instance to solver 0, then
//! solver 1, ... until one produces a line that verifies.
//!
//! The dovetailing schedule is fixed and deterministic: round `r` activates
//! solver index `r` and gives every active solver one slot in index order.
//! Because the solvers here are total, clock-bounded units, a solver
//! finishes in its first slot, so round `r` does exactly one fresh run;
//! after each round the least index with a verified line wins. Asymptotically
//! smarter schedules (geometric time sharing) are deliberately out of scope:
//! the round-robin contract is part of the artifact.
//!
//! The plain procedure is only a quasi-algorithm: deciding when to *stop* on
//! an unsatisfiable input needs an oracle. The `unsat_guard` option supplies
//! the desk-scale stand-in — the exhaustive oracle certifies unsatisfiable
//! inputs up front — so that the guarded variant is total on strings within
//! the oracle's cap.

use serde::Serialize;

use crate::bits::BitString;
use crate::cnf::{brute_force_solve, decode_instance, verify, SolveOutcome};
use crate::error::ForgeError;
use crate::solver::{FailureReason, OutcomeKind, SolverFamily};

#[derive(Clone, Copy, Debug)]
pub struct SearchConfig {
    /// Number of rounds (and therefore solver activations) before giving up.
    pub round_budget: u64,
    /// Certify unsatisfiable inputs with the oracle before searching.
    pub unsat_guard: bool,
    pub var_cap: u32,
    /// Collect a per-round log into the outcome.
    pub collect_trace: bool,
}

impl SearchConfig {
    pub fn new(round_budget: u64) -> Self {
        SearchConfig {
            round_budget,
            unsat_guard: false,
            var_cap: crate::cnf::DEFAULT_VAR_CAP,
            collect_trace: false,
        }
    }
}

/// One fresh solver run in the dovetail.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RoundRecord {
    pub round: u64,
    pub solver: u64,
    pub answered: bool,
    pub verified: bool,
    pub failure: Option<FailureReason>,
    pub cycles_charged: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case", tag = "kind")]
pub enum SearchKind {
    /// `k` is the least solver index that had produced a verified line by
    /// the termination round; the line is re-verified before being returned.
    Found { k: u64, line: BitString, round: u64, total_cycles: u64 },
    ExhaustedBudget { total_cycles: u64 },
    /// The guard's oracle proved the instance unsatisfiable.
    CertifiedUnsat,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SearchOutcome {
    #[serde(flatten)]
    pub kind: SearchKind,
    pub trace: Option<Vec<RoundRecord>>,
}

/// Runs the search on an instance code over the given family.
pub fn universal_search(
    bits: &BitString,
    family: &dyn SolverFamily,
    config: &SearchConfig,
) -> Result<SearchOutcome, ForgeError> {
    let formula = decode_instance(bits);
    if config.unsat_guard {
        if let SolveOutcome::Unsatisfiable = brute_force_solve(&formula, config.var_cap)? {
            return Ok(SearchOutcome {
                kind: SearchKind::CertifiedUnsat,
                trace: config.collect_trace.then(Vec::new),
            });
        }
    }

    let mut trace = config.collect_trace.then(Vec::new);
    let mut total_cycles: u64 = 0;
    for round in 0..config.round_budget {
        let outcome = family.solve_at(round, bits)?;
        total_cycles = total_cycles.saturating_add(outcome.cycles_charged);
        let (answered, verified, failure) = match &outcome.kind {
            OutcomeKind::Answered(line) => (true, verify(&formula, line), None),
            OutcomeKind::Failed(reason) => (false, false, Some(*reason)),
        };
        if let Some(trace) = trace.as_mut() {
            trace.push(RoundRecord {
                round,
                solver: round,
                answered,
                verified,
                failure,
                cycles_charged: outcome.cycles_charged,
            });
        }
        if verified {
            let OutcomeKind::Answered(line) = outcome.kind else { unreachable!() };
            debug_assert!(verify(&formula, &line));
            return Ok(SearchOutcome {
                kind: SearchKind::Found { k: round, line, round, total_cycles },
                trace,
            });
        }
    }
    Ok(SearchOutcome { kind: SearchKind::ExhaustedBudget { total_cycles }, trace })
}

/// Flattens an outcome into the JSONL experiment payload.
pub fn search_report(outcome: &SearchOutcome) -> serde_json::Value {
    serde_json::to_value(outcome).expect("search outcomes serialize")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cnf::{encode_instance, CnfFormula, Literal, DEFAULT_VAR_CAP};
    use crate::folklore::lookup_solver;
    use crate::solver::{bgs_family, native_family};
    use std::sync::Arc;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn formula(clauses: &[&[i64]]) -> CnfFormula {
        CnfFormula::new(
            clauses
                .iter()
                .map(|c| {
                    c.iter().map(|&v| Literal { var: v.unsigned_abs(), negated: v < 0 }).collect()
                })
                .collect(),
        )
        .unwrap()
    }

    fn native_lookup(n: u64) -> crate::solver::NativeFamily {
        native_family(vec![Arc::new(lookup_solver(n, DEFAULT_VAR_CAP).unwrap())])
    }

    #[test]
    fn empty_instance_found_at_round_zero_over_bgs() {
        let outcome =
            universal_search(&BitString::new(), &bgs_family(), &SearchConfig::new(16)).unwrap();
        assert_eq!(
            outcome.kind,
            SearchKind::Found { k: 0, line: BitString::new(), round: 0, total_cycles: 0 }
        );
    }

    #[test]
    fn guard_certifies_contradictions() {
        let code = encode_instance(&formula(&[&[1], &[-1]])).bits;
        let mut config = SearchConfig::new(8);
        config.unsat_guard = true;
        let outcome = universal_search(&code, &native_lookup(4), &config).unwrap();
        assert_eq!(outcome.kind, SearchKind::CertifiedUnsat);
    }

    #[test]
    fn heuristic_family_answers_all_positive_instances_in_round_zero() {
        let f = formula(&[&[1, 2], &[2, -1]]);
        let code = encode_instance(&f).bits;
        let outcome = universal_search(&code, &native_lookup(1), &SearchConfig::new(4)).unwrap();
        match outcome.kind {
            SearchKind::Found { k, line, round, .. } => {
                assert_eq!((k, round), (0, 0));
                assert_eq!(line, bs("11"));
            }
            other => panic!("expected Found, got {other:?}"),
        }
    }

    #[test]
    fn unguarded_search_exhausts_on_contradictions() {
        let code = encode_instance(&formula(&[&[1], &[-1]])).bits;
        let mut config = SearchConfig::new(3);
        config.collect_trace = true;
        let outcome = universal_search(&code, &native_lookup(4), &config).unwrap();
        match outcome.kind {
            SearchKind::ExhaustedBudget { .. } => {}
            other => panic!("expected ExhaustedBudget, got {other:?}"),
        }
        let trace = outcome.trace.expect("trace requested");
        assert_eq!(trace.len(), 3);
        assert!(trace.iter().enumerate().all(|(i, r)| r.round == i as u64 && r.solver == r.round));
    }

    #[test]
    fn rerunning_with_the_found_round_budget_is_stable() {
        // Deterministic schedule: a budget of exactly round+1 reproduces the
        // same winner.
        let outcome =
            universal_search(&BitString::new(), &bgs_family(), &SearchConfig::new(16)).unwrap();
        let SearchKind::Found { k, round, .. } = outcome.kind else { panic!() };
        let again =
            universal_search(&BitString::new(), &bgs_family(), &SearchConfig::new(round + 1))
                .unwrap();
        let SearchKind::Found { k: k2, round: r2, .. } = again.kind else { panic!() };
        assert_eq!((k, round), (k2, r2));
    }

    #[test]
    fn found_lines_verify_for_every_satisfiable_small_rank() {
        let family = native_lookup(64);
        let config = SearchConfig::new(2);
        for instance in crate::cnf::sat_instances_upto(64, DEFAULT_VAR_CAP).unwrap() {
            let bits = crate::cnf::rank_to_string(&instance.rank.into());
            let outcome = universal_search(&bits, &family, &config).unwrap();
            match outcome.kind {
                SearchKind::Found { line, round, .. } => {
                    assert!(verify(&instance.formula, &line));
                    assert!(round < 2);
                }
                other => panic!("rank {} not found: {other:?}", instance.rank),
            }
        }
    }

    #[test]
    fn report_kinds_flatten_to_records() {
        let found = SearchOutcome {
            kind: SearchKind::Found { k: 0, line: bs("1"), round: 0, total_cycles: 7 },
            trace: None,
        };
        let report = search_report(&found);
        assert_eq!(report["kind"], "found");
        assert_eq!(report["k"], 0);
        assert_eq!(report["line"], "1");

        let exhausted =
            SearchOutcome { kind: SearchKind::ExhaustedBudget { total_cycles: 3 }, trace: None };
        assert_eq!(search_report(&exhausted)["kind"], "exhausted_budget");

        let unsat = SearchOutcome { kind: SearchKind::CertifiedUnsat, trace: None };
        assert_eq!(search_report(&unsat)["kind"], "certified_unsat");
    }
}
