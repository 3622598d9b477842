//! Exhaustive small-n Busy Beaver search over 2-symbol machines, as the
//! growth yardstick the counterexample tables are reported against.
//!
//! Convention (the classical one): machines have `n` states over symbols
//! `{0, 1}`, start on the all-blank (all-zero) tape, and a dedicated `Halt`
//! entry acts as the halting transition — it writes a `1`, counts as a step,
//! and stops the machine. Σ is the number of 1-cells at halt, S the number
//! of steps. Machines still running at the cutoff are counted as unresolved,
//! never as halters, and Σ/S readings are lower bounds unless the unresolved
//! count is zero. No non-halting provers here: raising the cutoff is the
//! only way this census resolves more machines.

use serde::Serialize;

use crate::counterexample::GrowthRow;
use crate::error::ForgeError;

/// One transition of a census machine.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BeaverEntry {
    /// Write 1, count one step, halt.
    Halt,
    Step { write: bool, right: bool, next: u8 },
}

/// An `n`-state 2-symbol machine; entry `(state, symbol)` sits at
/// `2 * state + symbol`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BeaverMachine {
    state_count: u8,
    entries: Vec<BeaverEntry>,
}

impl BeaverMachine {
    pub fn new(state_count: u8, entries: Vec<BeaverEntry>) -> Result<Self, ForgeError> {
        if state_count == 0 {
            return Err(ForgeError::InvalidMachine("state_count must be >= 1".into()));
        }
        if entries.len() != 2 * state_count as usize {
            return Err(ForgeError::InvalidMachine(format!(
                "{} entries for {} states",
                entries.len(),
                state_count
            )));
        }
        if entries.iter().any(|e| matches!(e, BeaverEntry::Step { next, .. } if *next >= state_count)) {
            return Err(ForgeError::InvalidMachine("next state out of range".into()));
        }
        Ok(BeaverMachine { state_count, entries })
    }

    pub fn state_count(&self) -> u8 {
        self.state_count
    }

    pub fn entries(&self) -> &[BeaverEntry] {
        &self.entries
    }

    /// Standard compact notation: `1RB0LA_1RH...`, one `(on 0, on 1)` pair
    /// per state, halt rendered as `1RH`.
    pub fn notation(&self) -> String {
        let mut out = String::new();
        for state in 0..self.state_count as usize {
            if state > 0 {
                out.push('_');
            }
            for symbol in 0..2 {
                match self.entries[2 * state + symbol] {
                    BeaverEntry::Halt => out.push_str("1RH"),
                    BeaverEntry::Step { write, right, next } => {
                        out.push(if write { '1' } else { '0' });
                        out.push(if right { 'R' } else { 'L' });
                        out.push((b'A' + next) as char);
                    }
                }
            }
        }
        out
    }
}

/// Result of simulating one machine from the blank tape.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct BeaverRun {
    pub halted: bool,
    pub steps: u64,
    pub ones: u64,
}

/// Runs a machine from the all-blank tape until it halts or `cutoff` steps
/// have been applied. The halting transition itself is a step.
pub fn simulate_beaver(machine: &BeaverMachine, cutoff: u64) -> BeaverRun {
    let mut tape = vec![0u8; 2 * cutoff as usize + 3];
    let mut scratch = Scratch { tape: &mut tape, origin: cutoff as usize + 1 };
    simulate_into(machine, cutoff, &mut scratch)
}

struct Scratch<'a> {
    tape: &'a mut [u8],
    origin: usize,
}

fn simulate_into(machine: &BeaverMachine, cutoff: u64, scratch: &mut Scratch<'_>) -> BeaverRun {
    let mut head = scratch.origin;
    let mut lo = head;
    let mut hi = head;
    let mut state = 0u8;
    let mut steps = 0u64;
    let halted = loop {
        if steps == cutoff {
            break false;
        }
        let symbol = scratch.tape[head];
        match machine.entries[2 * state as usize + symbol as usize] {
            BeaverEntry::Halt => {
                scratch.tape[head] = 1;
                steps += 1;
                break true;
            }
            BeaverEntry::Step { write, right, next } => {
                scratch.tape[head] = write as u8;
                if right {
                    head += 1;
                    hi = hi.max(head);
                } else {
                    head -= 1;
                    lo = lo.min(head);
                }
                state = next;
                steps += 1;
            }
        }
    };
    let ones = scratch.tape[lo..=hi].iter().map(|&c| c as u64).sum();
    for cell in &mut scratch.tape[lo..=hi] {
        *cell = 0;
    }
    BeaverRun { halted, steps, ones }
}

#[derive(Clone, Copy, Debug)]
pub struct CensusOptions {
    /// Skip machines whose first transition moves left; the left-right
    /// mirror of any machine scores identically, so maxima are unaffected.
    pub symmetry_reduction: bool,
    /// Required for the 4-state census, which runs for minutes.
    pub allow_long: bool,
}

impl Default for CensusOptions {
    fn default() -> Self {
        CensusOptions { symmetry_reduction: true, allow_long: false }
    }
}

/// Census of all `n`-state machines at a step cutoff.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BeaverCensus {
    pub n: u8,
    pub cutoff: u64,
    pub symmetry_reduction: bool,
    pub enumerated: u64,
    pub halted: u64,
    pub unresolved: u64,
    /// Max ones among halters; exact only when `unresolved == 0`.
    pub sigma: u64,
    /// Max steps among halters; exact only when `unresolved == 0`.
    pub s_max: u64,
    pub sigma_champion: Option<String>,
    pub s_champion: Option<String>,
}

/// Enumerates every `n`-state table, runs each from the blank tape, and
/// aggregates Σ and S over the halters.
pub fn beaver_census(n: u8, cutoff: u64, options: CensusOptions) -> Result<BeaverCensus, ForgeError> {
    beaver_census_with(n, cutoff, options, |_, _| {})
}

/// Census variant that also hands every (machine, run) pair to a visitor;
/// the census tests re-simulate halters through this hook.
pub fn beaver_census_with(
    n: u8,
    cutoff: u64,
    options: CensusOptions,
    mut visit: impl FnMut(&BeaverMachine, BeaverRun),
) -> Result<BeaverCensus, ForgeError> {
    if n == 0 || n > 4 {
        return Err(ForgeError::BeaverStateCount(n));
    }
    if n == 4 && !options.allow_long {
        return Err(ForgeError::LongRunGated);
    }

    // Entry codes: 0 is Halt, then (write, direction, next) packed in order.
    let decode_entry = |code: u8| -> BeaverEntry {
        if code == 0 {
            BeaverEntry::Halt
        } else {
            let c = code - 1;
            BeaverEntry::Step { write: c & 1 == 1, right: c & 2 == 2, next: c >> 2 }
        }
    };
    let all_codes: Vec<u8> = (0..=4 * n).collect();
    let first_codes: Vec<u8> = if options.symmetry_reduction {
        all_codes
            .iter()
            .copied()
            .filter(|&c| matches!(decode_entry(c), BeaverEntry::Halt | BeaverEntry::Step { right: true, .. }))
            .collect()
    } else {
        all_codes.clone()
    };

    let slots = 2 * n as usize;
    let mut codes = vec![0u8; slots];
    let mut tape = vec![0u8; 2 * cutoff as usize + 3];
    let mut scratch = Scratch { tape: &mut tape, origin: cutoff as usize + 1 };

    let mut census = BeaverCensus {
        n,
        cutoff,
        symmetry_reduction: options.symmetry_reduction,
        enumerated: 0,
        halted: 0,
        unresolved: 0,
        sigma: 0,
        s_max: 0,
        sigma_champion: None,
        s_champion: None,
    };

    loop {
        let entries: Vec<BeaverEntry> = codes.iter().map(|&c| decode_entry(c)).collect();
        let machine = BeaverMachine { state_count: n, entries };
        let run = simulate_into(&machine, cutoff, &mut scratch);
        census.enumerated += 1;
        if run.halted {
            census.halted += 1;
            if run.ones > census.sigma || census.sigma_champion.is_none() {
                census.sigma = run.ones;
                census.sigma_champion = Some(machine.notation());
            }
            if run.steps > census.s_max || census.s_champion.is_none() {
                census.s_max = run.steps;
                census.s_champion = Some(machine.notation());
            }
        } else {
            census.unresolved += 1;
        }
        visit(&machine, run);

        // Odometer over entry codes; slot 0 may be restricted by symmetry.
        let mut slot = slots;
        loop {
            if slot == 0 {
                return Ok(census);
            }
            slot -= 1;
            let menu = if slot == 0 { &first_codes } else { &all_codes };
            let pos = menu.iter().position(|&c| c == codes[slot]).expect("code from menu");
            if pos + 1 < menu.len() {
                codes[slot] = menu[pos + 1];
                break;
            }
            codes[slot] = menu[0];
        }
    }
}

/// The side-by-side report of a Busy Beaver census table against a
/// counterexample growth table. Purely descriptive; no asymptotic claim is
/// computed, only the two tables with their budgets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GrowthComparison {
    pub beaver: Vec<BeaverCensus>,
    pub counterexample: Vec<GrowthRow>,
}

pub fn compare_growth(censuses: &[BeaverCensus], growth: &[GrowthRow]) -> GrowthComparison {
    GrowthComparison { beaver: censuses.to_vec(), counterexample: growth.to_vec() }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn one_state_census() {
        let census = beaver_census(1, 10, CensusOptions::default()).unwrap();
        assert_eq!((census.sigma, census.s_max), (1, 1));
        // The only halters stop on their first transition.
        assert!(census.halted > 0);
        assert!(census.unresolved > 0, "the blank-looping tables never halt");
        assert_eq!(census.halted + census.unresolved, census.enumerated);
    }

    #[test]
    fn two_state_census_matches_the_classical_record() {
        let census = beaver_census(2, 100, CensusOptions::default()).unwrap();
        assert_eq!((census.sigma, census.s_max), (4, 6));
    }

    #[test]
    fn reduction_does_not_change_the_maxima() {
        for n in 1..=2u8 {
            let reduced = beaver_census(n, 64, CensusOptions::default()).unwrap();
            let full = beaver_census(
                n,
                64,
                CensusOptions { symmetry_reduction: false, allow_long: false },
            )
            .unwrap();
            assert_eq!((reduced.sigma, reduced.s_max), (full.sigma, full.s_max));
            assert!(full.enumerated > reduced.enumerated);
            assert_eq!(full.enumerated, (4 * n as u64 + 1).pow(2 * n as u32));
        }
    }

    #[test]
    fn raising_the_cutoff_never_shrinks_the_maxima() {
        let short = beaver_census(2, 4, CensusOptions::default()).unwrap();
        let long = beaver_census(2, 50, CensusOptions::default()).unwrap();
        assert!(long.sigma >= short.sigma);
        assert!(long.s_max >= short.s_max);
        assert!(short.s_max <= 4);
    }

    #[test]
    fn halters_rehalt_identically_when_resimulated() {
        let mut halters = Vec::new();
        beaver_census_with(2, 100, CensusOptions::default(), |machine, run| {
            if run.halted {
                halters.push((machine.clone(), run));
            }
        })
        .unwrap();
        assert!(!halters.is_empty());
        for (machine, run) in halters {
            assert_eq!(simulate_beaver(&machine, 100), run, "{}", machine.notation());
        }
    }

    #[test]
    fn state_count_gates() {
        assert_eq!(
            beaver_census(0, 10, CensusOptions::default()).unwrap_err(),
            ForgeError::BeaverStateCount(0)
        );
        assert_eq!(
            beaver_census(5, 10, CensusOptions::default()).unwrap_err(),
            ForgeError::BeaverStateCount(5)
        );
        assert_eq!(
            beaver_census(4, 10, CensusOptions::default()).unwrap_err(),
            ForgeError::LongRunGated
        );
    }

    #[test]
    fn comparison_report_is_deterministic_and_roundtrips() {
        let census = beaver_census(1, 10, CensusOptions::default()).unwrap();
        let report = compare_growth(&[census], &[]);
        assert!(report.counterexample.is_empty());
        let a = serde_json::to_string(&report).unwrap();
        let b = serde_json::to_string(&report).unwrap();
        assert_eq!(a, b);
        let parsed: serde_json::Value = serde_json::from_str(&a).unwrap();
        let reserialized: serde_json::Value =
            serde_json::from_str(&serde_json::to_string(&parsed).unwrap()).unwrap();
        assert_eq!(parsed, reserialized);
    }

    #[test]
    fn classical_two_state_champion_traces() {
        // 1RB1LB_1LA1RH: six steps, four ones.
        let machine = BeaverMachine::new(
            2,
            vec![
                BeaverEntry::Step { write: true, right: true, next: 1 },
                BeaverEntry::Step { write: true, right: false, next: 1 },
                BeaverEntry::Step { write: true, right: false, next: 0 },
                BeaverEntry::Halt,
            ],
        )
        .unwrap();
        assert_eq!(machine.notation(), "1RB1LB_1LA1RH");
        assert_eq!(simulate_beaver(&machine, 100), BeaverRun { halted: true, steps: 6, ones: 4 });
    }
}
