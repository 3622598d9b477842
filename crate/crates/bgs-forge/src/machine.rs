//! Deterministic single-tape Turing machines: model, simulator, and a total
//! Gödel-number codec so that every natural number denotes a machine.
//!
//! The model is a two-way-infinite tape over `{0, 1, blank}` with a dedicated
//! `Halt` table entry per (state, symbol). The output of a halted run is the
//! leftmost contiguous non-blank word on the tape.
//!
//! # Machine numbering
//!
//! `decode_machine` maps an index to its length-lex string and parses:
//!
//! * `gamma(state_count)`, then
//! * for each of the `3 * state_count` entries in row-major
//!   `(state, symbol in [0, 1, blank])` order: one halt-flag bit (`1` =
//!   `Halt`); otherwise two write bits (`00` = 0, `01` = 1, `10`/`11` =
//!   blank), one move bit (`0` = left, `1` = right), and
//!   `gamma(next_state + 1)` with `next_state` reduced mod `state_count`.
//!
//! The codec is total: running out of bits defaults the rest of the table to
//! `Halt` (and the state count to 1), leftover bits are ignored, and every
//! out-of-range field is reduced into range. `encode_machine` emits the same
//! grammar with no leftover bits and canonical write codes, so
//! `decode(encode(m)) == m` while decode itself is deliberately non-injective.

use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigUint;
use serde::Serialize;

use crate::bits::{bits_to_rank, gamma_append, gamma_read, rank_to_bits, BitString};
use crate::error::ForgeError;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Symbol {
    Zero,
    One,
    Blank,
}

impl Symbol {
    pub const ALL: [Symbol; 3] = [Symbol::Zero, Symbol::One, Symbol::Blank];

    fn table_offset(self) -> usize {
        match self {
            Symbol::Zero => 0,
            Symbol::One => 1,
            Symbol::Blank => 2,
        }
    }

    fn from_bit(bit: bool) -> Symbol {
        if bit {
            Symbol::One
        } else {
            Symbol::Zero
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Move {
    Left,
    Right,
}

/// One cell of the transition table.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Entry {
    Halt,
    Step { write: Symbol, movement: Move, next: u64 },
}

/// A total transition table over `(state, symbol)`.
///
/// Internally only a prefix of the table is stored; entries past it are
/// `Halt`. The stored prefix never ends in `Halt`, which makes the
/// representation canonical and derived equality structural.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct TuringMachine {
    state_count: u64,
    entries: Vec<Entry>,
}

impl TuringMachine {
    /// Builds a machine, validating state indices and canonicalizing the
    /// entry list. `entries` is row-major over `(state, symbol)` and may be
    /// shorter than `3 * state_count`; missing entries are `Halt`.
    pub fn new(state_count: u64, entries: Vec<Entry>) -> Result<Self, ForgeError> {
        if state_count == 0 {
            return Err(ForgeError::InvalidMachine("state_count must be >= 1".into()));
        }
        let total = state_count.saturating_mul(3);
        if entries.len() as u64 > total {
            return Err(ForgeError::InvalidMachine(format!(
                "{} entries for {} states",
                entries.len(),
                state_count
            )));
        }
        for (i, e) in entries.iter().enumerate() {
            if let Entry::Step { next, .. } = e {
                if *next >= state_count {
                    return Err(ForgeError::InvalidMachine(format!(
                        "entry {i} targets state {next} of {state_count}"
                    )));
                }
            }
        }
        let mut entries = entries;
        while entries.last() == Some(&Entry::Halt) {
            entries.pop();
        }
        Ok(TuringMachine { state_count, entries })
    }

    /// The machine whose every entry is `Halt`.
    pub fn halt_everywhere(state_count: u64) -> Self {
        TuringMachine::new(state_count, Vec::new()).expect("state_count >= 1")
    }

    pub fn state_count(&self) -> u64 {
        self.state_count
    }

    /// Total table lookup. `state` must be a valid state index.
    pub fn entry(&self, state: u64, symbol: Symbol) -> Entry {
        assert!(state < self.state_count, "state {state} out of range");
        let idx = state as usize * 3 + symbol.table_offset();
        self.entries.get(idx).copied().unwrap_or(Entry::Halt)
    }

    /// Number of explicitly stored entries (the rest of the table is `Halt`).
    pub fn stored_entries(&self) -> usize {
        self.entries.len()
    }
}

impl fmt::Debug for TuringMachine {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "TuringMachine({} states; {:?})", self.state_count, self.entries)
    }
}

/// Sparse two-way-infinite tape; absent cells are blank.
#[derive(Clone, Debug, Default)]
struct Tape {
    // Cell i >= 0 lives at pos[i]; cell i < 0 lives at neg[-i - 1].
    pos: Vec<Symbol>,
    neg: Vec<Symbol>,
}

impl Tape {
    fn get(&self, idx: i64) -> Symbol {
        let slot = if idx >= 0 {
            self.pos.get(idx as usize)
        } else {
            self.neg.get((-idx - 1) as usize)
        };
        slot.copied().unwrap_or(Symbol::Blank)
    }

    fn set(&mut self, idx: i64, sym: Symbol) {
        let (vec, at) = if idx >= 0 {
            (&mut self.pos, idx as usize)
        } else {
            (&mut self.neg, (-idx - 1) as usize)
        };
        if at >= vec.len() {
            if sym == Symbol::Blank {
                return;
            }
            vec.resize(at + 1, Symbol::Blank);
        }
        vec[at] = sym;
    }
}

/// A machine configuration: tape, head, state, and the count of applied
/// transitions so far.
#[derive(Clone, Debug)]
pub struct TapeConfig {
    tape: Tape,
    pub head: i64,
    pub state: u64,
    pub cycles: u64,
}

impl TapeConfig {
    /// Initial configuration: input bits at cells `0..len`, head at 0,
    /// state 0, everything else blank.
    pub fn from_input(input: &BitString) -> Self {
        let mut tape = Tape::default();
        for (i, bit) in input.iter().enumerate() {
            tape.set(i as i64, Symbol::from_bit(bit));
        }
        TapeConfig { tape, head: 0, state: 0, cycles: 0 }
    }

    pub fn symbol_at(&self, idx: i64) -> Symbol {
        self.tape.get(idx)
    }

    /// The non-blank cells, sorted by index. Blank cells are not observable.
    pub fn non_blank_cells(&self) -> BTreeMap<i64, Symbol> {
        let mut map = BTreeMap::new();
        for (i, s) in self.tape.pos.iter().enumerate() {
            if *s != Symbol::Blank {
                map.insert(i as i64, *s);
            }
        }
        for (i, s) in self.tape.neg.iter().enumerate() {
            if *s != Symbol::Blank {
                map.insert(-(i as i64) - 1, *s);
            }
        }
        map
    }

    fn apply(&mut self, write: Symbol, movement: Move, next: u64) {
        self.tape.set(self.head, write);
        self.head += match movement {
            Move::Left => -1,
            Move::Right => 1,
        };
        self.state = next;
        self.cycles += 1;
    }
}

impl PartialEq for TapeConfig {
    fn eq(&self, other: &Self) -> bool {
        self.head == other.head
            && self.state == other.state
            && self.cycles == other.cycles
            && self.non_blank_cells() == other.non_blank_cells()
    }
}

impl Eq for TapeConfig {}

/// Applies one transition. `None` is the halt signal.
pub fn step(machine: &TuringMachine, config: &TapeConfig) -> Option<TapeConfig> {
    match machine.entry(config.state, config.symbol_at(config.head)) {
        Entry::Halt => None,
        Entry::Step { write, movement, next } => {
            let mut next_config = config.clone();
            next_config.apply(write, movement, next);
            Some(next_config)
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum RunStatus {
    Halted,
    ClockInterrupt,
    BudgetExceeded,
}

/// Result of running a machine: halt status, output word, and cycles used.
///
/// The output is empty unless the run halted; an interrupted or exhausted
/// run never gets credit for whatever was left on its tape.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RunResult {
    pub status: RunStatus,
    pub output: BitString,
    pub cycles: u64,
}

/// Runs `machine` on `input` for at most `budget` transitions.
///
/// Pure: identical arguments give identical results. A machine that halts
/// after exactly `budget` transitions counts as halted.
pub fn run(machine: &TuringMachine, input: &BitString, budget: u64) -> RunResult {
    let mut config = TapeConfig::from_input(input);
    loop {
        match machine.entry(config.state, config.symbol_at(config.head)) {
            Entry::Halt => {
                return RunResult {
                    status: RunStatus::Halted,
                    output: read_output(&config),
                    cycles: config.cycles,
                };
            }
            Entry::Step { write, movement, next } => {
                if config.cycles == budget {
                    return RunResult {
                        status: RunStatus::BudgetExceeded,
                        output: BitString::new(),
                        cycles: config.cycles,
                    };
                }
                config.apply(write, movement, next);
            }
        }
    }
}

/// Reads the output word: from the leftmost non-blank cell rightward until
/// the first blank. The all-blank tape reads as the empty string.
pub fn read_output(config: &TapeConfig) -> BitString {
    let cells = config.non_blank_cells();
    let mut out = BitString::new();
    let Some((&start, _)) = cells.first_key_value() else {
        return out;
    };
    let mut idx = start;
    while let Some(sym) = cells.get(&idx) {
        out.push(*sym == Symbol::One);
        idx += 1;
    }
    out
}

/// Decodes the machine at the given length-lex index. Total: every natural
/// number names a machine.
pub fn decode_machine(index: &BigUint) -> TuringMachine {
    let bits = rank_to_bits(index);
    let mut r = bits.reader();
    let state_count = gamma_read(&mut r).unwrap_or(1);
    let total_entries = state_count.saturating_mul(3);
    let mut entries = Vec::new();
    let mut parsed = 0u64;
    while parsed < total_entries && !r.exhausted() {
        entries.push(decode_entry(&mut r, state_count));
        parsed += 1;
    }
    TuringMachine::new(state_count, entries).expect("decoded entries are in range")
}

fn decode_entry(r: &mut crate::bits::BitReader<'_>, state_count: u64) -> Entry {
    match r.next_bit() {
        None | Some(true) => Entry::Halt,
        Some(false) => {
            let fields = (|| {
                let w1 = r.next_bit()?;
                let w2 = r.next_bit()?;
                let mv = r.next_bit()?;
                let target = gamma_read(r)?;
                Some((w1, w2, mv, target))
            })();
            match fields {
                None => Entry::Halt,
                Some((w1, w2, mv, target)) => Entry::Step {
                    write: match (w1, w2) {
                        (false, false) => Symbol::Zero,
                        (false, true) => Symbol::One,
                        (true, _) => Symbol::Blank,
                    },
                    movement: if mv { Move::Right } else { Move::Left },
                    next: (target - 1) % state_count,
                },
            }
        }
    }
}

/// Canonical inverse of [`decode_machine`]: emits the exact bit grammar with
/// no leftover bits and returns its length-lex rank.
pub fn encode_machine(machine: &TuringMachine) -> BigUint {
    let mut out = BitString::new();
    gamma_append(&mut out, machine.state_count());
    for state in 0..machine.state_count() {
        for symbol in Symbol::ALL {
            match machine.entry(state, symbol) {
                Entry::Halt => out.push(true),
                Entry::Step { write, movement, next } => {
                    out.push(false);
                    let (w1, w2) = match write {
                        Symbol::Zero => (false, false),
                        Symbol::One => (false, true),
                        Symbol::Blank => (true, false),
                    };
                    out.push(w1);
                    out.push(w2);
                    out.push(movement == Move::Right);
                    gamma_append(&mut out, next + 1);
                }
            }
        }
    }
    bits_to_rank(&out)
}

/// The machine that never halts on a blank tape: its blank entry steps right
/// into fresh blank cells forever. Used as a canonical non-halter in tests
/// and examples.
pub fn blank_runner() -> TuringMachine {
    TuringMachine::new(
        1,
        vec![
            Entry::Halt,
            Entry::Halt,
            Entry::Step { write: Symbol::Blank, movement: Move::Right, next: 0 },
        ],
    )
    .expect("valid machine")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn bs(s: &str) -> BitString {
        s.parse().unwrap()
    }

    fn index(n: u64) -> BigUint {
        BigUint::from(n)
    }

    #[test]
    fn halt_everywhere_steps_to_halt_signal() {
        let m = TuringMachine::halt_everywhere(1);
        let config = TapeConfig::from_input(&bs("101"));
        assert_eq!(step(&m, &config), None);
    }

    #[test]
    fn single_transition_by_definition() {
        let m = TuringMachine::new(
            1,
            vec![
                Entry::Halt,
                Entry::Halt,
                Entry::Step { write: Symbol::One, movement: Move::Right, next: 0 },
            ],
        )
        .unwrap();
        let config = TapeConfig::from_input(&BitString::new());
        let next = step(&m, &config).expect("blank entry steps");
        assert_eq!(next.head, 1);
        assert_eq!(next.symbol_at(0), Symbol::One);
        assert_eq!(next.cycles, 1);
        assert_eq!(next.state, 0);
    }

    #[test]
    fn machine_5_first_step_matches_hand_decode() {
        // Index 5 is "10": gamma gives 1 state, then the bits run out inside
        // the first entry, so the whole table is Halt.
        let m = decode_machine(&index(5));
        assert_eq!(m, TuringMachine::halt_everywhere(1));
        let config = TapeConfig::from_input(&BitString::new());
        assert_eq!(step(&m, &config), None);
    }

    #[test]
    fn run_echoes_input_when_halting_immediately() {
        let m = TuringMachine::halt_everywhere(1);
        let res = run(&m, &bs("101"), 10);
        assert_eq!(res, RunResult { status: RunStatus::Halted, output: bs("101"), cycles: 0 });
    }

    #[test]
    fn blank_runner_exhausts_budget() {
        let res = run(&blank_runner(), &BitString::new(), 50);
        assert_eq!(
            res,
            RunResult { status: RunStatus::BudgetExceeded, output: BitString::new(), cycles: 50 }
        );
    }

    #[test]
    fn halting_at_exact_budget_counts_as_halted() {
        // Writes one 1 and moves onto it; the One entry halts.
        let m = TuringMachine::new(
            1,
            vec![
                Entry::Step { write: Symbol::One, movement: Move::Left, next: 0 },
                Entry::Halt,
                Entry::Step { write: Symbol::One, movement: Move::Left, next: 0 },
            ],
        )
        .unwrap();
        // On empty input: blank -> write 1 left (cycle 1), blank -> write 1
        // left (cycle 2), ... never revisits. Budget cuts it off.
        let res = run(&m, &BitString::new(), 3);
        assert_eq!(res.status, RunStatus::BudgetExceeded);
        assert_eq!(res.cycles, 3);

        // Input "1": reads One at cell 0 and halts with zero cycles even at
        // budget 0.
        let res = run(&m, &bs("1"), 0);
        assert_eq!(res.status, RunStatus::Halted);
        assert_eq!(res.cycles, 0);
    }

    #[test]
    fn read_output_conventions() {
        let blank = TapeConfig::from_input(&BitString::new());
        assert_eq!(read_output(&blank), BitString::new());

        // Cells {-2: 1, -1: 0, 1: 1}: the word stops at blank cell 0.
        let mut config = TapeConfig::from_input(&BitString::new());
        config.tape.set(-2, Symbol::One);
        config.tape.set(-1, Symbol::Zero);
        config.tape.set(1, Symbol::One);
        assert_eq!(read_output(&config), bs("10"));

        let m = TuringMachine::halt_everywhere(1);
        assert_eq!(run(&m, &bs("0110"), 5).output, bs("0110"));
    }

    #[test]
    fn decode_index_zero_is_all_defaults() {
        let m = decode_machine(&index(0));
        assert_eq!(m, TuringMachine::halt_everywhere(1));
    }

    #[test]
    fn decode_index_37_matches_hand_decode() {
        // Rank 37 is "00110": gamma reads state count 6, nothing is left,
        // so all 18 entries are Halt.
        let m = decode_machine(&index(37));
        assert_eq!(m, TuringMachine::halt_everywhere(6));
    }

    #[test]
    fn encode_halt_everywhere_is_rank_of_1111() {
        // gamma(1) = "1" followed by three Halt flags.
        let m = TuringMachine::halt_everywhere(1);
        assert_eq!(encode_machine(&m), bits_to_rank(&bs("1111")));
        assert_eq!(encode_machine(&m), index(30));
    }

    #[test]
    fn encode_decode_idempotent_on_canonicalized_machines() {
        for i in (0..3000u64).step_by(7) {
            let canonical = encode_machine(&decode_machine(&index(i)));
            let again = encode_machine(&decode_machine(&canonical));
            assert_eq!(canonical, again, "index {i}");
        }
    }

    #[test]
    fn encoding_distinguishes_unreachable_targets() {
        let reach = |next| {
            TuringMachine::new(
                2,
                vec![
                    Entry::Halt,
                    Entry::Halt,
                    Entry::Halt,
                    Entry::Step { write: Symbol::Zero, movement: Move::Left, next },
                ],
            )
            .unwrap()
        };
        // State 1 is unreachable from state 0 either way; the encoding is
        // syntactic and still tells them apart.
        assert_ne!(encode_machine(&reach(0)), encode_machine(&reach(1)));
    }

    #[test]
    fn decode_totality_smoke() {
        for i in 0..5_000u64 {
            let m = decode_machine(&index(i));
            assert!(m.state_count() >= 1);
            // entry() asserts internally; touching every state exercises it.
            for s in 0..m.state_count().min(64) {
                for sym in Symbol::ALL {
                    let _ = m.entry(s, sym);
                }
            }
        }
    }

    #[test]
    fn run_is_deterministic_and_budget_monotone() {
        for i in 0..400u64 {
            let m = decode_machine(&index(i * 13 + 1));
            for input in ["", "1", "0101", "11100"] {
                let input = bs(input);
                let a = run(&m, &input, 100);
                let b = run(&m, &input, 100);
                assert_eq!(a, b);
                if a.status == RunStatus::Halted {
                    assert_eq!(run(&m, &input, 100 + 37), a, "budget monotonicity");
                }
            }
        }
    }
}
