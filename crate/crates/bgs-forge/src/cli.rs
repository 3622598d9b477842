//! Batch experiment runner: every library operation as a subcommand, with
//! reproducible configuration and machine-readable logs.
//!
//! One JSON record per result goes to standard output (see
//! [`crate::report`]); human summaries go to standard error. Exit codes:
//! `0` completed (including not-found / exhausted outcomes), `1` usage
//! error, `2` refused precondition (caps and gates), `3` internal invariant
//! violation. The environment variable `BGS_FORGE_LONG_RUNS=1` is equivalent
//! to `--allow-long`.

use std::str::FromStr;
use std::sync::Arc;
use std::time::Instant;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::beaver::{beaver_census, compare_growth, BeaverCensus, CensusOptions};
use crate::bgs::{clock_bound, decode_bgs, run_clocked};
use crate::bits::{cantor_unpair, BitString};
use crate::cnf::{
    brute_force_solve, decode_instance, encode_instance, format_dimacs, parse_dimacs,
    sat_instances_upto, string_to_rank, verify, CnfFormula, SolveOutcome, DEFAULT_VAR_CAP,
};
use crate::counterexample::{
    counterexample_f, counterexample_fprime, empirical_r, growth_table, EmpiricalR,
};
use crate::error::ForgeError;
use crate::folklore::{
    dominates, lookup_solver, settled_set, trivial_instance_solver, DeclineAll, Dominance,
    OracleSolver, WitnessTuple,
};
use crate::machine::{decode_machine, Entry, RunStatus, Symbol, TuringMachine};
use crate::report::ExperimentRecord;
use crate::search::{search_report, universal_search, SearchConfig, SearchKind};
use crate::solver::{bgs_family, native_family, FailureReason, Solver, SolverFamily, SolverOutcome};

#[derive(Parser)]
#[command(
    name = "bgs-forge",
    version,
    about = "Clocked-machine enumeration, SAT-as-bit-strings, universal search, counterexample scans, and Busy Beaver censuses",
    after_help = "Exit codes: 0 completed, 1 usage error, 2 refused precondition, 3 internal invariant violation."
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decode the Turing machine at a (possibly huge) length-lex index.
    DecodeMachine { index: String },
    /// Decode the clocked couple at an enumeration index.
    DecodeBgs { index: u64 },
    /// Run the couple at an index on an instance code, under its clock.
    RunClocked { index: u64, bits: String },
    /// Encode a DIMACS file (path or '-' for stdin) as an instance code.
    Encode { source: String },
    /// Decode an instance code back to a formula.
    Decode { bits: String },
    /// Check a satisfying line against a DIMACS formula.
    Verify { dimacs: String, line: String },
    /// Exhaustively solve a DIMACS formula (capped oracle).
    Solve {
        dimacs: String,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// List the satisfiable instances among ranks 0..N with oracle lines.
    Instances {
        #[arg(long)]
        upto: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Check a solver index against the |x|^a + b witness shape on a window.
    WitnessCheck {
        #[arg(long)]
        index: u64,
        #[arg(long)]
        a: u32,
        #[arg(long)]
        b: u64,
        #[arg(long)]
        upto: u64,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Compare consecutive lookup solvers 0..N on a rank window.
    FolkloreChain {
        #[arg(long)]
        upto: u64,
        #[arg(long, default_value_t = 64)]
        rank_bound: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Compare what two solvers settle below a rank bound.
    Dominates {
        /// Solver spec: lookup:N, oracle, decline, trivial:BITS, or bgs:K.
        #[arg(long)]
        left: String,
        #[arg(long)]
        right: String,
        #[arg(long)]
        upto: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Universal search over a solver family.
    Search {
        /// An instance code (0/1 string), a DIMACS path, or '-' for stdin.
        input: String,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long)]
        rounds: u64,
        #[arg(long, default_value = "off")]
        guard: String,
        #[arg(long)]
        trace: bool,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Least instance on which solver k fails, scanned under a rank budget.
    Counterexample {
        #[arg(long)]
        k: u64,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long)]
        rank_budget: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Counterexample scan over the all-machines numbering (even = couple).
    Fprime {
        #[arg(long)]
        k: u64,
        #[arg(long)]
        rank_budget: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Least family index that settles every satisfiable rank below N.
    EmpiricalR {
        #[arg(long)]
        upto: u64,
        #[arg(long)]
        index_budget: u64,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Tabulate counterexample ranks across solver indices.
    Growth {
        /// Comma-separated indices, e.g. 0,1,5.
        #[arg(long)]
        ks: String,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long)]
        rank_budget: u64,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
    /// Exhaustive n-state Busy Beaver census.
    Beaver {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        cutoff: u64,
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        no_reduction: bool,
    },
    /// Census and counterexample growth table, side by side.
    CompareGrowth {
        #[arg(long)]
        n: u8,
        #[arg(long)]
        cutoff: u64,
        #[arg(long)]
        ks: String,
        #[arg(long)]
        rank_budget: u64,
        #[arg(long, default_value = "bgs")]
        family: String,
        #[arg(long, default_value_t = 64)]
        table: u64,
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        no_reduction: bool,
        #[arg(long, default_value_t = DEFAULT_VAR_CAP)]
        var_cap: u32,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Forge(ForgeError),
}

impl From<ForgeError> for CliError {
    fn from(err: ForgeError) -> Self {
        CliError::Forge(err)
    }
}

impl std::fmt::Display for CliError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            CliError::Usage(msg) => write!(f, "{msg}"),
            CliError::Forge(err) => write!(f, "{err}"),
        }
    }
}

fn exit_code(err: &CliError) -> i32 {
    match err {
        CliError::Usage(_) => 1,
        CliError::Forge(ForgeError::Internal(_)) => 3,
        CliError::Forge(err) if err.is_refusal() => 2,
        CliError::Forge(_) => 1,
    }
}

/// Entry point used by the binary. Returns the process exit code.
pub fn run<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(err) => {
            let code = if err.use_stderr() { 1 } else { 0 };
            let _ = err.print();
            return code;
        }
    };
    match dispatch(cli.command) {
        Ok(()) => 0,
        Err(err) => {
            eprintln!("bgs-forge: {err}");
            exit_code(&err)
        }
    }
}

struct Emitter {
    command: &'static str,
    parameters: Value,
    started: Instant,
}

impl Emitter {
    fn new(command: &'static str, parameters: Value) -> Self {
        Emitter { command, parameters, started: Instant::now() }
    }

    /// Prints one complete record to stdout and a summary line to stderr.
    fn emit(&self, result: Value, human: &str) {
        let wall = self.started.elapsed().as_millis() as u64;
        let record = ExperimentRecord::new(self.command, self.parameters.clone(), result, wall);
        println!("{}", record.to_line());
        eprintln!("{}: {human}", self.command);
    }
}

fn parse_bits(s: &str) -> Result<BitString, CliError> {
    s.parse().map_err(|e| CliError::Usage(format!("{e}")))
}

fn read_source(source: &str) -> Result<String, CliError> {
    if source == "-" {
        let mut text = String::new();
        std::io::Read::read_to_string(&mut std::io::stdin(), &mut text)
            .map_err(|e| CliError::Usage(format!("reading stdin: {e}")))?;
        Ok(text)
    } else {
        std::fs::read_to_string(source)
            .map_err(|e| CliError::Usage(format!("reading {source}: {e}")))
    }
}

fn read_formula(source: &str) -> Result<CnfFormula, CliError> {
    let text = read_source(source)?;
    Ok(parse_dimacs(&text).map_err(ForgeError::from)?)
}

/// `search` accepts either a raw instance code or DIMACS; anything that is
/// not purely 0/1 characters is treated as a DIMACS path ('-' for stdin).
fn read_instance_bits(input: &str) -> Result<BitString, CliError> {
    if input.chars().all(|c| c == '0' || c == '1') {
        parse_bits(input)
    } else {
        Ok(encode_instance(&read_formula(input)?).bits)
    }
}

fn parse_ks(ks: &str) -> Result<Vec<u64>, CliError> {
    ks.split(',')
        .filter(|part| !part.trim().is_empty())
        .map(|part| {
            part.trim()
                .parse::<u64>()
                .map_err(|_| CliError::Usage(format!("bad index {part:?} in --ks")))
        })
        .collect()
}

fn parse_guard(guard: &str) -> Result<bool, CliError> {
    match guard {
        "on" => Ok(true),
        "off" => Ok(false),
        other => Err(CliError::Usage(format!("--guard takes on|off, got {other:?}"))),
    }
}

/// A clocked couple wrapped as a plain solver for dominance comparisons.
/// A clock bound too large to simulate counts as declining: the scan never
/// credits an answer it could not afford to compute.
struct BgsSolver(u64);

impl Solver for BgsSolver {
    fn name(&self) -> String {
        format!("bgs:{}", self.0)
    }

    fn solve(&self, input: &BitString) -> SolverOutcome {
        match bgs_family().solve_at(self.0, input) {
            Ok(outcome) => outcome,
            Err(_) => SolverOutcome::failed(FailureReason::Declined, 0),
        }
    }
}

fn parse_solver_spec(spec: &str, var_cap: u32) -> Result<Box<dyn Solver>, CliError> {
    if spec == "oracle" {
        return Ok(Box::new(OracleSolver { var_cap }));
    }
    if spec == "decline" {
        return Ok(Box::new(DeclineAll));
    }
    if let Some(n) = spec.strip_prefix("lookup:") {
        let n = n.parse::<u64>().map_err(|_| bad_spec(spec))?;
        return Ok(Box::new(lookup_solver(n, var_cap)?));
    }
    if let Some(k) = spec.strip_prefix("bgs:") {
        let k = k.parse::<u64>().map_err(|_| bad_spec(spec))?;
        return Ok(Box::new(BgsSolver(k)));
    }
    if let Some(bits) = spec.strip_prefix("trivial:") {
        let formula = decode_instance(&parse_bits(bits)?);
        return Ok(Box::new(trivial_instance_solver(&formula, var_cap)?));
    }
    Err(bad_spec(spec))
}

fn bad_spec(spec: &str) -> CliError {
    CliError::Usage(format!(
        "bad solver spec {spec:?}; expected lookup:N, oracle, decline, trivial:BITS, or bgs:K"
    ))
}

fn build_family(name: &str, table: u64, var_cap: u32) -> Result<Box<dyn SolverFamily>, CliError> {
    match name {
        "bgs" => Ok(Box::new(bgs_family())),
        "native" => {
            let solver = Arc::new(lookup_solver(table, var_cap)?);
            Ok(Box::new(native_family(vec![solver])))
        }
        other => Err(CliError::Usage(format!("--family takes bgs|native, got {other:?}"))),
    }
}

fn long_runs_allowed(flag: bool) -> bool {
    flag || std::env::var("BGS_FORGE_LONG_RUNS").map(|v| v == "1").unwrap_or(false)
}

fn entry_value(state: u64, symbol: Symbol, entry: Entry) -> Value {
    match entry {
        Entry::Halt => json!({ "state": state, "symbol": symbol, "halt": true }),
        Entry::Step { write, movement, next } => json!({
            "state": state,
            "symbol": symbol,
            "write": write,
            "move": movement,
            "next": next,
        }),
    }
}

fn machine_value(machine: &TuringMachine) -> Value {
    let mut entries = Vec::new();
    let full = machine.state_count() <= 16;
    let listed_states =
        if full { machine.state_count() } else { (machine.stored_entries() as u64 + 2) / 3 };
    for state in 0..listed_states {
        for symbol in Symbol::ALL {
            entries.push(entry_value(state, symbol, machine.entry(state, symbol)));
        }
    }
    json!({
        "state_count": machine.state_count(),
        "stored_entries": machine.stored_entries(),
        "entries": entries,
        "entries_complete": full,
    })
}

fn status_str(status: RunStatus) -> Value {
    serde_json::to_value(status).expect("status serializes")
}

fn dispatch(command: Command) -> Result<(), CliError> {
    match command {
        Command::DecodeMachine { index } => {
            let index = BigUint::from_str(&index)
                .map_err(|_| CliError::Usage(format!("bad index {index:?}")))?;
            let emitter =
                Emitter::new("decode-machine", json!({ "index": index.to_string() }));
            let machine = decode_machine(&index);
            let human = format!(
                "{} states, {} stored entries",
                machine.state_count(),
                machine.stored_entries()
            );
            emitter.emit(machine_value(&machine), &human);
            Ok(())
        }
        Command::DecodeBgs { index } => {
            let emitter = Emitter::new("decode-bgs", json!({ "index": index }));
            let couple = decode_bgs(index);
            let (machine_index, poly_index) = cantor_unpair(index);
            let human = format!(
                "machine index {machine_index} ({} states), clock {:?}",
                couple.machine.state_count(),
                couple.clock.coefficients()
            );
            emitter.emit(
                json!({
                    "index": index,
                    "machine_index": machine_index,
                    "poly_index": poly_index,
                    "machine": machine_value(&couple.machine),
                    "clock": couple.clock.coefficients(),
                }),
                &human,
            );
            Ok(())
        }
        Command::RunClocked { index, bits } => {
            let input = parse_bits(&bits)?;
            let emitter =
                Emitter::new("run-clocked", json!({ "index": index, "input": input }));
            let couple = decode_bgs(index);
            let bound = clock_bound(&couple.clock, input.len() as u64)?;
            let result = run_clocked(&couple, &input)?;
            let human = format!(
                "{:?} after {} of {} cycles, output \"{}\"",
                result.status, result.cycles, bound, result.output
            );
            emitter.emit(
                json!({
                    "clock": couple.clock.coefficients(),
                    "bound": bound,
                    "status": status_str(result.status),
                    "output": result.output,
                    "cycles": result.cycles,
                }),
                &human,
            );
            Ok(())
        }
        Command::Encode { source } => {
            let formula = read_formula(&source)?;
            let emitter = Emitter::new("encode", json!({ "source": source }));
            let code = encode_instance(&formula);
            let human = format!("{} bits, rank {}", code.bits.len(), code.rank);
            emitter.emit(
                json!({
                    "bits": code.bits,
                    "rank": code.rank.to_string(),
                    "var_count": formula.var_count(),
                    "clause_count": formula.clauses().len(),
                }),
                &human,
            );
            Ok(())
        }
        Command::Decode { bits } => {
            let code = parse_bits(&bits)?;
            let emitter = Emitter::new("decode", json!({ "bits": code }));
            let formula = decode_instance(&code);
            let human = format!(
                "{} clauses over {} variables",
                formula.clauses().len(),
                formula.var_count()
            );
            emitter.emit(
                json!({
                    "rank": string_to_rank(&code).to_string(),
                    "clauses": formula.clauses(),
                    "var_count": formula.var_count(),
                    "dimacs": format_dimacs(&formula),
                }),
                &human,
            );
            Ok(())
        }
        Command::Verify { dimacs, line } => {
            let formula = read_formula(&dimacs)?;
            let line = parse_bits(&line)?;
            let emitter =
                Emitter::new("verify", json!({ "source": dimacs, "line": line }));
            let verified = verify(&formula, &line);
            emitter.emit(
                json!({ "verified": verified, "var_count": formula.var_count() }),
                if verified { "line satisfies the formula" } else { "line rejected" },
            );
            Ok(())
        }
        Command::Solve { dimacs, var_cap } => {
            let formula = read_formula(&dimacs)?;
            let emitter =
                Emitter::new("solve", json!({ "source": dimacs, "var_cap": var_cap }));
            let result = match brute_force_solve(&formula, var_cap)? {
                SolveOutcome::Satisfiable(line) => {
                    json!({ "kind": "satisfiable", "line": line })
                }
                SolveOutcome::Unsatisfiable => json!({ "kind": "unsatisfiable" }),
            };
            let human = result["kind"].as_str().unwrap_or("?").to_string();
            emitter.emit(result, &human);
            Ok(())
        }
        Command::Instances { upto, var_cap } => {
            let emitter =
                Emitter::new("instances", json!({ "upto": upto, "var_cap": var_cap }));
            let instances = sat_instances_upto(upto, var_cap)?;
            let count = instances.len();
            for instance in instances {
                emitter.emit(
                    json!({
                        "rank": instance.rank,
                        "bits": rank_bits(instance.rank),
                        "line": instance.line,
                        "var_count": instance.formula.var_count(),
                    }),
                    &format!("rank {} satisfiable", instance.rank),
                );
            }
            eprintln!("instances: {count} satisfiable of {upto} ranks");
            Ok(())
        }
        Command::WitnessCheck { index, a, b, upto, family, table, var_cap } => {
            if a == 0 || b == 0 {
                return Err(CliError::Usage("--a and --b must be positive".into()));
            }
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "witness-check",
                json!({
                    "index": index, "a": a, "b": b, "upto": upto,
                    "family": family, "table": table, "var_cap": var_cap,
                }),
            );
            let tuple = WitnessTuple::new(fam.as_ref(), index, a, b);
            let report = check_witness(&tuple, upto, var_cap)?;
            let human = if report.clean() {
                format!("clean on {} satisfiable instances", report.checked)
            } else {
                format!("{} violation(s), first at rank {}", report.violations.len(),
                    report.violations[0].0)
            };
            emitter.emit(serde_json::to_value(&report).expect("report serializes"), &human);
            Ok(())
        }
        Command::FolkloreChain { upto, rank_bound, var_cap } => {
            let emitter = Emitter::new(
                "folklore-chain",
                json!({ "upto": upto, "rank_bound": rank_bound, "var_cap": var_cap }),
            );
            for n in 0..upto {
                let smaller = lookup_solver(n, var_cap)?;
                let larger = lookup_solver(n + 1, var_cap)?;
                let verdict = dominates(&larger, &smaller, rank_bound, var_cap)?;
                let settled_small = settled_set(&smaller, rank_bound, var_cap)?.len();
                let settled_large = settled_set(&larger, rank_bound, var_cap)?.len();
                let human = format!(
                    "lookup:{} vs lookup:{}: {}",
                    n + 1,
                    n,
                    verdict_name(&verdict)
                );
                emitter.emit(
                    json!({
                        "n": n,
                        "next": n + 1,
                        "verdict": verdict,
                        "settled": [settled_small, settled_large],
                    }),
                    &human,
                );
            }
            Ok(())
        }
        Command::Dominates { left, right, upto, var_cap } => {
            let left_solver = parse_solver_spec(&left, var_cap)?;
            let right_solver = parse_solver_spec(&right, var_cap)?;
            let emitter = Emitter::new(
                "dominates",
                json!({ "left": left, "right": right, "upto": upto, "var_cap": var_cap }),
            );
            let verdict = dominates(left_solver.as_ref(), right_solver.as_ref(), upto, var_cap)?;
            let human = verdict_name(&verdict).to_string();
            emitter.emit(json!({ "verdict": verdict }), &human);
            Ok(())
        }
        Command::Search { input, family, table, rounds, guard, trace, var_cap } => {
            let bits = read_instance_bits(&input)?;
            let unsat_guard = parse_guard(&guard)?;
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "search",
                json!({
                    "input": bits, "family": family, "table": table,
                    "rounds": rounds, "guard": guard, "trace": trace, "var_cap": var_cap,
                }),
            );
            let config = SearchConfig {
                round_budget: rounds,
                unsat_guard,
                var_cap,
                collect_trace: trace,
            };
            let outcome = universal_search(&bits, fam.as_ref(), &config)?;
            let human = match &outcome.kind {
                SearchKind::Found { k, round, .. } => format!("found k={k} at round {round}"),
                SearchKind::ExhaustedBudget { .. } => format!("exhausted {rounds} rounds"),
                SearchKind::CertifiedUnsat => "certified unsatisfiable".to_string(),
            };
            emitter.emit(search_report(&outcome), &human);
            Ok(())
        }
        Command::Counterexample { k, family, table, rank_budget, var_cap } => {
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "counterexample",
                json!({
                    "k": k, "family": family, "table": table,
                    "rank_budget": rank_budget, "var_cap": var_cap,
                }),
            );
            let result = counterexample_f(k, fam.as_ref(), rank_budget, var_cap)?;
            emitter.emit(
                serde_json::to_value(&result).expect("result serializes"),
                &counterexample_summary(&result),
            );
            Ok(())
        }
        Command::Fprime { k, rank_budget, var_cap } => {
            let emitter = Emitter::new(
                "fprime",
                json!({ "k": k, "rank_budget": rank_budget, "var_cap": var_cap }),
            );
            let result = counterexample_fprime(k, rank_budget, var_cap)?;
            let human = match &result {
                crate::counterexample::FPrime::Zero => "not a couple tag: 0".to_string(),
                crate::counterexample::FPrime::Couple { bgs_index, result } => {
                    format!("couple {bgs_index}: {}", counterexample_summary(result))
                }
            };
            emitter.emit(serde_json::to_value(&result).expect("result serializes"), &human);
            Ok(())
        }
        Command::EmpiricalR { upto, index_budget, family, table, var_cap } => {
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "empirical-r",
                json!({
                    "upto": upto, "index_budget": index_budget,
                    "family": family, "table": table, "var_cap": var_cap,
                }),
            );
            let result = empirical_r(upto, fam.as_ref(), index_budget, var_cap)?;
            let human = match &result {
                EmpiricalR::Found { k } => format!("least settling index {k}"),
                EmpiricalR::NotFoundWithin { index_budget } => {
                    format!("none within index budget {index_budget}")
                }
            };
            emitter.emit(serde_json::to_value(&result).expect("result serializes"), &human);
            Ok(())
        }
        Command::Growth { ks, family, table, rank_budget, var_cap } => {
            let ks = parse_ks(&ks)?;
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "growth",
                json!({
                    "ks": ks, "family": family, "table": table,
                    "rank_budget": rank_budget, "var_cap": var_cap,
                }),
            );
            let rows = growth_table(&ks, fam.as_ref(), rank_budget, var_cap)?;
            for row in rows {
                let human = format!("k={}: {}", row.k, counterexample_summary(&row.result));
                emitter.emit(serde_json::to_value(&row).expect("row serializes"), &human);
            }
            Ok(())
        }
        Command::Beaver { n, cutoff, allow_long, no_reduction } => {
            let options = CensusOptions {
                symmetry_reduction: !no_reduction,
                allow_long: long_runs_allowed(allow_long),
            };
            let emitter = Emitter::new(
                "beaver",
                json!({
                    "n": n, "cutoff": cutoff,
                    "symmetry_reduction": options.symmetry_reduction,
                    "allow_long": options.allow_long,
                }),
            );
            let census = beaver_census(n, cutoff, options)?;
            emitter.emit(
                serde_json::to_value(&census).expect("census serializes"),
                &census_summary(&census),
            );
            Ok(())
        }
        Command::CompareGrowth {
            n,
            cutoff,
            ks,
            rank_budget,
            family,
            table,
            allow_long,
            no_reduction,
            var_cap,
        } => {
            let ks = parse_ks(&ks)?;
            let options = CensusOptions {
                symmetry_reduction: !no_reduction,
                allow_long: long_runs_allowed(allow_long),
            };
            let fam = build_family(&family, table, var_cap)?;
            let emitter = Emitter::new(
                "compare-growth",
                json!({
                    "n": n, "cutoff": cutoff, "ks": ks, "rank_budget": rank_budget,
                    "family": family, "table": table, "var_cap": var_cap,
                    "symmetry_reduction": options.symmetry_reduction,
                    "allow_long": options.allow_long,
                }),
            );
            let census = beaver_census(n, cutoff, options)?;
            let rows = growth_table(&ks, fam.as_ref(), rank_budget, var_cap)?;
            let report = compare_growth(&[census], &rows);
            let human = format!(
                "census n={n} ({}) beside {} growth row(s)",
                census_summary(&report.beaver[0]),
                report.counterexample.len()
            );
            emitter.emit(serde_json::to_value(&report).expect("report serializes"), &human);
            Ok(())
        }
    }
}

fn rank_bits(rank: u64) -> BitString {
    crate::bits::rank_to_bits_u64(rank)
}

fn check_witness(
    tuple: &WitnessTuple<'_>,
    rank_bound: u64,
    var_cap: u32,
) -> Result<crate::folklore::WitnessReport, CliError> {
    Ok(crate::folklore::check_witness_tuple(tuple, rank_bound, var_cap)?)
}

fn verdict_name(verdict: &Dominance) -> &'static str {
    match verdict {
        Dominance::StrictlyMore { .. } => "strictly more",
        Dominance::Equal => "equal",
        Dominance::Incomparable { .. } => "incomparable",
    }
}

fn counterexample_summary(result: &crate::counterexample::Counterexample) -> String {
    use crate::counterexample::Counterexample::*;
    match result {
        FailsAt { rank, detail } => format!("fails at rank {rank} ({detail:?})"),
        NoFailureFound { scanned } => format!("no failure in {scanned} ranks"),
        OracleRefused { rank } => format!("oracle refused at rank {rank}"),
    }
}

fn census_summary(census: &BeaverCensus) -> String {
    format!(
        "sigma={} s_max={} halted={} unresolved={}",
        census.sigma, census.s_max, census.halted, census.unresolved
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn solver_specs_parse() {
        assert!(parse_solver_spec("oracle", 26).is_ok());
        assert!(parse_solver_spec("decline", 26).is_ok());
        assert!(parse_solver_spec("lookup:4", 26).is_ok());
        assert!(parse_solver_spec("bgs:12", 26).is_ok());
        assert!(parse_solver_spec("trivial:0", 26).is_ok());
        assert!(parse_solver_spec("nope", 26).is_err());
        assert!(parse_solver_spec("lookup:x", 26).is_err());
        // trivial: of an unsatisfiable instance is a refusal, not usage.
        match parse_solver_spec("trivial:10", 26) {
            Err(CliError::Forge(ForgeError::UnsatisfiableInstance)) => {}
            other => panic!("expected refusal, got {other:?}"),
        }
    }

    #[test]
    fn guard_and_ks_parsing() {
        assert_eq!(parse_guard("on").unwrap(), true);
        assert_eq!(parse_guard("off").unwrap(), false);
        assert!(parse_guard("maybe").is_err());
        assert_eq!(parse_ks("0,3, 7").unwrap(), vec![0, 3, 7]);
        assert_eq!(parse_ks("").unwrap(), Vec::<u64>::new());
        assert!(parse_ks("1,x").is_err());
    }

    #[test]
    fn long_run_env_is_equivalent_to_the_flag() {
        assert!(long_runs_allowed(true));
        std::env::remove_var("BGS_FORGE_LONG_RUNS");
        assert!(!long_runs_allowed(false));
        std::env::set_var("BGS_FORGE_LONG_RUNS", "1");
        assert!(long_runs_allowed(false));
        std::env::remove_var("BGS_FORGE_LONG_RUNS");
    }

    #[test]
    fn refusals_and_usage_map_to_distinct_exit_codes() {
        assert_eq!(exit_code(&CliError::Usage("x".into())), 1);
        assert_eq!(exit_code(&CliError::Forge(ForgeError::LongRunGated)), 2);
        assert_eq!(
            exit_code(&CliError::Forge(ForgeError::VarCapExceeded {
                var_count: 30,
                cap: 26,
                rank: None
            })),
            2
        );
        assert_eq!(exit_code(&CliError::Forge(ForgeError::Internal("x".into()))), 3);
        assert_eq!(
            exit_code(&CliError::Forge(ForgeError::Dimacs(
                crate::cnf::DimacsError::MissingHeader
            ))),
            1
        );
    }
}
