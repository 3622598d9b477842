//! SAT instances as binary strings: a self-delimiting CNF codec, the
//! canonical length-lex instance order, DIMACS ingestion, satisfying-line
//! verification, and an exhaustive (capped) satisfiability oracle.
//!
//! # Instance coding
//!
//! `encode_instance` emits, for each clause, a `1` marker, then for each
//! literal `1` + `gamma(variable)` + a sign bit (`0` positive, `1` negative),
//! then `0` to end the clause; a final `0` ends the formula. The empty
//! formula is `"0"`.
//!
//! `decode_instance` is total: it parses the grammar greedily, ignores bits
//! after the formula terminator, and on bit exhaustion discards the
//! incomplete literal and the unterminated clause it sits in, then closes
//! the formula. Decode is therefore many-to-one; encode is the canonical
//! section of it. "The set Sat" always means: binary strings whose decoded
//! formula is satisfiable.
//!
//! # Assignments
//!
//! A satisfying line is a plain [`BitString`]: bit `i` (0-based) is the truth
//! value of variable `i + 1`. A line is adequate for a formula when it covers
//! `var_count`; longer lines are fine and the excess is ignored.

use num_bigint::BigUint;
use serde::Serialize;
use thiserror::Error;

use crate::bits::{
    bits_to_rank, bits_to_rank_u64, gamma_append, gamma_read, rank_to_bits, rank_to_bits_u64,
    BitString,
};
use crate::error::ForgeError;

/// Default cap on oracle variable counts; 2^26 assignments is the most the
/// exhaustive scan will attempt.
pub const DEFAULT_VAR_CAP: u32 = 26;

/// A literal: a 1-based variable index and a sign.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct Literal {
    pub var: u64,
    pub negated: bool,
}

impl Literal {
    pub fn positive(var: u64) -> Self {
        Literal { var, negated: false }
    }

    pub fn negative(var: u64) -> Self {
        Literal { var, negated: true }
    }
}

/// A CNF formula. Empty clause lists are allowed (vacuously satisfiable), as
/// are empty clauses (unsatisfiable).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CnfFormula {
    clauses: Vec<Vec<Literal>>,
}

impl CnfFormula {
    pub fn new(clauses: Vec<Vec<Literal>>) -> Result<Self, ForgeError> {
        if clauses.iter().flatten().any(|lit| lit.var == 0) {
            return Err(ForgeError::InvalidLiteral);
        }
        Ok(CnfFormula { clauses })
    }

    pub fn empty() -> Self {
        CnfFormula::default()
    }

    pub fn clauses(&self) -> &[Vec<Literal>] {
        &self.clauses
    }

    /// Highest variable index used; 0 when there are no literals.
    pub fn var_count(&self) -> u64 {
        self.clauses.iter().flatten().map(|lit| lit.var).max().unwrap_or(0)
    }
}

/// An instance code: the bit string together with its length-lex rank.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InstanceCode {
    pub bits: BitString,
    pub rank: BigUint,
}

/// String at the given instance rank. Re-exported bit-level primitive; rank 0
/// is the empty string.
pub fn rank_to_string(rank: &BigUint) -> BitString {
    rank_to_bits(rank)
}

/// Rank of the given instance string.
pub fn string_to_rank(bits: &BitString) -> BigUint {
    bits_to_rank(bits)
}

/// Canonical bit code of a formula.
pub fn encode_instance(formula: &CnfFormula) -> InstanceCode {
    let mut bits = BitString::new();
    for clause in &formula.clauses {
        bits.push(true);
        for lit in clause {
            bits.push(true);
            gamma_append(&mut bits, lit.var);
            bits.push(lit.negated);
        }
        bits.push(false);
    }
    bits.push(false);
    let rank = bits_to_rank(&bits);
    InstanceCode { bits, rank }
}

/// Total decoder; see the module docs for the exhaustion conventions.
pub fn decode_instance(bits: &BitString) -> CnfFormula {
    let mut r = bits.reader();
    let mut clauses = Vec::new();
    loop {
        match r.next_bit() {
            // Formula terminator or clean exhaustion between clauses.
            None | Some(false) => break,
            Some(true) => match decode_clause(&mut r) {
                Some(lits) => clauses.push(lits),
                // Unterminated clause: discarded, formula closes.
                None => break,
            },
        }
    }
    CnfFormula { clauses }
}

fn decode_clause(r: &mut crate::bits::BitReader<'_>) -> Option<Vec<Literal>> {
    let mut lits = Vec::new();
    loop {
        match r.next_bit()? {
            false => return Some(lits),
            true => {
                let var = gamma_read(r)?;
                let negated = r.next_bit()?;
                lits.push(Literal { var, negated });
            }
        }
    }
}

/// True iff the line covers every variable and satisfies every clause.
/// Bits beyond `var_count` are ignored. Runs in time linear in formula size.
pub fn verify(formula: &CnfFormula, line: &BitString) -> bool {
    if (line.len() as u64) < formula.var_count() {
        return false;
    }
    formula.clauses.iter().all(|clause| {
        clause.iter().any(|lit| {
            let bit = line.get((lit.var - 1) as usize).expect("line covers var_count");
            bit != lit.negated
        })
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SolveOutcome {
    /// The lexicographically first satisfying line, of length `var_count`.
    Satisfiable(BitString),
    Unsatisfiable,
}

impl SolveOutcome {
    pub fn line(&self) -> Option<&BitString> {
        match self {
            SolveOutcome::Satisfiable(line) => Some(line),
            SolveOutcome::Unsatisfiable => None,
        }
    }
}

fn clause_satisfied_by(clause: &[Literal], assignment: u64, var_count: u32) -> bool {
    clause.iter().any(|lit| {
        let bit = (assignment >> (var_count as u64 - lit.var)) & 1 == 1;
        bit != lit.negated
    })
}

/// The exhaustive oracle: tries all `2^var_count` lines in lexicographic
/// order and returns the first satisfier. Refuses (never guesses) above
/// `var_cap`.
pub fn brute_force_solve(formula: &CnfFormula, var_cap: u32) -> Result<SolveOutcome, ForgeError> {
    let var_count = formula.var_count();
    if var_count > var_cap as u64 || var_count >= 64 {
        return Err(ForgeError::VarCapExceeded { var_count, cap: var_cap, rank: None });
    }
    let n = var_count as u32;
    for assignment in 0..1u64 << n {
        if formula.clauses.iter().all(|c| clause_satisfied_by(c, assignment, n)) {
            let mut line = BitString::new();
            for pos in (0..n).rev() {
                line.push((assignment >> pos) & 1 == 1);
            }
            return Ok(SolveOutcome::Satisfiable(line));
        }
    }
    Ok(SolveOutcome::Unsatisfiable)
}

/// Distinct DIMACS ingestion failures.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum DimacsError {
    #[error("missing 'p cnf <vars> <clauses>' header")]
    MissingHeader,
    #[error("malformed header line: {0:?}")]
    MalformedHeader(String),
    #[error("token {0:?} is not an integer literal")]
    BadToken(String),
    #[error("literal 0 is reserved for clause termination")]
    ZeroLiteral,
    #[error("variable {var} exceeds the declared count {declared}")]
    VariableOutOfRange { var: u64, declared: u64 },
    #[error("clause count mismatch: declared {declared}, found {found}")]
    ClauseCountMismatch { declared: usize, found: usize },
    #[error("last clause is missing its 0 terminator")]
    UnterminatedClause,
}

/// Parses standard DIMACS CNF text: `c` comment lines, a `p cnf V C` header,
/// then 0-terminated clauses of signed integers. Declared counts are checked
/// against the content.
pub fn parse_dimacs(text: &str) -> Result<CnfFormula, DimacsError> {
    let mut lines = text.lines().map(str::trim);
    let header = loop {
        match lines.next() {
            None => return Err(DimacsError::MissingHeader),
            Some(line) if line.is_empty() || line.starts_with('c') => continue,
            Some(line) => break line,
        }
    };
    let fields: Vec<&str> = header.split_whitespace().collect();
    let (declared_vars, declared_clauses) = match fields.as_slice() {
        ["p", "cnf", vars, clauses] => {
            let vars: u64 =
                vars.parse().map_err(|_| DimacsError::MalformedHeader(header.to_string()))?;
            let clauses: usize =
                clauses.parse().map_err(|_| DimacsError::MalformedHeader(header.to_string()))?;
            (vars, clauses)
        }
        _ => return Err(DimacsError::MalformedHeader(header.to_string())),
    };

    let mut clauses = Vec::new();
    let mut current: Vec<Literal> = Vec::new();
    let mut open = false;
    for line in lines {
        if line.is_empty() || line.starts_with('c') {
            continue;
        }
        for token in line.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| DimacsError::BadToken(token.to_string()))?;
            if value == 0 {
                if token.starts_with('-') {
                    return Err(DimacsError::ZeroLiteral);
                }
                clauses.push(std::mem::take(&mut current));
                open = false;
                continue;
            }
            let var = value.unsigned_abs();
            if var > declared_vars {
                return Err(DimacsError::VariableOutOfRange { var, declared: declared_vars });
            }
            current.push(Literal { var, negated: value < 0 });
            open = true;
        }
    }
    if open {
        return Err(DimacsError::UnterminatedClause);
    }
    if clauses.len() != declared_clauses {
        return Err(DimacsError::ClauseCountMismatch {
            declared: declared_clauses,
            found: clauses.len(),
        });
    }
    Ok(CnfFormula { clauses })
}

/// Renders a formula back to DIMACS text.
pub fn format_dimacs(formula: &CnfFormula) -> String {
    let mut out = format!("p cnf {} {}\n", formula.var_count(), formula.clauses.len());
    for clause in &formula.clauses {
        for lit in clause {
            if lit.negated {
                out.push('-');
            }
            out.push_str(&lit.var.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// A satisfiable instance in the census: its rank, decoded formula, and the
/// oracle's first satisfying line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SatInstance {
    pub rank: u64,
    pub formula: CnfFormula,
    pub line: BitString,
}

/// Decodes ranks `0..n` and keeps the satisfiable ones with the oracle's
/// line. This is the recursive census behind "all instances up to n".
pub fn sat_instances_upto(n: u64, var_cap: u32) -> Result<Vec<SatInstance>, ForgeError> {
    let mut out = Vec::new();
    for rank in 0..n {
        let bits = rank_to_bits_u64(rank);
        let formula = decode_instance(&bits);
        match brute_force_solve(&formula, var_cap) {
            Ok(SolveOutcome::Satisfiable(line)) => out.push(SatInstance { rank, formula, line }),
            Ok(SolveOutcome::Unsatisfiable) => {}
            Err(ForgeError::VarCapExceeded { var_count, cap, .. }) => {
                return Err(ForgeError::VarCapExceeded { var_count, cap, rank: Some(rank) });
            }
            Err(other) => return Err(other),
        }
    }
    Ok(out)
}

/// Rank of `bits` if it fits in a `u64`, used by table-driven solvers.
pub fn small_rank(bits: &BitString) -> Option<u64> {
    bits_to_rank_u64(bits)
}
