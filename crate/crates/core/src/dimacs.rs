//! DIMACS CNF reading and (normalized) writing.
//!
//! SATLIB benchmark files end with a `%` line followed by a stray `0`;
//! parsing stops at the `%` marker so those files load unchanged.
use crate::formula::Formula;
use crate::lit::Lit;
use std::fmt::Write as _;
use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ParseError {
    #[error("line {line}: malformed header: {detail}")]
    MalformedHeader { line: usize, detail: String },
    #[error("line {line}: literal {lit} exceeds the declared {num_vars} variables")]
    LiteralOutOfRange { line: usize, lit: i64, num_vars: u32 },
    #[error("line {line}: clause is missing its terminating 0")]
    MissingTerminator { line: usize },
    #[error("line {line}: expected an integer, found {token:?}")]
    InvalidToken { line: usize, token: String },
}

pub fn parse_dimacs(text: &str) -> Result<Formula, ParseError> {
    let mut formula: Option<Formula> = None;
    let mut clause: Vec<Lit> = Vec::new();
    let mut clause_line = 0;
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        last_line = line;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('c') {
            continue;
        }
        if trimmed.starts_with('%') {
            break;
        }
        if trimmed.starts_with('p') {
            if formula.is_some() {
                return Err(ParseError::MalformedHeader {
                    line,
                    detail: "duplicate header".into(),
                });
            }
            formula = Some(parse_header(trimmed, line)?);
            continue;
        }
        let Some(f) = formula.as_mut() else {
            return Err(ParseError::MalformedHeader {
                line,
                detail: "clause data before the 'p cnf' header".into(),
            });
        };
        for token in trimmed.split_whitespace() {
            let value: i64 = token.parse().map_err(|_| ParseError::InvalidToken {
                line,
                token: token.to_string(),
            })?;
            if value == 0 {
                f.add_clause(&clause);
                clause.clear();
                continue;
            }
            if value.unsigned_abs() > u64::from(f.num_vars()) {
                return Err(ParseError::LiteralOutOfRange {
                    line,
                    lit: value,
                    num_vars: f.num_vars(),
                });
            }
            if clause.is_empty() {
                clause_line = line;
            }
            clause.push(Lit::from_dimacs(value as i32));
        }
    }

    let Some(f) = formula else {
        return Err(ParseError::MalformedHeader {
            line: last_line.max(1),
            detail: "missing 'p cnf' header".into(),
        });
    };
    if !clause.is_empty() {
        return Err(ParseError::MissingTerminator { line: clause_line });
    }
    Ok(f)
}

fn parse_header(line_text: &str, line: usize) -> Result<Formula, ParseError> {
    let bad = |detail: &str| ParseError::MalformedHeader {
        line,
        detail: detail.to_string(),
    };
    let fields: Vec<&str> = line_text.split_whitespace().collect();
    if fields.len() != 4 || fields[0] != "p" || fields[1] != "cnf" {
        return Err(bad("expected 'p cnf <vars> <clauses>'"));
    }
    let vars: u32 = fields[2].parse().map_err(|_| bad("variable count"))?;
    let _clauses: u64 = fields[3].parse().map_err(|_| bad("clause count"))?;
    if vars >= (1 << 30) {
        return Err(bad("too many variables"));
    }
    Ok(Formula::new(vars))
}

/// Writes the normalized original clauses (units included; an empty clause
/// if the formula is trivially unsatisfiable).
pub fn write_dimacs(formula: &Formula) -> String {
    let clauses: Vec<_> = formula.original_clauses().collect();
    let count = clauses.len() + usize::from(formula.is_trivially_unsat());
    let mut out = format!("p cnf {} {}\n", formula.num_vars(), count);
    for (_, c) in clauses {
        for lit in c.lits() {
            let _ = write!(out, "{} ", lit.to_dimacs());
        }
        out.push_str("0\n");
    }
    if formula.is_trivially_unsat() {
        out.push_str("0\n");
    }
    out
}
