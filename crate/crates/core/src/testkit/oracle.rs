//! Reference satisfiability checks sharing nothing with the solver but the
//! `Formula` type: a truth table for small formulas and a plain DPLL
//! (unit propagation, chronological branching, no learning) above that.
use crate::formula::Formula;
use crate::lit::Lit;
use thiserror::Error;

/// Largest formula decided by exhaustive enumeration.
pub const TRUTH_TABLE_LIMIT: u32 = 20;
/// Largest formula the oracle accepts at all.
pub const DPLL_LIMIT: u32 = 60;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Satisfiability {
    Sat,
    Unsat,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum OracleError {
    #[error("{num_vars} variables exceed the oracle limit of {limit}")]
    TooLarge { num_vars: u32, limit: u32 },
}

fn check_size(f: &Formula, limit: u32) -> Result<(), OracleError> {
    if f.num_vars() > limit {
        Err(OracleError::TooLarge {
            num_vars: f.num_vars(),
            limit,
        })
    } else {
        Ok(())
    }
}

fn int_clauses(f: &Formula) -> Vec<Vec<i32>> {
    f.original_clauses()
        .map(|(_, c)| c.lits().iter().map(|l| l.to_dimacs()).collect())
        .collect()
}

/// Exact verdict for formulas of at most [`DPLL_LIMIT`] variables.
pub fn brute_force(f: &Formula) -> Result<Satisfiability, OracleError> {
    check_size(f, DPLL_LIMIT)?;
    if f.is_trivially_unsat() {
        return Ok(Satisfiability::Unsat);
    }
    let clauses = int_clauses(f);
    let sat = if f.num_vars() <= TRUTH_TABLE_LIMIT {
        truth_table(f.num_vars(), &clauses).is_some()
    } else {
        dpll(f.num_vars(), &clauses).is_some()
    };
    Ok(if sat {
        Satisfiability::Sat
    } else {
        Satisfiability::Unsat
    })
}

/// Whether every model of `f` satisfies `clause`, decided as
/// unsatisfiability of `f ∧ ¬clause`.
pub fn entails(f: &Formula, clause: &[Lit]) -> Result<bool, OracleError> {
    check_size(f, DPLL_LIMIT)?;
    if f.is_trivially_unsat() {
        return Ok(true);
    }
    let mut clauses = int_clauses(f);
    clauses.extend(clause.iter().map(|l| vec![-l.to_dimacs()]));
    Ok(if f.num_vars() <= TRUTH_TABLE_LIMIT {
        truth_table(f.num_vars(), &clauses).is_none()
    } else {
        dpll(f.num_vars(), &clauses).is_none()
    })
}

/// Enumerates all assignments; returns the first model as a bit mask
/// (bit `v - 1` is variable `v`).
pub fn truth_table(num_vars: u32, clauses: &[Vec<i32>]) -> Option<u64> {
    assert!(num_vars <= 26, "truth table limited to 26 variables");
    let masks: Vec<(u64, u64)> = clauses
        .iter()
        .map(|c| {
            c.iter().fold((0, 0), |(pos, neg), &l| {
                let bit = 1u64 << (l.unsigned_abs() - 1);
                if l > 0 {
                    (pos | bit, neg)
                } else {
                    (pos, neg | bit)
                }
            })
        })
        .collect();
    (0..1u64 << num_vars).find(|&a| masks.iter().all(|&(pos, neg)| (a & pos) | (!a & neg) != 0))
}

/// Recursive DPLL. Returns a model indexed by variable (index 0 unused).
pub fn dpll(num_vars: u32, clauses: &[Vec<i32>]) -> Option<Vec<bool>> {
    if clauses.iter().any(|c| c.is_empty()) {
        return None;
    }
    let n = num_vars as usize;
    let mut occurs: Vec<Vec<usize>> = vec![Vec::new(); 2 * n + 2];
    for (i, c) in clauses.iter().enumerate() {
        for &l in c {
            occurs[code(l)].push(i);
        }
    }
    let mut d = Dpll {
        clauses,
        occurs,
        value: vec![0; n + 1],
        trail: Vec::new(),
    };
    for c in clauses {
        if c.len() == 1 && !d.assign(c[0]) {
            return None;
        }
    }
    if d.search() {
        Some(d.value.iter().map(|&v| v > 0).collect())
    } else {
        None
    }
}

fn code(l: i32) -> usize {
    2 * l.unsigned_abs() as usize + usize::from(l < 0)
}

struct Dpll<'a> {
    clauses: &'a [Vec<i32>],
    occurs: Vec<Vec<usize>>,
    /// +1 true, -1 false, 0 unassigned.
    value: Vec<i8>,
    trail: Vec<i32>,
}

impl Dpll<'_> {
    fn lit_value(&self, l: i32) -> i8 {
        let v = self.value[l.unsigned_abs() as usize];
        if l > 0 {
            v
        } else {
            -v
        }
    }

    /// Assigns `l` and propagates units; false on conflict.
    fn assign(&mut self, l: i32) -> bool {
        match self.lit_value(l) {
            1 => return true,
            -1 => return false,
            _ => {}
        }
        let mut queue = vec![l];
        while let Some(l) = queue.pop() {
            match self.lit_value(l) {
                1 => continue,
                -1 => return false,
                _ => {}
            }
            self.value[l.unsigned_abs() as usize] = if l > 0 { 1 } else { -1 };
            self.trail.push(l);
            for &ci in &self.occurs[code(-l)] {
                let mut unassigned = None;
                let mut open = 0;
                let mut satisfied = false;
                for &x in &self.clauses[ci] {
                    match self.lit_value(x) {
                        1 => {
                            satisfied = true;
                            break;
                        }
                        0 => {
                            open += 1;
                            unassigned = Some(x);
                        }
                        _ => {}
                    }
                }
                if satisfied {
                    continue;
                }
                match (open, unassigned) {
                    (0, _) => return false,
                    (1, Some(u)) => queue.push(u),
                    _ => {}
                }
            }
        }
        true
    }

    fn undo_to(&mut self, len: usize) {
        while self.trail.len() > len {
            let l = self.trail.pop().expect("trail entry");
            self.value[l.unsigned_abs() as usize] = 0;
        }
    }

    fn search(&mut self) -> bool {
        let branch = self.clauses.iter().find_map(|c| {
            if c.iter().any(|&x| self.lit_value(x) == 1) {
                None
            } else {
                c.iter().copied().find(|&x| self.lit_value(x) == 0)
            }
        });
        let Some(l) = branch else {
            return true;
        };
        let mark = self.trail.len();
        for choice in [l, -l] {
            if self.assign(choice) && self.search() {
                return true;
            }
            self.undo_to(mark);
        }
        false
    }
}
