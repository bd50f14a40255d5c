//! Executable invariant predicates.
//!
//! | id | name                                   |
//! |----|----------------------------------------|
//! | 1  | weak watched literals                  |
//! | 2  | implied literals                       |
//! | 3  | topological order                      |
//! | 4  | strong watched literals                |
//! | 5  | backward compatible watched literals   |
//! | 6  | lazy reimplication                     |
//! | 7  | lazy backtrack compatible watches      |
//! | 8  | as 7, weakened by the blocker literal  |
//!
//! Watch invariants are checked in both orientations of every watched
//! clause. All checks are full scans and read-only.
use crate::formula::{Clause, ClauseRef, Formula};
use crate::lit::{Lit, Var};
use crate::state::TrailState;
use serde::Serialize;

pub const ALL_INVARIANTS: [u8; 8] = [1, 2, 3, 4, 5, 6, 7, 8];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub invariant: u8,
    #[serde(serialize_with = "ser_clause")]
    pub clause: Option<ClauseRef>,
    #[serde(serialize_with = "ser_lit")]
    pub lit: Option<Lit>,
    pub detail: String,
}

fn ser_clause<S: serde::Serializer>(c: &Option<ClauseRef>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&c.map(|c| c.index()))
}

fn ser_lit<S: serde::Serializer>(l: &Option<Lit>, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_some(&l.map(|l| l.to_dimacs()))
}

/// Violations of invariant `id` in the current state, skipping the clause
/// `exclude` (the conflict being reported, which is falsified by design).
pub fn check(
    state: &TrailState,
    formula: &Formula,
    id: u8,
    exclude: Option<ClauseRef>,
) -> Vec<Violation> {
    match id {
        1 | 4 | 5 | 7 | 8 => check_watches(state, formula, id, exclude),
        2 => check_implied(state, formula),
        3 => check_topological(state, formula),
        6 => check_lazy(state, formula),
        _ => panic!("no invariant {id}"),
    }
}

/// Violations of every invariant in `ids`.
pub fn check_many(
    state: &TrailState,
    formula: &Formula,
    ids: &[u8],
    exclude: Option<ClauseRef>,
) -> Vec<Violation> {
    ids.iter()
        .flat_map(|&id| check(state, formula, id, exclude))
        .collect()
}

fn watch_holds(state: &TrailState, clause: &Clause, id: u8, c1: Lit, c2: Lit) -> bool {
    if !state.in_tau(!c1) {
        return true;
    }
    let d1 = state.level(c1);
    let strong = state.is_true(c2);
    let lazy_ok = strong && (state.level(c2) <= d1 || state.lazy_level(c2) <= d1);
    match id {
        1 => !state.in_tau(!c2),
        4 => strong,
        5 => strong && state.level(c2) <= d1,
        7 => lazy_ok,
        8 => {
            lazy_ok
                || clause
                    .blocker()
                    .is_some_and(|b| state.is_true(b) && state.level(b) <= d1)
        }
        _ => unreachable!(),
    }
}

fn check_watches(
    state: &TrailState,
    formula: &Formula,
    id: u8,
    exclude: Option<ClauseRef>,
) -> Vec<Violation> {
    let mut out = Vec::new();
    for (cref, clause) in formula.clauses() {
        if Some(cref) == exclude {
            continue;
        }
        let Some([a, b]) = clause.watched() else {
            continue;
        };
        for (c1, c2) in [(a, b), (b, a)] {
            if !watch_holds(state, clause, id, c1, c2) {
                out.push(Violation {
                    invariant: id,
                    clause: Some(cref),
                    lit: Some(c1),
                    detail: format!(
                        "{cref:?}: c1={c1:?}@{} falsified in τ, c2={c2:?} {:?}@{} (lazy level {})",
                        state.level(c1),
                        state.value(c2),
                        state.level(c2),
                        state.lazy_level(c2),
                    ),
                });
            }
        }
    }
    out
}

fn check_implied(state: &TrailState, formula: &Formula) -> Vec<Violation> {
    let mut out = Vec::new();
    for &lit in state.trail() {
        if state.is_decision(lit) {
            continue;
        }
        let problem = match state.reason(lit) {
            None => Some("neither decision nor implied".to_string()),
            Some(r) => {
                let lits = formula.clause(r).lits();
                if !lits.contains(&lit) {
                    Some(format!("reason {r:?} does not contain it"))
                } else if let Some(&bad) = lits.iter().find(|&&l| l != lit && !state.is_false(l)) {
                    Some(format!("reason {r:?} has non-falsified {bad:?}"))
                } else {
                    None
                }
            }
        };
        if let Some(detail) = problem {
            out.push(Violation {
                invariant: 2,
                clause: state.reason(lit),
                lit: Some(lit),
                detail: format!("{lit:?}: {detail}"),
            });
        }
    }
    out
}

fn check_topological(state: &TrailState, formula: &Formula) -> Vec<Violation> {
    let mut out = Vec::new();
    for (p, &lit) in state.trail().iter().enumerate() {
        let Some(r) = state.reason(lit) else {
            continue;
        };
        for &other in formula.clause(r).lits() {
            if other == lit {
                continue;
            }
            let q = state.pos(!other);
            if q.is_none_or(|q| q > p) {
                out.push(Violation {
                    invariant: 3,
                    clause: Some(r),
                    lit: Some(lit),
                    detail: format!("{lit:?} at {p} precedes ¬{other:?} at {q:?} of its reason {r:?}"),
                });
            }
        }
    }
    out
}

fn check_lazy(state: &TrailState, formula: &Formula) -> Vec<Violation> {
    let mut out = Vec::new();
    for v in 1..=state.num_vars() {
        let Some(cref) = state.lazy[v] else {
            continue;
        };
        let var = Var::new(v as u32);
        let lit = [var.positive(), var.negative()]
            .into_iter()
            .find(|&l| state.is_true(l));
        let lits = formula.clause(cref).lits();
        let problem = match lit {
            None => Some(format!("λ set on unassigned {var:?}")),
            Some(lit) if !lits.contains(&lit) => Some(format!("{cref:?} lacks {lit:?}")),
            Some(lit) => {
                let residual = state.level_without(lits, lit);
                if let Some(&bad) = lits.iter().find(|&&l| l != lit && !state.is_false(l)) {
                    Some(format!("{cref:?} has non-falsified {bad:?}"))
                } else if residual >= state.level(lit) {
                    Some(format!(
                        "residual level {residual} not below δ({lit:?})={}",
                        state.level(lit)
                    ))
                } else if residual != state.lazy_level(lit) {
                    Some(format!(
                        "cached lazy level {} differs from {residual}",
                        state.lazy_level(lit)
                    ))
                } else {
                    None
                }
            }
        };
        if let Some(detail) = problem {
            out.push(Violation {
                invariant: 6,
                clause: Some(cref),
                lit,
                detail,
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lit::Level;

    fn l(x: i32) -> Lit {
        Lit::from_dimacs(x)
    }

    fn setup() -> (TrailState, Formula) {
        let f = Formula::from_dimacs_clauses(3, &[vec![1, 2], vec![-1, 3]]);
        (TrailState::new(3), f)
    }

    #[test]
    fn fresh_state_has_no_violations() {
        let (s, f) = setup();
        assert!(check_many(&s, &f, &ALL_INVARIANTS, None).is_empty());
    }

    #[test]
    fn propagated_falsified_watch_without_implication() {
        let (mut s, f) = setup();
        s.enqueue_decision(l(-1));
        s.pop_next();
        // {1, 2}: ¬1 in τ and 2 unassigned: weak holds, strong fails.
        assert!(check(&s, &f, 1, None).is_empty());
        let v = check(&s, &f, 4, None);
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].clause, Some(ClauseRef::new(0)));
        assert_eq!(check(&s, &f, 4, Some(ClauseRef::new(0))), vec![]);
        s.enqueue_decision(l(-2));
        s.pop_next();
        assert_eq!(check(&s, &f, 1, None).len(), 2);
    }

    #[test]
    fn level_compatibility_distinguishes_five_and_seven() {
        let (mut s, f) = setup();
        s.enqueue_decision(l(2));
        s.enqueue_decision(l(-1));
        s.pop_next();
        s.pop_next();
        // {1, 2}: 2 true at level 1 ≤ δ(1) = 2.
        assert!(check(&s, &f, 5, None).is_empty());
        let mut s = TrailState::new(3);
        s.enqueue_decision(l(-1));
        s.enqueue_decision(l(2));
        s.pop_next();
        s.pop_next();
        assert_eq!(check(&s, &f, 5, None).len(), 1);
        assert_eq!(check(&s, &f, 7, None).len(), 1);
        s.set_lazy(l(2), ClauseRef::new(0), Level::new(1));
        assert!(check(&s, &f, 7, None).is_empty());
        assert!(check(&s, &f, 6, None).is_empty());
    }

    #[test]
    fn bad_reason_is_reported() {
        let (mut s, f) = setup();
        s.enqueue_implied(l(3), ClauseRef::new(1), Level::ZERO);
        assert_eq!(check(&s, &f, 2, None).len(), 1);
        assert_eq!(check(&s, &f, 3, None).len(), 1);
    }
}
