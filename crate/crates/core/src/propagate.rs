//! Boolean constraint propagation with MLI-aware watch maintenance.
//!
//! Outside LSCB a clause is skipped as soon as its other watch is
//! satisfied. In LSCB the other watch must additionally sit at a level no
//! higher than the falsified one, or already have a lazy reason low enough;
//! otherwise the clause is inspected and, when it turns out to be a missed
//! lower implication, recorded in `λ`.
use crate::config::Mode;
use crate::formula::{Clause, ClauseRef};
use crate::lit::{Level, Lit};
use crate::solver::Solver;
use crate::state::TrailState;
use crate::trace::Event;

/// Per-literal lists of the clauses watching that literal.
#[derive(Clone, Debug, Default)]
pub struct WatchLists {
    lists: Vec<Vec<ClauseRef>>,
}

impl WatchLists {
    pub fn new(num_vars: u32) -> WatchLists {
        WatchLists {
            lists: vec![Vec::new(); 2 * (num_vars as usize + 1)],
        }
    }

    pub fn get(&self, lit: Lit) -> &[ClauseRef] {
        &self.lists[lit.code()]
    }

    pub(crate) fn push(&mut self, lit: Lit, cref: ClauseRef) {
        self.lists[lit.code()].push(cref);
    }

    pub(crate) fn remove(&mut self, lit: Lit, cref: ClauseRef) {
        let list = &mut self.lists[lit.code()];
        let at = list
            .iter()
            .position(|&c| c == cref)
            .expect("clause missing from watch list");
        list.remove(at);
    }

    pub(crate) fn take(&mut self, lit: Lit) -> Vec<ClauseRef> {
        std::mem::take(&mut self.lists[lit.code()])
    }

    pub(crate) fn put_back(&mut self, lit: Lit, list: Vec<ClauseRef>) {
        debug_assert!(self.lists[lit.code()].is_empty());
        self.lists[lit.code()] = list;
    }

    pub(crate) fn replace(&mut self, lit: Lit, list: Vec<ClauseRef>) {
        self.lists[lit.code()] = list;
    }
}

/// Result of propagating.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PropagationOutcome {
    NoConflict,
    Conflict(ClauseRef),
}

/// Candidate watch to replace `c1` in `clause` (position in the clause).
///
/// Returns the first non-falsified literal of `C \ {c1, c2}`, scanning
/// circularly from `start`. If every literal of `C \ {c2}` is falsified,
/// returns one of maximal level instead, preferring the lowest position and
/// avoiding `c1` when another literal ties.
pub fn search_replacement(
    state: &TrailState,
    clause: &Clause,
    c1: Lit,
    c2: Lit,
    start: usize,
) -> usize {
    let lits = clause.lits();
    let n = lits.len();
    for k in 0..n {
        let p = (start + k) % n;
        let lit = lits[p];
        if lit != c1 && lit != c2 && !state.is_false(lit) {
            return p;
        }
    }
    let mut best: Option<(usize, (Level, bool))> = None;
    for (p, &lit) in lits.iter().enumerate() {
        if lit == c2 {
            continue;
        }
        let key = (state.level(lit), lit != c1);
        if best.is_none_or(|(_, k)| key > k) {
            best = Some((p, key));
        }
    }
    best.expect("clause has at least two literals").0
}

impl Solver {
    fn skip_on(&self, c2: Lit, c1: Lit) -> bool {
        if !self.state.is_true(c2) {
            return false;
        }
        match self.cfg.mode {
            Mode::Lscb => {
                let bound = self.state.level(c1);
                self.state.level(c2) <= bound || self.state.lazy_level(c2) <= bound
            }
            _ => true,
        }
    }

    fn blocker_skips(&self, clause: &Clause, c1: Lit) -> bool {
        let Some(b) = clause.blocker else {
            return false;
        };
        if !self.state.is_true(b) {
            return false;
        }
        match self.cfg.mode {
            Mode::Lscb => self.state.level(b) <= self.state.level(c1),
            _ => true,
        }
    }

    /// Visits every clause watching `¬lit`. `lit` must be the first
    /// literal of `ω`; it is not moved into `τ` here.
    pub fn propagate_literal(&mut self, lit: Lit) -> PropagationOutcome {
        debug_assert_eq!(self.state.next_queued(), Some(lit));
        let c1 = !lit;
        let mut list = self.watches.take(c1);
        let mut outcome = PropagationOutcome::NoConflict;
        let mut keep = 0;
        let mut i = 0;
        while i < list.len() {
            let cref = list[i];
            i += 1;
            let clause = self.formula.clause(cref);
            let c2 = clause.other_watch(c1);

            if self.cfg.blockers && self.blocker_skips(clause, c1) {
                list[keep] = cref;
                keep += 1;
                continue;
            }
            if self.skip_on(c2, c1) {
                if self.cfg.blockers {
                    self.formula.clause_mut(cref).blocker = Some(c2);
                }
                list[keep] = cref;
                keep += 1;
                continue;
            }

            let start = clause.search_from as usize;
            let rpos = search_replacement(&self.state, clause, c1, c2, start);
            let r = clause.lits()[rpos];
            if r == c1 {
                list[keep] = cref;
                keep += 1;
            } else {
                let clause = self.formula.clause_mut(cref);
                clause.move_watch(c1, rpos);
                clause.search_from = rpos as u32;
                self.watches.push(r, cref);
            }

            if !self.state.is_false(r) {
                if self.cfg.blockers && self.state.is_true(r) {
                    self.formula.clause_mut(cref).blocker = Some(r);
                }
                continue;
            }
            if self.state.is_false(c2) {
                outcome = PropagationOutcome::Conflict(cref);
                break;
            }
            let level = self.state.level(r);
            if self.state.is_true(c2) {
                if self.state.level(c2) > level && self.state.lazy_level(c2) > level {
                    self.state.set_lazy(c2, cref, level);
                    self.stats.mli_detected += 1;
                    self.emit(|| Event::SetLazy {
                        lit: c2.to_dimacs(),
                        clause: cref.index() as u32,
                        level: level.get(),
                    });
                }
                continue;
            }
            self.imply(c2, cref, level);
        }
        while i < list.len() {
            list[keep] = list[i];
            keep += 1;
            i += 1;
        }
        list.truncate(keep);
        self.watches.put_back(c1, list);
        outcome
    }

    /// Propagates until `ω` is empty or a conflict is found. On conflict the
    /// literal being propagated stays at the front of `ω`.
    pub fn bcp(&mut self) -> PropagationOutcome {
        while let Some(lit) = self.state.next_queued() {
            if let PropagationOutcome::Conflict(c) = self.propagate_literal(lit) {
                return PropagationOutcome::Conflict(c);
            }
            self.state.pop_next();
            self.stats.propagations += 1;
            let level = self.state.level(lit);
            self.emit(|| Event::Propagate {
                lit: lit.to_dimacs(),
                level: level.get(),
            });
            if self.fine_checks() {
                self.checkpoint(None);
            }
        }
        PropagationOutcome::NoConflict
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{ClauseAdd, Formula};

    fn l(x: i32) -> Lit {
        Lit::from_dimacs(x)
    }

    fn one_clause(lits: &[i32], n: u32) -> Formula {
        let mut f = Formula::new(n);
        let v: Vec<Lit> = lits.iter().map(|&x| l(x)).collect();
        assert!(matches!(f.add_clause(&v), ClauseAdd::Stored(_)));
        f
    }

    #[test]
    fn unassigned_candidate_is_returned() {
        let f = one_clause(&[1, 2, 3], 3);
        let mut s = TrailState::new(3);
        s.enqueue_decision(l(-1));
        let c = f.clause(ClauseRef::new(0));
        assert_eq!(search_replacement(&s, c, l(1), l(2), 0), 2);
    }

    #[test]
    fn falsified_clause_returns_max_level_avoiding_c1() {
        let f = one_clause(&[1, 2, 3], 3);
        let mut s = TrailState::new(3);
        s.enqueue_decision(l(-3));
        s.enqueue_decision(l(-1));
        let c = f.clause(ClauseRef::new(0));
        // c1 = 1 at level 2 is the unique maximum.
        assert_eq!(search_replacement(&s, c, l(1), l(2), 0), 0);
        let mut s = TrailState::new(3);
        s.enqueue_decision(l(-3));
        s.enqueue_implied(l(-1), ClauseRef::new(9), Level::new(1));
        // Tie at level 1: prefer 3 over c1.
        assert_eq!(search_replacement(&s, c, l(1), l(2), 0), 2);
    }

    #[test]
    fn circular_scan_starts_at_hint() {
        let f = one_clause(&[1, 2, 3, 4], 4);
        let mut s = TrailState::new(4);
        s.enqueue_decision(l(-1));
        let c = f.clause(ClauseRef::new(0));
        assert_eq!(search_replacement(&s, c, l(1), l(2), 0), 2);
        assert_eq!(search_replacement(&s, c, l(1), l(2), 3), 3);
    }
}
