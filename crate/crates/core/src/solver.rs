//! The CDCL loop: propagate, decide, analyze, backtrack, learn.
use crate::analyze::LearnedClause;
use crate::checker::{self, Violation};
use crate::config::{CheckLevel, ConfigError, Mode, RestartPolicy, SolverConfig};
use crate::formula::{ClauseAdd, ClauseRef, Formula};
use crate::lit::{Level, Lit, Var};
use crate::propagate::{PropagationOutcome, WatchLists};
use crate::restart::{Agility, RestartSchedule};
use crate::state::TrailState;
use crate::trace::Event;
use crate::vsids::Vsids;
use serde::Serialize;

/// Violations kept verbatim; further ones are only counted.
const MAX_KEPT_VIOLATIONS: usize = 64;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Stats {
    pub propagations: u64,
    pub decisions: u64,
    pub conflicts: u64,
    pub learned: u64,
    pub reimplications: u64,
    pub mli_detected: u64,
    pub restarts: u64,
}

/// A total assignment, indexed by variable.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Model {
    values: Vec<bool>,
}

impl Model {
    pub fn value(&self, var: Var) -> bool {
        self.values[var.index()]
    }

    /// Values indexed by variable; index 0 is unused.
    pub fn as_slice(&self) -> &[bool] {
        &self.values
    }

    pub fn num_vars(&self) -> usize {
        self.values.len() - 1
    }

    /// The model as literals, in variable order.
    pub fn lits(&self) -> impl Iterator<Item = Lit> + '_ {
        (1..self.values.len()).map(|i| Var::new(i as u32).lit(self.values[i]))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Sat(Model),
    Unsat,
}

impl Verdict {
    pub fn is_sat(&self) -> bool {
        matches!(self, Verdict::Sat(_))
    }
}

/// A learned clause as it came out of analysis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedRecord {
    pub lits: Vec<Lit>,
    pub minimized: bool,
    /// Every literal was false when the clause was derived.
    pub falsified: bool,
}

/// What conflict handling ended with.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConflictResolution {
    /// The clause finally installed; `None` when the formula is UNSAT.
    pub learned: Option<LearnedClause>,
    /// Conflicts handled, counting each re-conflict after backtracking.
    pub conflicts: u64,
}

/// Destination of the backtrack after learning `learned`.
///
/// NCB always backjumps to the second-highest level. The chronological
/// modes backtrack a single level when the jump would exceed
/// `cb_threshold` levels, so a threshold of 1 is purely chronological.
pub fn choose_backtrack_level(learned: &LearnedClause, cfg: &SolverConfig) -> Level {
    assert!(learned.level > Level::ZERO, "nothing to backtrack from level 0");
    let jump = learned.level.get() - learned.second_level.get();
    if cfg.mode != Mode::Ncb && jump > cfg.cb_threshold {
        learned.level.pred()
    } else {
        learned.second_level
    }
}

#[derive(Clone, Debug)]
pub struct Solver {
    pub(crate) cfg: SolverConfig,
    pub(crate) formula: Formula,
    pub(crate) state: TrailState,
    pub(crate) watches: WatchLists,
    pub(crate) vsids: Vsids,
    agility: Agility,
    schedule: RestartSchedule,
    pub(crate) stats: Stats,
    trace: Vec<Event>,
    violations: Vec<Violation>,
    violation_counts: [u64; 9],
    learned_log: Vec<LearnedRecord>,
    unsat: bool,
    started: bool,
    /// Conflict clause whose learned clause is not installed yet; the
    /// checkpoint after backtracking skips it.
    pub(crate) pending: Option<ClauseRef>,
}

impl Solver {
    pub fn new(num_vars: u32, cfg: SolverConfig) -> Result<Solver, ConfigError> {
        Solver::from_formula(Formula::new(num_vars), cfg)
    }

    pub fn from_formula(formula: Formula, cfg: SolverConfig) -> Result<Solver, ConfigError> {
        cfg.validate()?;
        let n = formula.num_vars();
        let mut solver = Solver {
            state: TrailState::new(n),
            watches: WatchLists::new(n),
            vsids: Vsids::new(n, cfg.vsids_decay),
            agility: Agility::new(cfg.agility_decay, cfg.agility_limit),
            schedule: RestartSchedule::new(),
            stats: Stats::default(),
            trace: Vec::new(),
            violations: Vec::new(),
            violation_counts: [0; 9],
            learned_log: Vec::new(),
            unsat: false,
            started: false,
            pending: None,
            formula,
            cfg,
        };
        solver.reset();
        Ok(solver)
    }

    /// Rebuilds the trail and watch lists from the clause store.
    fn reset(&mut self) {
        let n = self.formula.num_vars();
        self.state = TrailState::new(n);
        self.watches = WatchLists::new(n);
        self.unsat = self.formula.is_trivially_unsat();
        let refs: Vec<ClauseRef> = self.formula.clauses().map(|(r, _)| r).collect();
        for cref in refs {
            let clause = self.formula.clause_mut(cref);
            if clause.is_unit() {
                continue;
            }
            clause.set_watches(0, 1);
            clause.blocker = Some(clause.lits()[1]);
            clause.search_from = 0;
            let [a, b] = clause.watched().expect("watched clause");
            self.watches.push(a, cref);
            self.watches.push(b, cref);
        }
        let units: Vec<(ClauseRef, Lit)> = self.formula.units().collect();
        for (cref, lit) in units {
            if self.state.is_false(lit) {
                self.unsat = true;
            } else if !self.state.is_true(lit) {
                self.imply(lit, cref, Level::ZERO);
            }
        }
    }

    /// Adds an original clause. Clauses added after solving start a fresh
    /// search that keeps learned clauses and heuristic scores.
    pub fn add_clause(&mut self, lits: &[Lit]) -> ClauseAdd {
        let added = self.formula.add_clause(lits);
        if self.started {
            self.started = false;
            self.reset();
            return added;
        }
        match added {
            ClauseAdd::Stored(cref) => {
                let clause = self.formula.clause(cref);
                if let Some([a, b]) = clause.watched() {
                    // Nothing is propagated yet, so any two watches are valid.
                    debug_assert_eq!(self.state.head(), 0);
                    self.watches.push(a, cref);
                    self.watches.push(b, cref);
                } else {
                    let lit = clause.lits()[0];
                    if self.state.is_false(lit) {
                        self.unsat = true;
                    } else if !self.state.is_true(lit) {
                        self.imply(lit, cref, Level::ZERO);
                    }
                }
            }
            ClauseAdd::Empty => self.unsat = true,
            ClauseAdd::Tautology => {}
        }
        added
    }

    pub fn solve(&mut self) -> Verdict {
        if self.started {
            self.reset();
        }
        self.started = true;
        if self.unsat {
            return Verdict::Unsat;
        }
        loop {
            match self.propagate() {
                PropagationOutcome::Conflict(cref) => {
                    if self.handle_conflict(cref).learned.is_none() {
                        return Verdict::Unsat;
                    }
                }
                PropagationOutcome::NoConflict => {
                    if self.state.is_complete() {
                        return Verdict::Sat(self.model().expect("complete trail"));
                    }
                    if self.maybe_restart() {
                        continue;
                    }
                    self.decide();
                }
            }
        }
    }

    /// Runs BCP and the coarse checkpoint after it.
    pub fn propagate(&mut self) -> PropagationOutcome {
        self.started = true;
        let outcome = self.bcp();
        if self.coarse_checks() {
            let exclude = match outcome {
                PropagationOutcome::Conflict(c) => Some(c),
                PropagationOutcome::NoConflict => None,
            };
            self.checkpoint(exclude);
        }
        outcome
    }

    /// Picks the most active unassigned variable with its saved phase.
    pub fn decide(&mut self) -> Lit {
        let state = &self.state;
        let var = self
            .vsids
            .pick(|v| !state.is_assigned(v))
            .expect("decide called with every variable assigned");
        let lit = var.lit(self.vsids.saved_phase(var));
        self.decide_literal(lit);
        lit
    }

    pub fn decide_literal(&mut self, lit: Lit) {
        assert!(!self.state.is_assigned(lit.var()), "{lit:?} already assigned");
        self.started = true;
        self.stats.decisions += 1;
        self.state.enqueue_decision(lit);
        self.on_assign(lit);
        let level = self.state.decision_level();
        self.emit(|| Event::Decide {
            lit: lit.to_dimacs(),
            level: level.get(),
        });
        if self.coarse_checks() {
            self.checkpoint(None);
        }
    }

    /// Analyzes the falsified clause `conflict`, backtracks and installs the
    /// learned clause. Under Analyze-1 a learned clause that is falsified
    /// again after backtracking is analyzed again instead of installed.
    pub fn handle_conflict(&mut self, conflict: ClauseRef) -> ConflictResolution {
        let mut lits = self.formula.clause(conflict).lits().to_vec();
        let mut stored = Some(conflict);
        let mut conflicts = 0;
        loop {
            conflicts += 1;
            self.stats.conflicts += 1;
            self.schedule.on_conflict();
            let level = self.state.level_of(&lits);
            self.emit(|| Event::Conflict {
                clause: stored.map(|c| c.index() as u32),
                level: level.get(),
            });
            if level == Level::ZERO {
                self.unsat = true;
                return ConflictResolution {
                    learned: None,
                    conflicts,
                };
            }

            let analysis = self.analyze(&lits, self.cfg.analyze);
            self.trace_steps(&analysis.steps);
            for &v in &analysis.involved {
                self.vsids.bump(v);
            }
            self.vsids.decay();
            let mut learned = analysis.learned;
            self.log_learned(&learned.lits, false);
            if self.cfg.minimize && learned.level > Level::ZERO {
                learned = self.minimize(&learned);
                self.log_learned(&learned.lits, true);
            }
            if learned.level == Level::ZERO {
                self.unsat = true;
                self.emit(|| Event::Learn {
                    clause: None,
                    lits: learned.lits.iter().map(|l| l.to_dimacs()).collect(),
                    level: 0,
                });
                return ConflictResolution {
                    learned: None,
                    conflicts,
                };
            }

            let target = choose_backtrack_level(&learned, &self.cfg);
            self.pending = stored;
            self.backtrack(target);
            self.pending = None;
            let asserting = learned.asserting.expect("asserting literal above level 0");
            if self.state.is_false(asserting) {
                // Reimplied below the target: the clause conflicts again.
                assert!(
                    self.cfg.mode == Mode::Lscb && self.cfg.analyze == crate::AnalyzeStrategy::Analyze1,
                    "learned clause falsified after backtracking"
                );
                lits = learned.lits;
                stored = None;
                continue;
            }
            self.install_learned(&learned, stored);
            return ConflictResolution {
                learned: Some(learned),
                conflicts,
            };
        }
    }

    fn log_learned(&mut self, lits: &[Lit], minimized: bool) {
        if self.cfg.record_learned {
            let falsified = lits.iter().all(|&l| self.state.is_false(l));
            self.learned_log.push(LearnedRecord {
                lits: lits.to_vec(),
                minimized,
                falsified,
            });
        }
    }

    /// Stores `learned` (reusing the conflict clause when identical),
    /// watches its asserting literal and a second-level literal, and
    /// implies the asserting literal.
    fn install_learned(&mut self, learned: &LearnedClause, conflict: Option<ClauseRef>) {
        let asserting = learned.asserting.expect("asserting literal");
        debug_assert!(!self.state.is_assigned(asserting.var()));
        debug_assert!(learned
            .lits
            .iter()
            .all(|&l| l == asserting || self.state.is_false(l)));
        let level = self.state.level_without(&learned.lits, asserting);

        // Asserting literal first, then the highest remaining literal.
        let mut lits = learned.lits.clone();
        let a = lits.iter().position(|&l| l == asserting).expect("asserting literal in clause");
        lits.swap(0, a);
        if lits.len() > 1 {
            let b = (1..lits.len())
                .max_by_key(|&i| (self.state.level(lits[i]), std::cmp::Reverse(i)))
                .expect("second literal");
            lits.swap(1, b);
        }

        let same_as_conflict = conflict.filter(|&c| {
            let existing = self.formula.clause(c).lits();
            existing.len() == lits.len() && lits.iter().all(|l| existing.contains(l))
        });
        let cref = match same_as_conflict {
            Some(c) => {
                self.rewatch(c, lits[0], lits.get(1).copied());
                c
            }
            None => match self.formula.add_learned(&lits) {
                ClauseAdd::Stored(c) => {
                    if let Some([x, y]) = self.formula.clause(c).watched() {
                        self.watches.push(x, c);
                        self.watches.push(y, c);
                    }
                    c
                }
                other => unreachable!("learned clause stored as {other:?}"),
            },
        };
        self.stats.learned += 1;
        self.emit(|| Event::Learn {
            clause: Some(cref.index() as u32),
            lits: lits.iter().map(|l| l.to_dimacs()).collect(),
            level: learned.level.get(),
        });
        self.imply(asserting, cref, level);
    }

    fn rewatch(&mut self, cref: ClauseRef, a: Lit, b: Option<Lit>) {
        let Some(b) = b else { return };
        let old = self.formula.clause(cref).watched().expect("watched clause");
        for lit in old {
            self.watches.remove(lit, cref);
        }
        let clause = self.formula.clause_mut(cref);
        let pa = clause.lits().iter().position(|&l| l == a).expect("watch a");
        let pb = clause.lits().iter().position(|&l| l == b).expect("watch b");
        clause.set_watches(pa, pb);
        clause.blocker = Some(b);
        self.watches.push(a, cref);
        self.watches.push(b, cref);
    }

    /// Restarts when the policy allows it. Returns whether it did.
    pub fn maybe_restart(&mut self) -> bool {
        if self.cfg.restarts == RestartPolicy::Off
            || self.state.decision_level() == Level::ZERO
            || !self.schedule.due(&self.agility)
        {
            return false;
        }
        self.backtrack(Level::ZERO);
        self.schedule.on_restart();
        self.stats.restarts += 1;
        self.emit(|| Event::Restart);
        true
    }

    pub(crate) fn imply(&mut self, lit: Lit, cref: ClauseRef, level: Level) {
        self.state.enqueue_implied(lit, cref, level);
        self.on_assign(lit);
        self.emit(|| Event::Imply {
            lit: lit.to_dimacs(),
            level: level.get(),
            clause: cref.index() as u32,
        });
    }

    pub(crate) fn on_assign(&mut self, lit: Lit) {
        let flipped = self.vsids.saved_phase(lit.var()) != lit.is_positive();
        self.agility.record(flipped);
        self.vsids.save_phase(lit);
    }

    pub(crate) fn emit(&mut self, event: impl FnOnce() -> Event) {
        if self.cfg.trace {
            self.trace.push(event());
        }
    }

    pub(crate) fn fine_checks(&self) -> bool {
        self.cfg.check_level >= CheckLevel::Fine
    }

    pub(crate) fn coarse_checks(&self) -> bool {
        self.cfg.check_level >= CheckLevel::Coarse
    }

    /// Runs every applicable invariant check on the current state.
    pub(crate) fn checkpoint(&mut self, exclude: Option<ClauseRef>) {
        let last = if self.cfg.blockers { 8 } else { 7 };
        for id in 1..=last {
            for v in checker::check(&self.state, &self.formula, id, exclude) {
                self.violation_counts[id as usize] += 1;
                self.emit(|| Event::Violation {
                    invariant: v.invariant,
                    detail: v.detail.clone(),
                });
                if self.violations.len() < MAX_KEPT_VIOLATIONS {
                    self.violations.push(v);
                }
            }
        }
    }

    pub fn config(&self) -> &SolverConfig {
        &self.cfg
    }

    /// Switches the conflict analysis strategy for subsequent conflicts.
    pub fn set_analyze(&mut self, strategy: crate::AnalyzeStrategy) {
        self.cfg.analyze = strategy;
    }

    pub fn state(&self) -> &TrailState {
        &self.state
    }

    /// Direct access to the trail, for scripted scenarios in tests.
    pub fn state_mut(&mut self) -> &mut TrailState {
        &mut self.state
    }

    pub fn formula(&self) -> &Formula {
        &self.formula
    }

    pub fn stats(&self) -> &Stats {
        &self.stats
    }

    pub fn watch_list(&self, lit: Lit) -> &[ClauseRef] {
        self.watches.get(lit)
    }

    /// Replaces the order of `wl(lit)`; the set of clauses must not change.
    pub fn reorder_watch_list(&mut self, lit: Lit, order: Vec<ClauseRef>) {
        let mut want = order.clone();
        let mut have = self.watches.get(lit).to_vec();
        want.sort_unstable();
        have.sort_unstable();
        assert_eq!(want, have, "reordering must keep the same clauses");
        self.watches.replace(lit, order);
    }

    /// The first violations observed (at most a fixed number are kept).
    pub fn violations(&self) -> &[Violation] {
        &self.violations
    }

    /// Number of violations observed for invariant `id`.
    pub fn violation_count(&self, id: u8) -> u64 {
        self.violation_counts[id as usize]
    }

    pub fn take_trace(&mut self) -> Vec<Event> {
        std::mem::take(&mut self.trace)
    }

    pub fn learned_log(&self) -> &[LearnedRecord] {
        &self.learned_log
    }

    /// The assignment when every variable is assigned.
    pub fn model(&self) -> Option<Model> {
        if !self.state.is_complete() {
            return None;
        }
        let mut values = vec![false; self.formula.num_vars() as usize + 1];
        for &lit in self.state.trail() {
            values[lit.var().index()] = lit.is_positive();
        }
        Some(Model { values })
    }
}

/// Solves `formula` under `cfg`.
pub fn solve(formula: Formula, cfg: SolverConfig) -> Result<(Verdict, Stats), ConfigError> {
    let mut solver = Solver::from_formula(formula, cfg)?;
    let verdict = solver.solve();
    Ok((verdict, solver.stats))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn learned(level: u32, second: u32) -> LearnedClause {
        LearnedClause {
            lits: Vec::new(),
            level: Level::new(level),
            second_level: Level::new(second),
            asserting: None,
        }
    }

    fn cfg(mode: Mode, threshold: u32) -> SolverConfig {
        SolverConfig {
            cb_threshold: threshold,
            ..SolverConfig::with_mode(mode)
        }
    }

    #[test]
    fn backtrack_level_policy() {
        assert_eq!(choose_backtrack_level(&learned(2, 1), &cfg(Mode::Ncb, 100)), Level::new(1));
        assert_eq!(choose_backtrack_level(&learned(500, 1), &cfg(Mode::Lscb, 100)), Level::new(499));
        assert_eq!(choose_backtrack_level(&learned(5, 3), &cfg(Mode::Lscb, 100)), Level::new(3));
        assert_eq!(choose_backtrack_level(&learned(500, 1), &cfg(Mode::Ncb, 100)), Level::new(1));
        // Threshold 1 never jumps more than one level.
        assert_eq!(choose_backtrack_level(&learned(5, 1), &cfg(Mode::Wcb, 1)), Level::new(4));
        assert_eq!(choose_backtrack_level(&learned(5, 4), &cfg(Mode::Wcb, 1)), Level::new(4));
    }

    fn f(n: u32, clauses: &[&[i32]]) -> Formula {
        let v: Vec<Vec<i32>> = clauses.iter().map(|c| c.to_vec()).collect();
        Formula::from_dimacs_clauses(n, &v)
    }

    #[test]
    fn empty_formula_is_sat() {
        let (v, _) = solve(Formula::new(0), SolverConfig::default()).unwrap();
        assert_eq!(v, Verdict::Sat(Model { values: vec![false] }));
    }

    #[test]
    fn contradictory_units_are_unsat() {
        for mode in Mode::ALL {
            let (v, _) = solve(f(1, &[&[1], &[-1]]), SolverConfig::with_mode(mode)).unwrap();
            assert_eq!(v, Verdict::Unsat);
        }
    }

    #[test]
    fn fresh_decision_is_lowest_var_negative() {
        let mut s = Solver::from_formula(f(3, &[&[1, 2, 3]]), SolverConfig::default()).unwrap();
        assert_eq!(s.decide(), Lit::from_dimacs(-1));
    }

    #[test]
    fn small_unsat_in_every_mode() {
        let clauses: &[&[i32]] = &[&[1, 2], &[1, -2], &[-1, 2], &[-1, -2]];
        for mode in Mode::ALL {
            let c = SolverConfig {
                check_level: CheckLevel::Fine,
                ..SolverConfig::with_mode(mode)
            };
            let mut s = Solver::from_formula(f(2, clauses), c).unwrap();
            assert_eq!(s.solve(), Verdict::Unsat, "{mode}");
            for id in [1, 2, 3] {
                assert_eq!(s.violation_count(id), 0, "{mode} inv {id}");
            }
        }
    }

    #[test]
    fn sat_model_satisfies_formula() {
        let formula = f(4, &[&[1, 2], &[-1, 3], &[-3, -2, 4], &[-4, 1]]);
        for mode in Mode::ALL {
            let (v, stats) = solve(formula.clone(), SolverConfig::with_mode(mode)).unwrap();
            let Verdict::Sat(m) = v else { panic!("{mode}: expected SAT") };
            assert!(formula.is_satisfied_by(m.as_slice()));
            assert!(stats.propagations > 0);
        }
    }

    #[test]
    fn add_clause_after_solve_restarts_search() {
        let mut s = Solver::new(2, SolverConfig::default()).unwrap();
        s.add_clause(&[Lit::from_dimacs(1), Lit::from_dimacs(2)]);
        assert!(s.solve().is_sat());
        s.add_clause(&[Lit::from_dimacs(-1)]);
        s.add_clause(&[Lit::from_dimacs(-2)]);
        assert_eq!(s.solve(), Verdict::Unsat);
    }

    #[test]
    fn invalid_config_is_rejected() {
        let c = SolverConfig {
            cb_threshold: 0,
            ..SolverConfig::default()
        };
        assert_eq!(Solver::new(1, c).unwrap_err(), ConfigError::CbThreshold);
    }
}
