//! Mode-dispatched backtracking.
//!
//! Every mode removes the literals above the target level and keeps the
//! rest in order. They differ in what happens to the propagation head and
//! to missed lower implications:
//!
//! * NCB: the removed part is a suffix; the head simply follows.
//! * WCB: kept literals that were propagated stay propagated.
//! * RSCB: the head is rewound to where the first removed decision stood,
//!   so every kept literal after it is propagated again.
//! * LSCB: removed literals whose lazy reason lies at or below the target
//!   level are reimplied by that reason, in ascending level order.
use crate::config::Mode;
use crate::lit::Level;
use crate::solver::Solver;
use crate::trace::Event;

impl Solver {
    pub fn backtrack(&mut self, level: Level) {
        let from = self.state.decision_level();
        assert!(
            level < from,
            "backtrack target {level} must lie below the current level {from}"
        );
        let mode = self.cfg.mode;
        let restore_from = match mode {
            Mode::Rscb => self.state.pos(self.state.decisions[level.get() as usize]),
            _ => None,
        };
        let old_len = self.state.trail.len();
        let (removed, kept_tau) = self.state.remove_above(level);

        if mode == Mode::Ncb {
            debug_assert!(
                removed
                    .iter()
                    .enumerate()
                    .all(|(k, r)| r.old_pos == old_len - removed.len() + k),
                "NCB removal must be a suffix"
            );
        }
        let head = match restore_from {
            // Nothing before the removed decision is removed, so its old
            // position is also the count of kept literals before it.
            Some(p) => kept_tau.min(p),
            None => kept_tau,
        };
        self.state.set_head(head);

        for r in &removed {
            self.vsids.insert(r.lit.var());
        }

        let mut reimply: Vec<_> = Vec::new();
        if mode == Mode::Lscb {
            reimply = removed
                .iter()
                .filter_map(|r| {
                    let (clause, lazy_level) = r.lazy?;
                    (lazy_level <= level).then_some((lazy_level, r.old_pos, r.lit, clause))
                })
                .collect();
            reimply.sort_unstable();
        }

        self.emit(|| Event::Backtrack {
            from: from.get(),
            to: level.get(),
            removed: removed.len(),
            mode,
        });

        for (lazy_level, _, lit, clause) in reimply {
            debug_assert!(self
                .formula
                .clause(clause)
                .lits()
                .iter()
                .all(|&l| l == lit || self.state.is_false(l)));
            debug_assert_eq!(
                self.state.level_without(self.formula.clause(clause).lits(), lit),
                lazy_level
            );
            self.state.enqueue_implied(lit, clause, lazy_level);
            self.on_assign(lit);
            self.stats.reimplications += 1;
            self.emit(|| Event::Reimply {
                lit: lit.to_dimacs(),
                level: lazy_level.get(),
                clause: clause.index() as u32,
            });
        }

        if self.coarse_checks() {
            self.checkpoint(self.pending);
        }
    }
}
