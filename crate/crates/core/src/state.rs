//! The mutable assignment: trail split by the propagation head, decision
//! levels, reasons, positions and the lazy reimplication vector.
use crate::formula::ClauseRef;
use crate::lit::{Level, Lit, Var};

const NO_POS: u32 = u32::MAX;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Value {
    Satisfied,
    Falsified,
    Unassigned,
}

/// Trail `π = τ · ω`. Literals before `head` have been propagated (`τ`);
/// literals from `head` on are queued (`ω`).
///
/// Per-variable tables are indexed by [`Var::index`]. Reasons and lazy
/// reasons are attached to the variable and describe the literal currently
/// on the trail, so querying them for the opposite polarity yields `None`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TrailState {
    pub(crate) trail: Vec<Lit>,
    pub(crate) head: usize,
    pub(crate) decisions: Vec<Lit>,
    pub(crate) pos: Vec<u32>,
    pub(crate) level: Vec<Level>,
    pub(crate) reason: Vec<Option<ClauseRef>>,
    pub(crate) lazy: Vec<Option<ClauseRef>>,
    pub(crate) lazy_level: Vec<Level>,
}

impl TrailState {
    pub fn new(num_vars: u32) -> TrailState {
        let n = num_vars as usize + 1;
        TrailState {
            trail: Vec::with_capacity(n),
            head: 0,
            decisions: Vec::new(),
            pos: vec![NO_POS; n],
            level: vec![Level::INFINITY; n],
            reason: vec![None; n],
            lazy: vec![None; n],
            lazy_level: vec![Level::INFINITY; n],
        }
    }

    pub fn num_vars(&self) -> usize {
        self.pos.len() - 1
    }

    pub fn trail(&self) -> &[Lit] {
        &self.trail
    }

    pub fn head(&self) -> usize {
        self.head
    }

    /// Propagated prefix `τ`.
    pub fn tau(&self) -> &[Lit] {
        &self.trail[..self.head]
    }

    /// Propagation queue `ω`.
    pub fn omega(&self) -> &[Lit] {
        &self.trail[self.head..]
    }

    pub fn decisions(&self) -> &[Lit] {
        &self.decisions
    }

    pub fn decision_level(&self) -> Level {
        Level::new(self.decisions.len() as u32)
    }

    pub fn is_complete(&self) -> bool {
        self.trail.len() == self.num_vars()
    }

    pub fn is_assigned(&self, var: Var) -> bool {
        self.pos[var.index()] != NO_POS
    }

    pub fn value(&self, lit: Lit) -> Value {
        let p = self.pos[lit.var().index()];
        if p == NO_POS {
            Value::Unassigned
        } else if self.trail[p as usize] == lit {
            Value::Satisfied
        } else {
            Value::Falsified
        }
    }

    pub fn is_true(&self, lit: Lit) -> bool {
        self.value(lit) == Value::Satisfied
    }

    pub fn is_false(&self, lit: Lit) -> bool {
        self.value(lit) == Value::Falsified
    }

    /// Position of `lit` itself on the trail.
    pub fn pos(&self, lit: Lit) -> Option<usize> {
        self.is_true(lit).then(|| self.pos[lit.var().index()] as usize)
    }

    /// True iff `lit` is in `τ`.
    pub fn in_tau(&self, lit: Lit) -> bool {
        self.pos(lit).is_some_and(|p| p < self.head)
    }

    /// Level of the variable of `lit`; `∞` when unassigned.
    pub fn level(&self, lit: Lit) -> Level {
        self.level[lit.var().index()]
    }

    /// `δ(C)`: maximum level over `lits`, 0 for the empty set.
    pub fn level_of(&self, lits: &[Lit]) -> Level {
        lits.iter().map(|&l| self.level(l)).max().unwrap_or(Level::ZERO)
    }

    /// `δ(C \ {skip})`.
    pub fn level_without(&self, lits: &[Lit], skip: Lit) -> Level {
        lits.iter()
            .filter(|&&l| l != skip)
            .map(|&l| self.level(l))
            .max()
            .unwrap_or(Level::ZERO)
    }

    pub fn is_decision(&self, lit: Lit) -> bool {
        self.is_true(lit) && self.reason[lit.var().index()].is_none()
            && self.decisions.contains(&lit)
    }

    pub fn reason(&self, lit: Lit) -> Option<ClauseRef> {
        if self.is_true(lit) {
            self.reason[lit.var().index()]
        } else {
            None
        }
    }

    /// `λ(ℓ)`.
    pub fn lazy(&self, lit: Lit) -> Option<ClauseRef> {
        if self.is_true(lit) {
            self.lazy[lit.var().index()]
        } else {
            None
        }
    }

    /// Cached `δ(λ(ℓ) \ {ℓ})`; `∞` when `λ(ℓ) = □`.
    pub fn lazy_level(&self, lit: Lit) -> Level {
        if self.is_true(lit) {
            self.lazy_level[lit.var().index()]
        } else {
            Level::INFINITY
        }
    }

    fn push(&mut self, lit: Lit, level: Level, reason: Option<ClauseRef>) {
        let v = lit.var().index();
        assert!(
            self.pos[v] == NO_POS,
            "{} is already assigned",
            lit.var()
        );
        self.pos[v] = self.trail.len() as u32;
        self.level[v] = level;
        self.reason[v] = reason;
        self.lazy[v] = None;
        self.lazy_level[v] = Level::INFINITY;
        self.trail.push(lit);
    }

    pub fn enqueue_decision(&mut self, lit: Lit) {
        self.decisions.push(lit);
        let level = self.decision_level();
        self.push(lit, level, None);
    }

    pub fn enqueue_implied(&mut self, lit: Lit, reason: ClauseRef, level: Level) {
        assert!(level.is_finite());
        self.push(lit, level, Some(reason));
    }

    /// Moves the first literal of `ω` into `τ`.
    pub fn pop_next(&mut self) -> Lit {
        assert!(self.head < self.trail.len(), "propagation queue is empty");
        let lit = self.trail[self.head];
        self.head += 1;
        lit
    }

    /// Peeks at the first literal of `ω`.
    pub fn next_queued(&self) -> Option<Lit> {
        self.trail.get(self.head).copied()
    }

    pub fn set_lazy(&mut self, lit: Lit, clause: ClauseRef, level: Level) {
        let v = lit.var().index();
        assert!(self.is_true(lit), "λ is only set for trail literals");
        assert!(level < self.lazy_level[v], "λ may only improve");
        assert!(level < self.level[v], "an MLI must sit below its literal");
        self.lazy[v] = Some(clause);
        self.lazy_level[v] = level;
    }

    /// Sets the propagation head directly. Used by restoring backtracking
    /// and by scripted fixtures.
    pub fn set_head(&mut self, head: usize) {
        assert!(head <= self.trail.len());
        self.head = head;
    }

    /// Removes every literal above `level`, preserving the relative order of
    /// kept literals. Returns the removed literals (with their lazy reasons
    /// and cached lazy levels, taken before clearing) in trail order, and the
    /// number of kept literals that were in `τ`.
    pub(crate) fn remove_above(&mut self, level: Level) -> (Vec<Removed>, usize) {
        let mut removed = Vec::new();
        let mut kept_tau = 0;
        let mut write = 0;
        for read in 0..self.trail.len() {
            let lit = self.trail[read];
            let v = lit.var().index();
            if self.level[v] > level {
                removed.push(Removed {
                    lit,
                    old_pos: read,
                    lazy: self.lazy[v].map(|c| (c, self.lazy_level[v])),
                });
                self.pos[v] = NO_POS;
                self.level[v] = Level::INFINITY;
                self.reason[v] = None;
                self.lazy[v] = None;
                self.lazy_level[v] = Level::INFINITY;
            } else {
                if read < self.head {
                    kept_tau += 1;
                }
                self.trail[write] = lit;
                self.pos[v] = write as u32;
                write += 1;
            }
        }
        self.trail.truncate(write);
        let levels = &self.level;
        self.decisions.retain(|d| levels[d.var().index()] <= level);
        (removed, kept_tau)
    }
}

#[derive(Clone, Debug)]
pub(crate) struct Removed {
    pub lit: Lit,
    pub old_pos: usize,
    pub lazy: Option<(ClauseRef, Level)>,
}
