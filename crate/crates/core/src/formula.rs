//! CNF formulas and the clause store shared by original and learned clauses.
use crate::lit::{Lit, Var};
use std::fmt;

/// Stable handle to a stored clause. Handles are never invalidated: the
/// store only grows.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClauseRef(u32);

impl ClauseRef {
    pub fn new(index: usize) -> ClauseRef {
        ClauseRef(index as u32)
    }

    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Debug for ClauseRef {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "C{}", self.0)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Clause {
    lits: Vec<Lit>,
    /// Positions in `lits` of the two watched literals. Both are 0 for
    /// unit clauses, which are never watched.
    watch: [u32; 2],
    pub(crate) blocker: Option<Lit>,
    /// Where the next replacement search starts (circular scan).
    pub(crate) search_from: u32,
    learned: bool,
}

impl Clause {
    fn new(lits: Vec<Lit>, learned: bool) -> Clause {
        let watch = if lits.len() >= 2 { [0, 1] } else { [0, 0] };
        let blocker = if lits.len() >= 2 { Some(lits[1]) } else { None };
        Clause {
            lits,
            watch,
            blocker,
            search_from: 0,
            learned,
        }
    }

    pub fn lits(&self) -> &[Lit] {
        &self.lits
    }

    pub fn len(&self) -> usize {
        self.lits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lits.is_empty()
    }

    pub fn is_unit(&self) -> bool {
        self.lits.len() == 1
    }

    pub fn is_learned(&self) -> bool {
        self.learned
    }

    pub fn contains(&self, lit: Lit) -> bool {
        self.lits.contains(&lit)
    }

    pub fn blocker(&self) -> Option<Lit> {
        self.blocker
    }

    /// Positions of the watched literals.
    pub fn watch_positions(&self) -> [usize; 2] {
        [self.watch[0] as usize, self.watch[1] as usize]
    }

    /// The two watched literals, or `None` for a unit clause.
    pub fn watched(&self) -> Option<[Lit; 2]> {
        if self.lits.len() < 2 {
            return None;
        }
        Some([self.lits[self.watch[0] as usize], self.lits[self.watch[1] as usize]])
    }

    /// The watched literal opposite `lit`.
    pub fn other_watch(&self, lit: Lit) -> Lit {
        let [a, b] = self.watched().expect("unit clauses are not watched");
        if a == lit {
            b
        } else {
            debug_assert_eq!(b, lit);
            a
        }
    }

    /// Replaces the watch currently on `old` by the literal at `pos`.
    pub(crate) fn move_watch(&mut self, old: Lit, pos: usize) {
        let slot = if self.lits[self.watch[0] as usize] == old { 0 } else { 1 };
        debug_assert_eq!(self.lits[self.watch[slot] as usize], old);
        self.watch[slot] = pos as u32;
        debug_assert_ne!(self.watch[0], self.watch[1]);
    }

    pub(crate) fn set_watches(&mut self, a: usize, b: usize) {
        assert_ne!(a, b);
        self.watch = [a as u32, b as u32];
    }
}

/// Result of inserting a clause.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ClauseAdd {
    /// Stored (possibly as a size-1 root unit).
    Stored(ClauseRef),
    /// Contained a complementary pair; nothing stored.
    Tautology,
    /// The empty clause; the formula is now trivially unsatisfiable.
    Empty,
}

/// Removes duplicate literals (keeping first occurrences in order).
/// Returns `None` for tautologies.
pub fn normalize(lits: &[Lit]) -> Option<Vec<Lit>> {
    let mut out: Vec<Lit> = Vec::with_capacity(lits.len());
    for &lit in lits {
        if out.contains(&!lit) {
            return None;
        }
        if !out.contains(&lit) {
            out.push(lit);
        }
    }
    Some(out)
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Formula {
    num_vars: u32,
    clauses: Vec<Clause>,
    trivially_unsat: bool,
}

impl Formula {
    pub fn new(num_vars: u32) -> Formula {
        Formula {
            num_vars,
            clauses: Vec::new(),
            trivially_unsat: false,
        }
    }

    /// Builds a formula from DIMACS-style integer clauses.
    pub fn from_dimacs_clauses(num_vars: u32, clauses: &[Vec<i32>]) -> Formula {
        let mut f = Formula::new(num_vars);
        for c in clauses {
            let lits: Vec<Lit> = c.iter().map(|&l| Lit::from_dimacs(l)).collect();
            f.add_clause(&lits);
        }
        f
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn vars(&self) -> impl Iterator<Item = Var> {
        (1..=self.num_vars).map(Var::new)
    }

    pub fn is_trivially_unsat(&self) -> bool {
        self.trivially_unsat
    }

    pub fn num_clauses(&self) -> usize {
        self.clauses.len()
    }

    pub fn clause(&self, cref: ClauseRef) -> &Clause {
        &self.clauses[cref.index()]
    }

    pub(crate) fn clause_mut(&mut self, cref: ClauseRef) -> &mut Clause {
        &mut self.clauses[cref.index()]
    }

    pub fn clauses(&self) -> impl Iterator<Item = (ClauseRef, &Clause)> {
        self.clauses.iter().enumerate().map(|(i, c)| (ClauseRef::new(i), c))
    }

    /// Original (non-learned) clauses.
    pub fn original_clauses(&self) -> impl Iterator<Item = (ClauseRef, &Clause)> {
        self.clauses().filter(|(_, c)| !c.is_learned())
    }

    /// Size-1 clauses, asserted at level 0 rather than watched.
    pub fn units(&self) -> impl Iterator<Item = (ClauseRef, Lit)> + '_ {
        self.clauses()
            .filter(|(_, c)| c.is_unit())
            .map(|(r, c)| (r, c.lits[0]))
    }

    pub fn add_clause(&mut self, lits: &[Lit]) -> ClauseAdd {
        self.insert(lits, false)
    }

    pub(crate) fn add_learned(&mut self, lits: &[Lit]) -> ClauseAdd {
        self.insert(lits, true)
    }

    fn insert(&mut self, lits: &[Lit], learned: bool) -> ClauseAdd {
        for lit in lits {
            assert!(
                lit.var().index() <= self.num_vars as usize,
                "literal {lit:?} exceeds {} variables",
                self.num_vars
            );
        }
        let Some(lits) = normalize(lits) else {
            return ClauseAdd::Tautology;
        };
        if lits.is_empty() {
            self.trivially_unsat = true;
            return ClauseAdd::Empty;
        }
        let cref = ClauseRef::new(self.clauses.len());
        self.clauses.push(Clause::new(lits, learned));
        ClauseAdd::Stored(cref)
    }

    /// Truth value of every original clause under a total assignment
    /// indexed by variable (index 0 unused).
    pub fn is_satisfied_by(&self, model: &[bool]) -> bool {
        !self.trivially_unsat
            && self.original_clauses().all(|(_, c)| {
                c.lits()
                    .iter()
                    .any(|l| model[l.var().index()] == l.is_positive())
            })
    }
}
