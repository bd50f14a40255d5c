//! First-UIP conflict analysis aware of lazy reasons, and recursive
//! learned-clause minimization that accepts either reason of a literal.
use crate::config::AnalyzeStrategy;
use crate::formula::ClauseRef;
use crate::lit::{Level, Lit, Var};
use crate::solver::Solver;
use crate::state::TrailState;
use crate::trace::{Event, ReasonKind};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LearnedClause {
    pub lits: Vec<Lit>,
    /// `δ(D)`.
    pub level: Level,
    /// Highest level among the literals other than the asserting one.
    pub second_level: Level,
    /// The unique literal at `δ(D)`; `None` only at level 0 (UNSAT).
    pub asserting: Option<Lit>,
}

impl LearnedClause {
    pub fn new(state: &TrailState, lits: Vec<Lit>) -> LearnedClause {
        let level = state.level_of(&lits);
        let at_top: Vec<Lit> = lits
            .iter()
            .copied()
            .filter(|&l| state.level(l) == level)
            .collect();
        let asserting = (at_top.len() == 1 && level > Level::ZERO).then(|| at_top[0]);
        let second_level = match asserting {
            Some(a) => state.level_without(&lits, a),
            None => second_level(state, &lits),
        };
        LearnedClause {
            lits,
            level,
            second_level,
            asserting,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ResolutionStep {
    /// Trail literal resolved away.
    pub pivot: Lit,
    pub clause: ClauseRef,
    pub kind: ReasonKind,
}

#[derive(Clone, Debug)]
pub struct Analysis {
    pub learned: LearnedClause,
    pub steps: Vec<ResolutionStep>,
    /// Every variable that occurred in an intermediate clause.
    pub involved: Vec<Var>,
}

/// `δ(D)`.
pub fn clause_level(state: &TrailState, lits: &[Lit]) -> Level {
    state.level_of(lits)
}

/// Second-highest distinct level of `lits`; 0 when there is none.
pub fn second_level(state: &TrailState, lits: &[Lit]) -> Level {
    let top = state.level_of(lits);
    lits.iter()
        .map(|&l| state.level(l))
        .filter(|&d| d < top)
        .max()
        .unwrap_or(Level::ZERO)
}

/// Number of literals of `lits` at level `level`.
pub fn count_at_level(state: &TrailState, lits: &[Lit], level: Level) -> usize {
    lits.iter().filter(|&&l| state.level(l) == level).count()
}

/// Binary resolution `D ⊗ C'` on the trail literal `pivot`:
/// `(D \ {¬pivot}) ∪ (C' \ {pivot})`, duplicates merged.
pub fn resolve(d: &[Lit], c: &[Lit], pivot: Lit) -> Vec<Lit> {
    assert!(c.contains(&pivot), "pivot {pivot:?} missing from reason");
    assert!(d.contains(&!pivot), "¬{pivot:?} missing from clause");
    let mut out: Vec<Lit> = d.iter().copied().filter(|&l| l != !pivot).collect();
    for &l in c {
        if l != pivot && !out.contains(&l) {
            out.push(l);
        }
    }
    out
}

impl Solver {
    /// Derives a learned clause from the falsified clause `conflict`.
    /// Read-only over the solver state.
    pub fn analyze(&self, conflict: &[Lit], strategy: AnalyzeStrategy) -> Analysis {
        let state = &self.state;
        debug_assert!(conflict.iter().all(|&l| state.is_false(l)));
        let mut d: Vec<Lit> = crate::formula::normalize(conflict).expect("falsified clause");
        let mut steps = Vec::new();
        let mut involved_mark = vec![false; state.num_vars() + 1];
        let mut involved = Vec::new();
        let mut note = |lits: &[Lit], involved: &mut Vec<Var>| {
            for l in lits {
                if !involved_mark[l.var().index()] {
                    involved_mark[l.var().index()] = true;
                    involved.push(l.var());
                }
            }
        };
        note(&d, &mut involved);

        loop {
            let level = state.level_of(&d);
            if level == Level::ZERO {
                break;
            }
            let n = count_at_level(state, &d, level);
            let pivot = !*d
                .iter()
                .filter(|&&l| state.level(l) == level)
                .max_by_key(|&&l| state.pos(!l).expect("falsified literal"))
                .expect("clause has a literal at its own level");
            let lazy = match strategy {
                AnalyzeStrategy::Analyze2 => state.lazy(pivot),
                AnalyzeStrategy::Analyze1 => None,
            };
            if n == 1 && lazy.is_none() {
                break;
            }
            let (clause, kind) = match lazy {
                Some(c) => (c, ReasonKind::Lazy),
                None => (
                    state
                        .reason(pivot)
                        .unwrap_or_else(|| panic!("{pivot:?} has no reason but {n} literals share level {level}")),
                    ReasonKind::Reason,
                ),
            };
            let reason = self.formula.clause(clause).lits();
            d = resolve(&d, reason, pivot);
            note(&d, &mut involved);
            steps.push(ResolutionStep {
                pivot,
                clause,
                kind,
            });
            debug_assert!(d.iter().all(|&l| state.is_false(l)));
        }

        Analysis {
            learned: LearnedClause::new(state, d),
            steps,
            involved,
        }
    }

    pub(crate) fn trace_steps(&mut self, steps: &[ResolutionStep]) {
        for s in steps {
            self.emit(|| Event::Resolve {
                pivot: s.pivot.to_dimacs(),
                clause: s.clause.index() as u32,
                reason: s.kind,
            });
        }
    }

    /// Drops literals whose trail literal is implied, through its reason or
    /// its lazy reason, by the remaining literals. The asserting literal is
    /// always kept.
    pub fn minimize(&self, learned: &LearnedClause) -> LearnedClause {
        let n = self.state.num_vars() + 1;
        let mut in_clause = vec![false; n];
        for l in &learned.lits {
            in_clause[l.var().index()] = true;
        }
        let mut memo = vec![Memo::Unknown; n];
        let kept: Vec<Lit> = learned
            .lits
            .iter()
            .copied()
            .filter(|&l| Some(l) == learned.asserting || !self.removable(!l, &in_clause, &mut memo))
            .collect();
        LearnedClause::new(&self.state, kept)
    }

    fn removable(&self, lit: Lit, in_clause: &[bool], memo: &mut [Memo]) -> bool {
        let v = lit.var().index();
        match memo[v] {
            Memo::Removable => return true,
            Memo::Kept | Memo::Visiting => return false,
            Memo::Unknown => {}
        }
        memo[v] = Memo::Visiting;
        let candidates = [self.state.reason(lit), self.state.lazy(lit)];
        let ok = candidates.into_iter().flatten().any(|cref| {
            self.formula
                .clause(cref)
                .lits()
                .iter()
                .filter(|&&y| y != lit)
                .all(|&y| in_clause[y.var().index()] || self.removable(!y, in_clause, memo))
        });
        memo[v] = if ok { Memo::Removable } else { Memo::Kept };
        ok
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum Memo {
    Unknown,
    Visiting,
    Removable,
    Kept,
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;
    use std::collections::BTreeSet;

    fn l(x: i32) -> Lit {
        Lit::from_dimacs(x)
    }

    fn set(v: &[Lit]) -> BTreeSet<i32> {
        v.iter().map(|x| x.to_dimacs()).collect()
    }

    #[test]
    fn resolve_merges_duplicates() {
        assert_eq!(set(&resolve(&[l(1), l(-2)], &[l(2), l(1)], l(2))), set(&[l(1)]));
        assert_eq!(
            set(&resolve(&[l(5), l(-7), l(6)], &[l(7), l(5), l(3)], l(7))),
            set(&[l(5), l(3), l(6)])
        );
    }

    #[test]
    #[should_panic(expected = "missing")]
    fn resolve_without_pivot_panics() {
        resolve(&[l(1)], &[l(2)], l(2));
    }

    #[test]
    fn level_utilities() {
        let mut s = TrailState::new(6);
        s.enqueue_decision(l(-6));
        s.enqueue_implied(l(4), ClauseRef::new(0), Level::new(1));
        s.enqueue_decision(l(-3));
        let d = [l(3), l(6), l(-4)];
        assert_eq!(clause_level(&s, &d), Level::new(2));
        assert_eq!(second_level(&s, &d), Level::new(1));
        assert_eq!(count_at_level(&s, &d, Level::new(2)), 1);
        assert_eq!(clause_level(&s, &[]), Level::ZERO);
    }

    fn solver(clauses: &[&[i32]], n: u32) -> Solver {
        let v: Vec<Vec<i32>> = clauses.iter().map(|c| c.to_vec()).collect();
        Solver::from_formula(crate::Formula::from_dimacs_clauses(n, &v), Default::default()).unwrap()
    }

    #[test]
    fn minimize_drops_literal_implied_by_the_rest() {
        // C1: v1 -> v2.
        let mut s = solver(&[&[-1, 2]], 4);
        let st = s.state_mut();
        st.enqueue_decision(l(1));
        st.enqueue_implied(l(2), ClauseRef::new(0), Level::new(1));
        st.enqueue_decision(l(3));
        let d = LearnedClause::new(s.state(), vec![l(-3), l(-1), l(-2)]);
        let m = s.minimize(&d);
        assert_eq!(set(&m.lits), set(&[l(-3), l(-1)]));
        assert_eq!(m.asserting, Some(l(-3)));
        // The decision v1 has no reason and stays.
        let d = LearnedClause::new(s.state(), vec![l(-3), l(-1)]);
        assert_eq!(s.minimize(&d).lits, d.lits);
    }

    #[test]
    fn minimize_uses_lazy_reasons() {
        // C1: v1 -> v2 (the lower implication), C2: v3 -> v2 (the actual reason).
        let mut s = solver(&[&[2, -1], &[2, -3]], 4);
        let st = s.state_mut();
        st.enqueue_decision(l(1));
        st.enqueue_decision(l(3));
        st.enqueue_implied(l(2), ClauseRef::new(1), Level::new(2));
        st.enqueue_decision(l(4));
        let d = LearnedClause::new(s.state(), vec![l(-4), l(-2), l(-1)]);
        assert_eq!(set(&s.minimize(&d).lits), set(&d.lits));
        s.state_mut().set_lazy(l(2), ClauseRef::new(0), Level::new(1));
        let m = s.minimize(&d);
        assert_eq!(set(&m.lits), set(&[l(-4), l(-1)]));
        assert_eq!(m.second_level, Level::new(1));
    }

    fn set_oracle(d: &BTreeSet<i32>, c: &BTreeSet<i32>, pivot: i32) -> BTreeSet<i32> {
        d.iter()
            .filter(|&&x| x != -pivot)
            .chain(c.iter().filter(|&&x| x != pivot))
            .copied()
            .collect()
    }

    proptest! {
        #[test]
        fn resolve_matches_set_oracle(
            d in prop::collection::btree_set(1i32..8, 0..5),
            c in prop::collection::btree_set(1i32..8, 0..5),
            pivot in 8i32..10,
            signs in prop::collection::vec(any::<bool>(), 16),
        ) {
            let sign = |x: i32, i: usize| if signs[i % 16] { x } else { -x };
            let mut dv: Vec<i32> = d.iter().enumerate().map(|(i, &x)| sign(x, i)).collect();
            let mut cv: Vec<i32> = c.iter().enumerate().map(|(i, &x)| sign(x, i + 8)).collect();
            dv.push(-pivot);
            cv.push(pivot);
            // Drop complementary pairs across D and C' other than the pivot.
            cv.retain(|x| !dv.contains(&-x) || *x == pivot);
            let dl: Vec<Lit> = dv.iter().map(|&x| l(x)).collect();
            let cl: Vec<Lit> = cv.iter().map(|&x| l(x)).collect();
            let got = set(&resolve(&dl, &cl, l(pivot)));
            let want = set_oracle(&dv.iter().copied().collect(), &cv.iter().copied().collect(), pivot);
            prop_assert_eq!(got, want);
        }
    }
}
