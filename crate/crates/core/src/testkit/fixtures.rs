//! The two worked examples, rebuilt as executable fixtures.
//!
//! Clause `C_i` of an example is stored at index `i - 1`.
//!
//! **S1** (missed lower implication). Input `C1..C6`; decisions `v1, v2,
//! v3` lead to a conflict on `C2`, which is learned as `C7 = ¬v3 ∨ ¬v1`
//! with a chronological backtrack to level 2. Propagation then continues
//! until `C5` conflicts, with trail
//! `v1@1 v2@2 | ¬v3@1 v5@1 ¬v6@2` (`|` is the propagation head, which
//! sits before `¬v3` once `C7` is installed and before `v5` at the
//! conflict). `C4 = v2 ∨ v3 ∨ ¬v5` is the missed lower implication of `v2`.
//!
//! **S2** (lazy reason in analysis). Trail
//! `¬v1@1 ¬v2@1 ¬v3@2 v4@1 | ¬v5@2 ¬v6@1 v7@2` with `λ(¬v3) = C6`, and
//! `C5` falsified. Built directly on the trail since the example starts
//! mid-search.
use crate::config::SolverConfig;
use crate::formula::{ClauseRef, Formula};
use crate::lit::{Level, Lit};
use crate::propagate::PropagationOutcome;
use crate::solver::Solver;
use crate::state::TrailState;

fn l(x: i32) -> Lit {
    Lit::from_dimacs(x)
}

/// Clause `C_i`.
pub fn c(i: usize) -> ClauseRef {
    ClauseRef::new(i - 1)
}

/// A trail rendered as `(literal, level)` pairs plus the head.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Snapshot {
    pub trail: Vec<(i32, u32)>,
    pub head: usize,
}

impl Snapshot {
    pub fn of(state: &TrailState) -> Snapshot {
        Snapshot {
            trail: state
                .trail()
                .iter()
                .map(|&x| (x.to_dimacs(), state.level(x).get()))
                .collect(),
            head: state.head(),
        }
    }

    pub fn new(trail: &[(i32, u32)], head: usize) -> Snapshot {
        Snapshot {
            trail: trail.to_vec(),
            head,
        }
    }
}

pub const S1_CLAUSES: [&[i32]; 6] = [
    &[-3, 4],
    &[-3, -4, -1],
    &[5, 3],
    &[2, 3, -5],
    &[6, -5, 3],
    &[-6, -2, -5],
];

/// The clause learned from the first S1 conflict.
pub const S1_C7: [i32; 2] = [-3, -1];

pub const S2_CLAUSES: [&[i32]; 7] = [
    &[-2, 1],
    &[-5, 3, -4],
    &[-6, 2, -4],
    &[7, 5, 3],
    &[5, -7, 6],
    &[-3, -4, 2],
    &[4, 2],
];

fn formula(n: u32, clauses: &[&[i32]]) -> Formula {
    let v: Vec<Vec<i32>> = clauses.iter().map(|c| c.to_vec()).collect();
    Formula::from_dimacs_clauses(n, &v)
}

pub fn s1_formula() -> Formula {
    formula(6, &S1_CLAUSES)
}

pub fn s2_formula() -> Formula {
    formula(7, &S2_CLAUSES)
}

/// S1 once `C7` is learned and `¬v3@1` is queued, before any further
/// propagation. Uses `cfg` with a threshold of 1 so the first conflict
/// backtracks chronologically.
///
/// The example visits `C6` before `C5` when propagating `v5`, while
/// insertion order would put `C5` first; `wl(¬v5)` is reordered
/// accordingly.
pub fn s1_after_learning(cfg: SolverConfig) -> Solver {
    let cfg = SolverConfig {
        cb_threshold: 1,
        ..cfg
    };
    let mut s = Solver::from_formula(s1_formula(), cfg).expect("valid config");
    for d in [1, 2, 3] {
        assert_eq!(s.propagate(), PropagationOutcome::NoConflict);
        s.decide_literal(l(d));
    }
    let conflict = match s.propagate() {
        PropagationOutcome::Conflict(r) => r,
        PropagationOutcome::NoConflict => panic!("S1 script: expected a conflict on C2"),
    };
    assert_eq!(conflict, c(2), "S1 script: conflict clause");
    let learned = s.handle_conflict(conflict).learned.expect("not UNSAT");
    assert_eq!(learned.lits, S1_C7.map(l), "S1 script: learned clause");
    let order = vec![c(6), c(5)];
    s.reorder_watch_list(l(-5), order);
    s
}

/// S1 at the conflict of the worked example: conflict on `C5` at level 2.
pub fn s1_at_conflict(cfg: SolverConfig) -> Solver {
    let mut s = s1_after_learning(cfg);
    assert_eq!(s.propagate(), PropagationOutcome::Conflict(c(5)), "S1 script: conflict on C5");
    s
}

/// Expected S1 trail right after `C7` is installed.
pub fn s1_expected_after_learning() -> Snapshot {
    Snapshot::new(&[(1, 1), (2, 2), (-3, 1)], 2)
}

/// Expected S1 trail at the `C5` conflict.
pub fn s1_expected_at_conflict() -> Snapshot {
    Snapshot::new(&[(1, 1), (2, 2), (-3, 1), (5, 1), (-6, 2)], 3)
}

/// S2 exactly as in the worked example (head after `v4`).
pub fn s2(cfg: SolverConfig) -> Solver {
    let mut s = Solver::from_formula(s2_formula(), cfg).expect("valid config");
    let st = s.state_mut();
    st.enqueue_decision(l(-1));
    st.enqueue_implied(l(-2), c(1), Level::new(1));
    st.enqueue_decision(l(-3));
    st.enqueue_implied(l(4), c(7), Level::new(1));
    st.enqueue_implied(l(-5), c(2), Level::new(2));
    st.enqueue_implied(l(-6), c(3), Level::new(1));
    st.enqueue_implied(l(7), c(4), Level::new(2));
    st.set_head(4);
    st.set_lazy(l(-3), c(6), Level::new(1));
    s
}

pub fn s2_expected() -> Snapshot {
    Snapshot::new(
        &[(-1, 1), (-2, 1), (-3, 2), (4, 1), (-5, 2), (-6, 1), (7, 2)],
        4,
    )
}

/// `(pivot, clause index i of C_i, lazy?)` for each resolution step of the
/// S2 analysis that uses lazy reasons.
pub const S2_CHAIN: [(i32, usize, bool); 5] = [
    (7, 4, false),
    (-5, 2, false),
    (-3, 6, true),
    (-6, 3, false),
    (4, 7, false),
];
