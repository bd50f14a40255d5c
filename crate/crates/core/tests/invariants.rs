use lazysat::checker::{check, ALL_INVARIANTS};
use lazysat::testkit::{clauses_for, random_3sat};
use lazysat::{CheckLevel, Mode, Solver, SolverConfig};
use proptest::prelude::*;

fn checked(mode: Mode) -> SolverConfig {
    SolverConfig {
        check_level: CheckLevel::Fine,
        cb_threshold: 1,
        ..SolverConfig::with_mode(mode)
    }
}

fn counts(mode: Mode, seeds: std::ops::Range<u64>) -> [u64; 9] {
    let mut total = [0; 9];
    for seed in seeds {
        let n = 20 + (seed % 11) as u32;
        let mut s = Solver::from_formula(random_3sat(n, clauses_for(n), seed), checked(mode)).unwrap();
        s.solve();
        for id in 1..=8 {
            total[id as usize] += s.violation_count(id);
        }
    }
    total
}

#[test]
fn mode_matrix_on_a_small_batch() {
    let zero: [(Mode, &[u8]); 4] = [
        (Mode::Ncb, &[1, 2, 3, 4, 5, 6, 7]),
        (Mode::Wcb, &[1, 2, 3, 6]),
        (Mode::Rscb, &[1, 2, 3, 4, 6]),
        (Mode::Lscb, &[1, 2, 3, 4, 6, 7]),
    ];
    for (mode, ids) in zero {
        let c = counts(mode, 0..40);
        for &id in ids {
            assert_eq!(c[id as usize], 0, "{mode}: invariant {id} violated");
        }
        if mode == Mode::Wcb {
            assert!(c[4] > 0, "WCB never missed an implication");
        }
    }
}

fn mid_search(mode: Mode, seed: u64, stop_after: u64) -> Solver {
    let cfg = SolverConfig {
        cb_threshold: 1,
        ..SolverConfig::with_mode(mode)
    };
    let mut s = Solver::from_formula(random_3sat(20, 91, seed), cfg).unwrap();
    let mut conflicts = 0;
    loop {
        match s.propagate() {
            lazysat::PropagationOutcome::Conflict(c) => {
                conflicts += 1;
                if conflicts > stop_after || s.handle_conflict(c).learned.is_none() {
                    return s;
                }
            }
            lazysat::PropagationOutcome::NoConflict => {
                if s.state().is_complete() {
                    return s;
                }
                s.decide();
            }
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn lazy_compatibility_is_weaker_than_backward_compatibility(
        seed in 0u64..10_000,
        stop in 0u64..30,
        mode_ix in 0usize..4,
    ) {
        let s = mid_search(Mode::ALL[mode_ix], seed, stop);
        let v5: Vec<_> = check(s.state(), s.formula(), 5, None).into_iter().map(|v| (v.clause, v.lit)).collect();
        for v in check(s.state(), s.formula(), 7, None) {
            prop_assert!(v5.contains(&(v.clause, v.lit)), "{v:?} violates 7 but not 5");
        }
        let v4: Vec<_> = check(s.state(), s.formula(), 4, None).into_iter().map(|v| (v.clause, v.lit)).collect();
        for v in v4 {
            let in7 = check(s.state(), s.formula(), 7, None).iter().any(|w| (w.clause, w.lit) == v);
            prop_assert!(in7, "{v:?} violates 4 but not 7");
        }
    }

    #[test]
    fn checking_has_no_side_effects(seed in 0u64..10_000, stop in 0u64..20) {
        let s = mid_search(Mode::Lscb, seed, stop);
        let before = format!("{:?}", s.state());
        for id in ALL_INVARIANTS {
            check(s.state(), s.formula(), id, None);
        }
        prop_assert_eq!(before, format!("{:?}", s.state()));
    }

    #[test]
    fn ncb_trail_levels_never_decrease(seed in 0u64..10_000, stop in 0u64..40) {
        let s = mid_search(Mode::Ncb, seed, stop);
        let st = s.state();
        let levels: Vec<_> = st.trail().iter().map(|&l| st.level(l)).collect();
        prop_assert!(levels.windows(2).all(|w| w[0] <= w[1]), "{levels:?}");
    }
}
