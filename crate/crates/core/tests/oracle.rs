use lazysat::testkit::{brute_force, clauses_for, entails, random_3sat, Satisfiability};
use lazysat::{AnalyzeStrategy, CheckLevel, Mode, Solver, SolverConfig, Verdict};

fn configs() -> Vec<SolverConfig> {
    let mut out = Vec::new();
    for mode in Mode::ALL {
        for analyze in [AnalyzeStrategy::Analyze1, AnalyzeStrategy::Analyze2] {
            for cb_threshold in [1, 100] {
                out.push(SolverConfig {
                    mode,
                    analyze,
                    cb_threshold,
                    ..SolverConfig::default()
                });
            }
        }
    }
    out
}

#[test]
fn every_configuration_agrees_with_the_oracle() {
    for seed in 0..60u64 {
        let n = 10 + (seed % 30) as u32;
        let f = random_3sat(n, clauses_for(n), seed);
        let expected = brute_force(&f).unwrap();
        for cfg in configs() {
            let label = format!("seed {seed} {:?} {:?} t={}", cfg.mode, cfg.analyze, cfg.cb_threshold);
            let mut s = Solver::from_formula(f.clone(), cfg).unwrap();
            match s.solve() {
                Verdict::Sat(m) => {
                    assert_eq!(expected, Satisfiability::Sat, "{label}");
                    assert!(f.is_satisfied_by(m.as_slice()), "{label}: bad model");
                }
                Verdict::Unsat => assert_eq!(expected, Satisfiability::Unsat, "{label}"),
            }
        }
    }
}

#[test]
fn minimization_and_restarts_stay_sound() {
    for seed in 0..40u64 {
        let n = 12 + (seed % 9) as u32;
        let f = random_3sat(n, clauses_for(n), 1000 + seed);
        let expected = brute_force(&f).unwrap();
        for mode in Mode::ALL {
            let cfg = SolverConfig {
                minimize: true,
                blockers: cfg_blockers(seed),
                restarts: lazysat::RestartPolicy::Agility,
                agility_decay: 0.9,
                agility_limit: 0.5,
                record_learned: true,
                check_level: CheckLevel::Coarse,
                ..SolverConfig::with_mode(mode)
            };
            let mut s = Solver::from_formula(f.clone(), cfg).unwrap();
            let v = s.solve();
            assert_eq!(v.is_sat(), expected == Satisfiability::Sat, "seed {seed} {mode}");
            for rec in s.learned_log() {
                assert!(rec.falsified, "seed {seed} {mode}: {:?}", rec.lits);
                assert!(entails(&f, &rec.lits).unwrap(), "seed {seed} {mode}: {:?}", rec.lits);
            }
            // Blockers let a clause be skipped with both watches falsified.
            // WCB keeps no watch invariant beyond the weak one.
            let ids: &[u8] = match (cfg_blockers(seed), mode) {
                (true, Mode::Wcb) => &[2, 3, 6],
                (true, _) => &[2, 3, 6, 8],
                (false, _) => &[1, 2, 3, 6],
            };
            for &id in ids {
                assert_eq!(s.violation_count(id), 0, "seed {seed} {mode} inv {id}: {:?}", s.violations());
            }
        }
    }
}

fn cfg_blockers(seed: u64) -> bool {
    seed.is_multiple_of(2)
}
