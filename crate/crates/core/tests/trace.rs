use lazysat::testkit::{clauses_for, random_3sat};
use lazysat::{AnalyzeStrategy, Event, Formula, Lit, Mode, Solver, SolverConfig, Verdict};
use std::collections::HashMap;

/// Rebuilds the trail from the event stream alone.
#[derive(Default)]
struct Replay {
    trail: Vec<(i32, u32)>,
    propagations: u64,
    decisions: u64,
    reimplications: u64,
    restarts: u64,
}

impl Replay {
    fn value(&self, lit: i32) -> Option<bool> {
        self.trail.iter().find_map(|&(x, _)| {
            if x == lit {
                Some(true)
            } else if x == -lit {
                Some(false)
            } else {
                None
            }
        })
    }

    fn assign(&mut self, lit: i32, level: u32) {
        assert_eq!(self.value(lit), None, "{lit} assigned twice");
        self.trail.push((lit, level));
    }

    fn apply(&mut self, f: &Formula, e: &Event) {
        match *e {
            Event::Decide { lit, level } => {
                self.decisions += 1;
                self.assign(lit, level);
            }
            Event::Imply { lit, level, clause } => {
                self.check_unit(f, clause, lit);
                self.assign(lit, level);
            }
            Event::Reimply { lit, level, clause } => {
                self.check_unit(f, clause, lit);
                self.reimplications += 1;
                self.assign(lit, level);
            }
            Event::Propagate { lit, .. } => {
                assert_eq!(self.value(lit), Some(true), "propagating unassigned {lit}");
                self.propagations += 1;
            }
            Event::Backtrack { to, removed, .. } => {
                let before = self.trail.len();
                self.trail.retain(|&(_, l)| l <= to);
                assert_eq!(before - self.trail.len(), removed);
            }
            Event::Restart => self.restarts += 1,
            _ => {}
        }
    }

    fn check_unit(&self, f: &Formula, clause: u32, lit: i32) {
        let c = f.clause(lazysat::ClauseRef::new(clause as usize));
        for l in c.lits() {
            let x = l.to_dimacs();
            if x != lit {
                assert_eq!(self.value(x), Some(false), "{x} in reason of {lit} is not false");
            }
        }
        assert!(c.lits().contains(&Lit::from_dimacs(lit)));
    }
}

fn traced(mode: Mode, analyze: AnalyzeStrategy) -> SolverConfig {
    SolverConfig {
        analyze,
        cb_threshold: 1,
        trace: true,
        restarts: lazysat::RestartPolicy::Agility,
        agility_decay: 0.9,
        agility_limit: 0.5,
        ..SolverConfig::with_mode(mode)
    }
}

#[test]
fn replaying_the_trace_reproduces_the_trail() {
    for seed in 0..30u64 {
        let n = 20 + (seed % 15) as u32;
        let f = random_3sat(n, clauses_for(n), 500 + seed);
        for mode in Mode::ALL {
            for analyze in [AnalyzeStrategy::Analyze1, AnalyzeStrategy::Analyze2] {
                let mut s = Solver::from_formula(f.clone(), traced(mode, analyze)).unwrap();
                let verdict = s.solve();
                let events = s.take_trace();
                let mut r = Replay::default();
                for e in &events {
                    r.apply(s.formula(), e);
                }
                let label = format!("seed {seed} {mode} {analyze:?}");
                let trail: Vec<(i32, u32)> = s
                    .state()
                    .trail()
                    .iter()
                    .map(|&l| (l.to_dimacs(), s.state().level(l).get()))
                    .collect();
                if let Verdict::Sat(_) = verdict {
                    assert_eq!(r.trail, trail, "{label}");
                    assert_eq!(r.trail.len(), n as usize, "{label}");
                }
                let st = s.stats();
                assert_eq!(r.propagations, st.propagations, "{label}");
                assert_eq!(r.decisions, st.decisions, "{label}");
                assert_eq!(r.reimplications, st.reimplications, "{label}");
                assert_eq!(r.restarts, st.restarts, "{label}");
                let conflicts = events.iter().filter(|e| matches!(e, Event::Conflict { .. })).count();
                assert_eq!(conflicts as u64, st.conflicts, "{label}");
                if mode != Mode::Lscb {
                    assert_eq!(st.reimplications, 0, "{label}");
                }
            }
        }
    }
}

#[test]
fn trace_serializes_one_object_per_event() {
    let f = random_3sat(20, 91, 3);
    let mut s = Solver::from_formula(f, traced(Mode::Lscb, AnalyzeStrategy::Analyze2)).unwrap();
    s.solve();
    let mut kinds: HashMap<String, usize> = HashMap::new();
    for e in s.take_trace() {
        let line = serde_json::to_string(&e).unwrap();
        assert!(!line.contains('\n'));
        let v: serde_json::Value = serde_json::from_str(&line).unwrap();
        *kinds.entry(v["kind"].as_str().unwrap().to_string()).or_default() += 1;
    }
    for k in ["decide", "imply", "propagate"] {
        assert!(kinds.contains_key(k), "{kinds:?}");
    }
}

#[test]
fn runs_are_deterministic() {
    for seed in 0..10u64 {
        let f = random_3sat(40, clauses_for(40), 77 + seed);
        for mode in Mode::ALL {
            let run = || {
                let mut s = Solver::from_formula(f.clone(), traced(mode, AnalyzeStrategy::Analyze2)).unwrap();
                let v = s.solve();
                (v, *s.stats(), s.take_trace())
            };
            let (v1, s1, t1) = run();
            let (v2, s2, t2) = run();
            assert_eq!(v1, v2);
            assert_eq!(s1, s2);
            assert_eq!(t1, t2);
        }
    }
}

#[test]
fn solving_twice_gives_the_same_answer() {
    let f = random_3sat(30, clauses_for(30), 12);
    let mut s = Solver::from_formula(f, SolverConfig::with_mode(Mode::Lscb)).unwrap();
    let first = s.solve().is_sat();
    // Learned clauses and activities carry over, so only the verdict must agree.
    assert_eq!(s.solve().is_sat(), first);
}
