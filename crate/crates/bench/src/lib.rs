//! Shared workloads for the Criterion benchmarks under `benches/`.
use lazysat::testkit::{clauses_for, random_3sat};
use lazysat::{Formula, Mode, Solver, SolverConfig};

/// `count` phase-transition instances with `n` variables.
pub fn batch(n: u32, count: u64, seed: u64) -> Vec<Formula> {
    (0..count).map(|i| random_3sat(n, clauses_for(n), seed + i)).collect()
}

/// Purely chronological configuration for the CB modes, restarts off.
pub fn config(mode: Mode) -> SolverConfig {
    SolverConfig {
        cb_threshold: 1,
        ..SolverConfig::with_mode(mode)
    }
}

/// Solves every formula; returns the total propagation count.
pub fn solve_batch(formulas: &[Formula], cfg: &SolverConfig) -> u64 {
    formulas
        .iter()
        .map(|f| {
            let mut s = Solver::from_formula(f.clone(), cfg.clone()).expect("valid config");
            s.solve();
            s.stats().propagations
        })
        .sum()
}
