//! A CDCL SAT solver with four backtracking modes:
//!
//! * NCB, classical non-chronological backjumping;
//! * WCB, chronological backtracking that tolerates missed lower
//!   implications;
//! * RSCB, chronological backtracking that repairs by repropagation;
//! * LSCB, chronological backtracking that records missed lower
//!   implications during propagation and reimplies them when backtracking.
//!
//! ```
//! use lazysat::{parse_dimacs, solve, Mode, SolverConfig, Verdict};
//!
//! let f = parse_dimacs("p cnf 2 2\n1 2 0\n-1 0\n").unwrap();
//! let (verdict, stats) = solve(f, SolverConfig::with_mode(Mode::Lscb)).unwrap();
//! let Verdict::Sat(model) = verdict else { panic!() };
//! assert!(model.as_slice()[2]);
//! assert!(stats.propagations >= 2);
//! ```
pub mod analyze;
pub mod backtrack;
pub mod checker;
pub mod config;
pub mod dimacs;
pub mod formula;
pub mod lit;
pub mod propagate;
pub mod restart;
pub mod solver;
pub mod state;
pub mod testkit;
pub mod trace;
pub mod vsids;

pub use analyze::{resolve, Analysis, LearnedClause, ResolutionStep};
pub use checker::{check, check_many, Violation};
pub use config::{AnalyzeStrategy, CheckLevel, ConfigError, Mode, RestartPolicy, SolverConfig};
pub use dimacs::{parse_dimacs, write_dimacs, ParseError};
pub use formula::{Clause, ClauseAdd, ClauseRef, Formula};
pub use lit::{Level, Lit, Var};
pub use propagate::PropagationOutcome;
pub use solver::{
    choose_backtrack_level, solve, ConflictResolution, LearnedRecord, Model, Solver, Stats, Verdict,
};
pub use state::{TrailState, Value};
pub use trace::{Event, ReasonKind};
