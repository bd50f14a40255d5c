//! Test support: a reference oracle, random instances and the worked
//! examples as fixtures.
pub mod fixtures;
pub mod oracle;
pub mod random;

pub use oracle::{brute_force, entails, OracleError, Satisfiability};
pub use random::{clauses_for, load_dir, random_3sat, LoadError};
