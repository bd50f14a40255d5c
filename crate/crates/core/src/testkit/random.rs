//! Uniform random 3-SAT and loading of instance directories.
use crate::dimacs::{parse_dimacs, ParseError};
use crate::formula::Formula;
use crate::lit::{Lit, Var};
use rand::seq::index::sample;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use std::path::{Path, PathBuf};
use thiserror::Error;

/// Clause-to-variable ratio at the 3-SAT phase transition.
pub const PHASE_TRANSITION_RATIO: f64 = 4.26;

/// Clause counts of the SATLIB uniform random 3-SAT families.
const SATLIB_SIZES: [(u32, usize); 10] = [
    (20, 91),
    (50, 218),
    (75, 325),
    (100, 430),
    (125, 538),
    (150, 645),
    (175, 753),
    (200, 860),
    (225, 960),
    (250, 1065),
];

/// Number of clauses for `n` variables: the SATLIB count when `n` is a
/// SATLIB size, otherwise `round(4.26 n)`.
pub fn clauses_for(n: u32) -> usize {
    SATLIB_SIZES
        .iter()
        .find(|&&(v, _)| v == n)
        .map(|&(_, m)| m)
        .unwrap_or_else(|| (PHASE_TRANSITION_RATIO * f64::from(n)).round() as usize)
}

/// `m` clauses over `n` variables, each with three distinct variables and
/// independent uniform signs. Reproducible from `seed`.
pub fn random_3sat(n: u32, m: usize, seed: u64) -> Formula {
    assert!(n >= 3, "3-SAT needs at least three variables");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut f = Formula::new(n);
    for _ in 0..m {
        let lits: Vec<Lit> = sample(&mut rng, n as usize, 3)
            .into_iter()
            .map(|i| Var::new(i as u32 + 1).lit(rng.gen()))
            .collect();
        f.add_clause(&lits);
    }
    f
}

#[derive(Debug, Error)]
pub enum LoadError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },
    #[error("{path}: {source}")]
    Parse { path: PathBuf, source: ParseError },
}

/// Parses every `.cnf` file in `dir`, sorted by file name.
pub fn load_dir(dir: &Path) -> Result<Vec<(String, Formula)>, LoadError> {
    let io = |path: &Path| {
        let path = path.to_path_buf();
        move |source| LoadError::Io { path, source }
    };
    let mut paths: Vec<PathBuf> = std::fs::read_dir(dir)
        .map_err(io(dir))?
        .map(|e| e.map(|e| e.path()).map_err(io(dir)))
        .collect::<Result<_, _>>()?;
    paths.retain(|p| p.extension().is_some_and(|e| e == "cnf"));
    paths.sort();
    paths
        .into_iter()
        .map(|path| {
            let text = std::fs::read_to_string(&path).map_err(io(&path))?;
            let f = parse_dimacs(&text).map_err(|source| LoadError::Parse {
                path: path.clone(),
                source,
            })?;
            let name = path
                .file_stem()
                .map(|s| s.to_string_lossy().into_owned())
                .unwrap_or_default();
            Ok((name, f))
        })
        .collect()
}
