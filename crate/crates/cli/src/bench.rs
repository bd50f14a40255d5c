//! Mode comparison over a batch of instances.
use crate::args::{BenchArgs, SolverArgs};
use crate::gen::instance_id;
use crate::stats::{write_csv, Row};
use crate::CliError;
use lazysat::testkit::{load_dir, random_3sat};
use lazysat::{Formula, Mode, Solver};
use rayon::prelude::*;
use std::fmt::Write as _;
use std::io::Write;
use std::time::Instant;

pub struct Instance {
    pub id: String,
    pub formula: Formula,
}

/// `count` random instances; instance `i` uses `seed + i`.
pub fn generate(n: u32, m: usize, count: usize, seed: u64) -> Vec<Instance> {
    (0..count as u64)
        .map(|i| Instance {
            id: instance_id(n, m, seed + i),
            formula: random_3sat(n, m, seed + i),
        })
        .collect()
}

struct Outcome {
    row: Row,
    sat: bool,
}

/// Solves every instance in every mode. Rows come back ordered by instance,
/// then by the order of `modes`, followed by two summary rows per mode
/// (SAT, then UNSAT). Fails if the modes disagree on any verdict.
pub fn bench_rows(
    instances: &[Instance],
    modes: &[Mode],
    solver: &SolverArgs,
    jobs: usize,
) -> Result<Vec<Row>, CliError> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs)
        .build()
        .map_err(|e| CliError::Usage(e.to_string()))?;
    let tasks: Vec<(usize, Mode)> = (0..instances.len())
        .flat_map(|i| modes.iter().map(move |&mode| (i, mode)))
        .collect();
    let outcomes: Vec<Outcome> = pool.install(|| {
        tasks
            .par_iter()
            .map(|&(i, mode)| run_one(&instances[i], mode, solver))
            .collect::<Result<_, _>>()
    })?;

    let per_instance = modes.len().max(1);
    for (inst, group) in instances.iter().zip(outcomes.chunks(per_instance)) {
        if group.iter().any(|o| o.sat != group[0].sat) {
            let mut dump = format!("modes disagree on {}:", inst.id);
            for o in group {
                let _ = write!(dump, " {}={}", o.row.mode, o.row.verdict);
            }
            return Err(CliError::Disagreement(dump));
        }
    }

    let mut rows: Vec<Row> = outcomes.into_iter().map(|o| o.row).collect();
    let mut summary = Vec::new();
    for &mode in modes {
        for sat in [true, false] {
            let group: Vec<&Row> = rows
                .iter()
                .filter(|r| r.mode == mode && r.verdict == crate::stats::verdict_name(sat))
                .collect();
            summary.push(Row::summary(mode, sat, &group));
        }
    }
    rows.extend(summary);
    Ok(rows)
}

fn run_one(inst: &Instance, mode: Mode, args: &SolverArgs) -> Result<Outcome, CliError> {
    let mut solver = Solver::from_formula(inst.formula.clone(), args.config(mode))?;
    let start = Instant::now();
    let verdict = solver.solve();
    let elapsed = start.elapsed();
    if let lazysat::Verdict::Sat(model) = &verdict {
        if !inst.formula.is_satisfied_by(model.as_slice()) {
            return Err(CliError::Disagreement(format!(
                "{} under {mode}: model does not satisfy the formula",
                inst.id
            )));
        }
    }
    let sat = verdict.is_sat();
    let row = Row::data(
        &inst.id,
        inst.formula.num_vars(),
        inst.formula.num_clauses(),
        mode,
        sat,
        solver.stats(),
        args.timing.then_some(elapsed),
    );
    Ok(Outcome { row, sat })
}

pub fn run_bench(args: &BenchArgs, out: &mut dyn Write) -> Result<(), CliError> {
    let instances = match (&args.gen, &args.dir) {
        (Some(g), _) => {
            let [n, m, count, seed] = g[..] else {
                return Err(CliError::Usage("--gen takes N M COUNT SEED".into()));
            };
            let n = u32::try_from(n)
                .ok()
                .filter(|&n| n >= 3)
                .ok_or_else(|| CliError::Usage(format!("--gen: bad variable count {n}")))?;
            generate(n, m as usize, count as usize, seed)
        }
        (None, Some(dir)) => load_dir(dir)?
            .into_iter()
            .map(|(id, formula)| Instance { id, formula })
            .collect(),
        (None, None) => return Err(CliError::Usage("either --gen or --dir is required".into())),
    };
    if args.modes.is_empty() {
        return Err(CliError::Usage("--modes must name at least one mode".into()));
    }
    let rows = bench_rows(&instances, &args.modes, &args.solver, args.jobs)?;
    match &args.output {
        Some(path) => {
            let file = std::fs::File::create(path).map_err(|e| CliError::io(path, e))?;
            write_csv(file, &rows)?;
        }
        None => write_csv(out, &rows)?,
    }
    Ok(())
}
