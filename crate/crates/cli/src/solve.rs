use crate::args::SolveArgs;
use crate::stats::{write_csv, Row};
use crate::CliError;
use lazysat::checker::ALL_INVARIANTS;
use lazysat::{parse_dimacs, CheckLevel, Solver, Verdict};
use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::Path;
use std::time::Instant;

pub const EXIT_SAT: i32 = 10;
pub const EXIT_UNSAT: i32 = 20;

/// Literals per `v` line.
const MODEL_LINE: usize = 10;

pub fn run_solve(args: &SolveArgs, out: &mut dyn Write) -> Result<i32, CliError> {
    let text = std::fs::read_to_string(&args.input).map_err(|e| CliError::io(&args.input, e))?;
    let formula = parse_dimacs(&text).map_err(|e| CliError::Parse {
        path: args.input.clone(),
        source: e,
    })?;
    let (n, m) = (formula.num_vars(), formula.num_clauses());
    let cfg = lazysat::SolverConfig {
        check_level: args.check,
        trace: args.trace.is_some(),
        ..args.solver.config(args.mode)
    };
    let mut solver = Solver::from_formula(formula, cfg)?;
    let start = Instant::now();
    let verdict = solver.solve();
    let elapsed = start.elapsed();

    if args.check != CheckLevel::Off {
        for id in ALL_INVARIANTS {
            let count = solver.violation_count(id);
            if count > 0 {
                writeln!(out, "c invariant {id}: {count} violations")?;
            }
        }
    }
    if let Some(path) = &args.trace {
        write_trace(path, &mut solver)?;
    }
    if let Some(path) = &args.stats {
        let row = Row::data(
            &instance_name(&args.input),
            n,
            m,
            args.mode,
            verdict.is_sat(),
            solver.stats(),
            args.solver.timing.then_some(elapsed),
        );
        let file = File::create(path).map_err(|e| CliError::io(path, e))?;
        write_csv(file, &[row])?;
    }

    match verdict {
        Verdict::Sat(model) => {
            writeln!(out, "s SATISFIABLE")?;
            let lits: Vec<String> = model.lits().map(|l| l.to_dimacs().to_string()).collect();
            for chunk in lits.chunks(MODEL_LINE) {
                writeln!(out, "v {}", chunk.join(" "))?;
            }
            writeln!(out, "v 0")?;
            Ok(EXIT_SAT)
        }
        Verdict::Unsat => {
            writeln!(out, "s UNSATISFIABLE")?;
            Ok(EXIT_UNSAT)
        }
    }
}

fn write_trace(path: &Path, solver: &mut Solver) -> Result<(), CliError> {
    let file = File::create(path).map_err(|e| CliError::io(path, e))?;
    let mut w = BufWriter::new(file);
    for event in solver.take_trace() {
        serde_json::to_writer(&mut w, &event)?;
        w.write_all(b"\n").map_err(|e| CliError::io(path, e))?;
    }
    w.flush().map_err(|e| CliError::io(path, e))
}

pub fn instance_name(path: &Path) -> String {
    path.file_stem()
        .map(|s| s.to_string_lossy().into_owned())
        .unwrap_or_else(|| path.display().to_string())
}
