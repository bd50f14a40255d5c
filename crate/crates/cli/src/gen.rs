use crate::args::GenArgs;
use crate::CliError;
use lazysat::testkit::{clauses_for, random_3sat};
use lazysat::write_dimacs;
use std::io::Write;

/// File stem of generated instance `seed`.
pub fn instance_id(n: u32, m: usize, seed: u64) -> String {
    format!("rand3-{n}-{m}-{seed}")
}

pub fn run_gen(args: &GenArgs, out: &mut dyn Write) -> Result<(), CliError> {
    if args.vars < 3 {
        return Err(CliError::Usage("3-SAT needs at least 3 variables".into()));
    }
    let m = args.clauses.unwrap_or_else(|| clauses_for(args.vars));
    if let Some(dir) = &args.out_dir {
        std::fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))?;
    }
    for i in 0..args.count as u64 {
        let seed = args.seed + i;
        let text = write_dimacs(&random_3sat(args.vars, m, seed));
        match &args.out_dir {
            Some(dir) => {
                let path = dir.join(format!("{}.cnf", instance_id(args.vars, m, seed)));
                std::fs::write(&path, text).map_err(|e| CliError::io(&path, e))?;
            }
            None => {
                writeln!(out, "c seed {seed}")?;
                out.write_all(text.as_bytes())?;
            }
        }
    }
    Ok(())
}
