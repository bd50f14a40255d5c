//! The statistics CSV shared by `solve --stats` and `bench`.
use lazysat::{Mode, Stats};
use serde::Serialize;
use std::io::Write;
use std::time::Duration;

/// Column order is part of the output format.
pub const HEADER: [&str; 11] = [
    "instance",
    "n",
    "m",
    "mode",
    "verdict",
    "propagations",
    "decisions",
    "conflicts",
    "reimplications",
    "mli_detected",
    "wall_time",
];

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Row {
    pub instance: String,
    pub n: Option<u32>,
    pub m: Option<usize>,
    pub mode: Mode,
    pub verdict: &'static str,
    pub propagations: Num,
    pub decisions: Num,
    pub conflicts: Num,
    pub reimplications: Num,
    pub mli_detected: Num,
    /// Seconds; empty unless timing was requested.
    pub wall_time: Option<f64>,
}

/// Counts on data rows, means on summary rows.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Num {
    Count(u64),
    Mean(Option<f64>),
}

pub fn verdict_name(sat: bool) -> &'static str {
    if sat {
        "SAT"
    } else {
        "UNSAT"
    }
}

impl Row {
    pub fn data(
        instance: &str,
        n: u32,
        m: usize,
        mode: Mode,
        sat: bool,
        stats: &Stats,
        wall_time: Option<Duration>,
    ) -> Row {
        Row {
            instance: instance.to_string(),
            n: Some(n),
            m: Some(m),
            mode,
            verdict: verdict_name(sat),
            propagations: Num::Count(stats.propagations),
            decisions: Num::Count(stats.decisions),
            conflicts: Num::Count(stats.conflicts),
            reimplications: Num::Count(stats.reimplications),
            mli_detected: Num::Count(stats.mli_detected),
            wall_time: wall_time.map(|d| d.as_secs_f64()),
        }
    }

    /// Mean of every counter over `rows`, labelled `mean`. Means of an
    /// empty group are left blank.
    pub fn summary(mode: Mode, sat: bool, rows: &[&Row]) -> Row {
        let mean = |get: fn(&Row) -> Num| {
            let values: Vec<u64> = rows
                .iter()
                .filter_map(|r| match get(r) {
                    Num::Count(c) => Some(c),
                    Num::Mean(_) => None,
                })
                .collect();
            Num::Mean(
                (!values.is_empty())
                    .then(|| values.iter().sum::<u64>() as f64 / values.len() as f64),
            )
        };
        Row {
            instance: "mean".to_string(),
            n: None,
            m: None,
            mode,
            verdict: verdict_name(sat),
            propagations: mean(|r| r.propagations),
            decisions: mean(|r| r.decisions),
            conflicts: mean(|r| r.conflicts),
            reimplications: mean(|r| r.reimplications),
            mli_detected: mean(|r| r.mli_detected),
            wall_time: None,
        }
    }
}

/// Writes a header and `rows`.
pub fn write_csv<W: Write>(out: W, rows: &[Row]) -> csv::Result<()> {
    let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(out);
    w.write_record(HEADER)?;
    for r in rows {
        w.serialize(r)?;
    }
    w.flush()?;
    Ok(())
}
