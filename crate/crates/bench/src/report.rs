use std::str::FromStr;

use serde::Serialize;

use crate::error::{BenchError, Result};
use crate::run::{BenchReport, RunRow};

pub const CSV_HEADER: [&str; 12] = [
    "solver",
    "dataset",
    "perm",
    "seed",
    "iterations",
    "time_s",
    "f_final",
    "kkt_gap",
    "free_steps",
    "clipped_steps",
    "planning_steps",
    "converged",
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl FromStr for Format {
    type Err = BenchError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Format::Json),
            "csv" => Ok(Format::Csv),
            _ => Err(BenchError::Config(format!("unknown format {s:?}"))),
        }
    }
}

#[derive(Serialize)]
struct CsvRow<'a> {
    solver: &'a str,
    dataset: &'a str,
    perm: usize,
    seed: u64,
    iterations: u64,
    time_s: f64,
    f_final: f64,
    kkt_gap: f64,
    free_steps: u64,
    clipped_steps: u64,
    planning_steps: u64,
    converged: bool,
}

impl<'a> From<&'a RunRow> for CsvRow<'a> {
    fn from(r: &'a RunRow) -> Self {
        Self {
            solver: &r.solver,
            dataset: &r.dataset,
            perm: r.perm,
            seed: r.seed,
            iterations: r.iterations,
            time_s: r.time_s,
            f_final: r.f_final,
            kkt_gap: r.kkt_gap,
            free_steps: r.free_steps,
            clipped_steps: r.clipped_steps,
            planning_steps: r.planning_steps,
            converged: r.converged,
        }
    }
}

pub fn emit_csv(rows: &[RunRow]) -> Result<Vec<u8>> {
    let mut writer = csv::WriterBuilder::new()
        .has_headers(false)
        .from_writer(Vec::new());
    writer.write_record(CSV_HEADER)?;
    for row in rows {
        writer.serialize(CsvRow::from(row))?;
    }
    writer
        .into_inner()
        .map_err(|e| BenchError::Config(format!("csv buffer: {e}")))
}

pub fn emit_report(report: &BenchReport, format: Format) -> Result<Vec<u8>> {
    match format {
        Format::Csv => emit_csv(&report.runs),
        Format::Json => {
            let mut out = serde_json::to_vec_pretty(report)?;
            out.push(b'\n');
            Ok(out)
        }
    }
}

pub fn parse_json_report(bytes: &[u8]) -> Result<BenchReport> {
    Ok(serde_json::from_slice(bytes)?)
}
