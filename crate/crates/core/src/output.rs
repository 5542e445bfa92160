//! CSV and JSON serialisation of result tables.
//!
//! Sweep and eval tables share the columns
//! `sweep_param,sweep_value,engine,capacity_bits,uncertainty,status,reason`;
//! JSON output is an array of objects with the same field names. Missing
//! numbers are empty CSV cells and JSON `null`. Floats are written in
//! shortest round-trip form.

use std::io::{Read, Write};
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::experiment::{RegionPoint, ResultRow, ValidationReport};

pub const ROW_COLUMNS: [&str; 7] = [
    "sweep_param",
    "sweep_value",
    "engine",
    "capacity_bits",
    "uncertainty",
    "status",
    "reason",
];

#[derive(Debug, Error)]
pub enum OutputError {
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OutputFormat {
    #[default]
    Csv,
    Json,
}

impl FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "csv" => Ok(OutputFormat::Csv),
            "json" => Ok(OutputFormat::Json),
            other => Err(format!("unknown output format `{other}` (expected csv or json)")),
        }
    }
}

fn write_csv<T: Serialize, W: Write>(items: &[T], out: W) -> Result<(), OutputError> {
    let mut w = csv::Writer::from_writer(out);
    for item in items {
        w.serialize(item)?;
    }
    w.flush()?;
    Ok(())
}

fn write_json<T: Serialize + ?Sized, W: Write>(value: &T, mut out: W) -> Result<(), OutputError> {
    serde_json::to_writer_pretty(&mut out, value)?;
    out.write_all(b"\n")?;
    Ok(())
}

pub fn write_rows<W: Write>(rows: &[ResultRow], format: OutputFormat, out: W) -> Result<(), OutputError> {
    match format {
        OutputFormat::Csv => {
            if rows.is_empty() {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(ROW_COLUMNS)?;
                w.flush()?;
                Ok(())
            } else {
                write_csv(rows, out)
            }
        }
        OutputFormat::Json => write_json(rows, out),
    }
}

pub fn read_rows_csv<R: Read>(input: R) -> Result<Vec<ResultRow>, OutputError> {
    let mut r = csv::Reader::from_reader(input);
    Ok(r.deserialize().collect::<Result<Vec<ResultRow>, _>>()?)
}

pub fn read_rows_json<R: Read>(input: R) -> Result<Vec<ResultRow>, OutputError> {
    Ok(serde_json::from_reader(input)?)
}

/// Region tables: `rho,energy_linear,capacity_bits,uncertainty,status,reason`.
pub fn write_region<W: Write>(points: &[RegionPoint], format: OutputFormat, out: W) -> Result<(), OutputError> {
    match format {
        OutputFormat::Csv => write_csv(points, out),
        OutputFormat::Json => write_json(points, out),
    }
}

#[derive(Serialize)]
struct ValidationLine<'a> {
    engine: &'a str,
    capacity_bits: Option<f64>,
    uncertainty: Option<f64>,
    status: &'a str,
    reason: &'a str,
}

/// CSV gives one line per engine plus a `concordance` line whose
/// `capacity_bits` is the quadrature/Monte Carlo gap and `uncertainty` the
/// allowance. JSON carries the full report.
pub fn write_validation<W: Write>(report: &ValidationReport, format: OutputFormat, out: W) -> Result<(), OutputError> {
    match format {
        OutputFormat::Json => write_json(report, out),
        OutputFormat::Csv => {
            let mut lines: Vec<ValidationLine<'_>> = report
                .engines
                .iter()
                .map(|e| ValidationLine {
                    engine: e.engine.name(),
                    capacity_bits: e.capacity_bits,
                    uncertainty: e.uncertainty,
                    status: e.status.name(),
                    reason: &e.reason,
                })
                .collect();
            lines.push(ValidationLine {
                engine: "concordance",
                capacity_bits: report.concordance.abs_delta,
                uncertainty: report.concordance.allowance,
                status: if report.concordance.passed { "ok" } else { "failed" },
                reason: "",
            });
            write_csv(&lines, out)
        }
    }
}
