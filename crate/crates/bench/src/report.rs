//! CSV writers and readers.
//!
//! Numbers are written with `format!`, which never consults the locale, so
//! the decimal separator is always `.`.

use std::fs::File;
use std::io::{self, Write};
use std::path::Path;

use anyhow::{bail, ensure, Context, Result};
use tspevo::{ConvergenceRecord, OperatorUsage};

pub const CONVERGENCE_HEADER: [&str; 3] = ["generation", "best_cost", "mean_cost"];
pub const USAGE_HEADER: [&str; 4] = ["generation", "strategy", "operator", "child_cost"];
pub const RESULT_HEADER: [&str; 12] = [
    "table",
    "instance",
    "n",
    "column",
    "crossover",
    "mutation",
    "population",
    "generations",
    "runs",
    "best_costs",
    "median_best",
    "optimum",
];

pub fn fmt_cost(c: f64) -> String {
    format!("{c:.6}")
}

pub fn write_convergence<W: Write>(history: &[ConvergenceRecord<f64>], out: W) -> Result<()> {
    ensure!(!history.is_empty(), "convergence history is empty");
    let mut w = csv::Writer::from_writer(out);
    w.write_record(CONVERGENCE_HEADER)?;
    for r in history {
        w.write_record([
            r.generation.to_string(),
            fmt_cost(r.best_cost),
            fmt_cost(r.mean_cost),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_convergence_csv(history: &[ConvergenceRecord<f64>], path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_convergence(history, io::BufWriter::new(file))
}

pub fn read_convergence_csv(path: &Path) -> Result<Vec<ConvergenceRecord<f64>>> {
    let mut r = csv::Reader::from_path(path).with_context(|| format!("cannot read {}", path.display()))?;
    ensure!(
        r.headers()?.iter().eq(CONVERGENCE_HEADER),
        "{}: unexpected header",
        path.display()
    );
    let mut out = Vec::new();
    for rec in r.records() {
        let rec = rec?;
        out.push(ConvergenceRecord {
            generation: rec[0].parse()?,
            best_cost: rec[1].parse()?,
            mean_cost: rec[2].parse()?,
        });
    }
    Ok(out)
}

pub fn write_usage<W: Write>(usage: &[OperatorUsage], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(USAGE_HEADER)?;
    for u in usage {
        w.write_record([
            u.generation.to_string(),
            u.strategy.to_string(),
            u.operator.to_string(),
            fmt_cost(u.child_cost),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_usage_csv(usage: &[OperatorUsage], path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_usage(usage, io::BufWriter::new(file))
}

/// One cell of a result table: every seed's best cost for one instance and
/// operator combination.
#[derive(Debug, Clone, PartialEq)]
pub struct ResultRow {
    pub table: String,
    pub instance: String,
    pub n: usize,
    pub column: String,
    pub crossover: String,
    pub mutation: String,
    pub population: usize,
    pub generations: usize,
    pub best_costs: Vec<f64>,
    pub optimum: Option<f64>,
}

impl ResultRow {
    pub fn median(&self) -> f64 {
        median(&self.best_costs)
    }
}

/// Median; the mean of the middle pair for an even count.
pub fn median(values: &[f64]) -> f64 {
    assert!(!values.is_empty(), "median of nothing");
    let mut v = values.to_vec();
    v.sort_by(|a, b| a.partial_cmp(b).expect("finite costs"));
    let m = v.len() / 2;
    if v.len() % 2 == 1 {
        v[m]
    } else {
        (v[m - 1] + v[m]) / 2.0
    }
}

/// Writes the table, refusing rows whose best cost beats the known optimum.
pub fn write_results<W: Write>(rows: &[ResultRow], out: W) -> Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(RESULT_HEADER)?;
    for row in rows {
        ensure!(!row.best_costs.is_empty(), "{}/{}: no runs", row.instance, row.column);
        if let Some(opt) = row.optimum {
            for &c in &row.best_costs {
                if c < opt {
                    bail!(
                        "{}/{}: best cost {c} is below the known optimum {opt}",
                        row.instance,
                        row.column
                    );
                }
            }
        }
        let costs: Vec<String> = row.best_costs.iter().map(|&c| fmt_cost(c)).collect();
        w.write_record([
            row.table.clone(),
            row.instance.clone(),
            row.n.to_string(),
            row.column.clone(),
            row.crossover.clone(),
            row.mutation.clone(),
            row.population.to_string(),
            row.generations.to_string(),
            row.best_costs.len().to_string(),
            costs.join(";"),
            fmt_cost(row.median()),
            row.optimum.map(fmt_cost).unwrap_or_default(),
        ])?;
    }
    w.flush()?;
    Ok(())
}

pub fn write_results_csv(rows: &[ResultRow], path: &Path) -> Result<()> {
    let file = File::create(path).with_context(|| format!("cannot create {}", path.display()))?;
    write_results(rows, io::BufWriter::new(file))
}
