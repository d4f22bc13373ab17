use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;

use serde::Serialize;
use skewnj::verifiers::{Report, Rhs};

use crate::args::Format;

pub fn open(out: Option<&Path>) -> io::Result<Box<dyn Write>> {
    Ok(match out {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

/// Writes rows as JSON lines, or as CSV with a header row using `flat` to
/// turn each row into a flat record.
pub fn write_rows<T, F, C>(w: Box<dyn Write>, format: Format, rows: &[T], flat: F) -> io::Result<()>
where
    T: Serialize,
    F: Fn(&T) -> C,
    C: Serialize,
{
    match format {
        Format::Json => {
            let mut w = w;
            for row in rows {
                serde_json::to_writer(&mut w, row)?;
                w.write_all(b"\n")?;
            }
            w.flush()
        }
        Format::Csv => {
            let mut csv = csv::Writer::from_writer(w);
            for row in rows {
                csv.serialize(flat(row))?;
            }
            csv.flush()
        }
    }
}

pub fn join(v: &[f64]) -> String {
    v.iter()
        .map(|x| x.to_string())
        .collect::<Vec<_>>()
        .join(" ")
}

#[derive(Debug, Clone, Serialize)]
pub struct ComputeRecord {
    pub space: String,
    pub constant: &'static str,
    pub xi: Option<f64>,
    pub nu: Option<f64>,
    pub p: Option<f64>,
    pub value: f64,
    pub certified: bool,
    pub method: Option<String>,
    pub witness_x: Option<Vec<f64>>,
    pub witness_y: Option<Vec<f64>>,
    pub evaluations: Option<u64>,
    pub seed: u64,
}

#[derive(Serialize)]
pub struct ComputeCsv {
    space: String,
    constant: &'static str,
    xi: Option<f64>,
    nu: Option<f64>,
    p: Option<f64>,
    value: f64,
    certified: bool,
    method: Option<String>,
    witness_x: Option<String>,
    witness_y: Option<String>,
    evaluations: Option<u64>,
    seed: u64,
}

impl ComputeRecord {
    pub fn flat(&self) -> ComputeCsv {
        ComputeCsv {
            space: self.space.clone(),
            constant: self.constant,
            xi: self.xi,
            nu: self.nu,
            p: self.p,
            value: self.value,
            certified: self.certified,
            method: self.method.clone(),
            witness_x: self.witness_x.as_deref().map(join),
            witness_y: self.witness_y.as_deref().map(join),
            evaluations: self.evaluations,
            seed: self.seed,
        }
    }
}

#[derive(Serialize)]
pub struct ReportCsv {
    check_id: String,
    space: String,
    xi: Option<f64>,
    nu: Option<f64>,
    p: Option<f64>,
    lhs: f64,
    rhs: Option<f64>,
    rhs_lower: Option<f64>,
    rhs_upper: Option<f64>,
    relation: String,
    slack: f64,
    passed: bool,
    informational: bool,
    verdict: Option<String>,
    notes: String,
}

fn tag<T: Serialize>(v: &T) -> String {
    serde_json::to_value(v)
        .ok()
        .and_then(|v| v.as_str().map(str::to_string))
        .unwrap_or_default()
}

pub fn report_csv(r: &Report) -> ReportCsv {
    let (rhs, lower, upper) = match r.rhs {
        Rhs::Value(v) => (Some(v), None, None),
        Rhs::Bounds(b) => (None, Some(b.lower), Some(b.upper)),
    };
    ReportCsv {
        check_id: r.check_id.clone(),
        space: r.space_name.clone(),
        xi: r.params.map(|q| q.xi()),
        nu: r.params.map(|q| q.nu()),
        p: r.params.map(|q| q.p()),
        lhs: r.lhs,
        rhs,
        rhs_lower: lower,
        rhs_upper: upper,
        relation: tag(&r.relation),
        slack: r.slack,
        passed: r.passed,
        informational: r.informational,
        verdict: r.verdict.as_ref().map(tag),
        notes: r.notes.clone(),
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SweepRow {
    pub space: String,
    pub xi: f64,
    pub nu: f64,
    pub p: f64,
    pub value: f64,
    pub lower_bound: f64,
    pub upper_bound: f64,
    pub ns_threshold: f64,
    pub certified: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct CatalogEntry {
    pub kind: &'static str,
    pub parameters: &'static str,
    pub certified_constants: &'static str,
    pub notes: String,
}
