//! Batch jobs from a JSON config, run concurrently and reported in order.
//!
//! The config is a JSON array of jobs:
//!
//! ```json
//! [{"parts": [1, 3], "analyses": ["table", "balance"], "n_max": 30, "q": 2}]
//! ```
//!
//! Optional fields: `q`, `r`, `n_max`, `tol`, `mod`, `terms`, `at`. A job
//! whose analysis lacks a field it needs reports an error for that analysis
//! only.

use std::path::Path;

use rayon::prelude::*;
use serde::Deserialize;
use serde_json::{json, Value};

use super::analyses;
use super::output::{join, object, CsvTable, Rendered};
use super::exit_code;
use crate::balance::DEFAULT_TOLERANCE;
use crate::error::{Error, Result};
use crate::parts::PartSet;
use crate::spectral::GAP_TOLERANCE;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Analysis {
    Validate,
    Table,
    Balance,
    Roots,
    Properties,
    Minrec,
    OracleCheck,
}

impl Analysis {
    fn name(self) -> &'static str {
        match self {
            Analysis::Validate => "validate",
            Analysis::Table => "table",
            Analysis::Balance => "balance",
            Analysis::Roots => "roots",
            Analysis::Properties => "properties",
            Analysis::Minrec => "minrec",
            Analysis::OracleCheck => "oracle-check",
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Job {
    pub parts: Vec<i64>,
    pub analyses: Vec<Analysis>,
    pub q: Option<usize>,
    pub r: Option<usize>,
    pub n_max: Option<usize>,
    pub tol: Option<f64>,
    #[serde(rename = "mod")]
    pub modulus: Option<usize>,
    pub terms: Option<usize>,
    pub at: Option<String>,
}

fn need<T: Copy>(value: Option<T>, field: &str, analysis: Analysis) -> Result<T> {
    value.ok_or_else(|| {
        Error::InvalidArgument(format!("{} needs \"{field}\"", analysis.name()))
    })
}

fn run_one(job: &Job, set: &PartSet, analysis: Analysis, max_cells: u128) -> Result<(Rendered, bool)> {
    let ok = |r: Rendered| Ok((r, true));
    match analysis {
        Analysis::Validate => ok(analyses::validate(set)),
        Analysis::Table => {
            let at = job.at.as_deref().map(analyses::parse_point).transpose()?;
            ok(analyses::table(set, need(job.n_max, "n_max", analysis)?, at, max_cells)?)
        }
        Analysis::Balance => ok(analyses::balance(
            set,
            need(job.q, "q", analysis)?,
            job.r,
            need(job.n_max, "n_max", analysis)?,
            job.tol.unwrap_or(DEFAULT_TOLERANCE),
        )?),
        Analysis::Roots => ok(analyses::roots(
            set,
            need(job.q, "q", analysis)?,
            job.tol.unwrap_or(GAP_TOLERANCE),
        )?),
        Analysis::Properties => ok(analyses::properties(
            set,
            need(job.n_max, "n_max", analysis)?,
            job.modulus.unwrap_or(set.m()),
            job.tol.unwrap_or(analyses::DEFAULT_INTERLACE_TOLERANCE),
            max_cells,
        )?),
        Analysis::Minrec => ok(analyses::minrec(set, need(job.terms, "terms", analysis)?)?),
        Analysis::OracleCheck => {
            analyses::oracle_check(set, need(job.n_max, "n_max", analysis)?, max_cells)
        }
    }
}

struct Outcome {
    analysis: &'static str,
    result: std::result::Result<Rendered, Error>,
    /// 0 on success, otherwise the exit code this outcome implies.
    status: i32,
}

fn run_job(job: &Job, max_cells: u128) -> std::result::Result<Vec<Outcome>, Error> {
    let set = PartSet::new(&job.parts)?;
    Ok(job
        .analyses
        .iter()
        .map(|&a| match run_one(job, &set, a, max_cells) {
            Ok((rendered, passed)) => Outcome {
                analysis: a.name(),
                result: Ok(rendered),
                status: if passed { 0 } else { 1 },
            },
            Err(e) => Outcome {
                analysis: a.name(),
                status: exit_code(&e),
                result: Err(e),
            },
        })
        .collect())
}

/// Runs the jobs in `path`. The exit status is the largest code among failed
/// analyses; every result is still reported.
pub fn run_file(path: &Path, max_cells: u128) -> Result<(Rendered, i32)> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
    let jobs: Vec<Job> = serde_json::from_str(&text)
        .map_err(|e| Error::InvalidArgument(format!("bad scan config: {e}")))?;
    Ok(run_jobs(&jobs, max_cells))
}

pub fn run_jobs(jobs: &[Job], max_cells: u128) -> (Rendered, i32) {
    let outcomes: Vec<_> = jobs.par_iter().map(|job| run_job(job, max_cells)).collect();

    let mut status = 0;
    let mut entries = Vec::with_capacity(jobs.len());
    let mut csv = CsvTable::new(&["job", "parts", "analysis", "status", "row", "column", "value"]);
    for (index, (job, outcome)) in jobs.iter().zip(outcomes).enumerate() {
        let parts = join(&job.parts, ",");
        let mut results = serde_json::Map::new();
        let mut job_error = Value::Null;
        match outcome {
            Err(e) => {
                status = status.max(exit_code(&e));
                csv.push(vec![
                    index.to_string(),
                    parts.clone(),
                    String::new(),
                    "error".into(),
                    String::new(),
                    String::new(),
                    e.to_string(),
                ]);
                job_error = json!(e.to_string());
            }
            Ok(list) => {
                for o in list {
                    status = status.max(o.status);
                    match o.result {
                        Ok(rendered) => {
                            for (row_index, row) in rendered.csv.rows.iter().enumerate() {
                                for (column, value) in rendered.csv.headers.iter().zip(row) {
                                    csv.push(vec![
                                        index.to_string(),
                                        parts.clone(),
                                        o.analysis.into(),
                                        "ok".into(),
                                        row_index.to_string(),
                                        (*column).into(),
                                        value.clone(),
                                    ]);
                                }
                            }
                            results.insert(o.analysis.into(), rendered.json);
                        }
                        Err(e) => {
                            csv.push(vec![
                                index.to_string(),
                                parts.clone(),
                                o.analysis.into(),
                                "error".into(),
                                String::new(),
                                String::new(),
                                e.to_string(),
                            ]);
                            results.insert(o.analysis.into(), json!({ "error": e.to_string() }));
                        }
                    }
                }
            }
        }
        entries.push(object(vec![
            ("job", json!(index)),
            ("parts", json!(job.parts)),
            ("error", job_error),
            ("results", Value::Object(results)),
        ]));
    }
    (
        Rendered {
            json: Value::Array(entries),
            csv,
        },
        status,
    )
}
