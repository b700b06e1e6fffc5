//! Report and value serialization: JSON, CSV and one-line text.

use std::io::Write;

use serde_json::{Map, Number, Value};
use sl2_cocycles::harness::{SuiteInfo, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

pub const CSV_COLUMNS: [&str; 10] = [
    "suite",
    "field",
    "trials_requested",
    "trials_run",
    "rejected",
    "max_residual",
    "tolerance",
    "failures",
    "seed",
    "elapsed_ms",
];

/// Seventeen significant digits; `null` for values JSON cannot hold.
fn real(x: f64) -> Value {
    if !x.is_finite() {
        return Value::Null;
    }
    let text = format!("{x:.16e}");
    Value::Number(text.parse::<Number>().expect("formatted float is a JSON number"))
}

fn real_text(x: f64) -> String {
    format!("{x:.16e}")
}

fn report_json(r: &VerificationReport) -> Value {
    let failures = r
        .failures
        .iter()
        .map(|f| {
            let mut m = Map::new();
            m.insert("input".into(), Value::String(f.input.clone()));
            m.insert("residual".into(), real(f.residual));
            Value::Object(m)
        })
        .collect();
    let mut m = Map::new();
    m.insert("suite".into(), Value::String(r.suite.clone()));
    m.insert("field".into(), Value::String(r.field.name().into()));
    m.insert("trials_requested".into(), r.trials_requested.into());
    m.insert("trials_run".into(), r.trials_run.into());
    m.insert("rejected".into(), r.rejected.into());
    m.insert("max_residual".into(), real(r.max_residual));
    m.insert("tolerance".into(), real(r.tolerance));
    m.insert("failures".into(), Value::Array(failures));
    m.insert("seed".into(), r.seed.into());
    m.insert("elapsed_ms".into(), r.elapsed_ms.into());
    Value::Object(m)
}

pub fn text_line(r: &VerificationReport) -> String {
    format!(
        "SUITE {} field={} trials={} rejected={} max_residual={:e} tol={:e} {}",
        r.suite,
        r.field.name(),
        r.trials_run,
        r.rejected,
        r.max_residual,
        r.tolerance,
        if r.passed() { "PASS" } else { "FAIL" }
    )
}

pub fn write_reports(out: &mut dyn Write, reports: &[VerificationReport], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let doc = Value::Array(reports.iter().map(report_json).collect());
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(CSV_COLUMNS)?;
            for r in reports {
                w.write_record([
                    r.suite.clone(),
                    r.field.name().to_string(),
                    r.trials_requested.to_string(),
                    r.trials_run.to_string(),
                    r.rejected.to_string(),
                    real_text(r.max_residual),
                    real_text(r.tolerance),
                    r.failures.len().to_string(),
                    r.seed.to_string(),
                    r.elapsed_ms.to_string(),
                ])?;
            }
            w.flush()
        }
        Format::Text => reports.iter().try_for_each(|r| writeln!(out, "{}", text_line(r))),
    }
}

/// One formula's result; a single component is printed bare in text mode.
pub fn write_values(out: &mut dyn Write, formula: &str, values: &[(&str, f64)], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let mut m = Map::new();
            m.insert("formula".into(), Value::String(formula.into()));
            for &(name, x) in values {
                m.insert(name.into(), real(x));
            }
            serde_json::to_writer(&mut *out, &Value::Object(m))?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(std::iter::once("formula").chain(values.iter().map(|v| v.0)))?;
            w.write_record(std::iter::once(formula.to_string()).chain(values.iter().map(|v| real_text(v.1))))?;
            w.flush()
        }
        Format::Text => match values {
            [(_, x)] => writeln!(out, "{x}"),
            _ => values.iter().try_for_each(|(name, x)| writeln!(out, "{name}={x}")),
        },
    }
}

pub fn write_suites(out: &mut dyn Write, suites: &[&SuiteInfo], format: Format) -> std::io::Result<()> {
    match format {
        Format::Json => {
            let doc: Vec<Value> = suites
                .iter()
                .map(|s| {
                    let mut m = Map::new();
                    m.insert("name".into(), Value::String(s.name.into()));
                    m.insert("real_only".into(), Value::Bool(s.real_only));
                    m.insert("tolerance".into(), real(s.tolerance));
                    m.insert("summary".into(), Value::String(s.summary.into()));
                    Value::Object(m)
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &doc)?;
            writeln!(out)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(["name", "real_only", "tolerance", "summary"])?;
            for s in suites {
                w.write_record([
                    s.name,
                    if s.real_only { "true" } else { "false" },
                    &real_text(s.tolerance),
                    s.summary,
                ])?;
            }
            w.flush()
        }
        Format::Text => suites.iter().try_for_each(|s| {
            let fields = if s.real_only { "real" } else { "real,complex" };
            writeln!(out, "{:<26} {:<13} tol={:<6e} {}", s.name, fields, s.tolerance, s.summary)
        }),
    }
}
