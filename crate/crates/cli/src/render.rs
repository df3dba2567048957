//! Output records and their JSON, CSV and markdown renderings.

use serde::{Deserialize, Serialize};

use sepdeg_core::oracle::{Check, SuiteReport, Table};
use sepdeg_core::{Code, FieldSpec, ModuleDescriptor, VerificationReport};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Markdown,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct InvariantsRecord {
    pub version: String,
    pub descriptor: ModuleDescriptor,
    pub field: FieldSpec,
    pub degree: u32,
    pub ambient_dim: usize,
    pub dim: usize,
    pub basis: Vec<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComputeRecord {
    pub version: String,
    pub descriptor: ModuleDescriptor,
    pub field: FieldSpec,
    pub group_order: usize,
    pub group_cap: usize,
    pub point_cap: usize,
    pub quantity: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub point: Option<Vec<Code>>,
    pub value: u32,
    /// False when `value` is only a lower bound.
    pub complete: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub per_degree_dims: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub points: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub millis: Option<u64>,
}

#[derive(Serialize)]
struct CsvRow {
    descriptor: String,
    field: String,
    quantity: String,
    predicted: String,
    computed: String,
    verdict: String,
    millis: String,
}

const COLUMNS: [&str; 7] = ["descriptor", "field", "quantity", "predicted", "computed", "verdict", "millis"];

fn field_key(field: &FieldSpec) -> String {
    serde_json::to_string(field).expect("field serializes")
}

fn opt_millis(m: Option<u64>) -> String {
    m.map(|v| v.to_string()).unwrap_or_default()
}

fn bounded(value: u64, exact: bool) -> String {
    if exact {
        value.to_string()
    } else {
        format!(">={value}")
    }
}

fn check_row(descriptor: String, field: &FieldSpec, c: &Check) -> CsvRow {
    CsvRow {
        descriptor,
        field: field_key(field),
        quantity: c.quantity.clone(),
        predicted: c.headline_prediction().map(|p| bounded(p.value, p.exact)).unwrap_or_default(),
        computed: bounded(c.computed, c.complete),
        verdict: c.verdict.to_string(),
        millis: opt_millis(c.millis),
    }
}

fn write_csv(rows: &[CsvRow]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if rows.is_empty() {
        w.write_record(COLUMNS).expect("in-memory write");
    }
    for r in rows {
        w.serialize(r).expect("in-memory write");
    }
    String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
}

fn md_cell(s: &str) -> String {
    s.replace('|', "\\|")
}

fn write_markdown(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut out = format!("| {} |\n", headers.join(" | "));
    out.push_str(&format!("|{}\n", "---|".repeat(headers.len())));
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| md_cell(c)).collect();
        out.push_str(&format!("| {} |\n", cells.join(" | ")));
    }
    out
}

fn md_row(r: CsvRow) -> Vec<String> {
    vec![r.descriptor, r.field, r.quantity, r.predicted, r.computed, r.verdict, r.millis]
}

fn pretty<T: Serialize>(v: &T) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("record serializes");
    s.push('\n');
    s
}

pub fn invariants(rec: &InvariantsRecord, format: Option<Format>) -> String {
    match format {
        None => {
            if rec.basis.is_empty() {
                format!("dim={}:\n", rec.dim)
            } else {
                format!("dim={}: {}\n", rec.dim, rec.basis.join(" ; "))
            }
        }
        Some(Format::Json) => pretty(rec),
        Some(Format::Csv) => write_csv(&[CsvRow {
            descriptor: rec.descriptor.to_json(),
            field: field_key(&rec.field),
            quantity: format!("dim@{}", rec.degree),
            predicted: String::new(),
            computed: rec.dim.to_string(),
            verdict: String::new(),
            millis: opt_millis(rec.millis),
        }]),
        Some(Format::Markdown) => {
            let mut out = format!(
                "Degree {} invariants of `{}` over {}: dim = {} (of {})\n\n",
                rec.degree,
                rec.descriptor.to_json(),
                rec.field,
                rec.dim,
                rec.ambient_dim
            );
            let rows: Vec<Vec<String>> =
                rec.basis.iter().enumerate().map(|(i, b)| vec![(i + 1).to_string(), b.clone()]).collect();
            out.push_str(&write_markdown(&["#", "invariant"], &rows));
            out
        }
    }
}

pub fn compute(rec: &ComputeRecord, format: Format) -> String {
    let row = || CsvRow {
        descriptor: rec.descriptor.to_json(),
        field: field_key(&rec.field),
        quantity: rec.quantity.clone(),
        predicted: String::new(),
        computed: bounded(rec.value as u64, rec.complete),
        verdict: String::new(),
        millis: opt_millis(rec.millis),
    };
    match format {
        Format::Json => pretty(rec),
        Format::Csv => write_csv(&[row()]),
        Format::Markdown => {
            let mut out = write_markdown(&COLUMNS, &[md_row(row())]);
            if let Some(w) = &rec.witness {
                out.push_str(&format!("\nwitness: `{w}`\n"));
            }
            if !rec.per_degree_dims.is_empty() {
                let dims: Vec<String> = rec.per_degree_dims.iter().map(|d| d.to_string()).collect();
                out.push_str(&format!("\ndimensions by degree: {}\n", dims.join(", ")));
            }
            out
        }
    }
}

fn report_rows(r: &VerificationReport, label_by_name: bool) -> Vec<CsvRow> {
    let label = match (&r.name, label_by_name) {
        (Some(n), true) => n.clone(),
        _ => r.descriptor.to_json(),
    };
    r.checks.iter().map(|c| check_row(label.clone(), &r.field, c)).collect()
}

fn md_report_rows(reports: &[VerificationReport]) -> Vec<Vec<String>> {
    reports.iter().flat_map(|r| report_rows(r, true)).map(md_row).collect()
}

pub fn report(r: &VerificationReport, format: Format) -> String {
    match format {
        Format::Json => pretty(r),
        Format::Csv => write_csv(&report_rows(r, false)),
        Format::Markdown => {
            let mut out = write_markdown(&COLUMNS, &md_report_rows(std::slice::from_ref(r)));
            out.push_str(&format!("\nverdict: {}\n", r.verdict));
            out
        }
    }
}

pub fn suite(s: &SuiteReport, format: Format) -> String {
    match format {
        Format::Json => pretty(s),
        Format::Csv => {
            let rows: Vec<CsvRow> = s.reports.iter().flat_map(|r| report_rows(r, false)).collect();
            write_csv(&rows)
        }
        Format::Markdown => {
            let mut out = write_markdown(&COLUMNS, &md_report_rows(&s.reports));
            out.push_str(&format!("\n{} passed, {} failed: {}\n", s.passed, s.failed, s.verdict));
            out
        }
    }
}

pub fn table(t: &Table, format: Format) -> String {
    match format {
        Format::Json => pretty(t),
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            w.write_record(&t.headers).expect("in-memory write");
            for r in &t.rows {
                w.write_record(r).expect("in-memory write");
            }
            String::from_utf8(w.into_inner().expect("in-memory flush")).expect("csv is utf-8")
        }
        Format::Markdown => {
            let headers: Vec<&str> = t.headers.iter().map(String::as_str).collect();
            write_markdown(&headers, &t.rows)
        }
    }
}
