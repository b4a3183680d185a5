use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// What a measured quantity is compared against.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Expected {
    /// Exact equality (integers, booleans, strings).
    Eq(Value),
    Le(f64),
    Ge(f64),
    Lt(f64),
}

impl Expected {
    pub fn eq(v: impl Into<Value>) -> Self {
        Expected::Eq(v.into())
    }

    pub fn is_met_by(&self, measured: &Value) -> bool {
        match (self, measured.as_f64()) {
            (Expected::Eq(e), _) => e == measured,
            (Expected::Le(b), Some(m)) => m <= *b,
            (Expected::Ge(b), Some(m)) => m >= *b,
            (Expected::Lt(b), Some(m)) => m < *b,
            _ => false,
        }
    }
}

fn bound_text(b: f64) -> String {
    if b == 0.0 || (1e-3..1e6).contains(&b.abs()) {
        format!("{b}")
    } else {
        format!("{b:e}")
    }
}

impl fmt::Display for Expected {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Expected::Eq(v) => write!(f, "{v}"),
            Expected::Le(b) => write!(f, "<= {}", bound_text(*b)),
            Expected::Ge(b) => write!(f, ">= {}", bound_text(*b)),
            Expected::Lt(b) => write!(f, "< {}", bound_text(*b)),
        }
    }
}

/// Tabular payload (used by dn-table).
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Table {
    pub header: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub check_name: String,
    pub status: Status,
    pub measured: BTreeMap<String, Value>,
    pub expected: BTreeMap<String, Expected>,
    pub tolerances: BTreeMap<String, f64>,
    pub seed: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Table>,
    /// Wall-clock time; only filled on request so reports stay reproducible.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub runtime_ms: Option<u64>,
}

/// Accumulates measurements, then settles the status.
#[derive(Debug, Clone)]
pub struct ReportBuilder {
    report: VerificationReport,
    budget_limited: bool,
}

impl ReportBuilder {
    pub fn new(check_name: &str, seed: u64, tolerances: BTreeMap<String, f64>) -> Self {
        Self {
            report: VerificationReport {
                check_name: check_name.to_string(),
                status: Status::Pass,
                measured: BTreeMap::new(),
                expected: BTreeMap::new(),
                tolerances,
                seed,
                table: None,
                runtime_ms: None,
            },
            budget_limited: false,
        }
    }

    pub fn measure(&mut self, key: impl Into<String>, value: impl Into<Value>) -> &mut Self {
        self.report.measured.insert(key.into(), value.into());
        self
    }

    pub fn expect(&mut self, key: impl Into<String>, value: impl Into<Value>, expected: Expected) -> &mut Self {
        let key = key.into();
        self.report.measured.insert(key.clone(), value.into());
        self.report.expected.insert(key, expected);
        self
    }

    pub fn tolerance(&mut self, key: impl Into<String>, value: f64) -> &mut Self {
        self.report.tolerances.insert(key.into(), value);
        self
    }

    /// Marks that some span run hit its budget before saturating.
    pub fn budget_limited(&mut self) -> &mut Self {
        self.budget_limited = true;
        self
    }

    pub fn table(&mut self, table: Table) -> &mut Self {
        self.report.table = Some(table);
        self
    }

    pub fn finish(mut self) -> VerificationReport {
        let all_met = self
            .report
            .expected
            .iter()
            .all(|(k, e)| self.report.measured.get(k).is_some_and(|m| e.is_met_by(m)));
        self.report.status = match (all_met, self.budget_limited) {
            (true, _) => Status::Pass,
            (false, true) => Status::Inconclusive,
            (false, false) => Status::Fail,
        };
        self.report
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
    Csv,
}

fn value_text(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        other => other.to_string(),
    }
}

pub fn render_text(reports: &[VerificationReport]) -> String {
    let mut out = String::new();
    for (i, r) in reports.iter().enumerate() {
        if i > 0 {
            out.push('\n');
        }
        out.push_str(&format!("check: {}\nstatus: {}\nseed: {}\n", r.check_name, r.status, r.seed));
        for (k, v) in &r.tolerances {
            out.push_str(&format!("tolerance.{k}: {v:e}\n"));
        }
        for (k, v) in &r.measured {
            out.push_str(&format!("measured.{k}: {}\n", value_text(v)));
            if let Some(e) = r.expected.get(k) {
                out.push_str(&format!("expected.{k}: {e}\n"));
            }
        }
        if let Some(t) = &r.table {
            out.push_str(&format!("table: {}\n", t.header.join(" ")));
            for row in &t.rows {
                let cells: Vec<String> = row.iter().map(value_text).collect();
                out.push_str(&format!("  {}\n", cells.join(" ")));
            }
        }
        if let Some(ms) = r.runtime_ms {
            out.push_str(&format!("runtime_ms: {ms}\n"));
        }
    }
    out
}

pub fn render_json(reports: &[VerificationReport]) -> String {
    let mut s = if reports.len() == 1 {
        serde_json::to_string_pretty(&reports[0])
    } else {
        serde_json::to_string_pretty(reports)
    }
    .expect("reports serialize");
    s.push('\n');
    s
}

/// A lone tabular report renders as its table; otherwise one row per measured quantity.
pub fn render_csv(reports: &[VerificationReport]) -> String {
    let mut w = csv::Writer::from_writer(Vec::new());
    if let [VerificationReport { table: Some(t), .. }] = reports {
        w.write_record(&t.header).expect("in-memory write");
        for row in &t.rows {
            w.write_record(row.iter().map(value_text)).expect("in-memory write");
        }
    } else {
        w.write_record(["check", "status", "quantity", "measured", "expected"])
            .expect("in-memory write");
        for r in reports {
            for (k, v) in &r.measured {
                let e = r.expected.get(k).map(ToString::to_string).unwrap_or_default();
                w.write_record([r.check_name.clone(), r.status.to_string(), k.clone(), value_text(v), e])
                    .expect("in-memory write");
            }
        }
    }
    String::from_utf8(w.into_inner().expect("flush")).expect("utf-8")
}

pub fn render(reports: &[VerificationReport], format: Format) -> String {
    match format {
        Format::Text => render_text(reports),
        Format::Json => render_json(reports),
        Format::Csv => render_csv(reports),
    }
}
