use std::fmt::Write as _;

use serde_json::{json, Map, Value};

use crate::exactla::{format_rational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
    Info,
}

impl Status {
    pub fn as_str(&self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Fail => "fail",
            Status::Skip => "skip",
            Status::Info => "info",
        }
    }

    pub fn from_bool(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Fail
        }
    }
}

/// A table with integer-like cells, printed as aligned columns.
#[derive(Clone, Debug, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Table {
        Table {
            columns: columns.iter().map(|s| s.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        self.rows.push(row);
    }

    fn to_json(&self) -> Value {
        json!({ "columns": self.columns, "rows": self.rows })
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Check {
    pub name: String,
    pub status: Status,
    pub detail: String,
    pub data: Map<String, Value>,
    pub tables: Vec<(String, Table)>,
}

impl Check {
    pub fn new(name: &str, status: Status, detail: impl Into<String>) -> Check {
        Check {
            name: name.to_string(),
            status,
            detail: detail.into(),
            data: Map::new(),
            tables: Vec::new(),
        }
    }

    pub fn skip(name: &str, because: &str) -> Check {
        Check::new(name, Status::Skip, format!("skipped: {because} did not pass"))
    }

    pub fn with(mut self, key: &str, value: Value) -> Check {
        self.data.insert(key.to_string(), value);
        self
    }

    pub fn with_table(mut self, name: &str, table: Table) -> Check {
        self.tables.push((name.to_string(), table));
        self
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }
}

/// Checks run on one algebra, in pipeline order.
#[derive(Clone, Debug, PartialEq)]
pub struct Section {
    pub name: String,
    pub checks: Vec<Check>,
}

impl Section {
    pub fn new(name: impl Into<String>) -> Section {
        Section {
            name: name.into(),
            checks: Vec::new(),
        }
    }

    pub fn push(&mut self, check: Check) {
        self.checks.push(check);
    }

    pub fn get(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    pub fn status_of(&self, name: &str) -> Status {
        self.get(name).map(|c| c.status).unwrap_or(Status::Skip)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub target: String,
    pub params: Vec<(String, String)>,
    pub seed: u64,
    pub sections: Vec<Section>,
}

impl Report {
    pub fn failures(&self) -> usize {
        self.sections
            .iter()
            .flat_map(|s| &s.checks)
            .filter(|c| c.status == Status::Fail)
            .count()
    }

    pub fn passed(&self) -> bool {
        self.failures() == 0
    }

    pub fn section(&self, name: &str) -> Option<&Section> {
        self.sections.iter().find(|s| s.name == name)
    }

    /// Process exit code: 0 when no executed check failed, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> Value {
        let mut sections = Map::new();
        for (si, s) in self.sections.iter().enumerate() {
            let mut checks = Map::new();
            for (ci, c) in s.checks.iter().enumerate() {
                let mut tables = Map::new();
                for (name, t) in &c.tables {
                    tables.insert(name.clone(), t.to_json());
                }
                checks.insert(
                    c.name.clone(),
                    json!({
                        "order": ci,
                        "status": c.status.as_str(),
                        "detail": c.detail,
                        "data": Value::Object(c.data.clone()),
                        "tables": Value::Object(tables),
                    }),
                );
            }
            sections.insert(s.name.clone(), json!({ "order": si, "checks": Value::Object(checks) }));
        }
        let params: Map<String, Value> = self
            .params
            .iter()
            .map(|(k, v)| (k.clone(), Value::String(v.clone())))
            .collect();
        json!({
            "tool": env!("CARGO_PKG_NAME"),
            "version": env!("CARGO_PKG_VERSION"),
            "target": self.target,
            "params": Value::Object(params),
            "seed": self.seed,
            "passed": self.passed(),
            "failures": self.failures(),
            "sections": Value::Object(sections),
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// Renders a report. JSON output has sorted keys and a trailing newline.
pub fn emit(report: &Report, format: Format) -> String {
    match format {
        Format::Json => {
            let mut s = serde_json::to_string_pretty(&report.to_json()).expect("json values serialize");
            s.push('\n');
            s
        }
        Format::Text => emit_text(report),
    }
}

fn cell(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => "-".into(),
        other => other.to_string(),
    }
}

fn emit_text(report: &Report) -> String {
    let mut out = String::new();
    let params: Vec<String> = report.params.iter().map(|(k, v)| format!("{k}={v}")).collect();
    let _ = writeln!(out, "target: {} {}", report.target, params.join(" "));
    let _ = writeln!(out, "seed: {}", report.seed);
    for s in &report.sections {
        let _ = writeln!(out, "\n== {} ==", s.name);
        for c in &s.checks {
            let tag = c.status.as_str().to_ascii_uppercase();
            let _ = writeln!(out, "[{tag}] {}: {}", c.name, c.detail);
            for (name, t) in &c.tables {
                let _ = writeln!(out, "    {name}");
                let mut widths: Vec<usize> = t.columns.iter().map(|c| c.len()).collect();
                let cells: Vec<Vec<String>> = t.rows.iter().map(|r| r.iter().map(cell).collect()).collect();
                for r in &cells {
                    for (i, x) in r.iter().enumerate() {
                        widths[i] = widths[i].max(x.len());
                    }
                }
                let line = |r: &[String]| {
                    r.iter()
                        .enumerate()
                        .map(|(i, x)| format!("{x:>w$}", w = widths[i]))
                        .collect::<Vec<_>>()
                        .join("  ")
                };
                let _ = writeln!(out, "      {}", line(&t.columns));
                for r in &cells {
                    let _ = writeln!(out, "      {}", line(r));
                }
            }
        }
    }
    let verdict = if report.passed() { "PASS" } else { "FAIL" };
    let _ = writeln!(out, "\nresult: {verdict} ({} failing checks)", report.failures());
    out
}

/// Rationals as `num/den` strings.
pub fn rational_list(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(|x| Value::String(format_rational(x))).collect())
}
