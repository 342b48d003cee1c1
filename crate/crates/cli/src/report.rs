//! Tabular reports rendered as CSV or JSON.

use std::fmt;
use std::io::Write;
use std::path::PathBuf;

use serde_json::{json, Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Format {
    Csv,
    Json,
}

impl Format {
    pub fn extension(self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "csv" => Ok(Format::Csv),
            "json" => Ok(Format::Json),
            other => Err(format!("unknown format `{other}` (expected csv or json)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Text(String),
    Bool(bool),
    Empty,
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Num(v)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

impl From<&str> for Cell {
    fn from(v: &str) -> Self {
        Cell::Text(v.to_string())
    }
}

impl From<String> for Cell {
    fn from(v: String) -> Self {
        Cell::Text(v)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

impl fmt::Display for Cell {
    /// Floats carry 17 significant digits so they round-trip.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Cell::Num(v) if v.is_finite() => write!(f, "{v:.16e}"),
            Cell::Num(v) if v.is_nan() => f.write_str("nan"),
            Cell::Num(v) => f.write_str(if *v > 0.0 { "inf" } else { "-inf" }),
            Cell::Int(v) => write!(f, "{v}"),
            Cell::Text(s) => f.write_str(s),
            Cell::Bool(b) => write!(f, "{b}"),
            Cell::Empty => Ok(()),
        }
    }
}

/// JSON number for finite floats, a string for `inf` and `nan`.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        json!(v)
    } else {
        Value::String(Cell::Num(v).to_string())
    }
}

impl Cell {
    fn to_json(&self) -> Value {
        match self {
            Cell::Num(v) => num(*v),
            Cell::Int(v) => json!(v),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => Value::Null,
        }
    }
}

/// A named table plus free-form summary fields and the list of failed
/// assertions.
#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Map<String, Value>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn new(command: impl Into<String>, columns: &[&'static str]) -> Self {
        Self {
            command: command.into(),
            columns: columns.to_vec(),
            rows: Vec::new(),
            summary: Map::new(),
            failures: Vec::new(),
        }
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn note(&mut self, key: &str, value: Value) {
        self.summary.insert(key.to_string(), value);
    }

    /// Records a failed check unless `ok`.
    pub fn check(&mut self, ok: bool, what: impl FnOnce() -> String) {
        if !ok {
            self.failures.push(what());
        }
    }

    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    pub fn render(&self, format: Format) -> Vec<u8> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => {
                let mut s = serde_json::to_string_pretty(&self.to_json()).expect("report serializes");
                s.push('\n');
                s.into_bytes()
            }
        }
    }

    fn to_csv(&self) -> Vec<u8> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns).expect("in-memory write");
        for row in &self.rows {
            w.write_record(row.iter().map(|c| c.to_string())).expect("in-memory write");
        }
        w.into_inner().expect("in-memory flush")
    }

    fn to_json(&self) -> Value {
        let rows: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                let m: Map<String, Value> =
                    self.columns.iter().zip(r).map(|(k, c)| (k.to_string(), c.to_json())).collect();
                Value::Object(m)
            })
            .collect();
        json!({
            "command": self.command,
            "passed": self.passed(),
            "failures": self.failures,
            "summary": self.summary,
            "rows": rows,
        })
    }
}

/// Writes the report to `out`, else to `<out_dir>/<command>.<ext>`, else
/// to stdout.
pub fn emit(report: &Report, format: Format, out: Option<PathBuf>, out_dir: Option<PathBuf>) -> std::io::Result<()> {
    let bytes = report.render(format);
    let target = match (out, out_dir) {
        (Some(p), _) => Some(p),
        (None, Some(dir)) => {
            std::fs::create_dir_all(&dir)?;
            Some(dir.join(format!("{}.{}", report.command.replace(' ', "-"), format.extension())))
        }
        (None, None) => None,
    };
    match target {
        Some(path) => std::fs::write(path, bytes),
        None => std::io::stdout().write_all(&bytes),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn floats_round_trip_through_csv() {
        let v = 0.1 + 0.2;
        let s = Cell::Num(v).to_string();
        assert_eq!(s.parse::<f64>().unwrap(), v);
        assert_eq!(Cell::Num(f64::INFINITY).to_string(), "inf");
        assert_eq!(Cell::Empty.to_string(), "");
    }

    #[test]
    fn csv_has_header_and_rows() {
        let mut r = Report::new("t", &["a", "b"]);
        r.row(vec![1i64.into(), "x,y".into()]);
        let s = String::from_utf8(r.render(Format::Csv)).unwrap();
        assert_eq!(s, "a,b\n1,\"x,y\"\n");
    }

    #[test]
    fn json_marks_failures() {
        let mut r = Report::new("t", &["a"]);
        r.row(vec![f64::INFINITY.into()]);
        r.check(false, || "bad".into());
        let v: Value = serde_json::from_slice(&r.render(Format::Json)).unwrap();
        assert_eq!(v["passed"], json!(false));
        assert_eq!(v["rows"][0]["a"], json!("inf"));
    }
}
