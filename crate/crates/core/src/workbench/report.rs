use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};

use serde::Serialize;
use serde_json::{json, Map, Value};
use sha2::{Digest, Sha256};

use crate::error::{Error, Result};

/// `%.12e` formatting: twelve fractional digits, signed exponent of at least two digits.
pub fn format_float(x: f64) -> String {
    if x.is_nan() {
        return "NaN".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "Infinity".into() } else { "-Infinity".into() };
    }
    let s = format!("{x:.12e}");
    let (mantissa, exp) = s.split_once('e').expect("exponent");
    let exp: i32 = exp.parse().expect("integer exponent");
    format!("{mantissa}e{}{:02}", if exp < 0 { '-' } else { '+' }, exp.abs())
}

/// A float as a JSON value; non-finite values become strings.
pub fn num(x: f64) -> Value {
    if x.is_finite() {
        json!(x)
    } else {
        Value::String(format_float(x))
    }
}

fn write_scalar(out: &mut String, v: &Value) {
    match v {
        Value::Number(n) if n.is_f64() => out.push_str(&format_float(n.as_f64().expect("f64"))),
        other => out.push_str(&serde_json::to_string(other).expect("scalar")),
    }
}

fn write_value(out: &mut String, v: &Value, indent: usize) {
    let pad = "  ".repeat(indent + 1);
    let close = "  ".repeat(indent);
    match v {
        Value::Array(items) if !items.is_empty() => {
            if items.iter().all(|x| !x.is_array() && !x.is_object()) {
                out.push('[');
                for (i, x) in items.iter().enumerate() {
                    if i > 0 {
                        out.push_str(", ");
                    }
                    write_scalar(out, x);
                }
                out.push(']');
                return;
            }
            out.push_str("[\n");
            for (i, x) in items.iter().enumerate() {
                out.push_str(&pad);
                write_value(out, x, indent + 1);
                out.push_str(if i + 1 < items.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push(']');
        }
        Value::Object(map) if !map.is_empty() => {
            let mut keys: Vec<&String> = map.keys().collect();
            keys.sort();
            out.push_str("{\n");
            for (i, k) in keys.iter().enumerate() {
                out.push_str(&pad);
                out.push_str(&serde_json::to_string(k).expect("key"));
                out.push_str(": ");
                write_value(out, &map[*k], indent + 1);
                out.push_str(if i + 1 < keys.len() { ",\n" } else { "\n" });
            }
            out.push_str(&close);
            out.push('}');
        }
        Value::Array(_) => out.push_str("[]"),
        Value::Object(_) => out.push_str("{}"),
        scalar => write_scalar(out, scalar),
    }
}

/// Byte-stable JSON: sorted keys, two-space indent, floats as `%.12e`.
pub fn stable_json(v: &Value) -> String {
    let mut out = String::new();
    write_value(&mut out, v, 0);
    out.push('\n');
    out
}

/// Single-line rendering used inside CSV cells.
pub fn compact(v: &Value) -> String {
    match v {
        Value::String(s) => s.clone(),
        Value::Null => String::new(),
        Value::Number(_) | Value::Bool(_) => {
            let mut out = String::new();
            write_scalar(&mut out, v);
            out
        }
        _ => stable_json(v).split_whitespace().collect::<Vec<_>>().join(" "),
    }
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    let digest = Sha256::digest(bytes);
    let mut s = String::with_capacity(64);
    for b in digest.iter() {
        write!(s, "{b:02x}").expect("string write");
    }
    s
}

/// One verified statement.
#[derive(Clone, Debug, PartialEq)]
pub struct Record {
    pub name: String,
    /// The identity being checked, as a formula.
    pub anchor: String,
    pub expected: Value,
    pub computed: Value,
    pub residual: Option<f64>,
    pub tolerance: Option<f64>,
    pub pass: bool,
    pub detail: Option<String>,
}

impl Record {
    /// Exact comparison of two serializable values.
    pub fn exact<T: Serialize>(name: impl Into<String>, anchor: impl Into<String>, expected: T, computed: T) -> Self {
        let expected = serde_json::to_value(expected).expect("serializable");
        let computed = serde_json::to_value(computed).expect("serializable");
        let pass = expected == computed;
        Self { name: name.into(), anchor: anchor.into(), expected, computed, residual: None, tolerance: None, pass, detail: None }
    }

    /// Passes iff the residual is finite and below the tolerance.
    pub fn residual(name: impl Into<String>, anchor: impl Into<String>, residual: f64, tolerance: f64) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            expected: Value::String(format!("< {}", format_float(tolerance))),
            computed: num(residual),
            residual: Some(residual),
            tolerance: Some(tolerance),
            pass: residual.is_finite() && residual < tolerance,
            detail: None,
        }
    }

    /// A record for an engine error that prevented the check from running.
    pub fn failed(name: impl Into<String>, anchor: impl Into<String>, err: &Error) -> Self {
        Self {
            name: name.into(),
            anchor: anchor.into(),
            expected: Value::Null,
            computed: Value::Null,
            residual: None,
            tolerance: None,
            pass: false,
            detail: Some(err.to_string()),
        }
    }

    pub fn with_detail(mut self, detail: impl Into<String>) -> Self {
        self.detail = Some(detail.into());
        self
    }

    pub fn verdict(&self) -> &'static str {
        if self.pass {
            "PASS"
        } else {
            "FAIL"
        }
    }

    pub fn to_value(&self) -> Value {
        let mut m = Map::new();
        m.insert("name".into(), json!(self.name));
        m.insert("anchor".into(), json!(self.anchor));
        m.insert("expected".into(), self.expected.clone());
        m.insert("computed".into(), self.computed.clone());
        m.insert("residual".into(), self.residual.map_or(Value::Null, num));
        m.insert("tolerance".into(), self.tolerance.map_or(Value::Null, num));
        m.insert("verdict".into(), json!(self.verdict()));
        m.insert("detail".into(), self.detail.as_ref().map_or(Value::Null, |d| json!(d)));
        Value::Object(m)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Value>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self { columns: columns.iter().map(|c| c.to_string()).collect(), rows: Vec::new() }
    }

    pub fn push(&mut self, row: Vec<Value>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    /// Cell at `row` in the named column.
    pub fn get(&self, row: usize, column: &str) -> Option<&Value> {
        let c = self.columns.iter().position(|x| x == column)?;
        self.rows.get(row)?.get(c)
    }

    pub fn to_value(&self) -> Value {
        json!({ "columns": self.columns, "rows": self.rows })
    }

    pub fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(compact))?;
        }
        String::from_utf8(w.into_inner().map_err(|e| Error::Io(e.to_string()))?).map_err(|e| Error::Internal(e.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Metadata {
    pub version: String,
    pub command: String,
    pub config: Value,
    pub config_hash: String,
    /// Fixture name to SHA-256 of its file contents.
    pub fixtures: BTreeMap<String, String>,
}

impl Metadata {
    pub fn new(command: &str, config: Value) -> Self {
        let hashed = stable_json(&json!({ "command": command, "config": config }));
        Self {
            version: env!("CARGO_PKG_VERSION").to_string(),
            command: command.to_string(),
            config,
            config_hash: sha256_hex(hashed.as_bytes()),
            fixtures: BTreeMap::new(),
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub metadata: Metadata,
    pub records: Vec<Record>,
    pub tables: BTreeMap<String, Table>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Json,
    Csv,
}

impl Report {
    pub fn new(metadata: Metadata) -> Self {
        Self { metadata, records: Vec::new(), tables: BTreeMap::new() }
    }

    pub fn passes(&self) -> bool {
        self.records.iter().all(|r| r.pass)
    }

    /// 0 when every record passes, 1 otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passes() {
            0
        } else {
            1
        }
    }

    pub fn failures(&self) -> impl Iterator<Item = &Record> {
        self.records.iter().filter(|r| !r.pass)
    }

    pub fn record(&self, name: &str) -> Option<&Record> {
        self.records.iter().find(|r| r.name == name)
    }

    /// Appends another report's records, tables and fixture hashes.
    pub fn absorb(&mut self, other: Report) {
        self.records.extend(other.records);
        self.metadata.fixtures.extend(other.metadata.fixtures);
        for (name, table) in other.tables {
            match self.tables.get_mut(&name) {
                Some(t) if t.columns == table.columns => t.rows.extend(table.rows),
                Some(_) => {
                    let key = format!("{}_{}", other.metadata.command, name);
                    self.tables.insert(key, table);
                }
                None => {
                    self.tables.insert(name, table);
                }
            }
        }
    }

    pub fn to_value(&self) -> Value {
        let failed = self.failures().count();
        let tables: Map<String, Value> = self.tables.iter().map(|(k, t)| (k.clone(), t.to_value())).collect();
        json!({
            "metadata": {
                "tool": "hoc",
                "version": self.metadata.version,
                "command": self.metadata.command,
                "config": self.metadata.config,
                "config_hash": self.metadata.config_hash,
                "fixtures": self.metadata.fixtures,
            },
            "records": self.records.iter().map(Record::to_value).collect::<Vec<_>>(),
            "tables": tables,
            "summary": { "total": self.records.len(), "failed": failed },
            "status": if failed == 0 { "PASS" } else { "FAIL" },
        })
    }

    pub fn to_json(&self) -> String {
        stable_json(&self.to_value())
    }

    pub fn records_csv(&self) -> Result<String> {
        let mut t = Table::new(&["name", "anchor", "expected", "computed", "residual", "tolerance", "verdict", "detail"]);
        for r in &self.records {
            let v = r.to_value();
            t.push(t.columns.clone().iter().map(|c| v[c.as_str()].clone()).collect());
        }
        t.to_csv()
    }

    /// Human-readable summary, one line per record.
    pub fn summary(&self) -> String {
        let mut out = String::new();
        for r in &self.records {
            let computed = compact(&r.computed);
            let _ = write!(out, "{} {}: {}", r.verdict(), r.name, computed);
            if !r.pass {
                let _ = write!(out, " (expected {})", compact(&r.expected));
                if let Some(d) = &r.detail {
                    let _ = write!(out, " [{d}]");
                }
            }
            out.push('\n');
        }
        let failed = self.failures().count();
        let _ = writeln!(
            out,
            "{}: {} records, {failed} failed (config {})",
            if failed == 0 { "PASS" } else { "FAIL" },
            self.records.len(),
            &self.metadata.config_hash[..12]
        );
        out
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Json => Ok(self.to_json()),
            Format::Csv => self.records_csv(),
        }
    }

    /// Writes `<command>.json`, `<command>_records.csv` and one CSV per table.
    pub fn emit(&self, dir: &Path) -> Result<Vec<PathBuf>> {
        fs::create_dir_all(dir).map_err(|e| Error::Io(format!("cannot create {}: {e}", dir.display())))?;
        let command = &self.metadata.command;
        let mut files = vec![(dir.join(format!("{command}.json")), self.to_json())];
        files.push((dir.join(format!("{command}_records.csv")), self.records_csv()?));
        for (name, table) in &self.tables {
            files.push((dir.join(format!("{command}_{name}.csv")), table.to_csv()?));
        }
        let mut written = Vec::new();
        for (path, body) in files {
            fs::write(&path, body).map_err(|e| Error::Io(format!("cannot write {}: {e}", path.display())))?;
            written.push(path);
        }
        Ok(written)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_matches_printf() {
        assert_eq!(format_float(0.0), "0.000000000000e+00");
        assert_eq!(format_float(1.5e-9), "1.500000000000e-09");
        assert_eq!(format_float(-123456.0), "-1.234560000000e+05");
        assert_eq!(format_float(2.5e100), "2.500000000000e+100");
        assert_eq!(format_float(f64::NAN), "NaN");
    }

    #[test]
    fn keys_are_sorted_and_integers_kept() {
        let v = json!({"b": 1, "a": [1.0, 2], "c": {"z": null, "y": "s"}});
        let s = stable_json(&v);
        assert_eq!(
            s,
            "{\n  \"a\": [1.000000000000e+00, 2],\n  \"b\": 1,\n  \"c\": {\n    \"y\": \"s\",\n    \"z\": null\n  }\n}\n"
        );
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(back["b"], json!(1));
    }

    #[test]
    fn empty_report_passes() {
        let r = Report::new(Metadata::new("dims", json!({})));
        assert!(r.passes());
        assert_eq!(r.exit_code(), 0);
        let v: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(v["status"], "PASS");
        assert_eq!(v["records"], json!([]));
    }

    #[test]
    fn failing_record_sets_exit_status() {
        let mut r = Report::new(Metadata::new("dims", json!({})));
        r.records.push(Record::exact("x", "1 = 1", 1, 1));
        r.records.push(Record::residual("y", "r < tol", 1e-3, 1e-6));
        assert_eq!(r.exit_code(), 1);
        assert_eq!(r.failures().count(), 1);
        assert!(!Record::residual("nan", "r < tol", f64::NAN, 1.0).pass);
    }

    #[test]
    fn table_csv() {
        let mut t = Table::new(&["q", "value"]);
        t.push(vec![json!(2), json!(0.5)]);
        assert_eq!(t.to_csv().unwrap(), "q,value\n2,5.000000000000e-01\n");
    }
}
