//! Tabular output: CSV with a `# key=value` header line, or a JSON object
//! with the same header, columns and rows.

use std::io::Write;
use std::path::{Path, PathBuf};

use serde_json::{json, Map, Value as Json};

use crate::config::{CliError, Format};

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => (v + 0.0).to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Json {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Empty => Json::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
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

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Empty, Cell::Float)
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Table {
    /// Extra header entries specific to this table (results, diagnostics).
    pub meta: Vec<(String, String)>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&str]) -> Self {
        Self {
            meta: Vec::new(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn meta(&mut self, key: &str, value: impl ToString) {
        self.meta.push((key.to_string(), value.to_string()));
    }

    pub fn column(&self, name: &str) -> Option<usize> {
        self.columns.iter().position(|c| c == name)
    }
}

/// Main table plus named sidecar tables written next to it.
#[derive(Clone, Debug, Default, PartialEq)]
pub struct Report {
    pub main: Table,
    pub sidecars: Vec<(String, Table)>,
    /// Diagnostics for the user, printed to stderr.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(main: Table) -> Self {
        Self {
            main,
            sidecars: Vec::new(),
            notes: Vec::new(),
        }
    }

    pub fn sidecar(&mut self, name: &str, table: Table) {
        self.sidecars.push((name.to_string(), table));
    }

    pub fn get_sidecar(&self, name: &str) -> Option<&Table> {
        self.sidecars
            .iter()
            .find(|(n, _)| n == name)
            .map(|(_, t)| t)
    }
}

fn header_value(v: &str) -> String {
    v.replace([' ', '\n', '\t'], "_")
}

pub fn render(
    table: &Table,
    header: &[(String, String)],
    format: Format,
) -> Result<String, CliError> {
    let fields: Vec<&(String, String)> = header.iter().chain(&table.meta).collect();
    match format {
        Format::Csv => {
            let mut s = String::from("#");
            for (k, v) in &fields {
                s.push_str(&format!(" {k}={}", header_value(v)));
            }
            s.push('\n');
            s.push_str(&table.columns.join(","));
            s.push('\n');
            for row in &table.rows {
                let cells: Vec<String> = row.iter().map(Cell::csv).collect();
                s.push_str(&cells.join(","));
                s.push('\n');
            }
            Ok(s)
        }
        Format::Json => {
            let mut head = Map::new();
            for (k, v) in &fields {
                head.insert(k.clone(), Json::String(v.clone()));
            }
            let rows: Vec<Json> = table
                .rows
                .iter()
                .map(|r| Json::Array(r.iter().map(Cell::json).collect()))
                .collect();
            let doc = json!({ "header": head, "columns": table.columns, "rows": rows });
            let mut s = serde_json::to_string_pretty(&doc)?;
            s.push('\n');
            Ok(s)
        }
    }
}

/// `<out>.<name>.<ext>` next to the main output, with `out`'s own extension
/// stripped when it matches the format.
pub fn sidecar_path(out: &Path, name: &str, format: Format) -> PathBuf {
    let ext = format.extension();
    let stem = if out.extension().is_some_and(|e| e == ext) {
        out.with_extension("")
    } else {
        out.to_path_buf()
    };
    let mut s = stem.into_os_string();
    s.push(format!(".{name}.{ext}"));
    PathBuf::from(s)
}

/// Writes the report to `out` (plus sidecars), or everything to stdout.
pub fn write_report(
    report: &Report,
    header: &[(String, String)],
    format: Format,
    out: Option<&Path>,
) -> Result<Vec<PathBuf>, CliError> {
    match out {
        Some(path) => {
            let mut written = vec![path.to_path_buf()];
            std::fs::write(path, render(&report.main, header, format)?)?;
            for (name, table) in &report.sidecars {
                let p = sidecar_path(path, name, format);
                std::fs::write(&p, render(table, header, format)?)?;
                written.push(p);
            }
            Ok(written)
        }
        None => {
            let stdout = std::io::stdout();
            let mut lock = stdout.lock();
            lock.write_all(render(&report.main, header, format)?.as_bytes())?;
            for (name, table) in &report.sidecars {
                let mut h = header.to_vec();
                h.push(("table".into(), name.clone()));
                lock.write_all(b"\n")?;
                lock.write_all(render(table, &h, format)?.as_bytes())?;
            }
            Ok(Vec::new())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(&["t", "x", "note"]);
        t.meta("ks", 0.5);
        t.push(vec![1usize.into(), 0.25.into(), "a".into()]);
        t.push(vec![2usize.into(), Cell::Empty, "b".into()]);
        t
    }

    #[test]
    fn csv_layout() {
        let h = vec![("command".to_string(), "trajectory".to_string())];
        let s = render(&sample(), &h, Format::Csv).unwrap();
        assert_eq!(s, "# command=trajectory ks=0.5\nt,x,note\n1,0.25,a\n2,,b\n");
    }

    #[test]
    fn json_mirrors_csv() {
        let h = vec![("seed".to_string(), "7".to_string())];
        let s = render(&sample(), &h, Format::Json).unwrap();
        let v: Json = serde_json::from_str(&s).unwrap();
        assert_eq!(v["header"]["seed"], "7");
        assert_eq!(v["header"]["ks"], "0.5");
        assert_eq!(v["columns"][1], "x");
        assert_eq!(v["rows"][0][1], 0.25);
        assert!(v["rows"][1][1].is_null());
    }

    #[test]
    fn header_only_table() {
        let t = Table::new(&["t", "a1"]);
        let s = render(&t, &[], Format::Csv).unwrap();
        assert_eq!(s.lines().count(), 2);
    }

    #[test]
    fn sidecar_names() {
        let p = sidecar_path(Path::new("/tmp/run.csv"), "moments", Format::Csv);
        assert_eq!(p, PathBuf::from("/tmp/run.moments.csv"));
        let p = sidecar_path(Path::new("/tmp/run"), "hist", Format::Json);
        assert_eq!(p, PathBuf::from("/tmp/run.hist.json"));
    }
}
