//! Result files: CSV or JSON tables, JSON reports and gnuplot columns.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use anyhow::Context;
use clap::ValueEnum;
use serde::Serialize;
use serde_json::json;

pub const TOOL: &str = env!("CARGO_PKG_NAME");
pub const VERSION: &str = env!("CARGO_PKG_VERSION");

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Num(x) => number(*x),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> serde_json::Value {
        match self {
            Cell::Num(x) if x.is_finite() => json!(x),
            Cell::Num(x) => json!(number(*x)),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
            Cell::Empty => serde_json::Value::Null,
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<Option<f64>> for Cell {
    fn from(x: Option<f64>) -> Self {
        x.map_or(Cell::Empty, Cell::Num)
    }
}

/// 17 significant digits, or `inf`, `-inf`, `nan`.
pub fn number(x: f64) -> String {
    if x.is_finite() {
        format!("{x:.16e}")
    } else {
        x.to_string().to_lowercase()
    }
}

pub struct Emitter {
    dir: PathBuf,
    format: Format,
    hash: String,
}

impl Emitter {
    pub fn new(dir: &Path, format: Format, hash: String) -> anyhow::Result<Self> {
        std::fs::create_dir_all(dir)
            .with_context(|| format!("creating output directory {}", dir.display()))?;
        Ok(Self {
            dir: dir.to_path_buf(),
            format,
            hash,
        })
    }

    fn header(&self, quantity: &str) -> String {
        format!(
            "# {TOOL} {VERSION} config={} quantity={quantity}\n",
            self.hash
        )
    }

    fn meta(&self, quantity: &str) -> serde_json::Value {
        json!({ "tool": TOOL, "version": VERSION, "config_hash": self.hash, "quantity": quantity })
    }

    fn write(&self, name: &str, body: &str) -> anyhow::Result<PathBuf> {
        let path = self.dir.join(name);
        std::fs::write(&path, body).with_context(|| format!("writing {}", path.display()))?;
        Ok(path)
    }

    /// `stem.csv` or `stem.json` depending on the chosen format.
    pub fn table(
        &self,
        stem: &str,
        quantity: &str,
        columns: &[&str],
        rows: &[Vec<Cell>],
    ) -> anyhow::Result<PathBuf> {
        match self.format {
            Format::Csv => {
                let mut w = csv::Writer::from_writer(self.header(quantity).into_bytes());
                w.write_record(columns)?;
                for row in rows {
                    w.write_record(row.iter().map(Cell::csv))?;
                }
                let body = String::from_utf8(w.into_inner()?)?;
                self.write(&format!("{stem}.csv"), &body)
            }
            Format::Json => {
                let rows: Vec<Vec<serde_json::Value>> = rows
                    .iter()
                    .map(|r| r.iter().map(Cell::json).collect())
                    .collect();
                let doc = json!({ "meta": self.meta(quantity), "columns": columns, "rows": rows });
                self.write(
                    &format!("{stem}.json"),
                    &(serde_json::to_string_pretty(&doc)? + "\n"),
                )
            }
        }
    }

    /// `stem.json` holding `{meta, result}`.
    pub fn report<S: Serialize>(
        &self,
        stem: &str,
        quantity: &str,
        value: &S,
    ) -> anyhow::Result<PathBuf> {
        let doc = json!({ "meta": self.meta(quantity), "result": value });
        self.write(
            &format!("{stem}.json"),
            &(serde_json::to_string_pretty(&doc)? + "\n"),
        )
    }

    /// Two whitespace-separated columns in `stem.gnuplot.dat`.
    pub fn gnuplot(
        &self,
        stem: &str,
        quantity: &str,
        labels: (&str, &str),
        points: &[(f64, f64)],
    ) -> anyhow::Result<PathBuf> {
        let mut body = self.header(quantity);
        let _ = writeln!(body, "# {} {}", labels.0, labels.1);
        for (x, y) in points {
            let _ = writeln!(body, "{} {}", number(*x), number(*y));
        }
        self.write(&format!("{stem}.gnuplot.dat"), &body)
    }
}
