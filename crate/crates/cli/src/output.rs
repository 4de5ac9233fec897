//! Row-oriented output in text, CSV, JSON and OEIS b-file form.

use std::fmt::Write as _;
use std::io::Write;
use std::path::PathBuf;

use clap::ValueEnum;
use serde_json::{Map, Value};

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Csv,
    Json,
    Bfile,
}

#[derive(Debug, Clone)]
pub struct OutputSpec {
    pub format: Format,
    pub precision: usize,
    pub destination: Option<PathBuf>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Int(i64),
    Real(f64),
    Text(String),
    Bool(bool),
}

impl From<u64> for Cell {
    fn from(v: u64) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<usize> for Cell {
    fn from(v: usize) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<u32> for Cell {
    fn from(v: u32) -> Self {
        Cell::Int(v as i64)
    }
}

impl From<i64> for Cell {
    fn from(v: i64) -> Self {
        Cell::Int(v)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Real(v)
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

impl From<Option<f64>> for Cell {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Cell::Text(String::new()), Cell::Real)
    }
}

/// A table with named columns. `sequence` names the integer column a b-file
/// is built from; tables without one cannot be written as b-files.
#[derive(Debug, Clone)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
    pub sequence: Option<usize>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Self { columns: columns.to_vec(), rows: Vec::new(), sequence: None }
    }

    pub fn sequence(mut self, column: &str) -> Self {
        self.sequence = self.columns.iter().position(|c| *c == column);
        debug_assert!(self.sequence.is_some());
        self
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }
}

/// `v` with `digits` significant digits; fixed notation for moderate
/// exponents, scientific otherwise.
pub fn format_real(v: f64, digits: usize) -> String {
    if !v.is_finite() {
        return v.to_string();
    }
    if v == 0.0 {
        return "0".to_string();
    }
    let sci = format!("{:.*e}", digits - 1, v);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("exponent");
    if !(-5..digits as i32).contains(&exp) {
        return sci;
    }
    let negative = mantissa.starts_with('-');
    let mdigits: String = mantissa.chars().filter(char::is_ascii_digit).collect();
    let mut out = String::new();
    if negative {
        out.push('-');
    }
    if exp < 0 {
        out.push_str("0.");
        out.extend(std::iter::repeat_n('0', (-exp - 1) as usize));
        out.push_str(&mdigits);
    } else {
        let int_len = exp as usize + 1;
        out.push_str(&mdigits[..int_len]);
        if int_len < mdigits.len() {
            out.push('.');
            out.push_str(&mdigits[int_len..]);
        }
    }
    out
}

fn render_cell(cell: &Cell, digits: usize) -> String {
    match cell {
        Cell::Int(v) => v.to_string(),
        Cell::Real(v) => format_real(*v, digits),
        Cell::Text(s) => s.clone(),
        Cell::Bool(b) => b.to_string(),
    }
}

fn csv_escape(s: &str) -> String {
    if s.contains([',', '"', '\n']) {
        format!("\"{}\"", s.replace('"', "\"\""))
    } else {
        s.to_string()
    }
}

pub fn render(table: &Table, spec: &OutputSpec) -> Result<String, CliError> {
    let digits = spec.precision;
    let mut out = String::new();
    match spec.format {
        Format::Text => {
            let cells: Vec<Vec<String>> =
                table.rows.iter().map(|r| r.iter().map(|c| render_cell(c, digits)).collect()).collect();
            let widths: Vec<usize> = (0..table.columns.len())
                .map(|j| cells.iter().map(|r| r[j].len()).chain([table.columns[j].len()]).max().unwrap_or(0))
                .collect();
            let line = |items: Vec<&str>| -> String {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(table.columns.clone())).unwrap();
            for r in &cells {
                writeln!(out, "{}", line(r.iter().map(String::as_str).collect())).unwrap();
            }
        }
        Format::Csv => {
            writeln!(out, "{}", table.columns.join(",")).unwrap();
            for r in &table.rows {
                let fields: Vec<String> = r.iter().map(|c| csv_escape(&render_cell(c, digits))).collect();
                writeln!(out, "{}", fields.join(",")).unwrap();
            }
        }
        Format::Json => {
            out.push_str("[\n");
            for (i, r) in table.rows.iter().enumerate() {
                let mut obj = Map::new();
                for (name, cell) in table.columns.iter().zip(r) {
                    let v = match cell {
                        Cell::Bool(b) => Value::Bool(*b),
                        other => Value::String(render_cell(other, digits)),
                    };
                    obj.insert(name.to_string(), v);
                }
                out.push_str(&Value::Object(obj).to_string());
                out.push_str(if i + 1 < table.rows.len() { ",\n" } else { "\n" });
            }
            out.push_str("]\n");
        }
        Format::Bfile => {
            let col = table
                .sequence
                .ok_or_else(|| CliError::Usage("b-file output needs an integer sequence; this command has none".into()))?;
            for (n, r) in table.rows.iter().enumerate() {
                match &r[col] {
                    Cell::Int(v) => writeln!(out, "{} {}", n + 1, v).unwrap(),
                    _ => return Err(CliError::Usage("b-file column is not integral".into())),
                }
            }
        }
    }
    Ok(out)
}

pub fn emit(table: &Table, spec: &OutputSpec) -> Result<(), CliError> {
    let text = render(table, spec)?;
    match &spec.destination {
        Some(path) => std::fs::write(path, text).map_err(|e| CliError::Data(format!("{}: {e}", path.display()))),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes()).and_then(|_| stdout.flush()).map_err(|e| CliError::Data(e.to_string()))
        }
    }
}
