//! Tabular output as TSV with a header row, or one JSON object per line.

use std::fmt::Write as _;
use std::io::Write;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, clap::ValueEnum)]
pub enum Format {
    #[default]
    Tsv,
    Jsonl,
}

impl std::str::FromStr for Format {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "tsv" => Ok(Format::Tsv),
            "jsonl" => Ok(Format::Jsonl),
            other => Err(format!("unknown format `{other}` (expected tsv or jsonl)")),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Str(String),
    Int(i64),
    Float(f64),
    Bool(bool),
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Str(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Str(s)
    }
}

impl From<f64> for Cell {
    fn from(v: f64) -> Self {
        Cell::Float(v)
    }
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

impl From<bool> for Cell {
    fn from(v: bool) -> Self {
        Cell::Bool(v)
    }
}

fn tsv_escape(s: &str, out: &mut String) {
    for c in s.chars() {
        match c {
            '\t' => out.push_str("\\t"),
            '\n' => out.push_str("\\n"),
            '\r' => out.push_str("\\r"),
            '\\' => out.push_str("\\\\"),
            c => out.push(c),
        }
    }
}

/// Floats use the shortest representation that reads back exactly.
fn float_text(v: f64) -> String {
    format!("{v:?}")
}

pub struct Table<W: Write> {
    out: W,
    format: Format,
    columns: &'static [&'static str],
    line: String,
}

impl<W: Write> Table<W> {
    pub fn new(mut out: W, format: Format, columns: &'static [&'static str]) -> std::io::Result<Self> {
        if format == Format::Tsv {
            writeln!(out, "{}", columns.join("\t"))?;
        }
        Ok(Table {
            out,
            format,
            columns,
            line: String::new(),
        })
    }

    pub fn row(&mut self, cells: &[Cell]) -> std::io::Result<()> {
        assert_eq!(cells.len(), self.columns.len(), "row width");
        self.line.clear();
        match self.format {
            Format::Tsv => {
                for (i, cell) in cells.iter().enumerate() {
                    if i > 0 {
                        self.line.push('\t');
                    }
                    match cell {
                        Cell::Str(s) => tsv_escape(s, &mut self.line),
                        Cell::Int(v) => write!(self.line, "{v}").expect("string write"),
                        Cell::Float(v) => self.line.push_str(&float_text(*v)),
                        Cell::Bool(v) => write!(self.line, "{v}").expect("string write"),
                    }
                }
            }
            Format::Jsonl => {
                self.line.push('{');
                for (i, (name, cell)) in self.columns.iter().zip(cells).enumerate() {
                    if i > 0 {
                        self.line.push(',');
                    }
                    self.line.push_str(&serde_json::to_string(name).expect("json string"));
                    self.line.push(':');
                    let value = match cell {
                        Cell::Str(s) => serde_json::to_string(s).expect("json string"),
                        Cell::Int(v) => v.to_string(),
                        Cell::Float(v) if v.is_finite() => float_text(*v),
                        Cell::Float(_) => "null".to_string(),
                        Cell::Bool(v) => v.to_string(),
                    };
                    self.line.push_str(&value);
                }
                self.line.push('}');
            }
        }
        self.line.push('\n');
        self.out.write_all(self.line.as_bytes())
    }

    pub fn finish(mut self) -> std::io::Result<()> {
        self.out.flush()
    }
}
