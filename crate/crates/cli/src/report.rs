use std::fmt::Write as _;

use serde::Serialize;
use serde_json::{json, Map, Value};

use crate::config::Format;

/// One table cell.
#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Num(f64),
    Int(i64),
    Bool(bool),
    Text(String),
    Empty,
}

impl Cell {
    fn json(&self) -> Value {
        match self {
            Cell::Num(x) => json!(x),
            Cell::Int(i) => json!(i),
            Cell::Bool(b) => json!(b),
            Cell::Text(s) => json!(s),
            Cell::Empty => Value::Null,
        }
    }

    /// Full precision; what CSV carries.
    fn exact(&self) -> String {
        match self {
            Cell::Num(x) => format!("{x:?}"),
            Cell::Int(i) => i.to_string(),
            Cell::Bool(b) => b.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Empty => String::new(),
        }
    }

    fn display(&self) -> String {
        match self {
            Cell::Num(x) => sig9(*x),
            _ => self.exact(),
        }
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
    }
}

impl From<usize> for Cell {
    fn from(i: usize) -> Self {
        Cell::Int(i as i64)
    }
}

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl From<&str> for Cell {
    fn from(s: &str) -> Self {
        Cell::Text(s.to_string())
    }
}

impl From<String> for Cell {
    fn from(s: String) -> Self {
        Cell::Text(s)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(x: Option<T>) -> Self {
        x.map_or(Cell::Empty, Into::into)
    }
}

/// `x` with 9 significant digits, like C's `%.9g`.
pub fn sig9(x: f64) -> String {
    if x == 0.0 || !x.is_finite() {
        return format!("{x}");
    }
    let sci = format!("{x:.8e}");
    let (m, e) = sci.split_once('e').expect("exponent form");
    // The exponent of the rounded value, so 9.9999999996 counts as 1e1.
    let exp: i32 = e.parse().expect("integer exponent");
    let trim = |s: &str| -> String {
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s.to_string()
        }
    };
    if (-5..9).contains(&exp) {
        trim(&format!("{:.*}", (8 - exp) as usize, x))
    } else {
        format!("{}e{exp}", trim(m))
    }
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: &[&'static str]) -> Self {
        Table {
            columns: columns.to_vec(),
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        debug_assert_eq!(row.len(), self.columns.len());
        self.rows.push(row);
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    fn json(&self) -> Value {
        Value::Array(
            self.rows
                .iter()
                .map(|r| {
                    let mut m = Map::new();
                    for (c, v) in self.columns.iter().zip(r) {
                        m.insert(c.to_string(), v.json());
                    }
                    Value::Object(m)
                })
                .collect(),
        )
    }

    fn render(&self, out: &mut String) {
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(Cell::display).collect())
            .collect();
        // Text columns read better flush left.
        let left: Vec<bool> = (0..self.columns.len())
            .map(|i| self.rows.iter().any(|r| matches!(r[i], Cell::Text(_))))
            .collect();
        let widths: Vec<usize> = (0..self.columns.len())
            .map(|i| {
                cells
                    .iter()
                    .map(|r| r[i].len())
                    .chain([self.columns[i].len()])
                    .max()
                    .unwrap_or(0)
            })
            .collect();
        let line = |out: &mut String, items: Vec<&str>| {
            let parts: Vec<String> = items
                .iter()
                .zip(widths.iter().zip(&left))
                .map(|(s, (w, l))| {
                    if *l {
                        format!("{s:<w$}")
                    } else {
                        format!("{s:>w$}")
                    }
                })
                .collect();
            let _ = writeln!(out, "  {}", parts.join("  ").trim_end());
        };
        line(out, self.columns.clone());
        for r in &cells {
            line(out, r.iter().map(String::as_str).collect());
        }
    }
}

/// Exit-status class of a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Status {
    Pass,
    Fail,
    Inconclusive,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::Inconclusive => 3,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Report {
    pub command: &'static str,
    pub inputs: Map<String, Value>,
    pub results: Table,
    pub witnesses: Table,
    pub verdict: String,
    pub status: Status,
    /// Extra lines shown in table output only.
    pub notes: Vec<String>,
}

impl Report {
    pub fn new(command: &'static str, results: Table, verdict: impl Into<String>) -> Self {
        Report {
            command,
            inputs: Map::new(),
            results,
            witnesses: Table::default(),
            verdict: verdict.into(),
            status: Status::Pass,
            notes: Vec::new(),
        }
    }

    pub fn input(mut self, key: &str, value: impl Serialize) -> Self {
        self.inputs.insert(
            key.to_string(),
            serde_json::to_value(value).expect("inputs are plain data"),
        );
        self
    }

    pub fn json(&self) -> Value {
        json!({
            "command": self.command,
            "inputs": Value::Object(self.inputs.clone()),
            "results": self.results.json(),
            "witnesses": self.witnesses.json(),
            "verdict": self.verdict,
        })
    }

    pub fn csv(&self) -> anyhow::Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.results.columns)?;
        for r in &self.results.rows {
            w.write_record(r.iter().map(Cell::exact))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "{}", self.command);
        for (k, v) in &self.inputs {
            let v = match v {
                Value::String(s) => s.clone(),
                Value::Number(n) => n.as_f64().map_or(n.to_string(), sig9),
                other => other.to_string(),
            };
            let _ = writeln!(out, "  {k}: {v}");
        }
        if !self.results.is_empty() {
            let _ = writeln!(out, "results");
            self.results.render(&mut out);
        }
        if !self.witnesses.is_empty() {
            let _ = writeln!(out, "witnesses");
            self.witnesses.render(&mut out);
        }
        for n in &self.notes {
            let _ = writeln!(out, "{n}");
        }
        let _ = writeln!(out, "verdict: {}", self.verdict);
        out
    }

    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match format {
            Format::Table => self.table(),
            Format::Csv => self.csv()?,
            Format::Json => serde_json::to_string_pretty(&self.json())? + "\n",
        })
    }
}
