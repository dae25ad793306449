use std::io::Write;

use serde_json::{json, Map, Number, Value};

#[derive(Debug, Clone, PartialEq)]
pub enum Cell {
    Real(f64),
    Int(i64),
    Text(String),
    Bool(bool),
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Real(x)
    }
}

impl From<i64> for Cell {
    fn from(x: i64) -> Self {
        Cell::Int(x)
    }
}

impl From<usize> for Cell {
    fn from(x: usize) -> Self {
        Cell::Int(x as i64)
    }
}

impl From<bool> for Cell {
    fn from(x: bool) -> Self {
        Cell::Bool(x)
    }
}

impl From<&str> for Cell {
    fn from(x: &str) -> Self {
        Cell::Text(x.to_string())
    }
}

impl From<String> for Cell {
    fn from(x: String) -> Self {
        Cell::Text(x)
    }
}

/// `x` to `digits` significant digits, fixed-point unless the exponent is
/// below -5 or at least `digits`.
pub fn format_real(x: f64, digits: usize) -> String {
    if x.is_nan() {
        return "nan".into();
    }
    if x.is_infinite() {
        return if x > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if x == 0.0 {
        return "0".into();
    }
    let digits = digits.max(1);
    let sci = format!("{:.*e}", digits - 1, x);
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..digits as i32).contains(&exp) {
        format!("{:.*}", (digits as i32 - 1 - exp) as usize, x)
    } else {
        sci
    }
}

impl Cell {
    fn text(&self, digits: usize) -> String {
        match self {
            Cell::Real(x) => format_real(*x, digits),
            Cell::Int(n) => n.to_string(),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self, digits: usize) -> Value {
        match self {
            Cell::Real(x) => {
                let s = format_real(*x, digits);
                match s.parse::<f64>().ok().and_then(Number::from_f64) {
                    Some(n) => Value::Number(n),
                    None => Value::String(s),
                }
            }
            Cell::Int(n) => json!(n),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

/// One computation's output: a header line, a single table and a few
/// scalar extras.
#[derive(Debug, Clone, Default)]
pub struct Report {
    pub command: String,
    pub inputs: Vec<(String, Cell)>,
    pub headline: Option<String>,
    pub columns: Vec<String>,
    pub rows: Vec<Vec<Cell>>,
    pub summary: Vec<(String, Cell)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Table,
    Csv,
    Json,
}

impl Report {
    pub fn new(command: &str, columns: &[&str]) -> Self {
        Report {
            command: command.into(),
            columns: columns.iter().map(|c| c.to_string()).collect(),
            ..Default::default()
        }
    }

    pub fn input(&mut self, name: &str, value: impl Into<Cell>) {
        self.inputs.push((name.into(), value.into()));
    }

    pub fn row(&mut self, cells: Vec<Cell>) {
        debug_assert_eq!(cells.len(), self.columns.len());
        self.rows.push(cells);
    }

    pub fn summary(&mut self, name: &str, value: impl Into<Cell>) {
        self.summary.push((name.into(), value.into()));
    }

    pub fn write(&self, format: Format, digits: usize, out: &mut dyn Write) -> std::io::Result<()> {
        match format {
            Format::Table => self.write_table(digits, out),
            Format::Csv => self.write_csv(digits, out),
            Format::Json => {
                let text = serde_json::to_string_pretty(&self.to_json(digits))?;
                writeln!(out, "{text}")
            }
        }
    }

    fn write_table(&self, digits: usize, out: &mut dyn Write) -> std::io::Result<()> {
        if let Some(h) = &self.headline {
            writeln!(out, "{h}")?;
        }
        let cells: Vec<Vec<String>> = self
            .rows
            .iter()
            .map(|r| r.iter().map(|c| c.text(digits)).collect())
            .collect();
        if cells.len() == 1 && self.columns.len() > 4 {
            let w = self.columns.iter().map(|c| c.chars().count()).max().unwrap_or(0);
            for (c, v) in self.columns.iter().zip(&cells[0]) {
                writeln!(out, "{c:<w$}  {v}")?;
            }
        } else if !cells.is_empty() {
            let widths: Vec<usize> = (0..self.columns.len())
                .map(|j| {
                    cells
                        .iter()
                        .map(|r| r[j].chars().count())
                        .chain(std::iter::once(self.columns[j].chars().count()))
                        .max()
                        .unwrap()
                })
                .collect();
            let line = |items: &[String]| {
                items
                    .iter()
                    .zip(&widths)
                    .map(|(s, w)| format!("{s:>w$}"))
                    .collect::<Vec<_>>()
                    .join("  ")
            };
            writeln!(out, "{}", line(&self.columns))?;
            writeln!(
                out,
                "{}",
                widths.iter().map(|w| "-".repeat(*w)).collect::<Vec<_>>().join("  ")
            )?;
            for r in &cells {
                writeln!(out, "{}", line(r))?;
            }
        }
        for (k, v) in &self.summary {
            writeln!(out, "{k}: {}", v.text(digits))?;
        }
        Ok(())
    }

    fn write_csv(&self, digits: usize, out: &mut dyn Write) -> std::io::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(&self.columns)?;
        for r in &self.rows {
            w.write_record(r.iter().map(|c| c.text(digits)))?;
        }
        w.flush()
    }

    pub fn to_json(&self, digits: usize) -> Value {
        let object = |pairs: &[(String, Cell)]| {
            Value::Object(
                pairs
                    .iter()
                    .map(|(k, v)| (k.clone(), v.json(digits)))
                    .collect::<Map<_, _>>(),
            )
        };
        let results: Vec<Value> = self
            .rows
            .iter()
            .map(|r| {
                Value::Object(
                    self.columns
                        .iter()
                        .zip(r)
                        .map(|(k, v)| (k.clone(), v.json(digits)))
                        .collect::<Map<_, _>>(),
                )
            })
            .collect();
        let mut root = Map::new();
        root.insert("command".into(), json!(self.command));
        root.insert("inputs".into(), object(&self.inputs));
        if let Some(h) = &self.headline {
            root.insert("headline".into(), json!(h));
        }
        root.insert("results".into(), Value::Array(results));
        if !self.summary.is_empty() {
            root.insert("summary".into(), object(&self.summary));
        }
        Value::Object(root)
    }
}
