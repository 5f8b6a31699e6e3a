//! Record tables rendered as CSV or JSON.

use anyhow::Result;
use pbt_core::Merit;
use serde_json::{Map, Number, Value};

use crate::args::Format;

#[derive(Clone, Debug, PartialEq)]
pub enum Cell {
    Int(u64),
    Num(f64),
    Text(String),
    Bool(bool),
    Empty,
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(n) => n.to_string(),
            Cell::Num(x) => format!("{x:?}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
            Cell::Empty => String::new(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(n) => Value::from(*n),
            Cell::Num(x) => Number::from_f64(*x).map_or(Value::Null, Value::Number),
            Cell::Text(s) => Value::String(s.clone()),
            Cell::Bool(b) => Value::Bool(*b),
            Cell::Empty => Value::Null,
        }
    }
}

impl From<usize> for Cell {
    fn from(n: usize) -> Self {
        Cell::Int(n as u64)
    }
}

impl From<f64> for Cell {
    fn from(x: f64) -> Self {
        Cell::Num(x)
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

impl From<bool> for Cell {
    fn from(b: bool) -> Self {
        Cell::Bool(b)
    }
}

impl<T: Into<Cell>> From<Option<T>> for Cell {
    fn from(v: Option<T>) -> Self {
        v.map_or(Cell::Empty, Into::into)
    }
}

/// Decimal value and `p/q` string of an optional merit.
pub fn merit_cells(m: Option<&Merit>) -> [Cell; 2] {
    match m {
        Some(m) => [Cell::Num(m.value()), m.ratio_string().into()],
        None => [Cell::Empty, Cell::Empty],
    }
}

#[derive(Clone, Debug)]
pub struct Table {
    pub columns: Vec<&'static str>,
    pub rows: Vec<Vec<Cell>>,
}

impl Table {
    pub fn new(columns: Vec<&'static str>) -> Self {
        Table {
            columns,
            rows: Vec::new(),
        }
    }

    pub fn push(&mut self, row: Vec<Cell>) {
        assert_eq!(row.len(), self.columns.len(), "row width");
        self.rows.push(row);
    }

    pub fn render(&self, format: Format) -> Result<String> {
        match format {
            Format::Csv => self.to_csv(),
            Format::Json => Ok(render_json(&self.to_json())),
        }
    }

    fn to_csv(&self) -> Result<String> {
        let mut w = csv::Writer::from_writer(Vec::new());
        w.write_record(&self.columns)?;
        for row in &self.rows {
            w.write_record(row.iter().map(Cell::csv))?;
        }
        Ok(String::from_utf8(w.into_inner()?)?)
    }

    pub fn to_json(&self) -> Value {
        let records = self
            .rows
            .iter()
            .map(|row| {
                let obj: Map<String, Value> = self
                    .columns
                    .iter()
                    .zip(row)
                    .map(|(c, v)| (c.to_string(), v.json()))
                    .collect();
                Value::Object(obj)
            })
            .collect();
        let mut top = Map::new();
        top.insert("columns".into(), self.columns.iter().map(|c| Value::from(*c)).collect());
        top.insert("records".into(), Value::Array(records));
        Value::Object(top)
    }
}

/// Canonical JSON text: pretty-printed with a trailing newline.
pub fn render_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("json values serialise");
    s.push('\n');
    s
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> Table {
        let mut t = Table::new(vec!["name", "N", "value", "exact"]);
        t.push(vec!["a,b".into(), 3usize.into(), 0.1f64.into(), Cell::Empty]);
        t.push(vec!["c".into(), 4usize.into(), (1.0f64 / 3.0).into(), "1/3".into()]);
        t.push(vec!["e".into(), 5usize.into(), 2.5e-17f64.into(), true.into()]);
        t
    }

    #[test]
    fn csv_quotes_and_decimals() {
        let s = sample().render(Format::Csv).unwrap();
        assert_eq!(
            s,
            "name,N,value,exact\n\"a,b\",3,0.1,\nc,4,0.3333333333333333,1/3\ne,5,2.5e-17,true\n"
        );
    }

    #[test]
    fn json_round_trips() {
        let s = sample().render(Format::Json).unwrap();
        let back: Value = serde_json::from_str(&s).unwrap();
        assert_eq!(render_json(&back), s);
        assert!(s.find("\"name\"").unwrap() < s.find("\"exact\"").unwrap());
    }
}
