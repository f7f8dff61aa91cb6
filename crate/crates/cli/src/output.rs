//! Records printed by the subcommands, in human, JSON or CSV form.

use std::io::Write;

use clap::ValueEnum;
use num_rational::BigRational;
use qcorr_young::{parse_rational, rational_string};
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Human,
    Json,
    Csv,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Float(f64),
    Rational(BigRational),
    Int(i64),
    Bool(bool),
    Text(String),
}

impl From<f64> for Field {
    fn from(x: f64) -> Self {
        Field::Float(x)
    }
}

impl From<BigRational> for Field {
    fn from(q: BigRational) -> Self {
        Field::Rational(q)
    }
}

impl From<&BigRational> for Field {
    fn from(q: &BigRational) -> Self {
        Field::Rational(q.clone())
    }
}

impl From<usize> for Field {
    fn from(n: usize) -> Self {
        Field::Int(n as i64)
    }
}

impl From<u64> for Field {
    fn from(n: u64) -> Self {
        Field::Text(n.to_string())
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

/// Twelve significant digits, trailing zeros removed.
pub fn fmt_float(x: f64) -> String {
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return x.to_string();
    }
    let e = x.abs().log10().floor() as i32;
    if (-5..12).contains(&e) {
        let decimals = (11 - e).max(0) as usize;
        let s = format!("{x:.decimals$}");
        if s.contains('.') {
            s.trim_end_matches('0').trim_end_matches('.').to_string()
        } else {
            s
        }
    } else {
        format!("{x:.11e}")
    }
}

impl Field {
    fn text(&self) -> String {
        match self {
            Field::Float(x) => fmt_float(*x),
            Field::Rational(q) => rational_string(q),
            Field::Int(n) => n.to_string(),
            Field::Bool(b) => b.to_string(),
            Field::Text(s) => s.clone(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Field::Float(x) => serde_json::Number::from_f64(*x).map(Value::Number).unwrap_or(Value::Null),
            Field::Rational(q) => Value::String(rational_string(q)),
            Field::Int(n) => Value::from(*n),
            Field::Bool(b) => Value::Bool(*b),
            Field::Text(s) => Value::String(s.clone()),
        }
    }
}

/// Ordered key/value pairs.
#[derive(Debug, Clone, Default, PartialEq)]
pub struct Record(pub Vec<(String, Field)>);

impl Record {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with(mut self, key: &str, value: impl Into<Field>) -> Self {
        self.0.push((key.to_string(), value.into()));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Field> {
        self.0.iter().find(|(k, _)| k == key).map(|(_, v)| v)
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.0 {
            m.insert(k.clone(), v.json());
        }
        Value::Object(m)
    }

    fn human(&self) -> String {
        self.0.iter().map(|(k, v)| format!("{k}={}", v.text())).collect::<Vec<_>>().join(" ")
    }
}

/// Result of a subcommand.
#[derive(Debug, Clone, PartialEq)]
pub enum Output {
    Record(Record),
    Table(Vec<Record>),
    /// Free text for the human format, with a record for the others.
    Message(String, Record),
}

fn csv_text(rows: &[&Record]) -> anyhow::Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let header: Vec<&str> = rows.first().map(|r| r.0.iter().map(|(k, _)| k.as_str()).collect()).unwrap_or_default();
    w.write_record(&header)?;
    for r in rows {
        w.write_record(r.0.iter().map(|(_, v)| v.text()))?;
    }
    Ok(String::from_utf8(w.into_inner()?)?)
}

impl Output {
    pub fn render(&self, format: Format) -> anyhow::Result<String> {
        Ok(match (self, format) {
            (Output::Message(text, _), Format::Human) => format!("{text}\n"),
            (Output::Record(r), Format::Human) => format!("{}\n", r.human()),
            (Output::Record(r) | Output::Message(_, r), Format::Json) => format!("{}\n", serde_json::to_string_pretty(&r.to_json())?),
            (Output::Record(r) | Output::Message(_, r), Format::Csv) => csv_text(&[r])?,
            (Output::Table(rows), Format::Human) => rows.iter().map(|r| format!("{}\n", r.human())).collect(),
            (Output::Table(rows), Format::Json) => {
                let v: Vec<Value> = rows.iter().map(Record::to_json).collect();
                format!("{}\n", serde_json::to_string_pretty(&v)?)
            }
            (Output::Table(rows), Format::Csv) => csv_text(&rows.iter().collect::<Vec<_>>())?,
        })
    }

    /// Write to `path`, or to standard output for `-`.
    pub fn emit(&self, format: Format, path: &str) -> anyhow::Result<()> {
        let text = self.render(format)?;
        if path == "-" {
            std::io::stdout().write_all(text.as_bytes())?;
        } else {
            std::fs::write(path, text)?;
        }
        Ok(())
    }
}

/// Read back a rational field written as "num/den".
pub fn rational_field(v: &Value) -> Option<BigRational> {
    v.as_str().and_then(parse_rational)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn twelve_significant_digits() {
        assert_eq!(fmt_float(8.0 / 11.0), "0.727272727273");
        assert_eq!(fmt_float(1.0), "1");
        assert_eq!(fmt_float(-2.5), "-2.5");
        assert_eq!(fmt_float(123456.7890123456), "123456.789012");
        assert_eq!(fmt_float(1.5e-9), "1.50000000000e-9");
    }

    #[test]
    fn json_roundtrip() {
        let q = BigRational::new(BigInt::from(-17), BigInt::from(19));
        let x = 0.1 + 0.2;
        let r = Record::new().with("q", &q).with("x", x);
        let text = Output::Record(r).render(Format::Json).unwrap();
        let v: Value = serde_json::from_str(&text).unwrap();
        assert_eq!(rational_field(&v["q"]).unwrap(), q);
        assert_eq!(v["x"].as_f64().unwrap(), x);
    }

    #[test]
    fn csv_has_header() {
        let rows = vec![Record::new().with("a", 1usize).with("b", 0.5), Record::new().with("a", 2usize).with("b", 0.25)];
        assert_eq!(Output::Table(rows).render(Format::Csv).unwrap(), "a,b\n1,0.5\n2,0.25\n");
    }
}
