use std::fs::File;
use std::io::{self, BufWriter, Write};

use clap::ValueEnum;
use serde_json::{Map, Number, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Real(f64),
    Int(i64),
    Text(String),
    Flag(bool),
    Missing,
}

impl From<f64> for Field {
    fn from(v: f64) -> Self {
        Field::Real(v)
    }
}

impl From<usize> for Field {
    fn from(v: usize) -> Self {
        Field::Int(v as i64)
    }
}

impl From<Option<f64>> for Field {
    fn from(v: Option<f64>) -> Self {
        v.map_or(Field::Missing, Field::Real)
    }
}

impl From<&str> for Field {
    fn from(v: &str) -> Self {
        Field::Text(v.to_string())
    }
}

impl From<String> for Field {
    fn from(v: String) -> Self {
        Field::Text(v)
    }
}

impl From<bool> for Field {
    fn from(v: bool) -> Self {
        Field::Flag(v)
    }
}

/// One output row; field order is the column order in both formats.
#[derive(Debug, Clone, PartialEq)]
pub struct Record {
    pub schema: &'static str,
    pub fields: Vec<(&'static str, Field)>,
}

impl Record {
    pub fn new(schema: &'static str) -> Self {
        Self { schema, fields: Vec::new() }
    }

    pub fn with(mut self, name: &'static str, value: impl Into<Field>) -> Self {
        self.fields.push((name, value.into()));
        self
    }
}

/// `v` with 10 significant digits: fixed notation for decimal exponents in
/// `[-5, 10)`, scientific otherwise.
pub fn format_real(v: f64) -> String {
    if !v.is_finite() {
        return if v.is_nan() { "NaN".into() } else if v > 0.0 { "inf".into() } else { "-inf".into() };
    }
    if v == 0.0 {
        return "0.000000000".into();
    }
    let sci = format!("{v:.9e}");
    let exp: i32 = sci[sci.find('e').unwrap() + 1..].parse().unwrap();
    if (-5..10).contains(&exp) {
        format!("{:.*}", (9 - exp) as usize, v)
    } else {
        sci
    }
}

fn text(field: &Field) -> String {
    match field {
        Field::Real(v) => format_real(*v),
        Field::Int(v) => v.to_string(),
        Field::Text(s) => s.clone(),
        Field::Flag(b) => b.to_string(),
        Field::Missing => String::new(),
    }
}

fn json(field: &Field) -> Value {
    match field {
        Field::Real(v) if v.is_finite() => {
            Value::Number(format_real(*v).parse::<Number>().expect("formatted real is a JSON number"))
        }
        Field::Real(_) | Field::Missing => Value::Null,
        Field::Int(v) => Value::from(*v),
        Field::Text(s) => Value::from(s.as_str()),
        Field::Flag(b) => Value::from(*b),
    }
}

pub fn render(records: &[Record], format: Format, out: &mut dyn Write) -> io::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            if let Some(first) = records.first() {
                w.write_record(first.fields.iter().map(|f| f.0))?;
            }
            for r in records {
                w.write_record(r.fields.iter().map(|f| text(&f.1)))?;
            }
            w.flush()
        }
        Format::Json => {
            let rows: Vec<Value> = records
                .iter()
                .map(|r| Value::Object(r.fields.iter().map(|(k, v)| (k.to_string(), json(v))).collect::<Map<_, _>>()))
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)
        }
    }
}

/// Writes to `path`, or to stdout for `-`.
pub fn emit(records: &[Record], format: Format, path: &str) -> io::Result<()> {
    if path == "-" {
        let stdout = io::stdout();
        let mut lock = stdout.lock();
        render(records, format, &mut lock)
    } else {
        let mut w = BufWriter::new(File::create(path)?);
        render(records, format, &mut w)?;
        w.flush()
    }
}
