//! Record rendering for plain, csv and jsonl output.
//!
//! A record is an ordered list of named fields. csv and jsonl render the same
//! field values; plain output is for people and is free-form per command.

use std::io::{self, Write};

use clap::ValueEnum;
use serde_json::{Map, Value};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Default)]
pub enum Format {
    #[default]
    Plain,
    Csv,
    Jsonl,
}

#[derive(Debug, Clone, PartialEq)]
pub enum Field {
    Int(i128),
    /// Exact numbers and names; strings in JSON so big values stay exact.
    Text(String),
    Bool(bool),
}

impl Field {
    fn to_csv(&self) -> String {
        match self {
            Field::Int(n) => n.to_string(),
            Field::Text(s) => s.clone(),
            Field::Bool(b) => b.to_string(),
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Field::Int(n) => i64::try_from(*n).map(Value::from).unwrap_or_else(|_| Value::String(n.to_string())),
            Field::Text(s) => Value::String(s.clone()),
            Field::Bool(b) => Value::Bool(*b),
        }
    }
}

impl From<&str> for Field {
    fn from(s: &str) -> Self {
        Field::Text(s.to_string())
    }
}

impl From<String> for Field {
    fn from(s: String) -> Self {
        Field::Text(s)
    }
}

impl From<bool> for Field {
    fn from(b: bool) -> Self {
        Field::Bool(b)
    }
}

macro_rules! int_field {
    ($($t:ty),*) => {$(
        impl From<$t> for Field {
            fn from(n: $t) -> Self {
                Field::Int(n as i128)
            }
        }
    )*};
}
int_field!(i64, u32, u64, usize, u128);

pub type Record = Vec<(&'static str, Field)>;

/// Writes records to stdout; `plain` is called to render plain-format lines.
pub struct Emitter<W: Write> {
    format: Format,
    out: W,
    header: Option<Vec<&'static str>>,
}

impl<W: Write> Emitter<W> {
    pub fn new(format: Format, out: W) -> Self {
        Self { format, out, header: None }
    }

    pub fn emit(&mut self, record: &Record, plain: impl FnOnce() -> String) -> io::Result<()> {
        match self.format {
            Format::Plain => writeln!(self.out, "{}", plain()),
            Format::Jsonl => {
                let obj: Map<String, Value> = record.iter().map(|(k, v)| (k.to_string(), v.to_json())).collect();
                writeln!(self.out, "{}", Value::Object(obj))
            }
            Format::Csv => {
                let names: Vec<&'static str> = record.iter().map(|(k, _)| *k).collect();
                let mut w = csv::WriterBuilder::new().has_headers(false).from_writer(Vec::new());
                if self.header.as_ref() != Some(&names) {
                    if self.header.is_some() {
                        // a new record shape starts a new block
                        writeln!(self.out)?;
                    }
                    w.write_record(&names).map_err(io::Error::other)?;
                    self.header = Some(names);
                }
                w.write_record(record.iter().map(|(_, v)| v.to_csv())).map_err(io::Error::other)?;
                let bytes = w.into_inner().map_err(|e| io::Error::other(e.to_string()))?;
                self.out.write_all(&bytes)
            }
        }
    }

    pub fn flush(&mut self) -> io::Result<()> {
        self.out.flush()
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn render(format: Format, records: &[Record]) -> String {
        let mut e = Emitter::new(format, Vec::new());
        for r in records {
            e.emit(r, || "plain".into()).unwrap();
        }
        String::from_utf8(e.out).unwrap()
    }

    #[test]
    fn csv_and_jsonl_carry_the_same_values() {
        let records = vec![
            vec![("n", Field::from(0i64)), ("value", Field::from("2"))],
            vec![("n", Field::from(1i64)), ("value", Field::from("-3/2"))],
        ];
        assert_eq!(render(Format::Csv, &records), "n,value\n0,2\n1,-3/2\n");
        assert_eq!(render(Format::Jsonl, &records), "{\"n\":0,\"value\":\"2\"}\n{\"n\":1,\"value\":\"-3/2\"}\n");
        assert_eq!(render(Format::Plain, &records), "plain\nplain\n");
    }

    #[test]
    fn csv_starts_new_block_on_shape_change() {
        let records = vec![
            vec![("pass", Field::from(true))],
            vec![("total", Field::from(1u64)), ("failed", Field::from(0u64))],
        ];
        assert_eq!(render(Format::Csv, &records), "pass\ntrue\n\ntotal,failed\n1,0\n");
    }

    #[test]
    fn csv_quotes_when_needed() {
        let records = vec![vec![("expression", Field::from("sum(i=0..3, L(i))"))]];
        assert_eq!(render(Format::Csv, &records), "expression\n\"sum(i=0..3, L(i))\"\n");
    }
}
