use std::io::Write;

use serde_json::{json, Map, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Format {
    Text,
    Json,
}

/// One self-describing record: a kind, its fields, and a line of prose for
/// the text format.
#[derive(Clone, Debug)]
pub struct Record {
    pub kind: &'static str,
    pub fields: Map<String, Value>,
    pub text: String,
}

impl Record {
    pub fn new(kind: &'static str, fields: Value, text: impl Into<String>) -> Record {
        let fields = match fields {
            Value::Object(m) => m,
            other => {
                let mut m = Map::new();
                m.insert("value".into(), other);
                m
            }
        };
        Record { kind, fields, text: text.into() }
    }

    pub fn to_json(&self) -> Value {
        let mut m = self.fields.clone();
        m.insert("record".into(), json!(self.kind));
        Value::Object(m)
    }
}

/// Writes records as prose or as one JSON object per line. Keys come out
/// sorted, so identical inputs give identical bytes.
pub fn emit(out: &mut impl Write, records: &[Record], format: Format) -> std::io::Result<()> {
    for r in records {
        match format {
            Format::Text => {
                if !r.text.is_empty() {
                    writeln!(out, "{}", r.text)?;
                }
            }
            Format::Json => writeln!(out, "{}", r.to_json())?,
        }
    }
    Ok(())
}
