use serde_json::{Map, Number, Value};

/// 17 significant digits, so every f64 reads back exactly.
pub fn num(v: f64) -> Value {
    if v.is_finite() {
        let s = format!("{v:.16e}");
        Value::Number(s.parse::<Number>().expect("formatted float is valid JSON"))
    } else {
        Value::Null
    }
}

/// A flat record: ordered (name, value) pairs, written as a JSON object or a CSV row.
#[derive(Debug, Default, Clone)]
pub struct Record {
    pub fields: Vec<(String, Value)>,
}

impl Record {
    pub fn new() -> Self {
        Record::default()
    }

    pub fn put(&mut self, key: &str, v: Value) -> &mut Self {
        self.fields.push((key.to_string(), v));
        self
    }

    pub fn f(&mut self, key: &str, v: f64) -> &mut Self {
        self.put(key, num(v))
    }

    pub fn s(&mut self, key: &str, v: impl Into<String>) -> &mut Self {
        self.put(key, Value::String(v.into()))
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        for (k, v) in &self.fields {
            m.insert(k.clone(), v.clone());
        }
        Value::Object(m)
    }

    fn csv_cell(v: &Value) -> String {
        match v {
            Value::String(s) => s.clone(),
            Value::Null => String::new(),
            Value::Array(items) => items.iter().map(Record::csv_cell).collect::<Vec<_>>().join(";"),
            other => other.to_string(),
        }
    }
}

/// Write records in the chosen format. CSV takes its header from the first
/// record; nested values are flattened with ';'.
pub fn emit(records: &[Record], csv_format: bool) -> std::io::Result<()> {
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    if csv_format {
        let mut w = csv::WriterBuilder::new().flexible(true).from_writer(&mut out);
        if let Some(first) = records.first() {
            w.write_record(first.fields.iter().map(|(k, _)| k.as_str()))?;
        }
        for r in records {
            w.write_record(r.fields.iter().map(|(_, v)| Record::csv_cell(v)))?;
        }
        w.flush()?;
    } else {
        use std::io::Write;
        for r in records {
            writeln!(out, "{}", r.to_json())?;
        }
    }
    Ok(())
}
