//! The serialised result of an experiment run.

use serde::{Deserialize, Serialize};
use serde_json::Value;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ExperimentRecord {
    pub experiment: String,
    pub params: Value,
    pub seed: u64,
    pub trials: usize,
    pub outcomes: Vec<Value>,
    /// Always carries a `"table"` array of flat rows for CSV export.
    pub summary: Value,
}

impl ExperimentRecord {
    pub fn to_json_string(&self) -> String {
        serde_json::to_string(self).expect("records are plain JSON")
    }

    pub fn table(&self) -> &[Value] {
        self.summary["table"].as_array().map(Vec::as_slice).unwrap_or(&[])
    }

    /// The summary table as CSV, columns in the order of the first row.
    pub fn summary_csv(&self) -> Result<String, csv::Error> {
        let rows = self.table();
        let mut w = csv::Writer::from_writer(Vec::new());
        let Some(Value::Object(first)) = rows.first() else {
            return Ok(String::new());
        };
        let header: Vec<&String> = first.keys().collect();
        w.write_record(header.iter().map(|s| s.as_str()))?;
        for row in rows {
            w.write_record(header.iter().map(|k| match &row[k.as_str()] {
                Value::String(s) => s.clone(),
                Value::Null => String::new(),
                other => other.to_string(),
            }))?;
        }
        Ok(String::from_utf8(w.into_inner().map_err(|e| e.into_error())?).expect("utf-8 fields"))
    }
}
