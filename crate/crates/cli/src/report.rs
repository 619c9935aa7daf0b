use std::io::Write;

use serde::Serialize;
use serde_json::{json, Map, Value};

use gsn_core::catalog::Collection;

pub const FORMAT_VERSION: u32 = 1;

/// Self-describing JSON report: the full command line is echoed under
/// `config` so a run can be repeated bit-identically.
#[derive(Serialize)]
pub struct RunReport {
    format_version: u32,
    command: String,
    config: Value,
    #[serde(skip_serializing_if = "Option::is_none")]
    collection: Option<Value>,
    #[serde(flatten)]
    extra: Map<String, Value>,
    results: Vec<Value>,
    summary: Value,
}

impl RunReport {
    pub fn new(command: &str, cli: &impl Serialize) -> Self {
        RunReport {
            format_version: FORMAT_VERSION,
            command: command.to_string(),
            config: json!(cli),
            collection: None,
            extra: Map::new(),
            results: Vec::new(),
            summary: Value::Null,
        }
    }

    pub fn collection(mut self, c: &Collection) -> Self {
        self.collection = Some(json!(c));
        self
    }

    pub fn extra(mut self, key: &str, value: Value) -> Self {
        self.extra.insert(key.to_string(), value);
        self
    }

    pub fn results(mut self, results: Vec<Value>) -> Self {
        self.results = results;
        self
    }

    pub fn summary(mut self, summary: Value) -> Self {
        self.summary = summary;
        self
    }

    pub fn write(&self, out: &mut dyn Write) -> anyhow::Result<()> {
        serde_json::to_writer_pretty(&mut *out, self)?;
        writeln!(out)?;
        Ok(())
    }
}
