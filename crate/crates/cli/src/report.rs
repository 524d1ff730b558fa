use serde::Serialize;
use serde_json::Value;

#[derive(Debug, Serialize)]
pub struct Engine {
    pub name: &'static str,
    pub version: &'static str,
}

/// One document per run. Everything except `timing_ms` is reproducible.
#[derive(Debug, Serialize)]
pub struct ReportDocument {
    pub engine: Engine,
    pub command: String,
    pub request: Value,
    pub space: Option<String>,
    pub space_hash: Option<String>,
    pub order: String,
    pub results: Vec<Value>,
    pub diagnostics: Vec<String>,
    pub timing_ms: u64,
}

impl ReportDocument {
    pub fn new(command: &str, request: Value, order: &str) -> Self {
        ReportDocument {
            engine: Engine { name: "jetlink", version: env!("CARGO_PKG_VERSION") },
            command: command.to_string(),
            request,
            space: None,
            space_hash: None,
            order: order.to_string(),
            results: Vec::new(),
            diagnostics: Vec::new(),
            timing_ms: 0,
        }
    }
}
