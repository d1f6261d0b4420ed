//! Run manifests: enough to replay an invocation bit-identically.

use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

#[derive(Serialize)]
pub struct RunManifest {
    pub command: String,
    pub parameters: Value,
    pub digits: u32,
    pub versions: Versions,
    pub wall_time_ms: u128,
    pub outputs: Value,
}

#[derive(Serialize)]
pub struct Versions {
    pub airytau: &'static str,
    pub airytau_core: &'static str,
}

impl RunManifest {
    pub fn new(
        command: &str,
        parameters: Value,
        digits: u32,
        wall_time: Duration,
        outputs: Value,
    ) -> Self {
        RunManifest {
            command: command.to_string(),
            parameters,
            digits,
            versions: Versions {
                airytau: env!("CARGO_PKG_VERSION"),
                airytau_core: env!("CARGO_PKG_VERSION"),
            },
            wall_time_ms: wall_time.as_millis(),
            outputs,
        }
    }

    pub fn write(&self, path: &str) -> std::io::Result<()> {
        let body = serde_json::to_string_pretty(self).expect("manifest serializes");
        std::fs::write(path, body)
    }
}
