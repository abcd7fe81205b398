//! Run reports: one JSON document per invocation. Extended reals are strings,
//! `"inf"`, `"-inf"` or a 17-significant-digit decimal.

use std::path::Path;
use std::time::Instant;

use qfdiv::ExtendedReal;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::error::CliError;

pub fn ext(x: ExtendedReal) -> Value {
    Value::String(x.to_string())
}

pub fn num(x: f64) -> Value {
    ext(ExtendedReal::from_f64(x).unwrap_or(ExtendedReal::PlusInfinity))
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct RunReport {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub cases: Vec<Value>,
    pub passed: usize,
    pub failed: usize,
    /// Case ids of failures, in `seed:dim:kind:index` form where applicable.
    pub failures: Vec<String>,
    pub wall_time_s: f64,
}

pub struct ReportBuilder {
    report: RunReport,
    start: Instant,
}

impl ReportBuilder {
    pub fn new(command: &str) -> Self {
        Self {
            report: RunReport {
                command: command.to_string(),
                inputs: Map::new(),
                cases: Vec::new(),
                passed: 0,
                failed: 0,
                failures: Vec::new(),
                wall_time_s: 0.0,
            },
            start: Instant::now(),
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.report.inputs.insert(key.to_string(), value.into());
        self
    }

    pub fn case(&mut self, value: Value, ok: bool, id: Option<String>) {
        self.report.cases.push(value);
        if ok {
            self.report.passed += 1;
        } else {
            self.report.failed += 1;
            if let Some(id) = id {
                self.report.failures.push(id);
            }
        }
    }

    pub fn finish(mut self) -> RunReport {
        self.report.wall_time_s = self.start.elapsed().as_secs_f64();
        self.report
    }
}

impl RunReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn write(&self, path: &Path) -> Result<(), CliError> {
        std::fs::write(path, self.to_json()).map_err(|e| CliError::io(path, e))
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} passed, {} failed ({:.2} s)",
            self.command, self.passed, self.failed, self.wall_time_s
        )
    }
}
