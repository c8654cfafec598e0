use std::time::Instant;

use serde_json::{json, Value};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Verdict {
    Pass,
    Fail,
    Error,
}

impl Verdict {
    pub fn from_bool(ok: bool) -> Self {
        if ok {
            Verdict::Pass
        } else {
            Verdict::Fail
        }
    }

    pub fn as_str(self) -> &'static str {
        match self {
            Verdict::Pass => "PASS",
            Verdict::Fail => "FAIL",
            Verdict::Error => "ERROR",
        }
    }

    pub fn exit_code(self) -> u8 {
        match self {
            Verdict::Pass => 0,
            Verdict::Fail => 1,
            Verdict::Error => 2,
        }
    }

    /// Worst of two verdicts; an error outranks a failure.
    pub fn and(self, other: Verdict) -> Verdict {
        if other.exit_code() > self.exit_code() {
            other
        } else {
            self
        }
    }
}

pub struct RunReport {
    pub command: String,
    pub inputs: Value,
    pub verdict: Verdict,
    pub details: Value,
    pub started: Instant,
    pub seed: Option<u64>,
}

impl RunReport {
    pub fn new(command: &str, inputs: Value, started: Instant) -> Self {
        RunReport {
            command: command.into(),
            inputs,
            verdict: Verdict::Pass,
            details: Value::Null,
            started,
            seed: None,
        }
    }

    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "verdict": self.verdict.as_str(),
            "details": self.details,
            "wall_time_ms": self.started.elapsed().as_millis(),
        });
        if let Some(seed) = self.seed {
            v["seed"] = json!(seed);
        }
        v
    }
}
