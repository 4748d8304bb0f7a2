use std::time::Duration;

use serde::Serialize;
use serde_json::Value;

pub const SCHEMA: &str = "conflictkit.run/1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Status {
    Success,
    Refuted,
    Mismatch,
    Inconclusive,
    Error,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Success => 0,
            Status::Refuted | Status::Mismatch => 1,
            Status::Error => 2,
            Status::Inconclusive => 3,
        }
    }
}

/// What a command hands back before timing and input echo are attached.
#[derive(Debug)]
pub struct Outcome {
    pub status: Status,
    pub certified: Option<bool>,
    pub complete: Option<bool>,
    pub body: Value,
}

impl Outcome {
    pub fn new(status: Status, body: Value) -> Self {
        Outcome {
            status,
            certified: None,
            complete: None,
            body,
        }
    }

    pub fn success(body: Value) -> Self {
        Self::new(Status::Success, body)
    }

    pub fn certified(mut self, flag: bool) -> Self {
        self.certified = Some(flag);
        self
    }

    pub fn complete(mut self, flag: bool) -> Self {
        self.complete = Some(flag);
        self
    }
}

#[derive(Debug, Serialize)]
pub struct RunReport {
    pub schema: &'static str,
    pub command: String,
    pub inputs: Value,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub certified: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub complete: Option<bool>,
    pub outcome: Value,
    pub elapsed_ms: f64,
}

impl RunReport {
    pub fn new(command: String, inputs: Value, outcome: Outcome, elapsed: Duration) -> Self {
        RunReport {
            schema: SCHEMA,
            command,
            inputs,
            status: outcome.status,
            certified: outcome.certified,
            complete: outcome.complete,
            outcome: outcome.body,
            elapsed_ms: elapsed.as_secs_f64() * 1e3,
        }
    }
}
