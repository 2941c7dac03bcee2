//! The one report shape every subcommand emits.
//!
//! Standard output is deterministic: the same argv and seed always produce
//! the same bytes. Timing therefore goes to standard error only.

use serde::Serialize;

#[derive(Serialize, Clone, Copy, PartialEq, Eq)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Computed,
}

#[derive(Serialize)]
pub struct CommandReport {
    pub status: Status,
    pub payload: serde_json::Value,
    #[serde(skip)]
    pub text: String,
}

impl CommandReport {
    pub fn computed(payload: serde_json::Value, text: String) -> Self {
        CommandReport { status: Status::Computed, payload, text }
    }

    pub fn pass(payload: serde_json::Value, text: String) -> Self {
        CommandReport { status: Status::Pass, payload, text }
    }

    /// A failure report; the payload must carry at least one witness.
    pub fn fail(payload: serde_json::Value, text: String) -> Self {
        CommandReport { status: Status::Fail, payload, text }
    }

    pub fn exit_code(&self) -> u8 {
        match self.status {
            Status::Fail => 1,
            _ => 0,
        }
    }

    /// Print to standard output: the text rendering by default, the full
    /// report as JSON under --json.
    pub fn emit(&self, json: bool) {
        if json {
            let rendered = serde_json::to_string_pretty(self)
                .expect("reports serialize without fallible map keys");
            println!("{rendered}");
        } else {
            let text = self.text.trim_end();
            println!("{text}");
        }
    }
}
