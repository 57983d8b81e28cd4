//! Machine-readable verification reports: one outcome per check, failures
//! carry a minimal witness.

use serde::{Deserialize, Serialize};

#[derive(Clone, Copy, PartialEq, Eq, Debug, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Outcome {
    Pass,
    Fail,
    Unresolved,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct CheckItem {
    pub name: String,
    pub outcome: Outcome,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<String>,
    pub millis: u128,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct ReportDocument {
    pub command: String,
    pub parameters: serde_json::Value,
    pub seed: u64,
    pub items: Vec<CheckItem>,
}

impl ReportDocument {
    pub fn new(command: &str, parameters: serde_json::Value, seed: u64) -> Self {
        ReportDocument {
            command: command.to_string(),
            parameters,
            seed,
            items: Vec::new(),
        }
    }

    pub fn push(
        &mut self,
        name: impl Into<String>,
        outcome: Outcome,
        witness: Option<String>,
        millis: u128,
    ) {
        self.items.push(CheckItem {
            name: name.into(),
            outcome,
            witness,
            millis,
        });
    }

    pub fn pass(&mut self, name: impl Into<String>, millis: u128) {
        self.push(name, Outcome::Pass, None, millis);
    }

    pub fn fail(&mut self, name: impl Into<String>, witness: String, millis: u128) {
        self.push(name, Outcome::Fail, Some(witness), millis);
    }

    pub fn unresolved(&mut self, name: impl Into<String>, witness: String, millis: u128) {
        self.push(name, Outcome::Unresolved, Some(witness), millis);
    }

    pub fn all_passed(&self) -> bool {
        self.items.iter().all(|i| i.outcome == Outcome::Pass)
    }

    pub fn has_unresolved(&self) -> bool {
        self.items.iter().any(|i| i.outcome == Outcome::Unresolved)
    }

    /// 0 all pass, 1 violation found, 2 unresolved.
    pub fn exit_code(&self) -> i32 {
        if self.items.iter().any(|i| i.outcome == Outcome::Fail) {
            1
        } else if self.has_unresolved() {
            2
        } else {
            0
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}
