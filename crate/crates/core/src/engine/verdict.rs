use std::fmt;

use num_bigint::BigInt;
use serde::Serialize;
use serde_json::json;

use super::LinearForm;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, PartialOrd, Ord)]
pub enum Outcome {
    ForcedVU,
    Decomposable,
    NotForced,
    HypothesisViolated,
}

impl Outcome {
    pub const ALL: [Outcome; 4] =
        [Outcome::ForcedVU, Outcome::Decomposable, Outcome::NotForced, Outcome::HypothesisViolated];

    pub fn name(self) -> &'static str {
        match self {
            Outcome::ForcedVU => "ForcedVU",
            Outcome::Decomposable => "Decomposable",
            Outcome::NotForced => "NotForced",
            Outcome::HypothesisViolated => "HypothesisViolated",
        }
    }
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ForcingVerdict {
    pub outcome: Outcome,
    /// Rendered forms proven to vanish, e.g. `2*l1 + m1_1`.
    pub targets: Vec<String>,
    /// The same targets over the system's variables.
    pub target_forms: Vec<LinearForm>,
    pub trace: Vec<String>,
    /// For `ForcedVU`: every target confirmed by the kernel oracle. For
    /// `Decomposable`: the oracle exhibited a solution with unequal `λ`.
    pub oracle_confirmed: bool,
    /// Decomposable witness over the system's variables, when one exists.
    pub witness: Option<Vec<BigInt>>,
    pub violated_hypothesis: Option<String>,
}

impl ForcingVerdict {
    pub(crate) fn hypothesis_violated(what: &str) -> Self {
        ForcingVerdict {
            outcome: Outcome::HypothesisViolated,
            targets: vec![],
            target_forms: vec![],
            trace: vec![format!("hypothesis violated: {what}")],
            oracle_confirmed: false,
            witness: None,
            violated_hypothesis: Some(what.to_string()),
        }
    }

    /// `{outcome, targets, trace, oracle_confirmed}`.
    pub fn to_json(&self) -> serde_json::Value {
        json!({
            "outcome": self.outcome.name(),
            "targets": self.targets,
            "trace": self.trace,
            "oracle_confirmed": self.oracle_confirmed,
        })
    }
}
