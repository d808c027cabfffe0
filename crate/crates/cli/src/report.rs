use std::time::Instant;

use degeneracy_atlas::epw::Discard;
use degeneracy_atlas::exactalg::FieldSpec;
use serde::Serialize;
use serde_json::Value;

use crate::Common;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Pass,
    /// The computation ran and the mathematics disagreed.
    Finding,
    /// A budget ran out before the check could finish.
    Skipped,
}

impl Status {
    pub fn exit_code(self) -> u8 {
        match self {
            Status::Pass => 0,
            Status::Finding => 1,
            Status::Skipped => 2,
        }
    }

    pub fn from_pass(ok: bool) -> Status {
        if ok {
            Status::Pass
        } else {
            Status::Finding
        }
    }
}

/// What a subcommand hands back to the envelope.
pub struct Outcome {
    pub status: Status,
    pub summary: String,
    pub discarded: Vec<Discard>,
    pub result: Value,
}

impl Outcome {
    pub fn new(status: Status, summary: impl Into<String>, result: impl Serialize) -> Outcome {
        Outcome {
            status,
            summary: summary.into(),
            discarded: Vec::new(),
            result: serde_json::to_value(result).expect("report values serialize"),
        }
    }

    pub fn with_discarded(mut self, discarded: Vec<Discard>) -> Outcome {
        self.discarded = discarded;
        self
    }
}

#[derive(Serialize)]
struct Budgets {
    points: u64,
    groebner_pairs: u64,
    wall_ms: Option<u64>,
}

#[derive(Serialize)]
pub struct Envelope {
    tool: &'static str,
    version: &'static str,
    subcommand: &'static str,
    field: FieldSpec,
    seed: u64,
    budgets: Budgets,
    /// Null unless timing was requested, so that reports are reproducible.
    wall_ms: Option<u64>,
    discarded_seeds: Vec<Discard>,
    status: Status,
    result: Value,
    #[serde(skip)]
    summary: String,
}

impl Envelope {
    pub fn new(
        subcommand: &'static str,
        field: FieldSpec,
        common: &Common,
        outcome: Outcome,
        start: Option<Instant>,
    ) -> Envelope {
        Envelope {
            tool: "degeneracy-atlas",
            version: env!("CARGO_PKG_VERSION"),
            subcommand,
            field,
            seed: common.seed,
            budgets: Budgets {
                points: common.budget_points,
                groebner_pairs: common.budget_groebner,
                wall_ms: common.budget_wall_ms,
            },
            wall_ms: start.map(|s| s.elapsed().as_millis() as u64),
            discarded_seeds: outcome.discarded,
            status: outcome.status,
            result: outcome.result,
            summary: outcome.summary,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn summary_line(&self) -> String {
        let status = match self.status {
            Status::Pass => "pass",
            Status::Finding => "FINDING",
            Status::Skipped => "skipped",
        };
        format!(
            "{} over {} (seed {}): {status}\n{}",
            self.subcommand, self.field, self.seed, self.summary
        )
    }
}
