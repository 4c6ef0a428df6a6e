// SPDX-License-Identifier: Apache-2.0
//! Reports and transcripts produced by the elimination pipelines.

use crate::arith::CertifiedReal;
use serde::{Deserialize, Serialize};
use serde_json::Value;
use std::collections::BTreeMap;

/// Version of the report layout; bumped whenever a key changes meaning.
pub const REPORT_VERSION: &str = "1";

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Case {
    LinearBig,
    LinearSmallR4,
    LinearSmallR3,
    LinearDistinctFields,
    MultNegative,
    MultPositive,
    IndepCheck,
}

impl Case {
    pub fn name(&self) -> &'static str {
        match self {
            Case::LinearBig => "linear_big",
            Case::LinearSmallR4 => "linear_small_r4",
            Case::LinearSmallR3 => "linear_small_r3",
            Case::LinearDistinctFields => "linear_distinct_fields",
            Case::MultNegative => "mult_negative",
            Case::MultPositive => "mult_positive",
            Case::IndepCheck => "indep_check",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Eliminated,
    Survivor,
    Inconclusive,
}

/// One certified comparison. `lhs` and `rhs` are decimal renderings of the
/// enclosures used; the comparison itself was decided on the balls.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Assertion {
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub lhs: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub rhs: Option<String>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EliminationReport {
    pub version: String,
    pub case: Case,
    pub discs: [i64; 2],
    pub outcome: Outcome,
    pub constants: BTreeMap<String, Value>,
    pub transcript: Vec<Assertion>,
}

/// Short decimal rendering of an enclosure for transcripts.
pub fn show(x: &CertifiedReal) -> String {
    let lo = x.lower().to_f64();
    let hi = x.upper().to_f64();
    if lo == hi {
        format!("{lo:.12e}")
    } else {
        format!("[{lo:.12e}, {hi:.12e}]")
    }
}

impl EliminationReport {
    pub fn new(case: Case, disc: i64, disc_prime: i64) -> EliminationReport {
        EliminationReport {
            version: REPORT_VERSION.to_string(),
            case,
            discs: [disc, disc_prime],
            outcome: Outcome::Inconclusive,
            constants: BTreeMap::new(),
            transcript: Vec::new(),
        }
    }

    pub fn constant(&mut self, key: &str, value: impl Into<Value>) {
        self.constants.insert(key.to_string(), value.into());
    }

    /// Record a ball as `[lower, upper]` in the constants map.
    pub fn ball(&mut self, key: &str, x: &CertifiedReal) {
        self.constant(key, vec![x.lower().to_f64(), x.upper().to_f64()]);
    }

    pub fn note(&mut self, claim: impl Into<String>) {
        self.transcript.push(Assertion {
            claim: claim.into(),
            lhs: None,
            rhs: None,
            holds: true,
        });
    }

    /// Record `holds` as the verdict on `claim`, and return it.
    pub fn check(&mut self, claim: impl Into<String>, holds: bool) -> bool {
        self.transcript.push(Assertion {
            claim: claim.into(),
            lhs: None,
            rhs: None,
            holds,
        });
        holds
    }

    /// Record the certified comparison `lhs < rhs`.
    pub fn less(
        &mut self,
        claim: impl Into<String>,
        lhs: &CertifiedReal,
        rhs: &CertifiedReal,
    ) -> bool {
        let holds = lhs.certainly_lt(rhs);
        self.transcript.push(Assertion {
            claim: claim.into(),
            lhs: Some(show(lhs)),
            rhs: Some(show(rhs)),
            holds,
        });
        holds
    }

    pub fn finish(mut self, outcome: Outcome) -> EliminationReport {
        self.outcome = outcome;
        self
    }

    /// All recorded assertions hold.
    pub fn transcript_holds(&self) -> bool {
        self.transcript.iter().all(|a| a.holds)
    }

    /// File name used when persisting the report.
    pub fn file_name(&self) -> String {
        format!(
            "{}_{}_{}.json",
            self.case.name(),
            self.discs[0],
            self.discs[1]
        )
    }
}
