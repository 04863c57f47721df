//! Machine-readable report documents.
//!
//! Every number is emitted as `{"exact": "p/q", "decimal": "..."}`; the
//! decimal is a 12-significant-digit convenience and is never read back.

use serde::Serialize;

use super::io::InstanceDoc;
use crate::model::AccessRange;
use crate::rational::Rational;
use crate::verification::{ApproxRatio, Witness};

pub const SCHEMA_VERSION: u32 = 1;
pub const DECIMAL_DIGITS: usize = 12;

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Num {
    pub exact: String,
    pub decimal: String,
}

impl From<Rational> for Num {
    fn from(r: Rational) -> Self {
        Num {
            exact: r.to_fraction_string(),
            decimal: r.to_decimal_string(DECIMAL_DIGITS),
        }
    }
}

impl From<ApproxRatio> for Num {
    fn from(r: ApproxRatio) -> Self {
        match r {
            ApproxRatio::Finite(v) => v.into(),
            ApproxRatio::Infinite => Num {
                exact: "inf".into(),
                decimal: "inf".into(),
            },
        }
    }
}

pub(crate) fn nums(values: &[Rational]) -> Vec<Num> {
    values.iter().map(|&v| v.into()).collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RangeDoc {
    pub a: Num,
    pub b: Num,
}

impl From<AccessRange> for RangeDoc {
    fn from(r: AccessRange) -> Self {
        RangeDoc {
            a: r.a().into(),
            b: r.b().into(),
        }
    }
}

/// Output of `run` and `eval`.
#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub schema_version: u32,
    pub command: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub mechanism: Option<String>,
    pub instance: InstanceDoc,
    pub range: RangeDoc,
    pub costs: Vec<Num>,
    pub social_cost: Num,
    pub max_cost: Num,
}

#[derive(Debug, Clone, Serialize)]
pub struct TraceEntry {
    pub start: Num,
    pub value: Num,
}

/// Output of `optimal`.
#[derive(Debug, Clone, Serialize)]
pub struct OptimalReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub objective: String,
    pub instance: InstanceDoc,
    pub range: RangeDoc,
    pub value: Num,
    /// Independent closed-form value, reported for the max-cost objective.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub closed_form_value: Option<Num>,
    /// Candidate anchors `t` of ranges `[t, t + d]` with their objective.
    pub breakpoints: Vec<TraceEntry>,
}

impl TraceEntry {
    pub fn new(start: Rational, value: Rational) -> Self {
        TraceEntry {
            start: start.into(),
            value: value.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct WitnessDoc {
    pub coalition: Vec<usize>,
    pub reports: Vec<Num>,
    pub truthful_range: RangeDoc,
    pub deviated_range: RangeDoc,
    pub costs_before: Vec<Num>,
    pub costs_after: Vec<Num>,
}

impl From<&Witness> for WitnessDoc {
    fn from(w: &Witness) -> Self {
        WitnessDoc {
            coalition: w.deviation.coalition.clone(),
            reports: nums(&w.deviation.reports),
            truthful_range: w.truthful_range.into(),
            deviated_range: w.deviated_range.into(),
            costs_before: nums(&w.costs_before),
            costs_after: nums(&w.costs_after),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct SearchDoc {
    pub candidates: Vec<String>,
    pub max_coalition: usize,
    pub deviations: u64,
    pub node_budget: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyResult {
    pub instance: InstanceDoc,
    pub search: SearchDoc,
    pub violation: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub witness: Option<WitnessDoc>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expected_violation: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub expectation_met: Option<bool>,
}

#[derive(Debug, Clone, Serialize)]
pub struct FamilyRef {
    pub family: String,
    pub n: usize,
    pub d: Rational,
    pub eps: Rational,
}

/// Output of `verify`. An empty witness means only that the finite
/// search space held no profitable deviation.
#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub command: &'static str,
    pub kind: String,
    pub mechanism: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub family: Option<FamilyRef>,
    pub violation_found: bool,
    pub results: Vec<VerifyResult>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioConfigDoc {
    pub n_min: usize,
    pub n_max: usize,
    pub coordinate_bound: Rational,
    pub d: Rational,
    pub granularity: i64,
}

/// Output of `ratio`.
#[derive(Debug, Clone, Serialize)]
pub struct RatioDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub mechanism: String,
    pub objective: String,
    pub seed: u64,
    pub trials: usize,
    pub generator: RatioConfigDoc,
    pub worst_ratio: Num,
    pub worst_draw_index: u64,
    pub worst_instance: InstanceDoc,
}

/// Output of `witness`.
#[derive(Debug, Clone, Serialize)]
pub struct WitnessSetDoc {
    pub schema_version: u32,
    pub command: &'static str,
    pub family: String,
    pub n: usize,
    pub d: Rational,
    pub eps: Rational,
    pub instances: Vec<InstanceDoc>,
}

pub fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc).expect("report documents always serialize");
    text.push('\n');
    text
}
