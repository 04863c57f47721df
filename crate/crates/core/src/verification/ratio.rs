//! Approximation ratios against the exact optima.

use std::cmp::Ordering;
use std::fmt;

use rayon::prelude::*;
use serde::{Serialize, Serializer};

use crate::harness::generate::{random_instance, RunConfig};
use crate::harness::io::instance_hash;
use crate::mechanisms::MechanismId;
use crate::model::{Instance, Objective};
use crate::optimal::{optimal_max_cost_closed, optimal_social_cost};
use crate::rational::Rational;

/// Mechanism value over optimal value. `Infinite` when the optimum is 0 but
/// the mechanism pays something.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ApproxRatio {
    Finite(Rational),
    Infinite,
}

impl ApproxRatio {
    pub fn finite(&self) -> Option<Rational> {
        match self {
            ApproxRatio::Finite(r) => Some(*r),
            ApproxRatio::Infinite => None,
        }
    }

    pub fn to_decimal_string(&self, digits: usize) -> String {
        match self {
            ApproxRatio::Finite(r) => r.to_decimal_string(digits),
            ApproxRatio::Infinite => "inf".to_string(),
        }
    }
}

impl Ord for ApproxRatio {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (ApproxRatio::Finite(a), ApproxRatio::Finite(b)) => a.cmp(b),
            (ApproxRatio::Finite(_), ApproxRatio::Infinite) => Ordering::Less,
            (ApproxRatio::Infinite, ApproxRatio::Finite(_)) => Ordering::Greater,
            (ApproxRatio::Infinite, ApproxRatio::Infinite) => Ordering::Equal,
        }
    }
}

impl PartialOrd for ApproxRatio {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for ApproxRatio {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ApproxRatio::Finite(r) => write!(f, "{r}"),
            ApproxRatio::Infinite => f.write_str("inf"),
        }
    }
}

impl Serialize for ApproxRatio {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        match self {
            ApproxRatio::Finite(r) => r.serialize(serializer),
            ApproxRatio::Infinite => serializer.serialize_str("inf"),
        }
    }
}

pub fn optimal_value(inst: &Instance, objective: Objective) -> Rational {
    match objective {
        Objective::Sc => optimal_social_cost(inst).value,
        Objective::Mc => optimal_max_cost_closed(inst),
    }
}

pub fn approximation_ratio(mechanism: MechanismId, inst: &Instance, objective: Objective) -> ApproxRatio {
    let achieved = objective.evaluate(inst, &mechanism.apply(inst));
    ratio_of(achieved, optimal_value(inst, objective))
}

fn ratio_of(achieved: Rational, best: Rational) -> ApproxRatio {
    if best.is_zero() {
        if achieved.is_zero() {
            ApproxRatio::Finite(Rational::ONE)
        } else {
            ApproxRatio::Infinite
        }
    } else {
        ApproxRatio::Finite(achieved / best)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioSample {
    pub draw_index: u64,
    pub instance_hash: String,
    pub ratio: ApproxRatio,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RatioReport {
    pub mechanism: MechanismId,
    pub objective: Objective,
    pub worst_instance: Instance,
    pub worst_ratio: ApproxRatio,
    pub worst_draw_index: u64,
    pub trials: usize,
    pub seed: u64,
    #[serde(skip)]
    pub samples: Vec<RatioSample>,
}

/// Worst ratio over `cfg.trials` seeded draws. The earliest draw wins ties,
/// so the report does not depend on evaluation order.
pub fn ratio_search(mechanism: MechanismId, objective: Objective, cfg: &RunConfig) -> RatioReport {
    let samples: Vec<(RatioSample, Instance)> = (0..cfg.trials as u64)
        .into_par_iter()
        .map(|draw_index| {
            let inst = random_instance(cfg, draw_index);
            let sample = RatioSample {
                draw_index,
                instance_hash: instance_hash(&inst),
                ratio: approximation_ratio(mechanism, &inst, objective),
            };
            (sample, inst)
        })
        .collect();
    let (worst, worst_instance) = samples
        .iter()
        .reduce(|best, cur| if cur.0.ratio > best.0.ratio { cur } else { best })
        .expect("trials >= 1");
    RatioReport {
        mechanism,
        objective,
        worst_instance: worst_instance.clone(),
        worst_ratio: worst.ratio,
        worst_draw_index: worst.draw_index,
        trials: cfg.trials,
        seed: cfg.seed,
        samples: samples.into_iter().map(|(s, _)| s).collect(),
    }
}
