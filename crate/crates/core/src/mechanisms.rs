//! Deterministic rules mapping a reported profile to an access range.
//!
//! All four rules return a range of length exactly `d`. Three of them are
//! incentive compatible; [`MechanismId::OptimalMaxCostNonSP`] minimizes the
//! maximum cost exactly and is kept as a manipulable reference point.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::model::{profile_stats, AccessRange, Instance};
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum MechanismId {
    /// Pivots on `inf D`; group strategyproof and optimal for social cost.
    SocialOptimalGSP,
    /// Pivots on the leftmost report; strong group strategyproof.
    LeftmostSGSP,
    /// Starts the range at `min(x_l, 0)`; group strategyproof, 2-approximate for max cost.
    MaxCostGSP,
    /// Exact max-cost minimizer; not strategyproof.
    OptimalMaxCostNonSP,
}

impl MechanismId {
    pub const ALL: [MechanismId; 4] = [
        MechanismId::SocialOptimalGSP,
        MechanismId::LeftmostSGSP,
        MechanismId::MaxCostGSP,
        MechanismId::OptimalMaxCostNonSP,
    ];

    /// The three rules that are strategyproof.
    pub const STRATEGYPROOF: [MechanismId; 3] = [
        MechanismId::SocialOptimalGSP,
        MechanismId::LeftmostSGSP,
        MechanismId::MaxCostGSP,
    ];

    pub fn apply(&self, inst: &Instance) -> AccessRange {
        match self {
            MechanismId::SocialOptimalGSP => mech_social_optimal(inst),
            MechanismId::LeftmostSGSP => mech_leftmost(inst),
            MechanismId::MaxCostGSP => mech_maxcost(inst),
            MechanismId::OptimalMaxCostNonSP => mech_optimal_maxcost(inst),
        }
    }

    pub fn name(&self) -> &'static str {
        match self {
            MechanismId::SocialOptimalGSP => "SocialOptimalGSP",
            MechanismId::LeftmostSGSP => "LeftmostSGSP",
            MechanismId::MaxCostGSP => "MaxCostGSP",
            MechanismId::OptimalMaxCostNonSP => "OptimalMaxCostNonSP",
        }
    }
}

impl fmt::Display for MechanismId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MechanismId {
    type Err = String;

    /// Accepts the tag names case-insensitively, the short names
    /// `social-optimal`, `leftmost`, `maxcost`, `optimal-maxcost`, and `m1`,
    /// `m2`, `m3`, `optmc`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase().replace(['-', '_'], "");
        let id = match key.as_str() {
            "socialoptimalgsp" | "socialoptimal" | "m1" => MechanismId::SocialOptimalGSP,
            "leftmostsgsp" | "leftmost" | "m2" => MechanismId::LeftmostSGSP,
            "maxcostgsp" | "maxcost" | "m3" => MechanismId::MaxCostGSP,
            "optimalmaxcostnonsp" | "optimalmaxcost" | "optmc" => MechanismId::OptimalMaxCostNonSP,
            _ => {
                return Err(format!(
                    "unknown mechanism `{s}` (expected one of SocialOptimalGSP, LeftmostSGSP, MaxCostGSP, OptimalMaxCostNonSP)"
                ))
            }
        };
        Ok(id)
    }
}

/// Number of reports `<= y`.
fn count_at_most(locations: &[Rational], y: Rational) -> usize {
    locations.iter().filter(|&&x| x <= y).count()
}

/// Number of reports `>= y`.
fn count_at_least(locations: &[Rational], y: Rational) -> usize {
    locations.iter().filter(|&&x| x >= y).count()
}

/// Left boundary of `D = { y : #{x_i <= y} >= #{x_i >= y + d} }`.
///
/// The membership predicate only changes value at some `x_i` or `x_i - d`,
/// and it is monotone in `y`, so it is enough to walk the sorted
/// breakpoints, probing each breakpoint and the open gap after it.
pub fn inf_d(inst: &Instance) -> Rational {
    let d = inst.d();
    let locs = inst.locations();
    let in_d = |y: Rational| count_at_most(locs, y) >= count_at_least(locs, y + d);

    let mut breaks: Vec<Rational> = locs.iter().flat_map(|&x| [x, x - d]).collect();
    breaks.sort_unstable();
    breaks.dedup();

    // The gap left of the first breakpoint never belongs to D: no agent is
    // at or left of y while every agent is at or right of y + d.
    debug_assert!(!in_d(breaks[0] - Rational::ONE));

    for (k, &c) in breaks.iter().enumerate() {
        if in_d(c) {
            return c;
        }
        let gap_probe = match breaks.get(k + 1) {
            Some(next) => c.midpoint(next),
            None => c + Rational::ONE,
        };
        if in_d(gap_probe) {
            return c;
        }
    }
    unreachable!("y at or beyond the largest report always lies in D")
}

/// Three-case rule shared by the `inf D` and leftmost-report mechanisms.
fn clamp_pivot(pivot: Rational, d: Rational) -> AccessRange {
    if pivot >= Rational::ZERO {
        AccessRange::anchored(Rational::ZERO, d)
    } else if pivot <= -d {
        AccessRange::anchored(-d, d)
    } else {
        AccessRange::anchored(pivot, d)
    }
}

pub fn mech_social_optimal(inst: &Instance) -> AccessRange {
    clamp_pivot(inf_d(inst), inst.d())
}

pub fn mech_leftmost(inst: &Instance) -> AccessRange {
    clamp_pivot(profile_stats(inst).x_l, inst.d())
}

pub fn mech_maxcost(inst: &Instance) -> AccessRange {
    let start = profile_stats(inst).x_l.min(Rational::ZERO);
    AccessRange::anchored(start, inst.d())
}

/// Balances the two extreme agents whenever the profile straddles 0.
pub fn mech_optimal_maxcost(inst: &Instance) -> AccessRange {
    let d = inst.d();
    let s = profile_stats(inst);
    let zero = Rational::ZERO;
    if s.x_l >= zero {
        AccessRange::anchored(zero, d)
    } else if s.x_r <= zero {
        AccessRange::anchored(-d, d)
    } else if s.x_l + s.x_r > d {
        AccessRange::anchored(zero, d)
    } else if s.x_l + s.x_r < -d {
        AccessRange::anchored(-d, d)
    } else if s.x_r - s.x_l <= d {
        AccessRange::anchored(s.x_l, d)
    } else {
        let c0 = (s.x_r - s.x_l - d).half();
        AccessRange::new(s.x_l + c0, s.x_r - c0)
    }
}
