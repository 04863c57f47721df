//! Cost model on the line with a contracted access range.
//!
//! The facility sits at 0. An access range `[a, b]` is free to travel, which
//! is the same as collapsing it to a single point: an agent's cost is the
//! distance between its image and the facility's image under that collapse.

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("range [{a}, {b}] has length {len}, exceeding the cap {d}")]
    InfeasibleRange {
        a: Rational,
        b: Rational,
        len: Rational,
        d: Rational,
    },
    #[error("length cap must be non-negative, got {0}")]
    NegativeCap(Rational),
    #[error("an instance needs at least one agent")]
    EmptyProfile,
}

/// A length cap together with the reported agent locations.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize)]
pub struct Instance {
    d: Rational,
    locations: Vec<Rational>,
}

impl Instance {
    pub fn new(d: Rational, locations: Vec<Rational>) -> Result<Self, ModelError> {
        if d.is_negative() {
            return Err(ModelError::NegativeCap(d));
        }
        if locations.is_empty() {
            return Err(ModelError::EmptyProfile);
        }
        Ok(Instance { d, locations })
    }

    /// Convenience constructor for integer-valued profiles.
    pub fn from_ints(d: i64, locations: &[i64]) -> Result<Self, ModelError> {
        Instance::new(
            Rational::from_integer(d),
            locations.iter().map(|&x| Rational::from_integer(x)).collect(),
        )
    }

    pub fn d(&self) -> Rational {
        self.d
    }

    pub fn locations(&self) -> &[Rational] {
        &self.locations
    }

    pub fn len(&self) -> usize {
        self.locations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.locations.is_empty()
    }

    /// The same cap with a different profile of equal length.
    pub(crate) fn with_locations(&self, locations: Vec<Rational>) -> Instance {
        debug_assert!(!locations.is_empty());
        Instance { d: self.d, locations }
    }
}

/// A closed interval `[a, b]` with `a <= b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub struct AccessRange {
    a: Rational,
    b: Rational,
}

impl AccessRange {
    /// Orders the endpoints; no length check.
    pub fn new(a: Rational, b: Rational) -> Self {
        if a <= b {
            AccessRange { a, b }
        } else {
            AccessRange { a: b, b: a }
        }
    }

    /// `[start, start + len]`.
    pub fn anchored(start: Rational, len: Rational) -> Self {
        AccessRange::new(start, start + len)
    }

    pub fn a(&self) -> Rational {
        self.a
    }

    pub fn b(&self) -> Rational {
        self.b
    }

    pub fn length(&self) -> Rational {
        self.b - self.a
    }

    pub fn contains(&self, x: Rational) -> bool {
        self.a <= x && x <= self.b
    }

    pub fn is_feasible(&self, d: Rational) -> bool {
        self.length() <= d
    }
}

/// Orders `(a, b)` and checks the length cap.
pub fn normalize_range(a: Rational, b: Rational, d: Rational) -> Result<AccessRange, ModelError> {
    let range = AccessRange::new(a, b);
    if !range.is_feasible(d) {
        return Err(ModelError::InfeasibleRange {
            a: range.a,
            b: range.b,
            len: range.length(),
            d,
        });
    }
    Ok(range)
}

/// Image of `x` on the line after `[a, b]` is collapsed onto `a`.
pub fn shrink_map(x: Rational, range: &AccessRange) -> Rational {
    if x <= range.a {
        x
    } else if x <= range.b {
        range.a
    } else {
        x - range.length()
    }
}

/// Travel distance from `x` to the facility at 0 when the range is free.
pub fn agent_cost(x: Rational, range: &AccessRange) -> Rational {
    (shrink_map(x, range) - shrink_map(Rational::ZERO, range)).abs()
}

pub fn agent_costs(inst: &Instance, range: &AccessRange) -> Vec<Rational> {
    inst.locations.iter().map(|&x| agent_cost(x, range)).collect()
}

pub fn social_cost(inst: &Instance, range: &AccessRange) -> Rational {
    inst.locations.iter().map(|&x| agent_cost(x, range)).sum()
}

pub fn max_cost(inst: &Instance, range: &AccessRange) -> Rational {
    inst.locations
        .iter()
        .map(|&x| agent_cost(x, range))
        .max()
        .unwrap_or(Rational::ZERO)
}

/// Extreme locations and how many agents sit on each side of the facility.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ProfileStats {
    pub x_l: Rational,
    pub x_r: Rational,
    /// Agents with `x <= 0`.
    pub n_left: usize,
    /// Agents with `x > 0`.
    pub n_right: usize,
}

pub fn profile_stats(inst: &Instance) -> ProfileStats {
    let locs = inst.locations();
    let mut x_l = locs[0];
    let mut x_r = locs[0];
    let mut n_left = 0;
    for &x in locs {
        x_l = x_l.min(x);
        x_r = x_r.max(x);
        if x <= Rational::ZERO {
            n_left += 1;
        }
    }
    ProfileStats {
        x_l,
        x_r,
        n_left,
        n_right: locs.len() - n_left,
    }
}

/// Objective minimized over access ranges.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Objective {
    /// Sum of agent costs.
    Sc,
    /// Largest agent cost.
    Mc,
}

impl Objective {
    pub fn evaluate(&self, inst: &Instance, range: &AccessRange) -> Rational {
        match self {
            Objective::Sc => social_cost(inst, range),
            Objective::Mc => max_cost(inst, range),
        }
    }

    pub fn as_str(&self) -> &'static str {
        match self {
            Objective::Sc => "sc",
            Objective::Mc => "mc",
        }
    }
}

impl std::fmt::Display for Objective {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}
