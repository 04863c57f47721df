//! Exact optima for social and maximum cost.
//!
//! A range that misses the facility is dominated by the same-length range
//! shifted to touch 0, and a short range is dominated by extending it to
//! length `d`. So every optimum has the form `[t, t + d]` with `t` in
//! `[-d, 0]`. On that segment both objectives are piecewise linear in `t`
//! and their minima sit at finitely many breakpoints, which are enumerated
//! and evaluated exactly.

use serde::Serialize;

use crate::model::{profile_stats, AccessRange, Instance, Objective};
use crate::rational::Rational;

/// One evaluated candidate anchor.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Candidate {
    pub start: Rational,
    pub value: Rational,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct OptimumResult {
    pub range: AccessRange,
    pub value: Rational,
    pub objective: Objective,
    /// Every candidate anchor that was evaluated, in ascending order.
    pub trace: Vec<Candidate>,
}

fn within_anchor_window(t: Rational, d: Rational) -> bool {
    -d <= t && t <= Rational::ZERO
}

/// Evaluates `objective` on `[t, t + d]` for each anchor and keeps the
/// minimum, breaking ties towards the smallest anchor.
fn minimize_over_anchors(inst: &Instance, objective: Objective, mut anchors: Vec<Rational>) -> OptimumResult {
    let d = inst.d();
    anchors.sort_unstable();
    anchors.dedup();
    let trace: Vec<Candidate> = anchors
        .into_iter()
        .map(|start| Candidate {
            start,
            value: objective.evaluate(inst, &AccessRange::anchored(start, d)),
        })
        .collect();
    let best = trace
        .iter()
        .copied()
        .reduce(|best, c| if c.value < best.value { c } else { best })
        .expect("anchor window always contains -d and 0");
    OptimumResult {
        range: AccessRange::anchored(best.start, d),
        value: best.value,
        objective,
        trace,
    }
}

/// Minimum social cost over all feasible ranges.
pub fn optimal_social_cost(inst: &Instance) -> OptimumResult {
    let d = inst.d();
    let anchors = inst
        .locations()
        .iter()
        .flat_map(|&x| [x, x - d])
        .chain([-d, Rational::ZERO])
        .filter(|&t| within_anchor_window(t, d))
        .collect();
    minimize_over_anchors(inst, Objective::Sc, anchors)
}

/// Minimum maximum cost, from the case formula on the extreme reports.
pub fn optimal_max_cost_closed(inst: &Instance) -> Rational {
    let d = inst.d();
    let s = profile_stats(inst);
    let zero = Rational::ZERO;
    if s.x_l >= zero {
        (s.x_r - d).max(zero)
    } else if s.x_r <= zero {
        (-s.x_l - d).max(zero)
    } else if s.x_l + s.x_r > d {
        s.x_r - d
    } else if s.x_l + s.x_r < -d {
        -s.x_l - d
    } else {
        (s.x_r - s.x_l - d).half().max(zero)
    }
}

/// Minimum maximum cost by breakpoint enumeration.
///
/// Besides the kinks of each agent's own cost, the upper envelope can bottom
/// out where a rising cost line (agent left of the range) crosses a falling
/// one (agent right of the range), so those balance anchors are included.
pub fn optimal_max_cost_bruteforce(inst: &Instance) -> OptimumResult {
    let d = inst.d();
    let locs = inst.locations();
    let zero = Rational::ZERO;
    let mut anchors: Vec<Rational> = locs.iter().flat_map(|&x| [x, x - d]).chain([-d, zero]).collect();
    for &left in locs.iter().filter(|&&x| x < zero) {
        for &right in locs.iter().filter(|&&x| x > zero) {
            anchors.push((left + right - d).half());
        }
    }
    let anchors = anchors.into_iter().map(|t| t.max(-d).min(zero)).collect();
    minimize_over_anchors(inst, Objective::Mc, anchors)
}

pub fn optimal(inst: &Instance, objective: Objective) -> OptimumResult {
    match objective {
        Objective::Sc => optimal_social_cost(inst),
        Objective::Mc => optimal_max_cost_bruteforce(inst),
    }
}

/// Best value over every range `[a, b]` with endpoints on a uniform grid of
/// `steps_per_d` points per `d` across `[lo, hi]` and `b - a <= d`.
///
/// Much slower than the anchor enumeration and only an upper bound on the
/// optimum, but it makes no structural assumption about optimal ranges. Used
/// to cross-check the anchor restriction.
pub fn grid_sweep(inst: &Instance, objective: Objective, lo: Rational, hi: Rational, steps_per_d: i64) -> Rational {
    let d = inst.d();
    let step = if d.is_zero() {
        (hi - lo) / Rational::from_integer(steps_per_d.max(1))
    } else {
        d / Rational::from_integer(steps_per_d.max(1))
    };
    let mut points = Vec::new();
    let mut p = lo;
    while p <= hi {
        points.push(p);
        p = p + step;
    }
    let mut best: Option<Rational> = None;
    for (i, &a) in points.iter().enumerate() {
        for &b in &points[i..] {
            if b - a > d {
                break;
            }
            let v = objective.evaluate(inst, &AccessRange::new(a, b));
            best = Some(best.map_or(v, |cur| cur.min(v)));
        }
    }
    best.expect("grid must contain at least one point")
}
