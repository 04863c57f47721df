//! Exhaustive misreport search over a finite candidate grid.

use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::Serialize;

use super::VerifyError;
use crate::mechanisms::MechanismId;
use crate::model::{agent_cost, AccessRange, Instance};
use crate::rational::Rational;

/// Default cap on the number of deviations one check may enumerate.
pub const DEFAULT_NODE_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum IncentiveKind {
    /// No single agent gains strictly by lying.
    Sp,
    /// No coalition lies so that every member gains strictly.
    Gsp,
    /// No coalition lies so that nobody loses and somebody gains strictly.
    Sgsp,
}

impl IncentiveKind {
    pub fn as_str(&self) -> &'static str {
        match self {
            IncentiveKind::Sp => "sp",
            IncentiveKind::Gsp => "gsp",
            IncentiveKind::Sgsp => "sgsp",
        }
    }

    /// Whether moving from `before` to `after` costs is a profitable
    /// deviation under this notion.
    pub fn is_profitable(&self, before: &[Rational], after: &[Rational]) -> bool {
        let mut pairs = before.iter().zip(after);
        match self {
            IncentiveKind::Sp | IncentiveKind::Gsp => pairs.all(|(b, a)| a < b),
            IncentiveKind::Sgsp => {
                let mut strict = false;
                for (b, a) in pairs {
                    if a > b {
                        return false;
                    }
                    strict |= a < b;
                }
                strict
            }
        }
    }
}

impl std::str::FromStr for IncentiveKind {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sp" => Ok(IncentiveKind::Sp),
            "gsp" => Ok(IncentiveKind::Gsp),
            "sgsp" => Ok(IncentiveKind::Sgsp),
            _ => Err(format!("unknown incentive notion `{s}` (expected sp, gsp or sgsp)")),
        }
    }
}

impl std::fmt::Display for IncentiveKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A joint misreport: `reports[k]` is what `coalition[k]` claims.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Deviation {
    pub coalition: Vec<usize>,
    pub reports: Vec<Rational>,
}

impl Deviation {
    pub fn apply(&self, inst: &Instance) -> Instance {
        let mut locations = inst.locations().to_vec();
        for (&agent, &report) in self.coalition.iter().zip(&self.reports) {
            locations[agent] = report;
        }
        inst.with_locations(locations)
    }
}

/// A profitable deviation with the evidence for it. Costs are measured at
/// the members' true locations, in coalition order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Witness {
    pub deviation: Deviation,
    pub truthful_range: AccessRange,
    pub deviated_range: AccessRange,
    pub costs_before: Vec<Rational>,
    pub costs_after: Vec<Rational>,
}

/// The finite space a check ranged over.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SearchSpace {
    pub candidate_count: usize,
    pub max_coalition: usize,
    /// Deviations that had to be enumerated after discarding coalitions that
    /// cannot profit (members already at cost 0 for strict notions).
    pub deviations: u64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ViolationReport {
    pub kind: IncentiveKind,
    pub mechanism: MechanismId,
    pub instance: Instance,
    /// `None` means nothing was found in `searched`; that says nothing
    /// about reports outside the grid.
    pub witness: Option<Witness>,
    pub searched: SearchSpace,
}

impl ViolationReport {
    pub fn is_violation(&self) -> bool {
        self.witness.is_some()
    }

    /// Re-derives the witness from scratch and checks it against the
    /// notion's inequality pattern.
    pub fn witness_is_sound(&self) -> bool {
        let Some(w) = &self.witness else {
            return true;
        };
        let dev = &w.deviation;
        if dev.coalition.is_empty() || dev.coalition.len() != dev.reports.len() {
            return false;
        }
        if self.kind == IncentiveKind::Sp && dev.coalition.len() != 1 {
            return false;
        }
        let truthful = self.mechanism.apply(&self.instance);
        let deviated = self.mechanism.apply(&dev.apply(&self.instance));
        let truth = self.instance.locations();
        let before: Vec<Rational> = dev.coalition.iter().map(|&i| agent_cost(truth[i], &truthful)).collect();
        let after: Vec<Rational> = dev.coalition.iter().map(|&i| agent_cost(truth[i], &deviated)).collect();
        truthful == w.truthful_range
            && deviated == w.deviated_range
            && before == w.costs_before
            && after == w.costs_after
            && self.kind.is_profitable(&before, &after)
    }
}

/// Report values at which a mechanism's output can change: the reports
/// themselves, their shifts by `d` and `d / 2`, the facility and `±d`, plus
/// any caller-supplied extras. Sorted and deduplicated.
pub fn misreport_candidates(inst: &Instance, extra_grid: &[Rational]) -> Vec<Rational> {
    let d = inst.d();
    let half = d.half();
    let mut set: BTreeSet<Rational> = [Rational::ZERO, d, -d].into_iter().collect();
    for &x in inst.locations() {
        set.extend([x, x - d, x + d, x - half, x + half]);
    }
    set.extend(extra_grid.iter().copied());
    set.into_iter().collect()
}

/// All `k`-subsets of `pool` in lexicographic order.
fn subsets_of_size(pool: &[usize], k: usize, out: &mut Vec<Vec<usize>>) {
    fn rec(pool: &[usize], k: usize, start: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..pool.len() {
            if pool.len() - i < k - cur.len() {
                break;
            }
            cur.push(pool[i]);
            rec(pool, k, i + 1, cur, out);
            cur.pop();
        }
    }
    rec(pool, k, 0, &mut Vec::with_capacity(k), out);
}

/// Decodes a mixed-radix index with the first digit most significant, so
/// that increasing indices walk report vectors in lexicographic order.
fn decode(mut index: u64, options: &[Vec<Rational>], out: &mut [Rational]) {
    for pos in (0..options.len()).rev() {
        let radix = options[pos].len() as u64;
        out[pos] = options[pos][(index % radix) as usize];
        index /= radix;
    }
}

struct Search<'a> {
    kind: IncentiveKind,
    mechanism: MechanismId,
    inst: &'a Instance,
    truthful_range: AccessRange,
    truthful_costs: Vec<Rational>,
}

impl Search<'_> {
    fn coalition_options(&self, coalition: &[usize], candidates: &[Rational]) -> Vec<Vec<Rational>> {
        let truth = self.inst.locations();
        coalition
            .iter()
            .map(|&agent| {
                let mut opts: Vec<Rational> = candidates.to_vec();
                opts.push(truth[agent]);
                opts.sort_unstable();
                opts.dedup();
                opts
            })
            .collect()
    }

    fn try_deviation(&self, coalition: &[usize], reports: &[Rational]) -> Option<Witness> {
        let truth = self.inst.locations();
        if coalition.iter().zip(reports).all(|(&i, r)| truth[i] == *r) {
            return None;
        }
        let deviation = Deviation {
            coalition: coalition.to_vec(),
            reports: reports.to_vec(),
        };
        let deviated_range = self.mechanism.apply(&deviation.apply(self.inst));
        if deviated_range == self.truthful_range {
            return None;
        }
        let before: Vec<Rational> = coalition.iter().map(|&i| self.truthful_costs[i]).collect();
        let after: Vec<Rational> = coalition
            .iter()
            .map(|&i| agent_cost(truth[i], &deviated_range))
            .collect();
        self.kind.is_profitable(&before, &after).then_some(Witness {
            deviation,
            truthful_range: self.truthful_range,
            deviated_range,
            costs_before: before,
            costs_after: after,
        })
    }

    /// First profitable report vector for `coalition` in lexicographic order.
    fn scan_coalition(&self, coalition: &[usize], options: &[Vec<Rational>], total: u64) -> Option<Witness> {
        (0..total).into_par_iter().find_map_first(|index| {
            let mut reports = vec![Rational::ZERO; coalition.len()];
            decode(index, options, &mut reports);
            self.try_deviation(coalition, &reports)
        })
    }
}

/// Shared engine behind [`check_sp`], [`check_gsp`] and [`check_sgsp`].
///
/// Coalitions are visited by size, then lexicographically by agent index;
/// each member may report any candidate or its own true location.
pub fn check_incentives(
    kind: IncentiveKind,
    mechanism: MechanismId,
    inst: &Instance,
    candidates: &[Rational],
    max_coalition: usize,
    node_budget: u64,
) -> Result<ViolationReport, VerifyError> {
    if candidates.is_empty() {
        return Err(VerifyError::EmptyCandidates);
    }
    let max_coalition = match kind {
        IncentiveKind::Sp => 1,
        _ => max_coalition.min(inst.len()),
    };
    let truthful_range = mechanism.apply(inst);
    let truthful_costs: Vec<Rational> = inst
        .locations()
        .iter()
        .map(|&x| agent_cost(x, &truthful_range))
        .collect();
    let search = Search {
        kind,
        mechanism,
        inst,
        truthful_range,
        truthful_costs,
    };

    // Agents at cost 0 cannot gain strictly. Under SP/GSP every member
    // must gain strictly, so they never belong to a profitable coalition.
    // Under SGSP they may join, but someone with positive cost must be in.
    let gainers: Vec<usize> = (0..inst.len())
        .filter(|&i| search.truthful_costs[i].is_positive())
        .collect();
    let pool: Vec<usize> = match kind {
        IncentiveKind::Sgsp => (0..inst.len()).collect(),
        _ => gainers.clone(),
    };
    let mut plan: Vec<(Vec<usize>, Vec<Vec<Rational>>, u64)> = Vec::new();
    let mut deviations: u64 = 0;
    for size in 1..=max_coalition {
        let mut coalitions = Vec::new();
        subsets_of_size(&pool, size, &mut coalitions);
        for coalition in coalitions {
            if !coalition.iter().any(|i| gainers.contains(i)) {
                continue;
            }
            let options = search.coalition_options(&coalition, candidates);
            let total = options
                .iter()
                .try_fold(1u64, |acc, o| acc.checked_mul(o.len() as u64))
                .unwrap_or(u64::MAX);
            deviations = deviations.saturating_add(total);
            if deviations > node_budget {
                return Err(VerifyError::SearchSpaceTooLarge {
                    required: deviations,
                    budget: node_budget,
                });
            }
            plan.push((coalition, options, total));
        }
    }

    let witness = plan
        .iter()
        .find_map(|(coalition, options, total)| search.scan_coalition(coalition, options, *total));

    Ok(ViolationReport {
        kind,
        mechanism,
        instance: inst.clone(),
        witness,
        searched: SearchSpace {
            candidate_count: candidates.len(),
            max_coalition,
            deviations,
        },
    })
}

pub fn check_sp(
    mechanism: MechanismId,
    inst: &Instance,
    candidates: &[Rational],
) -> Result<ViolationReport, VerifyError> {
    check_incentives(IncentiveKind::Sp, mechanism, inst, candidates, 1, DEFAULT_NODE_BUDGET)
}

pub fn check_gsp(
    mechanism: MechanismId,
    inst: &Instance,
    candidates: &[Rational],
    max_coalition: usize,
) -> Result<ViolationReport, VerifyError> {
    check_incentives(
        IncentiveKind::Gsp,
        mechanism,
        inst,
        candidates,
        max_coalition,
        DEFAULT_NODE_BUDGET,
    )
}

pub fn check_sgsp(
    mechanism: MechanismId,
    inst: &Instance,
    candidates: &[Rational],
    max_coalition: usize,
) -> Result<ViolationReport, VerifyError> {
    check_incentives(
        IncentiveKind::Sgsp,
        mechanism,
        inst,
        candidates,
        max_coalition,
        DEFAULT_NODE_BUDGET,
    )
}
