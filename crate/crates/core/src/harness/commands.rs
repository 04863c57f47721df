//! The batch commands behind the CLI, as plain functions returning report
//! documents. Nothing here touches the filesystem or the process.

use thiserror::Error;

use super::generate::RunConfig;
use super::io::{InstanceDoc, InstanceFile, ParseError};
use super::report::{
    nums, FamilyRef, OptimalReport, RatioConfigDoc, RatioDoc, RunReport, SearchDoc, TraceEntry, VerifyReport,
    VerifyResult, WitnessSetDoc, DECIMAL_DIGITS, SCHEMA_VERSION,
};
use crate::mechanisms::MechanismId;
use crate::model::{agent_costs, max_cost, normalize_range, social_cost, AccessRange, Instance, ModelError, Objective};
use crate::optimal::{optimal, optimal_max_cost_closed};
use crate::rational::Rational;
use crate::verification::{
    check_incentives, gen_witness, misreport_candidates, ratio_search, IncentiveKind, RatioSample, VerifyError,
    WitnessFamily,
};

/// Process exit status for a command.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExitStatus {
    Success = 0,
    Error = 1,
    ViolationFound = 2,
}

#[derive(Debug, Error)]
pub enum HarnessError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Verify(#[from] VerifyError),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error("{0}")]
    Usage(String),
}

fn range_report(
    command: &'static str,
    mechanism: Option<MechanismId>,
    file: &InstanceFile,
    range: AccessRange,
) -> RunReport {
    let inst = &file.instance;
    RunReport {
        schema_version: SCHEMA_VERSION,
        command,
        mechanism: mechanism.map(|m| m.name().to_string()),
        instance: InstanceDoc::new(inst, file.name.clone()),
        range: range.into(),
        costs: nums(&agent_costs(inst, &range)),
        social_cost: social_cost(inst, &range).into(),
        max_cost: max_cost(inst, &range).into(),
    }
}

pub fn cmd_run(file: &InstanceFile, mechanism: MechanismId) -> RunReport {
    range_report("run", Some(mechanism), file, mechanism.apply(&file.instance))
}

/// Costs under an explicitly supplied range.
pub fn cmd_eval(file: &InstanceFile, a: Rational, b: Rational) -> Result<RunReport, HarnessError> {
    let range = normalize_range(a, b, file.instance.d())?;
    Ok(range_report("eval", None, file, range))
}

pub fn cmd_optimal(file: &InstanceFile, objective: Objective) -> OptimalReport {
    let inst = &file.instance;
    let opt = optimal(inst, objective);
    OptimalReport {
        schema_version: SCHEMA_VERSION,
        command: "optimal",
        objective: objective.as_str().to_string(),
        instance: InstanceDoc::new(inst, file.name.clone()),
        range: opt.range.into(),
        value: opt.value.into(),
        closed_form_value: (objective == Objective::Mc).then(|| optimal_max_cost_closed(inst).into()),
        breakpoints: opt.trace.iter().map(|c| TraceEntry::new(c.start, c.value)).collect(),
    }
}

/// What `verify` runs against.
#[derive(Debug, Clone)]
pub enum VerifyTarget {
    File(InstanceFile),
    Family {
        family: WitnessFamily,
        n: usize,
        d: Rational,
        eps: Rational,
    },
}

/// Known outcomes for the built-in families, so that a family run can
/// confirm both the manipulations that must be found and the ones that must
/// not. `None` when there is no established expectation.
pub fn expected_violation(family: WitnessFamily, mechanism: MechanismId, kind: IncentiveKind) -> Option<bool> {
    use IncentiveKind::*;
    use MechanismId::*;
    match (mechanism, kind) {
        (LeftmostSGSP, _) => Some(false),
        (SocialOptimalGSP | MaxCostGSP, Sp | Gsp) => Some(false),
        (SocialOptimalGSP, Sgsp) if family == WitnessFamily::SocialOptimalNotSgsp => Some(true),
        (MaxCostGSP, Sgsp) if family == WitnessFamily::MaxCostNotSgsp => Some(true),
        (OptimalMaxCostNonSP, _) if family == WitnessFamily::OptimalMaxCostNotSp => Some(true),
        _ => None,
    }
}

/// Extra report values a family needs so that its known manipulation lies
/// on the grid.
pub fn family_extra_grid(family: WitnessFamily, d: Rational) -> Vec<Rational> {
    match family {
        WitnessFamily::OptimalMaxCostNotSp => vec![Rational::new(7, 5) * d],
        _ => Vec::new(),
    }
}

/// Misreport values a `verify` run searches.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Grid {
    /// The standard candidates of each instance plus these values.
    Extend(Vec<Rational>),
    /// Exactly these values (members may still report truthfully).
    Only(Vec<Rational>),
}

impl Default for Grid {
    fn default() -> Self {
        Grid::Extend(Vec::new())
    }
}

pub fn cmd_verify(
    target: &VerifyTarget,
    mechanism: MechanismId,
    kind: IncentiveKind,
    cfg: &RunConfig,
    grid: &Grid,
) -> Result<VerifyReport, HarnessError> {
    let (instances, family): (Vec<(Instance, Option<String>)>, Option<WitnessFamily>) = match target {
        VerifyTarget::File(file) => (vec![(file.instance.clone(), file.name.clone())], None),
        VerifyTarget::Family { family, n, d, eps } => {
            let profiles = gen_witness(*family, *n, *d, *eps)?;
            let named = profiles
                .into_iter()
                .enumerate()
                .map(|(k, inst)| (inst, Some(format!("{family}-{k}"))))
                .collect();
            (named, Some(*family))
        }
    };
    let mut results = Vec::with_capacity(instances.len());
    for (inst, name) in instances {
        let candidates = match grid {
            Grid::Only(values) => {
                let mut values = values.clone();
                values.sort();
                values.dedup();
                values
            }
            Grid::Extend(extra) => {
                let mut extras = extra.clone();
                if let Some(f) = family {
                    extras.extend(family_extra_grid(f, inst.d()));
                }
                misreport_candidates(&inst, &extras)
            }
        };
        let report = check_incentives(kind, mechanism, &inst, &candidates, cfg.max_coalition, cfg.node_budget)?;
        let expected = family.and_then(|f| expected_violation(f, mechanism, kind));
        results.push(VerifyResult {
            instance: InstanceDoc::new(&inst, name),
            search: SearchDoc {
                candidates: candidates.iter().map(|c| c.to_fraction_string()).collect(),
                max_coalition: report.searched.max_coalition,
                deviations: report.searched.deviations,
                node_budget: cfg.node_budget,
            },
            violation: report.is_violation(),
            witness: report.witness.as_ref().map(Into::into),
            expected_violation: expected,
            expectation_met: expected.map(|e| e == report.is_violation()),
        });
    }
    let family_ref = match target {
        VerifyTarget::Family { family, n, d, eps } => Some(FamilyRef {
            family: family.name().to_string(),
            n: *n,
            d: *d,
            eps: *eps,
        }),
        VerifyTarget::File(_) => None,
    };
    Ok(VerifyReport {
        schema_version: SCHEMA_VERSION,
        command: "verify",
        kind: kind.as_str().to_string(),
        mechanism: mechanism.name().to_string(),
        family: family_ref,
        violation_found: results.iter().any(|r| r.violation),
        results,
    })
}

impl VerifyReport {
    pub fn exit_status(&self) -> ExitStatus {
        if self.violation_found {
            ExitStatus::ViolationFound
        } else {
            ExitStatus::Success
        }
    }
}

/// Worst-case search plus the per-draw CSV rows.
pub fn cmd_ratio(
    mechanism: MechanismId,
    objective: Objective,
    cfg: &RunConfig,
) -> Result<(RatioDoc, String), HarnessError> {
    cfg.validate().map_err(HarnessError::Config)?;
    let report = ratio_search(mechanism, objective, cfg);
    let doc = RatioDoc {
        schema_version: SCHEMA_VERSION,
        command: "ratio",
        mechanism: mechanism.name().to_string(),
        objective: objective.as_str().to_string(),
        seed: cfg.seed,
        trials: cfg.trials,
        generator: RatioConfigDoc {
            n_min: cfg.n_range.0,
            n_max: cfg.n_range.1,
            coordinate_bound: cfg.coordinate_bound,
            d: cfg.d,
            granularity: cfg.granularity,
        },
        worst_ratio: report.worst_ratio.into(),
        worst_draw_index: report.worst_draw_index,
        worst_instance: InstanceDoc::new(
            &report.worst_instance,
            Some(format!("draw-{}", report.worst_draw_index)),
        ),
    };
    Ok((doc, ratio_csv(&report.samples)))
}

/// Decimal ratios are rounded to 12 significant digits; the JSON report
/// keeps the exact values.
pub fn ratio_csv(samples: &[RatioSample]) -> String {
    let mut out = String::from("draw_index,instance_hash,ratio_decimal_lossy\n");
    for s in samples {
        out.push_str(&format!(
            "{},{},{}\n",
            s.draw_index,
            s.instance_hash,
            s.ratio.to_decimal_string(DECIMAL_DIGITS)
        ));
    }
    out
}

pub fn cmd_witness(family: WitnessFamily, n: usize, d: Rational, eps: Rational) -> Result<WitnessSetDoc, HarnessError> {
    let profiles = gen_witness(family, n, d, eps)?;
    Ok(WitnessSetDoc {
        schema_version: SCHEMA_VERSION,
        command: "witness",
        family: family.name().to_string(),
        n,
        d,
        eps,
        instances: profiles
            .iter()
            .enumerate()
            .map(|(k, inst)| InstanceDoc::new(inst, Some(format!("{family}-{k}"))))
            .collect(),
    })
}
