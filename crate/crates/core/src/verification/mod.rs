//! Adversarial checks: misreport search, approximation ratios and extremal
//! profile families.

use thiserror::Error;

pub mod incentive;
pub mod ratio;
pub mod witness;

pub use incentive::{
    check_gsp, check_incentives, check_sgsp, check_sp, misreport_candidates, Deviation, IncentiveKind, SearchSpace,
    ViolationReport, Witness, DEFAULT_NODE_BUDGET,
};
pub use ratio::{approximation_ratio, optimal_value, ratio_search, ApproxRatio, RatioReport, RatioSample};
pub use witness::{gen_witness, WitnessFamily};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum VerifyError {
    #[error("search needs {required} deviation evaluations, budget is {budget}")]
    SearchSpaceTooLarge { required: u64, budget: u64 },
    #[error("invalid witness family parameters: {0}")]
    InvalidFamilyParams(String),
    #[error("misreport candidate set is empty")]
    EmptyCandidates,
}
