//! Access-range mechanisms for a facility fixed at 0 on the real line.
//!
//! Agents report locations; a mechanism picks a closed interval `[a, b]` of
//! length at most `d` inside which travel is free. An agent's cost is its
//! distance to the facility once that interval is collapsed to a point.
//!
//! The crate provides:
//!
//! - [`model`]: the exact cost model, social cost and maximum cost.
//! - [`mechanisms`]: the `inf D` rule, the leftmost-report rule, the
//!   max-cost rule and the (manipulable) exact max-cost minimizer.
//! - [`optimal`]: exact optima by breakpoint enumeration, plus the closed
//!   form for maximum cost.
//! - [`verification`]: exhaustive single and coalition misreport search,
//!   approximation ratios and extremal profile families.
//! - [`harness`]: instance files, seeded generation and JSON/CSV reports,
//!   used by the `accessrange` binary.
//!
//! All arithmetic is exact ([`Rational`]); there are no tolerances.
//!
//! ```
//! use accessrange::{agent_costs, AccessRange, Instance, Rational};
//!
//! let inst = Instance::new(
//!     Rational::from_integer(2),
//!     vec![Rational::from_integer(-2), Rational::new(4, 5), Rational::from_integer(3)],
//! )
//! .unwrap();
//! let range = AccessRange::new(Rational::from_integer(1), Rational::from_integer(2));
//! let costs: Vec<String> = agent_costs(&inst, &range).iter().map(|c| c.to_string()).collect();
//! assert_eq!(costs, ["2", "4/5", "2"]);
//! ```

pub mod harness;
pub mod mechanisms;
pub mod model;
pub mod optimal;
pub mod rational;
pub mod verification;

pub use mechanisms::{inf_d, mech_leftmost, mech_maxcost, mech_optimal_maxcost, mech_social_optimal, MechanismId};
pub use model::{
    agent_cost, agent_costs, max_cost, normalize_range, profile_stats, shrink_map, social_cost, AccessRange, Instance,
    ModelError, Objective, ProfileStats,
};
pub use optimal::{
    grid_sweep, optimal, optimal_max_cost_bruteforce, optimal_max_cost_closed, optimal_social_cost, OptimumResult,
};
pub use rational::Rational;
