//! Seeded random instances.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::model::Instance;
use crate::rational::Rational;

/// Settings shared by the batch commands.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RunConfig {
    pub seed: u64,
    pub trials: usize,
    /// Inclusive bounds on the number of agents.
    pub n_range: (usize, usize),
    /// Locations are drawn from `[-coordinate_bound * d, coordinate_bound * d]`.
    pub coordinate_bound: Rational,
    pub d: Rational,
    /// Locations are multiples of `1 / granularity`.
    pub granularity: i64,
    pub max_coalition: usize,
    pub node_budget: u64,
    pub eps: Rational,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            seed: 1,
            trials: 10_000,
            n_range: (2, 6),
            coordinate_bound: Rational::from_integer(3),
            d: Rational::ONE,
            granularity: 1000,
            max_coalition: 4,
            node_budget: 10_000_000,
            eps: Rational::new(1, 100),
        }
    }
}

impl RunConfig {
    pub fn validate(&self) -> Result<(), String> {
        if self.trials == 0 {
            return Err("trials must be at least 1".into());
        }
        let (lo, hi) = self.n_range;
        if lo == 0 || hi < lo {
            return Err(format!("invalid agent-count range {lo}..={hi}"));
        }
        if !self.coordinate_bound.is_positive() {
            return Err("coordinate_bound must be positive".into());
        }
        if self.d.is_negative() {
            return Err("d must be non-negative".into());
        }
        if self.granularity < 1 {
            return Err("granularity must be at least 1".into());
        }
        if self.max_coalition == 0 || self.node_budget == 0 {
            return Err("max_coalition and node_budget must be at least 1".into());
        }
        if !self.eps.is_positive() {
            return Err("eps must be positive".into());
        }
        Ok(())
    }
}

/// Draw number `draw_index` of the stream selected by `cfg.seed`.
///
/// Each draw owns its own ChaCha stream, so the result does not depend on
/// which other draws were made or in what order.
pub fn random_instance(cfg: &RunConfig, draw_index: u64) -> Instance {
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    rng.set_stream(draw_index);
    let (lo, hi) = cfg.n_range;
    let n = rng.gen_range(lo as u64..=hi as u64) as usize;
    let span = cfg.coordinate_bound * cfg.d * Rational::from_integer(cfg.granularity);
    let steps = span.numer().div_euclid(span.denom());
    let locations = (0..n)
        .map(|_| Rational::new(rng.gen_range(-steps..=steps), cfg.granularity))
        .collect();
    Instance::new(cfg.d, locations).expect("n >= 1 and d >= 0 by validation")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn draws_are_reproducible_and_independent_of_order() {
        let cfg = RunConfig::default();
        let a = random_instance(&cfg, 7);
        let _ = random_instance(&cfg, 3);
        assert_eq!(a, random_instance(&cfg, 7));
        assert_ne!(random_instance(&cfg, 0), random_instance(&cfg, 1));
    }

    #[test]
    fn frozen_first_draw() {
        // Pinned so that a change of RNG or sampling scheme is noticed.
        let cfg = RunConfig::default();
        let inst = random_instance(&cfg, 0);
        let text: Vec<String> = inst.locations().iter().map(|x| x.to_string()).collect();
        assert_eq!(text, FROZEN_DRAW_0);
    }

    const FROZEN_DRAW_0: [&str; 4] = ["-1259/500", "-421/250", "-649/500", "158/125"];

    #[test]
    fn respects_bounds_and_agent_counts() {
        let cfg = RunConfig {
            n_range: (1, 1),
            ..RunConfig::default()
        };
        for i in 0..200 {
            let inst = random_instance(&cfg, i);
            assert_eq!(inst.len(), 1);
            let bound = Rational::from_integer(3);
            assert!(inst.locations().iter().all(|x| x.abs() <= bound));
            assert!(inst.locations().iter().all(|x| 1000 % x.denom() == 0));
        }
    }
}
