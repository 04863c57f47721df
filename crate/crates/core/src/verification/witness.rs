//! Parameterized profile families that serve as extremal examples: lower
//! bound constructions and known manipulations.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;

use super::VerifyError;
use crate::model::Instance;
use crate::rational::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WitnessFamily {
    /// Three profiles forcing any strong-group-strategyproof rule to a
    /// social-cost ratio near `(n + 2) / 4`: `n/2` agents at `-d` and `n/2`
    /// at `d`; the same with `n/2 - 1` of the left agents moved to `-eps`;
    /// and the mirror image.
    SgspSocialLowerBound,
    /// As [`WitnessFamily::SgspSocialLowerBound`] with the moved agents at 0;
    /// the construction used against randomized rules.
    RandomizedSgspSocialLowerBound,
    /// One agent at `-d`, `n/2 - 1` at `-eps`, `n/2` at `d`: the `inf D`
    /// rule can be moved by the agents at `-eps` at no cost to themselves.
    SocialOptimalNotSgsp,
    /// `n/2` agents at `-2d` and `n/2` at `-d/2`: everyone reporting `-d`
    /// helps the agents at `-d/2` without hurting the others.
    MaxCostNotSgsp,
    /// Agents at `-d` and `d`: the right agent gains by reporting `1.4d`
    /// under the exact max-cost rule.
    OptimalMaxCostNotSp,
    /// `(-d/2 - eps, d/2 + eps)` and the deviation `(-d/2 - eps, d)`; any
    /// strategyproof rule is close to 2-approximate on one of them.
    MaxCostLowerBoundPair,
    /// `(-d/2 - eps, d/2 + eps)` and `(-d/2 - eps, d/2 + 3 eps)`, the pair
    /// used against randomized rules.
    RandomizedMaxCostLowerBoundPair,
}

impl WitnessFamily {
    pub const ALL: [WitnessFamily; 7] = [
        WitnessFamily::SgspSocialLowerBound,
        WitnessFamily::RandomizedSgspSocialLowerBound,
        WitnessFamily::SocialOptimalNotSgsp,
        WitnessFamily::MaxCostNotSgsp,
        WitnessFamily::OptimalMaxCostNotSp,
        WitnessFamily::MaxCostLowerBoundPair,
        WitnessFamily::RandomizedMaxCostLowerBoundPair,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            WitnessFamily::SgspSocialLowerBound => "sgsp-social-lower-bound",
            WitnessFamily::RandomizedSgspSocialLowerBound => "randomized-sgsp-social-lower-bound",
            WitnessFamily::SocialOptimalNotSgsp => "social-optimal-not-sgsp",
            WitnessFamily::MaxCostNotSgsp => "max-cost-not-sgsp",
            WitnessFamily::OptimalMaxCostNotSp => "optimal-max-cost-not-sp",
            WitnessFamily::MaxCostLowerBoundPair => "max-cost-lower-bound-pair",
            WitnessFamily::RandomizedMaxCostLowerBoundPair => "randomized-max-cost-lower-bound-pair",
        }
    }

    /// Short identifier accepted as an alternative spelling.
    fn short_id(&self) -> &'static str {
        match self {
            WitnessFamily::SgspSocialLowerBound => "sgsp_lb",
            WitnessFamily::RandomizedSgspSocialLowerBound => "rand_sgsp_lb",
            WitnessFamily::SocialOptimalNotSgsp => "mech1_not_sgsp",
            WitnessFamily::MaxCostNotSgsp => "mech3_not_sgsp",
            WitnessFamily::OptimalMaxCostNotSp => "optmc_not_sp",
            WitnessFamily::MaxCostLowerBoundPair => "mc_lb_pair",
            WitnessFamily::RandomizedMaxCostLowerBoundPair => "rand_mc_lb_pair",
        }
    }

    fn uses_eps(&self) -> bool {
        !matches!(
            self,
            WitnessFamily::RandomizedSgspSocialLowerBound
                | WitnessFamily::MaxCostNotSgsp
                | WitnessFamily::OptimalMaxCostNotSp
        )
    }
}

impl fmt::Display for WitnessFamily {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for WitnessFamily {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key = s.trim().to_ascii_lowercase();
        WitnessFamily::ALL
            .into_iter()
            .find(|f| f.name() == key || f.short_id() == key.replace('-', "_"))
            .ok_or_else(|| {
                let names: Vec<&str> = WitnessFamily::ALL.iter().map(|f| f.name()).collect();
                format!("unknown witness family `{s}` (expected one of {})", names.join(", "))
            })
    }
}

fn repeat(value: Rational, count: usize) -> impl Iterator<Item = Rational> {
    std::iter::repeat_n(value, count)
}

fn profile(d: Rational, parts: impl IntoIterator<Item = Rational>) -> Instance {
    Instance::new(d, parts.into_iter().collect()).expect("witness profiles are nonempty with d >= 0")
}

/// Profiles of `family` for `n` agents, cap `d` and perturbation `eps`.
/// Families that do not perturb ignore `eps`.
pub fn gen_witness(family: WitnessFamily, n: usize, d: Rational, eps: Rational) -> Result<Vec<Instance>, VerifyError> {
    let invalid = |why: String| Err(VerifyError::InvalidFamilyParams(format!("{family}: {why}")));
    if d.is_negative() {
        return invalid(format!("d must be non-negative, got {d}"));
    }
    if family.uses_eps() && !eps.is_positive() {
        return invalid(format!("eps must be positive, got {eps}"));
    }
    let half_n = n / 2;
    let even = n >= 2 && n.is_multiple_of(2);
    let zero = Rational::ZERO;
    let half_d = d.half();
    let instances = match family {
        WitnessFamily::SgspSocialLowerBound | WitnessFamily::RandomizedSgspSocialLowerBound => {
            if !even {
                return invalid(format!("needs an even n >= 2, got {n}"));
            }
            let moved = if family == WitnessFamily::SgspSocialLowerBound {
                eps
            } else {
                zero
            };
            vec![
                profile(d, repeat(-d, half_n).chain(repeat(d, half_n))),
                profile(
                    d,
                    repeat(-d, 1).chain(repeat(-moved, half_n - 1)).chain(repeat(d, half_n)),
                ),
                profile(
                    d,
                    repeat(d, 1).chain(repeat(moved, half_n - 1)).chain(repeat(-d, half_n)),
                ),
            ]
        }
        WitnessFamily::SocialOptimalNotSgsp => {
            if !even || n < 4 {
                return invalid(format!("needs an even n >= 4, got {n}"));
            }
            vec![profile(
                d,
                repeat(-d, 1).chain(repeat(-eps, half_n - 1)).chain(repeat(d, half_n)),
            )]
        }
        WitnessFamily::MaxCostNotSgsp => {
            if !even {
                return invalid(format!("needs an even n >= 2, got {n}"));
            }
            let two_d = d + d;
            vec![profile(d, repeat(-two_d, half_n).chain(repeat(-half_d, half_n)))]
        }
        WitnessFamily::OptimalMaxCostNotSp => {
            if n != 2 {
                return invalid(format!("is a two-agent family, got n = {n}"));
            }
            vec![profile(d, [-d, d])]
        }
        WitnessFamily::MaxCostLowerBoundPair | WitnessFamily::RandomizedMaxCostLowerBoundPair => {
            if n != 2 {
                return invalid(format!("is a two-agent family, got n = {n}"));
            }
            let left = -half_d - eps;
            let deviated = if family == WitnessFamily::MaxCostLowerBoundPair {
                d
            } else {
                half_d + eps + eps + eps
            };
            vec![profile(d, [left, half_d + eps]), profile(d, [left, deviated])]
        }
    };
    Ok(instances)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n, d)
    }

    fn z(n: i64) -> Rational {
        Rational::from_integer(n)
    }

    fn locs(i: &Instance) -> Vec<Rational> {
        i.locations().to_vec()
    }

    #[test]
    fn sgsp_lower_bound_profiles() {
        let v = gen_witness(WitnessFamily::SgspSocialLowerBound, 4, z(1), q(1, 100)).unwrap();
        assert_eq!(locs(&v[0]), vec![z(-1), z(-1), z(1), z(1)]);
        assert_eq!(locs(&v[1]), vec![z(-1), q(-1, 100), z(1), z(1)]);
        assert_eq!(locs(&v[2]), vec![z(1), q(1, 100), z(-1), z(-1)]);
        let r = gen_witness(WitnessFamily::RandomizedSgspSocialLowerBound, 6, z(1), q(1, 100)).unwrap();
        assert_eq!(locs(&r[1]), vec![z(-1), z(0), z(0), z(1), z(1), z(1)]);
    }

    #[test]
    fn manipulation_profiles() {
        let v = gen_witness(WitnessFamily::OptimalMaxCostNotSp, 2, z(1), q(1, 100)).unwrap();
        assert_eq!(locs(&v[0]), vec![z(-1), z(1)]);
        let v = gen_witness(WitnessFamily::MaxCostNotSgsp, 2, z(1), q(1, 100)).unwrap();
        assert_eq!(locs(&v[0]), vec![z(-2), q(-1, 2)]);
        let v = gen_witness(WitnessFamily::SocialOptimalNotSgsp, 4, z(1), q(1, 10)).unwrap();
        assert_eq!(locs(&v[0]), vec![z(-1), q(-1, 10), z(1), z(1)]);
    }

    #[test]
    fn lower_bound_pairs() {
        let eps = q(1, 100);
        let v = gen_witness(WitnessFamily::MaxCostLowerBoundPair, 2, z(1), eps).unwrap();
        assert_eq!(locs(&v[0]), vec![q(-51, 100), q(51, 100)]);
        assert_eq!(locs(&v[1]), vec![q(-51, 100), z(1)]);
        let v = gen_witness(WitnessFamily::RandomizedMaxCostLowerBoundPair, 2, z(1), eps).unwrap();
        assert_eq!(locs(&v[1]), vec![q(-51, 100), q(53, 100)]);
    }

    #[test]
    fn parameter_errors() {
        let e = q(1, 100);
        assert!(gen_witness(WitnessFamily::SgspSocialLowerBound, 5, z(1), e).is_err());
        assert!(gen_witness(WitnessFamily::SgspSocialLowerBound, 4, z(1), z(0)).is_err());
        assert!(gen_witness(WitnessFamily::SocialOptimalNotSgsp, 2, z(1), e).is_err());
        assert!(gen_witness(WitnessFamily::MaxCostLowerBoundPair, 3, z(1), e).is_err());
        // Unperturbed families do not care about eps.
        assert!(gen_witness(WitnessFamily::MaxCostNotSgsp, 2, z(1), z(0)).is_ok());
    }

    #[test]
    fn names_parse() {
        for f in WitnessFamily::ALL {
            assert_eq!(f.name().parse::<WitnessFamily>().unwrap(), f);
            assert_eq!(f.short_id().parse::<WitnessFamily>().unwrap(), f);
        }
    }
}
