//! The extremal profile families and how each mechanism fares on them.
//!
//! `cargo run --example witness_families`

use accessrange::verification::{approximation_ratio, gen_witness, WitnessFamily};
use accessrange::{MechanismId, Objective, Rational};

fn main() {
    let eps = Rational::new(1, 100);
    for family in WitnessFamily::ALL {
        let n = match family {
            WitnessFamily::OptimalMaxCostNotSp
            | WitnessFamily::MaxCostLowerBoundPair
            | WitnessFamily::RandomizedMaxCostLowerBoundPair => 2,
            _ => 6,
        };
        let profiles = gen_witness(family, n, Rational::ONE, eps).unwrap();
        println!("{family} (n = {n})");
        for p in &profiles {
            let locs: Vec<String> = p.locations().iter().map(ToString::to_string).collect();
            let ratios: Vec<String> = MechanismId::STRATEGYPROOF
                .iter()
                .map(|&m| {
                    format!(
                        "{}: SC {} MC {}",
                        m.name(),
                        approximation_ratio(m, p, Objective::Sc).to_decimal_string(4),
                        approximation_ratio(m, p, Objective::Mc).to_decimal_string(4)
                    )
                })
                .collect();
            println!("  ({})", locs.join(", "));
            for r in ratios {
                println!("    {r}");
            }
        }
    }
}
