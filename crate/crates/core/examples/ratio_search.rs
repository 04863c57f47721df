//! Worst observed approximation ratios over seeded random instances.
//!
//! `cargo run --release --example ratio_search -- [trials]`

use accessrange::harness::RunConfig;
use accessrange::verification::ratio_search;
use accessrange::{MechanismId, Objective};

fn main() {
    let trials = std::env::args().nth(1).and_then(|s| s.parse().ok()).unwrap_or(2000);
    let cfg = RunConfig {
        trials,
        n_range: (2, 8),
        ..RunConfig::default()
    };
    for obj in [Objective::Sc, Objective::Mc] {
        for mech in MechanismId::ALL {
            let rep = ratio_search(mech, obj, &cfg);
            println!(
                "{obj} {:<20} worst {:<16} (draw {}, n = {})",
                mech.name(),
                rep.worst_ratio.to_decimal_string(8),
                rep.worst_draw_index,
                rep.worst_instance.len()
            );
        }
    }
}
