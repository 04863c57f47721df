//! Per-agent costs under two hand-picked ranges.
//!
//! `cargo run --example three_agent_costs`

use accessrange::{agent_costs, max_cost, social_cost, AccessRange, Instance, Rational};

fn main() {
    let inst = Instance::new(
        Rational::from_integer(2),
        vec![
            Rational::from_integer(-2),
            Rational::new(4, 5),
            Rational::from_integer(3),
        ],
    )
    .expect("valid instance");

    for (a, b) in [(-1, 1), (1, 2)] {
        let range = AccessRange::new(Rational::from_integer(a), Rational::from_integer(b));
        let costs: Vec<String> = agent_costs(&inst, &range).iter().map(ToString::to_string).collect();
        println!(
            "range [{a}, {b}]: costs ({})  SC {}  MC {}",
            costs.join(", "),
            social_cost(&inst, &range),
            max_cost(&inst, &range)
        );
    }
}
