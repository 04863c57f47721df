//! Exact optima and the anchors that were evaluated to find them.
//!
//! `cargo run --example optimal_breakpoints`

use accessrange::{grid_sweep, optimal, optimal_max_cost_closed, Instance, Objective, Rational};

fn main() {
    let inst = Instance::new(
        Rational::ONE,
        vec![
            Rational::from_integer(-2),
            Rational::new(4, 5),
            Rational::from_integer(3),
        ],
    )
    .unwrap();

    for obj in [Objective::Sc, Objective::Mc] {
        let opt = optimal(&inst, obj);
        println!("{obj}: optimum {} at [{}, {}]", opt.value, opt.range.a(), opt.range.b());
        for c in &opt.trace {
            println!("  t = {:>6}  value {}", c.start.to_string(), c.value);
        }
        let swept = grid_sweep(&inst, obj, Rational::from_integer(-4), Rational::from_integer(4), 20);
        println!("  dense sweep over ranges with endpoints on a 1/20 grid: {swept}");
    }
    println!("closed-form max cost: {}", optimal_max_cost_closed(&inst));
}
