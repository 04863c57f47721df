//! Searches for profitable misreports, singly and in coalitions.
//!
//! `cargo run --release --example incentive_audit`

use accessrange::verification::{check_incentives, misreport_candidates, IncentiveKind, DEFAULT_NODE_BUDGET};
use accessrange::{Instance, MechanismId, Rational};

fn audit(label: &str, inst: &Instance, extra: &[Rational]) {
    let grid = misreport_candidates(inst, extra);
    println!("{label}: {} candidate reports", grid.len());
    for mech in MechanismId::ALL {
        for kind in [IncentiveKind::Sp, IncentiveKind::Gsp, IncentiveKind::Sgsp] {
            let rep = check_incentives(kind, mech, inst, &grid, inst.len(), DEFAULT_NODE_BUDGET).unwrap();
            match &rep.witness {
                None => println!(
                    "  {:<20} {:<4} clean ({} deviations)",
                    mech.name(),
                    kind,
                    rep.searched.deviations
                ),
                Some(w) => {
                    let show = |v: &[Rational]| v.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ");
                    println!(
                        "  {:<20} {:<4} agents {:?} report ({}); costs ({}) -> ({})",
                        mech.name(),
                        kind,
                        w.deviation.coalition,
                        show(&w.deviation.reports),
                        show(&w.costs_before),
                        show(&w.costs_after)
                    );
                }
            }
        }
    }
}

fn main() {
    let q = Rational::new;
    audit(
        "pair at -1 and 1",
        &Instance::from_ints(1, &[-1, 1]).unwrap(),
        &[q(7, 5)],
    );
    audit(
        "one at -1, one at -1/10, two at 1",
        &Instance::new(Rational::ONE, vec![q(-1, 1), q(-1, 10), q(1, 1), q(1, 1)]).unwrap(),
        &[],
    );
    audit(
        "-2 and -1/2",
        &Instance::new(Rational::ONE, vec![q(-2, 1), q(-1, 2)]).unwrap(),
        &[],
    );
}
