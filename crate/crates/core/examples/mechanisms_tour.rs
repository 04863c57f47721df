//! Every built-in mechanism on a few profiles, with both objectives.
//!
//! `cargo run --example mechanisms_tour`

use accessrange::{max_cost, social_cost, Instance, MechanismId, Rational};

fn main() {
    let profiles: [(&str, &[i64]); 4] = [
        ("all right of the facility", &[1, 2, 3]),
        ("spread", &[-3, -1, 2, 4]),
        ("one far left", &[-5, 1, 1, 1]),
        ("symmetric pair", &[-1, 1]),
    ];
    for (label, xs) in profiles {
        let inst = Instance::from_ints(1, xs).unwrap();
        println!("{label}: {xs:?}, d = 1");
        for mech in MechanismId::ALL {
            let r = mech.apply(&inst);
            println!(
                "  {:<20} [{}, {}]  SC {:<6} MC {}",
                mech.name(),
                r.a(),
                r.b(),
                social_cost(&inst, &r).to_string(),
                max_cost(&inst, &r)
            );
        }
    }

    let frac = Instance::new(Rational::new(3, 2), vec![Rational::new(-7, 10), Rational::new(9, 4)]).unwrap();
    let r = MechanismId::SocialOptimalGSP.apply(&frac);
    println!("fractional cap 3/2: social-optimal rule picks [{}, {}]", r.a(), r.b());
}
