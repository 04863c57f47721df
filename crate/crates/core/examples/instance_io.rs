//! Reading instance documents and producing the JSON reports the CLI emits.
//!
//! `cargo run --example instance_io`

use accessrange::harness::report::to_json;
use accessrange::harness::{cmd_optimal, cmd_run, parse_instance_file, serialize_instance};
use accessrange::{MechanismId, Objective};

fn main() {
    // Decimals are read exactly from their text: 0.1 is 1/10.
    let doc = br#"{ "name": "demo", "d": 1.5, "locations": [-2, 0.1, "7/3"] }"#;
    let file = parse_instance_file(doc).unwrap();
    print!("{}", serialize_instance(&file.instance, file.name.as_deref()));

    let run = cmd_run(&file, MechanismId::LeftmostSGSP);
    print!("{}", to_json(&run));

    let opt = cmd_optimal(&file, Objective::Mc);
    println!(
        "optimal max cost {} (closed form {:?})",
        opt.value.exact,
        opt.closed_form_value.map(|v| v.exact)
    );

    for bad in [
        &br#"{"d": 1}"#[..],
        br#"{"d": 1, "locations": ["x"]}"#,
        br#"{"d": -1, "locations": [0]}"#,
    ] {
        println!(
            "{} -> {}",
            String::from_utf8_lossy(bad),
            parse_instance_file(bad).unwrap_err()
        );
    }
}
