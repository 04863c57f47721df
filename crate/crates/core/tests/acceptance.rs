//! Acceptance suite. Runs without the libtest harness so that every
//! criterion prints exactly one PASS/FAIL line; the process exits non-zero
//! if any criterion fails.
//!
//! Set `ACCESSRANGE_UPDATE_GOLDEN=1` to rewrite the golden reports.

use std::path::{Path, PathBuf};
use std::process::Command;
use std::time::Instant;

use accessrange::harness::{random_instance, RunConfig};
use accessrange::verification::{
    approximation_ratio, check_gsp, check_sgsp, check_sp, gen_witness, misreport_candidates, ApproxRatio,
    ViolationReport, WitnessFamily,
};
use accessrange::{
    agent_costs, max_cost, optimal_max_cost_bruteforce, optimal_max_cost_closed, optimal_social_cost, social_cost,
    AccessRange, Instance, MechanismId, Objective, Rational,
};

type Outcome = Result<String, String>;
type Criterion<'a> = (&'static str, Box<dyn Fn() -> Outcome + 'a>);

fn q(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

fn z(n: i64) -> Rational {
    Rational::from_integer(n)
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// The random population shared by criteria 2 to 5.
fn population() -> Vec<Instance> {
    let cfg = RunConfig {
        seed: 20240601,
        trials: 10_000,
        n_range: (2, 8),
        coordinate_bound: z(3),
        d: Rational::ONE,
        granularity: 1000,
        ..RunConfig::default()
    };
    (0..cfg.trials as u64).map(|i| random_instance(&cfg, i)).collect()
}

fn finite(r: ApproxRatio, what: &str) -> Result<Rational, String> {
    r.finite().ok_or_else(|| format!("{what}: infinite ratio"))
}

fn three_agent_costs() -> Outcome {
    let inst = Instance::new(z(2), vec![z(-2), q(4, 5), z(3)]).unwrap();
    let a = agent_costs(&inst, &AccessRange::new(z(-1), z(1)));
    let b = agent_costs(&inst, &AccessRange::new(z(1), z(2)));
    ensure(a == [z(1), z(0), z(2)], || format!("range (-1,1) gave {a:?}"))?;
    ensure(b == [z(2), q(4, 5), z(2)], || format!("range (1,2) gave {b:?}"))?;
    Ok("(1, 0, 2) and (2, 4/5, 2)".into())
}

fn social_optimality(pop: &[Instance]) -> Outcome {
    for (i, inst) in pop.iter().enumerate() {
        let mech = social_cost(inst, &MechanismId::SocialOptimalGSP.apply(inst));
        let opt = optimal_social_cost(inst).value;
        ensure(mech == opt, || format!("draw {i}: mechanism {mech}, optimum {opt}"))?;
    }
    Ok(format!("{} instances, all equal", pop.len()))
}

fn max_cost_closed_form(pop: &[Instance]) -> Outcome {
    for (i, inst) in pop.iter().enumerate() {
        let closed = optimal_max_cost_closed(inst);
        let brute = optimal_max_cost_bruteforce(inst);
        ensure(closed == brute.value, || {
            format!("draw {i}: closed {closed}, enumeration {}", brute.value)
        })?;
        // The enumerated range must actually achieve the value.
        ensure(max_cost(inst, &brute.range) == closed, || {
            format!("draw {i}: range misses value")
        })?;
    }
    Ok(format!("{} instances, all equal", pop.len()))
}

fn leftmost_bound_and_tightness(pop: &[Instance]) -> Outcome {
    let mut worst_slack: Option<Rational> = None;
    for (i, inst) in pop.iter().enumerate() {
        let r = finite(
            approximation_ratio(MechanismId::LeftmostSGSP, inst, Objective::Sc),
            &format!("draw {i}"),
        )?;
        let bound = z(inst.len() as i64 - 1).max(Rational::ONE);
        ensure(r <= bound, || format!("draw {i}: ratio {r} > {bound}"))?;
        let slack = bound - r;
        worst_slack = Some(worst_slack.map_or(slack, |w| w.min(slack)));
    }
    for d in [Rational::ONE, q(3, 2)] {
        for n in 2..=8usize {
            let locs: Vec<Rational> = std::iter::once(-d).chain(std::iter::repeat_n(d, n - 1)).collect();
            let inst = Instance::new(d, locs).unwrap();
            let r = finite(
                approximation_ratio(MechanismId::LeftmostSGSP, &inst, Objective::Sc),
                "tight",
            )?;
            ensure(r == z(n as i64 - 1), || format!("tight n={n} d={d}: ratio {r}"))?;
        }
    }
    Ok(format!(
        "random max ratio within n-1 (min slack {}), tight profiles exactly n-1 for n=2..8",
        worst_slack.unwrap_or(Rational::ZERO)
    ))
}

fn max_cost_two_approx(pop: &[Instance]) -> Outcome {
    let two = z(2);
    let mut worst = Rational::ZERO;
    for (i, inst) in pop.iter().enumerate() {
        for mech in [MechanismId::MaxCostGSP, MechanismId::LeftmostSGSP] {
            let r = finite(
                approximation_ratio(mech, inst, Objective::Mc),
                &format!("draw {i} {mech}"),
            )?;
            ensure(r <= two, || format!("draw {i}: {mech} ratio {r}"))?;
            worst = worst.max(r);
        }
    }
    for d in [Rational::ONE, q(5, 2)] {
        let inst = Instance::new(d, vec![-d, d]).unwrap();
        let r = finite(
            approximation_ratio(MechanismId::MaxCostGSP, &inst, Objective::Mc),
            "tight",
        )?;
        ensure(r == two, || format!("(-d, d) with d={d}: ratio {r}"))?;
    }
    Ok(format!("random worst {worst}, (-d, d) exactly 2"))
}

fn assert_clean(report: &ViolationReport, label: &str) -> Result<(), String> {
    match &report.witness {
        None => Ok(()),
        Some(w) => Err(format!("{label}: unexpected witness {w:?}")),
    }
}

fn incentive_suites() -> Outcome {
    // n <= 4 keeps full-size coalitions enumerable on one core.
    let cfg = RunConfig {
        seed: 77,
        trials: 200,
        n_range: (2, 4),
        coordinate_bound: z(3),
        d: Rational::ONE,
        granularity: 1000,
        ..RunConfig::default()
    };
    let mut searched = 0u64;
    for i in 0..cfg.trials as u64 {
        let inst = random_instance(&cfg, i);
        let n = inst.len();
        let grid = misreport_candidates(&inst, &[q(-5, 2), q(5, 2)]);
        for mech in MechanismId::STRATEGYPROOF {
            let sp = check_sp(mech, &inst, &grid).map_err(|e| e.to_string())?;
            assert_clean(&sp, &format!("draw {i} {mech} sp"))?;
            let gsp = check_gsp(mech, &inst, &grid, n).map_err(|e| e.to_string())?;
            assert_clean(&gsp, &format!("draw {i} {mech} gsp"))?;
            searched += sp.searched.deviations + gsp.searched.deviations;
        }
        let sgsp = check_sgsp(MechanismId::LeftmostSGSP, &inst, &grid, n).map_err(|e| e.to_string())?;
        assert_clean(&sgsp, &format!("draw {i} leftmost sgsp"))?;
        searched += sgsp.searched.deviations;
    }

    // Social-optimal rule: the agent at -d gains, the agent at -eps stays at 0.
    let inst = &gen_witness(WitnessFamily::SocialOptimalNotSgsp, 4, Rational::ONE, q(1, 10)).unwrap()[0];
    let rep = check_sgsp(MechanismId::SocialOptimalGSP, inst, &misreport_candidates(inst, &[]), 4)
        .map_err(|e| e.to_string())?;
    let w = rep
        .witness
        .as_ref()
        .ok_or("social-optimal rule: no SGSP violation found")?;
    ensure(rep.witness_is_sound(), || {
        "social-optimal witness does not replay".into()
    })?;
    ensure(w.deviation.coalition == [0, 1], || {
        format!("coalition {:?}", w.deviation.coalition)
    })?;
    ensure(
        w.costs_before == [q(9, 10), z(0)] && w.costs_after == [z(0), z(0)],
        || format!("social-optimal costs {:?} -> {:?}", w.costs_before, w.costs_after),
    )?;
    ensure(w.deviated_range == AccessRange::new(z(-1), z(0)), || {
        format!("range {:?}", w.deviated_range)
    })?;
    let rep = check_sgsp(MechanismId::SocialOptimalGSP, inst, &[z(-1)], 4).map_err(|e| e.to_string())?;
    let w = rep
        .witness
        .as_ref()
        .ok_or("social-optimal rule: no violation on the {-1} grid")?;
    ensure(w.deviation.reports == [z(-1), z(-1)], || {
        format!("reports {:?}", w.deviation.reports)
    })?;

    // Max-cost rule: everyone reports -d; the agent at -d/2 goes 1/2 -> 0.
    let inst = &gen_witness(WitnessFamily::MaxCostNotSgsp, 2, Rational::ONE, q(1, 100)).unwrap()[0];
    let rep =
        check_sgsp(MechanismId::MaxCostGSP, inst, &misreport_candidates(inst, &[]), 2).map_err(|e| e.to_string())?;
    let w = rep.witness.as_ref().ok_or("max-cost rule: no SGSP violation found")?;
    ensure(rep.witness_is_sound(), || "max-cost witness does not replay".into())?;
    ensure(w.deviation.reports == [z(-1), z(-1)], || {
        format!("reports {:?}", w.deviation.reports)
    })?;
    ensure(
        w.costs_before == [z(1), q(1, 2)] && w.costs_after == [z(1), z(0)],
        || format!("max-cost costs {:?} -> {:?}", w.costs_before, w.costs_after),
    )?;

    // Exact max-cost minimizer: the agent at d reports 1.4d.
    let inst = Instance::from_ints(1, &[-1, 1]).unwrap();
    let rep = check_sp(MechanismId::OptimalMaxCostNonSP, &inst, &[q(7, 5)]).map_err(|e| e.to_string())?;
    let w = rep
        .witness
        .as_ref()
        .ok_or("optimal max-cost rule: no SP violation found")?;
    ensure(rep.witness_is_sound(), || {
        "optimal max-cost witness does not replay".into()
    })?;
    ensure(
        w.deviation.coalition == [1]
            && w.deviation.reports == [q(7, 5)]
            && w.costs_before == [q(1, 2)]
            && w.costs_after == [q(3, 10)]
            && w.deviated_range == AccessRange::new(q(-3, 10), q(7, 10)),
        || format!("optimal max-cost witness {w:?}"),
    )?;

    Ok(format!(
        "{} random instances clean ({searched} deviations), both SGSP and the SP witness reproduced exactly",
        cfg.trials
    ))
}

fn lower_bound_floors() -> Outcome {
    for n in [4usize, 6, 8] {
        let profiles = gen_witness(WitnessFamily::SgspSocialLowerBound, n, Rational::ONE, q(1, 100)).unwrap();
        let worst = profiles
            .iter()
            .map(|p| {
                finite(
                    approximation_ratio(MechanismId::LeftmostSGSP, p, Objective::Sc),
                    "floor",
                )
            })
            .collect::<Result<Vec<_>, _>>()?
            .into_iter()
            .max()
            .unwrap();
        let floor = q(n as i64 + 2, 4);
        ensure(worst >= floor, || format!("n={n}: worst {worst} < {floor}"))?;
    }
    let pair = gen_witness(WitnessFamily::MaxCostLowerBoundPair, 2, Rational::ONE, q(1, 100)).unwrap();
    let deviated = &pair[1];
    for mech in MechanismId::STRATEGYPROOF {
        let r = finite(approximation_ratio(mech, deviated, Objective::Mc), "pair")?;
        ensure(r > q(19, 10), || format!("{mech}: ratio {r} on the deviated profile"))?;
    }
    Ok("social floors met for n=4,6,8; every strategyproof rule above 19/10 on the pair".into())
}

struct CliCase {
    golden: &'static str,
    args: Vec<String>,
    exit: i32,
}

fn data(name: &str) -> String {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/data")
        .join(name)
        .display()
        .to_string()
}

fn cli_cases() -> Vec<CliCase> {
    let case = |golden, args: &[&str], exit| CliCase {
        golden,
        args: args.iter().map(|s| s.to_string()).collect(),
        exit,
    };
    let trio = data("three_agents.json");
    let tight = data("leftmost_tight_n5.json");
    let pair = data("symmetric_pair.json");
    vec![
        case("eval_three_agents_inner.json", &["eval", &trio, "--a=-1", "--b=1"], 0),
        case("eval_three_agents_right.json", &["eval", &trio, "--a=1", "--b=2"], 0),
        case("run_leftmost_tight.json", &["run", &tight, "--mech", "leftmost"], 0),
        case(
            "optimal_sc_leftmost_tight.json",
            &["optimal", &tight, "--objective", "sc"],
            0,
        ),
        case("run_maxcost_pair.json", &["run", &pair, "--mech", "maxcost"], 0),
        case("optimal_mc_pair.json", &["optimal", &pair, "--objective", "mc"], 0),
        case(
            "verify_social_optimal_sgsp.json",
            &[
                "verify",
                "--family",
                "social-optimal-not-sgsp",
                "--n",
                "4",
                "--eps",
                "1/10",
                "--mech",
                "social-optimal",
                "--kind",
                "sgsp",
            ],
            2,
        ),
        case(
            "verify_maxcost_sgsp.json",
            &[
                "verify",
                "--family",
                "max-cost-not-sgsp",
                "--n",
                "2",
                "--mech",
                "maxcost",
                "--kind",
                "sgsp",
            ],
            2,
        ),
        case(
            "verify_optimal_mc_sp.json",
            &[
                "verify",
                &pair,
                "--mech",
                "optimal-maxcost",
                "--kind",
                "sp",
                "--candidates",
                "7/5",
            ],
            2,
        ),
        case(
            "verify_optimal_mc_sp_full_grid.json",
            &[
                "verify",
                &pair,
                "--mech",
                "optimal-maxcost",
                "--kind",
                "sp",
                "--extra",
                "7/5",
            ],
            2,
        ),
        case(
            "verify_leftmost_sgsp_clean.json",
            &[
                "verify",
                "--family",
                "max-cost-not-sgsp",
                "--n",
                "2",
                "--mech",
                "leftmost",
                "--kind",
                "sgsp",
            ],
            0,
        ),
        case(
            "ratio_leftmost_sc.json",
            &[
                "ratio",
                "--mech",
                "leftmost",
                "--objective",
                "sc",
                "--seed",
                "5",
                "--trials",
                "300",
            ],
            0,
        ),
    ]
}

fn run_cli(args: &[String]) -> Result<(i32, Vec<u8>), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_accessrange"))
        .args(args)
        .output()
        .map_err(|e| format!("cannot spawn binary: {e}"))?;
    let code = out.status.code().ok_or("binary killed by a signal")?;
    Ok((code, out.stdout))
}

fn cli_golden() -> Outcome {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("tests/golden");
    let update = std::env::var_os("ACCESSRANGE_UPDATE_GOLDEN").is_some();
    let cases = cli_cases();
    // Golden files must not depend on where the repository lives.
    let root = format!("{}/", env!("CARGO_MANIFEST_DIR"));
    for c in &cases {
        let (code, first) = run_cli(&c.args)?;
        let (code2, second) = run_cli(&c.args)?;
        ensure(code == c.exit && code2 == c.exit, || {
            format!("{}: exit {code}, expected {}", c.golden, c.exit)
        })?;
        ensure(first == second, || format!("{}: output differs between runs", c.golden))?;
        let text = String::from_utf8(first).map_err(|e| e.to_string())?;
        ensure(!text.contains(&root), || {
            format!("{}: output embeds an absolute path", c.golden)
        })?;
        let path = dir.join(c.golden);
        if update {
            std::fs::write(&path, &text).map_err(|e| e.to_string())?;
        }
        let expected = std::fs::read_to_string(&path).map_err(|e| format!("{}: {e}", path.display()))?;
        ensure(text == expected, || format!("{}: differs from golden", c.golden))?;
    }
    Ok(format!(
        "{} reports byte-identical, exit codes 0/2 as expected",
        cases.len()
    ))
}

fn main() {
    let pop = population();
    let criteria: Vec<Criterion> = vec![
        ("1 three-agent costs", Box::new(three_agent_costs)),
        (
            "2 social-optimal rule matches optimum",
            Box::new(|| social_optimality(&pop)),
        ),
        (
            "3 max-cost closed form matches enumeration",
            Box::new(|| max_cost_closed_form(&pop)),
        ),
        (
            "4 leftmost rule n-1 bound and tightness",
            Box::new(|| leftmost_bound_and_tightness(&pop)),
        ),
        (
            "5 max-cost 2-approximation and tightness",
            Box::new(|| max_cost_two_approx(&pop)),
        ),
        ("6 incentive suites", Box::new(incentive_suites)),
        ("7 lower-bound floors", Box::new(lower_bound_floors)),
        ("8 CLI golden reports and exit codes", Box::new(cli_golden)),
    ];
    let mut failed = 0;
    for (name, check) in &criteria {
        let start = Instant::now();
        let outcome =
            std::panic::catch_unwind(std::panic::AssertUnwindSafe(check)).unwrap_or_else(|_| Err("panicked".into()));
        let secs = start.elapsed().as_secs_f64();
        match outcome {
            Ok(detail) => println!("PASS  criterion {name}: {detail} [{secs:.1}s]"),
            Err(why) => {
                failed += 1;
                println!("FAIL  criterion {name}: {why} [{secs:.1}s]");
            }
        }
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
