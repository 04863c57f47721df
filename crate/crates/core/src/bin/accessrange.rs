use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

use accessrange::harness::io::{parse_config, read_instance_file, serialize_instance};
use accessrange::harness::report::to_json;
use accessrange::harness::{
    cmd_eval, cmd_optimal, cmd_ratio, cmd_run, cmd_verify, cmd_witness, ExitStatus, Grid, HarnessError, RunConfig,
    VerifyTarget,
};
use accessrange::verification::{IncentiveKind, WitnessFamily};
use accessrange::{MechanismId, Objective, Rational};

#[derive(Parser)]
#[command(
    name = "accessrange",
    version,
    about = "Access-range mechanisms: run, optimize and audit"
)]
struct Cli {
    /// JSON config document supplying defaults for the run settings.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Clone, Copy, ValueEnum)]
enum ObjectiveArg {
    Sc,
    Mc,
}

impl From<ObjectiveArg> for Objective {
    fn from(o: ObjectiveArg) -> Self {
        match o {
            ObjectiveArg::Sc => Objective::Sc,
            ObjectiveArg::Mc => Objective::Mc,
        }
    }
}

#[derive(Args, Default)]
struct Overrides {
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long)]
    trials: Option<usize>,
    #[arg(long)]
    n_min: Option<usize>,
    #[arg(long)]
    n_max: Option<usize>,
    /// Locations are drawn from [-bound * d, bound * d].
    #[arg(long, allow_hyphen_values = true)]
    bound: Option<Rational>,
    #[arg(long, allow_hyphen_values = true)]
    d: Option<Rational>,
    #[arg(long)]
    granularity: Option<i64>,
    #[arg(long, allow_hyphen_values = true)]
    eps: Option<Rational>,
    #[arg(long)]
    max_coalition: Option<usize>,
    #[arg(long)]
    node_budget: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Apply a mechanism to an instance file.
    Run {
        instance: PathBuf,
        #[arg(long)]
        mech: MechanismId,
    },
    /// Costs under an explicit range [a, b].
    Eval {
        instance: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        a: Rational,
        #[arg(long, allow_hyphen_values = true)]
        b: Rational,
    },
    /// Exact optimum with the evaluated breakpoints.
    Optimal {
        instance: PathBuf,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
    },
    /// Search for profitable misreports. Exits 2 when one is found.
    Verify {
        /// Instance file; omit when using --family.
        instance: Option<PathBuf>,
        #[arg(long, conflicts_with = "instance")]
        family: Option<WitnessFamily>,
        #[arg(long, default_value_t = 2)]
        n: usize,
        #[arg(long)]
        mech: MechanismId,
        #[arg(long)]
        kind: IncentiveKind,
        /// Extra misreport values, comma separated.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true)]
        extra: Vec<Rational>,
        /// Search exactly these report values instead of the standard grid.
        #[arg(long, value_delimiter = ',', allow_hyphen_values = true, conflicts_with = "extra")]
        candidates: Vec<Rational>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Worst approximation ratio over seeded random instances.
    Ratio {
        #[arg(long)]
        mech: MechanismId,
        #[arg(long, value_enum)]
        objective: ObjectiveArg,
        /// Also write the per-draw CSV here.
        #[arg(long)]
        csv: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Emit the profiles of a witness family as instance files.
    Witness {
        #[arg(long)]
        family: WitnessFamily,
        #[arg(long)]
        n: usize,
        /// Directory that receives one instance file per profile.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
}

fn load_config(path: Option<&Path>, overrides: &Overrides) -> Result<RunConfig, HarnessError> {
    let mut cfg = RunConfig::default();
    if let Some(path) = path {
        let bytes =
            std::fs::read(path).map_err(|e| HarnessError::Usage(format!("cannot read {}: {e}", path.display())))?;
        cfg = parse_config(&bytes, cfg)?;
    }
    if let Some(v) = overrides.seed {
        cfg.seed = v;
    }
    if let Some(v) = overrides.trials {
        cfg.trials = v;
    }
    if let Some(v) = overrides.n_min {
        cfg.n_range.0 = v;
    }
    if let Some(v) = overrides.n_max {
        cfg.n_range.1 = v;
    }
    if let Some(v) = overrides.bound {
        cfg.coordinate_bound = v;
    }
    if let Some(v) = overrides.d {
        cfg.d = v;
    }
    if let Some(v) = overrides.granularity {
        cfg.granularity = v;
    }
    if let Some(v) = overrides.eps {
        cfg.eps = v;
    }
    if let Some(v) = overrides.max_coalition {
        cfg.max_coalition = v;
    }
    if let Some(v) = overrides.node_budget {
        cfg.node_budget = v;
    }
    cfg.validate().map_err(HarnessError::Config)?;
    Ok(cfg)
}

/// Writes through a sibling temp file so readers never see a partial report.
fn write_atomically(path: &Path, contents: &str) -> Result<(), HarnessError> {
    let io_err = |e: std::io::Error| HarnessError::Usage(format!("cannot write {}: {e}", path.display()));
    let tmp = path.with_extension("tmp-write");
    std::fs::write(&tmp, contents).map_err(io_err)?;
    std::fs::rename(&tmp, path).map_err(io_err)
}

fn emit(out: Option<&Path>, contents: &str) -> Result<(), HarnessError> {
    match out {
        Some(path) => write_atomically(path, contents),
        None => {
            print!("{contents}");
            Ok(())
        }
    }
}

fn execute(cli: Cli) -> Result<ExitStatus, HarnessError> {
    let out = cli.out.as_deref();
    let config = cli.config.as_deref();
    if cli.format == Format::Csv && !matches!(cli.command, Command::Ratio { .. }) {
        return Err(HarnessError::Usage("--format csv is only available for `ratio`".into()));
    }
    match cli.command {
        Command::Run { instance, mech } => {
            let file = read_instance_file(&instance)?;
            emit(out, &to_json(&cmd_run(&file, mech)))?;
        }
        Command::Eval { instance, a, b } => {
            let file = read_instance_file(&instance)?;
            emit(out, &to_json(&cmd_eval(&file, a, b)?))?;
        }
        Command::Optimal { instance, objective } => {
            let file = read_instance_file(&instance)?;
            emit(out, &to_json(&cmd_optimal(&file, objective.into())))?;
        }
        Command::Verify {
            instance,
            family,
            n,
            mech,
            kind,
            extra,
            candidates,
            overrides,
        } => {
            let cfg = load_config(config, &overrides)?;
            let target = match (instance, family) {
                (Some(path), None) => VerifyTarget::File(read_instance_file(&path)?),
                (None, Some(family)) => VerifyTarget::Family {
                    family,
                    n,
                    d: cfg.d,
                    eps: cfg.eps,
                },
                _ => return Err(HarnessError::Usage("verify needs an instance file or --family".into())),
            };
            let grid = if candidates.is_empty() {
                Grid::Extend(extra)
            } else {
                Grid::Only(candidates)
            };
            let report = cmd_verify(&target, mech, kind, &cfg, &grid)?;
            emit(out, &to_json(&report))?;
            return Ok(report.exit_status());
        }
        Command::Ratio {
            mech,
            objective,
            csv,
            overrides,
        } => {
            let cfg = load_config(config, &overrides)?;
            let (doc, rows) = cmd_ratio(mech, objective.into(), &cfg)?;
            match cli.format {
                Format::Json => emit(out, &to_json(&doc))?,
                Format::Csv => emit(out, &rows)?,
            }
            if let Some(path) = csv {
                write_atomically(&path, &rows)?;
            }
        }
        Command::Witness {
            family,
            n,
            dir,
            overrides,
        } => {
            let cfg = load_config(config, &overrides)?;
            let doc = cmd_witness(family, n, cfg.d, cfg.eps)?;
            if let Some(dir) = dir {
                std::fs::create_dir_all(&dir)
                    .map_err(|e| HarnessError::Usage(format!("cannot create {}: {e}", dir.display())))?;
                let profiles = accessrange::verification::gen_witness(family, n, cfg.d, cfg.eps)?;
                for (k, inst) in profiles.iter().enumerate() {
                    let name = format!("{family}-{k}");
                    write_atomically(
                        &dir.join(format!("{name}.json")),
                        &serialize_instance(inst, Some(&name)),
                    )?;
                }
            }
            emit(out, &to_json(&doc))?;
        }
    }
    Ok(ExitStatus::Success)
}

fn main() -> ExitCode {
    // Exit code 2 means "violation found", so clap's own usage status is
    // remapped to the generic error code.
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(ExitStatus::Error as u8)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match execute(cli) {
        Ok(status) => ExitCode::from(status as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(ExitStatus::Error as u8)
        }
    }
}
