use anyhow::{bail, Context};
use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;
use torelli::lattice::HVector;
use torelli::report::{self, CheckTarget, Report, RunConfig};

/// Census, truncated-page and s-class checks for the genus-3 Torelli group.
///
/// Log verbosity is read from TORELLI_LOG (e.g. TORELLI_LOG=debug).
#[derive(Parser)]
#[command(name = "torelli", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Restrict `types` and `cells` to one dimension.
    #[arg(long, global = true)]
    dim: Option<usize>,
    /// Truncation K.
    #[arg(long = "K", global = true, default_value_t = 4)]
    k: i64,
    /// Ladder parameters `m,n` with x = m·α + n·y.
    #[arg(long, global = true, value_parser = parse_mn, default_value = "1,1")]
    mn: (i64, i64),
    /// Coefficient bound of the splitting family.
    #[arg(long, global = true, default_value_t = 1)]
    height: i64,
    /// Use only the first N splittings of the sorted family.
    #[arg(long, global = true)]
    max_splittings: Option<usize>,
    /// Splitting family as `height=H[,max=N]`.
    #[arg(long, global = true)]
    splittings: Option<String>,
    /// Class x as six comma-separated coordinates in the basis a1,b1,a2,b2,a3,b3.
    #[arg(long, global = true, value_parser = parse_vector)]
    x: Option<HVector>,
    /// Class y, same format as x.
    #[arg(long, global = true, value_parser = parse_vector)]
    y: Option<HVector>,
    /// Seed for randomized samples.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Write the JSON report here instead of standard output.
    #[arg(long, global = true)]
    json: Option<PathBuf>,
}

#[derive(Subcommand)]
enum Command {
    /// Combinatorial types of multicurves per cell dimension.
    Types,
    /// Cell dimensions, cd bounds and boundary orientations on the census.
    Cells,
    /// The ladder complex for `--mn` truncated at `--K`.
    Ladder,
    /// Injectivity or kernel of one differential: d31, d22, d13, d13-tilde.
    Check { which: CheckTarget },
    /// Kernels of the (1,3) differentials with sample basis vectors.
    Kernel,
    /// s-class module verification.
    Smodule {
        #[arg(default_value = "verify")]
        action: String,
    },
    /// Homology-level lantern relation checks.
    Lantern {
        #[arg(default_value = "verify")]
        action: String,
        #[arg(long, default_value = "default")]
        suite: String,
    },
    /// All of the above, merged.
    Report {
        /// Include the kernel bases.
        #[arg(long)]
        all: bool,
    },
}

fn parse_mn(s: &str) -> Result<(i64, i64), String> {
    let (m, n) = s.split_once(',').ok_or("expected m,n")?;
    let p = |t: &str| t.trim().parse::<i64>().map_err(|e| e.to_string());
    Ok((p(m)?, p(n)?))
}

fn parse_vector(s: &str) -> Result<HVector, String> {
    let c: Vec<i64> =
        s.split(',').map(|t| t.trim().parse::<i64>().map_err(|e| e.to_string())).collect::<Result<_, _>>()?;
    let c: [i64; 6] = c.try_into().map_err(|_| "expected six coordinates".to_string())?;
    Ok(HVector::new(c))
}

fn config(cli: &Cli) -> anyhow::Result<RunConfig> {
    let mut c = RunConfig {
        k: cli.k,
        mn: cli.mn,
        height: cli.height,
        dim: cli.dim,
        max_splittings: cli.max_splittings,
        seed: cli.seed,
        ..RunConfig::default()
    };
    if let Some(x) = cli.x {
        c.x = x;
    }
    if let Some(y) = cli.y {
        c.y = y;
    }
    if let Some(spec) = &cli.splittings {
        for part in spec.split(',') {
            match part.split_once('=') {
                Some(("height", v)) => c.height = v.parse().context("splitting height")?,
                Some(("max", v)) => c.max_splittings = Some(v.parse().context("splitting cap")?),
                _ => bail!("cannot parse --splittings {spec:?}; expected height=H[,max=N]"),
            }
        }
    }
    Ok(c)
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let c = config(cli)?;
    let r = match &cli.command {
        Command::Types => report::cmd_types(&c)?,
        Command::Cells => report::cmd_cells(&c)?,
        Command::Ladder => report::cmd_ladder(&c)?,
        Command::Check { which } => report::cmd_check(&c, *which)?,
        Command::Kernel => report::cmd_kernel(&c)?,
        Command::Smodule { action } => {
            if action != "verify" {
                bail!("unknown smodule action {action:?}");
            }
            report::cmd_smodule(&c)?
        }
        Command::Lantern { action, suite } => {
            if action != "verify" {
                bail!("unknown lantern action {action:?}");
            }
            report::cmd_lantern(&c, suite)?
        }
        Command::Report { all } => report::cmd_report(&c, *all)?,
    };
    Ok(r)
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::new().filter_or("TORELLI_LOG", "warn")).init();
    let cli = Cli::parse();
    let report = match run(&cli) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e:#}");
            return ExitCode::from(2);
        }
    };
    let text = serde_json::to_string_pretty(&report).expect("report serializes");
    match &cli.json {
        Some(path) => {
            if let Err(e) = std::fs::write(path, text + "\n") {
                eprintln!("error: cannot write {}: {e}", path.display());
                return ExitCode::from(2);
            }
            for (k, v) in &report.verdicts {
                println!("{k}: {v}");
            }
        }
        None => println!("{text}"),
    }
    for m in &report.mismatches {
        eprintln!("MISMATCH {}: expected {}, got {}", m.key, m.expected, m.actual);
    }
    if report.passed() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
