mod commands;
mod io;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::Value;
use simpfib::Budget;

#[derive(Parser)]
#[command(
    name = "simpfib",
    version,
    about = "Contiguity, simplicial fibrations and exact scat / TC / genus on small complexes"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print machine-readable JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Longest contiguity chain accepted as a witness.
    #[arg(long, global = true, default_value_t = 8)]
    max_steps: usize,
    /// Path window `W`: windows `[−W, W]` or `[0, W]` depending on the command.
    #[arg(long, global = true, default_value_t = 3)]
    window: usize,
    /// Cap on candidate cover pieces.
    #[arg(long, global = true, default_value_t = 4096)]
    max_cover: usize,
    /// Wall-clock soft cap in seconds; on expiry the best known result is
    /// reported with `exact: false`.
    #[arg(long, global = true)]
    time_limit: Option<f64>,
    /// Reserved; every search is deterministic.
    #[arg(long, global = true)]
    seed: Option<u64>,
}

#[derive(Subcommand)]
enum Command {
    /// Check a complex, map, path, homotopy, lift problem or certificate file.
    Validate { file: PathBuf },
    /// Whether two maps are contiguous.
    Contiguity { f: PathBuf, g: PathBuf },
    /// Shortest contiguity chain between two maps.
    Chain { f: PathBuf, g: PathBuf },
    /// Strong-collapse core.
    Core { complex: String },
    /// Categorical product.
    Product { left: String, right: String },
    /// Pullback of `f: K → M` and `g: L → M`.
    Pullback { f: PathBuf, g: PathBuf },
    /// Cylinder `K × I_m`.
    Cylinder {
        complex: String,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Solve a lift problem.
    Lift { problem: PathBuf },
    /// Exhaustive lift census on the sample family.
    SampleFibration { map: PathBuf },
    /// Fiber of a map over a vertex.
    Fiber {
        map: PathBuf,
        #[arg(long)]
        over: u32,
    },
    /// Fiber transport along a path.
    Transport { map: PathBuf, path: PathBuf },
    /// Lift for the path fibration `(α, ω)`.
    PathLift { input: PathBuf },
    /// Factorization `K → P_f → L` of a map.
    Factorize { map: PathBuf },
    /// Factorization of the diagonal through the path complex.
    DiagFactorize { complex: String },
    /// Simplicial LS category.
    Scat { complex: String },
    /// Discrete topological complexity.
    Tc { complex: String },
    /// Švarc genus (strict sections).
    Genus { map: PathBuf },
    /// Švarc genus with sections up to contiguity.
    Hgenus { map: PathBuf },
    /// Check scat(E) + 1 ≤ (scat(B) + 1)(scat(F) + 1).
    Varadarajan { map: PathBuf },
    /// Sg of the based path fibration over growing windows against scat.
    ScatGenus {
        complex: String,
        #[arg(long)]
        v0: Option<u32>,
    },
    /// Re-check a cover certificate.
    VerifyCert { certificate: PathBuf },
}

/// What a command reports and how the process should exit.
pub struct Outcome {
    pub report: Value,
    pub status: Status,
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum Status {
    Ok,
    Violated,
    Budget,
}

impl Outcome {
    pub fn ok(report: Value) -> Outcome {
        Outcome {
            report,
            status: Status::Ok,
        }
    }

    pub fn with(report: Value, status: Status) -> Outcome {
        Outcome { report, status }
    }
}

fn budget(cli: &Cli) -> Budget {
    let b = Budget {
        max_cover: cli.max_cover,
        ..Budget::default()
    }
    .with_max_steps(cli.max_steps);
    match cli.time_limit {
        Some(s) => b.with_time_limit(Duration::from_secs_f64(s.max(0.0))),
        None => b,
    }
}

fn run(cli: &Cli) -> anyhow::Result<Outcome> {
    use commands as c;
    let b = budget(cli);
    let w = cli.window;
    match &cli.command {
        Command::Validate { file } => c::validate(file),
        Command::Contiguity { f, g } => c::contiguity(f, g),
        Command::Chain { f, g } => c::chain(f, g, &b),
        Command::Core { complex } => c::core(complex),
        Command::Product { left, right } => c::product(left, right),
        Command::Pullback { f, g } => c::pullback(f, g),
        Command::Cylinder { complex, m } => c::cylinder(complex, *m),
        Command::Lift { problem } => c::lift(problem, &b),
        Command::SampleFibration { map } => c::sample_fibration(map, &b),
        Command::Fiber { map, over } => c::fiber(map, *over),
        Command::Transport { map, path } => c::transport(map, path, &b),
        Command::PathLift { input } => c::path_lift(input, &b),
        Command::Factorize { map } => c::factorize(map, w, &b),
        Command::DiagFactorize { complex } => c::diag_factorize(complex, w, &b),
        Command::Scat { complex } => c::scat(complex, &b),
        Command::Tc { complex } => c::tc(complex, &b),
        Command::Genus { map } => c::genus(map, false, &b),
        Command::Hgenus { map } => c::genus(map, true, &b),
        Command::Varadarajan { map } => c::varadarajan(map, &b),
        Command::ScatGenus { complex, v0 } => c::scat_genus(complex, *v0, w, &b),
        Command::VerifyCert { certificate } => c::verify_cert(certificate),
    }
}

/// `key: value` lines, with nested values as compact JSON.
fn human(v: &Value) -> String {
    match v {
        Value::Object(fields) => fields
            .iter()
            .map(|(k, v)| match v {
                Value::String(s) => format!("{k:<16} {s}"),
                other => format!("{k:<16} {other}"),
            })
            .collect::<Vec<_>>()
            .join("\n"),
        other => other.to_string(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(out) => {
            if cli.json {
                println!(
                    "{}",
                    serde_json::to_string(&out.report).expect("reports serialize")
                );
            } else {
                println!("{}", human(&out.report));
            }
            ExitCode::from(match out.status {
                Status::Ok => 0,
                Status::Violated => 2,
                Status::Budget => 3,
            })
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            let capped = e.chain().any(|c| {
                matches!(
                    c.downcast_ref::<simpfib::Error>(),
                    Some(simpfib::Error::CapExceeded { .. })
                )
            });
            ExitCode::from(if capped { 3 } else { 1 })
        }
    }
}
