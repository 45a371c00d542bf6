//! `otcell` command line: single runs, sigma sweeps and the oracle check.

use std::ffi::OsString;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::association::{Instance, SolverConfig, StepSchedule};
use crate::density::DensitySpec;
use crate::error::{Error, Result};
use crate::metrics::{default_sigmas, sweep_sigma, write_node_stats, write_sweep_csv, SweepSettings};
use crate::oracle::oracle_check;
use crate::scenario::{load_scenario, Scenario};

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_NOT_CONVERGED: i32 = 3;
pub const EXIT_CHECK_FAILED: i32 = 4;

/// Relative objective gap under which a solver run counts as matching the oracle.
pub const ORACLE_MATCH_TOLERANCE: f64 = 1e-6;
/// Share of oracle trials that must match.
pub const ORACLE_MATCH_SHARE: f64 = 0.95;

#[derive(Debug, Parser)]
#[command(name = "otcell", version, about = "Delay-optimal UAV/BS cell association")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Solve one scenario and write the partition, per-node stats and trace.
    Run(RunArgs),
    /// Compare max-SNR and transport association over hotspot spreads.
    Sweep(SweepArgs),
    /// Check the transport iteration against exhaustive search on toy instances.
    OracleCheck(OracleArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum Method {
    Snr,
    Ot,
}

#[derive(Debug, Args)]
struct SolverArgs {
    #[arg(long, default_value_t = SolverConfig::default().tol)]
    tol: f64,
    #[arg(long = "max-iter", default_value_t = SolverConfig::default().max_iter)]
    max_iter: usize,
    #[arg(long, default_value_t = SolverConfig::default().damping)]
    damping: f64,
    /// Keep the damping step fixed instead of shrinking it every iteration.
    #[arg(long = "constant-step")]
    constant_step: bool,
}

impl SolverArgs {
    fn config(&self) -> Result<SolverConfig> {
        let cfg = SolverConfig {
            tol: self.tol,
            max_iter: self.max_iter,
            damping: self.damping,
            schedule: if self.constant_step {
                StepSchedule::Constant
            } else {
                StepSchedule::Diminishing
            },
            ..SolverConfig::default()
        };
        cfg.validate()?;
        Ok(cfg)
    }
}

#[derive(Debug, Args)]
struct RunArgs {
    #[arg(long)]
    scenario: PathBuf,
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], default_values_t = [200usize, 200])]
    grid: Vec<usize>,
    #[arg(long, value_enum, default_value = "ot")]
    method: Method,
    /// Replace the scenario density with a Gaussian hotspot of this spread (m).
    #[arg(long)]
    sigma: Option<f64>,
    /// Payload bits per user, overriding the scenario.
    #[arg(long)]
    b: Option<f64>,
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Args)]
struct SweepArgs {
    #[arg(long)]
    scenario: PathBuf,
    /// Comma-separated spreads in metres [default: 200,400,...,1200].
    #[arg(long)]
    sigma: Option<String>,
    #[arg(long, num_args = 2, value_names = ["NX", "NY"], default_values_t = [200usize, 200])]
    grid: Vec<usize>,
    #[arg(long)]
    b: Option<f64>,
    /// Output CSV file.
    #[arg(long)]
    out: PathBuf,
    #[command(flatten)]
    solver: SolverArgs,
}

#[derive(Debug, Args)]
struct OracleArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    trials: usize,
    #[command(flatten)]
    solver: SolverArgs,
}

/// Parses `args` (including the program name) and runs the command.
/// Returns the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
        }
    };
    let outcome = match cli.command {
        Command::Run(a) => cmd_run(&a),
        Command::Sweep(a) => cmd_sweep(&a),
        Command::OracleCheck(a) => cmd_oracle_check(&a),
    };
    match outcome {
        Ok(code) => code,
        Err(Error::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(e) => {
            eprintln!("error: {e}");
            EXIT_ERROR
        }
    }
}

fn prepare(path: &Path, b: Option<f64>) -> Result<Scenario> {
    let scenario = load_scenario(path)?;
    match b {
        Some(bits) => scenario.with_payload_bits(bits),
        None => Ok(scenario),
    }
}

fn grid_dims(grid: &[usize]) -> Result<(usize, usize)> {
    match grid {
        [nx, ny] if *nx >= 1 && *ny >= 1 => Ok((*nx, *ny)),
        _ => Err(Error::Usage("--grid needs two positive integers".into())),
    }
}

/// Writes via a sibling temp file and a rename.
fn write_atomic(path: &Path, bytes: &[u8]) -> Result<()> {
    let mut tmp = path.as_os_str().to_owned();
    tmp.push(".tmp");
    let tmp = PathBuf::from(tmp);
    std::fs::write(&tmp, bytes).map_err(|e| Error::io(&tmp, e))?;
    std::fs::rename(&tmp, path).map_err(|e| Error::io(path, e))
}

fn cmd_run(args: &RunArgs) -> Result<i32> {
    let (nx, ny) = grid_dims(&args.grid)?;
    let cfg = args.solver.config()?;
    let mut scenario = prepare(&args.scenario, args.b)?;
    if let Some(sigma) = args.sigma {
        let center = match scenario.density() {
            DensitySpec::Gaussian { center, .. } => *center,
            _ => {
                let (x, y) = scenario.area().center();
                [x, y]
            }
        };
        scenario = scenario.with_density(DensitySpec::Gaussian { center, sigma })?;
    }
    let grid = scenario.density().build(*scenario.area(), nx, ny)?;
    let inst = Instance::new(&scenario, &grid)?;
    let snr = inst.snr_association();
    let (partition, trace) = match args.method {
        Method::Snr => {
            let violation = inst.fixed_point_violation(&snr, cfg.mass_floor)?;
            let trace = crate::association::SolveTrace {
                initial_objective: inst.average_delay(&snr),
                violation,
                ..Default::default()
            };
            (snr, trace)
        }
        Method::Ot => inst.ot_association(&cfg, &snr)?,
    };

    std::fs::create_dir_all(&args.out).map_err(|e| Error::io(&args.out, e))?;
    let mut labels = Vec::new();
    partition.write_label_grid(&mut labels)?;
    write_atomic(&args.out.join("labels.csv"), &labels)?;

    let mut stats = Vec::new();
    write_node_stats(&inst.node_stats(&partition), &mut stats)?;
    write_atomic(&args.out.join("masses.csv"), &stats)?;

    let mut trace_csv = String::from("iteration,objective_s,max_mass_change\n");
    let _ = writeln!(trace_csv, "0,{},", trace.initial_objective);
    for (t, (obj, change)) in trace.objective.iter().zip(&trace.max_mass_change).enumerate() {
        let _ = writeln!(trace_csv, "{},{obj},{change}", t + 1);
    }
    write_atomic(&args.out.join("trace.csv"), trace_csv.as_bytes())?;

    let method = match args.method {
        Method::Snr => "snr",
        Method::Ot => "ot",
    };
    let delay = inst.average_delay(&partition);
    let converged = matches!(args.method, Method::Snr) || trace.converged;
    let summary = format!(
        "method={method}\ngrid={nx}x{ny}\naverage_delay_s={delay}\nconverged={converged}\niterations={}\nfixed_point_violation={}\n",
        trace.iterations, trace.violation
    );
    write_atomic(&args.out.join("summary.txt"), summary.as_bytes())?;
    print!("{summary}");

    Ok(if converged { EXIT_OK } else { EXIT_NOT_CONVERGED })
}

fn parse_sigmas(text: &str) -> Result<Vec<f64>> {
    let sigmas = text
        .split(',')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .map(|s| {
            s.parse::<f64>()
                .map_err(|_| Error::Usage(format!("bad sigma value {s:?}")))
        })
        .collect::<Result<Vec<_>>>()?;
    if sigmas.is_empty() {
        return Err(Error::Usage("sigma list is empty".into()));
    }
    Ok(sigmas)
}

fn cmd_sweep(args: &SweepArgs) -> Result<i32> {
    let (nx, ny) = grid_dims(&args.grid)?;
    let sigmas = match &args.sigma {
        Some(text) => parse_sigmas(text)?,
        None => default_sigmas(),
    };
    let settings = SweepSettings {
        nx,
        ny,
        solver: args.solver.config()?,
    };
    let scenario = prepare(&args.scenario, args.b)?;
    let rows = sweep_sigma(&scenario, &sigmas, &settings)?;
    let mut csv = Vec::new();
    write_sweep_csv(&rows, &mut csv)?;
    write_atomic(&args.out, &csv)?;
    print!("{}", String::from_utf8_lossy(&csv));
    Ok(EXIT_OK)
}

fn cmd_oracle_check(args: &OracleArgs) -> Result<i32> {
    if args.trials == 0 {
        return Err(Error::Usage("--trials must be >= 1".into()));
    }
    let report = oracle_check(args.seed, args.trials, &args.solver.config()?)?;
    let n = report.trials.len();
    let matches = report.matches(ORACLE_MATCH_TOLERANCE);
    println!("seed={} trials={n}", report.seed);
    println!("matches_within_{ORACLE_MATCH_TOLERANCE:e}={matches}");
    println!("converged={}", report.converged());
    println!("max_relative_gap={}", report.max_gap());
    println!("max_converged_violation={}", report.max_converged_violation());
    for t in report.worse_fixed_points(ORACLE_MATCH_TOLERANCE) {
        println!(
            "worse_fixed_point trial={} points={} gap={}",
            t.trial, t.points, t.relative_gap
        );
    }
    let pass = matches as f64 >= ORACLE_MATCH_SHARE * n as f64 && report.certificates_hold();
    println!("{}", if pass { "PASS" } else { "FAIL" });
    Ok(if pass { EXIT_OK } else { EXIT_CHECK_FAILED })
}
