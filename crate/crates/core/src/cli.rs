//! Command-line front end. [`run`] parses arguments, calls into the library
//! and writes results; it performs no arithmetic of its own beyond unit
//! rescaling for `--bits`.
//!
//! Exit codes: 0 on success, 1 when a computation or input file is rejected,
//! 2 on a usage error. Output files are written only after every result is
//! available, so a failed run never leaves a partial file behind.

use std::f64::consts::LN_2;
use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use num_complex::Complex64;
use serde::Serialize;

use crate::discord::{discord, discord_swapped, DiscordResult};
use crate::error::Error;
use crate::gaussian::{gaussian_discord, gaussian_entropy, gaussian_mutual_information, symplectic_eigenvalues, Mode};
use crate::io::{format_g17, load_covariance, load_density_matrix, state_to_json, to_json};
use crate::measure::{everett_state, measurement_mutual_information, Observable};
use crate::prob::{mutual_information, parse_distribution, parse_joint, shannon_entropy};
use crate::qstate::{
    araki_lieb_check, density_from_pure, partial_trace, quantum_mutual_information, random_density_matrix,
    von_neumann_entropy, DensityMatrix, Subsystem,
};
use crate::quench::{quench_report, sweep_temperature, QuenchParams, QuenchReport, DEFAULT_TIME};

/// Seed used when neither `--seed` nor `QCORR_SEED` is given.
pub const DEFAULT_SEED: u64 = 0;

/// Environment variable overriding [`DEFAULT_SEED`].
pub const SEED_ENV: &str = "QCORR_SEED";

#[derive(Debug, Parser)]
#[command(name = "qcorr", version, about = "Classical and quantum correlation measures")]
struct Cli {
    /// Seed for random generation (overrides QCORR_SEED).
    #[arg(long, global = true)]
    seed: Option<u64>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Shannon entropy of a distribution.
    Entropy {
        /// Comma-separated probabilities, e.g. 0.5,0.5
        #[arg(long)]
        dist: String,
        /// Report in bits instead of nats.
        #[arg(long)]
        bits: bool,
    },
    /// Mutual information of a joint distribution.
    MutualInfo {
        /// Row-major table with rows separated by ';', e.g. "0.4,0.1;0.2,0.3"
        #[arg(long)]
        joint: String,
        #[arg(long)]
        bits: bool,
    },
    /// Entropic summary of a density matrix, or generate a random one.
    Qstate(QstateArgs),
    /// Discord of a two-qubit state.
    Discord {
        #[arg(long)]
        state: PathBuf,
        /// Measure subsystem B instead of A.
        #[arg(long)]
        swapped: bool,
    },
    /// Entropies and discord of a two-mode Gaussian state.
    Gaussian {
        #[arg(long)]
        cov: PathBuf,
        /// Measured mode for the discord (1 or 2).
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u8).range(1..=2))]
        mode: u8,
    },
    /// Sudden-quench thermodynamics.
    #[command(subcommand)]
    Quench(QuenchCommand),
    /// Observable-level versus state-level correlations of the Everett state.
    Everett {
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
        alpha: f64,
        #[arg(long, default_value_t = std::f64::consts::FRAC_1_SQRT_2, allow_negative_numbers = true)]
        beta: f64,
        /// Number of pointer overlaps on the uniform grid over [0, 1].
        #[arg(long, default_value_t = 11)]
        points: usize,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Debug, Args)]
struct QstateArgs {
    /// State file to summarize.
    #[arg(long, conflicts_with_all = ["random", "dims", "rank"], required_unless_present = "random")]
    state: Option<PathBuf>,
    /// Generate a random state instead.
    #[arg(long)]
    random: bool,
    /// Subsystem dimensions for --random, e.g. 2,2
    #[arg(long, default_value = "2,2", requires = "random")]
    dims: String,
    /// Rank for --random (defaults to full rank).
    #[arg(long, requires = "random")]
    rank: Option<usize>,
    /// Where to write the generated state (standard output if absent).
    #[arg(long, requires = "random")]
    out: Option<PathBuf>,
}

#[derive(Debug, Args)]
struct PhysicalArgs {
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    lambda0: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    omega: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    mass: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    hbar: f64,
    #[arg(long, default_value_t = 1.0, allow_negative_numbers = true)]
    kb: f64,
    /// Evolution time for the discord.
    #[arg(long, default_value_t = DEFAULT_TIME, allow_negative_numbers = true)]
    time: f64,
}

#[derive(Debug, Subcommand)]
enum QuenchCommand {
    /// CSV of every report field over a temperature grid.
    Sweep {
        #[command(flatten)]
        physical: PhysicalArgs,
        #[arg(long, default_value_t = 0.1, allow_negative_numbers = true)]
        t_min: f64,
        #[arg(long, default_value_t = 5.0, allow_negative_numbers = true)]
        t_max: f64,
        #[arg(long, default_value_t = 50)]
        points: usize,
        /// CSV destination (standard output if absent).
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// One report as JSON.
    Point {
        #[command(flatten)]
        physical: PhysicalArgs,
        #[arg(long, allow_negative_numbers = true)]
        beta: f64,
    },
}

enum Failure {
    Usage(String),
    Runtime(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

fn usage_from(flag: &str, e: Error) -> Failure {
    Failure::Usage(format!("invalid value for '--{flag}': {e}"))
}

/// Runs the CLI on `args` (including the program name). `seed_env` is the
/// value of `QCORR_SEED`, if set.
pub fn run<I, T>(args: I, seed_env: Option<&str>, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            let _ = if code == 0 { write!(out, "{text}") } else { write!(err, "{text}") };
            return code;
        }
    };
    match dispatch(cli, seed_env, out) {
        Ok(()) => 0,
        Err(Failure::Usage(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            2
        }
        Err(Failure::Runtime(msg)) => {
            let _ = writeln!(err, "error: {msg}");
            1
        }
    }
}

fn resolve_seed(flag: Option<u64>, env: Option<&str>) -> Result<u64, Failure> {
    if let Some(seed) = flag {
        return Ok(seed);
    }
    match env {
        None => Ok(DEFAULT_SEED),
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Failure::Usage(format!("{SEED_ENV}={s:?} is not an unsigned integer"))),
    }
}

fn dispatch(cli: Cli, seed_env: Option<&str>, out: &mut dyn Write) -> Result<(), Failure> {
    let seed = resolve_seed(cli.seed, seed_env)?;
    match cli.command {
        Command::Entropy { dist, bits } => {
            let d = parse_distribution(&dist).map_err(|e| usage_from("dist", e))?;
            emit_line(out, &format_g17(to_unit(shannon_entropy(&d), bits)))
        }
        Command::MutualInfo { joint, bits } => {
            let j = parse_joint(&joint).map_err(|e| usage_from("joint", e))?;
            emit_line(out, &format_g17(to_unit(mutual_information(&j), bits)))
        }
        Command::Qstate(args) => qstate(args, seed, out),
        Command::Discord { state, swapped } => {
            let rho = load_density_matrix(&state)?;
            let result = if swapped { discord_swapped(&rho)? } else { discord(&rho)? };
            emit_line(out, &to_json(&DiscordJson::from(&result))?)
        }
        Command::Gaussian { cov, mode } => {
            let cm = load_covariance(&cov)?;
            let mode = if mode == 1 { Mode::One } else { Mode::Two };
            let (nu_minus, nu_plus) = symplectic_eigenvalues(&cm)?;
            let summary = GaussianJson {
                symplectic_eigenvalues: [nu_minus, nu_plus],
                entropy: gaussian_entropy(&cm)?,
                mutual_info: gaussian_mutual_information(&cm)?,
                discord: gaussian_discord(&cm, mode)?,
            };
            emit_line(out, &to_json(&summary)?)
        }
        Command::Quench(QuenchCommand::Sweep {
            physical,
            t_min,
            t_max,
            points,
            out: path,
        }) => {
            let params = physical.params(1.0)?;
            crate::quench::temperature_grid(t_min, t_max, points).map_err(|e| match e {
                Error::InvalidParameter { name, .. } => usage_from(&name.replace('_', "-"), e),
                other => other.into(),
            })?;
            let rows = sweep_temperature(&params, t_min, t_max, points, physical.time)?;
            deliver(out, path.as_deref(), &sweep_csv(&rows))
        }
        Command::Quench(QuenchCommand::Point { physical, beta }) => {
            let params = physical.params(beta)?;
            let report = quench_report(&params, physical.time)?;
            emit_line(out, &to_json(&report)?)
        }
        Command::Everett {
            alpha,
            beta,
            points,
            out: path,
        } => {
            if points < 2 {
                return Err(Failure::Usage(format!("'--points' must be at least 2, got {points}")));
            }
            let grid: Vec<f64> = (0..points).map(|k| k as f64 / (points - 1) as f64).collect();
            let rows = everett_demo(Complex64::new(alpha, 0.0), Complex64::new(beta, 0.0), &grid)
                .map_err(|e| match e {
                    Error::InvalidNorm(_) => usage_from("alpha", e),
                    other => other.into(),
                })?;
            deliver(out, path.as_deref(), &everett_csv(&rows))
        }
    }
}

impl PhysicalArgs {
    fn params(&self, beta: f64) -> Result<QuenchParams, Failure> {
        QuenchParams::new(self.mass, self.omega, self.lambda0, beta, self.hbar, self.kb).map_err(|e| match e {
            Error::InvalidParameter { name, .. } => usage_from(name, e),
            other => other.into(),
        })
    }
}

fn qstate(args: QstateArgs, seed: u64, out: &mut dyn Write) -> Result<(), Failure> {
    if args.random {
        let dims = parse_dims(&args.dims)?;
        let rank = args.rank.unwrap_or(dims.0 * dims.1);
        let rho = random_density_matrix(dims, rank, seed).map_err(|e| usage_from("rank", e))?;
        let mut text = state_to_json(&rho)?;
        text.push('\n');
        return deliver(out, args.out.as_deref(), &text);
    }
    let path = args.state.expect("clap requires --state without --random");
    let rho = load_density_matrix(&path)?;
    emit_line(out, &to_json(&StateSummary::new(&rho)?)?)
}

fn parse_dims(s: &str) -> Result<(usize, usize), Failure> {
    let parts: Vec<&str> = s.split(',').map(str::trim).collect();
    let bad = || Failure::Usage(format!("invalid value for '--dims': {s:?}, expected two positive integers"));
    if parts.len() != 2 {
        return Err(bad());
    }
    let a: usize = parts[0].parse().map_err(|_| bad())?;
    let b: usize = parts[1].parse().map_err(|_| bad())?;
    if a == 0 || b == 0 {
        return Err(bad());
    }
    Ok((a, b))
}

fn to_unit(nats: f64, bits: bool) -> f64 {
    if bits {
        nats / LN_2
    } else {
        nats
    }
}

fn emit_line(out: &mut dyn Write, text: &str) -> Result<(), Failure> {
    writeln!(out, "{text}").map_err(|e| Failure::Runtime(e.to_string()))
}

/// Writes `text` to `path`, or to `out` when no path is given.
fn deliver(out: &mut dyn Write, path: Option<&Path>, text: &str) -> Result<(), Failure> {
    match path {
        Some(p) => fs::write(p, text).map_err(|e| Failure::Runtime(format!("{}: {e}", p.display()))),
        None => out.write_all(text.as_bytes()).map_err(|e| Failure::Runtime(e.to_string())),
    }
}

#[derive(Serialize)]
struct DiscordJson {
    mutual_info: f64,
    classical_corr: f64,
    discord: f64,
    theta: f64,
    phi: f64,
    evaluations: usize,
}

impl From<&DiscordResult> for DiscordJson {
    fn from(r: &DiscordResult) -> Self {
        Self {
            mutual_info: r.mutual_info,
            classical_corr: r.classical_corr,
            discord: r.discord,
            theta: r.optimal_basis.theta(),
            phi: r.optimal_basis.phi(),
            evaluations: r.trace.evaluations,
        }
    }
}

#[derive(Serialize)]
struct GaussianJson {
    symplectic_eigenvalues: [f64; 2],
    entropy: f64,
    mutual_info: f64,
    discord: f64,
}

#[derive(Serialize)]
struct StateSummary {
    dims: [usize; 2],
    eigenvalues: Vec<f64>,
    entropy: f64,
    #[serde(skip_serializing_if = "Option::is_none")]
    bipartite: Option<BipartiteSummary>,
}

#[derive(Serialize)]
struct BipartiteSummary {
    entropy_a: f64,
    entropy_b: f64,
    mutual_info: f64,
    araki_lieb_holds: bool,
}

impl StateSummary {
    fn new(rho: &DensityMatrix) -> crate::Result<Self> {
        let (a, b) = rho.dims();
        let bipartite = if rho.is_bipartite() {
            let al = araki_lieb_check(rho)?;
            Some(BipartiteSummary {
                entropy_a: von_neumann_entropy(&partial_trace(rho, Subsystem::A)?),
                entropy_b: von_neumann_entropy(&partial_trace(rho, Subsystem::B)?),
                mutual_info: quantum_mutual_information(rho)?,
                araki_lieb_holds: al.holds(1e-10),
            })
        } else {
            None
        };
        Ok(Self {
            dims: [a, b],
            eigenvalues: rho.eigenvalues(),
            entropy: von_neumann_entropy(rho),
            bipartite,
        })
    }
}

fn csv_line(values: &[f64]) -> String {
    let cells: Vec<String> = values.iter().map(|v| format_g17(*v)).collect();
    cells.join(",")
}

/// CSV text with [`QuenchReport::CSV_HEADER`] and one row per report.
pub fn sweep_csv(rows: &[QuenchReport]) -> String {
    let mut text = String::from(QuenchReport::CSV_HEADER);
    text.push('\n');
    for r in rows {
        text.push_str(&csv_line(&r.values()));
        text.push('\n');
    }
    text
}

/// One row of [`everett_demo`].
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct EverettRow {
    pub epsilon: f64,
    /// Shannon mutual information of computational-basis outcomes on A and B.
    pub measurement_mi: f64,
    /// Quantum mutual information of the global state.
    pub quantum_mi: f64,
}

/// Correlations of the Everett post-measurement state over pointer overlaps.
pub fn everett_demo(alpha: Complex64, beta: Complex64, epsilons: &[f64]) -> crate::Result<Vec<EverettRow>> {
    let z = Observable::computational(2);
    epsilons
        .iter()
        .map(|&epsilon| {
            let rho = density_from_pure(&everett_state(alpha, beta, epsilon)?);
            Ok(EverettRow {
                epsilon,
                measurement_mi: measurement_mutual_information(&rho, &z, &z)?,
                quantum_mi: quantum_mutual_information(&rho)?,
            })
        })
        .collect()
}

pub fn everett_csv(rows: &[EverettRow]) -> String {
    let mut text = String::from("epsilon,measurement_mi,quantum_mi\n");
    for r in rows {
        text.push_str(&csv_line(&[r.epsilon, r.measurement_mi, r.quantum_mi]));
        text.push('\n');
    }
    text
}
