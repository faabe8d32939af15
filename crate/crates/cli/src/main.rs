#![allow(clippy::neg_cmp_op_on_partial_ord)]

use std::ffi::OsString;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, CommandFactory, FromArgMatches, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use sha2::{Digest, Sha256};

mod commands;
mod config;
mod output;

use output::{Emitter, Format};

/// Validation failure detected by the driver itself.
#[derive(Debug, thiserror::Error)]
#[error("{0}")]
pub struct Invalid(pub String);

#[derive(Parser, Debug)]
#[command(
    name = "hadamard-ineq",
    version,
    about = "Sobolev-type inequalities and porous-medium smoothing on model manifolds"
)]
struct Cli {
    #[command(flatten)]
    global: Global,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Debug)]
struct Global {
    /// Output directory.
    #[arg(long, global = true, env = "HADAMARD_INEQ_OUT", default_value = "out")]
    out_dir: PathBuf,
    /// Format of tabular output.
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Seed for randomized initial data.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Worker threads; 0 uses all cores. Results do not depend on it.
    #[arg(long, global = true, default_value_t = 0)]
    threads: usize,
    /// `key = value` file; command-line flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Build a model function and export ψ, ψ′ and its curvature report.
    Model(commands::ModelCmd),
    /// Supremum B(w, p) over a grid of exponents.
    Sweep(commands::SweepCmd),
    /// Dirichlet spectral gap and Poincaré constant on balls.
    Poincare(commands::PoincareCmd),
    /// Minimize ‖g′‖₂/‖g‖_p on a ball.
    Rayleigh(commands::RayleighCmd),
    /// Lower bounds on the nonradial constant along growing radii.
    Certificate(commands::CertificateCmd),
    /// Porous-medium run with smoothing-rate fits.
    Pme(commands::PmeCmd),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ProfileKind {
    Euclidean,
    Hyperbolic,
    Power,
    Quasi,
}

/// Parses `args`, filling options missing on the command line from the
/// config file named by `--config`.
fn parse(args: Vec<OsString>) -> Result<Cli, clap::Error> {
    let mut command = Cli::command();
    command.build();
    let probe = command
        .clone()
        .ignore_errors(true)
        .try_get_matches_from(&args)?;
    let Some((name, sub)) = probe.subcommand() else {
        return Cli::try_parse_from(args);
    };
    let Some(path) = sub.get_one::<PathBuf>("config") else {
        return Cli::try_parse_from(args);
    };
    let sub_command = command
        .find_subcommand(name)
        .expect("parsed subcommand exists");
    let extra = config::read(path)
        .and_then(|entries| config::to_args(&entries, sub_command, sub))
        .map_err(|e| {
            command
                .clone()
                .error(clap::error::ErrorKind::ValueValidation, e)
        })?;
    let mut args = args;
    args.extend(extra);
    let matches = command.try_get_matches_from(args)?;
    Cli::from_arg_matches(&matches)
}

/// Hash of the resolved parameters; output location and thread count are
/// left out so they cannot change the files.
fn config_hash<S: Serialize>(command: &S, global: &Global) -> String {
    #[derive(Serialize)]
    struct Hashed<'a, S> {
        command: &'a S,
        format: Format,
        seed: u64,
    }
    let text = serde_json::to_string(&Hashed {
        command,
        format: global.format,
        seed: global.seed,
    })
    .expect("parameters serialize");
    hex::encode(&Sha256::digest(text.as_bytes())[..8])
}

fn run(cli: Cli) -> anyhow::Result<()> {
    if cli.global.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.global.threads)
            .build_global()?;
    }
    let g = &cli.global;
    let emitter = |hash| Emitter::new(&g.out_dir, g.format, hash);
    match &cli.command {
        Command::Model(c) => commands::model(c, &emitter(config_hash(c, g))?),
        Command::Sweep(c) => commands::sweep(c, &emitter(config_hash(c, g))?),
        Command::Poincare(c) => commands::poincare(c, &emitter(config_hash(c, g))?),
        Command::Rayleigh(c) => commands::rayleigh(c, g.seed, &emitter(config_hash(c, g))?),
        Command::Certificate(c) => commands::certificate(c, &emitter(config_hash(c, g))?),
        Command::Pme(c) => commands::pme(c, &emitter(config_hash(c, g))?),
    }
}

/// 2 for invalid input, 1 for everything else.
fn exit_code(err: &anyhow::Error) -> u8 {
    use hadamard_core::Error as E;
    for cause in err.chain() {
        if cause.is::<Invalid>() {
            return 2;
        }
        if let Some(e) = cause.downcast_ref::<E>() {
            return match e {
                E::InvalidParameter { .. }
                | E::NonHadamardProfile { .. }
                | E::OutOfDomain { .. }
                | E::InvalidExponent { .. }
                | E::BelowCriticalExponent { .. }
                | E::TooFewPoints { .. }
                | E::ParameterOutOfRange { .. }
                | E::CurvatureNotVanishing { .. }
                | E::FlatProfile
                | E::Table(_) => 2,
                _ => 1,
            };
        }
    }
    1
}

fn main() -> ExitCode {
    let cli = match parse(std::env::args_os().collect()) {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}
