//! Command-line front end.

pub mod config;
pub mod output;
pub mod sweep;

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde_json::json;

use crate::error::{Error, Result};
use config::{ConfigFile, Experiment, Overrides, SweepConfig};
use output::{sidecar_path, write_json, Metadata};

#[derive(Debug, Parser)]
#[command(name = "spingauge", version, about = "Spin-gauge lattice Hamiltonian sweeps")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Ground-state electric field on the charge link versus g and l.
    E1Curves(CommonArgs),
    /// Truncation probability versus g and l.
    Plg(CommonArgs),
    /// Gauss-law emergence versus the constraint strength.
    Emergence(CommonArgs),
    /// Truncated versus untruncated perturbation series.
    Theorem(CommonArgs),
    /// Cold-atom parameters and scale hierarchy.
    Params(CommonArgs),
    /// Optical superlattice potential and its minima.
    Potential(CommonArgs),
}

#[derive(Debug, Clone, Args)]
pub struct CommonArgs {
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub workers: Option<usize>,
    #[arg(long, allow_negative_numbers = true)]
    pub tol: Option<f64>,
    #[arg(long)]
    pub seed: Option<u64>,
}

impl Command {
    pub fn split(&self) -> (Experiment, &CommonArgs) {
        match self {
            Command::E1Curves(a) => (Experiment::E1Curves, a),
            Command::Plg(a) => (Experiment::Plg, a),
            Command::Emergence(a) => (Experiment::Emergence, a),
            Command::Theorem(a) => (Experiment::Theorem, a),
            Command::Params(a) => (Experiment::Params, a),
            Command::Potential(a) => (Experiment::Potential, a),
        }
    }
}

/// Files written by one run.
#[derive(Clone, Debug, PartialEq)]
pub struct RunOutput {
    pub primary: PathBuf,
    pub extra: Vec<PathBuf>,
    pub meta: PathBuf,
}

fn write_csv_file(path: &Path, table: &output::SweepResult) -> Result<()> {
    let file = std::fs::File::create(path)?;
    table.write_csv(std::io::BufWriter::new(file))
}

/// Runs one experiment and writes its outputs plus the metadata sidecar.
pub fn execute(cfg: &SweepConfig) -> Result<RunOutput> {
    let mut meta = Metadata::now(cfg.experiment.name(), cfg.seed, cfg.tol, cfg.workers);
    let out = cfg.out.clone();
    let mut extra = Vec::new();
    match cfg.experiment {
        Experiment::E1Curves | Experiment::Plg | Experiment::Emergence => {
            let table = match cfg.experiment {
                Experiment::E1Curves => sweep::run_e1_curves(cfg)?,
                Experiment::Plg => sweep::run_plg(cfg)?,
                _ => sweep::run_emergence(cfg)?,
            };
            write_csv_file(&out, &table)?;
            meta.rows = Some(table.rows.len());
            meta.columns = Some(table.columns.clone());
            meta.notes = match cfg.experiment {
                Experiment::E1Curves => json!({
                    "lattice": cfg.lattice.describe(),
                    "charges": cfg.charges.describe(),
                    "e1_link": cfg.e1_link,
                }),
                Experiment::Emergence => json!({
                    "lattice": cfg.lattice.describe(),
                    "charges_simulation_variables": cfg.charges.describe(),
                    "mu": cfg.mu,
                    "omega": cfg.omega,
                    "tracked_links": cfg.tracked_links,
                    "tracked_vertices": cfg.tracked_vertices.iter().map(|v| v.to_string()).collect::<Vec<_>>(),
                }),
                _ => serde_json::Value::Null,
            };
        }
        Experiment::Theorem => write_json(&out, &sweep::run_theorem(cfg)?)?,
        Experiment::Params => write_json(&out, &sweep::run_params(cfg)?)?,
        Experiment::Potential => {
            let (table, report) = sweep::run_potential(cfg)?;
            write_csv_file(&out, &table)?;
            let mut name = out.as_os_str().to_owned();
            name.push(".minima.json");
            let minima = PathBuf::from(name);
            write_json(&minima, &report)?;
            meta.rows = Some(table.rows.len());
            meta.columns = Some(table.columns.clone());
            extra.push(minima);
        }
    }
    let meta_path = sidecar_path(&out);
    write_json(&meta_path, &meta)?;
    Ok(RunOutput {
        primary: out,
        extra,
        meta: meta_path,
    })
}

/// Resolves configuration for a parsed command line and runs it.
pub fn run(cli: &Cli) -> Result<RunOutput> {
    let (experiment, args) = cli.command.split();
    let file = args.config.as_deref().map(ConfigFile::load).transpose()?;
    let flags = Overrides {
        out: args.out.clone(),
        workers: args.workers,
        tol: args.tol,
        seed: args.seed,
    };
    execute(&SweepConfig::resolve(experiment, file, &flags)?)
}

/// Single-line machine-readable error report.
pub fn error_line(err: &Error) -> String {
    json!({"error": {"kind": err.kind(), "message": err.to_string()}}).to_string()
}
