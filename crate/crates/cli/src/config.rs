//! Run configuration: command-line flags over an optional JSON file.

use std::path::{Path, PathBuf};

use clap::{Args, Parser, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CommandKind {
    /// Spectrum of the uniaxial (or biaxial) paramagnet.
    Spectrum,
    /// Effective potential samples and shape classification.
    Potential,
    /// Spin levels against particle levels in the effective potential.
    Correspond,
    /// Ground-state transverse susceptibility scan.
    Susceptibility,
    /// Dicke model sector spectra.
    Dicke,
    /// Two coupled oscillators, sector spectra.
    Oscillators,
    /// Exact evolution of <S_+> under precession plus twisting.
    Dynamics,
    /// Residual of the closed symbol equation on a sphere grid.
    ClosedEq,
    /// Classical free energy with first quantum correction.
    Wk,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            CommandKind::Spectrum => "spectrum",
            CommandKind::Potential => "potential",
            CommandKind::Correspond => "correspond",
            CommandKind::Susceptibility => "susceptibility",
            CommandKind::Dicke => "dicke",
            CommandKind::Oscillators => "oscillators",
            CommandKind::Dynamics => "dynamics",
            CommandKind::ClosedEq => "closed-eq",
            CommandKind::Wk => "wk",
        }
    }
}

/// Every tunable. Unset values fall back to per-command defaults.
#[derive(Debug, Clone, Default, PartialEq, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields, rename_all = "snake_case")]
pub struct Params {
    #[arg(skip)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub command: Option<CommandKind>,
    /// Spin quantum number (integer or half-integer).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s: Option<f64>,
    /// Transverse field.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub alpha: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub beta: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub omega: Option<f64>,
    /// Second oscillator frequency.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub capital_omega: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub epsilon: Option<f64>,
    /// Coupling constant.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub g: Option<f64>,
    /// Twisting strength.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub d: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub temperature: Option<f64>,
    /// Comma-separated spin values.
    #[arg(long, value_delimiter = ',')]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub s_list: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub grid_points: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub x_max: Option<f64>,
    /// Gauss-Legendre nodes in cos(theta).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nu: Option<usize>,
    /// Uniform nodes in phi.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub nphi: Option<usize>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_min: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub b_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub db: Option<f64>,
    /// Largest sector label to diagonalize.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sector_max: Option<u64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub theta: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub phi: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub t_max: Option<f64>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steps: Option<usize>,
    /// Finite-difference step on the sphere (time step is the same).
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub h: Option<f64>,
    /// Model preset: zeeman or uniaxial for wk, uniaxial or biaxial for closed-eq.
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub preset: Option<String>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    /// Also write plot.svg.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plot: Option<bool>,
    #[arg(long)]
    #[serde(skip_serializing_if = "Option::is_none")]
    pub out: Option<PathBuf>,
}

macro_rules! overlay {
    ($base:ident, $top:ident; $($field:ident),* $(,)?) => {
        $(if $top.$field.is_some() { $base.$field = $top.$field.clone(); })*
    };
}

impl Params {
    /// Fields set in `top` replace those in `self`.
    pub fn overlay(mut self, top: &Params) -> Params {
        overlay!(self, top; command, s, b, alpha, beta, omega, capital_omega, epsilon, g, d,
            temperature, s_list, grid_points, x_max, nu, nphi, b_min, b_max, db, sector_max,
            theta, phi, t_max, steps, h, preset, seed, plot, out);
        self
    }

    pub fn from_json_file(path: &Path) -> Result<Params, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Validation(format!("cannot read config {}: {e}", path.display())))?;
        serde_json::from_str(&text)
            .map_err(|e| CliError::Validation(format!("config {}: {e}", path.display())))
    }
}

#[derive(Debug, Parser)]
#[command(name = "spinon", version, about = "Spin coherent-state computations with reproducible artifacts")]
pub struct Cli {
    /// Command to run (may also come from the config file).
    #[arg(value_enum)]
    pub command: Option<CommandKind>,
    /// JSON file with parameters; flags given on the command line win.
    #[arg(long)]
    pub config: Option<PathBuf>,
    #[command(flatten)]
    pub params: Params,
}

/// Fully resolved configuration.
#[derive(Debug, Clone)]
pub struct RunConfig {
    pub command: CommandKind,
    pub params: Params,
    pub out_dir: PathBuf,
}

pub const OUT_ENV: &str = "SPINON_OUT";
pub const DEFAULT_OUT: &str = "spinon-out";

impl RunConfig {
    pub fn resolve(cli: Cli, env_out: Option<PathBuf>) -> Result<RunConfig, CliError> {
        let mut flags = cli.params;
        flags.command = cli.command;
        let params = match &cli.config {
            Some(path) => Params::from_json_file(path)?.overlay(&flags),
            None => flags,
        };
        let command = params
            .command
            .ok_or_else(|| CliError::Validation("no command given".into()))?;
        let out_dir = env_out
            .or_else(|| params.out.clone())
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT));
        Ok(RunConfig {
            command,
            params,
            out_dir,
        })
    }
}
