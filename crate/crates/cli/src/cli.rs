use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use vacuum_leap::model::{MassMode, MomentConvention, PlanckChoice};

use crate::output::Format;
use crate::units::{parse_energy, parse_energy_gev, parse_length, parse_time};

/// Vacuum permeability, permittivity and photon propagation statistics from a
/// gas of virtual fermion pairs.
#[derive(Debug, Parser)]
#[command(name = "vacuum-leap", version, propagate_version = true)]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Flat `key = value` config file; flags below override it.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,
    #[arg(long, global = true, value_enum, default_value_t = Format::Table)]
    pub format: Format,
    /// Echo the effective configuration to stderr.
    #[arg(long, short, global = true)]
    pub verbose: bool,
    /// Vacuum temperature kT in GeV.
    #[arg(long, global = true)]
    pub temperature: Option<f64>,
    /// Fermion masses: physical or zero.
    #[arg(long, global = true)]
    pub masses: Option<MassMode>,
    /// Set all three Planck toggles at once (h or hbar); the individual flags win.
    #[arg(long, global = true)]
    pub planck: Option<PlanckChoice>,
    #[arg(long, global = true)]
    pub uncertainty_planck: Option<PlanckChoice>,
    #[arg(long, global = true)]
    pub phase_space_planck: Option<PlanckChoice>,
    #[arg(long, global = true)]
    pub moment_planck: Option<PlanckChoice>,
    /// Magnetic moment convention: relativistic or nonrelativistic.
    #[arg(long, global = true)]
    pub moment: Option<MomentConvention>,
    /// Multiplier on the pair degeneracy (4 for the hidden-fermion variant).
    #[arg(long, global = true)]
    pub degeneracy: Option<f64>,
    /// Relative tolerance of every momentum integral.
    #[arg(long, global = true)]
    pub rel_tol: Option<f64>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Physical constants and the fermion catalog.
    Constants,
    /// Vacuum permeability and permittivity.
    Mu0 {
        /// Add per-species contributions.
        #[arg(long)]
        breakdown: bool,
    },
    /// Average photon speed at one photon energy.
    Speed {
        /// Photon energy, e.g. `100keV`, `1GeV`, `1e-13J` (bare numbers are GeV).
        #[arg(long, value_parser = parse_energy, allow_hyphen_values = true)]
        photon_energy: f64,
    },
    /// Speed variation across a photon energy band, next to the linear LV model.
    Band {
        #[arg(long, value_parser = parse_energy_gev)]
        e1: f64,
        #[arg(long, value_parser = parse_energy_gev)]
        e2: f64,
        /// Lorentz-violation scale of the comparison model.
        #[arg(long, value_parser = parse_energy_gev, default_value = "3.6e17GeV")]
        e_lv: f64,
    },
    /// Arrival-time dispersion coefficient, step density and mean step.
    Dispersion,
    /// Monte Carlo photon propagation.
    Simulate(SimulateArgs),
    /// Predicted arrival-time spread and pulse broadening in a cavity.
    Cavity {
        #[arg(long, value_parser = parse_length, default_value = "4km")]
        length: f64,
        #[arg(long, default_value_t = 70)]
        reflections: u32,
        /// Input pulse FWHM, e.g. `4fs`.
        #[arg(long, value_parser = parse_time, default_value = "4fs")]
        fwhm: f64,
    },
    /// Timing sensitivity figures of astrophysical and lab measurements.
    Sensitivity {
        /// Extra row as `label:time:path`, e.g. `mine:10fs:1km`.
        #[arg(long = "row", value_parser = parse_row)]
        rows: Vec<(String, f64, f64)>,
    },
    /// One observable against one numeric config parameter.
    Sweep(SweepArgs),
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    /// Path length per chain, e.g. `1e-12m`.
    #[arg(long, value_parser = parse_length)]
    pub length: f64,
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, default_value_t = 200)]
    pub chains: usize,
    /// Also report σ extrapolated to this path length.
    #[arg(long, value_parser = parse_length)]
    pub target_length: Option<f64>,
    /// Per-chain step cap.
    #[arg(long)]
    pub max_steps: Option<u64>,
    /// Shift every fermion energy by half this photon energy.
    #[arg(long, value_parser = parse_energy)]
    pub photon_energy: Option<f64>,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    /// Numeric config key: temperature_gev, degeneracy_multiplier, quadrature_rel_tol or mass.<family>.
    #[arg(long)]
    pub param: String,
    #[arg(long, allow_hyphen_values = true)]
    pub from: f64,
    #[arg(long, allow_hyphen_values = true)]
    pub to: f64,
    #[arg(long, default_value_t = 11)]
    pub points: usize,
    #[arg(long, value_enum, default_value_t = Observable::Mu0)]
    pub observable: Observable,
    /// Geometric spacing.
    #[arg(long)]
    pub log: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Observable {
    Mu0,
    InvMu0,
    Epsilon0,
    CDerived,
    Mu0Ratio,
    SpeedExcess,
    Sigma,
    StepsPerMeter,
    MeanStep,
}

fn parse_row(text: &str) -> Result<(String, f64, f64), String> {
    let mut parts = text.splitn(3, ':');
    match (parts.next(), parts.next(), parts.next()) {
        (Some(label), Some(time), Some(path)) if !label.is_empty() => {
            Ok((label.to_owned(), parse_time(time)?, parse_length(path)?))
        }
        _ => Err(format!("expected `label:time:path`, got `{text}`")),
    }
}
