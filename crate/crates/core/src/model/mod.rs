//! Physical constants, the species catalog, model configuration and the
//! uncertainty relations that tie a virtual pair's size and lifetime to its
//! momentum and energy.

mod config;
mod constants;
mod species;

pub use config::{MassMode, ModelConfig, MomentConvention, PlanckChoice, CONFIG_KEYS, DEFAULT_TEMPERATURE_GEV};
pub use constants::{PhysicalConstants, SI};
pub use species::{standard_catalog, FermionSpecies, SpeciesCatalog};

use crate::error::{Error, Result};

/// Fermion energy √((mc²)² + (pc)²) in joules for momentum `p` (kg·m/s).
pub fn energy_of(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> f64 {
    let rest = cfg.rest_energy(species);
    let pc = p * SI.c;
    if rest == 0.0 {
        pc
    } else {
        rest.hypot(pc)
    }
}

/// Pair size x = H/p.
pub fn pair_size(p: f64, cfg: &ModelConfig) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::domain(
            "pair_size",
            format!("momentum must be positive, got {p}"),
        ));
    }
    Ok(cfg.uncertainty_constant() / p)
}

/// Pair lifetime T = H/E for pair energy `pair_energy` (= 2ε).
pub fn pair_lifetime(pair_energy: f64, cfg: &ModelConfig) -> Result<f64> {
    if pair_energy.is_nan() || pair_energy <= 0.0 {
        return Err(Error::domain(
            "pair_lifetime",
            format!("pair energy must be positive, got {pair_energy}"),
        ));
    }
    Ok(cfg.uncertainty_constant() / pair_energy)
}
