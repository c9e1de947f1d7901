//! Statistical mechanics of the virtual-pair gas.
//!
//! The momentum-space densities carry no spin factor 2: pairs annihilate with
//! zero total spin, halving the usual Fermi-gas state count.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::model::{energy_of, FermionSpecies, ModelConfig};
use crate::quadrature::momentum_integral;

/// Fermi occupation 1/(e^y + 1). For y > 0 the complement form
/// e^{-y}/(1 + e^{-y}) is used so that large y never overflows.
pub fn occupation(y: f64) -> f64 {
    if y > 0.0 {
        let t = (-y).exp();
        t / (1.0 + t)
    } else {
        1.0 / (y.exp() + 1.0)
    }
}

/// −d(occupation)/dy = e^y/(e^y + 1)², evaluated through e^{-|y|}.
pub fn occupation_slope(y: f64) -> f64 {
    let t = (-y.abs()).exp();
    t / ((1.0 + t) * (1.0 + t))
}

/// ln(1 + e^{-y}) without overflow for either sign of y.
pub fn log1p_exp_neg(y: f64) -> f64 {
    if y > 0.0 {
        (-y).exp().ln_1p()
    } else {
        -y + y.exp().ln_1p()
    }
}

/// Guard against overflow in the shifted occupations.
const MAX_REDUCED_MU: f64 = 50.0;

#[derive(Debug, Clone, Copy)]
pub struct GasState<'a> {
    pub cfg: &'a ModelConfig,
    /// Chemical potential, J.
    pub mu: f64,
}

impl<'a> GasState<'a> {
    pub fn new(cfg: &'a ModelConfig) -> Self {
        GasState { cfg, mu: 0.0 }
    }

    pub fn with_mu(cfg: &'a ModelConfig, mu: f64) -> Self {
        GasState { cfg, mu }
    }

    fn checked_reduced_mu(&self, operation: &'static str) -> Result<f64> {
        let m = self.mu / self.cfg.kt();
        if m.is_finite() && m.abs() < MAX_REDUCED_MU {
            Ok(m)
        } else {
            Err(Error::domain(
                operation,
                format!("|mu| must be below {MAX_REDUCED_MU} kT, got {m} kT"),
            ))
        }
    }
}

/// Multiplicity-scaled 4πp²/H³.
fn phase_space(p: f64, cfg: &ModelConfig) -> f64 {
    cfg.degeneracy_multiplier * 4.0 * PI * p * p / cfg.phase_space_constant().powi(3)
}

/// Pair density per unit momentum, n_pair(p) = 4πp²/H³ · 1/(e^{ε/kT} + 1).
pub fn pair_density_at(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> f64 {
    phase_space(p, cfg) * occupation(energy_of(p, species, cfg) / cfg.kt())
}

/// Fermion-minus-antifermion number density, 1/m³.
pub fn lepton_number_density(state: &GasState<'_>, species: &FermionSpecies) -> Result<f64> {
    let m = state.checked_reduced_mu("lepton_number_density")?;
    let cfg = state.cfg;
    let kt = cfg.kt();
    momentum_integral(
        |p| {
            let y = energy_of(p, species, cfg) / kt;
            phase_space(p, cfg) * (occupation(y - m) - occupation(y + m))
        },
        cfg,
    )
    .map_err(Error::quadrature(format!("lepton density [{}]", species.name)))
}

/// Fermion plus antifermion pressure, Pa.
pub fn pressure(state: &GasState<'_>, species: &FermionSpecies) -> Result<f64> {
    let m = state.checked_reduced_mu("pressure")?;
    let cfg = state.cfg;
    let kt = cfg.kt();
    let integral = momentum_integral(
        |p| {
            let y = energy_of(p, species, cfg) / kt;
            phase_space(p, cfg) * (log1p_exp_neg(y - m) + log1p_exp_neg(y + m))
        },
        cfg,
    )
    .map_err(Error::quadrature(format!("pressure [{}]", species.name)))?;
    Ok(kt * integral)
}

/// Ω = −P·V, J.
pub fn grand_potential(state: &GasState<'_>, species: &FermionSpecies, volume: f64) -> Result<f64> {
    Ok(-pressure(state, species)? * volume)
}

/// ∂n_lepton/∂μ at μ = 0, per unit momentum:
/// 2·4πp²/H³ · (1/kT) · e^{ε/kT}/(e^{ε/kT} + 1)².
pub fn susceptibility_kernel(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> f64 {
    let kt = cfg.kt();
    2.0 * phase_space(p, cfg) / kt * occupation_slope(energy_of(p, species, cfg) / kt)
}

/// ∫ n_pair(p) dp for one species, 1/m³.
pub fn species_pair_density(species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    momentum_integral(|p| pair_density_at(p, species, cfg), cfg)
        .map_err(Error::quadrature(format!("pair density [{}]", species.name)))
}

#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesDensities {
    /// (species name, pair density in 1/m³), catalog order.
    pub per_species: Vec<(String, f64)>,
    pub total: f64,
}

pub fn total_pair_density(cfg: &ModelConfig) -> Result<SpeciesDensities> {
    let per_species = cfg
        .catalog
        .iter()
        .map(|s| Ok((s.name.clone(), species_pair_density(s, cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    let total = per_species.iter().map(|(_, n)| n).sum();
    Ok(SpeciesDensities { per_species, total })
}
