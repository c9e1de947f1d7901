//! Analytic photon-propagation observables of the leap model.
//!
//! A photon leaps x/4 = H/(4p) per excited pair and dwells on average
//! T/2 = H/(4ε). Step counts and the dispersion ignore the photon energy;
//! only [`average_speed`] adds ε_γ/2 to each fermion energy.

use std::f64::consts::PI;

use crate::error::{Error, Result};
use crate::fermi::{pair_density_at, species_pair_density};
use crate::model::{energy_of, FermionSpecies, MassMode, ModelConfig, SI};
use crate::quadrature::momentum_integral;

/// Published upper bound on |Δv/c| from the GRB 980703 time-of-flight analysis.
pub const GRB_980703_LIMIT: f64 = 6.3e-21;
/// Linear Lorentz-violation scale fitted to a GRB compilation, GeV.
pub const DEFAULT_E_LV_GEV: f64 = 3.6e17;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PropagationStats {
    /// n-weighted ⟨H/(4p)⟩, m.
    pub mean_step_m: f64,
    /// N/L, 1/m.
    pub steps_per_meter: f64,
    /// σ/√L, s·m^-1/2.
    pub sigma_per_sqrt_m: f64,
    /// Average speed at zero photon energy, m/s.
    pub mean_speed_mps: f64,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GrbComparison {
    pub model_dv_over_c: f64,
    pub observed_limit: f64,
    pub lv_model_dv_over_c: f64,
    /// (ε₁, ε₂), GeV.
    pub band_gev: (f64, f64),
}

/// Σᵢ ∫ w(p, species) dp over the catalog.
fn catalog_integral(cfg: &ModelConfig, label: &str, weight: impl Fn(f64, &FermionSpecies) -> f64) -> Result<f64> {
    cfg.catalog.iter().try_fold(0.0, |acc, s| {
        let v = momentum_integral(|p| weight(p, s), cfg).map_err(Error::quadrature(format!("{label} [{}]", s.name)))?;
        Ok(acc + v)
    })
}

/// Distance-over-time average speed when every fermion energy is raised by
/// ε_γ/2: c·Σ∫n/(p'c) dp ÷ Σ∫n/ε' dp with ε' = ε + ε_γ/2, p'c = √(ε'² − (mc²)²).
pub fn average_speed(eps_gamma: f64, cfg: &ModelConfig) -> Result<f64> {
    if !(eps_gamma >= 0.0 && eps_gamma.is_finite()) {
        return Err(Error::domain(
            "average_speed",
            format!("photon energy must be non-negative, got {eps_gamma}"),
        ));
    }
    if cfg.mass_mode == MassMode::Zero {
        // p'c = ε' exactly
        return Ok(SI.c);
    }
    let half = 0.5 * eps_gamma;
    let distance = catalog_integral(cfg, "speed numerator", |p, s| {
        let pc = p * SI.c;
        let eps = energy_of(p, s, cfg);
        // ε'² − (mc²)² = (pc)² + 2εδ + δ², free of cancellation
        let shifted_pc = (pc * pc + half * (2.0 * eps + half)).sqrt();
        SI.c / shifted_pc * pair_density_at(p, s, cfg)
    })?;
    let time = catalog_integral(cfg, "speed denominator", |p, s| {
        pair_density_at(p, s, cfg) / (energy_of(p, s, cfg) + half)
    })?;
    Ok(distance / time)
}

/// (v(ε₁) − v(ε₂))/c between the band edges, energies in GeV.
pub fn band_speed_variation(e1_gev: f64, e2_gev: f64, cfg: &ModelConfig) -> Result<f64> {
    if !(e1_gev > 0.0 && e1_gev <= e2_gev) {
        return Err(Error::domain(
            "band_speed_variation",
            format!("band must satisfy 0 < e1 <= e2, got [{e1_gev}, {e2_gev}]"),
        ));
    }
    if e1_gev == e2_gev {
        return Ok(0.0);
    }
    if cfg.mass_mode == MassMode::Zero {
        return Ok(0.0);
    }
    // With D = Σ∫n/(p'c), T = Σ∫n/ε' at each edge, (v₁ − v₂)/c = ΔD/T₁ − (D₂/T₂)·ΔT/T₁.
    // ΔD and ΔT are integrated directly so the result is not a difference of two near-equal speeds.
    let (d1, d2) = (0.5 * SI.gev(e1_gev), 0.5 * SI.gev(e2_gev));
    let shifted_pc = |pc: f64, eps: f64, d: f64| (pc * pc + d * (2.0 * eps + d)).sqrt();
    let delta_distance = catalog_integral(cfg, "band distance difference", |p, s| {
        let pc = p * SI.c;
        let eps = energy_of(p, s, cfg);
        let (q1, q2) = (shifted_pc(pc, eps, d1), shifted_pc(pc, eps, d2));
        pair_density_at(p, s, cfg) * (d2 - d1) * (2.0 * eps + d1 + d2) / (q1 * q2 * (q1 + q2))
    })?;
    let delta_time = catalog_integral(cfg, "band time difference", |p, s| {
        let eps = energy_of(p, s, cfg);
        pair_density_at(p, s, cfg) * (d2 - d1) / ((eps + d1) * (eps + d2))
    })?;
    let distance2 = catalog_integral(cfg, "speed numerator", |p, s| {
        let pc = p * SI.c;
        pair_density_at(p, s, cfg) / shifted_pc(pc, energy_of(p, s, cfg), d2)
    })?;
    let time2 = catalog_integral(cfg, "speed denominator", |p, s| {
        pair_density_at(p, s, cfg) / (energy_of(p, s, cfg) + d2)
    })?;
    let time1 = time2 + delta_time;
    Ok(delta_distance / time1 - (distance2 / time2) * (delta_time / time1))
}

/// v = c·(1 − ε_γ/E_LV). Requires ε_γ ≥ 0 and E_LV > 0.
pub fn lorentz_violation_speed(eps_gamma_gev: f64, e_lv_gev: f64) -> f64 {
    SI.c * (1.0 - lorentz_violation_deficit(eps_gamma_gev, e_lv_gev))
}

/// (c − v)/c = ε_γ/E_LV of the linear model, without forming v.
pub fn lorentz_violation_deficit(eps_gamma_gev: f64, e_lv_gev: f64) -> f64 {
    eps_gamma_gev / e_lv_gev
}

pub fn grb_comparison(e1_gev: f64, e2_gev: f64, e_lv_gev: f64, cfg: &ModelConfig) -> Result<GrbComparison> {
    if e_lv_gev.is_nan() || e_lv_gev <= 0.0 {
        return Err(Error::domain(
            "grb_comparison",
            format!("E_LV must be positive, got {e_lv_gev}"),
        ));
    }
    let model_dv_over_c = band_speed_variation(e1_gev, e2_gev, cfg)?;
    let lv_model_dv_over_c = lorentz_violation_deficit(e2_gev, e_lv_gev) - lorentz_violation_deficit(e1_gev, e_lv_gev);
    Ok(GrbComparison {
        model_dv_over_c,
        observed_limit: GRB_980703_LIMIT,
        lv_model_dv_over_c,
        band_gev: (e1_gev, e2_gev),
    })
}

/// Σⱼ∫nⱼ dp, 1/m³.
fn total_density(cfg: &ModelConfig) -> Result<f64> {
    cfg.catalog
        .iter()
        .try_fold(0.0, |acc, s| Ok(acc + species_pair_density(s, cfg)?))
}

/// Pᵢ(p) = nᵢ(p)/Σⱼ∫nⱼ dp, per unit momentum.
pub fn excitation_probability(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    Ok(pair_density_at(p, species, cfg) / total_density(cfg)?)
}

/// ∫Pᵢ dp for every species, catalog order; sums to 1.
pub fn species_probabilities(cfg: &ModelConfig) -> Result<Vec<(String, f64)>> {
    let densities = cfg
        .catalog
        .iter()
        .map(|s| Ok((s.name.clone(), species_pair_density(s, cfg)?)))
        .collect::<Result<Vec<_>>>()?;
    let total: f64 = densities.iter().map(|(_, n)| n).sum();
    Ok(densities.into_iter().map(|(k, n)| (k, n / total)).collect())
}

/// Σ∫n/p dp.
fn inverse_momentum_moment(cfg: &ModelConfig) -> Result<f64> {
    catalog_integral(cfg, "n/p", |p, s| pair_density_at(p, s, cfg) / p)
}

/// Average leap length ⟨H/(4p)⟩, m.
pub fn mean_step_length(cfg: &ModelConfig) -> Result<f64> {
    Ok(cfg.uncertainty_constant() / 4.0 * inverse_momentum_moment(cfg)? / total_density(cfg)?)
}

/// N/L = (4/H)·Σ∫n dp / Σ∫n/p dp, 1/m.
pub fn steps_per_length(cfg: &ModelConfig) -> Result<f64> {
    Ok(4.0 / cfg.uncertainty_constant() * total_density(cfg)? / inverse_momentum_moment(cfg)?)
}

/// Dwell-time spread of one step, H/(4√3·ε), s.
pub fn per_step_sigma(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    let eps = energy_of(p, species, cfg);
    if p.is_nan() || p < 0.0 || eps.is_nan() || eps <= 0.0 {
        return Err(Error::domain(
            "per_step_sigma",
            format!("fermion energy must be positive (p = {p}, ε = {eps})"),
        ));
    }
    Ok(cfg.uncertainty_constant() / (4.0 * 3f64.sqrt() * eps))
}

/// σ/√L = √((H/12)·Σ∫n/ε² dp / Σ∫n/p dp), s·m^-1/2.
pub fn dispersion_coefficient(cfg: &ModelConfig) -> Result<f64> {
    let weighted = catalog_integral(cfg, "n/eps^2", |p, s| {
        let eps = energy_of(p, s, cfg);
        pair_density_at(p, s, cfg) / (eps * eps)
    })?;
    Ok((cfg.uncertainty_constant() / 12.0 * weighted / inverse_momentum_moment(cfg)?).sqrt())
}

/// Massless closed form √(h·ln2/(π²·kT·c)) (with H per uncertainty_planck).
pub fn massless_dispersion_closed_form(cfg: &ModelConfig) -> f64 {
    (cfg.uncertainty_constant() * std::f64::consts::LN_2 / (PI * PI * cfg.kt() * SI.c)).sqrt()
}

pub fn propagation_stats(cfg: &ModelConfig) -> Result<PropagationStats> {
    let mean_step_m = mean_step_length(cfg)?;
    Ok(PropagationStats {
        mean_step_m,
        steps_per_meter: steps_per_length(cfg)?,
        sigma_per_sqrt_m: dispersion_coefficient(cfg)?,
        mean_speed_mps: average_speed(0.0, cfg)?,
    })
}
