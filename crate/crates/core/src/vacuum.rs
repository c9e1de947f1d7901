//! Vacuum permeability and permittivity from the μ-susceptibility of the pair gas.
//!
//! 1/μ₀ = Σᵢ (2/3)∫ β(ε)² ∂n/∂μ dp and ε₀ = Σᵢ (2/3)∫ (ω/2)² ∂n/∂μ dp, with the
//! relativistic moment β = Q·e·H·c²/(2ε) (the Bohr magneton with m → ε/c²)
//! and the pair dipole ω = Q·e·H/p. In massless mode β = (ω/2)·c holds
//! pointwise and the derived light speed equals c.
//!
//! The moment uses the defined c, not the derived one; there is no
//! self-consistent iteration. The 36/35 sphere-average correction to the pair
//! separation is not applied.

use crate::error::{Error, Result};
use crate::fermi::susceptibility_kernel;
use crate::model::{energy_of, FermionSpecies, MassMode, ModelConfig, MomentConvention, SI};
use crate::quadrature::momentum_integral;

const ANGULAR_AVERAGE: f64 = 2.0 / 3.0;

#[derive(Debug, Clone, PartialEq)]
pub struct VacuumConstants {
    /// 1/μ₀, m/H.
    pub inv_mu0: f64,
    /// H/m.
    pub mu0: f64,
    /// F/m.
    pub epsilon0: f64,
    /// 1/√(μ₀ε₀), m/s.
    pub c_derived: f64,
    /// Per-species contributions to 1/μ₀, catalog order.
    pub per_species_inv_mu0: Vec<(String, f64)>,
    pub per_species_epsilon0: Vec<(String, f64)>,
    /// μ₀ / μ₀(measured).
    pub ratio_to_measured: f64,
}

fn moment_unchecked(eps: f64, species: &FermionSpecies, cfg: &ModelConfig) -> f64 {
    let charge = species.charge_q * SI.e * cfg.moment_constant();
    match cfg.moment_convention {
        MomentConvention::Relativistic => charge * SI.c * SI.c / (2.0 * eps),
        MomentConvention::NonRelativistic => {
            let mass_kg = SI.gev(species.mass_gev) / (SI.c * SI.c);
            charge / (2.0 * mass_kg)
        }
    }
}

fn check_moment_convention(cfg: &ModelConfig, operation: &'static str) -> Result<()> {
    if cfg.moment_convention == MomentConvention::NonRelativistic && cfg.mass_mode == MassMode::Zero {
        return Err(Error::domain(
            operation,
            "the nonrelativistic moment Q·e·H/(2m) is singular for massless fermions",
        ));
    }
    Ok(())
}

/// Magnetic moment β, J/T, of a fermion of energy `eps` (J).
pub fn magnetic_moment(eps: f64, species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    check_moment_convention(cfg, "magnetic_moment")?;
    if cfg.moment_convention == MomentConvention::Relativistic && (eps.is_nan() || eps <= 0.0) {
        return Err(Error::domain(
            "magnetic_moment",
            format!("fermion energy must be positive, got {eps}"),
        ));
    }
    Ok(moment_unchecked(eps, species, cfg))
}

/// Pair dipole moment ω = Q·e·H/p, C·m.
pub fn dipole_moment(p: f64, species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    if p.is_nan() || p <= 0.0 {
        return Err(Error::domain(
            "dipole_moment",
            format!("momentum must be positive, got {p}"),
        ));
    }
    Ok(species.charge_q * SI.e * cfg.moment_constant() / p)
}

pub fn species_inverse_mu0(species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    check_moment_convention(cfg, "inverse_mu0")?;
    let integral = momentum_integral(
        |p| {
            let beta = moment_unchecked(energy_of(p, species, cfg), species, cfg);
            beta * beta * susceptibility_kernel(p, species, cfg)
        },
        cfg,
    )
    .map_err(Error::quadrature(format!("1/mu0 [{}]", species.name)))?;
    Ok(ANGULAR_AVERAGE * integral)
}

pub fn species_epsilon0(species: &FermionSpecies, cfg: &ModelConfig) -> Result<f64> {
    let charge = species.charge_q * SI.e * cfg.moment_constant();
    let integral = momentum_integral(
        |p| {
            let half_dipole = 0.5 * charge / p;
            half_dipole * half_dipole * susceptibility_kernel(p, species, cfg)
        },
        cfg,
    )
    .map_err(Error::quadrature(format!("epsilon0 [{}]", species.name)))?;
    Ok(ANGULAR_AVERAGE * integral)
}

fn per_species(
    cfg: &ModelConfig,
    f: impl Fn(&FermionSpecies, &ModelConfig) -> Result<f64>,
) -> Result<Vec<(String, f64)>> {
    cfg.catalog.iter().map(|s| Ok((s.name.clone(), f(s, cfg)?))).collect()
}

fn sum(entries: &[(String, f64)]) -> f64 {
    entries.iter().map(|(_, v)| v).sum()
}

/// Vacuum magnetisation response 1/μ₀, m/H.
pub fn inverse_mu0(cfg: &ModelConfig) -> Result<f64> {
    Ok(sum(&per_species(cfg, species_inverse_mu0)?))
}

/// Vacuum permittivity ε₀, F/m.
pub fn epsilon0(cfg: &ModelConfig) -> Result<f64> {
    Ok(sum(&per_species(cfg, species_epsilon0)?))
}

/// 1/√(μ₀ε₀), m/s.
pub fn derived_light_speed(cfg: &ModelConfig) -> Result<f64> {
    Ok((inverse_mu0(cfg)? / epsilon0(cfg)?).sqrt())
}

pub fn vacuum_constants(cfg: &ModelConfig) -> Result<VacuumConstants> {
    let per_species_inv_mu0 = per_species(cfg, species_inverse_mu0)?;
    let per_species_epsilon0 = per_species(cfg, species_epsilon0)?;
    let inv_mu0 = sum(&per_species_inv_mu0);
    let epsilon0 = sum(&per_species_epsilon0);
    let mu0 = 1.0 / inv_mu0;
    Ok(VacuumConstants {
        inv_mu0,
        mu0,
        epsilon0,
        c_derived: (inv_mu0 / epsilon0).sqrt(),
        per_species_inv_mu0,
        per_species_epsilon0,
        ratio_to_measured: mu0 / SI.mu0_measured,
    })
}

/// μ₀ for massless fermions in closed form. The kernel integral reduces to
/// 1/μ₀ = (2π/3)·ΣQ²·e²·c·g·H_m²/H_p³, i.e. μ₀ = 3h/(16π e² c) for h
/// everywhere, ΣQ² = 8 and multiplier g = 1. Independent of kT.
pub fn massless_mu0_closed_form(cfg: &ModelConfig) -> f64 {
    let hm = cfg.moment_constant();
    let hp = cfg.phase_space_constant();
    let q2 = cfg.catalog.charge_squared_sum();
    let inv = ANGULAR_AVERAGE * std::f64::consts::PI * q2 * SI.e * SI.e * hm * hm * SI.c * cfg.degeneracy_multiplier
        / hp.powi(3);
    1.0 / inv
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{standard_catalog, PlanckChoice, SpeciesCatalog};
    use approx::assert_relative_eq;
    use std::f64::consts::PI;

    fn massless() -> ModelConfig {
        ModelConfig {
            mass_mode: MassMode::Zero,
            ..Default::default()
        }
    }

    fn find(name: &str) -> FermionSpecies {
        standard_catalog().iter().find(|s| s.name == name).unwrap().clone()
    }

    #[test]
    fn bohr_magneton_at_rest() {
        let cfg = ModelConfig {
            moment_planck: PlanckChoice::HBar,
            ..Default::default()
        };
        let e = find("electron");
        let beta = magnetic_moment(cfg.rest_energy(&e), &e, &cfg).unwrap();
        assert_relative_eq!(beta, 9.274_010_078_3e-24, max_relative = 1e-9);
    }

    #[test]
    fn moment_scalings() {
        let cfg = ModelConfig::default();
        let e = find("electron");
        let eps = 3.0 * cfg.kt();
        let b1 = magnetic_moment(eps, &e, &cfg).unwrap();
        assert_relative_eq!(
            magnetic_moment(2.0 * eps, &e, &cfg).unwrap(),
            b1 / 2.0,
            max_relative = 1e-15
        );
        let hb = ModelConfig {
            moment_planck: PlanckChoice::HBar,
            ..cfg.clone()
        };
        assert_relative_eq!(
            b1 / magnetic_moment(eps, &e, &hb).unwrap(),
            2.0 * PI,
            max_relative = 1e-14
        );
        assert!(magnetic_moment(0.0, &e, &cfg).is_err());
    }

    #[test]
    fn nonrelativistic_moment() {
        let cfg = ModelConfig {
            moment_convention: MomentConvention::NonRelativistic,
            moment_planck: PlanckChoice::HBar,
            ..Default::default()
        };
        let e = find("electron");
        // energy-independent Bohr magneton
        let b = magnetic_moment(cfg.kt(), &e, &cfg).unwrap();
        assert_relative_eq!(b, 9.274_010_078_3e-24, max_relative = 1e-9);
        let zero = ModelConfig {
            mass_mode: MassMode::Zero,
            ..cfg
        };
        assert!(matches!(magnetic_moment(1.0, &e, &zero), Err(Error::Domain { .. })));
        assert!(inverse_mu0(&zero).is_err());
    }

    #[test]
    fn dipole_relations() {
        let cfg = massless();
        let e = find("electron");
        let u = find("up:r");
        let p = cfg.kt() / SI.c * 1.7;
        let w = dipole_moment(p, &e, &cfg).unwrap();
        let beta = magnetic_moment(energy_of(p, &e, &cfg), &e, &cfg).unwrap();
        assert_relative_eq!(beta, 0.5 * w * SI.c, max_relative = 1e-14);
        assert_relative_eq!(dipole_moment(2.0 * p, &e, &cfg).unwrap(), w / 2.0, max_relative = 1e-15);
        assert_relative_eq!(dipole_moment(p, &u, &cfg).unwrap() / w, 2.0 / 3.0, max_relative = 1e-15);
        assert!(dipole_moment(0.0, &e, &cfg).is_err());
    }

    #[test]
    fn massless_mu0_matches_closed_form() {
        let cfg = massless();
        let closed = 3.0 * SI.h / (16.0 * PI * SI.e * SI.e * SI.c);
        assert_relative_eq!(massless_mu0_closed_form(&cfg), closed, max_relative = 1e-14);
        assert_relative_eq!(1.0 / inverse_mu0(&cfg).unwrap(), closed, max_relative = 1e-9);
        assert!((closed - 5.14e-6).abs() < 0.01e-6);
    }

    #[test]
    fn massless_inverse_mu0_independent_of_temperature() {
        let base = inverse_mu0(&massless()).unwrap();
        for t in [100.0, 246.22, 500.0] {
            let cfg = ModelConfig {
                temperature_gev: t,
                ..massless()
            };
            assert_relative_eq!(inverse_mu0(&cfg).unwrap(), base, max_relative = 1e-8);
        }
    }

    #[test]
    fn planck_toggle_ratios_exact() {
        let cfg = ModelConfig::default();
        let base = inverse_mu0(&cfg).unwrap();
        let moment = ModelConfig {
            moment_planck: PlanckChoice::HBar,
            ..cfg.clone()
        };
        let phase = ModelConfig {
            phase_space_planck: PlanckChoice::HBar,
            ..cfg.clone()
        };
        let both = ModelConfig {
            moment_planck: PlanckChoice::HBar,
            phase_space_planck: PlanckChoice::HBar,
            ..cfg.clone()
        };
        let tp = 2.0 * PI;
        assert_relative_eq!(base / inverse_mu0(&moment).unwrap(), tp * tp, max_relative = 1e-12);
        assert_relative_eq!(inverse_mu0(&phase).unwrap() / base, tp.powi(3), max_relative = 1e-12);
        assert_relative_eq!(inverse_mu0(&both).unwrap() / base, tp, max_relative = 1e-12);
    }

    #[test]
    fn multiplier_linearity() {
        let cfg = ModelConfig::default();
        let four = ModelConfig {
            degeneracy_multiplier: 4.0,
            ..cfg.clone()
        };
        assert_relative_eq!(
            inverse_mu0(&four).unwrap(),
            4.0 * inverse_mu0(&cfg).unwrap(),
            max_relative = 1e-13
        );
        assert_relative_eq!(
            epsilon0(&four).unwrap(),
            4.0 * epsilon0(&cfg).unwrap(),
            max_relative = 1e-13
        );
    }

    #[test]
    fn per_species_additivity() {
        let cfg = ModelConfig::default();
        let vc = vacuum_constants(&cfg).unwrap();
        let mut singles = 0.0;
        for s in cfg.catalog.families() {
            let family = FermionSpecies {
                name: s.family().to_string(),
                ..s.clone()
            };
            let one = ModelConfig {
                catalog: SpeciesCatalog::from_families(vec![family]),
                ..cfg.clone()
            };
            singles += inverse_mu0(&one).unwrap();
        }
        assert_relative_eq!(vc.inv_mu0, singles, max_relative = 1e-13);
        assert_eq!(vc.mu0, 1.0 / vc.inv_mu0);
        assert_relative_eq!(vc.c_derived, 1.0 / (vc.mu0 * vc.epsilon0).sqrt(), max_relative = 1e-15);
    }

    #[test]
    fn epsilon0_charge_scaling() {
        let cfg = ModelConfig::default();
        let up = FermionSpecies::new("u", 2.0 / 3.0, 1.0, 1).unwrap();
        let down = FermionSpecies::new("d", 1.0 / 3.0, 1.0, 1).unwrap();
        assert_relative_eq!(
            species_epsilon0(&up, &cfg).unwrap() / species_epsilon0(&down, &cfg).unwrap(),
            4.0,
            max_relative = 1e-13
        );
    }

    #[test]
    fn derived_speed() {
        let cfg = massless();
        let c = derived_light_speed(&cfg).unwrap();
        assert!(((c - SI.c) / SI.c).abs() < 1e-9);

        // moment_planck rescales both moments alike
        let hb = ModelConfig {
            moment_planck: PlanckChoice::HBar,
            ..ModelConfig::default()
        };
        let phys = derived_light_speed(&ModelConfig::default()).unwrap();
        assert_relative_eq!(derived_light_speed(&hb).unwrap(), phys, max_relative = 1e-12);
        // ε > pc makes β² fall short of (ω/2)²c²
        assert!(phys < SI.c && phys > 0.9 * SI.c);
    }
}
