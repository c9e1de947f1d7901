//! Laboratory observables derived from the dispersion coefficient.

use crate::error::{Error, Result};
use crate::kinematics::dispersion_coefficient;
use crate::model::ModelConfig;

/// FWHM of a Gaussian in units of its standard deviation, 2√(2 ln 2).
pub const GAUSSIAN_FWHM_FACTOR: f64 = 2.354_820_045_030_949;

/// Present astrophysical bounds on the dispersion coefficient, fs·m⁻¹ᐟ².
pub const ASTRO_DISPERSION_LIMITS_FS: (f64, f64) = (0.2, 0.3);

const FS: f64 = 1e-15;

/// A pulse bouncing `reflections` times in a cavity of length `cavity_length_m`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CavityExperiment {
    pub cavity_length_m: f64,
    pub reflections: u32,
    pub pulse_fwhm_in_s: f64,
}

impl CavityExperiment {
    pub fn new(cavity_length_m: f64, reflections: u32, pulse_fwhm_in_s: f64) -> Result<Self> {
        let exp = CavityExperiment {
            cavity_length_m,
            reflections,
            pulse_fwhm_in_s,
        };
        exp.validate()?;
        Ok(exp)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.cavity_length_m > 0.0 && self.cavity_length_m.is_finite()) {
            return Err(Error::domain(
                "cavity experiment",
                format!("cavity length must be positive, got {}", self.cavity_length_m),
            ));
        }
        if self.reflections == 0 {
            return Err(Error::domain(
                "cavity experiment",
                "at least one reflection is required",
            ));
        }
        if !(self.pulse_fwhm_in_s > 0.0 && self.pulse_fwhm_in_s.is_finite()) {
            return Err(Error::domain(
                "cavity experiment",
                format!("pulse FWHM must be positive, got {}", self.pulse_fwhm_in_s),
            ));
        }
        Ok(())
    }

    pub fn effective_path_m(&self) -> f64 {
        self.cavity_length_m * f64::from(self.reflections)
    }
}

/// Arrival-time spread accumulated over the cavity's effective path, s.
pub fn predicted_sigma(exp: &CavityExperiment, cfg: &ModelConfig) -> Result<f64> {
    exp.validate()?;
    Ok(dispersion_coefficient(cfg)? * exp.effective_path_m().sqrt())
}

/// FWHM after convolving a Gaussian pulse with a Gaussian delay spread of std `sigma_s`.
pub fn broadened_fwhm(fwhm_in_s: f64, sigma_s: f64) -> f64 {
    fwhm_in_s.hypot(GAUSSIAN_FWHM_FACTOR * sigma_s)
}

#[derive(Debug, Clone, PartialEq)]
pub struct SensitivityFigure {
    pub label: String,
    pub time_resolution_s: f64,
    pub path_m: f64,
    /// time_resolution / √path, s·m⁻¹ᐟ².
    pub figure_s_per_sqrt_m: f64,
    /// Same figure in fs·m⁻¹ᐟ².
    pub figure_fs_per_sqrt_m: f64,
}

impl SensitivityFigure {
    pub fn new(label: impl Into<String>, time_resolution_s: f64, path_m: f64) -> Result<Self> {
        if !(time_resolution_s > 0.0 && path_m > 0.0) {
            return Err(Error::domain(
                "sensitivity figure",
                format!("time resolution and path must be positive, got {time_resolution_s} s and {path_m} m"),
            ));
        }
        let figure = time_resolution_s / path_m.sqrt();
        Ok(SensitivityFigure {
            label: label.into(),
            time_resolution_s,
            path_m,
            figure_s_per_sqrt_m: figure,
            figure_fs_per_sqrt_m: figure / FS,
        })
    }
}

/// Built-in astro (1 ms over 10²² m) and lab (1 fs over 10 km) rows, followed by `extra`.
pub fn sensitivity_table(extra: &[(String, f64, f64)]) -> Result<Vec<SensitivityFigure>> {
    let mut rows = vec![
        SensitivityFigure::new("astro", 1e-3, 1e22)?,
        SensitivityFigure::new("lab", 1e-15, 1e4)?,
    ];
    for (label, dt, path) in extra {
        rows.push(SensitivityFigure::new(label.clone(), *dt, *path)?);
    }
    Ok(rows)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::kinematics::massless_dispersion_closed_form;
    use crate::model::MassMode;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn cavity() -> CavityExperiment {
        CavityExperiment::new(4e3, 70, 4e-15).unwrap()
    }

    #[test]
    fn fwhm_factor() {
        assert_relative_eq!(
            GAUSSIAN_FWHM_FACTOR,
            2.0 * (2.0 * 2f64.ln()).sqrt(),
            max_relative = 1e-15
        );
    }

    #[test]
    fn rejects_bad_experiments() {
        assert!(CavityExperiment::new(0.0, 70, 4e-15).is_err());
        assert!(CavityExperiment::new(4e3, 0, 4e-15).is_err());
        assert!(CavityExperiment::new(4e3, 70, -1.0).is_err());
    }

    #[test]
    fn effective_path() {
        assert_eq!(cavity().effective_path_m(), 2.8e5);
    }

    #[test]
    fn four_km_cavity_is_about_a_femtosecond() {
        let s = predicted_sigma(&cavity(), &ModelConfig::default()).unwrap();
        assert!((0.9e-15..=1.1e-15).contains(&s), "{s:e}");
    }

    #[test]
    fn massless_cavity_matches_closed_form() {
        let cfg = ModelConfig {
            mass_mode: MassMode::Zero,
            ..Default::default()
        };
        let s = predicted_sigma(&cavity(), &cfg).unwrap();
        assert_relative_eq!(
            s,
            massless_dispersion_closed_form(&cfg) * 2.8e5f64.sqrt(),
            max_relative = 1e-8
        );
        assert_relative_eq!(s, 1.05e-15, max_relative = 0.01);
    }

    #[test]
    fn four_times_the_reflections_doubles_sigma() {
        let cfg = ModelConfig::default();
        let a = predicted_sigma(&cavity(), &cfg).unwrap();
        let b = predicted_sigma(&CavityExperiment::new(4e3, 280, 4e-15).unwrap(), &cfg).unwrap();
        assert_relative_eq!(b / a, 2.0, max_relative = 1e-12);
    }

    #[test]
    fn sigma_scales_with_root_path_over_decades() {
        let cfg = ModelConfig::default();
        let k = dispersion_coefficient(&cfg).unwrap();
        for len in [1.0, 10.0, 100.0, 1000.0] {
            let exp = CavityExperiment::new(len, 1, 1e-15).unwrap();
            assert_relative_eq!(
                predicted_sigma(&exp, &cfg).unwrap(),
                k * len.sqrt(),
                max_relative = 1e-14
            );
        }
    }

    #[test]
    fn broadening_examples() {
        assert_relative_eq!(broadened_fwhm(4e-15, 1e-15), 4.6e-15, epsilon = 0.1e-15);
        assert_eq!(broadened_fwhm(4e-15, 0.0), 4e-15);
        assert_relative_eq!(broadened_fwhm(0.0, 1e-15), 2.355e-15, max_relative = 1e-3);
    }

    #[test]
    fn sensitivity_rows() {
        let rows = sensitivity_table(&[("mine".into(), 2e-15, 4.0)]).unwrap();
        assert_eq!(rows.len(), 3);
        assert_relative_eq!(rows[0].figure_s_per_sqrt_m, 1e-14, max_relative = 1e-12);
        assert_relative_eq!(rows[1].figure_s_per_sqrt_m, 1e-17, max_relative = 1e-12);
        assert_relative_eq!(rows[1].figure_fs_per_sqrt_m, 1e-2, max_relative = 1e-12);
        assert_relative_eq!(rows[2].figure_fs_per_sqrt_m, 1.0, max_relative = 1e-12);
        assert!(sensitivity_table(&[("bad".into(), 0.0, 1.0)]).is_err());
        assert_eq!(ASTRO_DISPERSION_LIMITS_FS, (0.2, 0.3));
    }

    proptest! {
        #[test]
        fn broadening_monotone(f in 0.0..1e-13f64, s in 0.0..1e-14f64, df in 1e-17..1e-14f64, ds in 1e-17..1e-14f64) {
            let base = broadened_fwhm(f, s);
            prop_assert!(broadened_fwhm(f + df, s) >= base);
            prop_assert!(broadened_fwhm(f, s + ds) >= base);
        }

        #[test]
        fn broadening_composes_in_quadrature(f in 0.0..1e-13f64, s1 in 0.0..1e-14f64, s2 in 0.0..1e-14f64) {
            let twice = broadened_fwhm(broadened_fwhm(f, s1), s2);
            let once = broadened_fwhm(f, s1.hypot(s2));
            prop_assert!((twice - once).abs() <= 1e-12 * once.max(1e-30));
        }
    }
}
