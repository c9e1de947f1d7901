//! Model configuration and its flat `key = value` file format.
//!
//! ```text
//! # comments start with '#'
//! temperature_gev = 246.22
//! mass_mode = physical          # physical | zero
//! uncertainty_planck = h        # h | hbar
//! phase_space_planck = h
//! moment_planck = h
//! moment_convention = relativistic   # relativistic | nonrelativistic
//! degeneracy_multiplier = 1
//! quadrature_rel_tol = 1e-10
//! mass.top = 172.57             # per-family mass override, GeV
//! ```

use std::fmt;
use std::str::FromStr;

use sha2::{Digest, Sha256};

use super::constants::{PhysicalConstants, SI};
use super::species::{standard_catalog, FermionSpecies, SpeciesCatalog};
use crate::error::{Error, Result};

/// Higgs vacuum expectation value, GeV.
pub const DEFAULT_TEMPERATURE_GEV: f64 = 246.22;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PlanckChoice {
    H,
    HBar,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MassMode {
    Physical,
    Zero,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MomentConvention {
    Relativistic,
    NonRelativistic,
}

macro_rules! keyword_enum {
    ($ty:ident { $($variant:ident => $text:literal),+ $(,)? }) => {
        impl fmt::Display for $ty {
            fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
                f.write_str(match self { $($ty::$variant => $text),+ })
            }
        }

        impl FromStr for $ty {
            type Err = Error;

            fn from_str(s: &str) -> Result<Self> {
                match s.trim().to_ascii_lowercase().as_str() {
                    $($text => Ok($ty::$variant),)+
                    other => Err(Error::Config(format!(
                        "`{other}` is not a valid {}; expected one of: {}",
                        stringify!($ty),
                        [$($text),+].join(", ")
                    ))),
                }
            }
        }
    };
}

keyword_enum!(PlanckChoice { H => "h", HBar => "hbar" });
keyword_enum!(MassMode { Physical => "physical", Zero => "zero" });
keyword_enum!(MomentConvention {
    Relativistic => "relativistic",
    NonRelativistic => "nonrelativistic",
});

#[derive(Debug, Clone, PartialEq)]
pub struct ModelConfig {
    /// Vacuum temperature kT, GeV.
    pub temperature_gev: f64,
    pub mass_mode: MassMode,
    /// Constant in ET = H and px = H.
    pub uncertainty_planck: PlanckChoice,
    /// Constant in the H³ phase-space denominator.
    pub phase_space_planck: PlanckChoice,
    /// Constant in the magnetic and dipole moments.
    pub moment_planck: PlanckChoice,
    pub moment_convention: MomentConvention,
    pub degeneracy_multiplier: f64,
    pub quadrature_rel_tol: f64,
    pub catalog: SpeciesCatalog,
}

impl Default for ModelConfig {
    fn default() -> Self {
        ModelConfig {
            temperature_gev: DEFAULT_TEMPERATURE_GEV,
            mass_mode: MassMode::Physical,
            uncertainty_planck: PlanckChoice::H,
            phase_space_planck: PlanckChoice::H,
            moment_planck: PlanckChoice::H,
            moment_convention: MomentConvention::Relativistic,
            degeneracy_multiplier: 1.0,
            quadrature_rel_tol: 1e-10,
            catalog: standard_catalog(),
        }
    }
}

pub const CONFIG_KEYS: [&str; 8] = [
    "temperature_gev",
    "mass_mode",
    "uncertainty_planck",
    "phase_space_planck",
    "moment_planck",
    "moment_convention",
    "degeneracy_multiplier",
    "quadrature_rel_tol",
];

impl ModelConfig {
    /// Defaults with every Planck toggle set to `choice`.
    pub fn with_planck(mut self, choice: PlanckChoice) -> Self {
        self.uncertainty_planck = choice;
        self.phase_space_planck = choice;
        self.moment_planck = choice;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.temperature_gev > 0.0 && self.temperature_gev.is_finite()) {
            return Err(Error::Config(format!(
                "temperature_gev must be positive, got {}",
                self.temperature_gev
            )));
        }
        if !(self.degeneracy_multiplier > 0.0 && self.degeneracy_multiplier.is_finite()) {
            return Err(Error::Config(format!(
                "degeneracy_multiplier must be positive, got {}",
                self.degeneracy_multiplier
            )));
        }
        if !(self.quadrature_rel_tol > 0.0 && self.quadrature_rel_tol <= 1e-4) {
            return Err(Error::Config(format!(
                "quadrature_rel_tol must lie in (0, 1e-4], got {}",
                self.quadrature_rel_tol
            )));
        }
        if self.catalog.is_empty() {
            return Err(Error::Config("species catalog is empty".into()));
        }
        Ok(())
    }

    pub fn constants(&self) -> &'static PhysicalConstants {
        &SI
    }

    /// kT in joules.
    pub fn kt(&self) -> f64 {
        SI.gev(self.temperature_gev)
    }

    pub fn planck(choice: PlanckChoice) -> f64 {
        match choice {
            PlanckChoice::H => SI.h,
            PlanckChoice::HBar => SI.hbar,
        }
    }

    pub fn uncertainty_constant(&self) -> f64 {
        Self::planck(self.uncertainty_planck)
    }

    pub fn phase_space_constant(&self) -> f64 {
        Self::planck(self.phase_space_planck)
    }

    pub fn moment_constant(&self) -> f64 {
        Self::planck(self.moment_planck)
    }

    /// mc² in joules; zero in massless mode.
    pub fn rest_energy(&self, species: &FermionSpecies) -> f64 {
        match self.mass_mode {
            MassMode::Physical => SI.gev(species.mass_gev),
            MassMode::Zero => 0.0,
        }
    }

    /// mc²/kT.
    pub fn reduced_mass(&self, species: &FermionSpecies) -> f64 {
        match self.mass_mode {
            MassMode::Physical => species.mass_gev / self.temperature_gev,
            MassMode::Zero => 0.0,
        }
    }

    /// Largest mc²/kT in the catalog (0 in massless mode).
    pub fn max_reduced_mass(&self) -> f64 {
        match self.mass_mode {
            MassMode::Physical => self.catalog.max_mass_gev() / self.temperature_gev,
            MassMode::Zero => 0.0,
        }
    }

    /// Parse a config file body on top of the defaults.
    pub fn from_kv_str(text: &str) -> Result<Self> {
        let mut cfg = ModelConfig::default();
        cfg.apply_kv_str(text)?;
        Ok(cfg)
    }

    /// Apply `key = value` lines on top of `self`; unknown keys are rejected.
    pub fn apply_kv_str(&mut self, text: &str) -> Result<()> {
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line
                .split_once('=')
                .ok_or_else(|| Error::Config(format!("line {}: expected `key = value`, got `{line}`", idx + 1)))?;
            self.set(key.trim(), value.trim(), idx + 1)?;
        }
        self.validate()
    }

    /// Set a single key. `line` is only used in error messages.
    pub fn set(&mut self, key: &str, value: &str, line: usize) -> Result<()> {
        let number = |v: &str| -> Result<f64> {
            v.parse::<f64>()
                .map_err(|_| Error::Config(format!("line {line}: `{key}` expects a number, got `{v}`")))
        };
        match key {
            "temperature_gev" => self.temperature_gev = number(value)?,
            "mass_mode" => self.mass_mode = value.parse()?,
            "uncertainty_planck" => self.uncertainty_planck = value.parse()?,
            "phase_space_planck" => self.phase_space_planck = value.parse()?,
            "moment_planck" => self.moment_planck = value.parse()?,
            "moment_convention" => self.moment_convention = value.parse()?,
            "degeneracy_multiplier" => self.degeneracy_multiplier = number(value)?,
            "quadrature_rel_tol" => self.quadrature_rel_tol = number(value)?,
            _ => match key.strip_prefix("mass.") {
                Some(family) => {
                    let mass = number(value)?;
                    self.catalog = std::mem::take(&mut self.catalog).with_mass(family, mass)?;
                }
                None => {
                    return Err(Error::UnknownKey {
                        key: key.to_owned(),
                        line,
                    })
                }
            },
        }
        Ok(())
    }

    /// Canonical rendering in the config-file format; parses back to `self`.
    pub fn to_kv_string(&self) -> String {
        let mut out = format!(
            "temperature_gev = {:?}\nmass_mode = {}\nuncertainty_planck = {}\n\
             phase_space_planck = {}\nmoment_planck = {}\nmoment_convention = {}\n\
             degeneracy_multiplier = {:?}\nquadrature_rel_tol = {:?}\n",
            self.temperature_gev,
            self.mass_mode,
            self.uncertainty_planck,
            self.phase_space_planck,
            self.moment_planck,
            self.moment_convention,
            self.degeneracy_multiplier,
            self.quadrature_rel_tol,
        );
        for family in self.catalog.families() {
            out.push_str(&format!("mass.{} = {:?}\n", family.family(), family.mass_gev));
        }
        out
    }

    /// Short stable hash of the effective configuration.
    pub fn fingerprint(&self) -> String {
        let digest = Sha256::digest(self.to_kv_string().as_bytes());
        digest[..8].iter().map(|b| format!("{b:02x}")).collect()
    }
}
