//! Charged fermion species and the catalog of virtual pair types.
//!
//! Default masses are PDG 2024 central values (GeV/c²). Quark masses are
//! current-quark masses: MS-bar at 2 GeV for u, d, s; MS-bar at the quark
//! mass for c, b; the direct-measurement value for t. Constituent masses are
//! not used. Any mass can be overridden per family.

use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
pub struct FermionSpecies {
    pub name: String,
    /// Charge magnitude in units of e.
    pub charge_q: f64,
    /// Rest mass, GeV/c².
    pub mass_gev: f64,
    /// 1 for leptons, 3 for quarks.
    pub color_multiplicity: u32,
}

const ALLOWED_CHARGES: [f64; 3] = [1.0, 2.0 / 3.0, 1.0 / 3.0];

impl FermionSpecies {
    pub fn new(name: impl Into<String>, charge_q: f64, mass_gev: f64, color_multiplicity: u32) -> Result<Self> {
        let name = name.into();
        if !ALLOWED_CHARGES.iter().any(|q| (q - charge_q).abs() < 1e-12) {
            return Err(Error::Config(format!(
                "species `{name}`: charge {charge_q} is not one of 1, 2/3, 1/3"
            )));
        }
        if !(mass_gev > 0.0 && mass_gev.is_finite()) {
            return Err(Error::Config(format!(
                "species `{name}`: mass must be positive, got {mass_gev}"
            )));
        }
        if color_multiplicity != 1 && color_multiplicity != 3 {
            return Err(Error::Config(format!(
                "species `{name}`: colour multiplicity must be 1 or 3, got {color_multiplicity}"
            )));
        }
        Ok(FermionSpecies {
            name,
            charge_q,
            mass_gev,
            color_multiplicity,
        })
    }

    fn lepton(name: &str, mass_gev: f64) -> Self {
        FermionSpecies {
            name: name.to_owned(),
            charge_q: 1.0,
            mass_gev,
            color_multiplicity: 1,
        }
    }

    fn quark(name: &str, charge_q: f64, mass_gev: f64) -> Self {
        FermionSpecies {
            name: name.to_owned(),
            charge_q,
            mass_gev,
            color_multiplicity: 3,
        }
    }

    /// Family name with any colour suffix stripped.
    pub fn family(&self) -> &str {
        self.name.split(':').next().unwrap_or(&self.name)
    }
}

/// Pair species expanded per colour state, in a fixed order.
#[derive(Debug, Clone, PartialEq)]
pub struct SpeciesCatalog {
    species: Vec<FermionSpecies>,
}

const COLOURS: [&str; 3] = ["r", "g", "b"];

impl SpeciesCatalog {
    /// Expand families into one entry per colour state (`up:r`, `up:g`, `up:b`).
    pub fn from_families(families: Vec<FermionSpecies>) -> Self {
        let mut species = Vec::new();
        for family in families {
            if family.color_multiplicity == 1 {
                species.push(family);
            } else {
                for colour in COLOURS.iter().take(family.color_multiplicity as usize) {
                    species.push(FermionSpecies {
                        name: format!("{}:{colour}", family.name),
                        ..family.clone()
                    });
                }
            }
        }
        SpeciesCatalog { species }
    }

    pub fn species(&self) -> &[FermionSpecies] {
        &self.species
    }

    pub fn len(&self) -> usize {
        self.species.len()
    }

    pub fn is_empty(&self) -> bool {
        self.species.is_empty()
    }

    pub fn iter(&self) -> std::slice::Iter<'_, FermionSpecies> {
        self.species.iter()
    }

    /// One representative per family, in catalog order.
    pub fn families(&self) -> Vec<&FermionSpecies> {
        let mut seen: Vec<&FermionSpecies> = Vec::new();
        for s in &self.species {
            if !seen.iter().any(|f| f.family() == s.family()) {
                seen.push(s);
            }
        }
        seen
    }

    pub fn charge_squared_sum(&self) -> f64 {
        self.species.iter().map(|s| s.charge_q * s.charge_q).sum()
    }

    pub fn max_mass_gev(&self) -> f64 {
        self.species.iter().map(|s| s.mass_gev).fold(0.0, f64::max)
    }

    /// Replace the mass of every colour state of `family`.
    pub fn with_mass(mut self, family: &str, mass_gev: f64) -> Result<Self> {
        if !(mass_gev > 0.0 && mass_gev.is_finite()) {
            return Err(Error::Config(format!(
                "mass override for `{family}` must be positive, got {mass_gev}"
            )));
        }
        let mut found = false;
        for s in self.species.iter_mut().filter(|s| s.family() == family) {
            s.mass_gev = mass_gev;
            found = true;
        }
        if found {
            Ok(self)
        } else {
            Err(Error::Config(format!("no species family named `{family}`")))
        }
    }
}

impl Default for SpeciesCatalog {
    fn default() -> Self {
        standard_catalog()
    }
}

impl<'a> IntoIterator for &'a SpeciesCatalog {
    type Item = &'a FermionSpecies;
    type IntoIter = std::slice::Iter<'a, FermionSpecies>;

    fn into_iter(self) -> Self::IntoIter {
        self.species.iter()
    }
}

/// e, μ, τ and the six quark flavours (three colours each): 21 charged pair species.
pub fn standard_catalog() -> SpeciesCatalog {
    SpeciesCatalog::from_families(vec![
        FermionSpecies::lepton("electron", 0.510_998_950e-3),
        FermionSpecies::lepton("muon", 0.105_658_375_5),
        FermionSpecies::lepton("tau", 1.776_86),
        FermionSpecies::quark("up", 2.0 / 3.0, 2.16e-3),
        FermionSpecies::quark("down", 1.0 / 3.0, 4.70e-3),
        FermionSpecies::quark("strange", 1.0 / 3.0, 93.5e-3),
        FermionSpecies::quark("charm", 2.0 / 3.0, 1.273),
        FermionSpecies::quark("bottom", 1.0 / 3.0, 4.183),
        FermionSpecies::quark("top", 2.0 / 3.0, 172.57),
    ])
}
