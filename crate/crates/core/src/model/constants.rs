//! SI physical constants (CODATA 2018 exact-defined values where available).

use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct PhysicalConstants {
    /// Planck constant, J·s.
    pub h: f64,
    /// Reduced Planck constant, J·s.
    pub hbar: f64,
    /// Speed of light (defined), m/s.
    pub c: f64,
    /// Elementary charge, C.
    pub e: f64,
    /// J per GeV.
    pub gev_to_joule: f64,
    /// Measured magnetic constant μ₀, H/m.
    pub mu0_measured: f64,
}

const H: f64 = 6.626_070_15e-34;
const E: f64 = 1.602_176_634e-19;

pub const SI: PhysicalConstants = PhysicalConstants {
    h: H,
    hbar: H / (2.0 * PI),
    c: 299_792_458.0,
    e: E,
    gev_to_joule: E * 1.0e9,
    mu0_measured: 1.256_637_062_12e-6,
};

impl Default for PhysicalConstants {
    fn default() -> Self {
        SI
    }
}

impl PhysicalConstants {
    pub fn gev(&self, value_gev: f64) -> f64 {
        value_gev * self.gev_to_joule
    }

    pub fn to_gev(&self, joule: f64) -> f64 {
        joule / self.gev_to_joule
    }
}
