//! Vacuum as a gas of virtual fermion pairs: permeability, permittivity and
//! photon propagation statistics computed from a relativistic Fermi gas at
//! the electroweak temperature.
//!
//! ```
//! use vacuum_leap::{vacuum_constants, ModelConfig};
//!
//! let vc = vacuum_constants(&ModelConfig::default()).unwrap();
//! assert!(vc.mu0 > 5.0e-6 && vc.mu0 < 6.2e-6);
//! ```

pub mod error;
pub mod fermi;
pub mod kinematics;
pub mod lab;
pub mod leap;
pub mod model;
pub mod quadrature;
pub mod vacuum;

pub use error::{Error, Result};
pub use kinematics::{
    average_speed, band_speed_variation, dispersion_coefficient, grb_comparison, propagation_stats, GrbComparison,
    PropagationStats,
};
pub use lab::{broadened_fwhm, predicted_sigma, sensitivity_table, CavityExperiment, SensitivityFigure};
pub use leap::{simulate, SimulationPlan, SimulationResult};
pub use model::{
    FermionSpecies, MassMode, ModelConfig, MomentConvention, PhysicalConstants, PlanckChoice, SpeciesCatalog,
};
pub use vacuum::{vacuum_constants, VacuumConstants};
