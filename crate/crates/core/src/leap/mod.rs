//! Monte Carlo photon propagation as leaps between virtual pairs.
//!
//! A photon crossing a path of length L leaps H/(4p) per excited pair and
//! dwells a Uniform(0, T) time on it, T = H/(2ε). Running metres directly
//! would take ~10¹⁸ steps, so chains cover picometre-to-nanometre paths and
//! the arrival-time spread is extrapolated with √L (independent steps).

mod sampler;
mod simulate;

pub use sampler::{open_unit, Leap, LeapSampler, MomentumTable, SamplerTables, TABLE_KNOTS};
pub use simulate::{chain_rng, simulate, simulate_with, ChainOutcome, SimulationPlan, SimulationResult};
