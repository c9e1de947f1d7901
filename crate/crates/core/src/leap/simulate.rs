use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use super::sampler::LeapSampler;
use crate::error::{Error, Result};
use crate::kinematics::steps_per_length;
use crate::model::ModelConfig;

pub const DEFAULT_MAX_STEPS: u64 = 10_000_000;
const MIN_MAX_STEPS: u64 = 1_000;

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationPlan {
    pub path_length_m: f64,
    pub seed: u64,
    pub chains: usize,
    /// Per-chain step cap.
    pub max_steps: u64,
    /// ε_γ, J. Only used when `energy_shift` is set.
    pub photon_energy_j: f64,
    /// Add ε_γ/2 to each fermion energy, as the average-speed formula does.
    pub energy_shift: bool,
    pub cfg: ModelConfig,
}

impl SimulationPlan {
    pub fn new(cfg: ModelConfig, path_length_m: f64, seed: u64, chains: usize) -> Self {
        SimulationPlan {
            path_length_m,
            seed,
            chains,
            max_steps: DEFAULT_MAX_STEPS,
            photon_energy_j: 0.0,
            energy_shift: false,
            cfg,
        }
    }

    pub fn validate(&self) -> Result<()> {
        self.cfg.validate()?;
        if !(self.path_length_m > 0.0 && self.path_length_m.is_finite()) {
            return Err(Error::Config(format!(
                "path length must be positive, got {}",
                self.path_length_m
            )));
        }
        if self.chains == 0 {
            return Err(Error::Config("at least one chain is required".into()));
        }
        if self.max_steps < MIN_MAX_STEPS {
            return Err(Error::Config(format!(
                "max_steps must be at least {MIN_MAX_STEPS}, got {}",
                self.max_steps
            )));
        }
        if !(self.photon_energy_j >= 0.0 && self.photon_energy_j.is_finite()) {
            return Err(Error::Config(format!(
                "photon energy must be non-negative, got {}",
                self.photon_energy_j
            )));
        }
        Ok(())
    }

    fn sampler(&self) -> Result<LeapSampler> {
        let sampler = LeapSampler::new(&self.cfg)?;
        Ok(if self.energy_shift {
            sampler.with_photon_energy(self.photon_energy_j)
        } else {
            sampler
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ChainOutcome {
    pub steps: u64,
    pub arrival_time_s: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SimulationResult {
    pub path_length_m: f64,
    pub chains: usize,
    pub total_steps: u64,
    /// Sum of per-chain arrival times, s.
    pub total_time_s: f64,
    /// Sum of per-chain path lengths, m.
    pub total_length_m: f64,
    pub mean_arrival_time_s: f64,
    /// Sample standard deviation of arrival times across chains, s.
    pub empirical_sigma_s: f64,
    /// Standard error of `empirical_sigma_s` (normal approximation), s.
    pub standard_error_s: f64,
    /// Standard error of the mean arrival time, s.
    pub mean_time_standard_error_s: f64,
    pub mean_speed_mps: f64,
    pub speed_standard_error_mps: f64,
    pub mean_steps_per_chain: f64,
    pub steps_standard_error: f64,
    /// Per-chain results in chain order.
    pub outcomes: Vec<ChainOutcome>,
}

impl SimulationResult {
    /// σ at another path length by √L scaling.
    pub fn extrapolated_sigma(&self, target_length_m: f64) -> f64 {
        if target_length_m == self.path_length_m {
            return self.empirical_sigma_s;
        }
        self.empirical_sigma_s * (target_length_m / self.path_length_m).sqrt()
    }

    fn from_outcomes(path_length_m: f64, outcomes: Vec<ChainOutcome>) -> Self {
        let chains = outcomes.len();
        let n = chains as f64;
        let total_steps: u64 = outcomes.iter().map(|o| o.steps).sum();
        let total_time_s: f64 = outcomes.iter().map(|o| o.arrival_time_s).sum();
        let mean_arrival_time_s = total_time_s / n;
        let mean_steps_per_chain = total_steps as f64 / n;

        let (time_var, step_var) = if chains > 1 {
            let tv = outcomes
                .iter()
                .map(|o| (o.arrival_time_s - mean_arrival_time_s).powi(2))
                .sum::<f64>()
                / (n - 1.0);
            let sv = outcomes
                .iter()
                .map(|o| (o.steps as f64 - mean_steps_per_chain).powi(2))
                .sum::<f64>()
                / (n - 1.0);
            (tv, sv)
        } else {
            (0.0, 0.0)
        };
        let sigma = time_var.sqrt();
        let standard_error_s = if chains > 1 {
            sigma / (2.0 * (n - 1.0)).sqrt()
        } else {
            0.0
        };
        let mean_time_standard_error_s = sigma / n.sqrt();
        let mean_speed_mps = path_length_m / mean_arrival_time_s;

        SimulationResult {
            path_length_m,
            chains,
            total_steps,
            total_time_s,
            total_length_m: path_length_m * n,
            mean_arrival_time_s,
            empirical_sigma_s: sigma,
            standard_error_s,
            mean_time_standard_error_s,
            mean_speed_mps,
            speed_standard_error_mps: mean_speed_mps * mean_time_standard_error_s / mean_arrival_time_s,
            mean_steps_per_chain,
            steps_standard_error: (step_var / n).sqrt(),
            outcomes,
        }
    }
}

/// Random stream of chain `chain`: ChaCha8 keyed by `seed`, stream id = chain index.
pub fn chain_rng(seed: u64, chain: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(chain as u64);
    rng
}

fn cap_error(plan: &SimulationPlan, steps_per_m: f64) -> Error {
    let limit = plan.max_steps as f64 / steps_per_m;
    Error::Simulation(format!(
        "path length {:e} m needs about {:.3e} steps per chain, above max_steps = {}; \
         reduce path_length_m below {:.1e} m",
        plan.path_length_m,
        steps_per_m * plan.path_length_m,
        plan.max_steps,
        0.5 * limit
    ))
}

fn run_chain(plan: &SimulationPlan, sampler: &LeapSampler, chain: usize, steps_per_m: f64) -> Result<ChainOutcome> {
    let mut rng = chain_rng(plan.seed, chain);
    let target = plan.path_length_m;
    let mut position = 0.0;
    let mut time = 0.0;
    let mut steps = 0u64;
    loop {
        let leap = sampler.step(&mut rng);
        steps += 1;
        let remaining = target - position;
        if leap.length >= remaining {
            // prorate the last leap
            time += leap.dwell * (remaining / leap.length);
            return Ok(ChainOutcome {
                steps,
                arrival_time_s: time,
            });
        }
        position += leap.length;
        time += leap.dwell;
        if steps >= plan.max_steps {
            return Err(cap_error(plan, steps_per_m));
        }
    }
}

/// Run `plan.chains` independent chains (in parallel) and aggregate in chain order.
pub fn simulate(plan: &SimulationPlan) -> Result<SimulationResult> {
    plan.validate()?;
    let sampler = plan.sampler()?;
    simulate_with(plan, &sampler)
}

/// Same as [`simulate`] with a prebuilt sampler.
pub fn simulate_with(plan: &SimulationPlan, sampler: &LeapSampler) -> Result<SimulationResult> {
    plan.validate()?;
    let steps_per_m = steps_per_length(&plan.cfg)?;
    if steps_per_m * plan.path_length_m > plan.max_steps as f64 {
        return Err(cap_error(plan, steps_per_m));
    }
    let outcomes = (0..plan.chains)
        .into_par_iter()
        .map(|chain| run_chain(plan, sampler, chain, steps_per_m))
        .collect::<Result<Vec<_>>>()?;
    Ok(SimulationResult::from_outcomes(plan.path_length_m, outcomes))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MassMode;

    fn small_plan(chains: usize) -> SimulationPlan {
        SimulationPlan::new(ModelConfig::default(), 2e-15, 11, chains)
    }

    #[test]
    fn plan_validation() {
        let mut p = small_plan(4);
        p.validate().unwrap();
        p.chains = 0;
        assert!(p.validate().is_err());
        let mut p = small_plan(4);
        p.path_length_m = 0.0;
        assert!(p.validate().is_err());
        let mut p = small_plan(4);
        p.max_steps = 10;
        assert!(p.validate().is_err());
    }

    #[test]
    fn step_cap_names_the_fix() {
        let mut p = small_plan(2);
        p.path_length_m = 1e-3;
        let err = simulate(&p).unwrap_err().to_string();
        assert!(err.contains("reduce path_length_m"), "{err}");
    }

    #[test]
    fn lengths_and_extrapolation() {
        let r = simulate(&small_plan(8)).unwrap();
        assert_eq!(r.outcomes.len(), 8);
        assert!((r.total_length_m / (8.0 * 2e-15) - 1.0).abs() < 1e-6);
        assert!(r.empirical_sigma_s >= 0.0);
        assert_eq!(r.extrapolated_sigma(2e-15), r.empirical_sigma_s);
        assert!((r.extrapolated_sigma(8e-15) / r.empirical_sigma_s - 2.0).abs() < 1e-12);
    }

    #[test]
    fn chain_streams_independent_of_chain_count() {
        let a = simulate(&small_plan(5)).unwrap();
        let b = simulate(&small_plan(9)).unwrap();
        assert_eq!(a.outcomes[..], b.outcomes[..5]);
    }

    #[test]
    fn single_chain_has_zero_spread() {
        let r = simulate(&small_plan(1)).unwrap();
        assert_eq!(r.empirical_sigma_s, 0.0);
        assert!(r.mean_speed_mps > 0.0);
    }

    #[test]
    fn energy_shift_shortens_leaps() {
        let cfg = ModelConfig {
            mass_mode: MassMode::Zero,
            ..Default::default()
        };
        let plain = SimulationPlan::new(cfg.clone(), 2e-15, 5, 4);
        let mut shifted = plain.clone();
        shifted.energy_shift = true;
        shifted.photon_energy_j = cfg.kt();
        let a = simulate(&plain).unwrap();
        let b = simulate(&shifted).unwrap();
        assert!(b.mean_steps_per_chain > a.mean_steps_per_chain);
    }
}
