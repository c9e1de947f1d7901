use rayon::prelude::*;
use vacuum_leap::kinematics::{average_speed, dispersion_coefficient, grb_comparison, propagation_stats};
use vacuum_leap::lab::{
    broadened_fwhm, predicted_sigma, sensitivity_table, CavityExperiment, ASTRO_DISPERSION_LIMITS_FS,
};
use vacuum_leap::leap::{simulate, SimulationPlan};
use vacuum_leap::model::{ModelConfig, SI};
use vacuum_leap::vacuum::vacuum_constants;

use crate::cli::{Command, GlobalArgs, Observable, SimulateArgs, SweepArgs};
use crate::error::CliError;
use crate::output::{OutputRecord, Provenance, Recorder};

/// Defaults, then the config file, then `--planck`, then the individual flags.
pub fn effective_config(global: &GlobalArgs) -> Result<ModelConfig, CliError> {
    let mut cfg = ModelConfig::default();
    if let Some(path) = &global.config {
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
            path: path.display().to_string(),
            source,
        })?;
        cfg.apply_kv_str(&text)?;
    }
    if let Some(choice) = global.planck {
        cfg = cfg.with_planck(choice);
    }
    if let Some(t) = global.temperature {
        cfg.temperature_gev = t;
    }
    if let Some(m) = global.masses {
        cfg.mass_mode = m;
    }
    if let Some(p) = global.uncertainty_planck {
        cfg.uncertainty_planck = p;
    }
    if let Some(p) = global.phase_space_planck {
        cfg.phase_space_planck = p;
    }
    if let Some(p) = global.moment_planck {
        cfg.moment_planck = p;
    }
    if let Some(m) = global.moment {
        cfg.moment_convention = m;
    }
    if let Some(d) = global.degeneracy {
        cfg.degeneracy_multiplier = d;
    }
    if let Some(tol) = global.rel_tol {
        cfg.quadrature_rel_tol = tol;
    }
    cfg.validate()?;
    Ok(cfg)
}

pub fn run(command: &Command, cfg: &ModelConfig) -> Result<Vec<OutputRecord>, CliError> {
    let mut rec = Recorder::new(cfg.fingerprint(), Provenance::Analytic);
    match command {
        Command::Constants => constants(cfg, &mut rec),
        Command::Mu0 { breakdown } => mu0(cfg, *breakdown, &mut rec)?,
        Command::Speed { photon_energy } => {
            let v = average_speed(*photon_energy, cfg)?;
            rec.push("photon_energy", *photon_energy, "J")
                .push("photon_energy_gev", SI.to_gev(*photon_energy), "GeV")
                .push("average_speed", v, "m/s")
                .push("speed_excess", v / SI.c - 1.0, "1");
        }
        Command::Band { e1, e2, e_lv } => {
            let g = grb_comparison(*e1, *e2, *e_lv, cfg)?;
            rec.push("band_low", g.band_gev.0, "GeV")
                .push("band_high", g.band_gev.1, "GeV")
                .push("model_dv_over_c", g.model_dv_over_c, "1")
                .push("lv_model_dv_over_c", g.lv_model_dv_over_c, "1")
                .push("lv_scale", *e_lv, "GeV")
                .push("grb_limit_dv_over_c", g.observed_limit, "1");
        }
        Command::Dispersion => {
            let stats = propagation_stats(cfg)?;
            rec.push("sigma_per_sqrt_length", stats.sigma_per_sqrt_m, "s/m^0.5")
                .push("steps_per_length", stats.steps_per_meter, "1/m")
                .push("mean_step", stats.mean_step_m, "m")
                .push("average_speed", stats.mean_speed_mps, "m/s");
        }
        Command::Simulate(args) => simulate_cmd(args, cfg, &mut rec)?,
        Command::Cavity {
            length,
            reflections,
            fwhm,
        } => {
            let exp = CavityExperiment::new(*length, *reflections, *fwhm)?;
            let sigma = predicted_sigma(&exp, cfg)?;
            rec.push("effective_path", exp.effective_path_m(), "m")
                .push("predicted_sigma", sigma, "s")
                .push("input_fwhm", *fwhm, "s")
                .push("broadened_fwhm", broadened_fwhm(*fwhm, sigma), "s");
        }
        Command::Sensitivity { rows } => {
            for row in sensitivity_table(rows)? {
                let l = &row.label;
                rec.push(format!("{l}.time_resolution"), row.time_resolution_s, "s")
                    .push(format!("{l}.path"), row.path_m, "m")
                    .push(format!("{l}.figure"), row.figure_s_per_sqrt_m, "s/m^0.5")
                    .push(format!("{l}.figure_fs"), row.figure_fs_per_sqrt_m, "fs/m^0.5");
            }
            rec.push("astro_limit_low", ASTRO_DISPERSION_LIMITS_FS.0, "fs/m^0.5")
                .push("astro_limit_high", ASTRO_DISPERSION_LIMITS_FS.1, "fs/m^0.5");
        }
        Command::Sweep(args) => return sweep(args, cfg),
    }
    Ok(rec.finish())
}

fn constants(cfg: &ModelConfig, rec: &mut Recorder) {
    let k = cfg.constants();
    rec.push("h", k.h, "J s")
        .push("hbar", k.hbar, "J s")
        .push("c", k.c, "m/s")
        .push("e", k.e, "C")
        .push("mu0_measured", k.mu0_measured, "H/m")
        .push("kT", cfg.kt(), "J")
        .push("kT_gev", cfg.temperature_gev, "GeV")
        .push("species_states", cfg.catalog.len() as f64, "1")
        .push("charge_squared_sum", cfg.catalog.charge_squared_sum(), "1");
    for f in cfg.catalog.families() {
        let name = f.family();
        rec.push(format!("{name}.mass"), f.mass_gev, "GeV")
            .push(format!("{name}.charge"), f.charge_q, "e")
            .push(format!("{name}.colours"), f64::from(f.color_multiplicity), "1");
    }
}

fn mu0(cfg: &ModelConfig, breakdown: bool, rec: &mut Recorder) -> Result<(), CliError> {
    let vc = vacuum_constants(cfg)?;
    rec.push("mu0", vc.mu0, "H/m")
        .push("inv_mu0", vc.inv_mu0, "m/H")
        .push("epsilon0", vc.epsilon0, "F/m")
        .push("c_derived", vc.c_derived, "m/s")
        .push("mu0_ratio_to_measured", vc.ratio_to_measured, "1");
    if breakdown {
        for (name, v) in &vc.per_species_inv_mu0 {
            rec.push(format!("inv_mu0[{name}]"), *v, "m/H");
        }
        for (name, v) in &vc.per_species_epsilon0 {
            rec.push(format!("epsilon0[{name}]"), *v, "F/m");
        }
    }
    Ok(())
}

fn simulate_cmd(args: &SimulateArgs, cfg: &ModelConfig, rec: &mut Recorder) -> Result<(), CliError> {
    let mut plan = SimulationPlan::new(cfg.clone(), args.length, args.seed, args.chains);
    if let Some(max) = args.max_steps {
        plan.max_steps = max;
    }
    if let Some(e) = args.photon_energy {
        plan.photon_energy_j = e;
        plan.energy_shift = true;
    }
    let r = simulate(&plan)?;
    rec.provenance(Provenance::MonteCarlo)
        .push("path_length", r.path_length_m, "m")
        .push("chains", r.chains as f64, "1")
        .push("seed", args.seed as f64, "1")
        .push("total_steps", r.total_steps as f64, "1")
        .push("mean_steps_per_chain", r.mean_steps_per_chain, "1")
        .push("mean_arrival_time", r.mean_arrival_time_s, "s")
        .push("empirical_sigma", r.empirical_sigma_s, "s")
        .push("empirical_sigma_stderr", r.standard_error_s, "s")
        .push("mean_speed", r.mean_speed_mps, "m/s")
        .push("mean_speed_stderr", r.speed_standard_error_mps, "m/s");
    if let Some(target) = args.target_length {
        rec.push("target_length", target, "m")
            .push("extrapolated_sigma", r.extrapolated_sigma(target), "s");
    }
    let k = dispersion_coefficient(cfg)?;
    rec.provenance(Provenance::Analytic)
        .push("analytic_sigma", k * r.path_length_m.sqrt(), "s")
        .push(
            "analytic_average_speed",
            average_speed(plan.photon_energy_j, cfg)?,
            "m/s",
        );
    Ok(())
}

fn grid(args: &SweepArgs) -> Result<Vec<f64>, CliError> {
    if args.points < 2 {
        return Err(CliError::Usage("sweep needs --points >= 2".into()));
    }
    if args.log && !(args.from > 0.0 && args.to > 0.0) {
        return Err(CliError::Usage("--log sweeps need positive --from and --to".into()));
    }
    let n = (args.points - 1) as f64;
    Ok((0..args.points)
        .map(|i| {
            let f = i as f64 / n;
            if args.log {
                (args.from.ln() + f * (args.to.ln() - args.from.ln())).exp()
            } else {
                args.from + f * (args.to - args.from)
            }
        })
        .collect())
}

fn observe(observable: Observable, cfg: &ModelConfig) -> Result<(f64, &'static str), CliError> {
    let vacuum = || vacuum_constants(cfg);
    Ok(match observable {
        Observable::Mu0 => (vacuum()?.mu0, "H/m"),
        Observable::InvMu0 => (vacuum()?.inv_mu0, "m/H"),
        Observable::Epsilon0 => (vacuum()?.epsilon0, "F/m"),
        Observable::CDerived => (vacuum()?.c_derived, "m/s"),
        Observable::Mu0Ratio => (vacuum()?.ratio_to_measured, "1"),
        Observable::SpeedExcess => (average_speed(0.0, cfg)? / SI.c - 1.0, "1"),
        Observable::Sigma => (dispersion_coefficient(cfg)?, "s/m^0.5"),
        Observable::StepsPerMeter => (propagation_stats(cfg)?.steps_per_meter, "1/m"),
        Observable::MeanStep => (propagation_stats(cfg)?.mean_step_m, "m"),
    })
}

fn observable_name(observable: Observable) -> &'static str {
    match observable {
        Observable::Mu0 => "mu0",
        Observable::InvMu0 => "inv_mu0",
        Observable::Epsilon0 => "epsilon0",
        Observable::CDerived => "c_derived",
        Observable::Mu0Ratio => "mu0_ratio_to_measured",
        Observable::SpeedExcess => "speed_excess",
        Observable::Sigma => "sigma_per_sqrt_length",
        Observable::StepsPerMeter => "steps_per_length",
        Observable::MeanStep => "mean_step",
    }
}

fn sweep(args: &SweepArgs, base: &ModelConfig) -> Result<Vec<OutputRecord>, CliError> {
    let mut probe = base.clone();
    probe
        .set(&args.param, "1", 0)
        .map_err(|e| CliError::Usage(format!("--param `{}`: {e}", args.param)))?;
    if !args.param.starts_with("mass.")
        && !matches!(
            args.param.as_str(),
            "temperature_gev" | "degeneracy_multiplier" | "quadrature_rel_tol"
        )
    {
        return Err(CliError::Usage(format!(
            "--param `{}` is not a numeric key",
            args.param
        )));
    }
    let points = grid(args)?;
    let name = observable_name(args.observable);
    points
        .par_iter()
        .map(|&x| {
            let mut cfg = base.clone();
            cfg.set(&args.param, &format!("{x:e}"), 0)?;
            cfg.validate()?;
            let (value, units) = observe(args.observable, &cfg)?;
            Ok(OutputRecord {
                quantity: name.to_owned(),
                value,
                units: units.to_owned(),
                config_fingerprint: cfg.fingerprint(),
                provenance: Provenance::Analytic,
                parameter: Some(args.param.clone()),
                parameter_value: Some(x),
            })
        })
        .collect()
}
