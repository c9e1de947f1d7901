//! Adaptive Gauss–Kronrod (21/10) quadrature over the semi-infinite momentum
//! domain, in the dimensionless variable x = pc/kT.
//!
//! The domain is truncated at `cutoff` (default x = 60, shifted by the largest
//! mc²/kT for massive species). Every integrand here carries a Fermi factor
//! e^{-√(a²+x²)}, so the discarded tail is below e^{-60} of the peak. The range
//! is cut into fixed initial panels, then the panel with the largest error
//! estimate is bisected until the summed estimate meets the tolerance.

use thiserror::Error;

use crate::model::{ModelConfig, SI};

/// Bisection depth limit of any single panel.
pub const MAX_DEPTH: u32 = 40;
/// Hard limit on the number of live panels.
pub const MAX_PANELS: usize = 4000;
pub const DEFAULT_CUTOFF: f64 = 60.0;
pub const DEFAULT_ABS_TOL: f64 = 1e-30;

const INITIAL_BREAKS: [f64; 8] = [0.0, 0.5, 1.0, 2.0, 4.0, 8.0, 16.0, 32.0];

#[derive(Debug, Clone, PartialEq, Error)]
pub enum QuadratureError {
    #[error("no convergence after {panels} panels (best estimate {best:e}, error estimate {error_estimate:e})")]
    NonConvergence {
        best: f64,
        error_estimate: f64,
        panels: usize,
    },
    #[error("integrand is not finite at x = {x:e} (value {value})")]
    NonFinite { x: f64, value: f64 },
}

impl QuadratureError {
    pub fn best_estimate(&self) -> Option<f64> {
        match self {
            QuadratureError::NonConvergence { best, .. } => Some(*best),
            QuadratureError::NonFinite { .. } => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadratureResult {
    pub value: f64,
    pub error_estimate: f64,
    pub evaluations: usize,
}

/// A dimensionless integral ∫₀^cutoff f(x) dx.
pub struct IntegralSpec<F> {
    pub integrand: F,
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub cutoff: f64,
}

impl<F: Fn(f64) -> f64> IntegralSpec<F> {
    pub fn new(integrand: F) -> Self {
        IntegralSpec {
            integrand,
            rel_tol: 1e-10,
            abs_tol: DEFAULT_ABS_TOL,
            cutoff: DEFAULT_CUTOFF,
        }
    }

    pub fn rel_tol(mut self, rel_tol: f64) -> Self {
        self.rel_tol = rel_tol;
        self
    }

    pub fn abs_tol(mut self, abs_tol: f64) -> Self {
        self.abs_tol = abs_tol;
        self
    }

    pub fn cutoff(mut self, cutoff: f64) -> Self {
        self.cutoff = cutoff;
        self
    }
}

#[allow(clippy::excessive_precision)]
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

#[allow(clippy::excessive_precision)]
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

#[allow(clippy::excessive_precision)]
const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_958_109_831_074,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

#[derive(Debug, Clone, Copy)]
struct Panel {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
    depth: u32,
}

/// One 21-point Kronrod evaluation with the embedded 10-point Gauss error
/// estimate, rescaled as in QUADPACK.
pub(crate) fn kronrod21<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Result<(f64, f64), QuadratureError> {
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let eval = |x: f64| {
        let v = f(x);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(QuadratureError::NonFinite { x, value: v })
        }
    };

    let f_center = eval(center)?;
    let mut res_k = WGK[10] * f_center;
    let mut res_g = 0.0;
    let mut res_abs = res_k.abs();
    let mut fv1 = [0.0; 10];
    let mut fv2 = [0.0; 10];
    for j in 0..10 {
        let dx = half * XGK[j];
        let f1 = eval(center - dx)?;
        let f2 = eval(center + dx)?;
        fv1[j] = f1;
        fv2[j] = f2;
        res_k += WGK[j] * (f1 + f2);
        res_abs += WGK[j] * (f1.abs() + f2.abs());
        // odd Kronrod nodes are the Gauss nodes
        if j % 2 == 1 {
            res_g += WG[j / 2] * (f1 + f2);
        }
    }

    let mean = 0.5 * res_k;
    let mut res_asc = WGK[10] * (f_center - mean).abs();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv1[j] - mean).abs() + (fv2[j] - mean).abs());
    }

    let width = half.abs();
    let value = res_k * half;
    let res_abs = res_abs * width;
    let res_asc = res_asc * width;
    let mut err = ((res_k - res_g) * half).abs();
    if res_asc != 0.0 && err != 0.0 {
        err = res_asc * (200.0 * err / res_asc).powf(1.5).min(1.0);
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        err = err.max(50.0 * f64::EPSILON * res_abs);
    }
    Ok((value, err))
}

const EVALS_PER_PANEL: usize = 21;

fn totals(panels: &[Panel]) -> (f64, f64) {
    panels.iter().fold((0.0, 0.0), |(v, e), p| (v + p.value, e + p.error))
}

/// ∫₀^cutoff f(x) dx to `max(rel_tol·|I|, abs_tol)`.
pub fn integrate_semi_infinite<F: Fn(f64) -> f64>(spec: &IntegralSpec<F>) -> Result<QuadratureResult, QuadratureError> {
    let f = &spec.integrand;
    let cutoff = spec.cutoff;
    let mut breaks: Vec<f64> = INITIAL_BREAKS.iter().copied().filter(|&b| b < cutoff).collect();
    breaks.push(cutoff);

    let mut panels = Vec::with_capacity(64);
    for w in breaks.windows(2) {
        let (value, error) = kronrod21(f, w[0], w[1])?;
        panels.push(Panel {
            a: w[0],
            b: w[1],
            value,
            error,
            depth: 0,
        });
    }
    let mut evaluations = panels.len() * EVALS_PER_PANEL;

    loop {
        let (value, error) = totals(&panels);
        let target = (spec.rel_tol * value.abs()).max(spec.abs_tol);
        if error <= target {
            return Ok(QuadratureResult {
                value,
                error_estimate: error,
                evaluations,
            });
        }

        let worst = panels
            .iter()
            .enumerate()
            .filter(|(_, p)| p.depth < MAX_DEPTH)
            .max_by(|(_, p), (_, q)| p.error.total_cmp(&q.error))
            .map(|(i, _)| i);
        let Some(idx) = worst.filter(|_| panels.len() < MAX_PANELS) else {
            return Err(QuadratureError::NonConvergence {
                best: value,
                error_estimate: error,
                panels: panels.len(),
            });
        };

        let p = panels[idx];
        let mid = 0.5 * (p.a + p.b);
        let (lv, le) = kronrod21(f, p.a, mid)?;
        let (rv, re) = kronrod21(f, mid, p.b)?;
        evaluations += 2 * EVALS_PER_PANEL;
        panels[idx] = Panel {
            a: p.a,
            b: mid,
            value: lv,
            error: le,
            depth: p.depth + 1,
        };
        panels.insert(
            idx + 1,
            Panel {
                a: mid,
                b: p.b,
                value: rv,
                error: re,
                depth: p.depth + 1,
            },
        );
    }
}

/// ∫₀^∞ f(p) dp for a momentum-space integrand, evaluated as
/// (kT/c)·∫ f(x·kT/c) dx.
pub fn momentum_integral<F: Fn(f64) -> f64>(f: F, cfg: &ModelConfig) -> Result<f64, QuadratureError> {
    let p_scale = cfg.kt() / SI.c;
    let spec = IntegralSpec::new(|x: f64| f(x * p_scale))
        .rel_tol(cfg.quadrature_rel_tol)
        .cutoff(DEFAULT_CUTOFF + cfg.max_reduced_mass());
    integrate_semi_infinite(&spec).map(|r| r.value * p_scale)
}
