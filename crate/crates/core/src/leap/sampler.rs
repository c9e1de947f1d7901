//! Inverse-CDF sampling of pair species and fermion momentum.
//!
//! Each species' momentum distribution x²/(e^{√(a²+x²)} + 1), x = pc/kT, is
//! tabulated on a grid with quadratically growing spacing, dense near x = 0
//! where 1/p and 1/ε weight the rare soft leaps heavily. The CDF at every knot comes from a 21-point
//! Kronrod rule per interval, the exact density gives the knot slopes, and the
//! slopes are Fritsch–Carlson limited so the cubic Hermite CDF is monotone.
//! Inversion solves the local cubic with safeguarded Newton steps.

use rand_chacha::rand_core::RngCore;

use crate::error::{Error, Result};
use crate::fermi::occupation;
use crate::model::{ModelConfig, SI};
use crate::quadrature::{kronrod21, DEFAULT_CUTOFF};

pub const TABLE_KNOTS: usize = 4096;

/// One interpolation interval, packed so inversion touches a single cache line.
#[derive(Debug, Clone, Copy)]
struct Segment {
    x0: f64,
    dx: f64,
    f0: f64,
    f1: f64,
    /// Limited end slopes dF/dt (dF/dx scaled by dx).
    m0: f64,
    m1: f64,
}

impl Segment {
    fn hermite(&self, t: f64) -> (f64, f64) {
        let Segment { f0, f1, m0, m1, .. } = *self;
        let t2 = t * t;
        let t3 = t2 * t;
        let value =
            (2.0 * t3 - 3.0 * t2 + 1.0) * f0 + (t3 - 2.0 * t2 + t) * m0 + (-2.0 * t3 + 3.0 * t2) * f1 + (t3 - t2) * m1;
        let deriv = (6.0 * t2 - 6.0 * t) * (f0 - f1) + (3.0 * t2 - 4.0 * t + 1.0) * m0 + (3.0 * t2 - 2.0 * t) * m1;
        (value, deriv)
    }
}

#[derive(Debug, Clone)]
pub struct MomentumTable {
    reduced_mass: f64,
    knots: Vec<f64>,
    cdf: Vec<f64>,
    segments: Vec<Segment>,
    /// Normalized density dF/dx at each knot.
    pdf: Vec<f64>,
    /// guide[j]: interval containing u = j/len, so inversion starts near its answer.
    guide: Vec<u32>,
}

impl MomentumTable {
    /// Tabulate the momentum CDF for reduced mass `a = mc²/kT`.
    pub fn new(reduced_mass: f64) -> Result<Self> {
        let a = reduced_mass;
        let density = move |x: f64| x * x * occupation(a.hypot(x));
        let upper = DEFAULT_CUTOFF + a;
        let n = TABLE_KNOTS;
        let knots: Vec<f64> = (0..n)
            .map(|k| {
                let s = k as f64 / (n - 1) as f64;
                upper * s * s
            })
            .collect();

        let mut cumulative = Vec::with_capacity(n);
        cumulative.push(0.0);
        let mut acc = 0.0;
        for w in knots.windows(2) {
            let (piece, _) = kronrod21(&density, w[0], w[1]).map_err(|source| Error::Quadrature {
                integral: "momentum table".into(),
                source,
            })?;
            acc += piece;
            cumulative.push(acc);
        }
        let total = acc;
        if !(total > 0.0 && total.is_finite()) {
            return Err(Error::Simulation(format!(
                "momentum distribution for reduced mass {a} is not normalizable (total {total})"
            )));
        }
        let cdf: Vec<f64> = cumulative.iter().map(|c| c / total).collect();
        let pdf: Vec<f64> = knots.iter().map(|&x| density(x) / total).collect();

        let segments = (0..n - 1)
            .map(|k| {
                let dx = knots[k + 1] - knots[k];
                let secant = (cdf[k + 1] - cdf[k]) / dx;
                let tau = if secant > 0.0 {
                    let norm = (pdf[k] / secant).hypot(pdf[k + 1] / secant);
                    if norm > 3.0 {
                        3.0 / norm
                    } else {
                        1.0
                    }
                } else {
                    0.0
                };
                Segment {
                    x0: knots[k],
                    dx,
                    f0: cdf[k],
                    f1: cdf[k + 1],
                    m0: tau * pdf[k] * dx,
                    m1: tau * pdf[k + 1] * dx,
                }
            })
            .collect();

        let guide = (0..n)
            .map(|j| {
                let u = j as f64 / n as f64;
                cdf.partition_point(|&c| c <= u).saturating_sub(1).min(n - 2) as u32
            })
            .collect();

        Ok(MomentumTable {
            reduced_mass: a,
            knots,
            cdf,
            segments,
            pdf,
            guide,
        })
    }

    pub fn reduced_mass(&self) -> f64 {
        self.reduced_mass
    }

    pub fn knots(&self) -> &[f64] {
        &self.knots
    }

    pub fn cdf_values(&self) -> &[f64] {
        &self.cdf
    }

    pub fn pdf_values(&self) -> &[f64] {
        &self.pdf
    }

    fn interval_of_x(&self, x: f64) -> usize {
        let n = self.knots.len();
        let upper = self.knots[n - 1];
        let mut k = ((x / upper).sqrt() * (n - 1) as f64) as usize;
        k = k.min(n - 2);
        while k > 0 && x < self.knots[k] {
            k -= 1;
        }
        while k < n - 2 && x >= self.knots[k + 1] {
            k += 1;
        }
        k
    }

    /// Interpolated CDF at dimensionless momentum `x`.
    pub fn cdf(&self, x: f64) -> f64 {
        if x <= 0.0 {
            return 0.0;
        }
        let last = *self.knots.last().unwrap();
        if x >= last {
            return 1.0;
        }
        let k = self.interval_of_x(x);
        let seg = &self.segments[k];
        let t = (x - seg.x0) / seg.dx;
        if k == 0 {
            // F ∝ x³ as x → 0
            return seg.f1 * t * t * t;
        }
        seg.hermite(t).0
    }

    /// x with cdf(x) = u, for u in [0, 1).
    pub fn inverse(&self, u: f64) -> f64 {
        let last = self.segments.len() - 1;
        let mut k = self.guide[((u * self.guide.len() as f64) as usize).min(self.guide.len() - 1)] as usize;
        while k < last && self.segments[k].f1 <= u {
            k += 1;
        }
        let seg = &self.segments[k];
        let (f0, f1) = (seg.f0, seg.f1);
        let span = f1 - f0;
        if span <= 0.0 {
            return seg.x0;
        }
        if k == 0 {
            return seg.dx * (u / f1).cbrt();
        }
        let (mut lo, mut hi) = (0.0, 1.0);
        let mut t = ((u - f0) / span).clamp(0.0, 1.0);
        for _ in 0..60 {
            let (value, deriv) = seg.hermite(t);
            let residual = value - u;
            // CDF values carry ~1 ulp of rounding; Newton cannot resolve below that
            if residual.abs() <= 2.0 * f64::EPSILON * f1 {
                break;
            }
            if residual > 0.0 {
                hi = t;
            } else {
                lo = t;
            }
            let newton = t - residual / deriv;
            let next = if deriv > 0.0 && newton >= lo && newton <= hi {
                newton
            } else {
                0.5 * (lo + hi)
            };
            let step = (next - t).abs();
            t = next;
            if step <= 1e-14 {
                break;
            }
        }
        seg.x0 + t * seg.dx
    }
}

#[derive(Debug, Clone)]
pub struct SamplerTables {
    /// Cumulative species probabilities ∝ ∫nᵢ dp; last entry is 1.
    pub species_cdf: Vec<f64>,
    pub momentum: Vec<MomentumTable>,
}

impl SamplerTables {
    pub fn build(cfg: &ModelConfig) -> Result<Self> {
        let momentum = cfg
            .catalog
            .iter()
            .map(|s| MomentumTable::new(cfg.reduced_mass(s)))
            .collect::<Result<Vec<_>>>()?;
        // normalizations share every prefactor, so the raw table totals are the weights
        let weights: Vec<f64> = cfg
            .catalog
            .iter()
            .map(|s| {
                let a = cfg.reduced_mass(s);
                let density = move |x: f64| x * x * occupation(a.hypot(x));
                crate::quadrature::integrate_semi_infinite(
                    &crate::quadrature::IntegralSpec::new(density)
                        .rel_tol(1e-13)
                        .cutoff(DEFAULT_CUTOFF + a),
                )
                .map(|r| r.value)
                .map_err(|source| Error::Quadrature {
                    integral: format!("species weight [{}]", s.name),
                    source,
                })
            })
            .collect::<Result<_>>()?;
        let total: f64 = weights.iter().sum();
        let mut acc = 0.0;
        let mut species_cdf: Vec<f64> = weights
            .iter()
            .map(|w| {
                acc += w;
                acc / total
            })
            .collect();
        *species_cdf.last_mut().unwrap() = 1.0;
        Ok(SamplerTables { species_cdf, momentum })
    }

    pub fn species_weights(&self) -> Vec<f64> {
        let mut prev = 0.0;
        self.species_cdf
            .iter()
            .map(|&c| {
                let w = c - prev;
                prev = c;
                w
            })
            .collect()
    }

    pub fn pick_species(&self, u: f64) -> usize {
        self.species_cdf
            .partition_point(|&c| c <= u)
            .min(self.species_cdf.len() - 1)
    }
}

/// Uniform draw on the open interval (0, 1).
pub fn open_unit<R: RngCore>(rng: &mut R) -> f64 {
    ((rng.next_u64() >> 12) as f64 + 0.5) * (1.0 / (1u64 << 52) as f64)
}

/// One absorption-dwell-reemission cycle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Leap {
    pub species: usize,
    /// Fermion momentum, kg·m/s.
    pub momentum: f64,
    /// Leap length H/(4p'), m.
    pub length: f64,
    /// Pair lifetime H/(2ε'), s.
    pub lifetime: f64,
    /// Time spent on the pair, uniform on [0, lifetime], s.
    pub dwell: f64,
}

/// Species, momentum and dwell sampler for one model configuration.
#[derive(Debug, Clone)]
pub struct LeapSampler {
    tables: SamplerTables,
    rest_energy: Vec<f64>,
    momentum_scale: f64,
    planck: f64,
    /// ε_γ/2 added to every fermion energy when nonzero.
    energy_shift: f64,
}

impl LeapSampler {
    pub fn new(cfg: &ModelConfig) -> Result<Self> {
        Ok(Self::from_tables(SamplerTables::build(cfg)?, cfg))
    }

    pub fn from_tables(tables: SamplerTables, cfg: &ModelConfig) -> Self {
        LeapSampler {
            tables,
            rest_energy: cfg.catalog.iter().map(|s| cfg.rest_energy(s)).collect(),
            momentum_scale: cfg.kt() / SI.c,
            planck: cfg.uncertainty_constant(),
            energy_shift: 0.0,
        }
    }

    /// Raise each fermion energy by ε_γ/2 (the same shift as the average-speed formula).
    pub fn with_photon_energy(mut self, photon_energy_j: f64) -> Self {
        self.energy_shift = 0.5 * photon_energy_j;
        self
    }

    pub fn tables(&self) -> &SamplerTables {
        &self.tables
    }

    pub fn step<R: RngCore>(&self, rng: &mut R) -> Leap {
        let species = self.tables.pick_species(open_unit(rng));
        let x = self.tables.momentum[species]
            .inverse(open_unit(rng))
            .max(f64::MIN_POSITIVE);
        let u = open_unit(rng);

        let momentum = x * self.momentum_scale;
        let pc = momentum * SI.c;
        let rest = self.rest_energy[species];
        let eps = if rest == 0.0 {
            pc
        } else {
            (rest * rest + pc * pc).sqrt()
        };
        let (eps, pc) = if self.energy_shift > 0.0 {
            let d = self.energy_shift;
            (eps + d, (pc * pc + d * (2.0 * eps + d)).sqrt())
        } else {
            (eps, pc)
        };
        let length = self.planck * SI.c / (4.0 * pc);
        let lifetime = self.planck / (2.0 * eps);
        Leap {
            species,
            momentum,
            length,
            lifetime,
            dwell: u * lifetime,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::MassMode;
    use crate::quadrature::{integrate_semi_infinite, IntegralSpec};
    use rand_chacha::rand_core::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn exact_cdf(a: f64, x: f64) -> f64 {
        let density = move |y: f64| y * y * occupation(a.hypot(y));
        let total = integrate_semi_infinite(&IntegralSpec::new(density).rel_tol(1e-12).cutoff(60.0 + a))
            .unwrap()
            .value;
        let part = integrate_semi_infinite(&IntegralSpec::new(density).rel_tol(1e-12).cutoff(x))
            .unwrap()
            .value;
        part / total
    }

    #[test]
    fn cdf_monotone_and_normalized() {
        for a in [0.0, 2e-6, 0.7] {
            let t = MomentumTable::new(a).unwrap();
            assert!(t.knots().len() >= 2048);
            assert!(t.cdf_values().windows(2).all(|w| w[1] >= w[0]));
            assert!((t.cdf_values().last().unwrap() - 1.0).abs() < 1e-12);
            // interpolant stays monotone between knots too
            let mut last = 0.0;
            for i in 0..20_000 {
                let x = 0.002 * i as f64;
                let c = t.cdf(x);
                assert!(c >= last - 1e-15, "a={a} x={x}");
                last = c;
            }
        }
    }

    #[test]
    fn inverse_round_trip() {
        for a in [0.0, 7.2e-3, 0.7] {
            let t = MomentumTable::new(a).unwrap();
            for x in [1e-3, 0.01, 0.1, 0.5, 1.0, 1.8, 3.3, 7.0, 15.0, 25.0] {
                let u = exact_cdf(a, x);
                let back = t.inverse(u);
                assert!(((back - x) / x).abs() < 1e-6, "a={a} x={x} back={back}");
            }
        }
    }

    #[test]
    fn inverse_of_interpolated_cdf_is_tight() {
        let t = MomentumTable::new(0.0).unwrap();
        for i in 1..500 {
            let x = 0.03 * i as f64;
            let back = t.inverse(t.cdf(x));
            assert!(((back - x) / x).abs() < 1e-10, "{x} {back}");
        }
    }

    #[test]
    fn massless_species_equiprobable() {
        let cfg = ModelConfig {
            mass_mode: MassMode::Zero,
            ..Default::default()
        };
        let tables = SamplerTables::build(&cfg).unwrap();
        for w in tables.species_weights() {
            assert!((w - 1.0 / 21.0).abs() < 1e-12);
        }
        assert_eq!(*tables.species_cdf.last().unwrap(), 1.0);
    }

    #[test]
    fn leaps_are_positive_and_dwell_bounded() {
        let cfg = ModelConfig::default();
        let sampler = LeapSampler::new(&cfg).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100_000 {
            let leap = sampler.step(&mut rng);
            assert!(leap.length > 0.0 && leap.length.is_finite());
            assert!(leap.dwell >= 0.0 && leap.dwell <= leap.lifetime);
        }
    }

    #[test]
    fn open_unit_never_hits_endpoints() {
        struct Fixed(u64);
        impl RngCore for Fixed {
            fn next_u32(&mut self) -> u32 {
                self.0 as u32
            }
            fn next_u64(&mut self) -> u64 {
                self.0
            }
            fn fill_bytes(&mut self, _: &mut [u8]) {}
        }
        assert!(open_unit(&mut Fixed(0)) > 0.0);
        assert!(open_unit(&mut Fixed(u64::MAX)) < 1.0);
    }
}
