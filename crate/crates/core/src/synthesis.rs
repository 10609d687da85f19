//! Seeded synthetic method-comparison data.
//!
//! Three standard normal signals are drawn: a common signal `c` and two
//! independent error signals `ε_A`, `ε_B`. The measurements are
//!
//! ```text
//! a = k_A·σ_c·c + s_A·ε_A
//! b = k_B·σ_c·c + s_B·ε_B
//! ```
//!
//! With `exact_moments` the three signals are first orthonormalized, so
//! every sample moment equals its nominal value and the analysis statistics
//! no longer depend on the seed. Without it the draws are independent, which
//! is what the Monte Carlo harness needs.
//!
//! Random numbers come from ChaCha8 seeded with `seed_from_u64`; stream `0`
//! feeds [`generate`] and Monte Carlo trial `t` uses stream `t + 1`. Normal
//! variates are produced by the inverse normal CDF.

use rand_chacha::ChaCha8Rng;
use rand_core::{RngCore, SeedableRng};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::agreement::{
    Direction, Method, PairedSample, ReplicateRecord, ReplicatedSample, WeightPair,
};
use crate::error::{Error, Result};
use crate::numerics;

/// Parameters of one synthetic case.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SyntheticConfig {
    pub n: usize,
    pub k_a: f64,
    pub k_b: f64,
    pub s_a: f64,
    pub s_b: f64,
    pub sigma_c: f64,
    pub seed: u64,
    pub exact_moments: bool,
}

impl Default for SyntheticConfig {
    fn default() -> Self {
        SyntheticConfig {
            n: 100,
            k_a: 1.0,
            k_b: 1.0,
            s_a: 1.5,
            s_b: 1.5,
            sigma_c: 10.0,
            seed: 1,
            exact_moments: true,
        }
    }
}

impl SyntheticConfig {
    pub fn validate(&self) -> Result<()> {
        let needed = if self.exact_moments { 4 } else { 3 };
        if self.n < needed {
            return Err(Error::TooFew {
                what: "synthetic sample",
                needed,
                got: self.n,
            });
        }
        for (name, v) in [("s_a", self.s_a), ("s_b", self.s_b)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    range: "[0, inf)",
                    value: v,
                });
            }
        }
        if !(self.sigma_c.is_finite() && self.sigma_c > 0.0) {
            return Err(Error::OutOfRange {
                name: "sigma_c",
                range: "(0, inf)",
                value: self.sigma_c,
            });
        }
        if !(self.k_a.is_finite() && self.k_b.is_finite()) {
            return Err(Error::NonFinite("scaling factor"));
        }
        Ok(())
    }

    /// Nominal within-subject variances `(s_A², s_B²)`.
    pub fn error_variances(&self) -> (f64, f64) {
        (self.s_a * self.s_a, self.s_b * self.s_b)
    }
}

/// The four synthetic cases: equal or unequal precision, with or without a
/// magnitude-dependent difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CasePreset {
    A,
    B,
    C,
    D,
}

impl CasePreset {
    pub const ALL: [CasePreset; 4] = [CasePreset::A, CasePreset::B, CasePreset::C, CasePreset::D];

    pub fn label(self) -> &'static str {
        match self {
            CasePreset::A => "a",
            CasePreset::B => "b",
            CasePreset::C => "c",
            CasePreset::D => "d",
        }
    }

    pub fn from_label(label: &str) -> Option<Self> {
        CasePreset::ALL.into_iter().find(|c| c.label() == label)
    }

    /// Default configuration (n = 100, σ_c = 10, seed 1, exact moments) with this case's parameters.
    pub fn config(self) -> SyntheticConfig {
        let (k_b, s_a, s_b) = match self {
            CasePreset::A => (1.0, 1.5, 1.5),
            CasePreset::B => (0.9, 1.5, 1.5),
            CasePreset::C => (1.0, 0.5, 4.5),
            CasePreset::D => (0.9, 0.5, 4.5),
        };
        SyntheticConfig {
            k_a: 1.0,
            k_b,
            s_a,
            s_b,
            ..SyntheticConfig::default()
        }
    }
}

/// Standard normal variates from one ChaCha8 stream.
pub struct NormalStream {
    rng: ChaCha8Rng,
}

impl NormalStream {
    pub fn new(seed: u64, stream: u64) -> Self {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        rng.set_stream(stream);
        NormalStream { rng }
    }

    /// Uniform on the open interval (0, 1), 53 bits.
    fn next_uniform(&mut self) -> f64 {
        ((self.rng.next_u64() >> 11) as f64 + 0.5) * (1.0 / (1u64 << 53) as f64)
    }

    pub fn next_normal(&mut self) -> f64 {
        -std::f64::consts::SQRT_2 * statrs::function::erf::erfc_inv(2.0 * self.next_uniform())
    }

    pub fn take(&mut self, n: usize) -> Vec<f64> {
        (0..n).map(|_| self.next_normal()).collect()
    }
}

/// Draws `c`, `ε_A`, `ε_B` (in that order) from the given stream.
fn draw_signals(config: &SyntheticConfig, stream: u64) -> Result<[Vec<f64>; 3]> {
    let mut normals = NormalStream::new(config.seed, stream);
    let c = normals.take(config.n);
    let ea = normals.take(config.n);
    let eb = normals.take(config.n);
    if !config.exact_moments {
        return Ok([c, ea, eb]);
    }
    let mut cols = numerics::orthonormalize(&[c, ea, eb])?.into_iter();
    Ok([cols.next().unwrap(), cols.next().unwrap(), cols.next().unwrap()])
}

fn combine(config: &SyntheticConfig, [c, ea, eb]: [Vec<f64>; 3]) -> (Vec<f64>, Vec<f64>) {
    let (ca, cb) = (config.k_a * config.sigma_c, config.k_b * config.sigma_c);
    let a = c.iter().zip(&ea).map(|(c, e)| ca * c + config.s_a * e).collect();
    let b = c.iter().zip(&eb).map(|(c, e)| cb * c + config.s_b * e).collect();
    (a, b)
}

/// Generates one synthetic paired sample. Deterministic in `config`.
///
/// Fails with [`Error::RankDeficient`] if the draw cannot be orthonormalized;
/// pick another seed in that case.
pub fn generate(config: &SyntheticConfig) -> Result<PairedSample> {
    config.validate()?;
    let (a, b) = combine(config, draw_signals(config, 0)?);
    PairedSample::from_values(a, b)
}

/// Sample moments implied by the exact-moment construction.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClosedFormMoments {
    /// Covariance of the difference with the axis value.
    pub cov: f64,
    pub var_diff: f64,
    pub var_axis: f64,
    pub r: f64,
    pub slope: f64,
}

/// Moments of the difference and the `w`-weighted axis under exact moments.
///
/// With orthonormal `c`, `ε_A`, `ε_B` every statistic is a bilinear form in
/// the coefficients of the two derived signals:
///
/// ```text
/// A − B = (k_A − k_B)σ_c·c + s_A·ε_A − s_B·ε_B
/// axis  = (w_A k_A + w_B k_B)σ_c·c + w_A s_A·ε_A + w_B s_B·ε_B
/// ```
///
/// with `w_A + w_B = 1`.
pub fn closed_form_moments(
    config: &SyntheticConfig,
    w: WeightPair,
    direction: Direction,
) -> ClosedFormMoments {
    let (wa, wb) = w.normalized();
    let sign = direction.sign();
    let diff = [
        sign * (config.k_a - config.k_b) * config.sigma_c,
        sign * config.s_a,
        -sign * config.s_b,
    ];
    let axis = [
        (wa * config.k_a + wb * config.k_b) * config.sigma_c,
        wa * config.s_a,
        wb * config.s_b,
    ];
    let dot = |u: &[f64; 3], v: &[f64; 3]| u.iter().zip(v).map(|(x, y)| x * y).sum::<f64>();
    let cov = dot(&diff, &axis);
    let var_diff = dot(&diff, &diff);
    let var_axis = dot(&axis, &axis);
    let r = if var_diff > 0.0 {
        cov / (var_diff * var_axis).sqrt()
    } else {
        0.0
    };
    ClosedFormMoments {
        cov,
        var_diff,
        var_axis,
        r,
        slope: cov / var_axis,
    }
}

/// Mean and standard error of the per-trial sample covariance.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MonteCarloEstimate {
    pub mean_cov: f64,
    pub se: f64,
    pub trials: usize,
}

/// Sample covariance between `A − B` and the `w`-weighted axis over
/// independent seeded trials.
///
/// Trials run in parallel; trial `t` uses stream `t + 1` of `config.seed`, so
/// the result does not depend on scheduling.
pub fn monte_carlo_covariance(
    config: &SyntheticConfig,
    w: WeightPair,
    trials: usize,
) -> Result<MonteCarloEstimate> {
    if config.exact_moments {
        return Err(Error::InvalidConfig(
            "Monte Carlo trials need independent draws; set exact_moments to false".into(),
        ));
    }
    config.validate()?;
    if trials < 2 {
        return Err(Error::TooFew {
            what: "Monte Carlo",
            needed: 2,
            got: trials,
        });
    }
    let covs = (0..trials as u64)
        .into_par_iter()
        .map(|t| {
            let (a, b) = combine(config, draw_signals(config, t + 1)?);
            let diff: Vec<f64> = a.iter().zip(&b).map(|(a, b)| a - b).collect();
            let axis: Vec<f64> = a.iter().zip(&b).map(|(&a, &b)| w.average(a, b)).collect();
            numerics::covariance(&diff, &axis)
        })
        .collect::<Result<Vec<f64>>>()?;
    let mean_cov = numerics::mean(&covs)?;
    let se = (numerics::variance(&covs)? / trials as f64).sqrt();
    Ok(MonteCarloEstimate {
        mean_cov,
        se,
        trials,
    })
}

/// Parameters for simulated replicate measurements.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReplicateConfig {
    pub subjects: usize,
    pub replicates: usize,
    /// Mean of the true values.
    pub center: f64,
    /// Between-subject standard deviation of the true values.
    pub spread: f64,
    /// Within-subject standard deviations of methods A and B.
    pub sd_a: f64,
    pub sd_b: f64,
    pub seed: u64,
}

/// Replicated measurements `true_i + sd·ε` for both methods, drawn from stream 0.
pub fn generate_replicated(config: &ReplicateConfig) -> Result<ReplicatedSample> {
    let mut normals = NormalStream::new(config.seed, 0);
    let mut records = Vec::with_capacity(config.subjects * config.replicates * 2);
    for i in 0..config.subjects {
        let truth = config.center + config.spread * normals.next_normal();
        let subject = (i + 1).to_string();
        for (method, sd) in [(Method::A, config.sd_a), (Method::B, config.sd_b)] {
            for j in 0..config.replicates {
                records.push(ReplicateRecord {
                    subject: subject.clone(),
                    method,
                    replicate: j as u32 + 1,
                    value: truth + sd * normals.next_normal(),
                });
            }
        }
    }
    ReplicatedSample::new(records)
}
