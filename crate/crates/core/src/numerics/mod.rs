//! Deterministic statistics kernel.
//!
//! Everything here works on plain `&[f64]` slices. Sample variances and
//! covariances use the `n - 1` divisor; the ratios built on them (r, slope,
//! standard errors) do not depend on that choice.

mod ortho;
mod special;

pub use ortho::orthonormalize;
pub use special::{
    ln_beta, ln_gamma, regularized_incomplete_beta, student_t_cdf, student_t_pdf,
    student_t_quantile,
};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Ordinary least squares fit of `y` on `x` with inference on the slope.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RegressionFit {
    pub slope: f64,
    pub intercept: f64,
    pub slope_se: f64,
    pub ci_low: f64,
    pub ci_high: f64,
    /// Confidence level of `[ci_low, ci_high]`.
    pub confidence: f64,
    pub r: f64,
    pub p_value: f64,
    /// Residual degrees of freedom, `n - 2`.
    pub df: u32,
}

pub fn mean(x: &[f64]) -> Result<f64> {
    if x.is_empty() {
        return Err(Error::Empty);
    }
    Ok(x.iter().sum::<f64>() / x.len() as f64)
}

pub fn variance(x: &[f64]) -> Result<f64> {
    covariance(x, x)
}

/// Sample covariance with divisor `n - 1`.
pub fn covariance(x: &[f64], y: &[f64]) -> Result<f64> {
    let n = check_pair(x, y, 2, "covariance")?;
    let (mx, my) = (mean(x)?, mean(y)?);
    let s: f64 = x.iter().zip(y).map(|(a, b)| (a - mx) * (b - my)).sum();
    Ok(s / (n - 1) as f64)
}

/// Pearson product-moment correlation.
pub fn pearson_r(x: &[f64], y: &[f64]) -> Result<f64> {
    check_pair(x, y, 3, "correlation")?;
    let m = Moments::of(x, y);
    if m.x_is_constant(x) {
        return Err(Error::Degenerate("x"));
    }
    if m.y_is_constant(y) {
        return Err(Error::Degenerate("y"));
    }
    Ok(m.r())
}

/// Two-sided p-value for `H0: ρ = 0` from a sample correlation of `n` pairs.
pub fn correlation_p_value(r: f64, n: usize) -> Result<f64> {
    if n < 3 {
        return Err(Error::TooFew {
            what: "correlation test",
            needed: 3,
            got: n,
        });
    }
    if r.is_nan() || r.abs() > 1.0 {
        return Err(Error::OutOfRange {
            name: "r",
            range: "[-1, 1]",
            value: r,
        });
    }
    if r.abs() == 1.0 {
        return Ok(0.0);
    }
    let df = (n - 2) as u32;
    let t = r.abs() * f64::from(df).sqrt() / (1.0 - r * r).sqrt();
    Ok((2.0 * student_t_cdf(-t, df)).min(1.0))
}

/// Least squares regression of `y` on `x` with a two-sided slope interval at `confidence`.
///
/// The slope standard error is `sqrt(SSE / (n - 2) / Sxx)`, which equals
/// `sqrt(var(y) / var(x) · (1 - r²) / (n - 2))`.
pub fn linear_fit(x: &[f64], y: &[f64], confidence: f64) -> Result<RegressionFit> {
    let n = check_pair(x, y, 3, "linear fit")?;
    if !(confidence > 0.0 && confidence < 1.0) {
        return Err(Error::OutOfRange {
            name: "confidence",
            range: "(0, 1)",
            value: confidence,
        });
    }
    let m = Moments::of(x, y);
    if m.x_is_constant(x) {
        return Err(Error::Degenerate("x"));
    }
    let slope = m.sxy / m.sxx;
    let intercept = m.mean_y - slope * m.mean_x;
    let r = if m.y_is_constant(y) { 0.0 } else { m.r() };
    let df = (n - 2) as u32;
    let sse = (m.syy - slope * m.sxy).max(0.0);
    let slope_se = (sse / f64::from(df) / m.sxx).sqrt();
    let t_crit = student_t_quantile(1.0 - (1.0 - confidence) / 2.0, df)?;
    Ok(RegressionFit {
        slope,
        intercept,
        slope_se,
        ci_low: slope - t_crit * slope_se,
        ci_high: slope + t_crit * slope_se,
        confidence,
        r,
        p_value: correlation_p_value(r, n)?,
        df,
    })
}

fn check_pair(x: &[f64], y: &[f64], needed: usize, what: &'static str) -> Result<usize> {
    if x.len() != y.len() {
        return Err(Error::LengthMismatch {
            left: x.len(),
            right: y.len(),
        });
    }
    if x.len() < needed {
        return Err(Error::TooFew {
            what,
            needed,
            got: x.len(),
        });
    }
    if x.iter().chain(y).any(|v| !v.is_finite()) {
        return Err(Error::NonFinite(what));
    }
    Ok(x.len())
}

/// Centered sums of squares and cross products.
struct Moments {
    mean_x: f64,
    mean_y: f64,
    sxx: f64,
    syy: f64,
    sxy: f64,
}

impl Moments {
    fn of(x: &[f64], y: &[f64]) -> Self {
        let n = x.len() as f64;
        let mean_x = x.iter().sum::<f64>() / n;
        let mean_y = y.iter().sum::<f64>() / n;
        let (mut sxx, mut syy, mut sxy) = (0.0, 0.0, 0.0);
        for (a, b) in x.iter().zip(y) {
            let (dx, dy) = (a - mean_x, b - mean_y);
            sxx += dx * dx;
            syy += dy * dy;
            sxy += dx * dy;
        }
        Moments {
            mean_x,
            mean_y,
            sxx,
            syy,
            sxy,
        }
    }

    fn r(&self) -> f64 {
        (self.sxy / (self.sxx * self.syy).sqrt()).clamp(-1.0, 1.0)
    }

    fn x_is_constant(&self, x: &[f64]) -> bool {
        negligible(self.sxx, x)
    }

    fn y_is_constant(&self, y: &[f64]) -> bool {
        negligible(self.syy, y)
    }
}

/// A centered sum of squares at rounding-noise level for the data's magnitude.
fn negligible(ss: f64, v: &[f64]) -> bool {
    let scale = v.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    ss <= v.len() as f64 * (4.0 * f64::EPSILON * scale).powi(2)
}
