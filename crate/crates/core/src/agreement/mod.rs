//! Classic and inverse-variance weighted Bland-Altman analysis.
//!
//! A classic analysis regresses the between-method difference on the
//! per-subject mean. If the two methods have within-subject variances
//! `σ²_wA` and `σ²_wB`, and there is no true dependence of the difference on
//! the magnitude, the covariance between `A − B` and the weighted average
//! `(αA + βB)/(α + β)` is
//!
//! ```text
//! (α·σ²_wA − β·σ²_wB) / (α + β)
//! ```
//!
//! which vanishes for `α = σ²_wB, β = σ²_wA` but not for the plain mean
//! unless the variances agree. [`analyze`] supports both horizontal axes.

mod samples;

pub use samples::{
    pooled_within_subject_variance, Method, PairedSample, ReplicateRecord, ReplicatedSample,
    WeightPair, WithinSubjectVariance,
};

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::numerics::{self, RegressionFit};

/// Multiplier of the difference standard deviation for the limits of agreement.
pub const LOA_MULTIPLIER: f64 = 1.96;

/// Orientation of the plotted difference.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default, Serialize, Deserialize)]
pub enum Direction {
    #[serde(rename = "a-b")]
    AMinusB,
    #[default]
    #[serde(rename = "b-a")]
    BMinusA,
}

impl Direction {
    pub fn difference(self, a: f64, b: f64) -> f64 {
        match self {
            Direction::AMinusB => a - b,
            Direction::BMinusA => b - a,
        }
    }

    pub fn flipped(self) -> Self {
        match self {
            Direction::AMinusB => Direction::BMinusA,
            Direction::BMinusA => Direction::AMinusB,
        }
    }

    /// `+1` for `A − B`, `-1` for `B − A`.
    pub fn sign(self) -> f64 {
        match self {
            Direction::AMinusB => 1.0,
            Direction::BMinusA => -1.0,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::AMinusB => "a-b",
            Direction::BMinusA => "b-a",
        })
    }
}

impl FromStr for Direction {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "a-b" | "A-B" => Ok(Direction::AMinusB),
            "b-a" | "B-A" => Ok(Direction::BMinusA),
            other => Err(format!("unknown direction {other:?}, expected a-b or b-a")),
        }
    }
}

/// What goes on the horizontal axis.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum AxisSpec {
    ArithmeticMean,
    WeightedAverage(WeightPair),
}

impl AxisSpec {
    /// Inverse-variance weighted axis for the given within-subject variances.
    pub fn inverse_variance(v: &WithinSubjectVariance) -> Self {
        AxisSpec::WeightedAverage(WeightPair::inverse_variance(v))
    }

    pub fn weights(self) -> WeightPair {
        match self {
            AxisSpec::ArithmeticMean => WeightPair::EQUAL,
            AxisSpec::WeightedAverage(w) => w,
        }
    }

    pub fn label(self) -> &'static str {
        match self {
            AxisSpec::ArithmeticMean => "mean",
            AxisSpec::WeightedAverage(_) => "weighted average",
        }
    }
}

/// One plotted point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlotPoint {
    pub axis: f64,
    pub difference: f64,
}

/// Bias, limits of agreement and trend of the difference against the axis value.
#[derive(Debug, Clone, PartialEq)]
pub struct AgreementResult {
    pub direction: Direction,
    pub axis: AxisSpec,
    pub bias: f64,
    pub sd_difference: f64,
    pub loa_low: f64,
    pub loa_high: f64,
    pub fit: RegressionFit,
    pub points: Vec<PlotPoint>,
}

impl AgreementResult {
    pub fn n(&self) -> usize {
        self.points.len()
    }

    pub fn axis_values(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.axis).collect()
    }

    pub fn differences(&self) -> Vec<f64> {
        self.points.iter().map(|p| p.difference).collect()
    }
}

/// Inverse-variance weighted average `(s_wb²·a + s_wa²·b) / (s_wa² + s_wb²)`.
pub fn weighted_average(a: f64, b: f64, v: &WithinSubjectVariance) -> f64 {
    WeightPair::inverse_variance(v).average(a, b)
}

/// Covariance between `A − B` and the `(α, β)`-weighted average when the
/// methods share the same dependence on the true value and differ only in
/// their independent measurement errors.
pub fn predicted_covariance(w: WeightPair, v: &WithinSubjectVariance) -> f64 {
    (w.alpha * v.s_wa2 - w.beta * v.s_wb2) / (w.alpha + w.beta)
}

/// `cov(A − B, (αA + βB)/(α + β))` from the variances of A and B and their covariance.
pub fn general_covariance_identity(w: WeightPair, var_a: f64, var_b: f64, cov_ab: f64) -> Result<f64> {
    for (name, v) in [("var_a", var_a), ("var_b", var_b)] {
        if v.is_nan() || v < 0.0 {
            return Err(Error::OutOfRange {
                name,
                range: "[0, inf)",
                value: v,
            });
        }
    }
    Ok((w.alpha * var_a - w.beta * var_b + (w.beta - w.alpha) * cov_ab) / (w.alpha + w.beta))
}

/// Bland-Altman analysis of `sample`.
///
/// `AxisSpec::ArithmeticMean` is the classic plot. Differences are taken in
/// `direction`; the trend is the least squares slope of the difference on
/// the axis value with a two-sided interval at `confidence`.
pub fn analyze(
    sample: &PairedSample,
    axis: AxisSpec,
    direction: Direction,
    confidence: f64,
) -> Result<AgreementResult> {
    let weights = axis.weights();
    let points: Vec<PlotPoint> = sample
        .a()
        .iter()
        .zip(sample.b())
        .map(|(&a, &b)| PlotPoint {
            axis: weights.average(a, b),
            difference: direction.difference(a, b),
        })
        .collect();
    let x: Vec<f64> = points.iter().map(|p| p.axis).collect();
    let y: Vec<f64> = points.iter().map(|p| p.difference).collect();

    let fit = numerics::linear_fit(&x, &y, confidence).map_err(|e| match e {
        Error::Degenerate(_) => Error::Degenerate("horizontal axis"),
        other => other,
    })?;
    let bias = numerics::mean(&y)?;
    let sd = numerics::variance(&y)?.sqrt();
    Ok(AgreementResult {
        direction,
        axis,
        bias,
        sd_difference: sd,
        loa_low: bias - LOA_MULTIPLIER * sd,
        loa_high: bias + LOA_MULTIPLIER * sd,
        fit,
        points,
    })
}
