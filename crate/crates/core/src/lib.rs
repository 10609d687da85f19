//! Method-comparison agreement analysis.
//!
//! Classic Bland-Altman analysis plots the difference between two methods
//! against their mean. When the methods have different within-subject
//! variances that plot shows a spurious trend. This crate also supports
//! plotting against the inverse-variance weighted average
//!
//! ```text
//! (s_wb² · a + s_wa² · b) / (s_wa² + s_wb²)
//! ```
//!
//! which removes the trend that comes from unequal precision alone.
//!
//! Modules:
//!
//! - [`numerics`]: moments, Pearson inference, simple regression, Student t, orthonormalization
//! - [`agreement`]: samples, within-subject variance, weighted axis, the analysis itself
//! - [`synthesis`]: seeded synthetic data with exact sample moments, closed-form moments, Monte Carlo
//! - [`io`]: CSV ingestion, JSON reports, the results table and SVG plots
//! - [`cli`]: the `ivw-agreement` command line
//!
//! Runnable walkthroughs live in the crate's `examples/` directory.

pub mod agreement;
pub mod cli;
pub mod error;
pub mod io;
pub mod numerics;
pub mod synthesis;

pub use agreement::{
    analyze, AgreementResult, AxisSpec, Direction, Method, PairedSample, ReplicatedSample,
    WeightPair, WithinSubjectVariance,
};
pub use error::{Error, Result};
pub use numerics::RegressionFit;
pub use synthesis::{CasePreset, SyntheticConfig};
