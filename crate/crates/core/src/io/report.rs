use serde::{Deserialize, Serialize};

use crate::agreement::{AgreementResult, AxisSpec, Direction, PlotPoint};
use crate::error::{Error, Result};
use crate::numerics::RegressionFit;

pub const REPORT_FORMAT_VERSION: u32 = 1;

/// JSON form of an [`AgreementResult`].
///
/// Numbers are written in shortest round-trip form, so parsing a report
/// gives back the exact result it was made from.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReportDocument {
    pub format_version: u32,
    pub direction: Direction,
    pub axis: AxisSpec,
    pub n: usize,
    pub bias: f64,
    pub sd_difference: f64,
    pub loa: Interval,
    pub trend: Trend,
    pub points: Vec<PlotPoint>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Interval {
    pub low: f64,
    pub high: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Trend {
    pub k: f64,
    pub ci: Interval,
    pub confidence: f64,
    pub se: f64,
    pub intercept: f64,
    pub r: f64,
    pub p: f64,
    pub df: u32,
}

impl From<&AgreementResult> for ReportDocument {
    fn from(res: &AgreementResult) -> Self {
        let fit = &res.fit;
        ReportDocument {
            format_version: REPORT_FORMAT_VERSION,
            direction: res.direction,
            axis: res.axis,
            n: res.n(),
            bias: res.bias,
            sd_difference: res.sd_difference,
            loa: Interval {
                low: res.loa_low,
                high: res.loa_high,
            },
            trend: Trend {
                k: fit.slope,
                ci: Interval {
                    low: fit.ci_low,
                    high: fit.ci_high,
                },
                confidence: fit.confidence,
                se: fit.slope_se,
                intercept: fit.intercept,
                r: fit.r,
                p: fit.p_value,
                df: fit.df,
            },
            points: res.points.clone(),
        }
    }
}

impl TryFrom<ReportDocument> for AgreementResult {
    type Error = Error;

    fn try_from(doc: ReportDocument) -> Result<Self> {
        if doc.format_version != REPORT_FORMAT_VERSION {
            return Err(Error::InvalidConfig(format!(
                "unsupported report format_version {}",
                doc.format_version
            )));
        }
        if doc.n != doc.points.len() {
            return Err(Error::LengthMismatch {
                left: doc.n,
                right: doc.points.len(),
            });
        }
        let t = doc.trend;
        Ok(AgreementResult {
            direction: doc.direction,
            axis: doc.axis,
            bias: doc.bias,
            sd_difference: doc.sd_difference,
            loa_low: doc.loa.low,
            loa_high: doc.loa.high,
            fit: RegressionFit {
                slope: t.k,
                intercept: t.intercept,
                slope_se: t.se,
                ci_low: t.ci.low,
                ci_high: t.ci.high,
                confidence: t.confidence,
                r: t.r,
                p_value: t.p,
                df: t.df,
            },
            points: doc.points,
        })
    }
}

/// Pretty-printed JSON report with a trailing newline.
pub fn emit_report(result: &AgreementResult) -> String {
    let mut s = serde_json::to_string_pretty(&ReportDocument::from(result))
        .expect("report values are finite");
    s.push('\n');
    s
}

pub fn parse_report(text: &str) -> Result<AgreementResult> {
    let doc: ReportDocument = serde_json::from_str(text)?;
    doc.try_into()
}
