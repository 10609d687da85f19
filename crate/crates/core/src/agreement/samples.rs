use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// One of the two measurement methods being compared.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Method {
    A,
    B,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::A => "A",
            Method::B => "B",
        })
    }
}

impl FromStr for Method {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s.trim() {
            "A" | "a" => Ok(Method::A),
            "B" | "b" => Ok(Method::B),
            other => Err(format!("unknown method {other:?}, expected A or B")),
        }
    }
}

/// Per-subject measurement pairs from methods A and B.
#[derive(Debug, Clone, PartialEq)]
pub struct PairedSample {
    subject_ids: Vec<String>,
    a: Vec<f64>,
    b: Vec<f64>,
}

impl PairedSample {
    pub const MIN_SUBJECTS: usize = 3;

    pub fn new(subject_ids: Vec<String>, a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        if a.len() != b.len() {
            return Err(Error::LengthMismatch {
                left: a.len(),
                right: b.len(),
            });
        }
        if subject_ids.len() != a.len() {
            return Err(Error::LengthMismatch {
                left: subject_ids.len(),
                right: a.len(),
            });
        }
        if a.len() < Self::MIN_SUBJECTS {
            return Err(Error::TooFew {
                what: "paired sample",
                needed: Self::MIN_SUBJECTS,
                got: a.len(),
            });
        }
        if a.iter().chain(&b).any(|v| !v.is_finite()) {
            return Err(Error::NonFinite("paired sample"));
        }
        let mut seen = HashMap::with_capacity(subject_ids.len());
        for id in &subject_ids {
            if seen.insert(id.as_str(), ()).is_some() {
                return Err(Error::Duplicate(format!("subject {id:?}")));
            }
        }
        Ok(PairedSample { subject_ids, a, b })
    }

    /// Pairs with subjects numbered `1..=n`.
    pub fn from_values(a: Vec<f64>, b: Vec<f64>) -> Result<Self> {
        let ids = (1..=a.len()).map(|i| i.to_string()).collect();
        Self::new(ids, a, b)
    }

    pub fn len(&self) -> usize {
        self.a.len()
    }

    pub fn is_empty(&self) -> bool {
        self.a.is_empty()
    }

    pub fn subject_ids(&self) -> &[String] {
        &self.subject_ids
    }

    pub fn a(&self) -> &[f64] {
        &self.a
    }

    pub fn b(&self) -> &[f64] {
        &self.b
    }

    /// The same subjects with the method labels exchanged.
    pub fn swapped(&self) -> Self {
        PairedSample {
            subject_ids: self.subject_ids.clone(),
            a: self.b.clone(),
            b: self.a.clone(),
        }
    }
}

/// A single replicate measurement in long format.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ReplicateRecord {
    pub subject: String,
    pub method: Method,
    pub replicate: u32,
    pub value: f64,
}

/// Repeated measurements of each subject by both methods.
///
/// Every (subject, method) group holds at least two replicates and both
/// methods cover the same subjects. Subjects keep their order of first
/// appearance.
#[derive(Debug, Clone, PartialEq)]
pub struct ReplicatedSample {
    subjects: Vec<String>,
    // groups[subject][method as usize]
    groups: Vec<[Vec<f64>; 2]>,
}

impl ReplicatedSample {
    pub fn new(records: impl IntoIterator<Item = ReplicateRecord>) -> Result<Self> {
        let mut index: HashMap<String, usize> = HashMap::new();
        let mut subjects = Vec::new();
        let mut groups: Vec<[Vec<f64>; 2]> = Vec::new();
        let mut keys = HashMap::new();
        for rec in records {
            if !rec.value.is_finite() {
                return Err(Error::NonFinite("replicate value"));
            }
            let key = (rec.subject.clone(), rec.method, rec.replicate);
            if keys.insert(key, ()).is_some() {
                return Err(Error::Duplicate(format!(
                    "subject {:?}, method {}, replicate {}",
                    rec.subject, rec.method, rec.replicate
                )));
            }
            let slot = *index.entry(rec.subject.clone()).or_insert_with(|| {
                subjects.push(rec.subject.clone());
                groups.push([Vec::new(), Vec::new()]);
                subjects.len() - 1
            });
            groups[slot][rec.method as usize].push(rec.value);
        }
        if subjects.is_empty() {
            return Err(Error::Empty);
        }
        for (subject, group) in subjects.iter().zip(&groups) {
            for method in [Method::A, Method::B] {
                let got = group[method as usize].len();
                if got == 0 {
                    return Err(Error::MissingMethod {
                        subject: subject.clone(),
                        method: method.to_string(),
                    });
                }
                if got < 2 {
                    return Err(Error::TooFewReplicates {
                        subject: subject.clone(),
                        method: method.to_string(),
                        got,
                    });
                }
            }
        }
        Ok(ReplicatedSample { subjects, groups })
    }

    pub fn subjects(&self) -> &[String] {
        &self.subjects
    }

    /// Replicate values of one subject for one method.
    pub fn replicates(&self, subject: usize, method: Method) -> &[f64] {
        &self.groups[subject][method as usize]
    }

    /// Long-format records in subject order, method A first, replicates numbered from 1.
    pub fn records(&self) -> Vec<ReplicateRecord> {
        let mut out = Vec::new();
        for (subject, group) in self.subjects.iter().zip(&self.groups) {
            for method in [Method::A, Method::B] {
                for (j, &value) in group[method as usize].iter().enumerate() {
                    out.push(ReplicateRecord {
                        subject: subject.clone(),
                        method,
                        replicate: j as u32 + 1,
                        value,
                    });
                }
            }
        }
        out
    }

    /// Pooled within-subject variance of one method.
    pub fn within_subject_variance(&self, method: Method) -> Result<f64> {
        pooled_within_subject_variance(self.groups.iter().map(|g| g[method as usize].as_slice()))
    }

    pub fn within_subject_variances(&self) -> Result<WithinSubjectVariance> {
        WithinSubjectVariance::new(
            self.within_subject_variance(Method::A)?,
            self.within_subject_variance(Method::B)?,
        )
    }

    /// One pair per subject: the mean of that subject's replicates for each method.
    pub fn subject_means(&self) -> Result<PairedSample> {
        let mean = |v: &[f64]| v.iter().sum::<f64>() / v.len() as f64;
        let a = self.groups.iter().map(|g| mean(&g[0])).collect();
        let b = self.groups.iter().map(|g| mean(&g[1])).collect();
        PairedSample::new(self.subjects.clone(), a, b)
    }
}

/// Pooled within-subject variance `Σ_i Σ_j (x_ij − x̄_i)² / Σ_i (m_i − 1)`.
pub fn pooled_within_subject_variance<'a>(
    groups: impl IntoIterator<Item = &'a [f64]>,
) -> Result<f64> {
    let mut ss = 0.0;
    let mut dof = 0usize;
    for (i, g) in groups.into_iter().enumerate() {
        if g.len() < 2 {
            return Err(Error::TooFewReplicates {
                subject: format!("#{}", i + 1),
                method: "?".into(),
                got: g.len(),
            });
        }
        let m = g.iter().sum::<f64>() / g.len() as f64;
        ss += g.iter().map(|x| (x - m).powi(2)).sum::<f64>();
        dof += g.len() - 1;
    }
    if dof == 0 {
        return Err(Error::Empty);
    }
    Ok(ss / dof as f64)
}

/// Within-subject (measurement error) variances of methods A and B.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WithinSubjectVariance {
    pub s_wa2: f64,
    pub s_wb2: f64,
}

impl WithinSubjectVariance {
    pub fn new(s_wa2: f64, s_wb2: f64) -> Result<Self> {
        for (name, v) in [("s_wa2", s_wa2), ("s_wb2", s_wb2)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    range: "[0, inf)",
                    value: v,
                });
            }
        }
        if s_wa2 == 0.0 && s_wb2 == 0.0 {
            return Err(Error::DegenerateWeights(
                "both within-subject variances are zero".into(),
            ));
        }
        Ok(WithinSubjectVariance { s_wa2, s_wb2 })
    }
}

/// Weights `(α, β)` of the average `(α·a + β·b) / (α + β)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct WeightPair {
    pub alpha: f64,
    pub beta: f64,
}

impl WeightPair {
    /// The arithmetic mean.
    pub const EQUAL: WeightPair = WeightPair {
        alpha: 1.0,
        beta: 1.0,
    };

    pub fn new(alpha: f64, beta: f64) -> Result<Self> {
        for (name, v) in [("alpha", alpha), ("beta", beta)] {
            if !(v.is_finite() && v >= 0.0) {
                return Err(Error::OutOfRange {
                    name,
                    range: "[0, inf)",
                    value: v,
                });
            }
        }
        if alpha + beta <= 0.0 {
            return Err(Error::DegenerateWeights("alpha + beta must be positive".into()));
        }
        Ok(WeightPair { alpha, beta })
    }

    /// Inverse-variance weights: each method is weighted by the other
    /// method's within-subject variance.
    pub fn inverse_variance(v: &WithinSubjectVariance) -> Self {
        WeightPair {
            alpha: v.s_wb2,
            beta: v.s_wa2,
        }
    }

    pub fn swapped(self) -> Self {
        WeightPair {
            alpha: self.beta,
            beta: self.alpha,
        }
    }

    /// Weights scaled to sum to one.
    pub fn normalized(self) -> (f64, f64) {
        let total = self.alpha + self.beta;
        (self.alpha / total, self.beta / total)
    }

    pub fn average(self, a: f64, b: f64) -> f64 {
        let (wa, wb) = self.normalized();
        wa * a + wb * b
    }
}
