use std::collections::BTreeMap;

use serde::Serialize;

/// Left-hand side of a tested inequality.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Lhs {
    /// Exact count.
    Count(u64),
    /// Exact up to floating point, for sums with real weights.
    Real(f64),
}

impl Lhs {
    pub fn value(&self) -> f64 {
        match *self {
            Lhs::Count(c) => c as f64,
            Lhs::Real(x) => x,
        }
    }

    pub fn count(&self) -> Option<u64> {
        match *self {
            Lhs::Count(c) => Some(c),
            Lhs::Real(_) => None,
        }
    }
}

/// Inputs that identify a report.
#[derive(Debug, Clone, Default, PartialEq, Serialize)]
pub struct InputDigest {
    pub seed: Option<u64>,
    pub family: Option<String>,
    pub size_a: usize,
    pub size_b: usize,
}

/// One evaluated inequality with the constant factored out: `rhs` assumes
/// a constant of one, so `ratio` estimates the least admissible constant.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct InequalityReport {
    pub inequality: &'static str,
    pub params: BTreeMap<&'static str, f64>,
    pub lhs: Lhs,
    #[serde(serialize_with = "crate::output::real")]
    pub rhs: f64,
    #[serde(serialize_with = "crate::output::real")]
    pub ratio: f64,
    pub digest: InputDigest,
}

impl InequalityReport {
    /// `ratio = lhs / rhs`, with `0 / 0` read as `0`.
    pub fn new(
        inequality: &'static str,
        params: impl IntoIterator<Item = (&'static str, f64)>,
        lhs: Lhs,
        rhs: f64,
        digest: InputDigest,
    ) -> Self {
        let ratio = if lhs.value() == 0.0 { 0.0 } else { lhs.value() / rhs };
        InequalityReport {
            inequality,
            params: params.into_iter().collect(),
            lhs,
            rhs,
            ratio,
            digest,
        }
    }

    pub fn param(&self, key: &str) -> Option<f64> {
        self.params.get(key).copied()
    }
}
