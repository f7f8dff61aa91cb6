use std::fmt;
use std::str::FromStr;

use qcorr_linalg::{Error, Result};
use serde::{Deserialize, Serialize};

const SUM_TOL: f64 = 1e-12;

/// Ordered spectrum `p_1 >= p_2 >= ... >= p_N >= 0` summing to one.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SpectrumProfile {
    p: Vec<f64>,
}

impl SpectrumProfile {
    pub fn new(p: Vec<f64>) -> Result<Self> {
        if p.is_empty() {
            return Err(Error::Domain("empty spectrum".into()));
        }
        if p.iter().any(|x| !x.is_finite() || *x < 0.0) {
            return Err(Error::Domain("spectrum entries must be finite and non-negative".into()));
        }
        if p.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::Domain("spectrum must be non-increasing".into()));
        }
        let total: f64 = p.iter().sum();
        if (total - 1.0).abs() > SUM_TOL {
            return Err(Error::Domain(format!("spectrum sums to {total}")));
        }
        Ok(Self { p })
    }

    /// `(1, 0, ..., 0)`.
    pub fn pure(n: usize) -> Result<Self> {
        let mut p = vec![0.0; n.max(1)];
        p[0] = 1.0;
        Self::new(p)
    }

    pub fn uniform(n: usize) -> Result<Self> {
        Self::new(vec![1.0 / n as f64; n])
    }

    /// Largest eigenvalue `p_max`, the remaining weight spread evenly.
    pub fn with_pmax(n: usize, p_max: f64) -> Result<Self> {
        if n == 0 || p_max < 1.0 / n as f64 - SUM_TOL || p_max > 1.0 {
            return Err(Error::Domain(format!("p_max = {p_max} is not attainable in dimension {n}")));
        }
        if n == 1 {
            return Self::new(vec![1.0]);
        }
        let rest = ((1.0 - p_max) / (n - 1) as f64).min(p_max);
        let mut p = vec![rest; n];
        p[0] = p_max.max(rest);
        Self::new(p)
    }

    pub fn values(&self) -> &[f64] {
        &self.p
    }

    pub fn len(&self) -> usize {
        self.p.len()
    }

    pub fn is_empty(&self) -> bool {
        self.p.is_empty()
    }

    pub fn p_max(&self) -> f64 {
        self.p[0]
    }
}

/// Comma-separated values; `vxm` repeats `v` `m` times, so `0.9,0.02x5`
/// is a six-level spectrum.
impl FromStr for SpectrumProfile {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let mut p = Vec::new();
        for item in s.split(',').map(str::trim).filter(|t| !t.is_empty()) {
            let (value, count) = match item.split_once('x') {
                Some((v, m)) => (v, m.parse::<usize>().map_err(|e| Error::Domain(format!("{item}: {e}")))?),
                None => (item, 1),
            };
            let v = parse_value(value)?;
            p.extend(std::iter::repeat(v).take(count));
        }
        Self::new(p)
    }
}

fn parse_value(s: &str) -> Result<f64> {
    if let Some((a, b)) = s.split_once('/') {
        let num: f64 = a.trim().parse().map_err(|e| Error::Domain(format!("{s}: {e}")))?;
        let den: f64 = b.trim().parse().map_err(|e| Error::Domain(format!("{s}: {e}")))?;
        return Ok(num / den);
    }
    s.parse().map_err(|e| Error::Domain(format!("{s}: {e}")))
}

impl fmt::Display for SpectrumProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.p.iter().map(|x| format!("{x}")).collect();
        write!(f, "{}", parts.join(","))
    }
}
