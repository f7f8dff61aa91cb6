use std::f64::consts::PI;

use qcorr_classes::ClassSpec;
use qcorr_linalg::{Error, Result};
use qcorr_young::rational_to_f64;

use crate::params::{class_params, pmax_critical};

/// Limit in which the leading-order expressions are taken.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Regime {
    /// Number of modes fixed, number of particles growing.
    FixedModes,
    /// Ratio `a = L/d` fixed, number of modes growing.
    Proportional,
}

/// Leading-order expressions for `N` and `N p_max,cr` next to the exact
/// finite values at the same parameters.
#[derive(Debug, Clone, PartialEq)]
pub struct AsymptoticRow {
    pub n_exact: f64,
    pub n_formula: f64,
    pub np_exact: f64,
    pub np_formula: f64,
}

fn entropy(x: f64) -> f64 {
    if x <= 0.0 || x >= 1.0 {
        return 0.0;
    }
    -x * x.ln() - (1.0 - x) * (1.0 - x).ln()
}

fn boson_rate(a: f64) -> f64 {
    2f64.ln() * a + a * a.ln() - 2.0 * a * (2.0 * a).ln() - (1.0 + a) * (1.0 + a).ln()
        + (1.0 + 2.0 * a) * (1.0 + 2.0 * a).ln()
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|i| i as f64).product()
}

pub fn asymptotics(spec: &ClassSpec, regime: Regime) -> Result<AsymptoticRow> {
    let (n_formula, np_formula) = match (spec, regime) {
        (ClassSpec::Distinguishable { dims }, _) => {
            let d = dims[0];
            if dims.iter().any(|&x| x != d) {
                return Err(Error::Unsupported("leading-order rows assume equal local dimensions".into()));
            }
            let (df, l) = (d as f64, dims.len() as f64);
            match regime {
                Regime::FixedModes => (df.powf(l), ((1.0 + df) / 2.0).powf(l)),
                Regime::Proportional => {
                    let a = l / df;
                    (df.powf(a * df), a.exp() * (df / 2.0).powf(a * df))
                }
            }
        }
        (ClassSpec::Bosonic { d, l }, Regime::FixedModes) => {
            let (df, lf) = (*d as f64, *l as f64);
            (lf.powf(df - 1.0) / factorial(d - 1), 2f64.powf(lf + df) / lf.powf(df))
        }
        (ClassSpec::Bosonic { d, l }, Regime::Proportional) => {
            let (df, a) = (*d as f64, *l as f64 / *d as f64);
            (
                (df * (1.0 + a) * entropy(a / (1.0 + a))).exp(),
                ((1.0 + a) / (2.0 * (1.0 + 2.0 * a))).sqrt() * (boson_rate(a) * df).exp(),
            )
        }
        (ClassSpec::Fermionic { d, l }, Regime::Proportional) => {
            let (df, a) = (*d as f64, *l as f64 / *d as f64);
            let n = (df * entropy(a)).exp();
            (n, if a <= 0.5 { n / df } else { n / (a * df) })
        }
        (ClassSpec::Gaussian { d, .. }, Regime::Proportional) => {
            let df = *d as f64;
            (2f64.powf(df - 1.0), 2.0 * 2f64.powf(df) / (PI * df).sqrt())
        }
        _ => return Err(Error::Unsupported(format!("no leading-order row for {spec} in this regime"))),
    };
    let params = class_params(spec)?;
    let n = params.n as f64;
    Ok(AsymptoticRow {
        n_exact: n,
        n_formula,
        np_exact: n * rational_to_f64(&pmax_critical(&params)?),
        np_formula,
    })
}
