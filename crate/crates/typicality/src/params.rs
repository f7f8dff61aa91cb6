use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use qcorr_classes::gme::gme_trace;
use qcorr_classes::{ClassSpec, Sector};
use qcorr_linalg::{Error, Result};
use qcorr_witnesses::bilinear_constant;
use qcorr_young::{binomial, rational_to_f64, YoungDiagram};

use crate::spectrum::SpectrumProfile;

/// Shape of the witness behind a parameter set.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WitnessFamily {
    /// `V = A - c P^asym` on two copies.
    Bilinear,
    /// `V = A - (k-1)(I - P^{sym,k})` on `k` copies.
    Multilinear,
}

/// Exact parameters of a class witness: carrier dimension `N`, number of
/// copies `k`, `X = tr A / dim Sym^k` and the constant `c`.
#[derive(Debug, Clone, PartialEq)]
pub struct ClassParams {
    pub spec: ClassSpec,
    pub family: WitnessFamily,
    pub n: usize,
    pub k: usize,
    pub x: BigRational,
    pub c: BigRational,
}

impl ClassParams {
    pub fn alpha(&self) -> BigRational {
        self.x.clone()
    }

    pub fn beta(&self) -> BigRational {
        -self.c.clone()
    }

    /// `X / (k-1)`.
    pub fn x_tilde(&self) -> BigRational {
        &self.x / int(self.k - 1)
    }
}

fn int(n: usize) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

fn big(n: num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// `1 - rank / dim Sym^2(C^n)` for a coherent projector of the given rank.
fn x_from_rank(n: usize, rank: BigRational) -> BigRational {
    BigRational::one() - rank / big(binomial(n + 1, 2))
}

pub fn class_params(spec: &ClassSpec) -> Result<ClassParams> {
    spec.validate()?;
    let n = spec.carrier_dim();
    let (family, k, x, c) = match spec {
        ClassSpec::Distinguishable { dims } => {
            let rank = dims.iter().fold(BigRational::one(), |acc, &d| acc * big(binomial(d + 1, 2)));
            (WitnessFamily::Bilinear, 2, x_from_rank(n, rank), bilinear_constant(spec)?)
        }
        ClassSpec::Bosonic { d, l } => {
            (WitnessFamily::Bilinear, 2, x_from_rank(n, big(binomial(d + 2 * l - 1, 2 * l))), bilinear_constant(spec)?)
        }
        ClassSpec::Fermionic { d, l } => {
            let shape = YoungDiagram::rectangle(*l, 2).map_err(|e| Error::Domain(e.to_string()))?;
            (WitnessFamily::Bilinear, 2, x_from_rank(n, big(shape.dim_irrep(*d))), bilinear_constant(spec)?)
        }
        ClassSpec::Gaussian { d, sector: Sector::Plus | Sector::Minus } => {
            let rank = big(binomial(2 * d, *d)) / int(2);
            (WitnessFamily::Bilinear, 2, x_from_rank(n, rank), bilinear_constant(spec)?)
        }
        ClassSpec::Gaussian { .. } => {
            return Err(Error::Unsupported("typicality parameters are defined per parity sector".into()))
        }
        ClassSpec::SchmidtBounded { da, db, n: r } => {
            let k = r + 1;
            let x = big(binomial(*da, k) * binomial(*db, k)) / big(binomial(n + k - 1, k));
            (WitnessFamily::Multilinear, k, x, int(k - 1))
        }
        ClassSpec::TwoSeparable3 { d } => {
            (WitnessFamily::Multilinear, 6, gme_trace(*d) / big(binomial(n + 5, 6)), int(5))
        }
    };
    if !c.is_positive() {
        return Err(Error::Unsupported(format!("{spec}: the witness constant vanishes, so the witness is trivial")));
    }
    Ok(ClassParams { spec: spec.clone(), family, n, k, x, c })
}

/// `-(alpha + beta)/(alpha - beta)` without any hypothesis check.
pub fn critical_ratio(alpha: &BigRational, beta: &BigRational) -> Result<BigRational> {
    let den = alpha - beta;
    if den.is_zero() {
        return Err(Error::Domain("alpha = beta".into()));
    }
    Ok(-(alpha + beta) / den)
}

/// Critical largest eigenvalue above which the concentration bound applies.
pub fn pmax_critical(params: &ClassParams) -> Result<BigRational> {
    match params.family {
        WitnessFamily::Bilinear => {
            let (a, b) = (params.alpha(), params.beta());
            if !a.is_positive() || !b.is_negative() || !(&a + &b).is_negative() {
                return Err(Error::Domain(format!(
                    "bilinear bound needs alpha > 0, beta < 0, alpha + beta < 0; got alpha = {a}, beta = {b}"
                )));
            }
            critical_ratio(&a, &b)
        }
        WitnessFamily::Multilinear => {
            let km1 = int(params.k - 1);
            let p = (&km1 - params.x_tilde()) / (&km1 + &params.x);
            if !p.is_positive() || p >= BigRational::one() {
                return Err(Error::Domain(format!("critical value {p} lies outside (0, 1)")));
            }
            Ok(p)
        }
    }
}

/// Concentration lower bound on the fraction of correlated states in the
/// isospectral manifold of `spectrum`; zero when `p_max` does not exceed the
/// critical value.
pub fn lower_bound(spectrum: &SpectrumProfile, params: &ClassParams) -> Result<f64> {
    let delta = spectrum.p_max() - rational_to_f64(&pmax_critical(params)?);
    if delta <= 0.0 {
        return Ok(0.0);
    }
    let n = params.n as f64;
    let x = rational_to_f64(&params.x);
    let exponent = match params.family {
        WitnessFamily::Bilinear => n * delta * delta * (x + rational_to_f64(&params.c)).powi(2) / 256.0,
        WitnessFamily::Multilinear => {
            let k = params.k as f64;
            let ck = ((k - 1.0) / k).powi(4);
            n * delta * delta * ck * (1.0 + rational_to_f64(&params.x_tilde())).powi(2) / 16.0
        }
    };
    Ok(-(-exponent).exp_m1())
}
