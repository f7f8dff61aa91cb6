//! One-parameter noise families and their critical points.

use qcorr_classes::{ClassSpec, ParticleCarrier};
use qcorr_concurrence::{a8_depolarized, gauss_concurrences, threshold_solver, werner, wootters_2q};
use qcorr_fock::build_fock;
use qcorr_linalg::{c64, DenseOperator, Error, Result, StateVector};
use qcorr_witnesses::{bilinear_witness, detect2};

/// `(1-p) a8 + p I/16` against `C_+`.
pub fn a8_threshold() -> Result<f64> {
    let alg = build_fock(4)?;
    threshold_solver(|p| a8_depolarized(&alg, p), |rho: &DenseOperator| Ok(gauss_concurrences(rho, &alg)?.0), (0.0, 1.0))
}

/// Werner family against the Wootters concurrence.
pub fn werner_threshold() -> Result<f64> {
    threshold_solver(|p| Ok(werner(p)), wootters_2q, (0.0, 1.0))
}

/// Default pair coefficients: equal weight on every disjoint mode pair.
pub fn default_pairs(d: usize) -> Vec<f64> {
    vec![1.0; d / 2]
}

/// Two-fermion carrier vector with coefficient `lambda[i]` on modes
/// `(2i, 2i+1)`, normalized.
pub fn paired_state(d: usize, lambda: &[f64]) -> Result<StateVector> {
    if lambda.is_empty() || 2 * lambda.len() > d {
        return Err(Error::Domain(format!("{} pairs do not fit into {d} modes", lambda.len())));
    }
    let pc = ParticleCarrier::new(d, 2, true);
    let mut v = vec![c64(0.0, 0.0); pc.dim()];
    for (i, &l) in lambda.iter().enumerate() {
        let idx = pc
            .labels()
            .iter()
            .position(|s| s == &vec![2 * i, 2 * i + 1])
            .ok_or_else(|| Error::Domain("pair label missing".into()))?;
        v[idx] = c64(l, 0.0);
    }
    StateVector::from_vec(vec![pc.dim()], v)?.normalized()
}

/// `(1 - s)/((1 - s) + 2(d-2)/(d(d-1)))` with `s` the sum of fourth powers
/// of the normalized pair coefficients.
pub fn ferm_depol_formula(d: usize, lambda: &[f64]) -> f64 {
    let norm: f64 = lambda.iter().map(|x| x * x).sum();
    let s: f64 = lambda.iter().map(|x| (x * x / norm).powi(2)).sum();
    let df = d as f64;
    (1.0 - s) / ((1.0 - s) + 2.0 * (df - 2.0) / (df * (df - 1.0)))
}

/// `(1-p) psi psi + p I/N` paired with `psi psi`, against the bilinear
/// Slater witness.
pub fn ferm_depol_threshold(d: usize, lambda: &[f64]) -> Result<f64> {
    let spec = ClassSpec::Fermionic { d, l: 2 };
    let w = bilinear_witness(&spec)?;
    let psi = paired_state(d, lambda)?.projector();
    let n = spec.carrier_dim();
    let mixed = DenseOperator::identity(vec![n])?.scale(1.0 / n as f64);
    threshold_solver(
        |p| psi.scale(1.0 - p).add(&mixed.scale(p)),
        |rho: &DenseOperator| detect2(&w, rho, &psi),
        (0.0, 1.0),
    )
}
