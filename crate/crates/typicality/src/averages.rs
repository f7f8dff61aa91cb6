use qcorr_classes::ClassOperator;
use qcorr_linalg::{DenseOperator, Error, Result};
use qcorr_witnesses::{sym_overlap, Witness};
use qcorr_young::rational_to_f64;

use crate::params::{ClassParams, WitnessFamily};

/// Haar average of `U -> tr((U rho1 U^dag (x) U rho2 U^dag) V)`.
pub fn haar_average_bilinear(w: &Witness, rho1: &DenseOperator, rho2: &DenseOperator) -> Result<f64> {
    if w.copies() != 2 {
        return Err(Error::Domain(format!("bilinear average needs a two-copy witness, got {}", w.copies())));
    }
    let a = rational_to_f64(w.alpha());
    let b = rational_to_f64(w.beta());
    Ok(0.5 * (a + b) + 0.5 * (a - b) * rho1.trace_product(rho2).re)
}

/// Haar average of `U -> tr(U^{(x)k}(rho (x) psi^{(x)(k-1)})U^{dag(x)k} V)` for
/// `V = A - (k-1)(I - P^{sym,k})`.
pub fn haar_average_klinear(op: &ClassOperator, rho: &DenseOperator, psi: &DenseOperator) -> Result<f64> {
    let k = op.copies();
    if rho.dim() != op.carrier_dim() || psi.dim() != op.carrier_dim() {
        return Err(Error::Dimension("states do not match the class carrier".into()));
    }
    let mut states = vec![rho];
    states.extend(std::iter::repeat(psi).take(k - 1));
    let overlap = sym_overlap(&states);
    let km1 = (k - 1) as f64;
    Ok(-km1 + (km1 + rational_to_f64(&op.normalized_trace())) * overlap)
}

/// Average attained with the optimal auxiliary state: the top eigenvector
/// of a state with largest eigenvalue `p_max`.
pub fn optimal_average(params: &ClassParams, p_max: f64) -> f64 {
    let x = rational_to_f64(&params.x);
    match params.family {
        WitnessFamily::Bilinear => {
            let c = rational_to_f64(&params.c);
            0.5 * (x - c) + 0.5 * (x + c) * p_max
        }
        WitnessFamily::Multilinear => {
            let k = params.k as f64;
            -(k - 1.0) + (k - 1.0 + x) * ((k - 1.0) * p_max + 1.0) / k
        }
    }
}

/// Lipschitz constant `2k` of the orbit function for a witness of norm one.
pub fn lipschitz_bound(k: usize) -> f64 {
    2.0 * k as f64
}
