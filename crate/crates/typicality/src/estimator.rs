use nalgebra::DMatrix;
use qcorr_classes::{class_operator, ClassSpec};
use qcorr_linalg::{haar_unitary_rng, stream_rng, DenseOperator, Error, Result, C64};
use qcorr_witnesses::{bilinear_witness, detect_k, multilinear_witness, Witness, DETECTION_THRESHOLD};
use qcorr_young::rational_to_f64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::params::{class_params, lower_bound, pmax_critical, WitnessFamily};
use crate::spectrum::SpectrumProfile;

pub const MIN_SAMPLES: usize = 100;

const WILSON_Z: f64 = 1.959963984540054;

/// Outcome of a Monte Carlo run over the isospectral manifold.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EstimatorReport {
    pub samples: usize,
    pub detected: usize,
    /// Fraction of sampled states the witness detects; a lower estimate of
    /// the fraction of correlated states.
    pub fraction: f64,
    /// Half-width of the 95% Wilson interval for `fraction`.
    pub stderr: f64,
    pub mean_value: f64,
    pub mean_stderr: f64,
    pub analytic_bound: f64,
    pub p_max_cr: f64,
    pub seed: u64,
    pub shards: usize,
}

/// The witness whose orbit function the estimator samples.
pub fn class_witness(spec: &ClassSpec) -> Result<Witness> {
    match class_params(spec)?.family {
        WitnessFamily::Bilinear => bilinear_witness(spec),
        WitnessFamily::Multilinear => multilinear_witness(&class_operator(spec)?),
    }
}

/// `f(U) = tr(U^{(x)k}(rho_0 (x) psi_0^{(x)(k-1)})U^{dag(x)k} V)` with
/// `rho_0 = diag(spectrum)` and `psi_0` the first basis vector.
pub fn orbit_value(w: &Witness, spectrum: &SpectrumProfile, u: &DenseOperator) -> Result<f64> {
    let n = w.carrier_dim();
    if spectrum.len() != n || u.dim() != n {
        return Err(Error::Dimension(format!(
            "spectrum of length {} and unitary of dim {} for carrier of dim {n}",
            spectrum.len(),
            u.dim()
        )));
    }
    let um = u.matrix();
    let mut scaled = um.clone();
    for (j, &p) in spectrum.values().iter().enumerate() {
        scaled.column_mut(j).scale_mut(p);
    }
    let rho = DenseOperator::from_matrix(&scaled * um.adjoint());
    let top = um.column(0);
    let psi = DenseOperator::from_matrix(DMatrix::<C64>::from(&top * top.adjoint()));
    let mut states = vec![&rho];
    states.extend(std::iter::repeat(&psi).take(w.copies() - 1));
    detect_k(w, &states)
}

/// Worker threads for sharded runs: `QCORR_THREADS` if set, otherwise the
/// number of available cores.
pub fn thread_count() -> usize {
    std::env::var("QCORR_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&t| t > 0)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1))
}

pub fn wilson_half_width(detected: usize, samples: usize) -> f64 {
    let n = samples as f64;
    let p = detected as f64 / n;
    let z2 = WILSON_Z * WILSON_Z;
    WILSON_Z / (1.0 + z2 / n) * (p * (1.0 - p) / n + z2 / (4.0 * n * n)).sqrt()
}

/// Sample `f(U)` for Haar-random `U`. Sample `i` always draws from stream
/// `i` of `seed`, so the report does not depend on how the samples are
/// split into shards.
pub fn mc_fraction(
    spectrum: &SpectrumProfile,
    spec: &ClassSpec,
    samples: usize,
    seed: u64,
    shards: usize,
) -> Result<EstimatorReport> {
    if samples < MIN_SAMPLES {
        return Err(Error::Domain(format!("need at least {MIN_SAMPLES} samples, got {samples}")));
    }
    if shards == 0 {
        return Err(Error::Domain("shard count must be positive".into()));
    }
    let params = class_params(spec)?;
    let p_max_cr = rational_to_f64(&pmax_critical(&params)?);
    let analytic_bound = lower_bound(spectrum, &params)?;
    let w = class_witness(spec)?;
    let n = w.carrier_dim();
    if spectrum.len() != n {
        return Err(Error::Dimension(format!("spectrum of length {} for carrier of dim {n}", spectrum.len())));
    }

    let ranges: Vec<(usize, usize)> = (0..shards)
        .map(|s| (s * samples / shards, (s + 1) * samples / shards))
        .collect();
    let run = |(lo, hi): (usize, usize)| -> Result<Vec<f64>> {
        (lo..hi)
            .map(|i| {
                let mut rng = stream_rng(seed, i as u64);
                orbit_value(&w, spectrum, &haar_unitary_rng(n, &mut rng))
            })
            .collect()
    };
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(thread_count().min(shards))
        .build()
        .map_err(|e| Error::Numerical(format!("thread pool: {e}")))?;
    let chunks: Vec<Result<Vec<f64>>> = pool.install(|| ranges.par_iter().map(|&r| run(r)).collect());
    let mut values = Vec::with_capacity(samples);
    for chunk in chunks {
        values.extend(chunk?);
    }

    let detected = values.iter().filter(|&&v| v > DETECTION_THRESHOLD).count();
    let m = samples as f64;
    let mean = values.iter().sum::<f64>() / m;
    let var = values.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (m - 1.0);
    Ok(EstimatorReport {
        samples,
        detected,
        fraction: detected as f64 / m,
        stderr: wilson_half_width(detected, samples),
        mean_value: mean,
        mean_stderr: (var / m).sqrt(),
        analytic_bound,
        p_max_cr,
        seed,
        shards,
    })
}
