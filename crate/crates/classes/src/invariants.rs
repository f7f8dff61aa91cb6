use qcorr_linalg::{partial_trace, DenseOperator, Error, Result, StateVector};
use qcorr_young::binomial;
use num_traits::ToPrimitive;

use crate::carrier::ParticleCarrier;
use crate::operators::class_operator;
use crate::{gme, ClassSpec};

fn check_state(psi: &StateVector, spec: &ClassSpec) -> Result<()> {
    spec.validate()?;
    if psi.dim() != spec.carrier_dim() {
        return Err(Error::Dimension(format!(
            "state of dim {} for {spec} (carrier dim {})",
            psi.dim(),
            spec.carrier_dim()
        )));
    }
    Ok(())
}

/// `<psi^{(x)k}|A|psi^{(x)k}>` on the natural number of copies; zero exactly
/// for class members.
pub fn pure_invariant(psi: &StateVector, spec: &ClassSpec) -> Result<f64> {
    check_state(psi, spec)?;
    if let ClassSpec::TwoSeparable3 { d } = spec {
        return gme::product_power_value(psi.amplitudes(), *d);
    }
    class_operator(spec)?.expectation_power(psi.amplitudes())
}

fn purity(rho: &DenseOperator) -> f64 {
    rho.trace_product(rho).re
}

/// `tr rho_(k)^2` for `k = 0..=L`, where `rho_(k)` is the normalized
/// `k`-particle reduced state of a particle-carrier vector.
pub fn particle_purities(psi: &StateVector, d: usize, l: usize, fermionic: bool) -> Result<Vec<f64>> {
    let carrier = ParticleCarrier::new(d, l, fermionic);
    if psi.dim() != carrier.dim() {
        return Err(Error::Dimension("state does not live on the particle carrier".into()));
    }
    let full = StateVector::new(vec![d; l], carrier.embed(psi.amplitudes()))?;
    let rho = full.projector();
    let mut out = vec![1.0];
    for k in 1..l {
        let keep: Vec<usize> = (0..k).collect();
        out.push(purity(&partial_trace(&rho, &keep)?));
    }
    out.push(purity(&rho));
    Ok(out)
}

/// The same invariant written through purities of reduced states.
pub fn physical_invariant(psi: &StateVector, spec: &ClassSpec) -> Result<f64> {
    check_state(psi, spec)?;
    match spec {
        ClassSpec::Distinguishable { dims } => {
            let l = dims.len();
            let rho = StateVector::new(dims.clone(), psi.amplitudes().clone())?.projector();
            let mut sum = 0.0;
            for mask in 0usize..1 << l {
                let keep: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
                sum += match keep.len() {
                    0 => 1.0,
                    n if n == l => purity(&rho),
                    _ => purity(&partial_trace(&rho, &keep)?),
                };
            }
            Ok(1.0 - sum / (1u64 << l) as f64)
        }
        ClassSpec::Bosonic { d, l } => {
            let pur = particle_purities(psi, *d, *l, false)?;
            let norm = binomial(2 * l, *l).to_f64().expect("finite");
            let sum: f64 = (0..=*l)
                .map(|k| binomial(*l, k).to_f64().expect("finite").powi(2) / norm * pur[k])
                .sum();
            Ok(1.0 - sum)
        }
        ClassSpec::Fermionic { d, l } => {
            let pur = particle_purities(psi, *d, *l, true)?;
            let sum: f64 = (0..=*l).map(|k| binomial(*l, k).to_f64().expect("finite") * pur[k]).sum();
            Ok(1.0 - sum / (*l + 1) as f64)
        }
        _ => Err(Error::Unsupported(format!("no purity form for {spec}"))),
    }
}
