use itertools::Itertools;
use qcorr_fock::{random_pure_gaussian_rng, restrict_vector, build_fock, Parity};
use qcorr_linalg::{haar_unitary_rng, random_state, DMatrix, DVector, Result, StateVector, C64};
use rand::Rng;

use crate::carrier::ParticleCarrier;
use crate::{ClassSpec, Sector};

/// A random member of the class, as a carrier vector.
///
/// Distinguishable: product of Haar-random local vectors. Bosonic: `phi^L`
/// for Haar-random `phi`. Fermionic: Slater determinant of the first `L`
/// columns of a Haar unitary. Gaussian: random Bogolyubov image of a
/// reference state (parity drawn uniformly for the "both" sector). Schmidt:
/// random rank-`n` coefficient matrix. Tripartite: product across a
/// uniformly chosen cut.
pub fn random_member<R: Rng + ?Sized>(spec: &ClassSpec, rng: &mut R) -> Result<StateVector> {
    spec.validate()?;
    let fd = spec.carrier_factor_dims();
    match spec {
        ClassSpec::Distinguishable { dims } => {
            let parts = dims.iter().map(|&d| random_state(&[d], rng)).collect::<Result<Vec<_>>>()?;
            StateVector::new(fd, StateVector::tensor_all(&parts)?.into_amplitudes())
        }
        ClassSpec::Bosonic { d, l } => {
            let phi = random_state(&[*d], rng)?;
            let carrier = ParticleCarrier::new(*d, *l, false);
            let mut full = DVector::from_element(1, C64::new(1.0, 0.0));
            for _ in 0..*l {
                full = full.kronecker(phi.amplitudes());
            }
            StateVector::new(fd, carrier.restrict(&full))?.normalized()
        }
        ClassSpec::Fermionic { d, l } => {
            let u = haar_unitary_rng(*d, rng);
            let m = u.matrix();
            let amps = (0..*d)
                .combinations(*l)
                .map(|rows| DMatrix::from_fn(*l, *l, |i, j| m[(rows[i], j)]).determinant());
            StateVector::new(fd, DVector::from_iterator(spec.carrier_dim(), amps))?.normalized()
        }
        ClassSpec::Gaussian { d, sector } => {
            let alg = build_fock(*d)?;
            let parity = match sector.parity() {
                Some(p) => p,
                None if rng.random::<bool>() => Parity::Plus,
                None => Parity::Minus,
            };
            let psi = random_pure_gaussian_rng(&alg, parity, rng)?;
            match sector {
                Sector::Both => Ok(psi),
                _ => StateVector::new(fd, restrict_vector(psi.amplitudes(), *d, parity))?.normalized(),
            }
        }
        ClassSpec::SchmidtBounded { da, db, n } => {
            let left = random_state(&[da * n], rng)?;
            let right = random_state(&[n * db], rng)?;
            let a = DMatrix::from_column_slice(*n, *da, left.amplitudes().as_slice()).transpose();
            let b = DMatrix::from_column_slice(*db, *n, right.amplitudes().as_slice()).transpose();
            let c = a * b;
            let v = DVector::from_iterator(da * db, (0..*da).flat_map(|i| (0..*db).map(move |j| (i, j))).map(|(i, j)| c[(i, j)]));
            StateVector::new(fd, v)?.normalized()
        }
        ClassSpec::TwoSeparable3 { d } => {
            let cut = rng.random_range(0..3);
            let single = random_state(&[*d], rng)?;
            let pair = random_state(&[d * d], rng)?;
            let (s, p) = (single.amplitudes(), pair.amplitudes());
            let v = DVector::from_fn(d * d * d, |idx, _| {
                let (a, b, c) = (idx / (d * d), (idx / d) % d, idx % d);
                match cut {
                    0 => s[a] * p[b * d + c],
                    1 => s[b] * p[a * d + c],
                    _ => s[c] * p[a * d + b],
                }
            });
            StateVector::new(fd, v)?.normalized()
        }
    }
}

/// A Haar-random vector on the class carrier.
pub fn random_carrier_state<R: Rng + ?Sized>(spec: &ClassSpec, rng: &mut R) -> Result<StateVector> {
    let v = random_state(&[spec.carrier_dim()], rng)?;
    StateVector::new(spec.carrier_factor_dims(), v.into_amplitudes())
}
