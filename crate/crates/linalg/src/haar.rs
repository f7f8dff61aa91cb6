use nalgebra::{DMatrix, DVector};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rand_distr::StandardNormal;

use crate::{dim_product, DenseOperator, Result, StateVector, C64};

/// Random number generator used throughout the workspace.
pub type QRng = ChaCha20Rng;

pub fn seeded_rng(seed: u64) -> QRng {
    ChaCha20Rng::seed_from_u64(seed)
}

/// Independent stream `stream` derived from `seed`.
pub fn stream_rng(seed: u64, stream: u64) -> QRng {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn gaussian_c64<R: Rng + ?Sized>(rng: &mut R) -> C64 {
    let re: f64 = rng.sample(StandardNormal);
    let im: f64 = rng.sample(StandardNormal);
    C64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
}

/// Haar-random unitary on U(n): QR of a complex Ginibre matrix with the
/// phases of diag(R) moved into Q.
pub fn haar_unitary_rng<R: Rng + ?Sized>(n: usize, rng: &mut R) -> DenseOperator {
    let z = DMatrix::from_fn(n, n, |_, _| gaussian_c64(rng));
    let qr = z.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let ph = if d.norm() > 0.0 { d / d.norm() } else { C64::new(1.0, 0.0) };
        let mut col = q.column_mut(j);
        col *= ph;
    }
    DenseOperator::from_matrix(q)
}

pub fn haar_unitary(n: usize, seed: u64) -> DenseOperator {
    haar_unitary_rng(n, &mut seeded_rng(seed))
}

/// Haar-random pure state on the given factors.
pub fn random_state<R: Rng + ?Sized>(factor_dims: &[usize], rng: &mut R) -> Result<StateVector> {
    let n = dim_product(factor_dims)?;
    let v = DVector::from_fn(n, |_, _| gaussian_c64(rng));
    StateVector::new(factor_dims.to_vec(), v)?.normalized()
}

/// Random density matrix of the given rank (induced measure).
pub fn random_density<R: Rng + ?Sized>(
    factor_dims: &[usize],
    rank: usize,
    rng: &mut R,
) -> Result<DenseOperator> {
    let n = dim_product(factor_dims)?;
    let g = DMatrix::from_fn(n, rank.max(1), |_, _| gaussian_c64(rng));
    let m = &g * g.adjoint();
    let t = m.trace();
    DenseOperator::new(factor_dims.to_vec(), m / t)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn unitarity() {
        for n in [2, 8, 16] {
            let u = haar_unitary(n, n as u64);
            let r = u.matrix().adjoint() * u.matrix() - DMatrix::<C64>::identity(n, n);
            assert!(r.norm() < 1e-12, "n={n}: {}", r.norm());
        }
    }

    #[test]
    fn deterministic_for_seed() {
        assert_eq!(haar_unitary(5, 42), haar_unitary(5, 42));
        assert_ne!(haar_unitary(5, 42), haar_unitary(5, 43));
    }

    #[test]
    fn streams_differ() {
        let a: u64 = stream_rng(1, 0).random();
        let b: u64 = stream_rng(1, 1).random();
        assert_ne!(a, b);
    }

    #[test]
    fn random_density_is_a_state() {
        let mut rng = seeded_rng(9);
        let rho = random_density(&[2, 3], 3, &mut rng).unwrap();
        assert!((rho.trace().re - 1.0).abs() < 1e-12);
        let e = crate::herm_eig(&rho).unwrap();
        assert!(e.min() > -1e-12);
        assert_eq!(e.count_above(1e-12), 3);
    }
}
