use qcorr_linalg::{herm_eig, seeded_rng, DMatrix, DVector, DenseOperator, Error, Result, StateVector, C64};
use rand::Rng;
use rand_distr::StandardNormal;

use crate::{FockAlgebra, Parity};

/// Real antisymmetric matrix `M_kl = (i/2) tr(rho [c_k, c_l])`.
#[derive(Debug, Clone, PartialEq)]
pub struct CorrelationMatrix {
    pub m: DMatrix<f64>,
    /// Largest imaginary part discarded when forming `m`.
    pub imag_residue: f64,
}

impl CorrelationMatrix {
    /// `|M M^T - I|_F`; zero exactly for pure Gaussian states.
    pub fn orthogonality_defect(&self) -> f64 {
        let n = self.m.nrows();
        (&self.m * self.m.transpose() - DMatrix::<f64>::identity(n, n)).norm()
    }

    pub fn antisymmetry_defect(&self) -> f64 {
        (&self.m + self.m.transpose()).amax()
    }
}

pub fn correlation_matrix(rho: &DenseOperator, alg: &FockAlgebra) -> Result<CorrelationMatrix> {
    alg.check_even(rho)?;
    let n = 2 * alg.modes();
    let mut m = DMatrix::zeros(n, n);
    let mut imag: f64 = 0.0;
    for k in 1..=n {
        for l in k + 1..=n {
            // [c_k, c_l] = 2 c_k c_l for k != l
            let t = alg.monomial(&[k, l]).trace_with(rho) * C64::new(0.0, 1.0);
            imag = imag.max(t.im.abs());
            m[(k - 1, l - 1)] = t.re;
            m[(l - 1, k - 1)] = -t.re;
        }
    }
    if imag > 1e-10 {
        return Err(Error::Contract(format!(
            "correlation matrix has imaginary part {imag:.3e}; is rho Hermitian?"
        )));
    }
    Ok(CorrelationMatrix { m, imag_residue: imag })
}

/// Random real antisymmetric `2d x 2d` matrix with standard normal entries.
pub fn random_antisymmetric<R: Rng + ?Sized>(d: usize, rng: &mut R) -> DMatrix<f64> {
    let n = 2 * d;
    let mut h = DMatrix::zeros(n, n);
    for k in 0..n {
        for l in k + 1..n {
            let x: f64 = rng.sample(StandardNormal);
            h[(k, l)] = x;
            h[(l, k)] = -x;
        }
    }
    h
}

/// `U = exp(-sum_kl h_kl c_k c_l)` for real antisymmetric `h`.
pub fn bogolyubov_unitary(h: &DMatrix<f64>, alg: &FockAlgebra) -> Result<DenseOperator> {
    let n = 2 * alg.modes();
    if h.nrows() != n || h.ncols() != n {
        return Err(Error::Dimension(format!("h must be {n}x{n}")));
    }
    if (h + h.transpose()).amax() > 1e-12 {
        return Err(Error::Domain("h is not antisymmetric".into()));
    }
    let dim = alg.dim();
    // generator G = sum h_kl c_k c_l is anti-Hermitian; iG is Hermitian
    let mut g = DMatrix::<C64>::zeros(dim, dim);
    for k in 1..=n {
        for l in 1..=n {
            if k != l && h[(k - 1, l - 1)] != 0.0 {
                alg.monomial(&[k, l]).add_to(&mut g, C64::new(h[(k - 1, l - 1)], 0.0));
            }
        }
    }
    let herm = DenseOperator::from_matrix(&g * C64::new(0.0, 1.0));
    let e = herm_eig(&herm)?;
    // exp(-G) = exp(i (iG))
    let phases = DVector::from_iterator(dim, e.values.iter().map(|&x| C64::new(0.0, x).exp()));
    let u = &e.vectors * DMatrix::from_diagonal(&phases) * e.vectors.adjoint();
    Ok(DenseOperator::from_matrix(u))
}

/// Rotation `R` with `U c_l U^dag = sum_k R_kl c_k`.
pub fn rotation_of(u: &DenseOperator, alg: &FockAlgebra) -> DMatrix<f64> {
    let n = 2 * alg.modes();
    let scale = 1.0 / alg.dim() as f64;
    let ud = u.adjoint();
    let conj: Vec<DenseOperator> = (1..=n)
        .map(|l| u.mul(&alg.c(l)).unwrap().mul(&ud).unwrap())
        .collect();
    DMatrix::from_fn(n, n, |k, l| (alg.majorana_monomial(k + 1).trace_with(&conj[l]) * scale).re)
}

/// Random pure Gaussian state of the given parity, obtained by a random
/// Bogolyubov transformation of `|0...0>` (parity +) or of the state with
/// only mode `d` occupied (parity -).
pub fn random_pure_gaussian_rng<R: Rng + ?Sized>(
    alg: &FockAlgebra,
    parity: Parity,
    rng: &mut R,
) -> Result<StateVector> {
    let h = random_antisymmetric(alg.modes(), rng);
    let u = bogolyubov_unitary(&h, alg)?;
    let start = match parity {
        Parity::Plus => 0,
        Parity::Minus => 1 << (alg.modes() - 1),
    };
    let v = u.matrix().column(start).into_owned();
    StateVector::new(vec![alg.dim()], v)?.normalized()
}

pub fn random_pure_gaussian(d: usize, parity: Parity, seed: u64) -> Result<StateVector> {
    let alg = crate::build_fock(d)?;
    random_pure_gaussian_rng(&alg, parity, &mut seeded_rng(seed))
}

fn stabilizers(alg: &FockAlgebra) -> [DenseOperator; 3] {
    let m = |s: &[usize]| alg.monomial(s).to_dense().scale(-1.0);
    [m(&[1, 2, 5, 6]), m(&[2, 3, 6, 7]), m(&[1, 2, 3, 4])]
}

/// The four-mode state `(1/16)(I+S1)(I+S2)(I+S3)(I+Q)` with
/// `S1 = -c1c2c5c6`, `S2 = -c2c3c6c7`, `S3 = -c1c2c3c4`.
pub fn a8_state(alg: &FockAlgebra) -> Result<DenseOperator> {
    if alg.modes() != 4 {
        return Err(Error::Domain("the a8 state lives on four modes".into()));
    }
    let id = DenseOperator::identity(vec![16])?;
    let mut acc = id.clone();
    for s in stabilizers(alg).iter().chain(std::iter::once(&alg.parity())) {
        acc = acc.mul(&id.add(s)?)?;
    }
    Ok(acc.scale(1.0 / 16.0))
}

/// Unit vector spanning the range of `a8_state`, phase fixed so that its
/// first nonzero amplitude is positive.
pub fn a8_vector(alg: &FockAlgebra) -> Result<StateVector> {
    let rho = a8_state(alg)?;
    let e = herm_eig(&rho)?;
    StateVector::new(vec![16], e.vector(0))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::build_fock;

    #[test]
    fn vacuum_correlations_one_mode() {
        let f = build_fock(1).unwrap();
        let m = correlation_matrix(&f.vacuum().projector(), &f).unwrap().m;
        assert_eq!(m, DMatrix::from_row_slice(2, 2, &[0.0, 1.0, -1.0, 0.0]));
    }

    #[test]
    fn maximally_mixed_has_zero_correlations() {
        let f = build_fock(3).unwrap();
        let rho = DenseOperator::identity(vec![8]).unwrap().scale(1.0 / 8.0);
        assert!(correlation_matrix(&rho, &f).unwrap().m.amax() == 0.0);
    }

    #[test]
    fn trivial_generator_gives_identity() {
        let f = build_fock(2).unwrap();
        let u = bogolyubov_unitary(&DMatrix::zeros(4, 4), &f).unwrap();
        assert!(u.distance(&DenseOperator::identity(vec![4]).unwrap()) < 1e-14);
        assert!(bogolyubov_unitary(&DMatrix::identity(4, 4), &f).is_err());
    }

    #[test]
    fn a8_properties() {
        let f = build_fock(4).unwrap();
        let a8 = a8_state(&f).unwrap();
        assert!((a8.trace().re - 1.0).abs() < 1e-12);
        assert!(a8.mul(&a8).unwrap().distance(&a8) < 1e-12);
        for s in stabilizers(&f) {
            assert!(s.mul(&a8).unwrap().distance(&a8) < 1e-12);
        }
        let q = f.parity();
        assert!(q.mul(&a8).unwrap().distance(&a8) < 1e-12);
        assert!(q.mul(&a8).unwrap().mul(&q).unwrap().distance(&a8) < 1e-12);
        assert!(a8_state(&build_fock(3).unwrap()).is_err());
    }
}
