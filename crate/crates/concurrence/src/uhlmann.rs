use qcorr_fock::{build_fock, restrict_operator, Parity};
use qcorr_linalg::{c64, DMatrix, DVector, DenseOperator, Error, Result, C64};

/// Imaginary parts of eigenvalues of `rho rho~` above this are reported as a
/// numerical failure instead of being clamped.
pub const IMAG_FAILURE: f64 = 1e-6;

const CLAMP: f64 = 1e-9;

/// An antiunitary conjugation `theta` and the induced map `rho -> rho~`.
#[derive(Debug, Clone)]
pub enum ConjugationSpec {
    /// `theta(v) = T conj(v)` for a unitary `T` with `T conj(T) = I`.
    BasisConjugation(DenseOperator),
    /// The Majorana conjugation on `modes` modes, applied to the block of one
    /// parity sector. The state is given on the full Fock space.
    MajoranaTilde { modes: usize, sector: Parity },
}

impl ConjugationSpec {
    /// `theta(v)`; for the Majorana case `v` lives on the full Fock space.
    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        let t = match self {
            ConjugationSpec::BasisConjugation(t) => t.matrix().clone(),
            ConjugationSpec::MajoranaTilde { modes, .. } => build_fock(*modes)?.reflection().to_dense().into_matrix(),
        };
        if t.nrows() != v.len() {
            return Err(Error::Dimension(format!("vector of dim {} for conjugation of dim {}", v.len(), t.nrows())));
        }
        Ok(t * v.map(|z| z.conj()))
    }

    /// The pair `(rho_block, rho~_block)` whose product defines the
    /// concurrence.
    fn pair(&self, rho: &DenseOperator) -> Result<(DMatrix<C64>, DMatrix<C64>)> {
        match self {
            ConjugationSpec::BasisConjugation(t) => {
                if t.dim() != rho.dim() {
                    return Err(Error::Dimension(format!(
                        "state of dim {} for conjugation of dim {}",
                        rho.dim(),
                        t.dim()
                    )));
                }
                let tm = t.matrix();
                let tilde = tm * rho.matrix().map(|z| z.conj()) * tm.adjoint();
                Ok((rho.matrix().clone(), tilde))
            }
            ConjugationSpec::MajoranaTilde { modes, sector } => {
                let alg = build_fock(*modes)?;
                alg.check_even(rho)?;
                let proj = alg.sector_projector(*sector);
                let block = proj.mul(rho)?.mul(&proj)?;
                let tilde = alg.tilde(&block)?;
                Ok((
                    restrict_operator(&block, *modes, *sector).into_matrix(),
                    restrict_operator(&tilde, *modes, *sector).into_matrix(),
                ))
            }
        }
    }
}

/// `max(0, l_1 - l_2 - ...)` for the non-increasing square roots `l_i` of the
/// eigenvalues of `rho rho~`.
pub fn concurrence_from_pair(rho: &DMatrix<C64>, tilde: &DMatrix<C64>) -> Result<f64> {
    let prod = rho * tilde;
    let scale = prod.norm().max(1.0);
    let eig = prod
        .clone()
        .try_schur(1e-14 * scale, 10_000)
        .ok_or_else(|| Error::Numerical("Schur decomposition did not converge".into()))?
        .eigenvalues()
        .ok_or_else(|| Error::Numerical("Schur form is not triangular".into()))?;
    let mut roots = Vec::with_capacity(eig.len());
    for z in eig.iter() {
        if z.im.abs() > IMAG_FAILURE * scale {
            return Err(Error::Numerical(format!("eigenvalue {z} of rho rho~ is not real")));
        }
        if z.re < -IMAG_FAILURE * scale {
            return Err(Error::Numerical(format!("eigenvalue {z} of rho rho~ is negative")));
        }
        let re = if z.re.abs() <= CLAMP { 0.0 } else { z.re.max(0.0) };
        roots.push(re.sqrt());
    }
    roots.sort_by(|a, b| b.total_cmp(a));
    let rest: f64 = roots.iter().skip(1).sum();
    Ok((roots.first().copied().unwrap_or(0.0) - rest).max(0.0))
}

/// Uhlmann-Wootters concurrence of `rho` for the given conjugation.
pub fn uw_concurrence(rho: &DenseOperator, conj: &ConjugationSpec) -> Result<f64> {
    let (r, t) = conj.pair(rho)?;
    concurrence_from_pair(&r, &t)
}

/// `sigma_y (x) sigma_y`.
pub fn sigma_y_pair() -> DenseOperator {
    let i = c64(0.0, 1.0);
    let z = c64(0.0, 0.0);
    let sy = DMatrix::from_row_slice(2, 2, &[z, -i, i, z]);
    DenseOperator::new(vec![2, 2], sy.kronecker(&sy)).expect("4x4")
}

/// Wootters' two-qubit concurrence.
pub fn wootters_2q(rho: &DenseOperator) -> Result<f64> {
    if rho.dim() != 4 {
        return Err(Error::Dimension(format!("two-qubit state expected, got dim {}", rho.dim())));
    }
    uw_concurrence(rho, &ConjugationSpec::BasisConjugation(sigma_y_pair()))
}

/// Werner family `(1-p)|Psi-><Psi-| + p I/4`.
pub fn werner(p: f64) -> DenseOperator {
    let h = 0.5f64.sqrt();
    let psi = DVector::from_vec(vec![c64(0.0, 0.0), c64(h, 0.0), c64(-h, 0.0), c64(0.0, 0.0)]);
    let m = &psi * psi.adjoint() * c64(1.0 - p, 0.0) + DMatrix::identity(4, 4) * c64(p / 4.0, 0.0);
    DenseOperator::new(vec![2, 2], m).expect("4x4")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn werner_closed_form() {
        for p in [0.0, 0.1, 0.4, 2.0 / 3.0, 0.8, 1.0] {
            let c = wootters_2q(&werner(p)).unwrap();
            assert!((c - (1.0 - 1.5 * p).max(0.0)).abs() < 1e-10, "p={p}: {c}");
        }
    }
}
