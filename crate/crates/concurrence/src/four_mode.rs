//! Four fermionic modes: a mixed even state is a convex combination of pure
//! Gaussian states exactly when both sector concurrences vanish.

use qcorr_fock::{a8_state, embed_vector, restrict_vector, sector_indices, FockAlgebra, Parity};
use qcorr_linalg::{c64, DMatrix, DVector, DenseOperator, Error, Result, StateVector, C64};

use crate::uhlmann::{uw_concurrence, ConjugationSpec};

/// Number of pure Gaussian states always sufficient in a decomposition.
pub const MAX_DECOMPOSITION_TERMS: usize = 16;

const ZERO_TOL: f64 = 1e-10;

fn check_four(alg: &FockAlgebra) -> Result<()> {
    if alg.modes() != 4 {
        return Err(Error::Domain(format!("four-mode procedure called with {} modes", alg.modes())));
    }
    Ok(())
}

/// `(C_+, C_-)` for an even state on four modes.
pub fn gauss_concurrences(rho: &DenseOperator, alg: &FockAlgebra) -> Result<(f64, f64)> {
    check_four(alg)?;
    let plus = uw_concurrence(rho, &ConjugationSpec::MajoranaTilde { modes: 4, sector: Parity::Plus })?;
    let minus = uw_concurrence(rho, &ConjugationSpec::MajoranaTilde { modes: 4, sector: Parity::Minus })?;
    Ok((plus, minus))
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvexGaussianReport {
    pub c_plus: f64,
    pub c_minus: f64,
    pub convex_gaussian: bool,
    /// Upper bound on the number of pure Gaussian states needed.
    pub max_terms: usize,
}

pub fn convex_gaussian(rho: &DenseOperator, alg: &FockAlgebra) -> Result<ConvexGaussianReport> {
    let (c_plus, c_minus) = gauss_concurrences(rho, alg)?;
    Ok(ConvexGaussianReport {
        c_plus,
        c_minus,
        convex_gaussian: c_plus <= ZERO_TOL && c_minus <= ZERO_TOL,
        max_terms: MAX_DECOMPOSITION_TERMS,
    })
}

/// The antiunitary `theta_+` on the 8-dimensional even sector.
pub fn theta_plus(v: &DVector<C64>, alg: &FockAlgebra) -> Result<DVector<C64>> {
    check_four(alg)?;
    if v.len() != 8 {
        return Err(Error::Dimension(format!("even-sector vector of dim {} (expected 8)", v.len())));
    }
    let full = embed_vector(v, 4, Parity::Plus);
    let t = alg.reflection().to_dense().into_matrix();
    Ok(restrict_vector(&(t * full.map(|z| z.conj())), 4, Parity::Plus))
}

/// `psi = sqrt(1-p^2) psi_G + p theta_+ psi_G` with `psi_G` Gaussian and
/// `0 <= p <= 1/sqrt 2`, up to the global phase `phase`.
#[derive(Debug, Clone)]
pub struct GeneralizedSchmidt {
    pub p: f64,
    pub gaussian: StateVector,
    pub phase: C64,
}

impl GeneralizedSchmidt {
    /// `phase^* (sqrt(1-p^2) psi_G + p theta_+ psi_G)`.
    pub fn reconstruct(&self, alg: &FockAlgebra) -> Result<DVector<C64>> {
        let g = self.gaussian.amplitudes();
        let a = (1.0 - self.p * self.p).sqrt();
        let v = g * c64(a, 0.0) + theta_plus(g, alg)? * c64(self.p, 0.0);
        Ok(v * self.phase.conj())
    }
}

/// Even-sector vector `sqrt(1-p^2) g + p theta_+ g`.
pub fn schmidt_family(g: &DVector<C64>, p: f64, alg: &FockAlgebra) -> Result<DVector<C64>> {
    let a = (1.0 - p * p).sqrt();
    Ok(g * c64(a, 0.0) + theta_plus(g, alg)? * c64(p, 0.0))
}

fn real_unit_orthogonal_to(x: &DVector<C64>, alg: &FockAlgebra) -> Result<DVector<C64>> {
    for i in 0..8 {
        let mut b = DVector::zeros(8);
        b[i] = c64(1.0, 0.0);
        for cand in [b.clone() + theta_plus(&b, alg)?, (b.clone() - theta_plus(&b, alg)?) * c64(0.0, 1.0)] {
            let w = &cand - x * x.dotc(&cand);
            if w.norm() > 0.1 {
                return Ok(w.normalize());
            }
        }
    }
    Err(Error::Numerical("no real direction orthogonal to the state".into()))
}

/// Decompose a normalized even four-mode vector (8 sector amplitudes).
pub fn generalized_schmidt(psi: &StateVector, alg: &FockAlgebra) -> Result<GeneralizedSchmidt> {
    check_four(alg)?;
    let v = match psi.dim() {
        8 => psi.amplitudes().clone(),
        16 => {
            let idx = sector_indices(4, Parity::Minus);
            if idx.iter().any(|&i| psi.amplitudes()[i].norm() > 1e-10) {
                return Err(Error::Domain("state has odd-parity amplitudes".into()));
            }
            restrict_vector(psi.amplitudes(), 4, Parity::Plus)
        }
        n => return Err(Error::Dimension(format!("four-mode state of dim {n}"))),
    };
    if (v.norm() - 1.0).abs() > 1e-9 {
        return Err(Error::Domain("state is not normalized".into()));
    }
    let overlap = v.dotc(&theta_plus(&v, alg)?);
    let c = overlap.norm().min(1.0);
    let p = ((1.0 - (1.0 - c * c).max(0.0).sqrt()) / 2.0).sqrt();
    // rotate so that <psi|theta psi> is real and non-negative
    let phase = if c > 0.0 { (overlap / c).sqrt() } else { c64(1.0, 0.0) };
    let w = &v * phase;
    let tw = theta_plus(&w, alg)?;
    let x = (&w + &tw) * c64(0.5, 0.0);
    let y = (&w - &tw) * c64(0.0, -0.5);
    let a = (1.0 - p * p).sqrt();
    let u = &x / c64(a + p, 0.0);
    let vv = if a - p > 1e-7 {
        &y / c64(a - p, 0.0)
    } else {
        real_unit_orthogonal_to(&x.normalize(), alg)? * c64(u.norm(), 0.0)
    };
    let g = u + vv * c64(0.0, 1.0);
    Ok(GeneralizedSchmidt { p, gaussian: StateVector::new(vec![8], g)?.normalized()?, phase })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FidelityReport {
    /// Largest Uhlmann fidelity to a convex-Gaussian state.
    pub fidelity: f64,
    /// Trace-distance interval `[1 - sqrt F, sqrt(1 - F)]`.
    pub distance_lower: f64,
    pub distance_upper: f64,
}

/// `F = 1/2 + sqrt(1 - C_+^2)/2` for a state on the even sector.
pub fn gauss_fidelity(rho: &DenseOperator, alg: &FockAlgebra) -> Result<FidelityReport> {
    check_four(alg)?;
    let odd = sector_indices(4, Parity::Minus);
    let m = rho.matrix();
    if rho.dim() != 16 || odd.iter().any(|&i| m[(i, i)].norm() > 1e-10) {
        return Err(Error::Domain("fidelity formula needs a state supported on the even sector".into()));
    }
    let (c_plus, _) = gauss_concurrences(rho, alg)?;
    let f = 0.5 + 0.5 * (1.0 - c_plus * c_plus).max(0.0).sqrt();
    Ok(FidelityReport { fidelity: f, distance_lower: 1.0 - f.sqrt(), distance_upper: (1.0 - f).sqrt() })
}

/// `(1-p) a8 + p I/16`.
pub fn a8_depolarized(alg: &FockAlgebra, p: f64) -> Result<DenseOperator> {
    let a8 = a8_state(alg)?;
    let id = DMatrix::<C64>::identity(16, 16) * c64(p / 16.0, 0.0);
    DenseOperator::new(vec![16], a8.matrix() * c64(1.0 - p, 0.0) + id)
}
