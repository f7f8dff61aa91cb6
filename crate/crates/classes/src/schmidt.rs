use num_bigint::BigInt;
use num_rational::BigRational;
use qcorr_linalg::{DMatrix, DVector, Error, Result, StateVector, C64};
use qcorr_young::binomial;

use crate::operators::{product_of_symmetrizers, ClassOperator};
use crate::ClassSpec;

/// Schmidt coefficients (non-increasing) and the matching orthonormal
/// vectors: `psi = sum_i lambda_i left_i (x) right_i`.
#[derive(Debug, Clone)]
pub struct SchmidtDecomposition {
    pub coefficients: Vec<f64>,
    /// Columns are the left vectors.
    pub left: DMatrix<C64>,
    /// Columns are the right vectors.
    pub right: DMatrix<C64>,
}

impl SchmidtDecomposition {
    pub fn rank(&self, cutoff: f64) -> usize {
        self.coefficients.iter().filter(|&&x| x > cutoff).count()
    }

    pub fn reconstruct(&self) -> DVector<C64> {
        let mut out = DVector::zeros(self.left.nrows() * self.right.nrows());
        for (i, &l) in self.coefficients.iter().enumerate() {
            out += self.left.column(i).kronecker(&self.right.column(i)) * C64::new(l, 0.0);
        }
        out
    }
}

pub fn schmidt_decompose(psi: &StateVector, da: usize, db: usize) -> Result<SchmidtDecomposition> {
    if psi.dim() != da * db {
        return Err(Error::Dimension(format!("state of dim {} is not {da}x{db}", psi.dim())));
    }
    let amps = psi.amplitudes();
    let m = DMatrix::from_fn(da, db, |a, b| amps[a * db + b]);
    let svd = m.svd(true, true);
    let u = svd.u.expect("requested");
    let vt = svd.v_t.expect("requested");
    let mut order: Vec<usize> = (0..svd.singular_values.len()).collect();
    order.sort_by(|&i, &j| svd.singular_values[j].total_cmp(&svd.singular_values[i]));
    let coefficients = order.iter().map(|&i| svd.singular_values[i]).collect();
    let left = DMatrix::from_fn(da, order.len(), |a, c| u[(a, order[c])]);
    let right = DMatrix::from_fn(db, order.len(), |b, c| vt[(order[c], b)]);
    Ok(SchmidtDecomposition { coefficients, left, right })
}

/// `P_A^{asym,n+1} (x) P_B^{asym,n+1}` on `n+1` copies of `C^dA (x) C^dB`
/// (slot order `A_1 B_1 A_2 B_2 ...`).
pub fn schmidt_operator(n: usize, da: usize, db: usize) -> Result<ClassOperator> {
    let spec = ClassSpec::SchmidtBounded { da, db, n };
    spec.validate()?;
    let k = n + 1;
    let dims: Vec<usize> = (0..2 * k).map(|s| if s % 2 == 0 { da } else { db }).collect();
    let a_slots: Vec<usize> = (0..k).map(|c| 2 * c).collect();
    let b_slots: Vec<usize> = (0..k).map(|c| 2 * c + 1).collect();
    let a = product_of_symmetrizers(&dims, &[a_slots, b_slots], true)?;
    let trace = BigRational::from_integer(BigInt::from(binomial(da, k) * binomial(db, k)));
    Ok(ClassOperator::from_parts(spec, k, a, trace))
}

/// Elementary symmetric polynomial `e_m` of the given values.
pub fn elementary_symmetric(values: &[f64], m: usize) -> f64 {
    let mut e = vec![0.0; m + 1];
    e[0] = 1.0;
    for &x in values {
        for j in (1..=m).rev() {
            e[j] += e[j - 1] * x;
        }
    }
    e[m]
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn elementary_symmetric_small() {
        assert_eq!(elementary_symmetric(&[1.0, 2.0, 3.0], 2), 11.0);
        assert_eq!(elementary_symmetric(&[1.0, 2.0], 3), 0.0);
    }

    #[test]
    fn bell_decomposition() {
        let s = 1.0 / 2f64.sqrt();
        let psi = StateVector::from_vec(vec![2, 2], vec![C64::new(s, 0.0), 0.0.into(), 0.0.into(), C64::new(s, 0.0)]).unwrap();
        let dec = schmidt_decompose(&psi, 2, 2).unwrap();
        assert!((dec.coefficients[0] - s).abs() < 1e-12 && (dec.coefficients[1] - s).abs() < 1e-12);
        assert!((dec.reconstruct() - psi.amplitudes()).norm() < 1e-12);
    }
}
