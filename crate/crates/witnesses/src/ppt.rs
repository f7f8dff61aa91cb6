use qcorr_linalg::{herm_eig, partial_transpose, DenseOperator, Error, Result};

/// Smallest eigenvalue of the partial transpose on the second factor.
pub fn ppt_min_eigenvalue(rho: &DenseOperator) -> Result<f64> {
    if rho.factor_dims().len() != 2 {
        return Err(Error::Dimension(format!(
            "partial transposition test needs a bipartite state, got factors {:?}",
            rho.factor_dims()
        )));
    }
    Ok(herm_eig(&partial_transpose(rho, 1)?)?.min())
}

/// True when the partial transpose has an eigenvalue below `-1e-10`.
pub fn ppt_entangled(rho: &DenseOperator) -> Result<bool> {
    Ok(ppt_min_eigenvalue(rho)? < -1e-10)
}

#[cfg(test)]
mod tests {
    use super::*;
    use qcorr_linalg::{c64, StateVector};

    #[test]
    fn bell_and_product() {
        let h = 0.5f64.sqrt();
        let bell = StateVector::from_vec(vec![2, 2], vec![c64(h, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(h, 0.0)]).unwrap();
        assert!((ppt_min_eigenvalue(&bell.projector()).unwrap() + 0.5).abs() < 1e-12);
        assert!(ppt_entangled(&bell.projector()).unwrap());
        let prod = StateVector::basis(vec![2, 2], 1).unwrap();
        assert!(!ppt_entangled(&prod.projector()).unwrap());
        let flat = DenseOperator::identity(vec![8]).unwrap();
        assert!(ppt_entangled(&flat).is_err());
    }
}
