use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qcorr_classes::{gaussian_class_matrix, ClassSpec, Sector};
use qcorr_fock::{sector_indices, Parity};
use qcorr_linalg::{Error, Result};
use qcorr_young::binomial;

/// Largest mode count for which the Gaussian constant is served.
pub const MAX_GAUSS_CONSTANT_MODES: usize = 1000;

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

/// `C(j, j/2) / 2^j`: the two-copy Gaussian projector evaluated on the
/// vacuum paired with a Fock state of `j` occupied modes (`j` even).
pub fn gauss_pair_overlap(j: usize) -> BigRational {
    BigRational::new(BigInt::from(binomial(j, j / 2)), BigInt::from(2u8).pow(j as u32))
}

/// `c_d = 1 - 2 min_J <0,J|P_0|0,J>` over nonempty even occupation sets `J`.
pub fn gauss_constant(d: usize) -> Result<BigRational> {
    if d == 0 || d > MAX_GAUSS_CONSTANT_MODES {
        return Err(Error::Domain(format!(
            "Gaussian constant is served for 1 <= d <= {MAX_GAUSS_CONSTANT_MODES}, got {d}"
        )));
    }
    if d < 2 {
        return Ok(BigRational::zero());
    }
    let j = 2 * (d / 2);
    Ok(BigRational::one() - gauss_pair_overlap(j) * BigRational::from_integer(2.into()))
}

/// The smallest constant `c` making `A - c P^asym` a sound two-copy witness.
pub fn bilinear_constant(spec: &ClassSpec) -> Result<BigRational> {
    spec.validate()?;
    match spec {
        ClassSpec::Distinguishable { dims } => Ok(BigRational::one() - q(2, 1 << dims.len())),
        ClassSpec::Bosonic { l, .. } => Ok(BigRational::one()
            - BigRational::new(BigInt::from(2), BigInt::from(binomial(2 * l, *l)))),
        ClassSpec::Fermionic { d, l } => {
            let excess = (2 * l).saturating_sub(*d);
            Ok(BigRational::one() - q(2, (l + 1 - excess) as i64))
        }
        ClassSpec::Gaussian { sector: Sector::Both, .. } => {
            Err(Error::Domain("Gaussian witnesses are defined per parity sector".into()))
        }
        ClassSpec::Gaussian { d, .. } => gauss_constant(*d),
        _ => Err(Error::Unsupported(format!("{spec} has no bilinear witness constant"))),
    }
}

/// `2 max_J <0,J|A|0,J>` over nonempty even occupation sets `J`, evaluated
/// numerically with the two-copy even-sector class operator.
pub fn gauss_constant_numeric(d: usize) -> Result<f64> {
    let a = gaussian_class_matrix(d, Sector::Plus)?;
    let idx = sector_indices(d, Parity::Plus);
    let n = idx.len();
    let best = (1..n)
        .map(|j| a.get(j, j).re)
        .fold(f64::NEG_INFINITY, f64::max);
    Ok(if n > 1 { 2.0 * best } else { 0.0 })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_forms() {
        for l in 2..=5 {
            let c = bilinear_constant(&ClassSpec::Distinguishable { dims: vec![2; l] }).unwrap();
            assert_eq!(c, BigRational::one() - q(1, 1 << (l - 1)));
        }
        let bos = |l| bilinear_constant(&ClassSpec::Bosonic { d: 2, l }).unwrap();
        assert_eq!(bos(2), q(2, 3));
        assert_eq!(bos(3), q(9, 10));
        assert_eq!(bos(4), q(34, 35));
        for d in 4..=6 {
            assert_eq!(bilinear_constant(&ClassSpec::Fermionic { d, l: 2 }).unwrap(), q(1, 3));
        }
        assert_eq!(bilinear_constant(&ClassSpec::Fermionic { d: 3, l: 2 }).unwrap(), BigRational::zero());
        assert_eq!(gauss_constant(4).unwrap(), q(1, 4));
        assert_eq!(gauss_constant(5).unwrap(), q(1, 4));
        assert_eq!(gauss_constant(8).unwrap(), q(29, 64));
        assert_eq!(gauss_constant(3).unwrap(), BigRational::zero());
        assert!(gauss_constant(1001).is_err());
        assert!(bilinear_constant(&ClassSpec::Gaussian { d: 4, sector: Sector::Both }).is_err());
    }

    #[test]
    fn pair_overlaps() {
        assert_eq!(gauss_pair_overlap(2), q(1, 2));
        assert_eq!(gauss_pair_overlap(4), q(3, 8));
        assert_eq!(gauss_pair_overlap(6), q(5, 16));
        assert_eq!(gauss_pair_overlap(8), q(35, 128));
    }
}
