//! Exact Young-diagram combinatorics: hook products, dimensions of
//! irreducible GL(n) representations and Young-projector normalizations,
//! plus the small exact-arithmetic helpers shared by the workspace.

use std::fmt;
use std::str::FromStr;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

mod exact;
pub use exact::{binomial, binomial_int, factorial, parse_rational, rational_string, rational_to_f64};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum YoungError {
    Empty,
    NotPartition(Vec<usize>),
    Parse(String),
}

impl fmt::Display for YoungError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            YoungError::Empty => write!(f, "empty Young diagram"),
            YoungError::NotPartition(r) => write!(f, "rows {r:?} are not a non-increasing sequence of positive integers"),
            YoungError::Parse(s) => write!(f, "cannot parse Young diagram from {s:?}"),
        }
    }
}

impl std::error::Error for YoungError {}

/// Row lengths of a Young diagram, non-increasing and positive.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    pub fn new(rows: Vec<usize>) -> Result<Self, YoungError> {
        if rows.is_empty() {
            return Err(YoungError::Empty);
        }
        if rows.contains(&0) || rows.windows(2).any(|w| w[0] < w[1]) {
            return Err(YoungError::NotPartition(rows));
        }
        Ok(Self { rows })
    }

    /// `height` rows of equal `width`.
    pub fn rectangle(height: usize, width: usize) -> Result<Self, YoungError> {
        Self::new(vec![width; height])
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn boxes(&self) -> usize {
        self.rows.iter().sum()
    }

    /// Column heights, left to right.
    pub fn columns(&self) -> Vec<usize> {
        (0..self.rows[0]).map(|j| self.rows.iter().filter(|&&r| r > j).count()).collect()
    }

    /// Product of hook lengths (arm + leg + 1 over all boxes).
    pub fn hook_product(&self) -> BigUint {
        let cols = self.columns();
        let mut g = BigUint::one();
        for (i, &r) in self.rows.iter().enumerate() {
            for (j, &c) in cols.iter().enumerate().take(r) {
                let hook = (r - j - 1) + (c - i - 1) + 1;
                g *= BigUint::from(hook);
            }
        }
        g
    }

    /// Box-fill product: n in the top-left box, +1 to the right, -1 down.
    pub fn fill_product(&self, n: usize) -> BigInt {
        let mut f = BigInt::one();
        for (i, &r) in self.rows.iter().enumerate() {
            for j in 0..r {
                f *= BigInt::from(n as i64 + j as i64 - i as i64);
            }
        }
        f
    }

    /// Dimension of the GL(n) irrep labelled by this diagram.
    pub fn dim_irrep(&self, n: usize) -> BigUint {
        if self.rows.len() > n {
            return BigUint::zero();
        }
        let f = self.fill_product(n);
        let g = BigInt::from(self.hook_product());
        debug_assert!((&f % &g).is_zero());
        (f / g).abs().to_biguint().expect("non-negative")
    }

    /// Normalization making the Hermitian Young projector idempotent:
    /// (product of column-height factorials) * (product of row-length
    /// factorials) / hook product.
    pub fn alpha_coeff(&self) -> BigRational {
        let c: BigUint = self.columns().iter().map(|&h| factorial(h)).product();
        let r: BigUint = self.rows.iter().map(|&l| factorial(l)).product();
        BigRational::new(BigInt::from(c * r), BigInt::from(self.hook_product()))
    }
}

impl FromStr for YoungDiagram {
    type Err = YoungError;
    fn from_str(s: &str) -> Result<Self, YoungError> {
        let rows = s
            .split(',')
            .map(|t| t.trim().parse::<usize>())
            .collect::<Result<Vec<_>, _>>()
            .map_err(|_| YoungError::Parse(s.to_string()))?;
        Self::new(rows)
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.rows.iter().map(|r| r.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Convenience wrappers.
pub fn hook_product(lambda: &YoungDiagram) -> BigUint {
    lambda.hook_product()
}

pub fn dim_irrep(lambda: &YoungDiagram, n: usize) -> BigUint {
    lambda.dim_irrep(n)
}

pub fn alpha_coeff(lambda: &YoungDiagram) -> BigRational {
    lambda.alpha_coeff()
}

/// Dimension as a machine integer, when it fits.
pub fn dim_irrep_usize(lambda: &YoungDiagram, n: usize) -> Option<usize> {
    lambda.dim_irrep(n).to_usize()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn yd(s: &str) -> YoungDiagram {
        s.parse().unwrap()
    }

    #[test]
    fn hook_product_421() {
        assert_eq!(yd("4,2,1").hook_product(), BigUint::from(144u32));
    }

    #[test]
    fn hooks_of_row_and_column_are_factorial() {
        for l in 1..8 {
            assert_eq!(YoungDiagram::new(vec![l]).unwrap().hook_product(), factorial(l));
            assert_eq!(YoungDiagram::new(vec![1; l]).unwrap().hook_product(), factorial(l));
        }
    }

    #[test]
    fn dims_match_stars_and_bars_and_exterior_powers() {
        assert_eq!(yd("2").dim_irrep(3), BigUint::from(6u32));
        assert_eq!(yd("1,1").dim_irrep(4), BigUint::from(6u32));
        for n in 1..7 {
            for l in 1..6 {
                let sym = YoungDiagram::new(vec![l]).unwrap().dim_irrep(n);
                assert_eq!(sym, binomial(n + l - 1, l));
                let ext = YoungDiagram::new(vec![1; l]).unwrap().dim_irrep(n);
                assert_eq!(ext, binomial(n, l));
            }
        }
    }

    #[test]
    fn two_by_two_at_four() {
        let l = yd("2,2");
        assert_eq!(l.fill_product(4), BigInt::from(240));
        assert_eq!(l.hook_product(), BigUint::from(12u32));
        assert_eq!(l.dim_irrep(4), BigUint::from(20u32));
    }

    #[test]
    fn too_tall_diagram_has_dimension_zero() {
        assert!(yd("1,1,1").dim_irrep(2).is_zero());
    }

    #[test]
    fn alpha_values() {
        let r = |n: i64, d: i64| BigRational::new(n.into(), d.into());
        assert_eq!(yd("2,2").alpha_coeff(), r(4, 3));
        for l in 1..7usize {
            let rect = YoungDiagram::rectangle(l, 2).unwrap();
            assert_eq!(rect.alpha_coeff(), r(1 << l, l as i64 + 1));
            assert_eq!(YoungDiagram::new(vec![l]).unwrap().alpha_coeff(), r(1, 1));
            assert_eq!(YoungDiagram::new(vec![1; l]).unwrap().alpha_coeff(), r(1, 1));
        }
    }

    #[test]
    fn invalid_diagrams_rejected() {
        assert!(YoungDiagram::new(vec![]).is_err());
        assert!(YoungDiagram::new(vec![1, 2]).is_err());
        assert!(YoungDiagram::new(vec![2, 0]).is_err());
        assert!("2,x".parse::<YoungDiagram>().is_err());
    }
}
