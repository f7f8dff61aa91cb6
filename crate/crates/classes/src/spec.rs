use std::fmt;

use qcorr_linalg::{Error, Result};
use qcorr_young::binomial;
use num_traits::ToPrimitive;

/// Parity sector selection for Gaussian classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sector {
    Plus,
    Minus,
    Both,
}

impl Sector {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "+" | "plus" | "even" => Ok(Sector::Plus),
            "-" | "minus" | "odd" => Ok(Sector::Minus),
            "both" | "all" => Ok(Sector::Both),
            _ => Err(Error::Domain(format!("unknown sector {s:?}"))),
        }
    }

    pub fn parity(self) -> Option<qcorr_fock::Parity> {
        match self {
            Sector::Plus => Some(qcorr_fock::Parity::Plus),
            Sector::Minus => Some(qcorr_fock::Parity::Minus),
            Sector::Both => None,
        }
    }
}

impl fmt::Display for Sector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sector::Plus => "+",
            Sector::Minus => "-",
            Sector::Both => "both",
        })
    }
}

/// A class of non-correlated pure states.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum ClassSpec {
    /// Product states of distinguishable particles with local dimensions.
    Distinguishable { dims: Vec<usize> },
    /// `L` bosons in `d` modes; members are `phi^{(x)L}`.
    Bosonic { d: usize, l: usize },
    /// `L` fermions in `d` modes; members are Slater determinants.
    Fermionic { d: usize, l: usize },
    /// Pure fermionic Gaussian states on `d` modes.
    Gaussian { d: usize, sector: Sector },
    /// Bipartite states of Schmidt rank at most `n`.
    SchmidtBounded { da: usize, db: usize, n: usize },
    /// Three-party states separable across some bipartition, local dim `d`.
    TwoSeparable3 { d: usize },
}

impl ClassSpec {
    pub fn validate(&self) -> Result<()> {
        let bad = |m: String| Err(Error::Domain(m));
        match self {
            ClassSpec::Distinguishable { dims } => {
                if dims.len() < 2 || dims.iter().any(|&d| d < 2) {
                    return bad(format!("distinguishable class needs >= 2 sites of dim >= 2, got {dims:?}"));
                }
            }
            ClassSpec::Bosonic { d, l } => {
                if *d < 2 || *l < 2 {
                    return bad(format!("bosonic class needs d >= 2 and L >= 2, got d={d} L={l}"));
                }
            }
            ClassSpec::Fermionic { d, l } => {
                if *l < 2 || l > d {
                    return bad(format!("fermionic class needs 2 <= L <= d, got d={d} L={l}"));
                }
            }
            ClassSpec::Gaussian { d, .. } => {
                if *d < 1 || *d > qcorr_fock::MAX_MODES {
                    return bad(format!("Gaussian class needs 1 <= d <= {}, got {d}", qcorr_fock::MAX_MODES));
                }
            }
            ClassSpec::SchmidtBounded { da, db, n } => {
                if *n < 1 || *n > (*da).min(*db) {
                    return bad(format!("Schmidt bound needs 1 <= n <= min(dA, dB), got n={n}"));
                }
            }
            ClassSpec::TwoSeparable3 { d } => {
                if *d < 2 {
                    return bad("tripartite class needs d >= 2".into());
                }
            }
        }
        Ok(())
    }

    /// Dimension of the single-copy carrier space.
    pub fn carrier_dim(&self) -> usize {
        match self {
            ClassSpec::Distinguishable { dims } => dims.iter().product(),
            ClassSpec::Bosonic { d, l } => binomial(d + l - 1, *l).to_usize().expect("fits"),
            ClassSpec::Fermionic { d, l } => binomial(*d, *l).to_usize().expect("fits"),
            ClassSpec::Gaussian { d, sector: Sector::Both } => 1 << d,
            ClassSpec::Gaussian { d, .. } => 1 << (d - 1),
            ClassSpec::SchmidtBounded { da, db, .. } => da * db,
            ClassSpec::TwoSeparable3 { d } => d * d * d,
        }
    }

    /// Tensor-factor dimensions of one copy of the carrier.
    pub fn carrier_factor_dims(&self) -> Vec<usize> {
        match self {
            ClassSpec::Distinguishable { dims } => dims.clone(),
            ClassSpec::SchmidtBounded { da, db, .. } => vec![*da, *db],
            ClassSpec::TwoSeparable3 { d } => vec![*d; 3],
            _ => vec![self.carrier_dim()],
        }
    }

    /// Number of copies of the natural characterization.
    pub fn natural_copies(&self) -> usize {
        match self {
            ClassSpec::SchmidtBounded { n, .. } => n + 1,
            ClassSpec::TwoSeparable3 { .. } => 6,
            _ => 2,
        }
    }

    /// Short machine name.
    pub fn tag(&self) -> &'static str {
        match self {
            ClassSpec::Distinguishable { .. } => "dist",
            ClassSpec::Bosonic { .. } => "bos",
            ClassSpec::Fermionic { .. } => "ferm",
            ClassSpec::Gaussian { .. } => "gauss",
            ClassSpec::SchmidtBounded { .. } => "schmidt",
            ClassSpec::TwoSeparable3 { .. } => "gme",
        }
    }
}

impl fmt::Display for ClassSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ClassSpec::Distinguishable { dims } => {
                let s: Vec<String> = dims.iter().map(|d| d.to_string()).collect();
                write!(f, "dist {}", s.join("x"))
            }
            ClassSpec::Bosonic { d, l } => write!(f, "bos d={d} L={l}"),
            ClassSpec::Fermionic { d, l } => write!(f, "ferm d={d} L={l}"),
            ClassSpec::Gaussian { d, sector } => write!(f, "gauss d={d} sector={sector}"),
            ClassSpec::SchmidtBounded { da, db, n } => write!(f, "schmidt {da}x{db} n={n}"),
            ClassSpec::TwoSeparable3 { d } => write!(f, "gme d={d}"),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn carrier_dims() {
        assert_eq!(ClassSpec::Distinguishable { dims: vec![2, 3] }.carrier_dim(), 6);
        assert_eq!(ClassSpec::Bosonic { d: 3, l: 2 }.carrier_dim(), 6);
        assert_eq!(ClassSpec::Fermionic { d: 5, l: 2 }.carrier_dim(), 10);
        assert_eq!(ClassSpec::Gaussian { d: 4, sector: Sector::Plus }.carrier_dim(), 8);
        assert_eq!(ClassSpec::Gaussian { d: 4, sector: Sector::Both }.carrier_dim(), 16);
        assert_eq!(ClassSpec::TwoSeparable3 { d: 2 }.carrier_dim(), 8);
    }

    #[test]
    fn validation() {
        assert!(ClassSpec::Fermionic { d: 3, l: 4 }.validate().is_err());
        assert!(ClassSpec::SchmidtBounded { da: 2, db: 3, n: 3 }.validate().is_err());
        assert!(ClassSpec::SchmidtBounded { da: 3, db: 3, n: 2 }.validate().is_ok());
        assert!(ClassSpec::Distinguishable { dims: vec![2] }.validate().is_err());
        assert!(Sector::parse("x").is_err());
    }
}
