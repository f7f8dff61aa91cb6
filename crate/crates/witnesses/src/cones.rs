//! Two-copy witnesses invariant under the symmetry group of a class.
//!
//! Such witnesses are real combinations of a small commutant basis. Soundness
//! reduces to a finite system of linear inequalities `M a <= 0` on the
//! coefficient vector `a`, so the invariant witnesses form a polyhedral cone
//! whose extreme rays are the columns of `-M^{-1}`.

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use qcorr_classes::gaussian::{restrict_two_copy, MAX_TWO_COPY_MODES};
use qcorr_classes::{ClassSpec, ParticleCarrier, Sector};
use qcorr_fock::{build_fock, subsets_of_size};
use qcorr_linalg::{
    herm_eig, symmetrizer_ops, DMatrix, DenseOperator, Error, LinearMap, PermTerm, Result, SymSpec, C64,
};
use qcorr_young::{binomial_int, rational_to_f64};

/// Largest mode count for which the Gaussian inequality matrix is served.
pub const MAX_CONE_MODES: usize = 1000;

/// Largest number of sites for the distinguishable cone.
pub const MAX_CONE_SITES: usize = 12;

fn int(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

fn binom(n: usize, k: usize) -> BigRational {
    if k > n {
        BigRational::zero()
    } else {
        int(binomial_int(n, k))
    }
}

fn alternating(e: usize) -> BigRational {
    if e % 2 == 0 {
        BigRational::one()
    } else {
        -BigRational::one()
    }
}

/// A point `a` in the coefficient space of the invariant basis.
#[derive(Debug, Clone, PartialEq)]
pub struct ConeElement {
    spec: ClassSpec,
    coefficients: Vec<BigRational>,
}

impl ConeElement {
    pub fn new(spec: ClassSpec, coefficients: Vec<BigRational>) -> Result<Self> {
        let n = cone_dimension(&spec)?;
        if coefficients.len() != n {
            return Err(Error::Dimension(format!("{} coefficients for a {n}-dimensional cone", coefficients.len())));
        }
        Ok(Self { spec, coefficients })
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn coefficients(&self) -> &[BigRational] {
        &self.coefficients
    }

    /// Left-hand sides `M a` of the inequality system.
    pub fn inequality_values(&self) -> Result<Vec<BigRational>> {
        let m = inequality_matrix(&self.spec)?;
        Ok(m.iter()
            .map(|row| row.iter().zip(&self.coefficients).map(|(x, a)| x * a).sum())
            .collect())
    }

    /// True when every inequality `(M a)_n <= 0` holds exactly.
    pub fn is_member(&self) -> Result<bool> {
        Ok(self.inequality_values()?.iter().all(|v| !v.is_positive()))
    }

    /// Number of inequalities holding with equality.
    pub fn tight_count(&self) -> Result<usize> {
        Ok(self.inequality_values()?.iter().filter(|v| v.is_zero()).count())
    }

    /// `a + s b`.
    pub fn add_scaled(&self, other: &ConeElement, s: &BigRational) -> Result<ConeElement> {
        if self.spec != other.spec {
            return Err(Error::Domain("cone elements of different classes".into()));
        }
        let c = self.coefficients.iter().zip(&other.coefficients).map(|(a, b)| a + b * s).collect();
        Ok(ConeElement { spec: self.spec.clone(), coefficients: c })
    }

    /// `sum_k a_k B_k` as a dense two-copy operator.
    pub fn operator(&self) -> Result<DenseOperator> {
        let basis = invariant_basis(&self.spec)?;
        let first = basis[0].to_dense()?;
        let mut m = DMatrix::<C64>::zeros(first.dim(), first.dim());
        for (b, a) in basis.iter().zip(&self.coefficients) {
            if !a.is_zero() {
                m += b.to_dense()?.into_matrix() * C64::new(rational_to_f64(a), 0.0);
            }
        }
        DenseOperator::new(first.factor_dims().to_vec(), m)
    }
}

impl fmt::Display for ConeElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.coefficients.iter().map(|a| a.to_string()).collect();
        write!(f, "{}[{}]", self.spec.tag(), parts.join(", "))
    }
}

fn check_cone_spec(spec: &ClassSpec) -> Result<()> {
    spec.validate()?;
    match spec {
        ClassSpec::Distinguishable { dims } if dims.len() > MAX_CONE_SITES => {
            Err(Error::Size(format!("cone supports at most {MAX_CONE_SITES} sites")))
        }
        ClassSpec::Fermionic { d, l } if 2 * l > *d => {
            Err(Error::Unsupported(format!("fermionic cone needs 2L <= d, got d={d} L={l}")))
        }
        ClassSpec::Gaussian { sector: Sector::Both, .. } => {
            Err(Error::Domain("Gaussian cone is defined per parity sector".into()))
        }
        ClassSpec::Gaussian { d, .. } if *d > MAX_CONE_MODES => {
            Err(Error::Size(format!("Gaussian cone supports d <= {MAX_CONE_MODES}")))
        }
        ClassSpec::Distinguishable { .. } | ClassSpec::Bosonic { .. } | ClassSpec::Fermionic { .. } | ClassSpec::Gaussian { .. } => Ok(()),
        _ => Err(Error::Unsupported(format!("no invariant cone for {spec}"))),
    }
}

/// Number of commutant basis elements.
pub fn cone_dimension(spec: &ClassSpec) -> Result<usize> {
    check_cone_spec(spec)?;
    Ok(match spec {
        ClassSpec::Distinguishable { dims } => 1 << dims.len(),
        ClassSpec::Bosonic { l, .. } | ClassSpec::Fermionic { l, .. } => l + 1,
        ClassSpec::Gaussian { d, .. } => d / 2 + 1,
        _ => unreachable!(),
    })
}

/// Human-readable labels of the basis elements: subsets `{1,3}` of sites,
/// or the integer `k`.
pub fn basis_labels(spec: &ClassSpec) -> Result<Vec<String>> {
    let n = cone_dimension(spec)?;
    Ok(match spec {
        ClassSpec::Distinguishable { dims } => (0..n)
            .map(|mask| {
                let s: Vec<String> = (0..dims.len()).filter(|i| mask >> i & 1 == 1).map(|i| (i + 1).to_string()).collect();
                format!("{{{}}}", s.join(","))
            })
            .collect(),
        _ => (0..n).map(|k| k.to_string()).collect(),
    })
}

/// Exact `B[n][k] = <0, J|C_k|0, J>` for a Fock state `J` with `2n`
/// occupied modes: `(-1)^k sum_m (-2)^m C(d-m, k-m) C(2n, m)`.
pub fn gauss_inequality_matrix(d: usize) -> Vec<Vec<BigRational>> {
    let h = d / 2;
    (0..=h)
        .map(|n| {
            (0..=h)
                .map(|k| {
                    let mut s = BigInt::zero();
                    for m in 0..=k.min(2 * n) {
                        let term = binomial_int(d - m, k - m) * binomial_int(2 * n, m) * BigInt::from(2).pow(m as u32);
                        if m % 2 == 0 {
                            s += term;
                        } else {
                            s -= term;
                        }
                    }
                    if k % 2 == 1 {
                        s = -s;
                    }
                    int(s)
                })
                .collect()
        })
        .collect()
}

/// Exact inequality matrix `M`: an invariant witness with coefficients `a`
/// is sound iff `M a <= 0` componentwise.
pub fn inequality_matrix(spec: &ClassSpec) -> Result<Vec<Vec<BigRational>>> {
    let n = cone_dimension(spec)?;
    Ok(match spec {
        ClassSpec::Distinguishable { .. } => (0..n)
            .map(|y| (0..n).map(|x| if x & !y == 0 { BigRational::one() } else { BigRational::zero() }).collect())
            .collect(),
        ClassSpec::Bosonic { l, .. } => (0..=*l)
            .map(|m| (0..=*l).map(|k| binom(m, k) / binom(*l, k)).collect())
            .collect(),
        ClassSpec::Fermionic { l, .. } => (0..=*l)
            .map(|m| (0..=*l).map(|k| binom(m, k) / (binom(*l, k) * binom(*l, k))).collect())
            .collect(),
        ClassSpec::Gaussian { d, .. } => gauss_inequality_matrix(*d),
        _ => unreachable!(),
    })
}

/// Exact inverse by Gauss-Jordan elimination; errors on a singular matrix.
pub fn rational_inverse(m: &[Vec<BigRational>]) -> Result<Vec<Vec<BigRational>>> {
    let n = m.len();
    if m.iter().any(|r| r.len() != n) {
        return Err(Error::Dimension("matrix is not square".into()));
    }
    let mut a: Vec<Vec<BigRational>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let pivot = (col..n)
            .find(|&r| !a[r][col].is_zero())
            .ok_or_else(|| Error::Numerical(format!("singular matrix at column {col}")))?;
        a.swap(col, pivot);
        let inv = a[col][col].recip();
        for x in a[col].iter_mut() {
            *x *= &inv;
        }
        let prow = a[col].clone();
        for (r, row) in a.iter_mut().enumerate() {
            if r == col || row[col].is_zero() {
                continue;
            }
            let f = row[col].clone();
            for (x, p) in row.iter_mut().zip(&prow) {
                *x -= &f * p;
            }
        }
    }
    Ok(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Generators of the cone: the columns of `-M^{-1}`, one per inequality
/// left strictly negative. Closed forms for the particle classes; exact
/// inversion for the Gaussian class.
pub fn extreme_rays(spec: &ClassSpec) -> Result<Vec<ConeElement>> {
    let n = cone_dimension(spec)?;
    let rays: Vec<Vec<BigRational>> = match spec {
        ClassSpec::Distinguishable { .. } => (0..n)
            .map(|y| {
                (0..n)
                    .map(|x| {
                        if y & !x == 0 {
                            -alternating((x as u32).count_ones() as usize + (y as u32).count_ones() as usize)
                        } else {
                            BigRational::zero()
                        }
                    })
                    .collect()
            })
            .collect(),
        ClassSpec::Bosonic { l, .. } | ClassSpec::Fermionic { l, .. } => {
            let power = if matches!(spec, ClassSpec::Fermionic { .. }) { 2 } else { 1 };
            (0..=*l)
                .map(|m| {
                    (0..=*l)
                        .map(|k| {
                            let w = num_traits::pow(binom(*l, k), power);
                            -alternating(m + k) * w * binom(k, m)
                        })
                        .collect()
                })
                .collect()
        }
        ClassSpec::Gaussian { .. } => {
            let inv = rational_inverse(&inequality_matrix(spec)?)?;
            (0..n).map(|j| (0..n).map(|i| -inv[i][j].clone()).collect()).collect()
        }
        _ => unreachable!(),
    };
    rays.into_iter().map(|a| ConeElement::new(spec.clone(), a)).collect()
}

/// `b_Y = sum_{X subset Y} a_X` over subsets encoded as bitmasks.
pub fn subset_sums(a: &[BigRational]) -> Vec<BigRational> {
    (0..a.len())
        .map(|y| (0..a.len()).filter(|x| x & !y == 0).map(|x| a[x].clone()).sum())
        .collect()
}

/// Inverse of `subset_sums`: `a_X = sum_{Y subset X} (-1)^{|X|+|Y|} b_Y`.
pub fn inclusion_exclusion(b: &[BigRational]) -> Vec<BigRational> {
    (0..b.len())
        .map(|x| {
            (0..b.len())
                .filter(|y| y & !x == 0)
                .map(|y| alternating((x as u32).count_ones() as usize + (y as u32).count_ones() as usize) * &b[y])
                .sum()
        })
        .collect()
}

fn swap_first(particles: usize, k: usize) -> PermTerm {
    let mut perm: Vec<usize> = (0..2 * particles).collect();
    for i in 0..k {
        perm.swap(i, particles + i);
    }
    PermTerm { sign: 1, perm, scale: 1.0 }
}

/// The commutant basis on two copies of the carrier: swaps `S^X` of the
/// sites in `X` (distinguishable), swaps `S^k` of `k` particles compressed
/// to the symmetric or antisymmetric carrier, or the Majorana sums
/// `C_k = sum_{|X|=2k} c_X (x) c_X` restricted to one parity sector.
pub fn invariant_basis(spec: &ClassSpec) -> Result<Vec<LinearMap>> {
    let n = cone_dimension(spec)?;
    let carrier = spec.carrier_dim();
    match spec {
        ClassSpec::Distinguishable { dims } => {
            let l = dims.len();
            let all: Vec<usize> = dims.iter().chain(dims).copied().collect();
            (0..n)
                .map(|mask| {
                    let x: Vec<usize> = (0..l).filter(|i| mask >> i & 1 == 1).collect();
                    let y: Vec<usize> = x.iter().map(|i| i + l).collect();
                    symmetrizer_ops(&all, &SymSpec::BlockSwap(x, y))
                })
                .collect()
        }
        ClassSpec::Bosonic { d, l } | ClassSpec::Fermionic { d, l } => {
            let pc = ParticleCarrier::new(*d, *l, matches!(spec, ClassSpec::Fermionic { .. }));
            (0..=*l)
                .map(|k| {
                    let m = pc.compress(&[swap_first(*l, k)], 2);
                    Ok(LinearMap::dense(DenseOperator::new(vec![carrier, carrier], m)?))
                })
                .collect()
        }
        ClassSpec::Gaussian { d, sector } => {
            if *d > MAX_TWO_COPY_MODES {
                return Err(Error::Size(format!("Gaussian basis operators need d <= {MAX_TWO_COPY_MODES}")));
            }
            let alg = build_fock(*d)?;
            let full = alg.dim() * alg.dim();
            let parity = sector.parity().expect("sector checked");
            (0..n)
                .map(|k| {
                    let mut m = DMatrix::<C64>::zeros(full, full);
                    for set in subsets_of_size(2 * d, 2 * k) {
                        let x = alg.monomial(&set);
                        x.kron(&x).add_to(&mut m, C64::new(1.0, 0.0));
                    }
                    let op = DenseOperator::new(vec![alg.dim(), alg.dim()], m)?;
                    Ok(LinearMap::dense(restrict_two_copy(&op, *d, parity)))
                })
                .collect()
        }
        _ => unreachable!(),
    }
}

/// `tr_1((rho (x) I) V)` for a two-copy operator `V`.
pub fn contract_first(rho: &DenseOperator, v: &DenseOperator) -> Result<DenseOperator> {
    let n = rho.dim();
    if v.dim() != n * n {
        return Err(Error::Dimension(format!("state of dim {n} for a two-copy operator of dim {}", v.dim())));
    }
    let vm = v.matrix();
    let r = rho.matrix();
    let mut out = DMatrix::<C64>::zeros(n, n);
    for i in 0..n {
        for j in 0..n {
            let w = r[(j, i)];
            if w.norm_sqr() == 0.0 {
                continue;
            }
            for a in 0..n {
                for b in 0..n {
                    out[(a, b)] += w * vm[(i * n + a, j * n + b)];
                }
            }
        }
    }
    Ok(DenseOperator::from_matrix(out))
}

/// `max over extreme rays V of lambda_max(tr_1((rho (x) I) V))`: positive
/// exactly when some invariant witness detects `rho` against a second state.
pub fn optimal_detect(rho: &DenseOperator, spec: &ClassSpec) -> Result<f64> {
    if rho.dim() != spec.carrier_dim() {
        return Err(Error::Dimension(format!("state of dim {} for carrier of dim {}", rho.dim(), spec.carrier_dim())));
    }
    let mut best = f64::NEG_INFINITY;
    for ray in extreme_rays(spec)? {
        let v = ray.operator()?;
        best = best.max(herm_eig(&contract_first(rho, &v)?)?.max());
    }
    Ok(best)
}
