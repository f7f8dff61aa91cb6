use num_bigint::BigInt;
use num_rational::BigRational;
use qcorr_fock::{build_fock, sector_indices, subsets_of_size, Parity};
use qcorr_linalg::{herm_eig, symmetrizer_ops, DMatrix, DenseOperator, Error, Result, SymSpec, C64};
use qcorr_young::{binomial, rational_to_f64};

use crate::Sector;

/// Largest mode count for which two-copy Gaussian operators are built.
pub const MAX_TWO_COPY_MODES: usize = 5;

/// Weight `f_{k,d} = (-1)^k C(2d,d) C(d,k) / C(2d,2k)` of the degree-`2k`
/// part of the two-copy Gaussian projector.
pub fn gauss_coefficient(k: usize, d: usize) -> BigRational {
    let num = BigInt::from(binomial(2 * d, d) * binomial(d, k));
    let q = BigRational::new(num, BigInt::from(binomial(2 * d, 2 * k)));
    if k % 2 == 1 {
        -q
    } else {
        q
    }
}

fn check_modes(d: usize, cap: usize) -> Result<()> {
    if d == 0 || d > cap {
        return Err(Error::Size(format!("two-copy Gaussian operators need 1 <= d <= {cap}, got {d}")));
    }
    Ok(())
}

/// Projector `P_0 = 4^{-d} sum_k f_{k,d} sum_{|X|=2k} c_X (x) c_X` onto the
/// span of `psi (x) psi` for pure Gaussian `psi`.
pub fn gaussian_p0(d: usize) -> Result<DenseOperator> {
    check_modes(d, MAX_TWO_COPY_MODES)?;
    let alg = build_fock(d)?;
    let n = alg.dim() * alg.dim();
    let mut m = DMatrix::<C64>::zeros(n, n);
    let norm = 1.0 / n as f64;
    for k in 0..=d {
        let f = rational_to_f64(&gauss_coefficient(k, d)) * norm;
        for set in subsets_of_size(2 * d, 2 * k) {
            let x = alg.monomial(&set);
            x.kron(&x).add_to(&mut m, C64::new(f, 0.0));
        }
    }
    DenseOperator::new(vec![alg.dim(), alg.dim()], m)
}

/// `Lambda = sum_i c_i (x) c_i`.
pub fn lambda_operator(d: usize) -> Result<DenseOperator> {
    check_modes(d, MAX_TWO_COPY_MODES)?;
    let alg = build_fock(d)?;
    let n = alg.dim() * alg.dim();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for j in 1..=2 * d {
        let c = alg.majorana_monomial(j);
        c.kron(c).add_to(&mut m, C64::new(1.0, 0.0));
    }
    DenseOperator::new(vec![alg.dim(), alg.dim()], m)
}

/// Projector onto the kernel of `Lambda`, from a numerical eigensolver.
pub fn gaussian_null_oracle(d: usize) -> Result<DenseOperator> {
    check_modes(d, 4)?;
    let lam = lambda_operator(d)?;
    let e = herm_eig(&lam)?;
    let n = lam.dim();
    let mut p = DMatrix::<C64>::zeros(n, n);
    for (i, &v) in e.values.iter().enumerate() {
        if v.abs() < 1e-8 {
            let col = e.vectors.column(i);
            p += &col * col.adjoint();
        }
    }
    DenseOperator::new(lam.factor_dims().to_vec(), p)
}

/// Restrict a two-copy Fock-space operator to `sector (x) sector`.
pub fn restrict_two_copy(x: &DenseOperator, d: usize, p: Parity) -> DenseOperator {
    let idx = sector_indices(d, p);
    let full = 1usize << d;
    let pairs: Vec<usize> = idx.iter().flat_map(|&i| idx.iter().map(move |&j| i * full + j)).collect();
    let m = x.matrix();
    let r = DMatrix::from_fn(pairs.len(), pairs.len(), |a, b| m[(pairs[a], pairs[b])]);
    DenseOperator::new(vec![idx.len(), idx.len()], r).expect("square")
}

/// `P^sym - P_0` on two copies of the chosen carrier.
pub fn gaussian_class_matrix(d: usize, sector: Sector) -> Result<DenseOperator> {
    let full = 1usize << d;
    let psym = symmetrizer_ops(&[full, full], &SymSpec::Symmetrizer(vec![0, 1]))?.to_dense()?;
    let a = psym.sub(&gaussian_p0(d)?)?;
    Ok(match sector.parity() {
        None => a,
        Some(p) => restrict_two_copy(&a, d, p),
    })
}
