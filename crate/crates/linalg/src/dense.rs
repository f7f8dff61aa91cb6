use nalgebra::{DMatrix, DVector};

use crate::{dim_product, Error, Result, C64, DENSE_THRESHOLD, FLAG_TOL};

/// Square complex matrix with declared tensor-factor dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseOperator {
    factor_dims: Vec<usize>,
    mat: DMatrix<C64>,
}

impl DenseOperator {
    pub fn new(factor_dims: Vec<usize>, mat: DMatrix<C64>) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        if mat.nrows() != dim || mat.ncols() != dim {
            return Err(Error::Dimension(format!(
                "matrix is {}x{}, factor dims {:?} require {dim}",
                mat.nrows(),
                mat.ncols(),
                factor_dims
            )));
        }
        Ok(Self { factor_dims, mat })
    }

    /// Single-factor operator.
    pub fn from_matrix(mat: DMatrix<C64>) -> Self {
        let n = mat.nrows();
        assert_eq!(n, mat.ncols(), "operator must be square");
        Self { factor_dims: vec![n], mat }
    }

    /// Build from row-major entries.
    pub fn from_entries(factor_dims: Vec<usize>, entries: &[C64]) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        if entries.len() != dim * dim {
            return Err(Error::Dimension(format!(
                "expected {} entries, got {}",
                dim * dim,
                entries.len()
            )));
        }
        Self::new(factor_dims, DMatrix::from_row_slice(dim, dim, entries))
    }

    pub fn identity(factor_dims: Vec<usize>) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        Self::new(factor_dims, DMatrix::identity(dim, dim))
    }

    pub fn zeros(factor_dims: Vec<usize>) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        Self::new(factor_dims, DMatrix::zeros(dim, dim))
    }

    /// Rank-one projector |v><v|.
    pub fn projector(v: &StateVector) -> Self {
        let a = v.amplitudes();
        Self { factor_dims: v.factor_dims().to_vec(), mat: a * a.adjoint() }
    }

    /// Diagonal operator on a single factor.
    pub fn diagonal(values: &[f64]) -> Self {
        let d = DVector::from_iterator(values.len(), values.iter().map(|&x| C64::new(x, 0.0)));
        Self::from_matrix(DMatrix::from_diagonal(&d))
    }

    pub fn dim(&self) -> usize {
        self.mat.nrows()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn matrix(&self) -> &DMatrix<C64> {
        &self.mat
    }

    pub fn into_matrix(self) -> DMatrix<C64> {
        self.mat
    }

    /// Same matrix with a different factorization of the same dimension.
    pub fn with_factor_dims(mut self, factor_dims: Vec<usize>) -> Result<Self> {
        if dim_product(&factor_dims)? != self.dim() {
            return Err(Error::Dimension("factor dims do not multiply to dim".into()));
        }
        self.factor_dims = factor_dims;
        Ok(self)
    }

    /// Row-major entries.
    pub fn entries(&self) -> Vec<C64> {
        let n = self.dim();
        let mut out = Vec::with_capacity(n * n);
        for i in 0..n {
            for j in 0..n {
                out.push(self.mat[(i, j)]);
            }
        }
        out
    }

    pub fn get(&self, i: usize, j: usize) -> C64 {
        self.mat[(i, j)]
    }

    pub fn trace(&self) -> C64 {
        self.mat.trace()
    }

    pub fn frobenius(&self) -> f64 {
        self.mat.norm()
    }

    pub fn adjoint(&self) -> Self {
        Self { factor_dims: self.factor_dims.clone(), mat: self.mat.adjoint() }
    }

    /// Largest elementwise deviation from Hermiticity.
    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim();
        let mut worst: f64 = 0.0;
        for i in 0..n {
            for j in i..n {
                worst = worst.max((self.mat[(i, j)] - self.mat[(j, i)].conj()).norm());
            }
        }
        worst
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermiticity_defect() <= FLAG_TOL * self.mat.camax().max(1.0)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { factor_dims: self.factor_dims.clone(), mat: &self.mat * &other.mat })
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { factor_dims: self.factor_dims.clone(), mat: &self.mat + &other.mat })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_same(other)?;
        Ok(Self { factor_dims: self.factor_dims.clone(), mat: &self.mat - &other.mat })
    }

    pub fn scale(&self, s: f64) -> Self {
        Self { factor_dims: self.factor_dims.clone(), mat: &self.mat * C64::new(s, 0.0) }
    }

    pub fn scale_c(&self, s: C64) -> Self {
        Self { factor_dims: self.factor_dims.clone(), mat: &self.mat * s }
    }

    /// Frobenius distance, requiring equal dimension only.
    pub fn distance(&self, other: &Self) -> f64 {
        (&self.mat - &other.mat).norm()
    }

    /// <v|A|v>.
    pub fn expectation(&self, v: &StateVector) -> Result<C64> {
        if v.dim() != self.dim() {
            return Err(Error::Dimension("vector and operator dims differ".into()));
        }
        let a = v.amplitudes();
        Ok(a.dotc(&(&self.mat * a)))
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.mat * v
    }

    /// tr(self * other) without forming the product.
    pub fn trace_product(&self, other: &Self) -> C64 {
        let n = self.dim();
        let mut acc = C64::new(0.0, 0.0);
        for i in 0..n {
            for j in 0..n {
                acc += self.mat[(i, j)] * other.mat[(j, i)];
            }
        }
        acc
    }

    pub fn commutator_norm(&self, other: &Self) -> f64 {
        (&self.mat * &other.mat - &other.mat * &self.mat).norm()
    }

    fn check_same(&self, other: &Self) -> Result<()> {
        if self.dim() != other.dim() {
            return Err(Error::Dimension(format!("dims {} and {}", self.dim(), other.dim())));
        }
        Ok(())
    }
}

/// Pure state amplitudes with declared tensor-factor dimensions.
#[derive(Debug, Clone, PartialEq)]
pub struct StateVector {
    factor_dims: Vec<usize>,
    amps: DVector<C64>,
}

impl StateVector {
    pub fn new(factor_dims: Vec<usize>, amps: DVector<C64>) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        if amps.len() != dim {
            return Err(Error::Dimension(format!(
                "{} amplitudes for dimension {dim}",
                amps.len()
            )));
        }
        Ok(Self { factor_dims, amps })
    }

    pub fn from_vec(factor_dims: Vec<usize>, amps: Vec<C64>) -> Result<Self> {
        let n = amps.len();
        Self::new(factor_dims, DVector::from_vec(amps)).map_err(|e| match e {
            Error::Dimension(_) => Error::Dimension(format!("{n} amplitudes do not fit")),
            other => other,
        })
    }

    pub fn basis(factor_dims: Vec<usize>, index: usize) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        if index >= dim {
            return Err(Error::Domain(format!("basis index {index} out of range")));
        }
        let mut amps = DVector::zeros(dim);
        amps[index] = C64::new(1.0, 0.0);
        Self::new(factor_dims, amps)
    }

    pub fn dim(&self) -> usize {
        self.amps.len()
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn amplitudes(&self) -> &DVector<C64> {
        &self.amps
    }

    pub fn into_amplitudes(self) -> DVector<C64> {
        self.amps
    }

    pub fn norm(&self) -> f64 {
        self.amps.norm()
    }

    pub fn is_normalized(&self) -> bool {
        (self.norm() - 1.0).abs() <= FLAG_TOL * 10.0
    }

    pub fn normalized(mut self) -> Result<Self> {
        let n = self.norm();
        if n == 0.0 {
            return Err(Error::Domain("cannot normalize the zero vector".into()));
        }
        self.amps /= C64::new(n, 0.0);
        Ok(self)
    }

    /// <self|other>.
    pub fn inner(&self, other: &Self) -> C64 {
        self.amps.dotc(&other.amps)
    }

    pub fn tensor(&self, other: &Self) -> Self {
        let mut dims = self.factor_dims.clone();
        dims.extend_from_slice(&other.factor_dims);
        let amps = self.amps.kronecker(&other.amps);
        Self { factor_dims: dims, amps }
    }

    pub fn tensor_all(parts: &[StateVector]) -> Result<Self> {
        let mut it = parts.iter();
        let first = it
            .next()
            .ok_or_else(|| Error::Domain("empty tensor product".into()))?
            .clone();
        Ok(it.fold(first, |acc, v| acc.tensor(v)))
    }

    pub fn projector(&self) -> DenseOperator {
        DenseOperator::projector(self)
    }
}

/// Kronecker product with concatenated factor dimensions.
pub fn kron(a: &DenseOperator, b: &DenseOperator) -> Result<DenseOperator> {
    kron_limited(a, b, DENSE_THRESHOLD)
}

pub fn kron_limited(a: &DenseOperator, b: &DenseOperator, limit: usize) -> Result<DenseOperator> {
    let dim = a
        .dim()
        .checked_mul(b.dim())
        .ok_or_else(|| Error::Size("kron dimension overflow".into()))?;
    if dim > limit {
        return Err(Error::Size(format!("kron dimension {dim} exceeds limit {limit}")));
    }
    let mut dims = a.factor_dims().to_vec();
    dims.extend_from_slice(b.factor_dims());
    DenseOperator::new(dims, a.matrix().kronecker(b.matrix()))
}

pub fn kron_all(parts: &[DenseOperator]) -> Result<DenseOperator> {
    let mut it = parts.iter();
    let first = it
        .next()
        .ok_or_else(|| Error::Domain("empty tensor product".into()))?
        .clone();
    it.try_fold(first, |acc, x| kron(&acc, x))
}

fn digits_of(mut idx: usize, dims: &[usize], out: &mut [usize]) {
    for k in (0..dims.len()).rev() {
        out[k] = idx % dims[k];
        idx /= dims[k];
    }
}

/// Reduced operator on the kept factors (kept in increasing factor order).
pub fn partial_trace(rho: &DenseOperator, keep: &[usize]) -> Result<DenseOperator> {
    let dims = rho.factor_dims();
    let nf = dims.len();
    if keep.is_empty() {
        return Err(Error::Domain("keep set must be nonempty".into()));
    }
    let mut kept = vec![false; nf];
    for &k in keep {
        if k >= nf {
            return Err(Error::Domain(format!("factor index {k} out of range ({nf} factors)")));
        }
        kept[k] = true;
    }
    let keep_dims: Vec<usize> = (0..nf).filter(|&i| kept[i]).map(|i| dims[i]).collect();
    let trace_dims: Vec<usize> = (0..nf).filter(|&i| !kept[i]).map(|i| dims[i]).collect();
    let dk: usize = keep_dims.iter().product();
    let dt: usize = trace_dims.iter().product();

    // Group full indices by their traced-out part.
    let mut groups: Vec<Vec<(usize, usize)>> = vec![Vec::with_capacity(dk); dt];
    let mut digits = vec![0usize; nf];
    for full in 0..rho.dim() {
        digits_of(full, dims, &mut digits);
        let (mut ki, mut ti) = (0usize, 0usize);
        for f in 0..nf {
            if kept[f] {
                ki = ki * dims[f] + digits[f];
            } else {
                ti = ti * dims[f] + digits[f];
            }
        }
        groups[ti].push((full, ki));
    }
    let m = rho.matrix();
    let mut out = DMatrix::<C64>::zeros(dk, dk);
    for g in &groups {
        for &(r, kr) in g {
            for &(c, kc) in g {
                out[(kr, kc)] += m[(r, c)];
            }
        }
    }
    DenseOperator::new(keep_dims, out)
}

/// Transpose of one tensor factor in the computational basis.
pub fn partial_transpose(rho: &DenseOperator, factor: usize) -> Result<DenseOperator> {
    let dims = rho.factor_dims().to_vec();
    if factor >= dims.len() {
        return Err(Error::Domain(format!("factor {factor} out of range")));
    }
    let stride: usize = dims[factor + 1..].iter().product();
    let d = dims[factor];
    let n = rho.dim();
    let m = rho.matrix();
    let out = DMatrix::from_fn(n, n, |r, c| {
        let dr = (r / stride) % d;
        let dc = (c / stride) % d;
        let r2 = r - dr * stride + dc * stride;
        let c2 = c - dc * stride + dr * stride;
        m[(r2, c2)]
    });
    DenseOperator::new(dims, out)
}

/// Eigen-decomposition of a Hermitian operator.
#[derive(Debug, Clone)]
pub struct Eigen {
    /// Non-increasing eigenvalues.
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, matching `values`.
    pub vectors: DMatrix<C64>,
}

impl Eigen {
    pub fn vector(&self, i: usize) -> DVector<C64> {
        self.vectors.column(i).into_owned()
    }

    /// Number of eigenvalues above a cutoff.
    pub fn count_above(&self, cutoff: f64) -> usize {
        self.values.iter().filter(|&&x| x > cutoff).count()
    }

    pub fn max(&self) -> f64 {
        self.values[0]
    }

    pub fn min(&self) -> f64 {
        *self.values.last().expect("nonempty spectrum")
    }
}

/// Hermitian eigen-decomposition with eigenvalues sorted non-increasing.
///
/// Each eigenvector is rotated so that its first entry of magnitude above
/// 1e-10 is real and positive, which makes the output reproducible.
pub fn herm_eig(a: &DenseOperator) -> Result<Eigen> {
    let scale = a.matrix().camax().max(1.0);
    let defect = a.hermiticity_defect();
    if defect > 1e-9 * scale {
        return Err(Error::Contract(format!("operator not Hermitian (defect {defect:.3e})")));
    }
    let m = a.matrix();
    let sym = (m + m.adjoint()) * C64::new(0.5, 0.0);
    let eig = sym.symmetric_eigen();
    let n = a.dim();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[j].total_cmp(&eig.eigenvalues[i]));
    let mut vectors = DMatrix::<C64>::zeros(n, n);
    let mut values = Vec::with_capacity(n);
    for (col, &src) in order.iter().enumerate() {
        values.push(eig.eigenvalues[src]);
        let mut v = eig.eigenvectors.column(src).into_owned();
        if let Some(lead) = v.iter().find(|z| z.norm() > 1e-10).copied() {
            v *= lead.conj() / lead.norm();
        }
        vectors.set_column(col, &v);
    }
    Ok(Eigen { values, vectors })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::c64;

    fn sigma_y() -> DenseOperator {
        DenseOperator::from_entries(
            vec![2],
            &[c64(0.0, 0.0), c64(0.0, -1.0), c64(0.0, 1.0), c64(0.0, 0.0)],
        )
        .unwrap()
    }

    #[test]
    fn kron_identity() {
        let i2 = DenseOperator::identity(vec![2]).unwrap();
        let k = kron(&i2, &i2).unwrap();
        assert_eq!(k.factor_dims(), &[2, 2]);
        assert!(k.distance(&DenseOperator::identity(vec![4]).unwrap()) == 0.0);
    }

    #[test]
    fn kron_dims_and_sigma_y_entry() {
        let a = DenseOperator::identity(vec![3]).unwrap();
        let b = DenseOperator::identity(vec![5]).unwrap();
        let k = kron(&a, &b).unwrap();
        assert_eq!((k.dim(), k.factor_dims().to_vec()), (15, vec![3, 5]));
        let yy = kron(&sigma_y(), &sigma_y()).unwrap();
        assert_eq!(yy.get(0, 3), c64(-1.0, 0.0));
        assert_eq!(yy.get(3, 0), c64(-1.0, 0.0));
        assert_eq!(yy.get(1, 2), c64(1.0, 0.0));
    }

    #[test]
    fn kron_size_limit() {
        let a = DenseOperator::identity(vec![100]).unwrap();
        assert!(matches!(kron(&a, &a), Err(Error::Size(_))));
    }

    #[test]
    fn partial_trace_of_bell_is_maximally_mixed() {
        let s = 1.0 / 2f64.sqrt();
        let bell = StateVector::from_vec(
            vec![2, 2],
            vec![c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)],
        )
        .unwrap();
        let red = partial_trace(&bell.projector(), &[1]).unwrap();
        let half = DenseOperator::identity(vec![2]).unwrap().scale(0.5);
        assert!(red.distance(&half) < 1e-15);
    }

    #[test]
    fn partial_trace_out_of_range() {
        let r = DenseOperator::identity(vec![2, 2]).unwrap();
        assert!(partial_trace(&r, &[2]).is_err());
        assert!(partial_trace(&r, &[]).is_err());
    }

    #[test]
    fn partial_transpose_bell() {
        let s = 1.0 / 2f64.sqrt();
        let bell = StateVector::from_vec(
            vec![2, 2],
            vec![c64(s, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(s, 0.0)],
        )
        .unwrap();
        let pt = partial_transpose(&bell.projector(), 1).unwrap();
        let e = herm_eig(&pt).unwrap();
        assert!((e.min() + 0.5).abs() < 1e-12);
        // transposing twice is the identity
        let back = partial_transpose(&pt, 1).unwrap();
        assert!(back.distance(&bell.projector()) < 1e-15);
    }

    #[test]
    fn eig_of_sigma_z() {
        let z = DenseOperator::diagonal(&[-1.0, 1.0]);
        let e = herm_eig(&z).unwrap();
        assert_eq!(e.values, vec![1.0, -1.0]);
        assert!((e.vectors[(1, 0)] - c64(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn eig_rejects_non_hermitian() {
        let a = DenseOperator::from_entries(
            vec![2],
            &[c64(0.0, 0.0), c64(1.0, 0.0), c64(0.0, 0.0), c64(0.0, 0.0)],
        )
        .unwrap();
        assert!(matches!(herm_eig(&a), Err(Error::Contract(_))));
    }
}
