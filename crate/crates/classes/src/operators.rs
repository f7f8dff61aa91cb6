use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use qcorr_linalg::{
    herm_eig, sym_basis, symmetrizer_ops, DMatrix, DVector, DenseOperator, Error, LinearMap, MapKind,
    PermTerm, Result, SymSpec, C64, DENSE_THRESHOLD,
};
use qcorr_young::{binomial, YoungDiagram};

use crate::carrier::ParticleCarrier;
use crate::gaussian::gaussian_class_matrix;
use crate::{gme, schmidt, ClassSpec, Sector};

/// The operator `A` on `k` copies of a class carrier whose expectation on
/// `psi^{(x)k}` vanishes exactly on class members.
#[derive(Debug, Clone)]
pub struct ClassOperator {
    spec: ClassSpec,
    k: usize,
    a: LinearMap,
    trace: BigRational,
    rank: Option<usize>,
}

impl ClassOperator {
    pub(crate) fn from_parts(spec: ClassSpec, k: usize, a: LinearMap, trace: BigRational) -> Self {
        Self { spec, k, a, trace, rank: None }
    }

    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn copies(&self) -> usize {
        self.k
    }

    pub fn map(&self) -> &LinearMap {
        &self.a
    }

    pub fn carrier_dim(&self) -> usize {
        self.spec.carrier_dim()
    }

    /// Exact `tr A`.
    pub fn trace(&self) -> &BigRational {
        &self.trace
    }

    pub fn trace_f64(&self) -> f64 {
        qcorr_young::rational_to_f64(&self.trace)
    }

    /// `dim Sym^k(H)` for the carrier `H`.
    pub fn sym_dim(&self) -> BigInt {
        BigInt::from(binomial(self.carrier_dim() + self.k - 1, self.k))
    }

    /// `tr A / dim Sym^k(H)`, exactly.
    pub fn normalized_trace(&self) -> BigRational {
        &self.trace / BigRational::from_integer(self.sym_dim())
    }

    /// Rank if it has been computed.
    pub fn rank(&self) -> Option<usize> {
        self.rank
    }

    /// Count eigenvalues above 1/2 of `A` compressed to `Sym^k(H)`.
    pub fn compute_rank(&mut self) -> Result<usize> {
        if let Some(r) = self.rank {
            return Ok(r);
        }
        let dense = self.a.to_dense()?;
        let w = sym_basis(self.carrier_dim(), self.k);
        let compressed = DenseOperator::from_matrix(w.adjoint() * dense.matrix() * &w);
        let r = herm_eig(&compressed)?.count_above(0.5);
        self.rank = Some(r);
        Ok(r)
    }

    /// `P^{sym,k}` on `k` copies of the carrier.
    pub fn sym_projector(&self) -> Result<LinearMap> {
        let block = self.spec.carrier_factor_dims();
        let dims: Vec<usize> = block.iter().copied().cycle().take(block.len() * self.k).collect();
        symmetrizer_ops(&dims, &SymSpec::CopySymmetrizer { copies: self.k, block: block.len() })
    }

    /// `P^{sym,k} - A`: the projector whose range is spanned by `psi^{(x)k}`
    /// for class members.
    pub fn coherent_projector(&self) -> Result<LinearMap> {
        LinearMap::linear_combination(vec![(1.0, self.sym_projector()?), (-1.0, self.a.clone())])
    }

    pub fn dense(&self) -> Result<DenseOperator> {
        self.a.to_dense()
    }

    /// `<psi^{(x)k}|A|psi^{(x)k}>` for a carrier vector `psi`.
    pub fn expectation_power(&self, psi: &DVector<C64>) -> Result<f64> {
        if psi.len() != self.carrier_dim() {
            return Err(Error::Dimension(format!(
                "state of dim {} for carrier of dim {}",
                psi.len(),
                self.carrier_dim()
            )));
        }
        if let ClassSpec::TwoSeparable3 { d } = self.spec {
            return gme::product_power_value(psi, d);
        }
        let big = tensor_power(psi, self.k);
        Ok(self.a.expectation(&big)?.re)
    }

    /// Largest violation of `0 <= A <= P^{sym,k}`: returns
    /// `(min eigenvalue deficit, max eigenvalue excess, |A (I - P^sym)|_F)`.
    pub fn bounds_defect(&self) -> Result<(f64, f64, f64)> {
        let a = self.a.to_dense()?;
        let e = herm_eig(&a)?;
        let psym = self.sym_projector()?.to_dense()?;
        let id = DenseOperator::identity(a.factor_dims().to_vec())?;
        let leak = a.mul(&id.sub(&psym)?)?.frobenius();
        Ok(((-e.min()).max(0.0), (e.max() - 1.0).max(0.0), leak))
    }
}

/// `v^{(x)k}`.
pub fn tensor_power(v: &DVector<C64>, k: usize) -> DVector<C64> {
    let mut acc = DVector::from_element(1, C64::new(1.0, 0.0));
    for _ in 0..k {
        acc = acc.kronecker(v);
    }
    acc
}

/// Merge real combinations of permutation terms into one average.
pub(crate) fn merged_spa(dims: Vec<usize>, parts: &[(f64, &[PermTerm])]) -> Result<LinearMap> {
    let mut acc: BTreeMap<Vec<usize>, f64> = BTreeMap::new();
    for (c, terms) in parts {
        for t in *terms {
            *acc.entry(t.perm.clone()).or_insert(0.0) += c * t.coefficient();
        }
    }
    let terms: Vec<PermTerm> = acc
        .into_iter()
        .filter(|(_, c)| c.abs() > 1e-15)
        .map(|(perm, c)| PermTerm { sign: if c < 0.0 { -1 } else { 1 }, perm, scale: c.abs() })
        .collect();
    LinearMap::new(dims.clone(), MapKind::SignedPermutationAverage { factor_dims: dims, terms })
}

pub(crate) fn spa_terms(map: &LinearMap) -> &[PermTerm] {
    match map.kind() {
        MapKind::SignedPermutationAverage { terms, .. } => terms,
        _ => unreachable!("permutation average expected"),
    }
}

/// Product of symmetrizers, one per group of slots.
pub(crate) fn product_of_symmetrizers(dims: &[usize], groups: &[Vec<usize>], signed: bool) -> Result<LinearMap> {
    let mut acc = LinearMap::identity(dims.to_vec())?;
    for g in groups {
        let spec = if signed { SymSpec::Antisymmetrizer(g.clone()) } else { SymSpec::Symmetrizer(g.clone()) };
        acc = acc.spa_product(&symmetrizer_ops(dims, &spec)?)?;
    }
    Ok(acc)
}

fn int(x: num_bigint::BigUint) -> BigRational {
    BigRational::from_integer(BigInt::from(x))
}

fn sym_dim(n: usize, k: usize) -> BigRational {
    int(binomial(n + k - 1, k))
}

fn dense_sym_projector(n: usize, k: usize) -> Result<DMatrix<C64>> {
    Ok(symmetrizer_ops(&vec![n; k], &SymSpec::CopySymmetrizer { copies: k, block: 1 })?
        .to_dense()?
        .into_matrix())
}

fn check_dense(n: usize, k: usize) -> Result<()> {
    match n.checked_pow(k as u32) {
        Some(t) if t <= DENSE_THRESHOLD => Ok(()),
        _ => Err(Error::Size(format!("{k} copies of a {n}-dimensional carrier exceed the dense threshold"))),
    }
}

fn distinguishable(dims: &[usize], k: usize) -> Result<ClassOperator> {
    let l = dims.len();
    let all: Vec<usize> = dims.iter().copied().cycle().take(l * k).collect();
    let psym = symmetrizer_ops(&all, &SymSpec::CopySymmetrizer { copies: k, block: l })?;
    let groups: Vec<Vec<usize>> = (0..l).map(|i| (0..k).map(|c| c * l + i).collect()).collect();
    let p = product_of_symmetrizers(&all, &groups, false)?;
    let a = merged_spa(all, &[(1.0, spa_terms(&psym)), (-1.0, spa_terms(&p))])?;
    let n: usize = dims.iter().product();
    let mut coherent = BigRational::one();
    for &d in dims {
        coherent *= sym_dim(d, k);
    }
    let spec = ClassSpec::Distinguishable { dims: dims.to_vec() };
    Ok(ClassOperator::from_parts(spec, k, a, sym_dim(n, k) - coherent))
}

/// Gram factor `G[tuple, multiset]` with `P^{k lambda_0} = G G^dag` on the
/// k-fold bosonic carrier.
fn bosonic_gram(carrier: &ParticleCarrier, k: usize) -> DMatrix<C64> {
    use itertools::Itertools;
    let d = carrier.single_dim();
    let l = carrier.particles();
    let arrangements = |counts: &[usize]| -> f64 {
        let total: usize = counts.iter().sum();
        let mut x: f64 = (1..=total).map(|v| v as f64).product();
        for &c in counts {
            x /= (1..=c).map(|v| v as f64).product::<f64>();
        }
        x
    };
    let counts_of = |labels: &[usize]| {
        let mut c = vec![0usize; d];
        for &x in labels {
            c[x] += 1;
        }
        c
    };
    let big: Vec<Vec<usize>> = (0..d).combinations_with_replacement(k * l).map(|m| counts_of(&m)).collect();
    let index: std::collections::HashMap<Vec<usize>, usize> =
        big.iter().enumerate().map(|(i, c)| (c.clone(), i)).collect();
    let n = carrier.dim();
    let per_copy: Vec<(Vec<usize>, f64)> = carrier
        .labels()
        .iter()
        .map(|s| {
            let c = counts_of(s);
            let a = arrangements(&c);
            (c, a)
        })
        .collect();
    let total = n.pow(k as u32);
    let mut g = DMatrix::zeros(total, big.len());
    for row in 0..total {
        let mut x = row;
        let mut counts = vec![0usize; d];
        let mut prod = 1.0;
        for _ in 0..k {
            let (c, a) = &per_copy[x % n];
            x /= n;
            for (t, v) in counts.iter_mut().zip(c) {
                *t += v;
            }
            prod *= a;
        }
        let col = index[&counts];
        g[(row, col)] = C64::new((prod / arrangements(&counts)).sqrt(), 0.0);
    }
    g
}

fn bosonic(d: usize, l: usize, k: usize) -> Result<ClassOperator> {
    let carrier = ParticleCarrier::new(d, l, false);
    let n = carrier.dim();
    check_dense(n, k)?;
    let g = bosonic_gram(&carrier, k);
    let a = dense_sym_projector(n, k)? - &g * g.adjoint();
    let op = DenseOperator::new(vec![n; k], a)?;
    let trace = sym_dim(n, k) - sym_dim(d, k * l);
    Ok(ClassOperator::from_parts(ClassSpec::Bosonic { d, l }, k, LinearMap::dense(op), trace))
}

/// `alpha P_row` compressed to `k` copies of the antisymmetric carrier.
fn fermionic_projector(carrier: &ParticleCarrier, k: usize) -> Result<DMatrix<C64>> {
    let l = carrier.particles();
    let d = carrier.single_dim();
    let dims = vec![d; k * l];
    let rows: Vec<Vec<usize>> = (0..l).map(|i| (0..k).map(|c| c * l + i).collect()).collect();
    let prow = product_of_symmetrizers(&dims, &rows, false)?;
    let lambda = YoungDiagram::rectangle(l, k).map_err(|e| Error::Domain(e.to_string()))?;
    let alpha = qcorr_young::rational_to_f64(&lambda.alpha_coeff());
    Ok(carrier.compress(spa_terms(&prow), k) * C64::new(alpha, 0.0))
}

fn fermionic(d: usize, l: usize, k: usize) -> Result<ClassOperator> {
    let carrier = ParticleCarrier::new(d, l, true);
    let n = carrier.dim();
    check_dense(n, k)?;
    let p = fermionic_projector(&carrier, k)?;
    let a = dense_sym_projector(n, k)? - p;
    let op = DenseOperator::new(vec![n; k], a)?;
    let lambda = YoungDiagram::rectangle(l, k).map_err(|e| Error::Domain(e.to_string()))?;
    let trace = sym_dim(n, k) - int(lambda.dim_irrep(d));
    Ok(ClassOperator::from_parts(ClassSpec::Fermionic { d, l }, k, LinearMap::dense(op), trace))
}

fn gaussian(d: usize, sector: Sector) -> Result<ClassOperator> {
    let a = gaussian_class_matrix(d, sector)?;
    let central = int(binomial(2 * d, d));
    let n = ClassSpec::Gaussian { d, sector }.carrier_dim();
    let trace = match sector {
        Sector::Both => sym_dim(n, 2) - central,
        _ => sym_dim(n, 2) - central / BigRational::from_integer(2.into()),
    };
    Ok(ClassOperator::from_parts(ClassSpec::Gaussian { d, sector }, 2, LinearMap::dense(a), trace))
}

/// Class operator on the natural number of copies (2 for particle and
/// Gaussian classes, `n+1` for Schmidt rank `n`, 6 for the tripartite class).
pub fn class_operator(spec: &ClassSpec) -> Result<ClassOperator> {
    class_operator_k(spec, spec.natural_copies())
}

/// Two-copy class operator.
pub fn class_operator2(spec: &ClassSpec) -> Result<ClassOperator> {
    if spec.natural_copies() != 2 {
        return Err(Error::Unsupported(format!("{spec} is characterized on {} copies", spec.natural_copies())));
    }
    class_operator_k(spec, 2)
}

/// Class operator on `k` copies.
pub fn class_operator_k(spec: &ClassSpec, k: usize) -> Result<ClassOperator> {
    spec.validate()?;
    if k < 2 {
        return Err(Error::Domain(format!("need at least two copies, got {k}")));
    }
    match spec {
        ClassSpec::Distinguishable { dims } => distinguishable(dims, k),
        ClassSpec::Bosonic { d, l } => bosonic(*d, *l, k),
        ClassSpec::Fermionic { d, l } => fermionic(*d, *l, k),
        ClassSpec::Gaussian { d, sector } if k == 2 => gaussian(*d, *sector),
        ClassSpec::SchmidtBounded { da, db, n } if k == n + 1 => schmidt::schmidt_operator(*n, *da, *db),
        ClassSpec::TwoSeparable3 { d } if k == 6 => gme::gme_operator(*d),
        _ => Err(Error::Unsupported(format!("{spec} has no {k}-copy characterization"))),
    }
}

/// Exact rank of the coherent projector `P^{k lambda_0}` predicted by
/// representation theory, for the particle classes.
pub fn coherent_rank(spec: &ClassSpec, k: usize) -> Result<usize> {
    let big = match spec {
        ClassSpec::Distinguishable { dims } => dims.iter().map(|&d| binomial(d + k - 1, k)).product(),
        ClassSpec::Bosonic { d, l } => binomial(d + k * l - 1, k * l),
        ClassSpec::Fermionic { d, l } => YoungDiagram::rectangle(*l, k)
            .map_err(|e| Error::Domain(e.to_string()))?
            .dim_irrep(*d),
        _ => return Err(Error::Unsupported(format!("no representation-theoretic rank for {spec}"))),
    };
    big.to_usize().ok_or_else(|| Error::Size("rank does not fit".into()))
}
