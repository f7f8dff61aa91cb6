use nalgebra::{DMatrix, DVector};

use crate::perm::{check_perm, for_each_permuted, invert};
use crate::{dim_product, DenseOperator, Error, Result, C64, DENSE_THRESHOLD};

/// One term `sign * scale * pi` of a signed permutation average.
#[derive(Debug, Clone, PartialEq)]
pub struct PermTerm {
    pub sign: i8,
    /// The factor in slot `i` moves to slot `perm[i]`.
    pub perm: Vec<usize>,
    pub scale: f64,
}

impl PermTerm {
    pub fn coefficient(&self) -> f64 {
        self.sign as f64 * self.scale
    }
}

#[derive(Debug, Clone)]
pub enum MapKind {
    Dense(DenseOperator),
    SignedPermutationAverage { factor_dims: Vec<usize>, terms: Vec<PermTerm> },
    /// Sum of coefficient * c_{s_1} c_{s_2} ... over Majorana monomials
    /// (1-based Majorana labels, product taken left to right) on `modes`
    /// fermionic modes.
    MajoranaPolynomial { modes: usize, terms: Vec<(C64, Vec<usize>)> },
    /// Operator product; the last map is applied first.
    Composite(Vec<LinearMap>),
    /// Real linear combination.
    Sum(Vec<(f64, LinearMap)>),
}

/// An operator known through its action on vectors.
#[derive(Debug, Clone)]
pub struct LinearMap {
    dim: usize,
    factor_dims: Vec<usize>,
    kind: MapKind,
}

/// Action of the Majorana operator `c_j` (1-based) on Fock basis state
/// `index`: returns the image index and phase. Mode k occupies bit k-1.
pub fn majorana_action(j: usize, index: usize) -> (usize, C64) {
    let mode = (j - 1) / 2;
    let bit = 1usize << mode;
    let below = (index & (bit - 1)).count_ones();
    let jw = if below % 2 == 0 { 1.0 } else { -1.0 };
    let occupied = index & bit != 0;
    let phase = if j % 2 == 1 {
        C64::new(jw, 0.0)
    } else if occupied {
        C64::new(0.0, jw)
    } else {
        C64::new(0.0, -jw)
    };
    (index ^ bit, phase)
}

impl LinearMap {
    pub fn new(factor_dims: Vec<usize>, kind: MapKind) -> Result<Self> {
        let dim = dim_product(&factor_dims)?;
        match &kind {
            MapKind::Dense(op) => {
                if op.dim() != dim {
                    return Err(Error::Dimension("dense operator has wrong dim".into()));
                }
            }
            MapKind::SignedPermutationAverage { factor_dims: fd, terms } => {
                if fd != &factor_dims {
                    return Err(Error::Dimension("permutation map factor dims differ".into()));
                }
                for t in terms {
                    check_perm(&t.perm, fd)?;
                }
            }
            MapKind::MajoranaPolynomial { modes, terms } => {
                if *modes >= usize::BITS as usize || 1usize << modes != dim {
                    return Err(Error::Dimension("Majorana polynomial needs dim 2^modes".into()));
                }
                if terms.iter().flat_map(|(_, s)| s).any(|&j| j == 0 || j > 2 * modes) {
                    return Err(Error::Domain("Majorana label out of range".into()));
                }
            }
            MapKind::Composite(maps) => {
                if maps.is_empty() || maps.iter().any(|m| m.dim != dim) {
                    return Err(Error::Dimension("composite factors must share dim".into()));
                }
            }
            MapKind::Sum(parts) => {
                if parts.is_empty() || parts.iter().any(|(_, m)| m.dim != dim) {
                    return Err(Error::Dimension("summands must share dim".into()));
                }
            }
        }
        Ok(Self { dim, factor_dims, kind })
    }

    pub fn dense(op: DenseOperator) -> Self {
        Self { dim: op.dim(), factor_dims: op.factor_dims().to_vec(), kind: MapKind::Dense(op) }
    }

    pub fn identity(factor_dims: Vec<usize>) -> Result<Self> {
        let n = factor_dims.len();
        let terms = vec![PermTerm { sign: 1, perm: (0..n).collect(), scale: 1.0 }];
        Self::new(factor_dims.clone(), MapKind::SignedPermutationAverage { factor_dims, terms })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn factor_dims(&self) -> &[usize] {
        &self.factor_dims
    }

    pub fn kind(&self) -> &MapKind {
        &self.kind
    }

    pub fn compose(self, inner: LinearMap) -> Result<Self> {
        let fd = self.factor_dims.clone();
        Self::new(fd, MapKind::Composite(vec![self, inner]))
    }

    pub fn linear_combination(parts: Vec<(f64, LinearMap)>) -> Result<Self> {
        let fd = parts
            .first()
            .ok_or_else(|| Error::Domain("empty linear combination".into()))?
            .1
            .factor_dims
            .clone();
        Self::new(fd, MapKind::Sum(parts))
    }

    pub fn apply(&self, v: &DVector<C64>) -> Result<DVector<C64>> {
        if v.len() != self.dim {
            return Err(Error::Dimension(format!(
                "vector of length {} for map of dim {}",
                v.len(),
                self.dim
            )));
        }
        Ok(match &self.kind {
            MapKind::Dense(op) => op.apply(v),
            MapKind::SignedPermutationAverage { factor_dims, terms } => {
                let mut out = DVector::zeros(self.dim);
                for t in terms {
                    let c = C64::new(t.coefficient(), 0.0);
                    for_each_permuted(factor_dims, &t.perm, |s, d| out[d] += c * v[s]);
                }
                out
            }
            MapKind::MajoranaPolynomial { terms, .. } => {
                let mut out = DVector::zeros(self.dim);
                for (coef, mono) in terms {
                    for (idx, amp) in v.iter().enumerate() {
                        if amp.norm_sqr() == 0.0 {
                            continue;
                        }
                        let (mut i, mut ph) = (idx, *coef * amp);
                        for &j in mono.iter().rev() {
                            let (ni, p) = majorana_action(j, i);
                            i = ni;
                            ph *= p;
                        }
                        out[i] += ph;
                    }
                }
                out
            }
            MapKind::Composite(maps) => {
                let mut w = v.clone();
                for m in maps.iter().rev() {
                    w = m.apply(&w)?;
                }
                w
            }
            MapKind::Sum(parts) => {
                let mut out = DVector::zeros(self.dim);
                for (c, m) in parts {
                    out += m.apply(v)? * C64::new(*c, 0.0);
                }
                out
            }
        })
    }

    /// <v|M|v>.
    pub fn expectation(&self, v: &DVector<C64>) -> Result<C64> {
        Ok(v.dotc(&self.apply(v)?))
    }

    pub fn adjoint(&self) -> Self {
        let kind = match &self.kind {
            MapKind::Dense(op) => MapKind::Dense(op.adjoint()),
            MapKind::SignedPermutationAverage { factor_dims, terms } => {
                MapKind::SignedPermutationAverage {
                    factor_dims: factor_dims.clone(),
                    terms: terms
                        .iter()
                        .map(|t| PermTerm { sign: t.sign, perm: invert(&t.perm), scale: t.scale })
                        .collect(),
                }
            }
            MapKind::MajoranaPolynomial { modes, terms } => MapKind::MajoranaPolynomial {
                modes: *modes,
                terms: terms
                    .iter()
                    .map(|(c, s)| (c.conj(), s.iter().rev().copied().collect()))
                    .collect(),
            },
            MapKind::Composite(maps) => MapKind::Composite(maps.iter().rev().map(|m| m.adjoint()).collect()),
            MapKind::Sum(parts) => MapKind::Sum(parts.iter().map(|(c, m)| (*c, m.adjoint())).collect()),
        };
        Self { dim: self.dim, factor_dims: self.factor_dims.clone(), kind }
    }

    /// Materialize as a dense matrix (only up to `DENSE_THRESHOLD`).
    pub fn to_dense(&self) -> Result<DenseOperator> {
        self.to_dense_limited(DENSE_THRESHOLD)
    }

    pub fn to_dense_limited(&self, limit: usize) -> Result<DenseOperator> {
        if self.dim > limit {
            return Err(Error::Size(format!(
                "dimension {} exceeds dense threshold {limit}",
                self.dim
            )));
        }
        let n = self.dim;
        let mat = match &self.kind {
            MapKind::Dense(op) => op.matrix().clone(),
            MapKind::SignedPermutationAverage { factor_dims, terms } => {
                let mut m = DMatrix::zeros(n, n);
                for t in terms {
                    let c = C64::new(t.coefficient(), 0.0);
                    for_each_permuted(factor_dims, &t.perm, |s, d| m[(d, s)] += c);
                }
                m
            }
            MapKind::Composite(maps) => {
                let mut acc = maps.last().expect("nonempty").to_dense_limited(limit)?.into_matrix();
                for m in maps.iter().rev().skip(1) {
                    acc = m.to_dense_limited(limit)?.into_matrix() * acc;
                }
                acc
            }
            MapKind::Sum(parts) => {
                let mut acc = DMatrix::zeros(n, n);
                for (c, m) in parts {
                    acc += m.to_dense_limited(limit)?.into_matrix() * C64::new(*c, 0.0);
                }
                acc
            }
            MapKind::MajoranaPolynomial { .. } => {
                let mut m = DMatrix::zeros(n, n);
                for j in 0..n {
                    let mut e = DVector::zeros(n);
                    e[j] = C64::new(1.0, 0.0);
                    m.set_column(j, &self.apply(&e)?);
                }
                m
            }
        };
        DenseOperator::new(self.factor_dims.clone(), mat)
    }

    /// Multiply two signed permutation averages into one, merging equal
    /// permutations.
    pub fn spa_product(&self, inner: &LinearMap) -> Result<LinearMap> {
        let (MapKind::SignedPermutationAverage { factor_dims, terms: a }, MapKind::SignedPermutationAverage { terms: b, .. }) =
            (&self.kind, &inner.kind)
        else {
            return Err(Error::Unsupported("spa_product needs permutation averages".into()));
        };
        if self.factor_dims != inner.factor_dims {
            return Err(Error::Dimension("factor dims differ".into()));
        }
        let mut merged: std::collections::BTreeMap<Vec<usize>, f64> = Default::default();
        for s in a {
            for t in b {
                let p = crate::perm::compose(&s.perm, &t.perm);
                *merged.entry(p).or_insert(0.0) += s.coefficient() * t.coefficient();
            }
        }
        let terms = merged
            .into_iter()
            .filter(|(_, c)| c.abs() > 1e-15)
            .map(|(perm, c)| PermTerm { sign: if c < 0.0 { -1 } else { 1 }, perm, scale: c.abs() })
            .collect();
        LinearMap::new(
            factor_dims.clone(),
            MapKind::SignedPermutationAverage { factor_dims: factor_dims.clone(), terms },
        )
    }

    /// Number of permutation terms, when this is a permutation average.
    pub fn term_count(&self) -> Option<usize> {
        match &self.kind {
            MapKind::SignedPermutationAverage { terms, .. } => Some(terms.len()),
            _ => None,
        }
    }
}
