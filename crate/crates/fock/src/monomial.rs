use qcorr_linalg::{majorana_action, DMatrix, DVector, DenseOperator, C64};

/// A matrix with exactly one nonzero entry per column: column `j` maps to
/// row `target[j]` with value `phase[j]`. Products of Majorana operators
/// have this form.
#[derive(Debug, Clone, PartialEq)]
pub struct Monomial {
    target: Vec<usize>,
    phase: Vec<C64>,
}

impl Monomial {
    pub fn identity(n: usize) -> Self {
        Self { target: (0..n).collect(), phase: vec![C64::new(1.0, 0.0); n] }
    }

    /// Majorana `c_j` on `d` modes.
    pub fn majorana(d: usize, j: usize) -> Self {
        let n = 1usize << d;
        let (target, phase) = (0..n).map(|i| majorana_action(j, i)).unzip();
        Self { target, phase }
    }

    /// `c_{s_1} c_{s_2} ... c_{s_m}`.
    pub fn product(d: usize, set: &[usize]) -> Self {
        set.iter()
            .fold(Self::identity(1 << d), |acc, &j| acc.mul(&Self::majorana(d, j)))
    }

    pub fn dim(&self) -> usize {
        self.target.len()
    }

    /// Matrix product `self * other`.
    pub fn mul(&self, other: &Self) -> Self {
        let (target, phase) = (0..other.dim())
            .map(|j| {
                let mid = other.target[j];
                (self.target[mid], self.phase[mid] * other.phase[j])
            })
            .unzip();
        Self { target, phase }
    }

    pub fn scaled(mut self, s: C64) -> Self {
        for p in &mut self.phase {
            *p *= s;
        }
        self
    }

    /// Kronecker product (first factor most significant).
    pub fn kron(&self, other: &Self) -> Self {
        let m = other.dim();
        let mut target = Vec::with_capacity(self.dim() * m);
        let mut phase = Vec::with_capacity(self.dim() * m);
        for j in 0..self.dim() {
            for l in 0..m {
                target.push(self.target[j] * m + other.target[l]);
                phase.push(self.phase[j] * other.phase[l]);
            }
        }
        Self { target, phase }
    }

    pub fn to_dense(&self) -> DenseOperator {
        let n = self.dim();
        let mut m = DMatrix::zeros(n, n);
        self.add_to(&mut m, C64::new(1.0, 0.0));
        DenseOperator::from_matrix(m)
    }

    /// `out += coef * self`.
    pub fn add_to(&self, out: &mut DMatrix<C64>, coef: C64) {
        for (j, (&t, &p)) in self.target.iter().zip(&self.phase).enumerate() {
            out[(t, j)] += coef * p;
        }
    }

    /// `tr(x * self)`.
    pub fn trace_with(&self, x: &DenseOperator) -> C64 {
        let m = x.matrix();
        self.target
            .iter()
            .zip(&self.phase)
            .enumerate()
            .map(|(j, (&t, &p))| m[(j, t)] * p)
            .sum()
    }

    pub fn apply(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(v.len());
        for (j, (&t, &p)) in self.target.iter().zip(&self.phase).enumerate() {
            out[t] += p * v[j];
        }
        out
    }

    pub fn trace(&self) -> C64 {
        self.target
            .iter()
            .zip(&self.phase)
            .enumerate()
            .filter(|(j, (t, _))| *j == **t)
            .map(|(_, (_, p))| *p)
            .sum()
    }
}
