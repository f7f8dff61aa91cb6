//! Fermionic Fock space on `d` modes.
//!
//! Basis states are occupation bitstrings with mode `k` (1-based) stored in
//! bit `k-1`. Ladder operators carry the Jordan-Wigner sign
//! `(-1)^(occupied modes below k)`. Majorana operators are
//! `c_{2k-1} = a_k + a_k^dag` and `c_{2k} = i (a_k - a_k^dag)`.

mod gaussian;
mod monomial;

pub use gaussian::{
    a8_state, a8_vector, bogolyubov_unitary, correlation_matrix, random_antisymmetric,
    random_pure_gaussian, random_pure_gaussian_rng, rotation_of, CorrelationMatrix,
};
pub use monomial::Monomial;

use qcorr_linalg::{DMatrix, DVector, DenseOperator, Error, LinearMap, MapKind, Result, StateVector, C64};

pub const MAX_MODES: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Parity {
    Plus,
    Minus,
}

impl Parity {
    pub fn sign(self) -> f64 {
        match self {
            Parity::Plus => 1.0,
            Parity::Minus => -1.0,
        }
    }

    pub fn of_index(index: usize) -> Self {
        if index.count_ones() % 2 == 0 {
            Parity::Plus
        } else {
            Parity::Minus
        }
    }
}

/// Ladder, Majorana and parity operators for `d` modes. Operators are kept
/// in sparse monomial form and materialized on request.
#[derive(Debug, Clone)]
pub struct FockAlgebra {
    d: usize,
    majoranas: Vec<Monomial>,
}

/// Build the algebra for `1 <= d <= 12` modes.
pub fn build_fock(d: usize) -> Result<FockAlgebra> {
    if d == 0 || d > MAX_MODES {
        return Err(Error::Domain(format!("number of modes {d} outside 1..={MAX_MODES}")));
    }
    let majoranas = (1..=2 * d).map(|j| Monomial::majorana(d, j)).collect();
    Ok(FockAlgebra { d, majoranas })
}

impl FockAlgebra {
    pub fn modes(&self) -> usize {
        self.d
    }

    pub fn dim(&self) -> usize {
        1 << self.d
    }

    /// Majorana `c_j`, 1-based.
    pub fn c(&self, j: usize) -> DenseOperator {
        self.majoranas[j - 1].to_dense()
    }

    pub fn majorana_monomial(&self, j: usize) -> &Monomial {
        &self.majoranas[j - 1]
    }

    /// Annihilation operator `a_k`, 1-based.
    pub fn a(&self, k: usize) -> DenseOperator {
        let c1 = self.c(2 * k - 1);
        let c2 = self.c(2 * k);
        // a = (c_{2k-1} - i c_{2k}) / 2
        c1.add(&c2.scale_c(C64::new(0.0, -1.0))).expect("same dim").scale(0.5)
    }

    pub fn adag(&self, k: usize) -> DenseOperator {
        self.a(k).adjoint()
    }

    pub fn number(&self, k: usize) -> DenseOperator {
        let n = self.dim();
        let v: Vec<f64> = (0..n).map(|i| ((i >> (k - 1)) & 1) as f64).collect();
        DenseOperator::diagonal(&v)
    }

    /// Parity operator `Q = diag((-1)^popcount)`.
    pub fn parity(&self) -> DenseOperator {
        let v: Vec<f64> = (0..self.dim()).map(|i| Parity::of_index(i).sign()).collect();
        DenseOperator::diagonal(&v)
    }

    pub fn sector_projector(&self, p: Parity) -> DenseOperator {
        let v: Vec<f64> =
            (0..self.dim()).map(|i| if Parity::of_index(i) == p { 1.0 } else { 0.0 }).collect();
        DenseOperator::diagonal(&v)
    }

    pub fn p_plus(&self) -> DenseOperator {
        self.sector_projector(Parity::Plus)
    }

    pub fn p_minus(&self) -> DenseOperator {
        self.sector_projector(Parity::Minus)
    }

    pub fn vacuum(&self) -> StateVector {
        StateVector::basis(vec![self.dim()], 0).expect("valid index")
    }

    /// Fock basis indices of one parity sector, increasing.
    pub fn sector_indices(&self, p: Parity) -> Vec<usize> {
        sector_indices(self.d, p)
    }

    /// Product `c_{s_1} ... c_{s_m}` as a monomial.
    pub fn monomial(&self, set: &[usize]) -> Monomial {
        Monomial::product(self.d, set)
    }

    /// Hermitian basis element `i^{|S|/2} prod_{j in S} c_j` for even |S|.
    pub fn hermitian_monomial(&self, set: &[usize]) -> Monomial {
        let m = self.monomial(set);
        let ph = match (set.len() / 2) % 4 {
            0 => C64::new(1.0, 0.0),
            1 => C64::new(0.0, 1.0),
            2 => C64::new(-1.0, 0.0),
            _ => C64::new(0.0, -1.0),
        };
        m.scaled(ph)
    }

    /// Largest deviation of `x` from commuting with parity.
    pub fn odd_defect(&self, x: &DenseOperator) -> f64 {
        let m = x.matrix();
        let mut worst: f64 = 0.0;
        for i in 0..self.dim() {
            for j in 0..self.dim() {
                if Parity::of_index(i) != Parity::of_index(j) {
                    worst = worst.max(m[(i, j)].norm());
                }
            }
        }
        worst
    }

    /// The Majorana-coefficient conjugation: expand `x` over Hermitian
    /// monomials and flip the sign of coefficients with |S| = 2 mod 4.
    pub fn tilde(&self, x: &DenseOperator) -> Result<DenseOperator> {
        self.check_even(x)?;
        if self.d > 8 {
            return Ok(self.tilde_by_reflection(x));
        }
        let n = self.dim();
        let scale = 1.0 / n as f64;
        let mut out = DMatrix::<C64>::zeros(n, n);
        for set in even_subsets(2 * self.d) {
            let b = self.hermitian_monomial(&set);
            let beta = b.trace_with(x) * scale;
            let sign = if (set.len() / 2) % 2 == 1 { -1.0 } else { 1.0 };
            if beta.norm() > 0.0 {
                b.add_to(&mut out, beta * sign);
            }
        }
        DenseOperator::new(x.factor_dims().to_vec(), out)
    }

    /// Same map as `tilde`, computed as `T conj(x) T` with `T` the product of
    /// the real Majoranas `c_1 c_3 ... c_{2d-1}`.
    pub fn tilde_by_reflection(&self, x: &DenseOperator) -> DenseOperator {
        let t = self.reflection().to_dense();
        let conj = x.matrix().map(|z| z.conj());
        DenseOperator::new(x.factor_dims().to_vec(), t.matrix() * conj * t.matrix().adjoint())
            .expect("same dims")
    }

    /// `c_1 c_3 ... c_{2d-1}`: a real symmetric-or-antisymmetric signed
    /// permutation squaring to +-1.
    pub fn reflection(&self) -> Monomial {
        let set: Vec<usize> = (0..self.d).map(|k| 2 * k + 1).collect();
        self.monomial(&set)
    }

    pub fn check_even(&self, x: &DenseOperator) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::Dimension(format!(
                "operator of dim {} on {} modes",
                x.dim(),
                self.d
            )));
        }
        let defect = self.odd_defect(x);
        if defect > 1e-10 {
            return Err(Error::Contract(format!("operator has odd component {defect:.3e}")));
        }
        Ok(())
    }

    /// Polynomial in Majorana operators as a matrix-free map.
    pub fn polynomial(&self, terms: Vec<(C64, Vec<usize>)>) -> Result<LinearMap> {
        LinearMap::new(vec![self.dim()], MapKind::MajoranaPolynomial { modes: self.d, terms })
    }
}

pub fn sector_indices(d: usize, p: Parity) -> Vec<usize> {
    (0..1usize << d).filter(|&i| Parity::of_index(i) == p).collect()
}

/// All subsets of `{1..n}` of even size, ordered by size then
/// lexicographically.
pub fn even_subsets(n: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut k = 0;
    while k <= n {
        out.extend(subsets_of_size(n, k));
        k += 2;
    }
    out
}

/// Subsets of `{1..n}` of size `k`, lexicographic.
pub fn subsets_of_size(n: usize, k: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, n: usize, k: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == k {
            out.push(cur.clone());
            return;
        }
        for i in start..=n {
            if n - i + 1 < k - cur.len() {
                break;
            }
            cur.push(i);
            rec(i + 1, n, k, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(1, n, k, &mut Vec::new(), &mut out);
    out
}

/// Restrict a Fock vector to a parity sector (coordinates in increasing
/// basis order).
pub fn restrict_vector(v: &DVector<C64>, d: usize, p: Parity) -> DVector<C64> {
    let idx = sector_indices(d, p);
    DVector::from_iterator(idx.len(), idx.iter().map(|&i| v[i]))
}

/// Embed sector coordinates back into the full Fock space.
pub fn embed_vector(v: &DVector<C64>, d: usize, p: Parity) -> DVector<C64> {
    let idx = sector_indices(d, p);
    let mut out = DVector::zeros(1 << d);
    for (k, &i) in idx.iter().enumerate() {
        out[i] = v[k];
    }
    out
}

/// Restrict an operator to the block of one parity sector.
pub fn restrict_operator(x: &DenseOperator, d: usize, p: Parity) -> DenseOperator {
    let idx = sector_indices(d, p);
    let m = x.matrix();
    DenseOperator::from_matrix(DMatrix::from_fn(idx.len(), idx.len(), |r, c| m[(idx[r], idx[c])]))
}

pub fn embed_operator(x: &DenseOperator, d: usize, p: Parity) -> DenseOperator {
    let idx = sector_indices(d, p);
    let n = 1 << d;
    let mut out = DMatrix::zeros(n, n);
    for (r, &i) in idx.iter().enumerate() {
        for (c, &j) in idx.iter().enumerate() {
            out[(i, j)] = x.get(r, c);
        }
    }
    DenseOperator::from_matrix(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn anticomm(a: &DenseOperator, b: &DenseOperator) -> DenseOperator {
        a.mul(b).unwrap().add(&b.mul(a).unwrap()).unwrap()
    }

    #[test]
    fn single_mode_annihilator() {
        let f = build_fock(1).unwrap();
        let a = f.a(1);
        assert_eq!(a.get(0, 1), C64::new(1.0, 0.0));
        assert_eq!(a.get(0, 0) + a.get(1, 0) + a.get(1, 1), C64::new(0.0, 0.0));
    }

    #[test]
    fn canonical_anticommutation() {
        let f = build_fock(3).unwrap();
        let id = DenseOperator::identity(vec![8]).unwrap();
        for k in 1..=3 {
            for l in 1..=3 {
                let ac = anticomm(&f.a(k), &f.adag(l));
                let want = if k == l { id.clone() } else { id.scale(0.0) };
                assert!(ac.distance(&want) < 1e-12);
                assert!(anticomm(&f.a(k), &f.a(l)).frobenius() < 1e-12);
            }
        }
        assert_eq!(anticomm(&f.a(1), &f.adag(2)).frobenius(), 0.0);
    }

    #[test]
    fn majorana_clifford_relations() {
        let f = build_fock(3).unwrap();
        let id = DenseOperator::identity(vec![8]).unwrap();
        for j in 1..=6 {
            let cj = f.c(j);
            assert!(cj.hermiticity_defect() == 0.0);
            assert_eq!(cj.trace(), C64::new(0.0, 0.0));
            assert!(cj.mul(&cj).unwrap().distance(&id) == 0.0);
            for l in j + 1..=6 {
                assert!(anticomm(&cj, &f.c(l)).frobenius() < 1e-14);
            }
        }
    }

    #[test]
    fn number_spectrum_and_parity() {
        let f = build_fock(4).unwrap();
        assert_eq!(f.dim(), 16);
        let e = qcorr_linalg::herm_eig(&f.number(2)).unwrap();
        assert!(e.values.iter().all(|&x| x == 0.0 || x == 1.0));
        let q = f.parity();
        assert!(q.mul(&q).unwrap().distance(&DenseOperator::identity(vec![16]).unwrap()) == 0.0);
        assert_eq!(q.get(0, 0), C64::new(1.0, 0.0));
        let pp = f.p_plus().add(&f.p_minus()).unwrap();
        assert!(pp.distance(&DenseOperator::identity(vec![16]).unwrap()) == 0.0);
    }

    #[test]
    fn hermitian_monomials_are_orthogonal() {
        let f = build_fock(2).unwrap();
        let sets = even_subsets(4);
        assert_eq!(sets.len(), 8);
        for s in &sets {
            let bs = f.hermitian_monomial(s).to_dense();
            assert!(bs.hermiticity_defect() < 1e-15);
            for t in &sets {
                let bt = f.hermitian_monomial(t).to_dense();
                let tr = bs.trace_product(&bt);
                let want = if s == t { 4.0 } else { 0.0 };
                assert!((tr - C64::new(want, 0.0)).norm() < 1e-14);
            }
        }
    }

    #[test]
    fn tilde_basics() {
        let f = build_fock(4).unwrap();
        let id = DenseOperator::identity(vec![16]).unwrap();
        assert!(f.tilde(&id).unwrap().distance(&id) < 1e-14);
        let q = f.parity();
        assert!(f.tilde(&q).unwrap().distance(&q) < 1e-14);
        // a quadratic monomial flips sign
        let b = f.hermitian_monomial(&[1, 2]).to_dense();
        assert!(f.tilde(&b).unwrap().distance(&b.scale(-1.0)) < 1e-14);
        assert!(f.tilde(&f.c(1)).is_err());
    }

    #[test]
    fn sector_roundtrip() {
        let v = DVector::from_fn(8, |i, _| C64::new(i as f64, 0.0));
        let r = restrict_vector(&v, 3, Parity::Plus);
        assert_eq!(r.len(), 4);
        let back = embed_vector(&r, 3, Parity::Plus);
        assert_eq!(back[3], C64::new(3.0, 0.0));
        assert_eq!(back[1], C64::new(0.0, 0.0));
    }

    #[test]
    fn polynomial_map_matches_dense_product() {
        let f = build_fock(3).unwrap();
        let p = f.polynomial(vec![(C64::new(0.5, 0.0), vec![1, 4]), (C64::new(0.0, 2.0), vec![6])]).unwrap();
        let want = f
            .c(1)
            .mul(&f.c(4))
            .unwrap()
            .scale(0.5)
            .add(&f.c(6).scale_c(C64::new(0.0, 2.0)))
            .unwrap();
        assert!(p.to_dense().unwrap().distance(&want) < 1e-14);
    }

    #[test]
    fn mode_count_bounds() {
        assert!(build_fock(0).is_err());
        assert!(build_fock(13).is_err());
        assert!(build_fock(12).is_ok());
    }
}
