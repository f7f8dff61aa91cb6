use itertools::Itertools;
use nalgebra::{DMatrix, DVector};

use crate::map::{LinearMap, MapKind, PermTerm};
use crate::{dim_product, Error, Result, C64};

/// All permutations of `0..n` in lexicographic order.
pub fn all_permutations(n: usize) -> Vec<Vec<usize>> {
    (0..n).permutations(n).collect()
}

/// +1 or -1 according to the parity of the permutation.
pub fn perm_sign(p: &[usize]) -> i8 {
    let mut inv = 0usize;
    for i in 0..p.len() {
        for j in i + 1..p.len() {
            if p[i] > p[j] {
                inv += 1;
            }
        }
    }
    if inv % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Permutation applying `first` and then `second`.
pub fn compose(second: &[usize], first: &[usize]) -> Vec<usize> {
    first.iter().map(|&i| second[i]).collect()
}

pub fn invert(p: &[usize]) -> Vec<usize> {
    let mut out = vec![0; p.len()];
    for (i, &j) in p.iter().enumerate() {
        out[j] = i;
    }
    out
}

pub(crate) fn check_perm(p: &[usize], dims: &[usize]) -> Result<()> {
    if p.len() != dims.len() {
        return Err(Error::Dimension(format!(
            "permutation of {} slots on {} factors",
            p.len(),
            dims.len()
        )));
    }
    let mut seen = vec![false; p.len()];
    for (i, &j) in p.iter().enumerate() {
        if j >= p.len() || seen[j] {
            return Err(Error::Domain(format!("{p:?} is not a permutation")));
        }
        seen[j] = true;
        if dims[i] != dims[j] {
            return Err(Error::Dimension(format!(
                "slot {i} (dim {}) cannot move to slot {j} (dim {})",
                dims[i], dims[j]
            )));
        }
    }
    Ok(())
}

/// Visit every basis index together with its image under the factor
/// permutation `p` (the factor in slot `i` moves to slot `p[i]`).
pub(crate) fn for_each_permuted(dims: &[usize], p: &[usize], mut f: impl FnMut(usize, usize)) {
    let n = dims.len();
    let total: usize = dims.iter().product();
    if n == 0 {
        f(0, 0);
        return;
    }
    let mut strides = vec![1usize; n];
    for k in (0..n - 1).rev() {
        strides[k] = strides[k + 1] * dims[k + 1];
    }
    let dst: Vec<usize> = (0..n).map(|i| strides[p[i]]).collect();
    let mut digits = vec![0usize; n];
    let mut target = 0usize;
    for src in 0..total {
        f(src, target);
        let mut k = n - 1;
        loop {
            digits[k] += 1;
            target += dst[k];
            if digits[k] < dims[k] {
                break;
            }
            target -= dst[k] * dims[k];
            digits[k] = 0;
            if k == 0 {
                break;
            }
            k -= 1;
        }
    }
}

/// Image of one basis index under the factor permutation `p`.
pub fn permuted_index(dims: &[usize], p: &[usize], index: usize) -> usize {
    let n = dims.len();
    let mut digits = vec![0usize; n];
    let mut x = index;
    for k in (0..n).rev() {
        digits[k] = x % dims[k];
        x /= dims[k];
    }
    let mut moved = vec![0usize; n];
    for (i, &d) in digits.iter().enumerate() {
        moved[p[i]] = d;
    }
    moved.iter().zip(dims).fold(0, |acc, (&d, &n)| acc * n + d)
}

/// Apply a factor permutation to a full tensor vector.
pub fn permute_vector(v: &DVector<C64>, dims: &[usize], p: &[usize]) -> Result<DVector<C64>> {
    check_perm(p, dims)?;
    if v.len() != dim_product(dims)? {
        return Err(Error::Dimension("vector length does not match dims".into()));
    }
    let mut out = DVector::zeros(v.len());
    for_each_permuted(dims, p, |s, t| out[t] = v[s]);
    Ok(out)
}

/// Which symmetrizer or permutation map to build.
#[derive(Debug, Clone, PartialEq)]
pub enum SymSpec {
    /// (I + S_ij)/2 for two factor slots.
    PairSymmetrizer(usize, usize),
    /// Average of all permutations of the listed slots.
    Symmetrizer(Vec<usize>),
    /// Signed average of all permutations of the listed slots.
    Antisymmetrizer(Vec<usize>),
    /// Exchange of two equally long blocks of slots.
    BlockSwap(Vec<usize>, Vec<usize>),
    /// A single permutation of all slots.
    Permutation(Vec<usize>),
    /// Symmetrizer over `copies` consecutive blocks of `block` slots each.
    CopySymmetrizer { copies: usize, block: usize },
    /// Antisymmetrizer over `copies` consecutive blocks of `block` slots each.
    CopyAntisymmetrizer { copies: usize, block: usize },
}

fn subset_average(n: usize, slots: &[usize], signed: bool) -> Vec<PermTerm> {
    let m = slots.len();
    let perms = all_permutations(m);
    let scale = 1.0 / perms.len() as f64;
    perms
        .into_iter()
        .map(|q| {
            let mut p: Vec<usize> = (0..n).collect();
            for (a, &b) in q.iter().enumerate() {
                p[slots[a]] = slots[b];
            }
            let sign = if signed { perm_sign(&q) } else { 1 };
            PermTerm { sign, perm: p, scale }
        })
        .collect()
}

fn block_average(copies: usize, block: usize, signed: bool) -> Vec<PermTerm> {
    let n = copies * block;
    let perms = all_permutations(copies);
    let scale = 1.0 / perms.len() as f64;
    perms
        .into_iter()
        .map(|q| {
            let mut p = vec![0usize; n];
            for (c, &t) in q.iter().enumerate() {
                for j in 0..block {
                    p[c * block + j] = t * block + j;
                }
            }
            let sign = if signed { perm_sign(&q) } else { 1 };
            PermTerm { sign, perm: p, scale }
        })
        .collect()
}

/// Build a symmetrizer, antisymmetrizer or permutation as a signed
/// permutation average over the given tensor factors.
pub fn symmetrizer_ops(factor_dims: &[usize], spec: &SymSpec) -> Result<LinearMap> {
    let n = factor_dims.len();
    let check_slots = |slots: &[usize]| -> Result<()> {
        if slots.iter().any(|&s| s >= n) || slots.iter().duplicates().next().is_some() {
            return Err(Error::Domain(format!("invalid slot list {slots:?}")));
        }
        Ok(())
    };
    let terms = match spec {
        SymSpec::PairSymmetrizer(i, j) => {
            check_slots(&[*i, *j])?;
            subset_average(n, &[*i, *j], false)
        }
        SymSpec::Symmetrizer(slots) => {
            check_slots(slots)?;
            subset_average(n, slots, false)
        }
        SymSpec::Antisymmetrizer(slots) => {
            check_slots(slots)?;
            subset_average(n, slots, true)
        }
        SymSpec::BlockSwap(a, b) => {
            let mut all = a.clone();
            all.extend_from_slice(b);
            check_slots(&all)?;
            if a.len() != b.len() {
                return Err(Error::Dimension("swapped blocks differ in length".into()));
            }
            let mut p: Vec<usize> = (0..n).collect();
            for (&x, &y) in a.iter().zip(b) {
                p[x] = y;
                p[y] = x;
            }
            vec![PermTerm { sign: 1, perm: p, scale: 1.0 }]
        }
        SymSpec::Permutation(p) => vec![PermTerm { sign: 1, perm: p.clone(), scale: 1.0 }],
        SymSpec::CopySymmetrizer { copies, block } | SymSpec::CopyAntisymmetrizer { copies, block } => {
            if copies * block != n {
                return Err(Error::Dimension(format!(
                    "{copies} copies of {block} slots on {n} factors"
                )));
            }
            block_average(*copies, *block, matches!(spec, SymSpec::CopyAntisymmetrizer { .. }))
        }
    };
    for t in &terms {
        check_perm(&t.perm, factor_dims)?;
    }
    LinearMap::new(
        factor_dims.to_vec(),
        MapKind::SignedPermutationAverage { factor_dims: factor_dims.to_vec(), terms },
    )
}

/// Orthonormal basis of Sym^k(C^n) as columns of an n^k x C(n+k-1, k) matrix,
/// one column per multiset of basis labels (sorted lexicographically).
pub fn sym_basis(n: usize, k: usize) -> DMatrix<C64> {
    let multisets: Vec<Vec<usize>> = (0..n).combinations_with_replacement(k).collect();
    let dim = n.pow(k as u32);
    let mut w = DMatrix::zeros(dim, multisets.len());
    for (col, m) in multisets.iter().enumerate() {
        let arrangements: Vec<Vec<usize>> = m.iter().copied().permutations(k).unique().collect();
        let amp = 1.0 / (arrangements.len() as f64).sqrt();
        for a in arrangements {
            let idx = a.iter().fold(0usize, |acc, &x| acc * n + x);
            w[(idx, col)] = C64::new(amp, 0.0);
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{c64, DenseOperator};

    #[test]
    fn swap_exchanges_factors() {
        let dims = [3, 3];
        let s = symmetrizer_ops(&dims, &SymSpec::BlockSwap(vec![0], vec![1])).unwrap();
        let mut v = DVector::zeros(9);
        v[3] = c64(1.0, 0.0); // |1>|0>
        let w = s.apply(&v).unwrap();
        assert_eq!(w[1], c64(1.0, 0.0)); // |0>|1>
        assert_eq!(w.iter().filter(|z| z.norm() > 0.0).count(), 1);
    }

    #[test]
    fn symmetrizer_trace_is_dimension_count() {
        let p = symmetrizer_ops(&[4, 4], &SymSpec::Symmetrizer(vec![0, 1])).unwrap();
        let d = p.to_dense().unwrap();
        assert!((d.trace().re - 10.0).abs() < 1e-12);
        let p2 = d.mul(&d).unwrap();
        assert!(p2.distance(&d) < 1e-12);
        assert!(d.hermiticity_defect() < 1e-15);
    }

    #[test]
    fn antisymmetrizer_on_three_qubits_vanishes() {
        let p = symmetrizer_ops(&[2, 2, 2], &SymSpec::Antisymmetrizer(vec![0, 1, 2])).unwrap();
        assert!(p.to_dense().unwrap().frobenius() < 1e-15);
    }

    #[test]
    fn mismatched_pair_rejected() {
        let r = symmetrizer_ops(&[2, 3], &SymSpec::PairSymmetrizer(0, 1));
        assert!(matches!(r, Err(Error::Dimension(_))));
    }

    #[test]
    fn permutation_sign_and_inverse() {
        assert_eq!(perm_sign(&[1, 0, 2]), -1);
        assert_eq!(perm_sign(&[1, 2, 0]), 1);
        let p = vec![2, 0, 3, 1];
        assert_eq!(compose(&invert(&p), &p), vec![0, 1, 2, 3]);
    }

    #[test]
    fn sym_basis_spans_symmetric_subspace() {
        let w = sym_basis(3, 3);
        assert_eq!(w.ncols(), 10);
        let gram = w.adjoint() * &w;
        assert!((gram - DMatrix::<C64>::identity(10, 10)).norm() < 1e-12);
        let p = symmetrizer_ops(&[3, 3, 3], &SymSpec::CopySymmetrizer { copies: 3, block: 1 })
            .unwrap()
            .to_dense()
            .unwrap();
        let proj = DenseOperator::new(vec![3, 3, 3], &w * w.adjoint()).unwrap();
        assert!(proj.distance(&p) < 1e-12);
    }

    #[test]
    fn copy_blocks_move_together() {
        // two copies of a 2-slot block on dims (2,3,2,3)
        let s = symmetrizer_ops(&[2, 3, 2, 3], &SymSpec::CopyAntisymmetrizer { copies: 2, block: 2 })
            .unwrap()
            .to_dense()
            .unwrap();
        assert!((s.trace().re - 15.0).abs() < 1e-12);
    }
}
