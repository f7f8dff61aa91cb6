//! Six-copy characterization of tripartite states that are separable across
//! some bipartition.
//!
//! Copies are laid out copy-major: slot `3c + p` holds party `p` of copy `c`.
//! The operator is `P^{sym,6} B P^{sym,6}` with `B` the product of three
//! two-copy bipartite operators acting on copy pairs (0,1), (2,3), (4,5) for
//! the cuts `0|12`, `1|02` and `2|01` respectively.

use itertools::Itertools;
use num_bigint::BigInt;
use num_rational::BigRational;
use qcorr_linalg::{
    all_permutations, compose, symmetrizer_ops, DMatrix, DVector, Error, LinearMap, MapKind, PermTerm, Result,
    SymSpec, C64,
};

use crate::operators::ClassOperator;
use crate::ClassSpec;

pub const GME_COPIES: usize = 6;
const SLOTS: usize = 18;

/// Largest local dimension accepted by `gme_operator`.
pub const MAX_GME_DIM: usize = 3;

fn swap_party(perm: &mut [usize], c1: usize, c2: usize, p: usize) {
    perm.swap(3 * c1 + p, 3 * c2 + p);
}

/// The 64 signed terms of `B`, each with weight 1/64.
fn product_terms() -> Vec<(i8, Vec<usize>)> {
    let mut out = Vec::with_capacity(64);
    for choice in (0..3).map(|_| 0..4u8).multi_cartesian_product() {
        let mut perm: Vec<usize> = (0..SLOTS).collect();
        let mut sign = 1i8;
        for (cut, &c) in choice.iter().enumerate() {
            let (c1, c2) = (2 * cut, 2 * cut + 1);
            let own = c & 1 != 0;
            let rest = c & 2 != 0;
            if own {
                swap_party(&mut perm, c1, c2, cut);
            }
            if rest {
                for p in (0..3).filter(|&p| p != cut) {
                    swap_party(&mut perm, c1, c2, p);
                }
            }
            if own != rest {
                sign = -sign;
            }
        }
        out.push((sign, perm));
    }
    out
}

fn copy_perm(sigma: &[usize]) -> Vec<usize> {
    let mut p = vec![0; SLOTS];
    for (c, &t) in sigma.iter().enumerate() {
        for q in 0..3 {
            p[3 * c + q] = 3 * t + q;
        }
    }
    p
}

fn cycles(p: &[usize]) -> u32 {
    let mut seen = vec![false; p.len()];
    let mut n = 0;
    for s in 0..p.len() {
        if !seen[s] {
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = p[x];
            }
        }
    }
    n
}

/// Exact `tr(P^{sym,6} B) = tr A`.
pub fn gme_trace(d: usize) -> BigRational {
    let terms = product_terms();
    let mut num = BigInt::from(0);
    for sigma in all_permutations(GME_COPIES) {
        let s = copy_perm(&sigma);
        for (sign, b) in &terms {
            let c = cycles(&compose(&s, b));
            num += BigInt::from(*sign) * BigInt::from(d).pow(c);
        }
    }
    BigRational::new(num, BigInt::from(720 * 64))
}

pub fn gme_operator(d: usize) -> Result<ClassOperator> {
    let spec = ClassSpec::TwoSeparable3 { d };
    spec.validate()?;
    if d > MAX_GME_DIM {
        return Err(Error::Size(format!("six-copy operator supports d <= {MAX_GME_DIM}, got {d}")));
    }
    let dims = vec![d; SLOTS];
    let psym = symmetrizer_ops(&dims, &SymSpec::CopySymmetrizer { copies: GME_COPIES, block: 3 })?;
    let terms = product_terms()
        .into_iter()
        .map(|(sign, perm)| PermTerm { sign, perm, scale: 1.0 / 64.0 })
        .collect();
    let b = LinearMap::new(dims.clone(), MapKind::SignedPermutationAverage { factor_dims: dims.clone(), terms })?;
    let a = LinearMap::new(dims, MapKind::Composite(vec![psym.clone(), b, psym]))?;
    Ok(ClassOperator::from_parts(spec, GME_COPIES, a, gme_trace(d)))
}

/// `tr rho_p^2` for the single-party reduced state of a three-party vector.
pub fn party_purity(psi: &DVector<C64>, d: usize, party: usize) -> f64 {
    // reshape as d x d^2 with party p as the row index
    let m = DMatrix::from_fn(d, d * d, |i, j| {
        let (x, y) = (j / d, j % d);
        let idx = match party {
            0 => i * d * d + x * d + y,
            1 => x * d * d + i * d + y,
            _ => x * d * d + y * d + i,
        };
        psi[idx]
    });
    let rho = &m * m.adjoint();
    rho.iter().map(|z| z.norm_sqr()).sum()
}

/// Two-copy bipartite invariant `(1 - tr rho_p^2)/2` for the cut `p|rest`.
pub fn cut_invariant(psi: &DVector<C64>, d: usize, party: usize) -> f64 {
    0.5 * (1.0 - party_purity(psi, d, party))
}

/// `<psi^{(x)6}|A|psi^{(x)6}>`, which factorizes over the three cuts.
pub fn product_power_value(psi: &DVector<C64>, d: usize) -> Result<f64> {
    if psi.len() != d * d * d {
        return Err(Error::Dimension(format!("three-party state of dim {} for d = {d}", psi.len())));
    }
    Ok((0..3).map(|p| cut_invariant(psi, d, p)).product())
}

/// Dense two-copy cut operator `(I - S_p - S_rest + S_all)/4` on `(C^d)^{(x)6}`.
fn cut_operator(d: usize, party: usize) -> Result<DMatrix<C64>> {
    let dims = vec![d; 6];
    let mut terms = Vec::new();
    for (own, rest) in [(false, false), (true, false), (false, true), (true, true)] {
        let mut perm: Vec<usize> = (0..6).collect();
        if own {
            perm.swap(party, 3 + party);
        }
        if rest {
            for p in (0..3).filter(|&p| p != party) {
                perm.swap(p, 3 + p);
            }
        }
        let sign = if own != rest { -1 } else { 1 };
        terms.push(PermTerm { sign, perm, scale: 0.25 });
    }
    let map = LinearMap::new(dims.clone(), MapKind::SignedPermutationAverage { factor_dims: dims, terms })?;
    Ok(map.to_dense()?.into_matrix())
}

/// Ordered triples of unordered pairs partitioning `0..6`.
fn pairings() -> Vec<[(usize, usize); 3]> {
    all_permutations(GME_COPIES)
        .into_iter()
        .filter(|p| p[0] < p[1] && p[2] < p[3] && p[4] < p[5])
        .map(|p| [(p[0], p[1]), (p[2], p[3]), (p[4], p[5])])
        .collect()
}

/// `<Psi|A|Psi>` for a product `Psi = psi_0 (x) ... (x) psi_5` of
/// three-party vectors, via Gram matrices of `A_cut (psi_a (x) psi_b)`.
pub fn tuple_value(psis: &[DVector<C64>], d: usize) -> Result<f64> {
    if psis.len() != GME_COPIES || psis.iter().any(|v| v.len() != d * d * d) {
        return Err(Error::Dimension("need six three-party vectors".into()));
    }
    let pairs = pairings();
    let mut grams = Vec::with_capacity(3);
    for party in 0..3 {
        let a = cut_operator(d, party)?;
        let mut u: Vec<Vec<DVector<C64>>> = vec![vec![DVector::zeros(0); 6]; 6];
        for x in 0..6 {
            for y in x + 1..6 {
                u[x][y] = &a * psis[x].kronecker(&psis[y]);
            }
        }
        let mut g = vec![[[[C64::new(0.0, 0.0); 6]; 6]; 6]; 6];
        for x in 0..6 {
            for y in x + 1..6 {
                for z in 0..6 {
                    for w in z + 1..6 {
                        g[x][y][z][w] = u[x][y].dotc(&u[z][w]);
                    }
                }
            }
        }
        grams.push(g);
    }
    let mut total = C64::new(0.0, 0.0);
    for s in &pairs {
        for t in &pairs {
            let mut prod = C64::new(1.0, 0.0);
            for j in 0..3 {
                prod *= grams[j][s[j].0][s[j].1][t[j].0][t[j].1];
            }
            total += prod;
        }
    }
    Ok(total.re * 64.0 / (720.0 * 720.0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn ninety_pairings() {
        assert_eq!(pairings().len(), 90);
        assert_eq!(product_terms().len(), 64);
    }

    #[test]
    fn ghz_cut_invariants() {
        let mut ghz = DVector::zeros(8);
        ghz[0] = C64::new(0.5f64.sqrt(), 0.0);
        ghz[7] = C64::new(0.5f64.sqrt(), 0.0);
        for p in 0..3 {
            assert!((cut_invariant(&ghz, 2, p) - 0.25).abs() < 1e-14);
        }
        assert!((product_power_value(&ghz, 2).unwrap() - 1.0 / 64.0).abs() < 1e-14);
        let v = tuple_value(&vec![ghz.clone(); 6], 2).unwrap();
        assert!((v - 1.0 / 64.0).abs() < 1e-13);
    }
}
