//! Symmetric and antisymmetric L-particle spaces as isometric images inside
//! `(C^d)^{(x)L}`, and compression of slot-permutation averages onto them.

use std::collections::HashMap;

use itertools::Itertools;
use qcorr_linalg::{perm_sign, DMatrix, DVector, PermTerm, C64};

/// Orthonormal basis of Sym^L(C^d) (bosonic) or the L-th exterior power
/// (fermionic), indexed by sorted label tuples.
#[derive(Debug, Clone)]
pub struct ParticleCarrier {
    d: usize,
    l: usize,
    fermionic: bool,
    labels: Vec<Vec<usize>>,
    /// For every full index in d^L: (carrier index, amplitude) if nonzero.
    lookup: Vec<Option<(usize, f64)>>,
    /// Column of the isometry: (full index, amplitude).
    columns: Vec<Vec<(usize, f64)>>,
}

fn factorial(n: usize) -> f64 {
    (1..=n).map(|x| x as f64).product()
}

impl ParticleCarrier {
    pub fn new(d: usize, l: usize, fermionic: bool) -> Self {
        let labels: Vec<Vec<usize>> = if fermionic {
            (0..d).combinations(l).collect()
        } else {
            (0..d).combinations_with_replacement(l).collect()
        };
        let index: HashMap<&[usize], usize> =
            labels.iter().enumerate().map(|(i, s)| (s.as_slice(), i)).collect();
        let full = d.pow(l as u32);
        let mut lookup = vec![None; full];
        let mut columns = vec![Vec::new(); labels.len()];
        let mut digits = vec![0usize; l];
        for (idx, slot) in lookup.iter_mut().enumerate() {
            let mut x = idx;
            for k in (0..l).rev() {
                digits[k] = x % d;
                x /= d;
            }
            let mut order: Vec<usize> = (0..l).collect();
            order.sort_by_key(|&i| digits[i]);
            let sorted: Vec<usize> = order.iter().map(|&i| digits[i]).collect();
            let Some(&ci) = index.get(sorted.as_slice()) else { continue };
            let amp = if fermionic {
                perm_sign(&order) as f64 / factorial(l).sqrt()
            } else {
                let mult: f64 = sorted
                    .iter()
                    .chunk_by(|&&x| x)
                    .into_iter()
                    .map(|(_, g)| factorial(g.count()))
                    .product();
                (mult / factorial(l)).sqrt()
            };
            *slot = Some((ci, amp));
            columns[ci].push((idx, amp));
        }
        Self { d, l, fermionic, labels, lookup, columns }
    }

    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    pub fn single_dim(&self) -> usize {
        self.d
    }

    pub fn particles(&self) -> usize {
        self.l
    }

    pub fn is_fermionic(&self) -> bool {
        self.fermionic
    }

    pub fn labels(&self) -> &[Vec<usize>] {
        &self.labels
    }

    /// Carrier coordinates to a vector in `(C^d)^{(x)L}`.
    pub fn embed(&self, v: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(self.d.pow(self.l as u32));
        for (ci, col) in self.columns.iter().enumerate() {
            for &(idx, amp) in col {
                out[idx] += v[ci] * amp;
            }
        }
        out
    }

    /// Orthogonal projection of a full vector onto carrier coordinates.
    pub fn restrict(&self, w: &DVector<C64>) -> DVector<C64> {
        let mut out = DVector::zeros(self.dim());
        for (idx, e) in self.lookup.iter().enumerate() {
            if let Some((ci, amp)) = e {
                out[*ci] += w[idx] * *amp;
            }
        }
        out
    }

    /// Compress `sum_t coef_t pi_t` acting on `k` copies of `(C^d)^{(x)L}`
    /// (slot order: copy-major) to the k-fold carrier: returns
    /// `V^dag M V` with `V` the k-fold isometry.
    pub fn compress(&self, terms: &[PermTerm], k: usize) -> DMatrix<C64> {
        let n = self.dim();
        let slots = k * self.l;
        let total = n.pow(k as u32);
        let block = self.d.pow(self.l as u32);
        let mut strides = vec![1usize; slots];
        for s in (0..slots.saturating_sub(1)).rev() {
            strides[s] = strides[s + 1] * self.d;
        }
        // image index = sum_i digit_i * dst[i]
        let dst: Vec<Vec<usize>> =
            terms.iter().map(|t| (0..slots).map(|i| strides[t.perm[i]]).collect()).collect();
        let coefs: Vec<f64> = terms.iter().map(|t| t.coefficient()).collect();
        let mut out = DMatrix::zeros(total, total);
        let mut carrier_digits = vec![0usize; k];
        let mut digits = vec![0usize; slots];
        for col in 0..total {
            let mut x = col;
            for c in (0..k).rev() {
                carrier_digits[c] = x % n;
                x /= n;
            }
            let mut entries: Vec<(usize, f64)> = vec![(0, 1.0)];
            for &ci in &carrier_digits {
                entries = entries
                    .iter()
                    .flat_map(|&(f, a)| self.columns[ci].iter().map(move |&(g, b)| (f * block + g, a * b)))
                    .collect();
            }
            for &(f, a) in &entries {
                let mut x = f;
                for s in (0..slots).rev() {
                    digits[s] = x % self.d;
                    x /= self.d;
                }
                for (dst, &coef) in dst.iter().zip(&coefs) {
                    let image: usize = digits.iter().zip(dst).map(|(&g, &s)| g * s).sum();
                    if let Some((row, w)) = self.row_of(image, k, block) {
                        out[(row, col)] += C64::new(coef * a * w, 0.0);
                    }
                }
            }
        }
        out
    }

    /// Split a full k-copy index into per-copy blocks and map each block to
    /// its carrier coordinate; `None` when some block lies outside the carrier.
    fn row_of(&self, image: usize, k: usize, block: usize) -> Option<(usize, f64)> {
        let n = self.dim();
        let (mut row, mut amp, mut scale, mut rest) = (0usize, 1.0, 1usize, image);
        for _ in 0..k {
            let (ci, w) = self.lookup[rest % block]?;
            rest /= block;
            row += ci * scale;
            amp *= w;
            scale *= n;
        }
        Some((row, amp))
    }
}
