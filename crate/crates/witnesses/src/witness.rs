use num_bigint::BigInt;
use num_rational::BigRational;
use qcorr_classes::gme::tuple_value;
use qcorr_classes::{class_operator2, random_member, ClassOperator, ClassSpec};
use qcorr_linalg::{
    all_permutations, herm_eig, random_state, seeded_rng, symmetrizer_ops, DMatrix, DVector, DenseOperator,
    Error, LinearMap, MapKind, PermTerm, Result, StateVector, SymSpec, C64,
};
use qcorr_young::rational_to_f64;

use crate::constants::bilinear_constant;

/// Largest `k`-copy dimension whose witness is cached as a dense matrix.
pub const DENSE_WITNESS_LIMIT: usize = 1024;

/// Detection threshold: a value above it certifies correlations.
pub const DETECTION_THRESHOLD: f64 = 1e-10;

/// A correlation witness `V` on `k` copies of a class carrier.
#[derive(Debug, Clone)]
pub struct Witness {
    spec: ClassSpec,
    k: usize,
    v: LinearMap,
    dense: Option<DenseOperator>,
    constant: Option<BigRational>,
    alpha: BigRational,
    beta: BigRational,
}

impl Witness {
    pub fn spec(&self) -> &ClassSpec {
        &self.spec
    }

    pub fn copies(&self) -> usize {
        self.k
    }

    pub fn map(&self) -> &LinearMap {
        &self.v
    }

    pub fn dense(&self) -> Option<&DenseOperator> {
        self.dense.as_ref()
    }

    /// Bilinear constant `c` with `V = A - c P^asym`.
    pub fn constant(&self) -> Option<&BigRational> {
        self.constant.as_ref()
    }

    /// `tr(P^sym V) / dim P^sym`.
    pub fn alpha(&self) -> &BigRational {
        &self.alpha
    }

    /// `tr((I - P^sym) V) / dim (I - P^sym)`.
    pub fn beta(&self) -> &BigRational {
        &self.beta
    }

    pub fn carrier_dim(&self) -> usize {
        self.spec.carrier_dim()
    }
}

fn copies_dims(spec: &ClassSpec, k: usize) -> Vec<usize> {
    let block = spec.carrier_factor_dims();
    block.iter().copied().cycle().take(block.len() * k).collect()
}

fn sym_map(spec: &ClassSpec, k: usize) -> Result<LinearMap> {
    let block = spec.carrier_factor_dims().len();
    symmetrizer_ops(&copies_dims(spec, k), &SymSpec::CopySymmetrizer { copies: k, block })
}

/// `a A + sum_i c_i M_i` with `M_i` permutation averages; merged into one
/// permutation average or a dense matrix when `A` has that form.
fn combine(a: &LinearMap, extra: Vec<(f64, LinearMap)>) -> Result<LinearMap> {
    match a.kind() {
        MapKind::SignedPermutationAverage { factor_dims, terms } => {
            let mut all: Vec<(f64, &[PermTerm])> = vec![(1.0, terms.as_slice())];
            let holders: Vec<(f64, Vec<PermTerm>)> = extra
                .iter()
                .map(|(c, m)| match m.kind() {
                    MapKind::SignedPermutationAverage { terms, .. } => Ok((*c, terms.clone())),
                    _ => Err(Error::Unsupported("expected permutation average".into())),
                })
                .collect::<Result<_>>()?;
            for (c, t) in &holders {
                all.push((*c, t.as_slice()));
            }
            merge(factor_dims.clone(), &all)
        }
        MapKind::Dense(op) => {
            let mut m = op.matrix().clone();
            for (c, x) in &extra {
                m += x.to_dense()?.into_matrix() * C64::new(*c, 0.0);
            }
            Ok(LinearMap::dense(DenseOperator::new(op.factor_dims().to_vec(), m)?))
        }
        _ => {
            let mut parts = vec![(1.0, a.clone())];
            parts.extend(extra);
            LinearMap::linear_combination(parts)
        }
    }
}

fn merge(dims: Vec<usize>, parts: &[(f64, &[PermTerm])]) -> Result<LinearMap> {
    let mut acc: std::collections::BTreeMap<Vec<usize>, f64> = Default::default();
    for (c, terms) in parts {
        for t in *terms {
            *acc.entry(t.perm.clone()).or_insert(0.0) += c * t.coefficient();
        }
    }
    let terms = acc
        .into_iter()
        .filter(|(_, c)| c.abs() > 1e-15)
        .map(|(perm, c)| PermTerm { sign: if c < 0.0 { -1 } else { 1 }, perm, scale: c.abs() })
        .collect();
    LinearMap::new(dims.clone(), MapKind::SignedPermutationAverage { factor_dims: dims, terms })
}

fn finish(spec: ClassSpec, k: usize, v: LinearMap, constant: Option<BigRational>, alpha: BigRational, beta: BigRational) -> Result<Witness> {
    let dense = if v.dim() <= DENSE_WITNESS_LIMIT && !matches!(spec, ClassSpec::TwoSeparable3 { .. }) {
        Some(v.to_dense()?)
    } else {
        None
    };
    Ok(Witness { spec, k, v, dense, constant, alpha, beta })
}

/// `V = A - c P^asym` with the optimal class constant `c`.
pub fn bilinear_witness(spec: &ClassSpec) -> Result<Witness> {
    let c = bilinear_constant(spec)?;
    let op = class_operator2(spec)?;
    let cf = rational_to_f64(&c);
    let id = LinearMap::identity(copies_dims(spec, 2))?;
    let v = combine(op.map(), vec![(-cf, id), (cf, sym_map(spec, 2)?)])?;
    let alpha = op.normalized_trace();
    finish(spec.clone(), 2, v, Some(c.clone()), alpha, -c)
}

/// `V = A - (k-1)(I - P^{sym,k})` for a `k`-copy class operator.
pub fn multilinear_witness(op: &ClassOperator) -> Result<Witness> {
    let spec = op.spec().clone();
    let k = op.copies();
    let w = (k - 1) as f64;
    let id = LinearMap::identity(copies_dims(&spec, k))?;
    let v = combine(op.map(), vec![(-w, id), (w, sym_map(&spec, k)?)])?;
    let beta = -BigRational::from_integer(BigInt::from(k - 1));
    finish(spec, k, v, None, op.normalized_trace(), beta)
}

/// Dense `tr(V rho_1 (x) ... (x) rho_k)`, contracting the last factor
/// first so each pass shrinks the operator by `n^2`.
fn dense_contraction(v: &DenseOperator, states: &[&DenseOperator]) -> f64 {
    let mut dim = v.dim();
    let mut owned: Vec<C64> = Vec::new();
    for (pass, rho) in states.iter().rev().enumerate() {
        let cur: &[C64] = if pass == 0 { v.matrix().as_slice() } else { &owned };
        let n = rho.dim();
        let outer = dim / n;
        let mut next = vec![C64::new(0.0, 0.0); outer * outer];
        for jo in 0..outer {
            for b in 0..n {
                let col = &cur[(jo * n + b) * dim..(jo * n + b + 1) * dim];
                for a in 0..n {
                    let r = rho.get(b, a);
                    if r.norm_sqr() == 0.0 {
                        continue;
                    }
                    let out = &mut next[jo * outer..(jo + 1) * outer];
                    for (io, o) in out.iter_mut().enumerate() {
                        *o += col[io * n + a] * r;
                    }
                }
            }
        }
        owned = next;
        dim = outer;
    }
    owned[0].re
}

/// Eigen-decomposition of a density operator as weighted pure states.
fn pure_components(rho: &DenseOperator) -> Result<Vec<(f64, DVector<C64>)>> {
    let e = herm_eig(rho)?;
    Ok(e.values
        .iter()
        .enumerate()
        .filter(|(_, &p)| p > 1e-15)
        .map(|(i, &p)| (p, e.vector(i)))
        .collect())
}

/// `tr(P^{sym,k} rho_1 (x) ... (x) rho_k)` through cycle traces.
pub fn sym_overlap(states: &[&DenseOperator]) -> f64 {
    let k = states.len();
    let perms = all_permutations(k);
    let mut total = C64::new(0.0, 0.0);
    for p in &perms {
        let mut seen = vec![false; k];
        let mut term = C64::new(1.0, 0.0);
        for s in 0..k {
            if seen[s] {
                continue;
            }
            let mut prod = DMatrix::<C64>::identity(states[0].dim(), states[0].dim());
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                prod = states[x].matrix() * prod;
                x = p[x];
            }
            term *= prod.trace();
        }
        total += term;
    }
    total.re / perms.len() as f64
}

fn check_states(w: &Witness, states: &[&DenseOperator]) -> Result<()> {
    if states.len() != w.k {
        return Err(Error::Dimension(format!("{} states for a {}-copy witness", states.len(), w.k)));
    }
    let n = w.carrier_dim();
    if let Some(bad) = states.iter().find(|s| s.dim() != n) {
        return Err(Error::Dimension(format!("state of dim {} for carrier of dim {n}", bad.dim())));
    }
    Ok(())
}

/// `tr((rho_1 (x) ... (x) rho_k) V)`.
pub fn detect_k(w: &Witness, states: &[&DenseOperator]) -> Result<f64> {
    check_states(w, states)?;
    if let Some(v) = &w.dense {
        return Ok(dense_contraction(v, states));
    }
    if let ClassSpec::TwoSeparable3 { d } = w.spec {
        return gme_detect(d, states);
    }
    // weighted pure tuples
    let comps = states.iter().map(|s| pure_components(s)).collect::<Result<Vec<_>>>()?;
    let mut total = 0.0;
    let mut idx = vec![0usize; w.k];
    loop {
        let mut weight = 1.0;
        let mut big = DVector::from_element(1, C64::new(1.0, 0.0));
        for (c, &i) in idx.iter().enumerate() {
            weight *= comps[c][i].0;
            big = big.kronecker(&comps[c][i].1);
        }
        total += weight * w.v.expectation(&big)?.re;
        let mut c = w.k;
        loop {
            if c == 0 {
                return Ok(total);
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < comps[c].len() {
                break;
            }
            idx[c] = 0;
        }
    }
}

fn gme_detect(d: usize, states: &[&DenseOperator]) -> Result<f64> {
    let comps = states.iter().map(|s| pure_components(s)).collect::<Result<Vec<_>>>()?;
    let mut a_part = 0.0;
    let mut idx = vec![0usize; states.len()];
    'outer: loop {
        let weight: f64 = idx.iter().enumerate().map(|(c, &i)| comps[c][i].0).product();
        let vecs: Vec<DVector<C64>> = idx.iter().enumerate().map(|(c, &i)| comps[c][i].1.clone()).collect();
        a_part += weight * tuple_value(&vecs, d)?;
        let mut c = states.len();
        loop {
            if c == 0 {
                break 'outer;
            }
            c -= 1;
            idx[c] += 1;
            if idx[c] < comps[c].len() {
                break;
            }
            idx[c] = 0;
        }
    }
    let k = states.len() as f64;
    let trace_product: f64 = states.iter().map(|s| s.trace().re).product();
    Ok(a_part - (k - 1.0) * (trace_product - sym_overlap(states)))
}

/// `tr((rho_1 (x) rho_2) V)` for a two-copy witness.
pub fn detect2(w: &Witness, rho1: &DenseOperator, rho2: &DenseOperator) -> Result<f64> {
    if w.k != 2 {
        return Err(Error::Domain(format!("detect2 needs a two-copy witness, got k = {}", w.k)));
    }
    detect_k(w, &[rho1, rho2])
}

/// Largest `<x y_2 ... y_k|V|x y_2 ... y_k>` over sampled class members `x`
/// and Haar-random `y_i`; a sound witness keeps this at or below zero.
pub fn soundness_certificate(w: &Witness, samples: usize, seed: u64) -> Result<f64> {
    let mut rng = seeded_rng(seed);
    let mut worst = f64::NEG_INFINITY;
    let n = w.carrier_dim();
    for _ in 0..samples {
        let x = random_member(&w.spec, &mut rng)?.projector();
        let mut states = vec![x];
        for _ in 1..w.k {
            states.push(StateVector::new(vec![n], random_state(&[n], &mut rng)?.into_amplitudes())?.projector());
        }
        let refs: Vec<&DenseOperator> = states.iter().collect();
        worst = worst.max(detect_k(w, &refs)?);
    }
    Ok(worst)
}
