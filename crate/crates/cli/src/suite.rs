//! The acceptance checks, runnable from the binary and from the test target.

use std::time::Instant;

use anyhow::{bail, ensure};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use qcorr_classes::gme::{gme_trace, product_power_value, tuple_value};
use qcorr_classes::{
    class_operator, class_operator_k, coherent_rank, gaussian_null_oracle, gaussian_p0, pure_invariant,
    random_carrier_state, random_member, ClassSpec, ParticleCarrier, Sector,
};
use qcorr_concurrence::{
    a8_depolarized, gauss_concurrences, gauss_fidelity, generalized_schmidt, wootters_2q,
};
use qcorr_fock::{a8_state, build_fock, random_pure_gaussian_rng, Parity};
use qcorr_linalg::{c64, herm_eig, random_density, random_state, seeded_rng, DMatrix, DVector, DenseOperator, QRng, C64};
use qcorr_typicality::{class_params, mc_fraction, optimal_average, pmax_critical, SpectrumProfile};
use qcorr_witnesses::{
    bilinear_constant, bilinear_witness, detect2, detect_k, extreme_rays, gauss_constant, gauss_constant_numeric,
    gauss_inequality_matrix, inclusion_exclusion, inequality_matrix, multilinear_witness, ppt_min_eigenvalue,
    rational_inverse, soundness_certificate, subset_sums, DETECTION_THRESHOLD,
};
use qcorr_young::{binomial, binomial_int, rational_to_f64};
use rand::Rng;

use crate::families;
use crate::output::{fmt_float, Record};

pub const CRITERIA: usize = 11;

#[derive(Debug, Clone)]
pub struct CriterionResult {
    pub number: usize,
    pub name: &'static str,
    pub passed: bool,
    pub skipped: bool,
    pub detail: String,
    pub seconds: f64,
}

impl CriterionResult {
    pub fn line(&self) -> String {
        let verdict = match (self.skipped, self.passed) {
            (true, _) => "SKIP",
            (false, true) => "PASS",
            (false, false) => "FAIL",
        };
        format!("criterion {:>2}: {verdict} {} ({:.2} s) {}", self.number, self.name, self.seconds, self.detail)
    }

    pub fn record(&self) -> Record {
        Record::new()
            .with("criterion", self.number)
            .with("name", self.name)
            .with("passed", self.passed)
            .with("skipped", self.skipped)
            .with("seconds", self.seconds)
            .with("detail", self.detail.clone())
    }
}

type Check = fn() -> anyhow::Result<String>;

const CHECKS: [(&str, Check); CRITERIA] = [
    ("a8 threshold", a8_threshold),
    ("two-copy Gaussian projector", gaussian_projector),
    ("coherent ranks", ranks),
    ("pure-state exactness", pure_exactness),
    ("mixture soundness", mixture_soundness),
    ("witness constants", constants),
    ("Haar averages", haar_means),
    ("typicality bounds", typicality),
    ("concurrences", concurrences),
    ("invariant cones", cones),
    ("three-party witness", tripartite),
];

/// Criteria that `--skip-slow` leaves out.
const SLOW: [usize; 1] = [5];

pub fn run_one(number: usize) -> CriterionResult {
    let (name, check) = CHECKS[number - 1];
    let start = Instant::now();
    let outcome = std::panic::catch_unwind(check);
    let seconds = start.elapsed().as_secs_f64();
    let (passed, detail) = match outcome {
        Ok(Ok(d)) => (true, d),
        Ok(Err(e)) => (false, format!("{e:#}")),
        Err(_) => (false, "check panicked".to_string()),
    };
    CriterionResult { number, name, passed, skipped: false, detail, seconds }
}

/// Every criterion, each on its own thread, reported in order.
pub fn run_all(skip_slow: bool) -> Vec<CriterionResult> {
    run_selected(skip_slow, &[])
}

/// The listed criteria (all of them when `only` is empty).
pub fn run_selected(skip_slow: bool, only: &[usize]) -> Vec<CriterionResult> {
    std::thread::scope(|s| {
        let handles: Vec<_> = (1..=CRITERIA)
            .filter(|n| only.is_empty() || only.contains(n))
            .map(|n| {
                s.spawn(move || {
                    if skip_slow && SLOW.contains(&n) {
                        let name = CHECKS[n - 1].0;
                        CriterionResult { number: n, name, passed: false, skipped: true, detail: String::new(), seconds: 0.0 }
                    } else {
                        run_one(n)
                    }
                })
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("criterion thread")).collect()
    })
}

fn q(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn pure(v: &DVector<C64>) -> DenseOperator {
    DenseOperator::from_matrix(v * v.adjoint())
}

fn member_mixture(spec: &ClassSpec, terms: usize, rng: &mut QRng) -> anyhow::Result<DenseOperator> {
    let n = spec.carrier_dim();
    let weights: Vec<f64> = (0..terms).map(|_| rng.random::<f64>() + 0.05).collect();
    let total: f64 = weights.iter().sum();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for w in weights {
        let v = random_member(spec, rng)?.into_amplitudes();
        m += &v * v.adjoint() * c64(w / total, 0.0);
    }
    Ok(DenseOperator::from_matrix(m))
}

fn a8_threshold() -> anyhow::Result<String> {
    let start = Instant::now();
    let p_cr = families::a8_threshold()?;
    let seconds = start.elapsed().as_secs_f64();
    ensure!((p_cr - 8.0 / 11.0).abs() <= 1e-9, "p_cr = {p_cr}");
    let alg = build_fock(4)?;
    for p in [0.0, 0.1, 0.25, 0.5, 0.7, 0.72, 0.75, 0.9, 1.0] {
        let (c_plus, _) = gauss_concurrences(&a8_depolarized(&alg, p)?, &alg)?;
        let want = (1.0 - 11.0 * p / 8.0).max(0.0);
        ensure!((c_plus - want).abs() <= 1e-10, "C+ at p = {p}: {c_plus} vs {want}");
    }
    ensure!(seconds < 1.0, "threshold took {seconds:.3} s");
    Ok(format!("p_cr={} in {seconds:.3} s", fmt_float(p_cr)))
}

fn gaussian_projector() -> anyhow::Result<String> {
    let mut worst: f64 = 0.0;
    for d in 2..=4 {
        let closed = gaussian_p0(d)?;
        let oracle = gaussian_null_oracle(d)?;
        worst = worst.max(closed.distance(&oracle));
        let exact = rational_to_f64(&BigRational::from_integer(binomial_int(2 * d, d)));
        ensure!((closed.trace().re - exact).abs() <= 1e-9, "trace at d = {d}");
        ensure!(herm_eig(&oracle)?.count_above(0.5) == exact as usize, "oracle rank at d = {d}");
    }
    ensure!(worst <= 1e-10, "Frobenius gap {worst:e}");
    Ok(format!("max gap {worst:.1e}"))
}

fn ranks() -> anyhow::Result<String> {
    let mut cases = vec![(ClassSpec::Distinguishable { dims: vec![2, 2] }, 2)];
    for d in 2..=3 {
        for k in 2..=3 {
            cases.push((ClassSpec::Bosonic { d, l: 2 }, k));
        }
    }
    for d in 4..=5 {
        for k in 2..=3 {
            cases.push((ClassSpec::Fermionic { d, l: 2 }, k));
        }
    }
    for (spec, k) in &cases {
        let mut op = class_operator_k(spec, *k)?;
        let rank_a = op.compute_rank()?;
        let sym: usize = op.sym_dim().try_into()?;
        let expected = coherent_rank(spec, *k)?;
        ensure!(sym - rank_a == expected, "{spec} k={k}: {} vs {expected}", sym - rank_a);
        ensure!(op.trace() == &BigRational::from_integer(BigInt::from(rank_a)), "{spec} k={k}: trace");
    }
    Ok(format!("{} cases", cases.len()))
}

fn exactness_specs() -> Vec<ClassSpec> {
    vec![
        ClassSpec::Distinguishable { dims: vec![2, 2] },
        ClassSpec::Distinguishable { dims: vec![2, 2, 2] },
        ClassSpec::Bosonic { d: 2, l: 3 },
        ClassSpec::Fermionic { d: 5, l: 2 },
        ClassSpec::Gaussian { d: 3, sector: Sector::Plus },
        ClassSpec::Gaussian { d: 4, sector: Sector::Plus },
    ]
}

fn pure_exactness() -> anyhow::Result<String> {
    let mut rng = seeded_rng(401);
    let mut worst_member: f64 = 0.0;
    let mut smallest_generic = f64::INFINITY;
    for spec in exactness_specs() {
        let w = bilinear_witness(&spec)?;
        // with c = 0 the witness is -tr(P^asym rho^(x)2), which vanishes on pure states
        let vacuous = w.constant().is_some_and(Zero::is_zero);
        for _ in 0..1000 {
            let m = random_member(&spec, &mut rng)?;
            let rm = m.projector();
            worst_member = worst_member.max(detect2(&w, &rm, &rm)?.abs());
            let psi = random_carrier_state(&spec, &mut rng)?;
            let rp = psi.projector();
            let v = detect2(&w, &rp, &rp)?;
            ensure!((v - pure_invariant(&psi, &spec)?).abs() <= 1e-9, "{spec}: witness and invariant disagree");
            if !vacuous {
                ensure!(v > DETECTION_THRESHOLD, "{spec}: Haar state not detected ({v:e})");
                smallest_generic = smallest_generic.min(v);
            }
        }
    }
    ensure!(worst_member <= 1e-9, "member value {worst_member:e}");
    Ok(format!("max member |value| {worst_member:.1e}, min Haar value {smallest_generic:.2e}"))
}

fn mixture_soundness() -> anyhow::Result<String> {
    let mut rng = seeded_rng(501);
    let mut worst = f64::NEG_INFINITY;
    let bilinear = [
        ClassSpec::Distinguishable { dims: vec![2, 2] },
        ClassSpec::Distinguishable { dims: vec![2, 2, 2] },
        ClassSpec::Bosonic { d: 2, l: 3 },
        ClassSpec::Fermionic { d: 5, l: 2 },
        ClassSpec::Gaussian { d: 4, sector: Sector::Plus },
        ClassSpec::Gaussian { d: 4, sector: Sector::Minus },
    ];
    for spec in &bilinear {
        let w = bilinear_witness(spec)?;
        for _ in 0..500 {
            let a = member_mixture(spec, 10, &mut rng)?;
            let b = member_mixture(spec, 10, &mut rng)?;
            let v = detect2(&w, &a, &b)?;
            ensure!(v <= DETECTION_THRESHOLD, "{spec}: {v:e}");
            worst = worst.max(v);
        }
    }
    let schmidt = ClassSpec::SchmidtBounded { da: 3, db: 3, n: 2 };
    let w = multilinear_witness(&class_operator(&schmidt)?)?;
    for _ in 0..500 {
        let mix = member_mixture(&schmidt, 10, &mut rng)?;
        let y = pure(random_state(&[9], &mut rng)?.amplitudes());
        let z = pure(random_state(&[9], &mut rng)?.amplitudes());
        let v = detect_k(&w, &[&mix, &y, &z])?;
        ensure!(v <= DETECTION_THRESHOLD, "{schmidt}: {v:e}");
        worst = worst.max(v);
    }
    let gme = ClassSpec::TwoSeparable3 { d: 2 };
    let w = multilinear_witness(&class_operator(&gme)?)?;
    for _ in 0..4 {
        let mix = member_mixture(&gme, 10, &mut rng)?;
        let others: Vec<DenseOperator> =
            (0..5).map(|_| random_state(&[8], &mut rng).map(|v| pure(v.amplitudes()))).collect::<Result<_, _>>()?;
        let mut states = vec![&mix];
        states.extend(others.iter());
        let v = detect_k(&w, &states)?;
        ensure!(v <= DETECTION_THRESHOLD, "{gme}: {v:e}");
        worst = worst.max(v);
    }
    Ok(format!("max value {worst:.2e}"))
}

fn constants() -> anyhow::Result<String> {
    for l in 2..=5 {
        let c = bilinear_constant(&ClassSpec::Distinguishable { dims: vec![2; l] })?;
        ensure!(c == BigRational::one() - q(1, 1 << (l - 1)), "dist L={l}: {c}");
    }
    for (l, want) in [(2, q(2, 3)), (3, q(9, 10)), (4, q(34, 35))] {
        let c = bilinear_constant(&ClassSpec::Bosonic { d: 2, l })?;
        ensure!(c == want, "bos L={l}: {c}");
    }
    for d in 4..=6 {
        let c = bilinear_constant(&ClassSpec::Fermionic { d, l: 2 })?;
        ensure!(c == q(1, 3), "ferm d={d}: {c}");
    }
    ensure!(gauss_constant(4)? == q(1, 4), "c_4 = {}", gauss_constant(4)?);
    for d in 2..=5 {
        let exact = rational_to_f64(&gauss_constant(d)?);
        let numeric = gauss_constant_numeric(d)?;
        ensure!((exact - numeric).abs() <= 1e-10, "Gaussian d={d}: {exact} vs {numeric}");
    }
    let mut worst = f64::NEG_INFINITY;
    for spec in [
        ClassSpec::Distinguishable { dims: vec![2, 2] },
        ClassSpec::Bosonic { d: 2, l: 2 },
        ClassSpec::Bosonic { d: 2, l: 3 },
        ClassSpec::Fermionic { d: 4, l: 2 },
        ClassSpec::Gaussian { d: 4, sector: Sector::Plus },
    ] {
        let v = soundness_certificate(&bilinear_witness(&spec)?, 100, 601)?;
        ensure!(v <= DETECTION_THRESHOLD, "{spec}: certificate {v:e}");
        worst = worst.max(v);
    }
    Ok(format!("a_4=3/4, max certificate {worst:.1e}"))
}

fn haar_means() -> anyhow::Result<String> {
    let start = Instant::now();
    let shards = qcorr_typicality::thread_count().max(1);
    let cases = [
        (ClassSpec::Distinguishable { dims: vec![2, 2] }, "0.7,0.2,0.06,0.04"),
        (ClassSpec::Fermionic { d: 4, l: 2 }, "0.6,0.3,0.025x4"),
        (ClassSpec::Gaussian { d: 4, sector: Sector::Plus }, "0.65,0.05x7"),
        (ClassSpec::SchmidtBounded { da: 3, db: 3, n: 2 }, "0.8,0.025x8"),
    ];
    let mut worst_sigma: f64 = 0.0;
    for (spec, text) in &cases {
        let spectrum: SpectrumProfile = text.parse()?;
        let report = mc_fraction(&spectrum, spec, 10_000, 701, shards)?;
        let exact = optimal_average(&class_params(spec)?, spectrum.p_max());
        let sigmas = (report.mean_value - exact).abs() / report.mean_stderr;
        ensure!(sigmas <= 4.0, "{spec}: mean {} vs {exact} ({sigmas:.2} sigma)", report.mean_value);
        worst_sigma = worst_sigma.max(sigmas);
    }
    let seconds = start.elapsed().as_secs_f64();
    ensure!(seconds < 60.0, "took {seconds:.1} s");
    Ok(format!("max deviation {worst_sigma:.2} sigma in {seconds:.1} s"))
}

fn typicality() -> anyhow::Result<String> {
    let shards = qcorr_typicality::thread_count().max(1);
    let cases = [
        (ClassSpec::Distinguishable { dims: vec![2, 2] }, q(2, 3)),
        (ClassSpec::Fermionic { d: 4, l: 2 }, q(3, 4)),
        (ClassSpec::Gaussian { d: 4, sector: Sector::Plus }, q(4, 5)),
    ];
    let mut points = 0;
    let mut tightest = f64::INFINITY;
    for (spec, want) in &cases {
        let params = class_params(spec)?;
        let crit = pmax_critical(&params)?;
        ensure!(&crit == want, "{spec}: p_cr = {crit}");
        let p_cr = rational_to_f64(&crit);
        let n = spec.carrier_dim();
        let mut j = 0;
        while p_cr + 0.05 * j as f64 <= 1.0 + 1e-12 {
            let p = (p_cr + 0.05 * j as f64).min(1.0);
            let s = SpectrumProfile::with_pmax(n, p)?;
            let r = mc_fraction(&s, spec, 10_000, 801 + j as u64, shards)?;
            let margin = r.fraction - (r.analytic_bound - 3.0 * r.stderr);
            ensure!(margin >= 0.0, "{spec} p_max={p}: fraction {} below bound {}", r.fraction, r.analytic_bound);
            tightest = tightest.min(margin);
            points += 1;
            j += 1;
        }
        let flat = mc_fraction(&SpectrumProfile::uniform(n)?, spec, 1_000, 899, shards)?;
        ensure!(flat.detected == 0, "{spec}: maximally mixed state detected");
    }
    Ok(format!("{points} spectra, smallest margin {tightest:.3}"))
}

fn concurrences() -> anyhow::Result<String> {
    let werner = families::werner_threshold()?;
    ensure!((werner - 2.0 / 3.0).abs() <= 1e-9, "Werner p_cr = {werner}");
    let a8 = families::a8_threshold()?;
    ensure!((a8 - 8.0 / 11.0).abs() <= 1e-9, "a8 p_cr = {a8}");
    for (d, lambda) in [(5, families::default_pairs(5)), (6, families::default_pairs(6)), (5, vec![0.9, 0.3]), (6, vec![0.6, 0.6, 0.5])] {
        let solved = families::ferm_depol_threshold(d, &lambda)?;
        let formula = families::ferm_depol_formula(d, &lambda);
        ensure!((solved - formula).abs() <= 1e-9, "fermion pair d={d}: {solved} vs {formula}");
    }
    let alg = build_fock(4)?;
    let mut rng = seeded_rng(901);
    for parity in [Parity::Plus, Parity::Minus] {
        for _ in 0..20 {
            let g = random_pure_gaussian_rng(&alg, parity, &mut rng)?;
            let (cp, cm) = gauss_concurrences(&g.projector(), &alg)?;
            ensure!(cp.abs() <= 1e-9 && cm.abs() <= 1e-9, "pure Gaussian state: ({cp}, {cm})");
        }
    }
    for _ in 0..20 {
        let psi = random_state(&[8], &mut rng)?;
        let dec = generalized_schmidt(&psi, &alg)?;
        let back = dec.reconstruct(&alg)?;
        ensure!((back - psi.amplitudes()).norm() <= 1e-9, "generalized Schmidt roundtrip");
    }
    let fid = gauss_fidelity(&a8_state(&alg)?, &alg)?;
    ensure!((fid.fidelity - 0.5).abs() <= 1e-9, "a8 Gaussian fidelity {}", fid.fidelity);
    for _ in 0..200 {
        let rho = random_density(&[2, 2], rng.random_range(1..=4), &mut rng)?;
        let c = wootters_2q(&rho)?;
        let ppt = ppt_min_eigenvalue(&rho)?;
        if c > 1e-8 && ppt > -1e-8 || c < 1e-10 && ppt < -1e-8 {
            bail!("concurrence {c} and partial-transpose eigenvalue {ppt} disagree");
        }
    }
    Ok(format!("Werner {}, a8 {}", fmt_float(werner), fmt_float(a8)))
}

fn basis_column(n: usize, i: usize) -> DVector<C64> {
    let mut v = DVector::zeros(n);
    v[i] = c64(1.0, 0.0);
    v
}

fn cones() -> anyhow::Result<String> {
    let mut rng = seeded_rng(1001);
    for l in 1..=5 {
        let a: Vec<BigRational> =
            (0..1 << l).map(|_| q(rng.random_range(-50..50), rng.random_range(1..9))).collect();
        ensure!(inclusion_exclusion(&subset_sums(&a)) == a, "inclusion-exclusion at L={l}");
    }

    let (l, d) = (3, 2);
    let pc = ParticleCarrier::new(d, l, false);
    let full = d.pow(l as u32);
    let w = DMatrix::from_fn(full, pc.dim(), |i, j| pc.embed(&basis_column(pc.dim(), j))[i]);
    let ww = w.kronecker(&w);
    let proj = &ww * ww.adjoint();
    let dist_rays = extreme_rays(&ClassSpec::Distinguishable { dims: vec![d; l] })?;
    let bos_rays = extreme_rays(&ClassSpec::Bosonic { d, l })?;
    let mut gap: f64 = 0.0;
    for (y, ray) in dist_rays.iter().enumerate() {
        let m = (y as u32).count_ones() as usize;
        let lhs = &proj * ray.operator()?.matrix() * &proj;
        let scale = binomial(l, m).to_string().parse::<f64>()?;
        let rhs = &ww * bos_rays[m].operator()?.matrix() * ww.adjoint() / c64(scale, 0.0);
        gap = gap.max((lhs - rhs).norm());
    }
    ensure!(gap <= 1e-12, "restriction identity gap {gap:e}");

    let specs = [
        ClassSpec::Distinguishable { dims: vec![2, 2, 2] },
        ClassSpec::Bosonic { d: 3, l: 3 },
        ClassSpec::Fermionic { d: 6, l: 3 },
        ClassSpec::Gaussian { d: 6, sector: Sector::Plus },
    ];
    for spec in &specs {
        let n = inequality_matrix(spec)?.len();
        for (j, ray) in extreme_rays(spec)?.iter().enumerate() {
            ensure!(ray.is_member()?, "{spec} ray {j} outside the cone");
            ensure!(ray.tight_count()? == n - 1, "{spec} ray {j}: {} tight of {n}", ray.tight_count()?);
        }
    }
    for d in 1..=64 {
        rational_inverse(&gauss_inequality_matrix(d)).map_err(|e| anyhow::anyhow!("d={d}: {e}"))?;
    }
    Ok(format!("restriction gap {gap:.1e}"))
}

fn ghz() -> DVector<C64> {
    let mut v = DVector::zeros(8);
    let h = 0.5f64.sqrt();
    v[0] = c64(h, 0.0);
    v[7] = c64(h, 0.0);
    v
}

fn tripartite() -> anyhow::Result<String> {
    let spec = ClassSpec::TwoSeparable3 { d: 2 };
    let mut rng = seeded_rng(1101);
    let mut worst: f64 = 0.0;
    for _ in 0..200 {
        let m = random_member(&spec, &mut rng)?;
        worst = worst.max(product_power_value(m.amplitudes(), 2)?.abs());
    }
    ensure!(worst <= 1e-9, "biseparable value {worst:e}");
    let g = product_power_value(&ghz(), 2)?;
    ensure!((g - 1.0 / 64.0).abs() <= 1e-12, "GHZ value {g}");
    for _ in 0..50 {
        let psi = random_state(&[8], &mut rng)?.into_amplitudes();
        let gram = tuple_value(&vec![psi.clone(); 6], 2)?;
        let fact = product_power_value(&psi, 2)?;
        ensure!((gram - fact).abs() <= 1e-9, "factorization {gram} vs {fact}");
    }
    let op = class_operator(&spec)?;
    let x = gme_trace(2) / BigRational::from_integer(binomial_int(8 + 5, 6));
    ensure!(op.normalized_trace() == x, "normalized trace {}", op.normalized_trace());
    Ok(format!("GHZ=1/64, X={x} ({})", fmt_float(rational_to_f64(&x))))
}
