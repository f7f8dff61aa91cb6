use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use qcorr_classes::{class_operator_k, coherent_rank, pure_invariant, random_member, ClassSpec, Sector};
use qcorr_concurrence::{convex_gaussian, gauss_fidelity, generalized_schmidt};
use qcorr_fock::{build_fock, sector_indices, Parity};
use qcorr_linalg::{herm_eig, seeded_rng, DenseOperator, StateVector};
use qcorr_typicality::{asymptotics, class_params, lower_bound, mc_fraction, pmax_critical, Regime, SpectrumProfile, WitnessFamily};
use qcorr_witnesses::{
    basis_labels, detect_k, extreme_rays, gauss_constant, gauss_constant_numeric, inequality_matrix, optimal_detect, ppt_min_eigenvalue, soundness_certificate, Witness, DETECTION_THRESHOLD,
};
use qcorr_young::{binomial, rational_string, rational_to_f64, YoungDiagram};

use crate::args::*;
use crate::families;
use crate::output::{fmt_float, Format, Output, Record};
use crate::suite;

/// Largest mode count for the dense projector comparison.
const MAX_PROJECTOR_MODES: usize = 5;
/// Largest mode count for the numeric constant maximization.
const MAX_NUMERIC_CONSTANT_MODES: usize = 6;

pub struct Outcome {
    pub output: Output,
    /// False when a check inside the command failed.
    pub ok: bool,
}

impl From<Output> for Outcome {
    fn from(output: Output) -> Self {
        Self { output, ok: true }
    }
}

pub fn class_spec(a: &ClassArgs) -> anyhow::Result<ClassSpec> {
    let need = |v: Option<usize>, name: &str| v.ok_or_else(|| anyhow!("--{name} is required for --class {:?}", a.class));
    let spec = match a.class {
        ClassTag::Dist => {
            if a.dims.is_empty() {
                bail!("--dims is required for --class dist");
            }
            ClassSpec::Distinguishable { dims: a.dims.clone() }
        }
        ClassTag::Bos => ClassSpec::Bosonic { d: need(a.d, "d")?, l: need(a.l, "L")? },
        ClassTag::Ferm => ClassSpec::Fermionic { d: need(a.d, "d")?, l: need(a.l, "L")? },
        ClassTag::Gauss => ClassSpec::Gaussian {
            d: need(a.d, "d")?,
            sector: match a.sector {
                SectorArg::Plus => Sector::Plus,
                SectorArg::Minus => Sector::Minus,
                SectorArg::Both => Sector::Both,
            },
        },
        ClassTag::Schmidt => {
            let d = a.d;
            ClassSpec::SchmidtBounded {
                da: need(a.da.or(d), "da")?,
                db: need(a.db.or(d), "db")?,
                n: need(a.n, "n")?,
            }
        }
        ClassTag::Gme => ClassSpec::TwoSeparable3 { d: need(a.d, "d")? },
    };
    spec.validate()?;
    Ok(spec)
}

/// A density matrix from operator JSON, or the projector onto vector JSON.
pub fn read_state(path: &str) -> anyhow::Result<DenseOperator> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    if let Ok(op) = DenseOperator::from_json(&text) {
        return Ok(op);
    }
    let v = StateVector::from_json(&text).with_context(|| format!("{path} is neither operator nor vector JSON"))?;
    Ok(v.projector())
}

fn read_vector(path: &str) -> anyhow::Result<StateVector> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {path}"))?;
    Ok(StateVector::from_json(&text)?)
}

fn class_witness(spec: &ClassSpec) -> anyhow::Result<Witness> {
    Ok(qcorr_typicality::class_witness(spec)?)
}

fn on_carrier(rho: DenseOperator, spec: &ClassSpec) -> anyhow::Result<DenseOperator> {
    if rho.dim() != spec.carrier_dim() {
        bail!("state of dim {} for carrier of dim {}", rho.dim(), spec.carrier_dim());
    }
    Ok(rho.with_factor_dims(vec![spec.carrier_dim()])?)
}

pub fn dispatch(cli: &Cli) -> anyhow::Result<Outcome> {
    let tol = cli.tol.unwrap_or(DETECTION_THRESHOLD);
    Ok(match &cli.command {
        Command::Dims(a) => dims(a)?.into(),
        Command::Class(c) => class(c, cli.seed)?.into(),
        Command::Witness(c) => witness(c, cli.seed, tol)?.into(),
        Command::Cone(c) => cone(c, tol)?.into(),
        Command::Conc(c) => conc(c)?.into(),
        Command::Gauss(c) => gauss(c)?.into(),
        Command::Typicality(c) => typicality(c, cli.seed)?.into(),
        Command::Demo(c) => demo(c, cli.format)?,
    })
}

fn dims(a: &DimsArgs) -> anyhow::Result<Output> {
    let rows: Vec<usize> = a
        .young
        .split(',')
        .map(|s| s.trim().parse::<usize>())
        .collect::<Result<_, _>>()
        .context("--young expects comma-separated row lengths")?;
    let lambda = YoungDiagram::new(rows)?;
    Ok(Output::Record(
        Record::new()
            .with("g", lambda.hook_product().to_string())
            .with("f", lambda.fill_product(a.n).to_string())
            .with("dim", lambda.dim_irrep(a.n).to_string()),
    ))
}

fn class(c: &ClassCommand, seed: u64) -> anyhow::Result<Output> {
    match c {
        ClassCommand::Info { class, k, rank } => {
            let spec = class_spec(class)?;
            let k = k.unwrap_or(spec.natural_copies());
            let mut op = class_operator_k(&spec, k)?;
            let mut r = Record::new()
                .with("class", spec.to_string())
                .with("carrier_dim", spec.carrier_dim())
                .with("k", k)
                .with("trace", op.trace())
                .with("x", op.normalized_trace())
                .with("sym_dim", op.sym_dim().to_string());
            if let Ok(cr) = coherent_rank(&spec, k) {
                r = r.with("coherent_rank", cr);
            }
            if *rank {
                let ra = op.compute_rank()?;
                r = r.with("rank", ra);
            }
            Ok(Output::Record(r))
        }
        ClassCommand::Invariant { class, state } => {
            let spec = class_spec(class)?;
            let v = read_vector(state)?;
            let v = StateVector::new(spec.carrier_factor_dims(), v.into_amplitudes())?;
            Ok(Output::Record(
                Record::new().with("class", spec.to_string()).with("invariant", pure_invariant(&v, &spec)?),
            ))
        }
        ClassCommand::Member { class } => {
            let spec = class_spec(class)?;
            let v = random_member(&spec, &mut seeded_rng(seed))?;
            let text = v.to_json();
            Ok(Output::Message(text.clone(), Record::new().with("class", spec.to_string()).with("state", text)))
        }
    }
}

fn witness_record(spec: &ClassSpec, w: &Witness) -> Record {
    let mut r = Record::new().with("class", spec.to_string()).with("k", w.copies());
    if let Some(c) = w.constant() {
        r = r.with("c", c);
    }
    r.with("alpha", w.alpha()).with("beta", w.beta()).with("carrier_dim", w.carrier_dim())
}

fn witness(c: &WitnessCommand, seed: u64, tol: f64) -> anyhow::Result<Output> {
    match c {
        WitnessCommand::Build { class } => {
            let spec = class_spec(class)?;
            Ok(Output::Record(witness_record(&spec, &class_witness(&spec)?)))
        }
        WitnessCommand::Detect { class, rho, sigma } => {
            let spec = class_spec(class)?;
            let w = class_witness(&spec)?;
            let r1 = on_carrier(read_state(rho)?, &spec)?;
            let r2 = match sigma {
                Some(p) => on_carrier(read_state(p)?, &spec)?,
                None => r1.clone(),
            };
            let mut states = vec![&r1];
            states.extend(std::iter::repeat(&r2).take(w.copies() - 1));
            let value = detect_k(&w, &states)?;
            Ok(Output::Record(
                Record::new().with("class", spec.to_string()).with("value", value).with("detected", value > tol),
            ))
        }
        WitnessCommand::Certify { class, samples } => {
            let spec = class_spec(class)?;
            let w = class_witness(&spec)?;
            let worst = soundness_certificate(&w, *samples, seed)?;
            Ok(Output::Record(
                Record::new().with("class", spec.to_string()).with("max_value", worst).with("sound", worst <= tol),
            ))
        }
    }
}

fn join_rationals(v: &[BigRational]) -> String {
    v.iter().map(rational_string).collect::<Vec<_>>().join(" ")
}

fn cone(c: &ConeCommand, tol: f64) -> anyhow::Result<Output> {
    match c {
        ConeCommand::Inequalities { class } => {
            let spec = class_spec(class)?;
            let m = inequality_matrix(&spec)?;
            let labels = basis_labels(&spec)?;
            Ok(Output::Table(
                m.iter()
                    .enumerate()
                    .map(|(i, row)| Record::new().with("row", i).with("label", labels[i].clone()).with("coefficients", join_rationals(row)))
                    .collect(),
            ))
        }
        ConeCommand::Rays { class } => {
            let spec = class_spec(class)?;
            let labels = basis_labels(&spec)?;
            let rays = extreme_rays(&spec)?;
            let mut rows = Vec::new();
            for (i, ray) in rays.iter().enumerate() {
                rows.push(
                    Record::new()
                        .with("ray", i)
                        .with("basis", labels.join(" "))
                        .with("coefficients", join_rationals(ray.coefficients()))
                        .with("tight", ray.tight_count()?),
                );
            }
            Ok(Output::Table(rows))
        }
        ConeCommand::Detect { class, state } => {
            let spec = class_spec(class)?;
            let rho = on_carrier(read_state(state)?, &spec)?;
            let value = optimal_detect(&rho, &spec)?;
            Ok(Output::Record(
                Record::new().with("class", spec.to_string()).with("value", value).with("detected", value > tol),
            ))
        }
    }
}

fn conc(c: &ConcCommand) -> anyhow::Result<Output> {
    match c {
        ConcCommand::TwoQubit { state } => {
            let rho = read_state(state)?.with_factor_dims(vec![2, 2])?;
            Ok(Output::Record(
                Record::new()
                    .with("concurrence", qcorr_concurrence::wootters_2q(&rho)?)
                    .with("ppt_min_eigenvalue", ppt_min_eigenvalue(&rho)?),
            ))
        }
        ConcCommand::Gauss4 { state } => {
            let alg = build_fock(4)?;
            let rho = read_state(state)?;
            let report = convex_gaussian(&rho, &alg)?;
            let mut r = Record::new()
                .with("c_plus", report.c_plus)
                .with("c_minus", report.c_minus)
                .with("convex_gaussian", report.convex_gaussian)
                .with("max_terms", report.max_terms);
            let odd_weight: f64 = sector_indices(4, Parity::Minus).iter().map(|&i| rho.get(i, i).re).sum();
            if odd_weight.abs() <= 1e-10 {
                let f = gauss_fidelity(&rho, &alg)?;
                r = r
                    .with("fidelity", f.fidelity)
                    .with("distance_lower", f.distance_lower)
                    .with("distance_upper", f.distance_upper);
            }
            Ok(Output::Record(r))
        }
        ConcCommand::Schmidt { state } => {
            let alg = build_fock(4)?;
            let v = read_vector(state)?;
            let dec = generalized_schmidt(&v, &alg)?;
            let p = dec.p;
            Ok(Output::Record(
                Record::new()
                    .with("p", p)
                    .with("c_plus", 2.0 * p * (1.0 - p * p).sqrt())
                    .with("gaussian_state", dec.gaussian.to_json()),
            ))
        }
        ConcCommand::Threshold { family, d, lambda } => {
            let r = match family {
                Family::A8Depol => Record::new().with("family", "a8-depol").with("p_cr", families::a8_threshold()?),
                Family::Werner => Record::new().with("family", "werner").with("p_cr", families::werner_threshold()?),
                Family::FermDepol => {
                    let lambda = if lambda.is_empty() { families::default_pairs(*d) } else { lambda.clone() };
                    Record::new()
                        .with("family", "ferm-depol")
                        .with("d", *d)
                        .with("p_cr", families::ferm_depol_threshold(*d, &lambda)?)
                        .with("p_formula", families::ferm_depol_formula(*d, &lambda))
                }
            };
            Ok(Output::Record(r))
        }
    }
}

fn gauss(c: &GaussCommand) -> anyhow::Result<Output> {
    match c {
        GaussCommand::Projector { d } => {
            if *d == 0 || *d > MAX_PROJECTOR_MODES {
                bail!("dense projector comparison supports 1 <= d <= {MAX_PROJECTOR_MODES}");
            }
            let closed = qcorr_classes::gaussian_p0(*d)?;
            let oracle = qcorr_classes::gaussian_null_oracle(*d)?;
            Ok(Output::Record(
                Record::new()
                    .with("d", *d)
                    .with("exact_trace", binomial(2 * d, *d).to_string())
                    .with("trace", closed.trace().re)
                    .with("oracle_rank", herm_eig(&oracle)?.count_above(0.5))
                    .with("frobenius_error", closed.distance(&oracle)),
            ))
        }
        GaussCommand::Constant { d } => {
            let c = gauss_constant(*d)?;
            let mut r = Record::new().with("d", *d).with("c", &c).with("a", BigRational::one() - &c);
            if *d <= MAX_NUMERIC_CONSTANT_MODES {
                r = r.with("numeric", gauss_constant_numeric(*d)?);
            }
            Ok(Output::Record(r))
        }
    }
}

/// Compact spectrum text with runs of equal values written as `valuexcount`.
fn spectrum_text(s: &SpectrumProfile) -> String {
    let mut parts: Vec<(String, usize)> = Vec::new();
    for &v in s.values() {
        let t = fmt_float(v);
        match parts.last_mut() {
            Some((last, count)) if *last == t => *count += 1,
            _ => parts.push((t, 1)),
        }
    }
    parts
        .into_iter()
        .map(|(t, c)| if c == 1 { t } else { format!("{t}x{c}") })
        .collect::<Vec<_>>()
        .join(",")
}

/// `start:stop:step` values of a `pmax:` sweep, inclusive of `stop`.
fn parse_sweep(s: &str) -> anyhow::Result<Vec<f64>> {
    let parts: Vec<&str> = s.split(':').collect();
    if parts.len() != 4 || parts[0] != "pmax" {
        bail!("--sweep expects pmax:start:stop:step, got {s}");
    }
    let num = |t: &str| t.parse::<f64>().with_context(|| format!("bad number {t} in --sweep"));
    let (start, stop, step) = (num(parts[1])?, num(parts[2])?, num(parts[3])?);
    if step <= 0.0 || stop < start {
        bail!("--sweep needs step > 0 and stop >= start");
    }
    let count = ((stop - start) / step + 1e-9).floor() as usize;
    Ok((0..=count).map(|i| start + step * i as f64).collect())
}

fn typicality(c: &TypicalityCommand, seed: u64) -> anyhow::Result<Output> {
    match c {
        TypicalityCommand::Params { class } => {
            let spec = class_spec(class)?;
            let p = class_params(&spec)?;
            let crit = pmax_critical(&p)?;
            let family = match p.family {
                WitnessFamily::Bilinear => "bilinear",
                WitnessFamily::Multilinear => "multilinear",
            };
            Ok(Output::Record(
                Record::new()
                    .with("class", spec.to_string())
                    .with("family", family)
                    .with("n", p.n)
                    .with("k", p.k)
                    .with("x", &p.x)
                    .with("c", &p.c)
                    .with("alpha", p.alpha())
                    .with("beta", p.beta())
                    .with("p_max_cr", &crit)
                    .with("p_max_cr_value", rational_to_f64(&crit)),
            ))
        }
        TypicalityCommand::Run { class, spectrum, pmax, samples, shards } => {
            let spec = class_spec(class)?;
            let n = spec.carrier_dim();
            let s = match (spectrum, pmax) {
                (Some(text), _) => text.parse::<SpectrumProfile>()?,
                (None, Some(p)) => SpectrumProfile::with_pmax(n, *p)?,
                (None, None) => SpectrumProfile::pure(n)?,
            };
            let r = mc_fraction(&s, &spec, *samples, seed, *shards)?;
            Ok(Output::Record(
                Record::new()
                    .with("class", spec.to_string())
                    .with("spectrum", spectrum_text(&s))
                    .with("p_max", s.p_max())
                    .with("samples", r.samples)
                    .with("detected", r.detected)
                    .with("fraction", r.fraction)
                    .with("stderr", r.stderr)
                    .with("mean_value", r.mean_value)
                    .with("mean_stderr", r.mean_stderr)
                    .with("analytic_bound", r.analytic_bound)
                    .with("p_max_cr", r.p_max_cr)
                    .with("seed", r.seed)
                    .with("shards", r.shards),
            ))
        }
        TypicalityCommand::Scan { class, sweep, samples, shards, csv } => {
            let spec = class_spec(class)?;
            let n = spec.carrier_dim();
            let params = class_params(&spec)?;
            let p_cr = rational_to_f64(&pmax_critical(&params)?);
            let mut rows = Vec::new();
            for p in parse_sweep(sweep)? {
                if p < 1.0 / n as f64 - 1e-12 || p > 1.0 + 1e-12 {
                    continue;
                }
                let s = SpectrumProfile::with_pmax(n, p.min(1.0))?;
                let r = mc_fraction(&s, &spec, *samples, seed, *shards)?;
                rows.push(
                    Record::new()
                        .with("p_max", s.p_max())
                        .with("delta", s.p_max() - p_cr)
                        .with("analytic_bound", lower_bound(&s, &params)?)
                        .with("mc_fraction", r.fraction)
                        .with("stderr", r.stderr),
                );
            }
            let out = Output::Table(rows);
            if let Some(path) = csv {
                out.emit(Format::Csv, path)?;
            }
            Ok(out)
        }
        TypicalityCommand::Asymptotics { class, regime } => {
            let spec = class_spec(class)?;
            let regime = match regime {
                RegimeArg::FixedModes => Regime::FixedModes,
                RegimeArg::Proportional => Regime::Proportional,
            };
            let row = asymptotics(&spec, regime)?;
            Ok(Output::Record(
                Record::new()
                    .with("class", spec.to_string())
                    .with("n_exact", row.n_exact)
                    .with("n_formula", row.n_formula)
                    .with("np_exact", row.np_exact)
                    .with("np_formula", row.np_formula)
                    .with("ratio", row.np_exact / row.np_formula),
            ))
        }
    }
}

fn demo(c: &DemoCommand, format: Format) -> anyhow::Result<Outcome> {
    match c {
        DemoCommand::A8Threshold => {
            let p = families::a8_threshold()?;
            let exact = BigRational::new(BigInt::from(8), BigInt::from(11));
            let text = format!("p_cr = {} (= 8/11)", fmt_float(p));
            Ok(Output::Message(text, Record::new().with("p_cr", p).with("exact", exact)).into())
        }
        DemoCommand::Suite { skip_slow, only } => {
            if let Some(bad) = only.iter().find(|&&n| n == 0 || n > suite::CRITERIA) {
                bail!("criterion {bad} outside 1..={}", suite::CRITERIA);
            }
            let results = suite::run_selected(*skip_slow, only);
            let ok = results.iter().all(|r| r.passed || r.skipped);
            let output = if format == Format::Human {
                let text = results.iter().map(suite::CriterionResult::line).collect::<Vec<_>>().join("\n");
                Output::Message(text, Record::new())
            } else {
                Output::Table(results.iter().map(suite::CriterionResult::record).collect())
            };
            Ok(Outcome { output, ok })
        }
    }
}
