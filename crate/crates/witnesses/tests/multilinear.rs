use qcorr_classes::gme::GME_COPIES;
use qcorr_classes::{class_operator, class_operator2, pure_invariant, random_member, ClassSpec};
use qcorr_linalg::{
    c64, random_density, random_state, seeded_rng, symmetrizer_ops, DMatrix, DVector, DenseOperator, StateVector,
    SymSpec, C64,
};
use qcorr_witnesses::*;

fn pure(v: &DVector<C64>) -> DenseOperator {
    DenseOperator::from_matrix(v * v.adjoint())
}

#[test]
fn two_copy_case_is_bilinear_with_unit_constant() {
    let mut rng = seeded_rng(21);
    for spec in [ClassSpec::Distinguishable { dims: vec![2, 2] }, ClassSpec::Bosonic { d: 2, l: 2 }] {
        let op = class_operator2(&spec).unwrap();
        let w = multilinear_witness(&op).unwrap();
        let n = spec.carrier_dim();
        let asym = symmetrizer_ops(&[n, n], &SymSpec::Antisymmetrizer(vec![0, 1])).unwrap().to_dense().unwrap();
        let expected = op.dense().unwrap().sub(&asym).unwrap();
        let v = w.dense().unwrap();
        assert!(v.distance(&expected) < 1e-12, "{spec}");
        let rho = random_density(&[n], 2, &mut rng).unwrap();
        let sigma = random_density(&[n], 3, &mut rng).unwrap();
        let direct = expected.trace_product(&qcorr_linalg::kron(&rho, &sigma).unwrap()).re;
        assert!((detect_k(&w, &[&rho, &sigma]).unwrap() - direct).abs() < 1e-12);
    }
}

#[test]
fn sym_overlap_with_maximally_mixed_factor() {
    let n = 3;
    let mix = DenseOperator::identity(vec![n]).unwrap().scale(1.0 / n as f64);
    let mut rng = seeded_rng(22);
    let other = random_density(&[n], 2, &mut rng).unwrap();
    let ov = sym_overlap(&[&mix, &other, &other]);
    let expected = (1.0 + 2.0 / n as f64 + other.trace_product(&other).re * (1.0 + 2.0 / n as f64)) / 6.0;
    assert!((ov - expected).abs() < 1e-12);
}

#[test]
fn schmidt_witness_sound_and_exact() {
    let mut rng = seeded_rng(23);
    let spec = ClassSpec::SchmidtBounded { da: 3, db: 3, n: 2 };
    let op = class_operator(&spec).unwrap();
    let w = multilinear_witness(&op).unwrap();
    assert_eq!(w.copies(), 3);
    for _ in 0..20 {
        let m = random_member(&spec, &mut rng).unwrap();
        let rm = pure(m.amplitudes());
        let y = random_state(&[9], &mut rng).unwrap();
        let ry = pure(y.amplitudes());
        let z = random_density(&[9], 2, &mut rng).unwrap();
        assert!(detect_k(&w, &[&rm, &ry, &z]).unwrap() <= DETECTION_THRESHOLD);
        assert!(detect_k(&w, &[&rm, &rm, &rm]).unwrap().abs() < 1e-10);
        let psi = StateVector::new(vec![3, 3], random_state(&[9], &mut rng).unwrap().into_amplitudes()).unwrap();
        let rp = pure(psi.amplitudes());
        let val = detect_k(&w, &[&rp, &rp, &rp]).unwrap();
        assert!((val - pure_invariant(&psi, &spec).unwrap()).abs() < 1e-10);
    }
    let s = 1.0 / 3f64.sqrt();
    let mut phi = DVector::zeros(9);
    for i in 0..3 {
        phi[4 * i] = c64(s, 0.0);
    }
    let rp = pure(&phi);
    assert!((detect_k(&w, &[&rp, &rp, &rp]).unwrap() - 1.0 / 27.0).abs() < 1e-12);
}

#[test]
fn schmidt_depolarized_dense_matches_pure_tuples() {
    let spec = ClassSpec::SchmidtBounded { da: 3, db: 3, n: 2 };
    let op = class_operator(&spec).unwrap();
    let w = multilinear_witness(&op).unwrap();
    let s = 1.0 / 3f64.sqrt();
    let mut phi = DVector::zeros(9);
    for i in 0..3 {
        phi[4 * i] = c64(s, 0.0);
    }
    let rp = pure(&phi);
    let id = DenseOperator::identity(vec![9]).unwrap().scale(1.0 / 9.0);
    let value = |p: f64| {
        let rho = rp.scale(1.0 - p).add(&id.scale(p)).unwrap();
        detect_k(&w, &[&rho, &rp, &rp]).unwrap()
    };
    // brute force over basis tuples of the mixed factor
    let big = |x: &DVector<C64>| x.kronecker(&phi).kronecker(&phi);
    let at_pure = w.map().expectation(&big(&phi)).unwrap().re;
    let mut at_mixed = 0.0;
    for i in 0..9 {
        let mut e = DVector::zeros(9);
        e[i] = c64(1.0, 0.0);
        at_mixed += w.map().expectation(&big(&e)).unwrap().re / 9.0;
    }
    for p in [0.0, 0.3, 0.7, 1.0] {
        let direct = (1.0 - p) * at_pure + p * at_mixed;
        assert!((value(p) - direct).abs() < 1e-12);
    }
    let p_cr = at_pure / (at_pure - at_mixed);
    assert!(value(p_cr).abs() < 1e-12);
    assert!(value(p_cr - 0.01) > 0.0 && value(p_cr + 0.01) < 0.0);
}

fn biseparable_mixture(d: usize, terms: usize, seed: u64) -> DenseOperator {
    let mut rng = seeded_rng(seed);
    let spec = ClassSpec::TwoSeparable3 { d };
    let n = spec.carrier_dim();
    let mut m = DMatrix::<C64>::zeros(n, n);
    for _ in 0..terms {
        let v = random_member(&spec, &mut rng).unwrap();
        m += v.amplitudes() * v.amplitudes().adjoint() * C64::new(1.0 / terms as f64, 0.0);
    }
    DenseOperator::from_matrix(m)
}

#[test]
fn tripartite_witness() {
    let spec = ClassSpec::TwoSeparable3 { d: 2 };
    let op = class_operator(&spec).unwrap();
    let w = multilinear_witness(&op).unwrap();
    assert_eq!(w.copies(), GME_COPIES);
    assert!(w.dense().is_none());
    let mut rng = seeded_rng(24);
    for seed in 0..3 {
        let rho1 = biseparable_mixture(2, 10, seed);
        let others: Vec<DenseOperator> =
            (0..5).map(|_| pure(random_state(&[8], &mut rng).unwrap().amplitudes())).collect();
        let mut states = vec![&rho1];
        states.extend(others.iter());
        assert!(detect_k(&w, &states).unwrap() <= DETECTION_THRESHOLD);
    }
    let member = random_member(&spec, &mut rng).unwrap();
    let rm = pure(member.amplitudes());
    let same = vec![&rm; 6];
    assert!(detect_k(&w, &same).unwrap().abs() < 1e-10);
    let h = 0.5f64.sqrt();
    let mut ghz = DVector::zeros(8);
    ghz[0] = c64(h, 0.0);
    ghz[7] = c64(h, 0.0);
    let rg = pure(&ghz);
    assert!((detect_k(&w, &vec![&rg; 6]).unwrap() - 1.0 / 64.0).abs() < 1e-12);
}
