use qcorr_concurrence::*;
use qcorr_linalg::{c64, partial_transpose, herm_eig, random_density, random_state, seeded_rng, DVector, DenseOperator, C64};

fn pure(v: &DVector<C64>) -> DenseOperator {
    DenseOperator::from_matrix(v * v.adjoint())
}

#[test]
fn bell_and_product_states() {
    let h = 0.5f64.sqrt();
    let bell = DVector::from_vec(vec![c64(h, 0.0), c64(0.0, 0.0), c64(0.0, 0.0), c64(h, 0.0)]);
    assert!((wootters_2q(&pure(&bell)).unwrap() - 1.0).abs() < 1e-10);
    let a = DVector::from_vec(vec![c64(0.6, 0.0), c64(0.0, 0.8)]);
    let b = DVector::from_vec(vec![c64(0.28, 0.96), c64(0.0, 0.0)]);
    assert!(wootters_2q(&pure(&a.kronecker(&b))).unwrap().abs() < 1e-10);
    assert!(wootters_2q(&DenseOperator::identity(vec![3]).unwrap()).is_err());
}

#[test]
fn sigma_y_conjugation_properties() {
    let conj = ConjugationSpec::BasisConjugation(sigma_y_pair());
    let mut rng = seeded_rng(41);
    for _ in 0..20 {
        let v = random_state(&[4], &mut rng).unwrap().into_amplitudes();
        assert!((conj.apply(&conj.apply(&v).unwrap()).unwrap() - &v).norm() < 1e-10);
        let c = uw_concurrence(&pure(&v), &conj).unwrap();
        assert!((c - v.dotc(&conj.apply(&v).unwrap()).norm()).abs() < 1e-10);
    }
}

#[test]
fn wootters_matches_general_route() {
    let conj = ConjugationSpec::BasisConjugation(sigma_y_pair());
    let mut rng = seeded_rng(42);
    for rank in 1..=4 {
        for _ in 0..10 {
            let rho = random_density(&[2, 2], rank, &mut rng).unwrap();
            assert!((wootters_2q(&rho).unwrap() - uw_concurrence(&rho, &conj).unwrap()).abs() < 1e-10);
        }
    }
}

#[test]
fn werner_crossing() {
    for p in [0.0, 0.3, 0.6, 2.0 / 3.0, 0.8, 1.0] {
        let c = wootters_2q(&werner(p)).unwrap();
        assert!((c - (1.0 - 1.5 * p).max(0.0)).abs() < 1e-10, "p={p}");
    }
    let p_cr = threshold_solver(|p| Ok(werner(p)), wootters_2q, (0.0, 1.0)).unwrap();
    assert!((p_cr - 2.0 / 3.0).abs() < 1e-9);
}

#[test]
fn zero_concurrence_agrees_with_ppt() {
    let mut rng = seeded_rng(43);
    let mut separable = 0;
    for i in 0..200 {
        let rho = random_density(&[2, 2], 1 + i % 4, &mut rng).unwrap();
        let c = wootters_2q(&rho).unwrap();
        let min_pt = herm_eig(&partial_transpose(&rho, 1).unwrap()).unwrap().min();
        if c <= 1e-10 {
            separable += 1;
            assert!(min_pt >= -1e-10, "state {i}: C = {c}, min PT eigenvalue {min_pt}");
        } else {
            assert!(min_pt < 0.0, "state {i}: C = {c}, min PT eigenvalue {min_pt}");
        }
    }
    assert!(separable > 10, "{separable}");
}
