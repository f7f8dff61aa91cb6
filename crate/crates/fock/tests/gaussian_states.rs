use qcorr_fock::*;
use qcorr_linalg::{herm_eig, random_density, seeded_rng, DMatrix, DenseOperator, C64};

fn random_even_hermitian(alg: &FockAlgebra, seed: u64) -> DenseOperator {
    let rho = random_density(&[alg.dim()], alg.dim(), &mut seeded_rng(seed)).unwrap();
    let pp = alg.p_plus();
    let pm = alg.p_minus();
    let a = pp.mul(&rho).unwrap().mul(&pp).unwrap();
    let b = pm.mul(&rho).unwrap().mul(&pm).unwrap();
    a.add(&b).unwrap()
}

#[test]
fn bogolyubov_rotation_is_special_orthogonal() {
    let f = build_fock(2).unwrap();
    let mut rng = seeded_rng(3);
    for _ in 0..5 {
        let h = random_antisymmetric(2, &mut rng);
        let u = bogolyubov_unitary(&h, &f).unwrap();
        let uu = u.mul(&u.adjoint()).unwrap();
        assert!(uu.distance(&DenseOperator::identity(vec![4]).unwrap()) < 1e-12);
        let r = rotation_of(&u, &f);
        assert!((&r * r.transpose() - DMatrix::<f64>::identity(4, 4)).norm() < 1e-10);
        assert!((r.determinant() - 1.0).abs() < 1e-10);
        // U c_l U^dag = sum_k R_kl c_k
        for l in 1..=4 {
            let lhs = u.mul(&f.c(l)).unwrap().mul(&u.adjoint()).unwrap();
            let mut rhs = DenseOperator::zeros(vec![4]).unwrap();
            for k in 1..=4 {
                rhs = rhs.add(&f.c(k).scale(r[(k - 1, l - 1)])).unwrap();
            }
            assert!(lhs.distance(&rhs) < 1e-10);
        }
    }
}

#[test]
fn correlation_matrix_covariance() {
    let f = build_fock(3).unwrap();
    let mut rng = seeded_rng(5);
    for seed in 0..5 {
        let rho = random_even_hermitian(&f, seed);
        let u = bogolyubov_unitary(&random_antisymmetric(3, &mut rng), &f).unwrap();
        let r = rotation_of(&u, &f);
        let moved = u.mul(&rho).unwrap().mul(&u.adjoint()).unwrap();
        let m1 = correlation_matrix(&moved, &f).unwrap().m;
        let m0 = correlation_matrix(&rho, &f).unwrap().m;
        assert!((m1 - &r * m0 * r.transpose()).norm() < 1e-9);
    }
}

#[test]
fn random_gaussian_states_are_pure_gaussian_parity_eigenstates() {
    for d in 2..=4 {
        let f = build_fock(d).unwrap();
        let q = f.parity();
        for (i, parity) in [Parity::Plus, Parity::Minus].into_iter().enumerate() {
            let psi = random_pure_gaussian(d, parity, 100 + i as u64).unwrap();
            assert!((psi.norm() - 1.0).abs() < 1e-12);
            let qpsi = q.apply(psi.amplitudes());
            assert!((qpsi - psi.amplitudes() * C64::new(parity.sign(), 0.0)).norm() < 1e-12);
            let cm = correlation_matrix(&psi.projector(), &f).unwrap();
            assert!(cm.orthogonality_defect() < 1e-10);
            assert!(cm.antisymmetry_defect() < 1e-14);
        }
    }
}

#[test]
fn non_gaussian_state_has_non_orthogonal_correlations() {
    let f = build_fock(4).unwrap();
    let a8 = a8_state(&f).unwrap();
    let cm = correlation_matrix(&a8, &f).unwrap();
    assert!(cm.orthogonality_defect() > 1.0);
}

#[test]
fn correlation_matrix_rejects_odd_operators() {
    let f = build_fock(2).unwrap();
    assert!(correlation_matrix(&f.c(1), &f).is_err());
}

#[test]
fn tilde_properties_on_random_even_operators() {
    for d in 1..=4 {
        let f = build_fock(d).unwrap();
        for seed in 0..25 {
            let x = random_even_hermitian(&f, 1000 * d as u64 + seed);
            let y = random_even_hermitian(&f, 5000 * d as u64 + seed);
            let tx = f.tilde(&x).unwrap();
            assert!(f.tilde(&tx).unwrap().distance(&x) < 1e-12);
            assert!(tx.hermiticity_defect() < 1e-12);
            assert!((tx.trace() - x.trace()).norm() < 1e-12);
            let lin = f.tilde(&x.scale(0.3).add(&y.scale(-1.7)).unwrap()).unwrap();
            let want = tx.scale(0.3).add(&f.tilde(&y).unwrap().scale(-1.7)).unwrap();
            assert!(lin.distance(&want) < 1e-12);
            assert!(f.tilde_by_reflection(&x).distance(&tx) < 1e-12);
        }
    }
}

#[test]
fn depolarized_a8_is_tilde_invariant() {
    let f = build_fock(4).unwrap();
    let a8 = a8_state(&f).unwrap();
    let id = DenseOperator::identity(vec![16]).unwrap().scale(1.0 / 16.0);
    for p in [0.0, 0.3, 8.0 / 11.0, 1.0] {
        let rho = a8.scale(1.0 - p).add(&id.scale(p)).unwrap();
        assert!(f.tilde(&rho).unwrap().distance(&rho) < 1e-12);
    }
}

#[test]
fn parity_grading_of_built_operators() {
    let f = build_fock(4).unwrap();
    let pp = f.p_plus();
    let pm = f.p_minus();
    let mut even = vec![f.parity(), a8_state(&f).unwrap()];
    even.push(f.hermitian_monomial(&[1, 4]).to_dense());
    even.push(f.hermitian_monomial(&[2, 3, 5, 8]).to_dense());
    for x in &even {
        assert!(pp.mul(x).unwrap().mul(&pm).unwrap().frobenius() < 1e-12);
    }
}

#[test]
fn a8_vector_spans_a8() {
    let f = build_fock(4).unwrap();
    let v = a8_vector(&f).unwrap();
    assert!(v.projector().distance(&a8_state(&f).unwrap()) < 1e-12);
    let e = herm_eig(&a8_state(&f).unwrap()).unwrap();
    assert_eq!(e.count_above(1e-9), 1);
}

#[test]
fn reflection_is_real_involution_up_to_sign() {
    for d in 1..=5 {
        let f = build_fock(d).unwrap();
        let t = f.reflection().to_dense();
        assert!(t.matrix().iter().all(|z| z.im == 0.0));
        let sq = t.mul(&t).unwrap();
        let id = DenseOperator::identity(vec![1 << d]).unwrap();
        assert!(sq.distance(&id) < 1e-14 || sq.distance(&id.scale(-1.0)) < 1e-14);
    }
}
