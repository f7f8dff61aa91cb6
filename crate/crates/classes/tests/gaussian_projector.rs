use qcorr_classes::*;
use qcorr_fock::{bogolyubov_unitary, build_fock, random_antisymmetric, random_pure_gaussian, Parity};
use qcorr_linalg::{herm_eig, kron, seeded_rng};
use qcorr_young::rational_to_f64;

#[test]
fn closed_form_matches_null_space_oracle() {
    for (d, tr) in [(2, 6.0), (3, 20.0), (4, 70.0)] {
        let closed = gaussian_p0(d).unwrap();
        let oracle = gaussian_null_oracle(d).unwrap();
        assert!(closed.distance(&oracle) < 1e-10, "d = {d}");
        assert!((closed.trace().re - tr).abs() < 1e-10);
        assert_eq!(herm_eig(&oracle).unwrap().count_above(0.5), tr as usize);
    }
}

#[test]
fn lambda_annihilates_projector() {
    for d in 2..=4 {
        let p = gaussian_p0(d).unwrap();
        let lam = lambda_operator(d).unwrap();
        assert!(lam.mul(&p).unwrap().frobenius() < 1e-10);
    }
}

#[test]
fn projector_is_bogolyubov_invariant() {
    let d = 3;
    let alg = build_fock(d).unwrap();
    let p = gaussian_p0(d).unwrap();
    let mut rng = seeded_rng(11);
    for _ in 0..20 {
        let u = bogolyubov_unitary(&random_antisymmetric(d, &mut rng), &alg).unwrap();
        let uu = kron(&u, &u).unwrap();
        let moved = uu.mul(&p).unwrap().mul(&uu.adjoint()).unwrap();
        assert!(moved.distance(&p) < 1e-9);
    }
}

#[test]
fn sector_traces_are_exact() {
    for d in 2..=5 {
        for sector in [Sector::Plus, Sector::Minus, Sector::Both] {
            let op = class_operator2(&ClassSpec::Gaussian { d, sector }).unwrap();
            let dense = op.dense().unwrap().trace().re;
            assert!((dense - rational_to_f64(op.trace())).abs() < 1e-8, "d={d} {sector}");
        }
    }
}

#[test]
fn gaussian_states_span_projector_range() {
    for d in 2..=4 {
        let p = gaussian_p0(d).unwrap();
        for (i, parity) in [Parity::Plus, Parity::Minus].into_iter().enumerate() {
            let psi = random_pure_gaussian(d, parity, 40 + i as u64).unwrap();
            let two = psi.tensor(&psi);
            let v = p.expectation(&two).unwrap().re;
            assert!((v - 1.0).abs() < 1e-10);
        }
    }
}

#[test]
fn low_mode_even_sector_is_all_gaussian() {
    for d in 2..=3 {
        let op = class_operator2(&ClassSpec::Gaussian { d, sector: Sector::Plus }).unwrap();
        assert!(op.dense().unwrap().frobenius() < 1e-10);
        assert_eq!(op.trace(), &num_rational::BigRational::from_integer(0.into()));
    }
}
