use qcorr_linalg::*;
use rand::Rng;

fn random_hermitian(n: usize, seed: u64) -> DenseOperator {
    let mut rng = seeded_rng(seed);
    let m = DMatrix::from_fn(n, n, |_, _| c64(rng.random::<f64>() - 0.5, rng.random::<f64>() - 0.5));
    DenseOperator::from_matrix(&m + m.adjoint())
}

#[test]
fn herm_eig_reconstructs_random_hermitian() {
    for seed in 0..10 {
        let a = random_hermitian(8, seed);
        let e = herm_eig(&a).unwrap();
        assert!(e.values.windows(2).all(|w| w[0] >= w[1]));
        let lam = DMatrix::from_diagonal(&DVector::from_iterator(8, e.values.iter().map(|&x| c64(x, 0.0))));
        let rec = &e.vectors * lam * e.vectors.adjoint();
        assert!((rec - a.matrix()).norm() <= 1e-10 * a.frobenius());
        let gram = e.vectors.adjoint() * &e.vectors;
        assert!((gram - DMatrix::<C64>::identity(8, 8)).norm() < 1e-12);
    }
}

#[test]
fn herm_eig_is_deterministic_with_phase_fixed_vectors() {
    let a = random_hermitian(6, 77);
    let e1 = herm_eig(&a).unwrap();
    let e2 = herm_eig(&a).unwrap();
    assert_eq!(e1.values, e2.values);
    assert_eq!(e1.vectors, e2.vectors);
    for j in 0..6 {
        let lead = e1.vectors.column(j).iter().find(|z| z.norm() > 1e-10).copied().unwrap();
        assert!(lead.im.abs() < 1e-14 && lead.re > 0.0);
    }
}

#[test]
fn identity_spectrum() {
    let e = herm_eig(&DenseOperator::identity(vec![5]).unwrap()).unwrap();
    assert!(e.values.iter().all(|&x| (x - 1.0).abs() < 1e-14));
}

#[test]
fn density_spectrum_is_a_distribution() {
    let mut rng = seeded_rng(5);
    for rank in [1, 3, 6] {
        let rho = random_density(&[2, 3], rank, &mut rng).unwrap();
        let e = herm_eig(&rho).unwrap();
        assert!(e.values.iter().all(|&x| x >= -1e-12));
        assert!((e.values.iter().sum::<f64>() - 1.0).abs() < 1e-10);
    }
}

#[test]
fn partial_trace_of_product_and_trace_preservation() {
    let mut rng = seeded_rng(11);
    let a = random_density(&[2], 2, &mut rng).unwrap();
    let b = random_density(&[3], 3, &mut rng).unwrap();
    let ab = kron(&a, &b).unwrap();
    assert!(partial_trace(&ab, &[0]).unwrap().distance(&a) < 1e-12);
    assert!(partial_trace(&ab, &[1]).unwrap().distance(&b) < 1e-12);

    let rho = random_density(&[2, 3], 6, &mut rng).unwrap();
    let red = partial_trace(&rho, &[1]).unwrap();
    assert!((red.trace() - rho.trace()).norm() < 1e-12);
    assert_eq!(red.factor_dims(), &[3]);
}

#[test]
fn partial_trace_keeps_factor_order() {
    let mut rng = seeded_rng(12);
    let parts: Vec<DenseOperator> =
        [2, 3, 2].iter().map(|&d| random_density(&[d], d, &mut rng).unwrap()).collect();
    let all = kron_all(&parts).unwrap();
    let red = partial_trace(&all, &[2, 0]).unwrap();
    let want = kron(&parts[0], &parts[2]).unwrap();
    assert!(red.distance(&want) < 1e-12);
}

#[test]
fn haar_first_moment() {
    // E|U_11|^2 = 1/n; standard error from the sample variance.
    for n in [2usize, 5] {
        let samples = 10_000;
        let xs: Vec<f64> = (0..samples)
            .map(|i| haar_unitary_rng(n, &mut stream_rng(2024, i as u64)).get(0, 0).norm_sqr())
            .collect();
        let mean = xs.iter().sum::<f64>() / samples as f64;
        let var = xs.iter().map(|x| (x - mean).powi(2)).sum::<f64>() / (samples - 1) as f64;
        let se = (var / samples as f64).sqrt();
        assert!((mean - 1.0 / n as f64).abs() < 4.0 * se, "n={n}: mean {mean}, se {se}");
    }
}

#[test]
fn shard_streams_are_uncorrelated() {
    let samples = 10_000;
    let f = |stream: u64, i: u64| -> f64 {
        let mut rng = stream_rng(7, stream * 1_000_000 + i);
        haar_unitary_rng(3, &mut rng).get(0, 0).norm_sqr()
    };
    let xs: Vec<f64> = (0..samples).map(|i| f(0, i)).collect();
    let ys: Vec<f64> = (0..samples).map(|i| f(1, i)).collect();
    let mx = xs.iter().sum::<f64>() / samples as f64;
    let my = ys.iter().sum::<f64>() / samples as f64;
    let sx = (xs.iter().map(|x| (x - mx).powi(2)).sum::<f64>() / samples as f64).sqrt();
    let sy = (ys.iter().map(|y| (y - my).powi(2)).sum::<f64>() / samples as f64).sqrt();
    let corr = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum::<f64>()
        / (samples as f64 * sx * sy);
    // under independence corr ~ N(0, 1/samples)
    assert!(corr.abs() < 4.0 / (samples as f64).sqrt(), "corr {corr}");
}

#[test]
fn projectors_are_idempotent_and_hermitian() {
    let dims = vec![3, 3, 3];
    for spec in [
        SymSpec::PairSymmetrizer(0, 2),
        SymSpec::Symmetrizer(vec![0, 1, 2]),
        SymSpec::Antisymmetrizer(vec![0, 1, 2]),
        SymSpec::Antisymmetrizer(vec![1, 2]),
    ] {
        let p = symmetrizer_ops(&dims, &spec).unwrap().to_dense().unwrap();
        assert!(p.mul(&p).unwrap().distance(&p) <= 1e-12);
        assert!(p.hermiticity_defect() <= 1e-12);
    }
    let swap = symmetrizer_ops(&[2, 3, 2, 3], &SymSpec::BlockSwap(vec![0, 1], vec![2, 3]))
        .unwrap()
        .to_dense()
        .unwrap();
    let u = swap.mul(&swap.adjoint()).unwrap();
    assert!(u.distance(&DenseOperator::identity(vec![36]).unwrap()) < 1e-15);
}

#[test]
fn antisymmetric_dimension_counts() {
    let p = symmetrizer_ops(&[4, 4, 4], &SymSpec::Antisymmetrizer(vec![0, 1, 2])).unwrap();
    assert!((p.to_dense().unwrap().trace().re - 4.0).abs() < 1e-12);
}
