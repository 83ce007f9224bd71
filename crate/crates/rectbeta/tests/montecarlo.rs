use num_complex::Complex64;
use rectbeta::montecarlo::{
    exact_statistic, haar_factor, sample_rng, sample_sum_moments, sample_sum_moments_with, squared_singular_values,
    verify_against_exact, CMatrix, SampleConfig, Statistic, ThetaCase,
};
use rectbeta::{Partition, Rational, Scalar};

fn cfg(m: usize, n: usize, case: ThetaCase, a: &[f64], b: &[f64], samples: usize, seed: u64) -> SampleConfig {
    SampleConfig { m, n, theta_case: case, spectra_a: a.to_vec(), spectra_b: b.to_vec(), samples, seed }
}

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn one_by_one_real_haar_is_a_sign() {
    let mut plus = 0;
    for i in 0..200 {
        let u = haar_factor(1, ThetaCase::Half, &mut sample_rng(5, i));
        let v = u.get(0, 0);
        assert!(v.im == 0.0 && (v.re.abs() - 1.0).abs() < 1e-15);
        if v.re > 0.0 {
            plus += 1;
        }
    }
    assert!((60..140).contains(&plus));
}

#[test]
fn haar_columns_are_orthonormal() {
    let mut rng = sample_rng(11, 0);
    for n in 1..6 {
        for case in [ThetaCase::Half, ThetaCase::One] {
            assert!(haar_factor(n, case, &mut rng).orthonormality_error() < 1e-10);
        }
    }
}

#[test]
fn haar_mean_is_zero() {
    let draws = 100_000u64;
    let vals: Vec<f64> = (0..draws).map(|i| haar_factor(3, ThetaCase::One, &mut sample_rng(3, i)).get(0, 0).re).collect();
    let mean = vals.iter().sum::<f64>() / draws as f64;
    let var = vals.iter().map(|v| (v - mean).powi(2)).sum::<f64>() / (draws - 1) as f64;
    assert!(mean.abs() < 5.0 * (var / draws as f64).sqrt());
}

#[test]
fn singular_values_of_known_matrices() {
    let d = CMatrix::rect_diag(&[3.0, 0.5], 2, 3);
    let s = squared_singular_values(&d).unwrap();
    assert!((s[0] - 9.0).abs() < 1e-12 && (s[1] - 0.25).abs() < 1e-12);

    // [[1, 1], [0, 1]]: squared singular values (3 +- sqrt 5)/2
    let mut m = CMatrix::zeros(2, 2);
    m.set(0, 0, Complex64::new(1.0, 0.0));
    m.set(0, 1, Complex64::new(1.0, 0.0));
    m.set(1, 1, Complex64::new(0.0, 1.0));
    let s = squared_singular_values(&m).unwrap();
    let r5 = 5f64.sqrt();
    assert!((s[0] - (3.0 + r5) / 2.0).abs() < 1e-12);
    assert!((s[1] - (3.0 - r5) / 2.0).abs() < 1e-12);

    // invariance under a unitary on the left
    let u = haar_factor(2, ThetaCase::One, &mut sample_rng(9, 1));
    let t = squared_singular_values(&u.mul(&m)).unwrap();
    assert!((t[0] - s[0]).abs() < 1e-12 && (t[1] - s[1]).abs() < 1e-12);
}

#[test]
fn real_scalar_case_takes_two_values() {
    let c = cfg(1, 1, ThetaCase::Half, &[2.0], &[0.5], 2000, 1);
    let est = sample_sum_moments(&c, &[Statistic::Power(1)]).unwrap();
    assert_eq!(est[0].n, 2000);
    // E[c^2] = a^2 + b^2
    assert!((est[0].mean - 4.25).abs() < 5.0 * est[0].stderr);
    let a = CMatrix::rect_diag(&[2.0], 1, 1);
    let b = CMatrix::rect_diag(&[0.5], 1, 1);
    let raw = sample_sum_moments_with(&a, &b, ThetaCase::Half, 50, 2, &[Statistic::Power(1)]).unwrap();
    // each sample is (a + b)^2 or (a - b)^2, so the mean is a mixture of the two
    assert!(raw[0].mean >= 2.25 - 1e-12 && raw[0].mean <= 6.25 + 1e-12);
}

#[test]
fn complex_scalar_fourth_moment() {
    let c = cfg(1, 1, ThetaCase::One, &[1.0], &[1.0], 100_000, 7);
    let (est, z) = verify_against_exact(&c, &Statistic::Power(2), 6.0).unwrap();
    assert!(z.abs() <= 5.0, "z = {z}, mean = {}", est.mean);
}

#[test]
fn trace_additivity_two_by_three() {
    let c = cfg(2, 3, ThetaCase::One, &[1.0, 0.5], &[2.0, 1.0], 20_000, 3);
    let (_, z) = verify_against_exact(&c, &Statistic::Jack(Partition::row(1)), 1.25 + 5.0).unwrap();
    assert!(z.abs() <= 5.0);
}

#[test]
fn same_seed_same_bits() {
    let c = cfg(2, 3, ThetaCase::Half, &[1.0, 0.5], &[1.5, 0.0], 3000, 42);
    let stats = [Statistic::Jack(Partition::row(2)), Statistic::Jack(Partition::column(2))];
    let a = sample_sum_moments(&c, &stats).unwrap();
    let b = sample_sum_moments(&c, &stats).unwrap();
    assert_eq!(a, b);
    let other = sample_sum_moments(&SampleConfig { seed: 43, ..c }, &stats).unwrap();
    assert_ne!(a[0].mean, other[0].mean);
}

#[test]
fn deterministic_when_b_vanishes() {
    let c = cfg(2, 2, ThetaCase::One, &[2.0, 1.0], &[0.0, 0.0], 50, 4);
    let exact = exact_statistic(&Statistic::Jack(Partition::row(2)), &[q(4, 1), q(1, 1)], &[q(0, 1), q(0, 1)], 2, 2, ThetaCase::One)
        .unwrap()
        .to_f64_lossy();
    let (est, z) = verify_against_exact(&c, &Statistic::Jack(Partition::row(2)), exact).unwrap();
    assert!(est.stderr < 1e-9);
    assert!(z.abs() < 1.0);
}

#[test]
fn pre_rotation_leaves_the_law_unchanged() {
    let stats = [Statistic::Power(1), Statistic::Power(2)];
    let a = CMatrix::rect_diag(&[1.5, 0.5], 2, 3);
    let b = CMatrix::rect_diag(&[1.0, 1.0], 2, 3);
    let u = haar_factor(2, ThetaCase::One, &mut sample_rng(100, 0));
    let v = haar_factor(3, ThetaCase::One, &mut sample_rng(100, 1));
    let rotated = u.mul(&a).mul(&v);
    let base = sample_sum_moments_with(&a, &b, ThetaCase::One, 20_000, 8, &stats).unwrap();
    let rot = sample_sum_moments_with(&rotated, &b, ThetaCase::One, 20_000, 9, &stats).unwrap();
    for (x, y) in base.iter().zip(&rot) {
        let se = (x.stderr.powi(2) + y.stderr.powi(2)).sqrt();
        assert!((x.mean - y.mean).abs() <= 5.0 * se);
    }
}

#[test]
fn config_validation() {
    assert!(sample_sum_moments(&cfg(3, 2, ThetaCase::One, &[1.0; 3], &[1.0; 3], 10, 0), &[]).is_err());
    assert!(sample_sum_moments(&cfg(1, 2, ThetaCase::One, &[1.0], &[1.0], 0, 0), &[]).is_err());
    let big = Statistic::Jack(Partition::row(5));
    assert!(sample_sum_moments(&cfg(1, 2, ThetaCase::One, &[1.0], &[1.0], 10, 0), &[big]).is_err());
}
