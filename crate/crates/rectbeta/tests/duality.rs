use proptest::prelude::*;
use rectbeta::duality::{duality_check, duality_constant, finite_rect_cumulants, finite_rect_cumulants_of_charpoly};
use rectbeta::qgamma::{m2k, HTParams};
use rectbeta::rectconv::rect_charpoly;
use rectbeta::{Error, Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

#[test]
fn single_variable_cumulant() {
    for n in 1..5 {
        let f = finite_rect_cumulants(&[q(7, 3)], 1, n).unwrap();
        assert_eq!(f.k_fin, vec![q(7, 3)]);
    }
}

#[test]
fn zero_spectrum() {
    let f = finite_rect_cumulants(&[q(0, 1), q(0, 1), q(0, 1)], 3, 4).unwrap();
    assert!(f.k_fin.iter().all(|x| *x == q(0, 1)));
    let rep = duality_check(&[q(0, 1), q(0, 1)], 2, 3, 2).unwrap();
    assert!(rep.ratios.iter().all(Option::is_none));
}

#[test]
fn one_by_n_by_hand() {
    // k_2 at (q, gamma) = (N, -1) from m_2 = -N r
    for n in 1..6usize {
        let r = q(5, 2);
        let p = HTParams::new(q(n as i64, 1), q(-1, 1));
        let k = m2k(&[-r.clone() * q(n as i64, 1)], &p, 1).unwrap();
        assert_eq!(k[0], r.clone() / q(2, 1));
        let rep = duality_check(&[r], 1, n, 1).unwrap();
        assert_eq!(rep.ratios, vec![Some(q(2, 1))]);
    }
}

#[test]
fn two_by_three_example() {
    let rep = duality_check(&[q(1, 1), q(1, 2)], 2, 3, 2).unwrap();
    assert_eq!(rep.ratios, vec![Some(q(2, 1)), Some(q(8, 1))]);
    assert_eq!(duality_constant::<Rational>(3), q(32, 1));
}

#[test]
fn half_factor_does_not_match() {
    // k_l = (k_2l / 2) gamma^(l-1) would need ratio 1/2
    let rep = duality_check(&[q(3, 1), q(1, 1)], 2, 2, 2).unwrap();
    for r in rep.ratios.iter().flatten() {
        assert_ne!(*r, q(1, 2));
    }
}

#[test]
fn rejects_bad_order() {
    assert!(matches!(duality_check(&[q(1, 1)], 1, 2, 2), Err(Error::InvalidInput(_))));
    assert!(finite_rect_cumulants(&[q(1, 1), q(2, 1)], 2, 3).is_err());
}

fn spectrum(len: usize) -> impl Strategy<Value = Vec<Rational>> {
    prop::collection::vec((0i64..9, 1i64..5), len).prop_map(|v| {
        let mut r: Vec<Rational> = v.into_iter().map(|(a, b)| q(a, b)).collect();
        r.sort_by(|a, b| b.cmp(a));
        r
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    #[test]
    fn ratio_is_spectrum_independent(r in spectrum(3)) {
        let rep = duality_check(&r, 3, 4, 3).unwrap();
        for (l, x) in rep.ratios.iter().enumerate() {
            if let Some(x) = x {
                prop_assert_eq!(x.clone(), duality_constant::<Rational>(l + 1));
            }
        }
    }

    #[test]
    fn cumulants_add_under_the_finite_convolution(a in spectrum(3), b in spectrum(3), n in 3usize..6) {
        let c = finite_rect_cumulants_of_charpoly(&rect_charpoly(&a, &b, 3, n).unwrap(), n).unwrap();
        let fa = finite_rect_cumulants(&a, 3, n).unwrap();
        let fb = finite_rect_cumulants(&b, 3, n).unwrap();
        for l in 0..3 {
            prop_assert_eq!(c.k_fin[l].clone(), fa.k_fin[l].clone() + fb.k_fin[l].clone());
        }
    }
}
