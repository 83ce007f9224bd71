use num_traits::Zero;
use proptest::prelude::*;
use rectbeta::bessel_dunkl::ZPoly;
use rectbeta::jack::{dual_b, jack, jack_at_ones, onerow_q_series, structure_constants, JackTable, SymPoly};
use rectbeta::partitions::enumerate_partitions;
use rectbeta::{Partition, Rational, Scalar};

fn q(n: i64, d: i64) -> Rational {
    Rational::from_ratio(n, d)
}

fn part(p: &[usize]) -> Partition {
    Partition::new(p.to_vec()).unwrap()
}

fn det(mut a: Vec<Vec<Rational>>) -> Rational {
    let n = a.len();
    let mut d = Rational::from_int(1);
    for c in 0..n {
        let Some(p) = (c..n).find(|&r| !a[r][c].is_zero()) else {
            return Rational::from_int(0);
        };
        if p != c {
            a.swap(p, c);
            d = -d;
        }
        d *= a[c][c].clone();
        for r in (c + 1)..n {
            let f = a[r][c].clone() / a[c][c].clone();
            let pivot = a[c].clone();
            for (x, v) in a[r].iter_mut().zip(pivot).skip(c) {
                *x -= v * f.clone();
            }
        }
    }
    d
}

/// Schur polynomial at x via the bialternant formula.
fn schur(lambda: &Partition, x: &[Rational]) -> Rational {
    let n = x.len();
    let lp = lambda.padded(n);
    let num = (0..n).map(|i| (0..n).map(|j| x[i].powi(lp[j] + n - 1 - j)).collect()).collect();
    let den = (0..n).map(|i| (0..n).map(|j| x[i].powi(n - 1 - j)).collect()).collect();
    det(num) / det(den)
}

fn perms(v: &[usize]) -> Vec<Vec<usize>> {
    if v.len() <= 1 {
        return vec![v.to_vec()];
    }
    let mut out: Vec<Vec<usize>> = Vec::new();
    for i in 0..v.len() {
        let mut rest = v.to_vec();
        let x = rest.remove(i);
        for mut p in perms(&rest) {
            p.insert(0, x);
            if !out.contains(&p) {
                out.push(p);
            }
        }
    }
    out
}

fn to_zpoly(f: &SymPoly<Rational>) -> ZPoly<Rational> {
    let m = f.nvars();
    let mut out = ZPoly::zero(m);
    for (lam, c) in f.terms() {
        for p in perms(&lam.padded(m)) {
            out.add_term(p.iter().map(|&e| e as u32).collect(), c.clone());
        }
    }
    out
}

/// The defining operator applied to f and evaluated at a point with distinct coordinates.
fn operator_at(f: &ZPoly<Rational>, theta: &Rational, x: &[Rational]) -> Rational {
    let m = x.len();
    let half = q(1, 2);
    let mut acc = Rational::from_int(0);
    let d: Vec<ZPoly<Rational>> = (0..m).map(|i| f.partial(i)).collect();
    for i in 0..m {
        acc += half.clone() * x[i].clone() * x[i].clone() * d[i].partial(i).eval(x);
    }
    for i in 0..m {
        for j in (i + 1)..m {
            let num = x[i].clone() * x[i].clone() * d[i].eval(x) - x[j].clone() * x[j].clone() * d[j].eval(x);
            acc += theta.clone() * num / (x[i].clone() - x[j].clone());
        }
    }
    acc
}

fn expected_eigenvalue(lambda: &Partition, theta: &Rational, m: usize) -> Rational {
    let mut e = Rational::from_int(0);
    for (i, &l) in lambda.parts().iter().enumerate() {
        e = e + q((l * (l - 1)) as i64, 2) + theta.clone() * Rational::from_int(((m - 1 - i) * l) as i64);
    }
    e
}

#[test]
fn two_row_closed_form() {
    for th in [q(1, 2), q(1, 1), q(3, 7), q(5, 1)] {
        let p = jack(&part(&[2]), &th, 3).unwrap();
        assert_eq!(p.coeff(&part(&[2])), q(1, 1));
        assert_eq!(p.coeff(&part(&[1, 1])), Rational::from_int(2) * th.clone() / (Rational::from_int(1) + th));
    }
}

#[test]
fn schur_at_theta_one() {
    let x = [q(2, 1), q(-1, 3), q(5, 7)];
    for n in 0..=5 {
        for lam in enumerate_partitions(n, 3) {
            let p = jack(&lam, &Rational::from_int(1), 3).unwrap();
            assert_eq!(p.eval(&x), schur(&lam, &x), "{lam}");
        }
    }
}

#[test]
fn eigenfunctions_of_the_operator() {
    let x = [q(3, 2), q(-2, 5), q(7, 3)];
    for th in [q(1, 2), q(3, 7), q(2, 1)] {
        for n in 1..=4 {
            for lam in enumerate_partitions(n, 3) {
                let p = to_zpoly(&jack(&lam, &th, 3).unwrap());
                let lhs = operator_at(&p, &th, &x);
                assert_eq!(lhs, expected_eigenvalue(&lam, &th, 3) * p.eval(&x), "{lam} at theta {th}");
            }
        }
    }
}

#[test]
fn value_at_ones() {
    let ones = vec![Rational::from_int(1); 3];
    for th in [q(1, 2), q(4, 3)] {
        for lam in enumerate_partitions(4, 3) {
            let p = jack(&lam, &th, 3).unwrap();
            assert_eq!(jack_at_ones(&lam, &th, 3), p.eval(&ones));
        }
    }
    assert_eq!(jack_at_ones(&part(&[1, 1, 1]), &q(1, 2), 2), q(0, 1));
}

#[test]
fn too_many_parts() {
    assert!(jack(&part(&[1, 1, 1]), &q(1, 1), 2).is_err());
}

#[test]
fn product_of_two_boxes() {
    for th in [q(1, 2), q(1, 1), q(9, 4)] {
        let c = structure_constants(&part(&[1]), &part(&[1]), &th, 2, false).unwrap();
        assert_eq!(c[&part(&[2])], q(1, 1));
        assert_eq!(c[&part(&[1, 1])], Rational::from_int(2) / (Rational::from_int(1) + th));
    }
}

#[test]
fn structure_constants_reassemble_the_product() {
    let th = q(3, 7);
    let x = [q(1, 2), q(2, 3), q(-3, 4), q(5, 1)];
    let mut table = JackTable::new(th.clone(), 4);
    for (nu, mu) in [(part(&[2]), part(&[1])), (part(&[1, 1]), part(&[2])), (part(&[2, 1]), part(&[1]))] {
        let c = structure_constants(&nu, &mu, &th, 4, false).unwrap();
        let lhs = table.get(&nu).unwrap().eval(&x) * table.get(&mu).unwrap().eval(&x);
        let mut rhs = Rational::from_int(0);
        for (lam, v) in &c {
            assert_eq!(lam.size(), nu.size() + mu.size());
            rhs += v.clone() * table.get(lam).unwrap().eval(&x);
        }
        assert_eq!(lhs, rhs);
    }
}

#[test]
fn one_row_series_matches_q_normalization() {
    // Q_(k) = b_(k) P_(k)
    let th = q(2, 3);
    let r = [q(1, 2), q(3, 1)];
    let s = onerow_q_series(&r, &th, 4).unwrap();
    for k in 1..=4 {
        let p = jack(&Partition::row(k), &th, 2).unwrap().eval(&r);
        assert_eq!(s.coeff(k), dual_b(&Partition::row(k), &th).unwrap() * p);
    }
}

#[test]
fn float_and_exact_agree() {
    let lam = part(&[2, 1]);
    let exact = jack(&lam, &q(1, 2), 3).unwrap();
    let float = jack(&lam, &0.5f64, 3).unwrap();
    for (k, v) in exact.terms() {
        assert!((float.coeff(k) - v.to_f64_lossy()).abs() < 1e-12);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn triangular_and_monic(n in 1usize..6, th_num in 1i64..9, th_den in 1i64..5) {
        let th = q(th_num, th_den);
        for lam in enumerate_partitions(n, 3) {
            let p = jack(&lam, &th, 3).unwrap();
            prop_assert_eq!(p.coeff(&lam), q(1, 1));
            for k in p.terms().keys() {
                prop_assert!(k.dominated_by(&lam), "{} not below {}", k, lam);
            }
        }
    }

    #[test]
    fn sympoly_product_evaluates_pointwise(a in -5i64..5, b in 1i64..5, c in -5i64..5) {
        let x = [q(a, b), q(c, 3), q(1, 1)];
        let f = SymPoly::<Rational>::power_sum(2, 3).add(&SymPoly::elementary(2, 3));
        let g = SymPoly::<Rational>::elementary(1, 3);
        prop_assert_eq!(f.mul(&g).eval(&x), f.eval(&x) * g.eval(&x));
    }
}
