//! Exact moments of the rectangular addition c = a (+) b at finite (M, N, theta),
//! the expected characteristic polynomial, and the M = 1 fluctuation formulas.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use crate::error::{invalid, Result};
use crate::jack::{jack_at_ones, structure_constants_in, JackTable, SymPoly};
use crate::partitions::{enumerate_partitions, gen_pochhammer, hook_products, Partition};
use crate::scalar::{binomial, factorial, rising, Scalar};

#[derive(Clone, Debug, PartialEq)]
pub struct BetaParams<S> {
    pub m: usize,
    pub n: usize,
    pub theta: S,
}

impl<S: Scalar> BetaParams<S> {
    pub fn new(m: usize, n: usize, theta: S) -> Result<Self> {
        if m == 0 || m > n {
            return invalid(format!("need 1 <= M <= N, got M = {m}, N = {n}"));
        }
        if !theta.is_positive() {
            return invalid("theta must be positive");
        }
        Ok(BetaParams { m, n, theta })
    }
}

/// Checks that `r` is a valid spectrum of squared singular values for M = r.len().
pub fn check_spectrum<S: Scalar>(r: &[S], m: usize) -> Result<()> {
    if r.len() != m {
        return invalid(format!("spectrum has {} entries, expected {m}", r.len()));
    }
    if r.windows(2).any(|w| w[0] < w[1]) || r.iter().any(|x| x.is_negative()) {
        return invalid("spectrum must be weakly decreasing and nonnegative");
    }
    Ok(())
}

/// Caches Jack tables and structure constants across moment evaluations at fixed parameters.
pub struct ConvEngine<S> {
    params: BetaParams<S>,
    small: JackTable<S>,
    big: BTreeMap<usize, JackTable<S>>,
    constants: HashMap<(Partition, Partition), BTreeMap<Partition, S>>,
}

impl<S: Scalar> ConvEngine<S> {
    pub fn new(params: BetaParams<S>) -> Self {
        let small = JackTable::new(params.theta.clone(), params.m);
        ConvEngine { params, small, big: BTreeMap::new(), constants: HashMap::new() }
    }

    pub fn params(&self) -> &BetaParams<S> {
        &self.params
    }

    fn constant(&mut self, nu: &Partition, mu: &Partition, lambda: &Partition) -> Result<S> {
        let key = (nu.clone(), mu.clone());
        if !self.constants.contains_key(&key) {
            let n = self.params.m.max(nu.size() + mu.size());
            let theta = self.params.theta.clone();
            let table = self.big.entry(n).or_insert_with(|| JackTable::new(theta, n));
            let c = structure_constants_in(table, nu, mu)?;
            self.constants.insert(key.clone(), c);
        }
        Ok(self.constants[&key].get(lambda).cloned().unwrap_or_else(S::zero))
    }

    /// E[P_lambda(c_1^2, ..., c_M^2; theta)].
    pub fn jack_moment(&mut self, lambda: &Partition, ra: &[S], rb: &[S]) -> Result<S> {
        let (m, n) = (self.params.m, self.params.n);
        let theta = self.params.theta.clone();
        check_spectrum(ra, m)?;
        check_spectrum(rb, m)?;
        if lambda.len() > m {
            return invalid(format!("{lambda} has more than M = {m} parts"));
        }
        let t = theta.clone() * S::from_nat(n);
        let poch = |p: &Partition| gen_pochhammer(&t, p, &theta);
        let hook = |p: &Partition| hook_products(p, &theta).0;
        let ones = |p: &Partition| jack_at_ones(p, &theta, m);
        let top = poch(lambda) * hook(lambda) * ones(lambda);
        let d = lambda.size();
        let mut acc = S::zero();
        for d1 in 0..=d {
            for nu in enumerate_partitions(d1, m) {
                let pa = self.small.get(&nu)?.eval(ra);
                if pa.is_zero() {
                    continue;
                }
                for mu in enumerate_partitions(d - d1, m) {
                    let pb = self.small.get(&mu)?.eval(rb);
                    if pb.is_zero() {
                        continue;
                    }
                    let c = self.constant(&nu, &mu, lambda)?;
                    if c.is_zero() {
                        continue;
                    }
                    let bottom = poch(&nu) * poch(&mu) * hook(&nu) * hook(&mu) * ones(&nu) * ones(&mu);
                    acc = acc + top.clone() / bottom * c * pa.clone() * pb;
                }
            }
        }
        Ok(acc)
    }

    /// E[f(c_1^2, ..., c_M^2)] for a symmetric polynomial f in M variables.
    pub fn expectation(&mut self, f: &SymPoly<S>, ra: &[S], rb: &[S]) -> Result<S> {
        let expansion = self.small.to_jack_basis(f)?;
        let mut acc = S::zero();
        for (lam, c) in expansion {
            acc = acc + c * self.jack_moment(&lam, ra, rb)?;
        }
        Ok(acc)
    }

    /// E[(1/M) sum_i c_i^(2k)], the even moment of the symmetrized empirical measure.
    pub fn normalized_power_moment(&mut self, k: usize, ra: &[S], rb: &[S]) -> Result<S> {
        let m = self.params.m;
        let e = self.expectation(&SymPoly::power_sum(k, m), ra, rb)?;
        Ok(e / S::from_nat(m))
    }
}

pub fn conv_jack_moment<S: Scalar>(lambda: &Partition, ra: &[S], rb: &[S], params: &BetaParams<S>) -> Result<S> {
    ConvEngine::new(params.clone()).jack_moment(lambda, ra, rb)
}

/// Monic polynomial of degree M, coefficients stored by ascending power.
#[derive(Clone, Debug, PartialEq)]
pub struct CharPoly<S> {
    pub coeffs: Vec<S>,
}

impl<S: Scalar> CharPoly<S> {
    pub fn degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    /// Coefficient of z^(M - l).
    pub fn coeff_from_top(&self, l: usize) -> S {
        self.coeffs[self.degree() - l].clone()
    }
}

impl<S: Scalar> fmt::Display for CharPoly<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let d = self.degree();
        write!(f, "z^{d}")?;
        for k in (0..d).rev() {
            let c = &self.coeffs[k];
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            let a = c.abs();
            if k == 0 {
                write!(f, " {sign} {a}")?;
            } else if a.is_one() {
                write!(f, " {sign} z^{k}")?;
            } else {
                write!(f, " {sign} {a}*z^{k}")?;
            }
        }
        Ok(())
    }
}

pub(crate) fn elementary<S: Scalar>(r: &[S]) -> Vec<S> {
    let mut e = vec![S::zero(); r.len() + 1];
    e[0] = S::one();
    for (k, x) in r.iter().enumerate() {
        for i in (1..=k + 1).rev() {
            e[i] = e[i].clone() + e[i - 1].clone() * x.clone();
        }
    }
    e
}

/// Expected characteristic polynomial of C C* (independent of theta).
pub fn rect_charpoly<S: Scalar>(ra: &[S], rb: &[S], m: usize, n: usize) -> Result<CharPoly<S>> {
    if m == 0 || m > n {
        return invalid(format!("need 1 <= M <= N, got M = {m}, N = {n}"));
    }
    check_spectrum(ra, m)?;
    check_spectrum(rb, m)?;
    let ea = elementary(ra);
    let eb = elementary(rb);
    let f = |k: usize| factorial::<S>(k);
    let mut coeffs = vec![S::zero(); m + 1];
    for l in 0..=m {
        let mut acc = S::zero();
        for i in 0..=l {
            let j = l - i;
            let wm = f(m - i) * f(m - j) / (f(m) * f(m - l));
            let wn = f(n - i) * f(n - j) / (f(n) * f(n - l));
            acc = acc + wm * wn * ea[i].clone() * eb[j].clone();
        }
        if l % 2 == 1 {
            acc = -acc;
        }
        coeffs[m - l] = acc;
    }
    Ok(CharPoly { coeffs })
}

/// The same polynomial assembled from E[e_l(c^2)] = E[P_{1^l}(c^2)] at the given theta.
pub fn charpoly_from_moments<S: Scalar>(ra: &[S], rb: &[S], params: &BetaParams<S>) -> Result<CharPoly<S>> {
    let m = params.m;
    let mut engine = ConvEngine::new(params.clone());
    let mut coeffs = vec![S::zero(); m + 1];
    for l in 0..=m {
        let v = engine.jack_moment(&Partition::column(l), ra, rb)?;
        coeffs[m - l] = if l % 2 == 1 { -v } else { v };
    }
    Ok(CharPoly { coeffs })
}

/// |E[P_lambda(c^2)] - prod_i E[e_i(c^2)]^(lambda_i - lambda_{i+1})| at the given theta.
pub fn lowtemp_concentration_gap<S: Scalar>(lambda: &Partition, ra: &[S], rb: &[S], params: &BetaParams<S>) -> Result<S> {
    let mut engine = ConvEngine::new(params.clone());
    let lhs = engine.jack_moment(lambda, ra, rb)?;
    let mut rhs = S::one();
    for i in 1..=lambda.len() {
        let mult = lambda.part(i - 1) - lambda.part(i);
        if mult > 0 {
            rhs = rhs * engine.jack_moment(&Partition::column(i), ra, rb)?.powi(mult);
        }
    }
    Ok((lhs - rhs).abs())
}

/// Closed form for the moment of order `order` of sqrt(theta)(c_1^2 - a_1^2 - b_1^2) at M = 1:
/// theta^k (2k)!/k! (a^2 b^2)^k / (theta N)_k when order = 2k, zero when order is odd.
pub fn m1_fluct_moment<S: Scalar>(order: usize, ra1: &S, rb1: &S, theta: &S, n: usize) -> S {
    if order % 2 == 1 {
        return S::zero();
    }
    let k = order / 2;
    let t = theta.clone() * S::from_nat(n);
    theta.powi(k) * factorial::<S>(2 * k) / factorial::<S>(k) * (ra1.clone() * rb1.clone()).powi(k) / rising(&t, k)
}

/// E[(c_1^2 - a_1^2 - b_1^2)^order] at M = 1 from the exact Jack-moment formula (no sqrt(theta) factor).
pub fn m1_centered_moment<S: Scalar>(order: usize, ra1: &S, rb1: &S, theta: &S, n: usize) -> Result<S> {
    let params = BetaParams::new(1, n, theta.clone())?;
    let mut engine = ConvEngine::new(params);
    let s = ra1.clone() + rb1.clone();
    let mut acc = S::zero();
    for l in 0..=order {
        let e = engine.jack_moment(&Partition::row(l), std::slice::from_ref(ra1), std::slice::from_ref(rb1))?;
        let mut term = binomial::<S>(order, l) * e * s.powi(order - l);
        if (order - l) % 2 == 1 {
            term = -term;
        }
        acc = acc + term;
    }
    Ok(acc)
}

/// Coefficients (ascending in z) of sum_p (-1)^(l-p)/((l-p)! p!) (z+p)(z+p+1)...(z+p+q-1).
pub fn binom_identity_poly<S: Scalar>(l: usize, q: usize) -> Vec<S> {
    let mut total = vec![S::zero(); q + 1];
    for p in 0..=l {
        let mut poly = vec![S::one()];
        for t in 0..q {
            let shift = S::from_nat(p + t);
            let mut next = vec![S::zero(); poly.len() + 1];
            for (i, c) in poly.iter().enumerate() {
                next[i + 1] = next[i + 1].clone() + c.clone();
                next[i] = next[i].clone() + c.clone() * shift.clone();
            }
            poly = next;
        }
        let mut w = S::one() / (factorial::<S>(l - p) * factorial::<S>(p));
        if (l - p) % 2 == 1 {
            w = -w;
        }
        for (i, c) in poly.into_iter().enumerate() {
            total[i] = total[i].clone() + w.clone() * c;
        }
    }
    total
}

/// True when the alternating sum is the zero polynomial for q < l and the constant 1 for q = l.
pub fn binom_identity_check(l: usize, q: usize) -> bool {
    use num_rational::BigRational;
    if q > l {
        return false;
    }
    let poly: Vec<BigRational> = binom_identity_poly(l, q);
    let expect_const = if q == l { BigRational::from_int(1) } else { BigRational::from_int(0) };
    poly[0] == expect_const && poly.iter().skip(1).all(num_traits::Zero::is_zero)
}
