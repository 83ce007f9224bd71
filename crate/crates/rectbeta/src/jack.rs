//! Symmetric polynomials in the monomial basis and Jack polynomials.
//!
//! `P_lambda(x; theta)` is obtained as the monic triangular eigenvector of the
//! second-order operator
//! `1/2 sum x_i^2 d_i^2 + theta sum_{i<j} (x_i^2 d_i - x_j^2 d_j)/(x_i - x_j)`
//! acting on the monomial basis. Its matrix is lower triangular in
//! lexicographic order, so the eigenvector comes out of a back-substitution.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{invalid, Error, Result};
use crate::partitions::{enumerate_partitions, gen_pochhammer, hook_products, Partition};
use crate::scalar::Scalar;
use crate::series::Series;

/// Symmetric polynomial in `nvars` variables, stored as coefficients of m_lambda.
#[derive(Clone, Debug, PartialEq)]
pub struct SymPoly<S> {
    nvars: usize,
    coeffs: BTreeMap<Partition, S>,
}

impl<S: Scalar> SymPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        SymPoly { nvars, coeffs: BTreeMap::new() }
    }

    pub fn one(nvars: usize) -> Self {
        Self::monomial(&Partition::empty(), nvars)
    }

    /// m_lambda; zero when lambda has more parts than variables.
    pub fn monomial(lambda: &Partition, nvars: usize) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(lambda.clone(), S::one());
        p
    }

    /// Elementary symmetric polynomial e_k = m_{1^k}.
    pub fn elementary(k: usize, nvars: usize) -> Self {
        Self::monomial(&Partition::column(k), nvars)
    }

    /// Power sum p_k = m_(k).
    pub fn power_sum(k: usize, nvars: usize) -> Self {
        Self::monomial(&Partition::row(k), nvars)
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Partition, S> {
        &self.coeffs
    }

    pub fn coeff(&self, lambda: &Partition) -> S {
        self.coeffs.get(lambda).cloned().unwrap_or_else(S::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn add_term(&mut self, lambda: Partition, c: S) {
        if lambda.len() > self.nvars || c.is_zero() {
            return;
        }
        match self.coeffs.entry(lambda) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = o.get().clone() + c;
                if s.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (k, v) in &other.coeffs {
            out.add_term(k.clone(), v.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let n = self.nvars.min(other.nvars);
        let mut out = Self::zero(n);
        for (a, ca) in &self.coeffs {
            for (b, cb) in &other.coeffs {
                let c = ca.clone() * cb.clone();
                for (lam, mult) in monomial_product(a, b, n) {
                    out.add_term(lam, c.clone() * S::from_nat(mult));
                }
            }
        }
        out
    }

    /// Evaluates at a point with exactly `nvars` coordinates.
    pub fn eval(&self, x: &[S]) -> S {
        assert_eq!(x.len(), self.nvars, "point dimension must match nvars");
        let mut acc = S::zero();
        for (lam, c) in &self.coeffs {
            acc = acc + c.clone() * eval_monomial(lam, x);
        }
        acc
    }

    /// Converts the coefficients to another scalar type through `f`.
    pub fn map<T: Scalar>(&self, f: impl Fn(&S) -> T) -> SymPoly<T> {
        let mut out = SymPoly::zero(self.nvars);
        for (k, v) in &self.coeffs {
            out.add_term(k.clone(), f(v));
        }
        out
    }
}

/// Distinct permutations of a multiset, in lexicographic order.
pub(crate) fn distinct_perms(mut v: Vec<usize>) -> Vec<Vec<usize>> {
    v.sort_unstable();
    let mut out = vec![v.clone()];
    loop {
        let n = v.len();
        let Some(i) = (1..n).rev().find(|&i| v[i - 1] < v[i]) else { break };
        let j = (i..n).rev().find(|&j| v[j] > v[i - 1]).unwrap();
        v.swap(i - 1, j);
        v[i..].reverse();
        out.push(v.clone());
    }
    out
}

pub fn eval_monomial<S: Scalar>(lambda: &Partition, x: &[S]) -> S {
    if lambda.len() > x.len() {
        return S::zero();
    }
    let mut acc = S::zero();
    for perm in distinct_perms(lambda.padded(x.len())) {
        let mut term = S::one();
        for (xi, &e) in x.iter().zip(&perm) {
            if e > 0 {
                term = term * xi.powi(e);
            }
        }
        acc = acc + term;
    }
    acc
}

/// m_nu * m_mu in `n` variables as multiplicities of m_lambda.
pub fn monomial_product(nu: &Partition, mu: &Partition, n: usize) -> BTreeMap<Partition, usize> {
    let mut out = BTreeMap::new();
    if nu.len() > n || mu.len() > n {
        return out;
    }
    let pa = distinct_perms(nu.padded(n));
    let pb = distinct_perms(mu.padded(n));
    for a in &pa {
        for b in &pb {
            let s: Vec<usize> = a.iter().zip(b).map(|(x, y)| x + y).collect();
            if s.windows(2).all(|w| w[0] >= w[1]) {
                *out.entry(Partition::from_sorted(s)).or_insert(0) += 1;
            }
        }
    }
    out
}

/// Diagonal entry of the operator on m_nu.
fn eigenvalue<S: Scalar>(nu: &Partition, theta: &S, m: usize) -> S {
    let mut quad = 0usize;
    let mut lin = 0usize;
    for (i, &p) in nu.parts().iter().enumerate() {
        quad += p * (p.saturating_sub(1));
        lin += (m - 1 - i) * p;
    }
    S::from_nat(quad) / S::from_int(2) + theta.clone() * S::from_nat(lin)
}

/// Jack polynomial P_lambda(x; theta) in `m` variables, in the monomial basis.
pub fn jack<S: Scalar>(lambda: &Partition, theta: &S, m: usize) -> Result<SymPoly<S>> {
    if lambda.len() > m {
        return invalid(format!("{lambda} has more than {m} parts"));
    }
    let basis: Vec<Partition> = enumerate_partitions(lambda.size(), m).into_iter().filter(|nu| nu <= lambda).collect();
    let c_top = eigenvalue(lambda, theta, m);
    let mut u: BTreeMap<Partition, S> = BTreeMap::new();
    u.insert(lambda.clone(), S::one());
    for nu in basis.iter().skip(1) {
        let v = nu.padded(m);
        let mut num = S::zero();
        for i in 0..m {
            for j in (i + 1)..m {
                let lo = v[i].min(v[j]);
                let sum = v[i] + v[j];
                for s in 0..lo {
                    let p = sum - s;
                    let mut w = v.clone();
                    w[i] = p;
                    w[j] = s;
                    let kappa = Partition::from_unsorted(w);
                    if let Some(uk) = u.get(&kappa) {
                        num = num + theta.clone() * S::from_nat(p - s) * uk.clone();
                    }
                }
            }
        }
        if num.is_zero() {
            continue;
        }
        let den = c_top.clone() - eigenvalue(nu, theta, m);
        if den.is_zero() {
            return Err(Error::SingularParameter(format!("eigenvalue collision between {lambda} and {nu} at theta = {theta}")));
        }
        u.insert(nu.clone(), num / den);
    }
    let mut out = SymPoly::zero(m);
    for (k, v) in u {
        out.add_term(k, v);
    }
    Ok(out)
}

/// Per-instance cache of Jack polynomials at fixed (theta, M).
#[derive(Clone, Debug)]
pub struct JackTable<S> {
    theta: S,
    nvars: usize,
    cache: BTreeMap<Partition, SymPoly<S>>,
}

impl<S: Scalar> JackTable<S> {
    pub fn new(theta: S, nvars: usize) -> Self {
        JackTable { theta, nvars, cache: BTreeMap::new() }
    }

    pub fn theta(&self) -> &S {
        &self.theta
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&mut self, lambda: &Partition) -> Result<&SymPoly<S>> {
        if !self.cache.contains_key(lambda) {
            let p = jack(lambda, &self.theta, self.nvars)?;
            self.cache.insert(lambda.clone(), p);
        }
        Ok(&self.cache[lambda])
    }

    /// Expands a symmetric polynomial in the Jack basis by peeling off leading terms.
    pub fn to_jack_basis(&mut self, f: &SymPoly<S>) -> Result<BTreeMap<Partition, S>> {
        if f.nvars() != self.nvars {
            return invalid("variable count mismatch");
        }
        let mut rest = f.clone();
        let mut out = BTreeMap::new();
        while let Some((lead, c)) = rest.terms().iter().next_back().map(|(k, v)| (k.clone(), v.clone())) {
            let p = self.get(&lead)?.scale(&c);
            rest = rest.sub(&p);
            out.insert(lead, c);
        }
        Ok(out)
    }
}

/// P_mu(1^M; theta) = (M theta)_mu / H'(mu).
pub fn jack_at_ones<S: Scalar>(mu: &Partition, theta: &S, m: usize) -> S {
    if mu.len() > m {
        return S::zero();
    }
    let (_, hp) = hook_products(mu, theta);
    gen_pochhammer(&(S::from_nat(m) * theta.clone()), mu, theta) / hp
}

/// b_lambda(theta) = H'(lambda) / H(lambda), the Q/P normalization.
pub fn dual_b<S: Scalar>(lambda: &Partition, theta: &S) -> Result<S> {
    let (h, hp) = hook_products(lambda, theta);
    if h.is_zero() {
        return Err(Error::SingularParameter(format!("H({lambda}) vanishes at theta = {theta}")));
    }
    Ok(hp / h)
}

/// prod_i (1 - r_i w)^(-theta) expanded in w = y^2; the coefficient of w^k is Q_(k)(r; theta).
pub fn onerow_q_series<S: Scalar>(r: &[S], theta: &S, order: usize) -> Result<Series<S>> {
    let mut log = Series::zero(order);
    for k in 1..=order {
        let pk = r.iter().fold(S::zero(), |acc, x| acc + x.powi(k));
        log.set_coeff(k, theta.clone() * pk / S::from_nat(k));
    }
    log.exp()
}

/// C^{nu,mu}_lambda(theta). By default the product is expanded in
/// max(M, |nu|+|mu|) variables, which makes the constants independent of M;
/// `allow_small_m` keeps exactly M variables.
pub fn structure_constants<S: Scalar>(
    nu: &Partition,
    mu: &Partition,
    theta: &S,
    m: usize,
    allow_small_m: bool,
) -> Result<BTreeMap<Partition, S>> {
    let n = if allow_small_m { m } else { m.max(nu.size() + mu.size()) };
    let mut table = JackTable::new(theta.clone(), n);
    structure_constants_in(&mut table, nu, mu)
}

pub fn structure_constants_in<S: Scalar>(
    table: &mut JackTable<S>,
    nu: &Partition,
    mu: &Partition,
) -> Result<BTreeMap<Partition, S>> {
    let n = table.nvars();
    if nu.len() > n || mu.len() > n {
        return invalid(format!("{nu} or {mu} exceeds {n} variables"));
    }
    let a = table.get(nu)?.clone();
    let b = table.get(mu)?.clone();
    table.to_jack_basis(&a.mul(&b))
}
