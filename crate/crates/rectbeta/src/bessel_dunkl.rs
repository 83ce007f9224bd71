//! Truncated type-BC Bessel series, Bessel generating functions of atomic
//! measures, and the rational Dunkl operators that act on them.

use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use crate::error::{invalid, Result};
use crate::jack::{distinct_perms, jack_at_ones, JackTable, SymPoly};
use crate::partitions::{enumerate_partitions, gen_pochhammer, hook_products, Partition};
use crate::scalar::{factorial, Scalar};
use crate::series::Series;

/// Polynomial in z_1..z_M keyed by exponent vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct ZPoly<S> {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, S>,
}

impl<S: Scalar> ZPoly<S> {
    pub fn zero(nvars: usize) -> Self {
        ZPoly { nvars, terms: BTreeMap::new() }
    }

    pub fn constant(nvars: usize, c: S) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    pub fn monomial(exps: Vec<u32>, c: S) -> Self {
        let mut p = Self::zero(exps.len());
        p.add_term(exps, c);
        p
    }

    /// The single variable z_i (0-based).
    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Self::monomial(e, S::one())
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, S> {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, exps: &[u32]) -> S {
        self.terms.get(exps).cloned().unwrap_or_else(S::zero)
    }

    pub fn constant_term(&self) -> S {
        self.coeff(&vec![0; self.nvars])
    }

    pub fn add_term(&mut self, exps: Vec<u32>, c: S) {
        assert_eq!(exps.len(), self.nvars, "exponent vector length must equal nvars");
        if c.is_zero() {
            return;
        }
        match self.terms.entry(exps) {
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
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.scale(&-S::one()))
    }

    pub fn scale(&self, c: &S) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v.clone() * c.clone());
        }
        out
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e = ea.iter().zip(eb).map(|(x, y)| x + y).collect();
                out.add_term(e, ca.clone() * cb.clone());
            }
        }
        out
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|e| e.iter().sum()).max()
    }

    /// Drops every term of total degree above `max_deg`.
    pub fn truncate(&self, max_deg: u32) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e.iter().sum::<u32>() <= max_deg {
                out.add_term(e.clone(), c.clone());
            }
        }
        out
    }

    pub fn eval(&self, z: &[S]) -> S {
        assert_eq!(z.len(), self.nvars);
        let mut acc = S::zero();
        for (e, c) in &self.terms {
            let mut t = c.clone();
            for (zi, &k) in z.iter().zip(e) {
                t = t * zi.powi(k as usize);
            }
            acc = acc + t;
        }
        acc
    }

    /// Partial derivative in z_i.
    pub fn partial(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            if e[i] > 0 {
                let mut f = e.clone();
                f[i] -= 1;
                out.add_term(f, c.clone() * S::from_int(e[i] as i64));
            }
        }
        out
    }

    /// Reorders variables: the new variable `perm[k]` carries old variable k.
    pub fn permute(&self, perm: &[usize]) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let mut f = vec![0; self.nvars];
            for (k, &x) in e.iter().enumerate() {
                f[perm[k]] = x;
            }
            out.add_term(f, c.clone());
        }
        out
    }

    /// Substitutes z_i -> -z_i.
    pub fn flip_sign(&self, i: usize) -> Self {
        let mut out = Self::zero(self.nvars);
        for (e, c) in &self.terms {
            let v = if e[i] % 2 == 1 { -c.clone() } else { c.clone() };
            out.add_term(e.clone(), v);
        }
        out
    }

    /// Restriction to z_1 = z, all other variables zero, as a series of the given order.
    pub fn restrict_first(&self, order: usize) -> Series<S> {
        let mut s = Series::zero(order);
        for (e, c) in &self.terms {
            if e.iter().skip(1).all(|&x| x == 0) && (e[0] as usize) <= order {
                s.set_coeff(e[0] as usize, s.coeff(e[0] as usize) + c.clone());
            }
        }
        s
    }

    /// f(z_1^2, ..., z_M^2) for a symmetric polynomial f given in the monomial basis.
    pub fn from_sympoly_squared(f: &SymPoly<S>) -> Self {
        let m = f.nvars();
        let mut out = Self::zero(m);
        for (lam, c) in f.terms() {
            for perm in distinct_perms(lam.padded(m)) {
                out.add_term(perm.iter().map(|&x| 2 * x as u32).collect(), c.clone());
            }
        }
        out
    }
}

/// Adds (1 - s_ij) mono / (z_i - z_j), or with `plus` set (1 - t_ij) mono / (z_i + z_j), times `c`.
fn divided_difference<S: Scalar>(out: &mut ZPoly<S>, e: &[u32], c: &S, i: usize, j: usize, plus: bool) {
    let (a, b) = (e[i], e[j]);
    if a == b {
        return;
    }
    let (hi, lo) = (a.max(b), a.min(b));
    let sgn = if a > b { S::one() } else { -S::one() };
    for k in 0..(hi - lo) {
        let mut f = e.to_vec();
        f[i] = hi - 1 - k;
        f[j] = lo + k;
        let mut v = sgn.clone() * c.clone();
        if plus && (b + lo + k) % 2 == 1 {
            v = -v;
        }
        out.add_term(f, v);
    }
}

/// D_i f with root multiplicities fixed by (theta, M, N); `i` is 0-based.
pub fn dunkl_apply<S: Scalar>(i: usize, f: &ZPoly<S>, theta: &S, n: usize) -> Result<ZPoly<S>> {
    let m = f.nvars();
    if i >= m {
        return invalid(format!("Dunkl index {i} out of range for {m} variables"));
    }
    if m > n {
        return invalid(format!("M = {m} exceeds N = {n}"));
    }
    let half = S::from_ratio(1, 2);
    let kappa = theta.clone() * S::from_nat(n - m + 1) - half;
    let mut out = f.partial(i);
    for (e, c) in f.terms() {
        if e[i] % 2 == 1 {
            let mut g = e.clone();
            g[i] -= 1;
            out.add_term(g, S::from_int(2) * kappa.clone() * c.clone());
        }
        let tc = theta.clone() * c.clone();
        for j in (0..m).filter(|&j| j != i) {
            divided_difference(&mut out, e, &tc, i, j, false);
            divided_difference(&mut out, e, &tc, i, j, true);
        }
    }
    Ok(out)
}

/// sum_i D_i^k f.
pub fn dunkl_power_sum<S: Scalar>(k: usize, f: &ZPoly<S>, theta: &S, n: usize) -> Result<ZPoly<S>> {
    let mut acc = ZPoly::zero(f.nvars());
    for i in 0..f.nvars() {
        let mut g = f.clone();
        for _ in 0..k {
            g = dunkl_apply(i, &g, theta, n)?;
        }
        acc = acc.add(&g);
    }
    Ok(acc)
}

/// Truncated Bessel function B(a; z; theta, N) in M variables.
#[derive(Clone, Debug)]
pub struct BesselTrunc<S> {
    pub m: usize,
    pub n: usize,
    pub theta: S,
    pub spectrum_sq: Vec<S>,
    pub order: usize,
    pub poly: ZPoly<S>,
}

fn check_params<S: Scalar>(theta: &S, m: usize, n: usize) -> Result<()> {
    if m == 0 || m > n {
        return invalid(format!("need 1 <= M <= N, got M = {m}, N = {n}"));
    }
    if !theta.is_positive() {
        return invalid("theta must be positive");
    }
    Ok(())
}

/// Coefficient of P_mu(z^2) in the Bessel series, with P_mu(a^2) supplied by `weight`.
fn series_terms<S: Scalar>(
    theta: &S,
    m: usize,
    n: usize,
    order: usize,
    mut weight: impl FnMut(&SymPoly<S>) -> S,
) -> Result<Vec<(Partition, SymPoly<S>, S)>> {
    let mut table = JackTable::new(theta.clone(), m);
    let t = theta.clone() * S::from_nat(n);
    let mut out = Vec::new();
    for d in 0..=order {
        let quarter = S::one() / S::from_int(4).powi(d);
        for mu in enumerate_partitions(d, m) {
            let p = table.get(&mu)?.clone();
            let w = weight(&p);
            if w.is_zero() {
                continue;
            }
            let (h, _) = hook_products(&mu, theta);
            let coef = w * quarter.clone() / (gen_pochhammer(&t, &mu, theta) * h * jack_at_ones(&mu, theta, m));
            out.push((mu, p, coef));
        }
    }
    Ok(out)
}

fn assemble<S: Scalar>(m: usize, terms: &[(Partition, SymPoly<S>, S)]) -> ZPoly<S> {
    let mut poly = ZPoly::zero(m);
    for (_, p, c) in terms {
        poly = poly.add(&ZPoly::from_sympoly_squared(p).scale(c));
    }
    poly
}

pub fn bessel_trunc<S: Scalar>(spectrum_sq: &[S], theta: &S, m: usize, n: usize, order: usize) -> Result<BesselTrunc<S>> {
    check_params(theta, m, n)?;
    if spectrum_sq.len() != m {
        return invalid(format!("spectrum has {} entries, expected {m}", spectrum_sq.len()));
    }
    let terms = series_terms(theta, m, n, order, |p| p.eval(spectrum_sq))?;
    Ok(BesselTrunc {
        m,
        n,
        theta: theta.clone(),
        spectrum_sq: spectrum_sq.to_vec(),
        order,
        poly: assemble(m, &terms),
    })
}

/// Finitely supported measure on spectra (squared singular values).
#[derive(Clone, Debug)]
pub struct AtomicMeasure<S> {
    atoms: Vec<(Vec<S>, S)>,
}

impl<S: Scalar> AtomicMeasure<S> {
    pub fn new(atoms: Vec<(Vec<S>, S)>) -> Result<Self> {
        let total = atoms.iter().fold(S::zero(), |acc, (_, w)| acc + w.clone());
        if !(total - S::one()).is_zero() {
            return invalid("atom weights must sum to 1");
        }
        for (sp, _) in &atoms {
            if sp.windows(2).any(|w| w[0] < w[1]) || sp.iter().any(|x| x.is_negative()) {
                return invalid("each spectrum must be weakly decreasing and nonnegative");
            }
        }
        Ok(AtomicMeasure { atoms })
    }

    pub fn point(spectrum_sq: Vec<S>) -> Self {
        AtomicMeasure { atoms: vec![(spectrum_sq, S::one())] }
    }

    pub fn atoms(&self) -> &[(Vec<S>, S)] {
        &self.atoms
    }
}

/// Bessel generating function: the measure-weighted average of truncated Bessel series.
pub fn bgf<S: Scalar>(measure: &AtomicMeasure<S>, theta: &S, m: usize, n: usize, order: usize) -> Result<ZPoly<S>> {
    check_params(theta, m, n)?;
    if measure.atoms.iter().any(|(sp, _)| sp.len() != m) {
        return invalid(format!("every atom needs {m} entries"));
    }
    let terms = series_terms(theta, m, n, order, |p| {
        measure.atoms.iter().fold(S::zero(), |acc, (sp, w)| acc + w.clone() * p.eval(sp))
    })?;
    Ok(assemble(m, &terms))
}

/// exp(1/2 sum z_i^2) through total degree 2 * order.
pub fn exp_half_square_sum<S: Scalar>(m: usize, order: usize) -> ZPoly<S> {
    let mut out = ZPoly::zero(m);
    for d in 0..=order {
        for lam in enumerate_partitions(d, m) {
            let mut c = S::one() / S::from_int(2).powi(d);
            for &p in lam.parts() {
                c = c / factorial::<S>(p);
            }
            for perm in distinct_perms(lam.padded(m)) {
                out.add_term(perm.iter().map(|&x| 2 * x as u32).collect(), c.clone());
            }
        }
    }
    out
}

/// k_l = d^l/dz_1^l ln G at 0, divided by (l-1)!, for l = 1..=order.
pub fn log_derivative_cumulants<S: Scalar>(g: &ZPoly<S>, order: usize) -> Result<Vec<S>> {
    let s = g.restrict_first(order).ln()?;
    Ok((1..=order).map(|l| S::from_nat(l) * s.coeff(l)).collect())
}

/// Compares B(a; w; theta, N) at w_i = 2 sqrt(N theta) z_i against
/// (1/M!) sum_sigma prod_i exp(a_i^2 z_sigma(i)^2). Returns (lhs, rhs, |lhs - rhs|).
pub fn hightemp_limit_check<S: Scalar>(
    spectrum_sq: &[S],
    m: usize,
    n: usize,
    theta: &S,
    z_points: &[S],
    order: usize,
) -> Result<(f64, f64, f64)> {
    check_params(theta, m, n)?;
    if spectrum_sq.len() != m || z_points.len() != m {
        return invalid("spectrum and evaluation point need M entries");
    }
    let terms = series_terms(theta, m, n, order, |p| p.eval(spectrum_sq))?;
    let scale = S::from_int(4) * S::from_nat(n) * theta.clone();
    let z2: Vec<S> = z_points.iter().map(|z| z.clone() * z.clone()).collect();
    let mut lhs = S::zero();
    for (mu, p, c) in &terms {
        lhs = lhs + c.clone() * scale.powi(mu.size()) * p.eval(&z2);
    }
    let a2: Vec<f64> = spectrum_sq.iter().map(|x| x.to_f64_lossy()).collect();
    let zf: Vec<f64> = z2.iter().map(|x| x.to_f64_lossy()).collect();
    let perms = distinct_perms((0..m).collect());
    let rhs = perms
        .iter()
        .map(|s| s.iter().enumerate().map(|(i, &j)| (a2[i] * zf[j]).exp()).product::<f64>())
        .sum::<f64>()
        / perms.len() as f64;
    let lhs = lhs.to_f64_lossy();
    Ok((lhs, rhs, (lhs - rhs).abs()))
}
