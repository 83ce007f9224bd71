//! The q-gamma moment/cumulant calculus.
//!
//! Sequences are stored without their odd entries: a moment slice `m` holds
//! m_2, m_4, ..., and a cumulant slice `k` holds k_2, k_4, ... . Missing
//! trailing entries count as zero. The classical, free and gamma transforms
//! use full sequences indexed from 1.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::partitions::{c_seq, enumerate_set_partitions, SetPartition, SetPartitionFilter};
use crate::scalar::{factorial, rising, Scalar};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct HTParams<S> {
    pub q: S,
    pub gamma: S,
}

impl<S: Scalar> HTParams<S> {
    pub fn new(q: S, gamma: S) -> Self {
        HTParams { q, gamma }
    }

    pub fn c(&self, i: usize) -> S {
        c_seq(i, &self.q, &self.gamma)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Route {
    Operator,
    Partition,
    GenFun,
    All,
}

impl FromStr for Route {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" => Ok(Route::Operator),
            "partition" => Ok(Route::Partition),
            "genfun" => Ok(Route::GenFun),
            "all" => Ok(Route::All),
            other => Err(Error::InvalidInput(format!("unknown route {other}"))),
        }
    }
}

impl fmt::Display for Route {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Route::Operator => "operator",
            Route::Partition => "partition",
            Route::GenFun => "genfun",
            Route::All => "all",
        };
        f.write_str(s)
    }
}

fn at<S: Scalar>(v: &[S], i: usize) -> S {
    v.get(i).cloned().unwrap_or_else(S::zero)
}

/// g(z) = sum_l k_l z^(l-1) truncated at degree `deg`, from a full 1-indexed cumulant list.
fn g_poly<S: Scalar>(k_full: &[S], deg: usize) -> Vec<S> {
    (0..=deg).map(|d| at(k_full, d)).collect()
}

fn even_to_full<S: Scalar>(k: &[S], kmax: usize) -> Vec<S> {
    (1..=2 * kmax).map(|l| if l % 2 == 0 { at(k, l / 2 - 1) } else { S::zero() }).collect()
}

fn mul_trunc<S: Scalar>(a: &[S], b: &[S], deg: usize) -> Vec<S> {
    let mut out = vec![S::zero(); deg + 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(deg + 1 - i.min(deg + 1)) {
            out[i + j] = out[i + j].clone() + x.clone() * y.clone();
        }
    }
    out
}

/// Iterates f -> (d/dz + a d + b d' + g*) f and records the constant term after each step.
fn operator_constants<S: Scalar>(g: &[S], a: &S, b: &S, steps: usize) -> Vec<S> {
    let deg = g.len() - 1;
    let mut f = g.to_vec();
    let mut out = Vec::with_capacity(steps);
    for _ in 0..steps {
        let mut next = mul_trunc(g, &f, deg);
        for n in 1..=deg {
            if f[n].is_zero() {
                continue;
            }
            let mut c = S::from_nat(n) + a.clone();
            if n % 2 == 1 {
                c = c + S::from_int(2) * b.clone();
            }
            next[n - 1] = next[n - 1].clone() + c * f[n].clone();
        }
        f = next;
        out.push(f[0].clone());
    }
    out
}

/// m_2k = [z^0](d/dz + 2 gamma d + ((q-1) gamma - 1/2) d' + g*)^(2k-1) g.
pub fn k2m_operator<S: Scalar>(k: &[S], p: &HTParams<S>, kmax: usize) -> Vec<S> {
    if kmax == 0 {
        return Vec::new();
    }
    let g = g_poly(&even_to_full(k, kmax), 2 * kmax);
    let a = S::from_int(2) * p.gamma.clone();
    let b = (p.q.clone() - S::one()) * p.gamma.clone() - S::from_ratio(1, 2);
    let consts = operator_constants(&g, &a, &b, 2 * kmax - 1);
    (1..=kmax).map(|j| consts[2 * j - 2].clone()).collect()
}

/// m_2k = sum over non-crossing even partitions of [2k] of W(pi) prod k_|B|.
pub fn k2m_partitions<S: Scalar>(k: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let mut acc = S::zero();
        for pi in enumerate_set_partitions(2 * j, SetPartitionFilter::NonCrossingEven) {
            let prod = block_product(&pi, |s| at(k, s / 2 - 1));
            if prod.is_zero() {
                continue;
            }
            acc = acc + pi.weight_with(|i| p.c(i))? * prod;
        }
        out.push(acc);
    }
    Ok(out)
}

fn block_product<S: Scalar>(pi: &SetPartition, val: impl Fn(usize) -> S) -> S {
    pi.block_sizes().into_iter().fold(S::one(), |acc, s| acc * val(s))
}

fn poch_product<S: Scalar>(p: &HTParams<S>, n: usize) -> S {
    let qg = p.q.clone() * p.gamma.clone();
    S::from_int(4).powi(n) * rising(&qg, n) * rising(&p.gamma, n)
}

/// Generating-function route, cumulants to moments.
pub fn k2m_genfun<S: Scalar>(k: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    if p.gamma.is_zero() {
        return Err(Error::DegenerateParameter("gamma = 0 in the generating-function route".into()));
    }
    let mut log_a = Series::zero(kmax);
    for l in 1..=kmax {
        log_a.set_coeff(l, at(k, l - 1) / S::from_nat(2 * l));
    }
    let a = log_a.exp()?;
    let c = Series::from_coeffs((0..=kmax).map(|n| a.coeff(n) * poch_product(p, n)).collect(), kmax);
    let lc = c.ln()?;
    Ok((1..=kmax).map(|j| S::from_nat(j) * lc.coeff(j) / p.gamma.clone()).collect())
}

/// The auxiliary sequence c_0..c_K with exp(gamma sum m_2k y^2k / k) = sum c_n y^2n.
pub fn genfun_aux<S: Scalar>(m: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let mut log_c = Series::zero(kmax);
    for j in 1..=kmax {
        log_c.set_coeff(j, p.gamma.clone() * at(m, j - 1) / S::from_nat(j));
    }
    Ok(log_c.exp()?.into_coeffs())
}

/// Generating-function route, moments to cumulants.
pub fn m2k_genfun<S: Scalar>(m: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let c = genfun_aux(m, p, kmax)?;
    let mut a = Vec::with_capacity(kmax + 1);
    for (n, cn) in c.iter().enumerate() {
        let d = poch_product(p, n);
        if d.is_zero() {
            return Err(Error::DegenerateParameter(format!("(q gamma)_{n} (gamma)_{n} vanishes")));
        }
        a.push(cn.clone() / d);
    }
    let la = Series::from_coeffs(a, kmax).ln()?;
    Ok((1..=kmax).map(|l| S::from_nat(2 * l) * la.coeff(l)).collect())
}

/// Inverse transform by triangular solve against the partition route.
pub fn m2k<S: Scalar>(m: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let mut k: Vec<S> = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let lead = (1..2 * j).fold(S::one(), |acc, i| acc * p.c(i));
        if lead.is_zero() {
            return Err(Error::DegenerateParameter(format!("leading product C_1...C_{} vanishes", 2 * j - 1)));
        }
        let mut rest = S::zero();
        for pi in enumerate_set_partitions(2 * j, SetPartitionFilter::NonCrossingEven) {
            if pi.blocks().len() == 1 {
                continue;
            }
            let prod = block_product(&pi, |s| at(&k, s / 2 - 1));
            if prod.is_zero() {
                continue;
            }
            rest = rest + pi.weight_with(|i| p.c(i))? * prod;
        }
        k.push((at(m, j - 1) - rest) / lead);
    }
    Ok(k)
}

fn agree<S: Scalar>(name: &str, a: &[S], b: &[S]) -> Result<()> {
    if a != b {
        return Err(Error::RouteDisagreement(format!("{name}: {a:?} vs {b:?}")));
    }
    Ok(())
}

/// Cumulants to moments through the chosen route; `Route::All` runs all three and requires equality.
pub fn k2m<S: Scalar>(k: &[S], p: &HTParams<S>, kmax: usize, route: Route) -> Result<Vec<S>> {
    match route {
        Route::Operator => Ok(k2m_operator(k, p, kmax)),
        Route::Partition => k2m_partitions(k, p, kmax),
        Route::GenFun => k2m_genfun(k, p, kmax),
        Route::All => {
            let a = k2m_partitions(k, p, kmax)?;
            agree("operator vs partition", &k2m_operator(k, p, kmax), &a)?;
            agree("genfun vs partition", &k2m_genfun(k, p, kmax)?, &a)?;
            Ok(a)
        }
    }
}

/// Moments to cumulants; the operator route shares the triangular inversion with the partition route.
pub fn m2k_route<S: Scalar>(m: &[S], p: &HTParams<S>, kmax: usize, route: Route) -> Result<Vec<S>> {
    match route {
        Route::Operator | Route::Partition => m2k(m, p, kmax),
        Route::GenFun => m2k_genfun(m, p, kmax),
        Route::All => {
            let a = m2k(m, p, kmax)?;
            agree("genfun vs partition", &m2k_genfun(m, p, kmax)?, &a)?;
            let padded: Vec<S> = (0..kmax).map(|i| at(m, i)).collect();
            agree("operator round trip", &k2m_operator(&a, p, kmax), &padded)?;
            Ok(a)
        }
    }
}

/// Moments of the q-gamma convolution: add cumulants, transform back.
pub fn qgamma_convolve<S: Scalar>(ma: &[S], mb: &[S], p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let ka = m2k(ma, p, kmax)?;
    let kb = m2k(mb, p, kmax)?;
    let kc: Vec<S> = ka.into_iter().zip(kb).map(|(a, b)| a + b).collect();
    k2m_partitions(&kc, p, kmax)
}

/// Moments of the q-gamma analogue of the semicircle: sum over non-crossing
/// perfect matchings of prod C_{P_i}. Cross-checked against the k_2 = 1 transform.
pub fn laguerre_moments<S: Scalar>(p: &HTParams<S>, kmax: usize) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let mut acc = S::zero();
        for pi in enumerate_set_partitions(2 * j, SetPartitionFilter::NcPerfectMatchings) {
            acc = acc + pi.weight_data().p.iter().fold(S::one(), |a, &i| a * p.c(i));
        }
        out.push(acc);
    }
    agree("matching sum vs k2 = 1 transform", &out, &k2m_partitions(&[S::one()], p, kmax)?)?;
    Ok(out)
}

/// Classical moments m_1..m_K from cumulants k'_1..k'_K (sum over all set partitions,
/// evaluated through the recursion m_n = sum_j binom(n-1, j-1) k'_j m_(n-j)).
pub fn classical_k2m<S: Scalar>(k: &[S], kmax: usize) -> Vec<S> {
    let mut m = vec![S::one()];
    for n in 1..=kmax {
        let mut acc = S::zero();
        for j in 1..=n {
            acc = acc + crate::scalar::binomial::<S>(n - 1, j - 1) * at(k, j - 1) * m[n - j].clone();
        }
        m.push(acc);
    }
    m.remove(0);
    m
}

pub fn classical_m2k<S: Scalar>(m: &[S], kmax: usize) -> Vec<S> {
    let mut full = vec![S::one()];
    full.extend((0..kmax).map(|i| at(m, i)));
    let mut k: Vec<S> = Vec::with_capacity(kmax);
    for n in 1..=kmax {
        let mut rest = S::zero();
        for j in 1..n {
            rest = rest + crate::scalar::binomial::<S>(n - 1, j - 1) * k[j - 1].clone() * full[n - j].clone();
        }
        k.push(full[n].clone() - rest);
    }
    k
}

/// Free moments m_1..m_K from free cumulants r_1..r_K.
pub fn free_k2m<S: Scalar>(r: &[S], kmax: usize) -> Vec<S> {
    (1..=kmax)
        .map(|n| {
            enumerate_set_partitions(n, SetPartitionFilter::NonCrossing)
                .iter()
                .fold(S::zero(), |acc, pi| acc + block_product(pi, |s| at(r, s - 1)))
        })
        .collect()
}

/// Even moments m_2..m_2K from rectangular free cumulants c_2, c_4, ... with ratio q.
pub fn rectfree_k2m<S: Scalar>(c: &[S], q: &S, kmax: usize) -> Vec<S> {
    (1..=kmax)
        .map(|j| {
            enumerate_set_partitions(2 * j, SetPartitionFilter::NonCrossingEven).iter().fold(S::zero(), |acc, pi| {
                let prod = block_product(pi, |s| at(c, s / 2 - 1));
                acc + prod / q.powi(pi.even_min_count())
            })
        })
        .collect()
}

/// Inverse of [`rectfree_k2m`]; the single-block coefficient is 1.
pub fn rectfree_m2k<S: Scalar>(m: &[S], q: &S, kmax: usize) -> Vec<S> {
    let mut c: Vec<S> = Vec::with_capacity(kmax);
    for j in 1..=kmax {
        let mut rest = S::zero();
        for pi in enumerate_set_partitions(2 * j, SetPartitionFilter::NonCrossingEven) {
            if pi.blocks().len() == 1 {
                continue;
            }
            rest = rest + block_product(&pi, |s| at(&c, s / 2 - 1)) / q.powi(pi.even_min_count());
        }
        c.push(at(m, j - 1) - rest);
    }
    c
}

/// gamma-moments m_1..m_K from gamma-cumulants k_1..k_K via [z^0](d/dz + gamma d + g*)^(n-1) g.
pub fn gamma_k2m_operator<S: Scalar>(k: &[S], gamma: &S, kmax: usize) -> Vec<S> {
    if kmax == 0 {
        return Vec::new();
    }
    let g = g_poly(k, kmax);
    let mut out = vec![at(&g, 0)];
    out.extend(operator_constants(&g, gamma, &S::zero(), kmax - 1));
    out
}

/// The same through non-crossing partitions with constants C_i = gamma + i.
pub fn gamma_k2m_partitions<S: Scalar>(k: &[S], gamma: &S, kmax: usize) -> Result<Vec<S>> {
    let mut out = Vec::with_capacity(kmax);
    for n in 1..=kmax {
        let mut acc = S::zero();
        for pi in enumerate_set_partitions(n, SetPartitionFilter::NonCrossing) {
            let prod = block_product(&pi, |s| at(k, s - 1));
            if prod.is_zero() {
                continue;
            }
            acc = acc + pi.weight_with(|i| gamma.clone() + S::from_nat(i))? * prod;
        }
        out.push(acc);
    }
    Ok(out)
}

/// Both gamma routes, required to agree.
pub fn gamma_k2m<S: Scalar>(k: &[S], gamma: &S, kmax: usize) -> Result<Vec<S>> {
    let a = gamma_k2m_partitions(k, gamma, kmax)?;
    agree("gamma operator vs partition", &gamma_k2m_operator(k, gamma, kmax), &a)?;
    Ok(a)
}

pub fn gamma_m2k<S: Scalar>(m: &[S], gamma: &S, kmax: usize) -> Result<Vec<S>> {
    let mut k: Vec<S> = Vec::with_capacity(kmax);
    for n in 1..=kmax {
        let lead = (1..n).fold(S::one(), |acc, i| acc * (gamma.clone() + S::from_nat(i)));
        if lead.is_zero() {
            return Err(Error::DegenerateParameter(format!("gamma leading product vanishes at order {n}")));
        }
        let mut rest = S::zero();
        for pi in enumerate_set_partitions(n, SetPartitionFilter::NonCrossing) {
            if pi.blocks().len() == 1 {
                continue;
            }
            let prod = block_product(&pi, |s| at(&k, s - 1));
            if prod.is_zero() {
                continue;
            }
            rest = rest + pi.weight_with(|i| gamma.clone() + S::from_nat(i))? * prod;
        }
        k.push((at(m, n - 1) - rest) / lead);
    }
    Ok(k)
}

/// Rescaled q-gamma cumulants at two parameter points against a limiting target.
#[derive(Clone, Debug)]
pub struct Degeneration<S> {
    pub target: Vec<S>,
    /// (q, gamma, rescaled cumulants, max absolute gap to target) per parameter point.
    pub points: Vec<(S, S, Vec<S>, S)>,
}

impl<S: Scalar> Degeneration<S> {
    pub fn gaps(&self) -> Vec<S> {
        self.points.iter().map(|p| p.3.clone()).collect()
    }
}

fn max_gap<S: Scalar>(a: &[S], b: &[S]) -> S {
    a.iter().zip(b).fold(S::zero(), |acc, (x, y)| {
        let d = (x.clone() - y.clone()).abs();
        if d > acc {
            d
        } else {
            acc
        }
    })
}

fn pow10<S: Scalar>(e: i32) -> S {
    let t = S::from_int(10).powi(e.unsigned_abs() as usize);
    if e >= 0 {
        t
    } else {
        S::one() / t
    }
}

/// k'_l = (q gamma)^l 2^(2l-1) (l-1)! k_2l at (gamma, q gamma) = (1e-6, 1e6) and (1e-8, 1e8),
/// compared with the classical cumulants of (m_2, m_4, ...) read as moments 1, 2, ... .
pub fn degenerate_to_classical<S: Scalar>(m: &[S], kmax: usize) -> Result<Degeneration<S>> {
    let target = classical_m2k(m, kmax);
    let mut points = Vec::new();
    for e in [6, 8] {
        let gamma: S = pow10(-e);
        let qg: S = pow10(e);
        let p = HTParams::new(qg.clone() / gamma.clone(), gamma.clone());
        let k = m2k(m, &p, kmax)?;
        let resc: Vec<S> = (1..=kmax)
            .map(|l| qg.powi(l) * S::from_int(2).powi(2 * l - 1) * factorial::<S>(l - 1) * k[l - 1].clone())
            .collect();
        let gap = max_gap(&resc, &target);
        points.push((p.q, gamma, resc, gap));
    }
    Ok(Degeneration { target, points })
}

/// c_2l = (2 q gamma)^l (2 gamma)^(l-1) k_2l at gamma = 1e4 and 1e6, compared with the
/// rectangular free cumulants of m. At q = 1 this is (2 gamma)^(2l-1) k_2l.
pub fn degenerate_to_rectfree<S: Scalar>(m: &[S], q: &S, kmax: usize) -> Result<Degeneration<S>> {
    let target = rectfree_m2k(m, q, kmax);
    let two = S::from_int(2);
    let mut points = Vec::new();
    for e in [4, 6] {
        let gamma: S = pow10(e);
        let p = HTParams::new(q.clone(), gamma.clone());
        let k = m2k(m, &p, kmax)?;
        let odd = two.clone() * q.clone() * gamma.clone();
        let even = two.clone() * gamma.clone();
        let resc: Vec<S> = (1..=kmax).map(|l| odd.powi(l) * even.powi(l - 1) * k[l - 1].clone()).collect();
        let gap = max_gap(&resc, &target);
        points.push((q.clone(), gamma, resc, gap));
    }
    Ok(Degeneration { target, points })
}

/// For gamma-side moments m'_1..m'_K: set m_2k = m'_k (q gamma)^k at q = 1e4 and 1e6 and
/// compare k'_l = 2^(2l-1) k_2l with the gamma-cumulants of m'.
pub fn degenerate_to_gamma<S: Scalar>(m_prime: &[S], gamma: &S, kmax: usize) -> Result<Degeneration<S>> {
    let target = gamma_m2k(m_prime, gamma, kmax)?;
    let mut points = Vec::new();
    for e in [4, 6] {
        let q: S = pow10(e);
        let qg = q.clone() * gamma.clone();
        let p = HTParams::new(q.clone(), gamma.clone());
        let m: Vec<S> = (1..=kmax).map(|j| at(m_prime, j - 1) * qg.powi(j)).collect();
        let k = m2k(&m, &p, kmax)?;
        let resc: Vec<S> = (1..=kmax).map(|l| S::from_int(2).powi(2 * l - 1) * k[l - 1].clone()).collect();
        let gap = max_gap(&resc, &target);
        points.push((q, gamma.clone(), resc, gap));
    }
    Ok(Degeneration { target, points })
}

/// m_2k^(-1/2k) for the computed prefix; a divergent sum of these is Carleman's
/// sufficient condition for the moment problem to be determinate.
pub fn carleman_terms<S: Scalar>(m: &[S]) -> Vec<f64> {
    m.iter().enumerate().map(|(i, x)| x.to_f64_lossy().powf(-1.0 / (2.0 * (i + 1) as f64))).collect()
}
