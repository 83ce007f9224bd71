//! Finite rectangular cumulants and their identification with q-gamma cumulants
//! at negative gamma.

use crate::error::{invalid, Error, Result};
use crate::qgamma::{m2k, HTParams};
use crate::rectconv::{check_spectrum, elementary, CharPoly};
use crate::scalar::{factorial, Scalar};
use crate::series::Series;

#[derive(Clone, Debug, PartialEq)]
pub struct FiniteCumulants<S> {
    pub m: usize,
    pub n: usize,
    /// k_1 .. k_M
    pub k_fin: Vec<S>,
}

/// Cumulants from the elementary symmetric values e_0 = 1, e_1, ..., e_M of the squared spectrum.
pub fn finite_rect_cumulants_from_elementary<S: Scalar>(e: &[S], m: usize, n: usize) -> Result<FiniteCumulants<S>> {
    if m == 0 || m > n {
        return invalid(format!("need 1 <= M <= N, got M = {m}, N = {n}"));
    }
    if e.len() != m + 1 || !e[0].is_one() {
        return invalid("expected e_0 = 1, e_1, ..., e_M");
    }
    let f = |k: usize| factorial::<S>(k);
    let nm = -S::from_nat(n * m);
    // E[exp(-T z N M)] with E[T^i] = i!(M-i)!/M! (N-i)!/N! e_i
    let coeffs: Vec<S> = (0..=m)
        .map(|i| nm.powi(i) * f(m - i) * f(n - i) / (f(m) * f(n)) * e[i].clone())
        .collect();
    let ln = Series::from_coeffs(coeffs, m).ln()?;
    let scale = -S::one() / S::from_nat(m);
    let k_fin = (1..=m).map(|l| scale.clone() * S::from_nat(l) * ln.coeff(l)).collect();
    Ok(FiniteCumulants { m, n, k_fin })
}

pub fn finite_rect_cumulants<S: Scalar>(r: &[S], m: usize, n: usize) -> Result<FiniteCumulants<S>> {
    check_spectrum(r, m)?;
    finite_rect_cumulants_from_elementary(&elementary(r), m, n)
}

/// Cumulants read off an expected characteristic polynomial of degree M.
pub fn finite_rect_cumulants_of_charpoly<S: Scalar>(p: &CharPoly<S>, n: usize) -> Result<FiniteCumulants<S>> {
    let m = p.degree();
    let e: Vec<S> = (0..=m)
        .map(|l| if l % 2 == 1 { -p.coeff_from_top(l) } else { p.coeff_from_top(l) })
        .collect();
    finite_rect_cumulants_from_elementary(&e, m, n)
}

#[derive(Clone, Debug, PartialEq)]
pub struct DualityReport<S> {
    pub finite: Vec<S>,
    /// q-gamma cumulants k_2, k_4, ..., k_2L at q = N/M, gamma = -M.
    pub qgamma: Vec<S>,
    /// k_l^{M,N} / (gamma^(l-1) k_2l), absent where k_2l = 0.
    pub ratios: Vec<Option<S>>,
}

/// The constant 2^(2l-1) relating the two cumulant families.
pub fn duality_constant<S: Scalar>(l: usize) -> S {
    S::from_int(2).powi(2 * l - 1)
}

/// Compares finite cumulants with q-gamma cumulants of m_2k = (p_k(r)/M) (-N)^k
/// at q = N/M, gamma = -M. Fails with `RouteDisagreement` if some
/// k_l^{M,N} differs from 2^(2l-1) gamma^(l-1) k_2l.
pub fn duality_check<S: Scalar>(r: &[S], m: usize, n: usize, order: usize) -> Result<DualityReport<S>> {
    if order == 0 || order > m {
        return invalid(format!("order must lie in 1..={m}"));
    }
    let fin = finite_rect_cumulants(r, m, n)?;
    let mm = S::from_nat(m);
    let gamma = -mm.clone();
    let p = HTParams::new(S::from_nat(n) / mm.clone(), gamma.clone());
    let minus_n = -S::from_nat(n);
    let moments: Vec<S> = (1..=order)
        .map(|k| r.iter().fold(S::zero(), |a, x| a + x.powi(k)) / mm.clone() * minus_n.powi(k))
        .collect();
    let k = m2k(&moments, &p, order)?;
    let mut ratios = Vec::with_capacity(order);
    for l in 1..=order {
        let scaled = gamma.powi(l - 1) * k[l - 1].clone();
        if fin.k_fin[l - 1] != duality_constant::<S>(l) * scaled.clone() {
            return Err(Error::RouteDisagreement(format!(
                "finite cumulant k_{l} = {} but 2^(2l-1) gamma^(l-1) k_2l = {}",
                fin.k_fin[l - 1],
                duality_constant::<S>(l) * scaled
            )));
        }
        ratios.push(if scaled.is_zero() { None } else { Some(fin.k_fin[l - 1].clone() / scaled) });
    }
    Ok(DualityReport { finite: fin.k_fin[..order].to_vec(), qgamma: k, ratios })
}
