//! Truncated univariate power series. A series of order `n` keeps the
//! coefficients of z^0 .. z^n; products and transcendental maps are exact
//! through that order.

use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, Debug, PartialEq)]
pub struct Series<S> {
    coeffs: Vec<S>,
}

impl<S: Scalar> Series<S> {
    pub fn zero(order: usize) -> Self {
        Series { coeffs: vec![S::zero(); order + 1] }
    }

    pub fn one(order: usize) -> Self {
        let mut s = Self::zero(order);
        s.coeffs[0] = S::one();
        s
    }

    /// Builds a series from coefficients, padding with zeros or truncating to `order`.
    pub fn from_coeffs(mut coeffs: Vec<S>, order: usize) -> Self {
        coeffs.resize(order + 1, S::zero());
        Series { coeffs }
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[S] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<S> {
        self.coeffs
    }

    pub fn coeff(&self, n: usize) -> S {
        self.coeffs.get(n).cloned().unwrap_or_else(S::zero)
    }

    pub fn set_coeff(&mut self, n: usize, v: S) {
        if n < self.coeffs.len() {
            self.coeffs[n] = v;
        }
    }

    pub fn truncate(&self, order: usize) -> Self {
        Self::from_coeffs(self.coeffs.clone(), order)
    }

    pub fn scale(&self, c: &S) -> Self {
        Series { coeffs: self.coeffs.iter().map(|x| x.clone() * c.clone()).collect() }
    }

    /// Term-by-term derivative; the order drops by one (never below zero).
    pub fn derivative(&self) -> Self {
        let n = self.order();
        let mut out = Self::zero(n.saturating_sub(1));
        for k in 1..=n {
            out.coeffs[k - 1] = self.coeffs[k].clone() * S::from_nat(k);
        }
        out
    }

    /// Replaces z by c*z.
    pub fn rescale_var(&self, c: &S) -> Self {
        let mut p = S::one();
        let mut out = self.clone();
        for x in out.coeffs.iter_mut() {
            *x = x.clone() * p.clone();
            p = p * c.clone();
        }
        out
    }

    /// exp of a series with zero constant term.
    pub fn exp(&self) -> Result<Self> {
        if !self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("exp needs a zero constant term".into()));
        }
        let n = self.order();
        let mut f = Self::zero(n);
        f.coeffs[0] = S::one();
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                acc = acc + S::from_nat(k) * self.coeffs[k].clone() * f.coeffs[m - k].clone();
            }
            f.coeffs[m] = acc / S::from_nat(m);
        }
        Ok(f)
    }

    /// log of a series with constant term one.
    pub fn ln(&self) -> Result<Self> {
        if !self.coeffs[0].is_one() {
            return Err(Error::InvalidInput("log needs constant term 1".into()));
        }
        let n = self.order();
        let mut g = Self::zero(n);
        for m in 1..=n {
            let mut acc = S::from_nat(m) * self.coeffs[m].clone();
            for k in 1..m {
                acc = acc - S::from_nat(k) * g.coeffs[k].clone() * self.coeffs[m - k].clone();
            }
            g.coeffs[m] = acc / S::from_nat(m);
        }
        Ok(g)
    }

    /// Multiplicative inverse of a series with invertible constant term.
    pub fn inv(&self) -> Result<Self> {
        if self.coeffs[0].is_zero() {
            return Err(Error::InvalidInput("series not invertible".into()));
        }
        let n = self.order();
        let mut h = Self::zero(n);
        let c0 = self.coeffs[0].clone();
        h.coeffs[0] = S::one() / c0.clone();
        for m in 1..=n {
            let mut acc = S::zero();
            for k in 1..=m {
                acc = acc + self.coeffs[k].clone() * h.coeffs[m - k].clone();
            }
            h.coeffs[m] = -acc / c0.clone();
        }
        Ok(h)
    }
}

impl<S: Scalar> Add for &Series<S> {
    type Output = Series<S>;
    fn add(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].clone() + rhs.coeffs[k].clone()).collect() }
    }
}

impl<S: Scalar> Sub for &Series<S> {
    type Output = Series<S>;
    fn sub(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        Series { coeffs: (0..=n).map(|k| self.coeffs[k].clone() - rhs.coeffs[k].clone()).collect() }
    }
}

impl<S: Scalar> Neg for &Series<S> {
    type Output = Series<S>;
    fn neg(self) -> Series<S> {
        Series { coeffs: self.coeffs.iter().map(|x| -x.clone()).collect() }
    }
}

impl<S: Scalar> Mul for &Series<S> {
    type Output = Series<S>;
    fn mul(self, rhs: &Series<S>) -> Series<S> {
        let n = self.order().min(rhs.order());
        let mut out: Series<S> = Series::zero(n);
        for i in 0..=n {
            if self.coeffs[i].is_zero() {
                continue;
            }
            for j in 0..=(n - i) {
                out.coeffs[i + j] = out.coeffs[i + j].clone() + self.coeffs[i].clone() * rhs.coeffs[j].clone();
            }
        }
        out
    }
}
