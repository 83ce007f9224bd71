//! Scalar abstraction. Exact work runs on [`BigRational`]; the sampler and the
//! float-side checks run the same generic code on `f64`.

use std::fmt::{Debug, Display};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{FromPrimitive, Num, Signed, ToPrimitive};

pub trait Scalar:
    Clone + Debug + Display + PartialEq + PartialOrd + Num + Signed + FromPrimitive + ToPrimitive + Send + Sync + 'static
{
    fn from_int(n: i64) -> Self {
        Self::from_i64(n).expect("integer fits scalar")
    }

    fn from_ratio(n: i64, d: i64) -> Self {
        Self::from_int(n) / Self::from_int(d)
    }

    fn from_nat(n: usize) -> Self {
        Self::from_int(n as i64)
    }

    fn to_f64_lossy(&self) -> f64 {
        self.to_f64().unwrap_or(f64::NAN)
    }

    /// Integer power with a nonnegative exponent.
    fn powi(&self, e: usize) -> Self {
        let mut acc = Self::one();
        for _ in 0..e {
            acc = acc * self.clone();
        }
        acc
    }
}

impl Scalar for f32 {}
impl Scalar for f64 {}
impl Scalar for BigRational {
    fn from_int(n: i64) -> Self {
        BigRational::from_integer(BigInt::from(n))
    }
}

/// Pochhammer rising factorial (t)_n = t(t+1)...(t+n-1).
pub fn rising<S: Scalar>(t: &S, n: usize) -> S {
    let mut acc = S::one();
    for i in 0..n {
        acc = acc * (t.clone() + S::from_nat(i));
    }
    acc
}

pub fn factorial<S: Scalar>(n: usize) -> S {
    rising(&S::one(), n)
}

pub fn binomial<S: Scalar>(n: usize, k: usize) -> S {
    if k > n {
        return S::zero();
    }
    factorial::<S>(n) / (factorial::<S>(k) * factorial::<S>(n - k))
}

/// Parses "p/q", an integer, or a plain decimal such as "0.25" or "1e-4" into an exact rational.
pub fn parse_rational(s: &str) -> Option<BigRational> {
    let s = s.trim();
    if s.is_empty() {
        return None;
    }
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().ok()?;
        let q: BigInt = q.trim().parse().ok()?;
        if q == BigInt::from(0) {
            return None;
        }
        return Some(BigRational::new(p, q));
    }
    let (mantissa, exp) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (neg, digits) = match mantissa.strip_prefix('-') {
        Some(rest) => (true, rest),
        None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
    };
    let (int_part, frac_part) = digits.split_once('.').unwrap_or((digits, ""));
    if int_part.is_empty() && frac_part.is_empty() {
        return None;
    }
    if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
        return None;
    }
    let num: BigInt = format!("{int_part}{frac_part}").parse().ok()?;
    let scale = exp - frac_part.len() as i32;
    let ten = BigInt::from(10);
    let mut r = BigRational::from_integer(num);
    if scale >= 0 {
        r *= BigRational::from_integer(num_traits::pow(ten, scale as usize));
    } else {
        r /= BigRational::from_integer(num_traits::pow(ten, (-scale) as usize));
    }
    Some(if neg { -r } else { r })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_forms() {
        assert_eq!(parse_rational("3/7").unwrap(), BigRational::from_ratio(3, 7));
        assert_eq!(parse_rational("-2").unwrap(), BigRational::from_int(-2));
        assert_eq!(parse_rational("0.25").unwrap(), BigRational::from_ratio(1, 4));
        assert_eq!(parse_rational("1e-4").unwrap(), BigRational::from_ratio(1, 10000));
        assert!(parse_rational("1/0").is_none());
        assert!(parse_rational("abc").is_none());
    }

    #[test]
    fn rising_basics() {
        let t = BigRational::from_ratio(1, 2);
        assert_eq!(rising(&t, 0), BigRational::from_int(1));
        assert_eq!(rising(&t, 2), BigRational::from_ratio(3, 4));
        assert_eq!(factorial::<f64>(5), 120.0);
        assert_eq!(binomial::<BigRational>(6, 2), BigRational::from_int(15));
    }
}
