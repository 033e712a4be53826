//! Exact rationals, the two-point extension `[-inf, +inf]`, and exact
//! rational powers.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;

pub fn rat(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// Parses `p/q`, `p`, or a plain decimal-free integer. Whitespace around the
/// numbers is ignored.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("expected a rational 'p/q', found '{s}'"));
    match s.split_once('/') {
        Some((n, d)) => {
            let n = BigInt::from_str(n.trim()).map_err(|_| bad())?;
            let d = BigInt::from_str(d.trim()).map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in '{s}'")));
            }
            Ok(Rational::new(n, d))
        }
        None => Ok(Rational::from_integer(BigInt::from_str(s).map_err(|_| bad())?)),
    }
}

/// Canonical text: integers without a denominator, otherwise `p/q`.
pub fn render_rational(r: &Rational) -> String {
    if r.is_integer() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// `r^k` for a nonnegative integer exponent.
pub fn rpow(r: &Rational, k: u32) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..k {
        acc *= r;
    }
    acc
}

fn exact_root(n: &BigInt, k: u32) -> Option<BigInt> {
    let r = n.nth_root(k);
    if num_traits::pow(r.clone(), k as usize) == *n {
        Some(r)
    } else {
        None
    }
}

fn exponent_parts(q: &Rational) -> Result<(u32, u32, bool)> {
    let to_u32 = |b: &BigInt| -> Result<u32> {
        u32::try_from(b.abs()).map_err(|_| {
            Error::UnsupportedExpression(format!("exponent {} too large", render_rational(q)))
        })
    };
    Ok((to_u32(q.numer())?, to_u32(q.denom())?, q.is_negative()))
}

/// `base^q` when it is rational, `None` when the power is irrational.
///
/// `base` must be nonnegative; `0^q` with `q > 0` is `0`.
pub fn pow_exact(base: &Rational, q: &Rational) -> Result<Option<Rational>> {
    if base.is_negative() {
        return Err(Error::InvalidValue(format!(
            "power of negative base {}",
            render_rational(base)
        )));
    }
    if q.is_zero() {
        return Ok(Some(Rational::one()));
    }
    if base.is_zero() {
        if q.is_negative() {
            return Err(Error::InvalidValue("0 raised to a negative power".into()));
        }
        return Ok(Some(Rational::zero()));
    }
    let (a, b, neg) = exponent_parts(q)?;
    let (Some(n), Some(d)) = (exact_root(base.numer(), b), exact_root(base.denom(), b)) else {
        return Ok(None);
    };
    let p = rpow(&Rational::new(n, d), a);
    Ok(Some(if neg { p.recip() } else { p }))
}

/// Like [`pow_exact`] but an irrational result is an `UnsupportedExpression`.
pub fn pow_rational(base: &Rational, q: &Rational) -> Result<Rational> {
    pow_exact(base, q)?.ok_or_else(|| {
        Error::UnsupportedExpression(format!(
            "{}^({}) is irrational",
            render_rational(base),
            render_rational(q)
        ))
    })
}

/// Compares `x^q` with `r` exactly, for `x >= 0` and `q > 0`.
pub fn cmp_pow_with(x: &Rational, q: &Rational, r: &Rational) -> Result<Ordering> {
    if r.is_negative() {
        return Ok(Ordering::Greater);
    }
    let (a, b, neg) = exponent_parts(q)?;
    if neg {
        return Err(Error::UnsupportedExpression("negative exponent".into()));
    }
    // x^(a/b) vs r  <=>  x^a vs r^b, both sides nonnegative.
    Ok(rpow(x, a).cmp(&rpow(r, b)))
}

/// Compares `x^p` with `x^q` exactly for `x >= 0`, `p, q > 0`.
pub fn cmp_pow_pow(x: &Rational, p: &Rational, q: &Rational) -> Ordering {
    if x.is_zero() || x.is_one() || p == q {
        return Ordering::Equal;
    }
    if *x < Rational::one() {
        q.cmp(p)
    } else {
        p.cmp(q)
    }
}

/// Largest rational `r` on a dyadic grid of step `2^-bits` with `r <= x^q`.
/// Used only where a certified lower bound is enough.
pub fn pow_lower_bound(x: &Rational, q: &Rational, bits: u32) -> Result<Rational> {
    if let Some(v) = pow_exact(x, q)? {
        return Ok(v);
    }
    // bracket [lo, hi] with lo^b <= x^a < hi^b
    let mut lo = Rational::zero();
    let mut hi = Rational::one();
    while cmp_pow_with(x, q, &hi)? != Ordering::Less {
        hi *= int(2);
    }
    let step = Rational::new(BigInt::one(), num_traits::pow(BigInt::from(2), bits as usize));
    while &hi - &lo > step {
        let mid = (&lo + &hi) / int(2);
        if cmp_pow_with(x, q, &mid)? == Ordering::Less {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(lo)
}

/// An element of `[-inf, +inf]` with an exact rational finite part.
///
/// The derived order is the extended-real order: `NegInf < Finite(_) < PosInf`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum ExtRational {
    NegInf,
    Finite(Rational),
    PosInf,
}

impl ExtRational {
    pub fn zero() -> Self {
        ExtRational::Finite(Rational::zero())
    }

    pub fn from_int(n: i64) -> Self {
        ExtRational::Finite(int(n))
    }

    pub fn is_zero(&self) -> bool {
        matches!(self, ExtRational::Finite(r) if r.is_zero())
    }

    pub fn is_finite(&self) -> bool {
        matches!(self, ExtRational::Finite(_))
    }

    pub fn is_nonneg(&self) -> bool {
        match self {
            ExtRational::NegInf => false,
            ExtRational::Finite(r) => !r.is_negative(),
            ExtRational::PosInf => true,
        }
    }

    pub fn is_positive(&self) -> bool {
        self.is_nonneg() && !self.is_zero()
    }

    pub fn finite(&self) -> Option<&Rational> {
        match self {
            ExtRational::Finite(r) => Some(r),
            _ => None,
        }
    }

    /// Extended-real sum; `None` for `+inf + -inf`.
    pub fn checked_add(&self, other: &Self) -> Option<Self> {
        use ExtRational::*;
        match (self, other) {
            (PosInf, NegInf) | (NegInf, PosInf) => None,
            (PosInf, _) | (_, PosInf) => Some(PosInf),
            (NegInf, _) | (_, NegInf) => Some(NegInf),
            (Finite(a), Finite(b)) => Some(Finite(a + b)),
        }
    }

    /// Extended-real product with `0 * inf = 0`.
    pub fn mul(&self, other: &Self) -> Self {
        use ExtRational::*;
        if self.is_zero() || other.is_zero() {
            return ExtRational::zero();
        }
        match (self, other) {
            (Finite(a), Finite(b)) => Finite(a * b),
            _ => {
                if self.sign_positive() == other.sign_positive() {
                    PosInf
                } else {
                    NegInf
                }
            }
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            ExtRational::NegInf => ExtRational::PosInf,
            ExtRational::PosInf => ExtRational::NegInf,
            ExtRational::Finite(r) => ExtRational::Finite(-r),
        }
    }

    fn sign_positive(&self) -> bool {
        match self {
            ExtRational::NegInf => false,
            ExtRational::PosInf => true,
            ExtRational::Finite(r) => r.is_positive(),
        }
    }
}

impl From<Rational> for ExtRational {
    fn from(r: Rational) -> Self {
        ExtRational::Finite(r)
    }
}

impl fmt::Display for ExtRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ExtRational::NegInf => f.write_str("-inf"),
            ExtRational::PosInf => f.write_str("inf"),
            ExtRational::Finite(r) => f.write_str(&render_rational(r)),
        }
    }
}

impl FromStr for ExtRational {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim() {
            "inf" | "+inf" => Ok(ExtRational::PosInf),
            "-inf" => Ok(ExtRational::NegInf),
            other => parse_rational(other).map(ExtRational::Finite),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_and_render() {
        assert_eq!(parse_rational("6/4").unwrap(), rat(3, 2));
        assert_eq!(parse_rational(" -3 ").unwrap(), int(-3));
        assert_eq!(render_rational(&rat(4, 2)), "2");
        assert_eq!(render_rational(&rat(-1, 3)), "-1/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("0.5").is_err());
        assert_eq!(render_rational(&rat(3, -6)), "-1/2");
    }

    #[test]
    fn extended_arithmetic_conventions() {
        use ExtRational::*;
        let three = ExtRational::from_int(3);
        assert_eq!(three.checked_add(&PosInf), Some(PosInf));
        assert_eq!(PosInf.checked_add(&NegInf), None);
        assert_eq!(ExtRational::zero().mul(&PosInf), ExtRational::zero());
        assert_eq!(ExtRational::from_int(-2).mul(&PosInf), NegInf);
        assert_eq!(NegInf.mul(&NegInf), PosInf);
        assert!(NegInf < three && three < PosInf);
        assert_eq!("-inf".parse::<ExtRational>().unwrap(), NegInf);
    }

    #[test]
    fn exact_powers() {
        assert_eq!(pow_exact(&rat(8, 27), &rat(1, 3)).unwrap(), Some(rat(2, 3)));
        assert_eq!(pow_exact(&rat(1, 4), &rat(3, 2)).unwrap(), Some(rat(1, 8)));
        assert_eq!(pow_exact(&rat(1, 2), &rat(1, 3)).unwrap(), None);
        assert_eq!(pow_exact(&int(0), &rat(1, 5)).unwrap(), Some(int(0)));
        assert_eq!(cmp_pow_with(&rat(1, 2), &rat(1, 2), &rat(7, 10)).unwrap(), Ordering::Greater);
        assert_eq!(cmp_pow_pow(&rat(1, 2), &rat(1, 2), &int(1)), Ordering::Greater);
        let lb = pow_lower_bound(&rat(1, 2), &rat(1, 3), 20).unwrap();
        assert_ne!(cmp_pow_with(&rat(1, 2), &rat(1, 3), &lb).unwrap(), Ordering::Less);
        assert!(lb > rat(79, 100));
    }
}
