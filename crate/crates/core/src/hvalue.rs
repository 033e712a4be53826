//! Generalized Hausdorff values: pairs `(d, m)` of a nonnegative dimension and
//! an extended rational, ordered lexicographically.
//!
//! Addition is dominance addition (the larger dimension wins, equal
//! dimensions add their second coordinates), multiplication adds dimensions
//! and multiplies second coordinates with `(0,0)` absorbing.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::{Signed, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, render_rational, ExtRational, Rational};

/// A nonnegative exact dimension.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Dim(Rational);

impl Dim {
    pub fn new(value: Rational) -> Result<Self> {
        if value.is_negative() {
            return Err(Error::InvalidValue(format!(
                "negative dimension {}",
                render_rational(&value)
            )));
        }
        Ok(Dim(value))
    }

    pub fn zero() -> Self {
        Dim(Rational::zero())
    }

    pub fn value(&self) -> &Rational {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_zero()
    }

    pub fn plus(&self, other: &Dim) -> Dim {
        Dim(&self.0 + &other.0)
    }
}

impl fmt::Display for Dim {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_rational(&self.0))
    }
}

/// A value in `[0,+inf) x [-inf,+inf]`.
///
/// Field order makes the derived `Ord` the lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HValue {
    pub d: Dim,
    pub m: ExtRational,
}

impl HValue {
    pub fn new(d: Dim, m: ExtRational) -> Self {
        HValue { d, m }
    }

    /// Convenience constructor from rationals; fails on a negative dimension.
    pub fn of(d: Rational, m: impl Into<ExtRational>) -> Result<Self> {
        Ok(HValue { d: Dim::new(d)?, m: m.into() })
    }

    pub fn zero() -> Self {
        HValue { d: Dim::zero(), m: ExtRational::zero() }
    }

    pub fn is_zero(&self) -> bool {
        self.d.is_zero() && self.m.is_zero()
    }

    pub fn is_nonneg(&self) -> bool {
        self.m.is_nonneg()
    }

    pub fn nonneg(self) -> Result<HNonNeg> {
        HNonNeg::new(self)
    }
}

impl fmt::Display for HValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.m)
    }
}

impl FromStr for HValue {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let inner = t
            .strip_prefix('(')
            .and_then(|r| r.strip_suffix(')'))
            .ok_or_else(|| Error::Parse(format!("expected '(d, m)', found '{t}'")))?;
        let (d, m) = inner
            .split_once(',')
            .ok_or_else(|| Error::Parse(format!("expected '(d, m)', found '{t}'")))?;
        let d = parse_rational(d)?;
        let m: ExtRational = m.parse()?;
        HValue::of(d, m).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for HValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for HValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// An `HValue` with nonnegative second coordinate (`+inf` allowed).
///
/// This is the domain on which distributivity holds and on which h-measures
/// and integrals take their values.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HNonNeg(HValue);

impl HNonNeg {
    pub fn new(v: HValue) -> Result<Self> {
        if !v.m.is_nonneg() {
            return Err(Error::InvalidValue(format!("{v} has a negative second coordinate")));
        }
        Ok(HNonNeg(v))
    }

    pub fn of(d: Rational, m: impl Into<ExtRational>) -> Result<Self> {
        HNonNeg::new(HValue::of(d, m)?)
    }

    pub fn zero() -> Self {
        HNonNeg(HValue::zero())
    }

    pub fn value(&self) -> &HValue {
        &self.0
    }

    pub fn into_value(self) -> HValue {
        self.0
    }

    pub fn add(&self, other: &HNonNeg) -> HNonNeg {
        HNonNeg(add(&self.0, &other.0).expect("nonnegative sums are always defined"))
    }

    pub fn mul(&self, other: &HNonNeg) -> HNonNeg {
        HNonNeg(mul(&self.0, &other.0))
    }
}

impl std::ops::Deref for HNonNeg {
    type Target = HValue;

    fn deref(&self) -> &HValue {
        &self.0
    }
}

impl fmt::Display for HNonNeg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

impl FromStr for HNonNeg {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        HNonNeg::new(s.parse()?).map_err(|e| Error::Parse(e.to_string()))
    }
}

impl Serialize for HNonNeg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.0.serialize(s)
    }
}

impl<'de> Deserialize<'de> for HNonNeg {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

pub fn compare(a: &HValue, b: &HValue) -> Ordering {
    a.cmp(b)
}

/// Dominance addition. `UndefinedSum` when the dimensions agree and the
/// second coordinates are opposite infinities.
pub fn add(a: &HValue, b: &HValue) -> Result<HValue> {
    match a.d.cmp(&b.d) {
        Ordering::Less => Ok(b.clone()),
        Ordering::Greater => Ok(a.clone()),
        Ordering::Equal => match a.m.checked_add(&b.m) {
            Some(m) => Ok(HValue { d: a.d.clone(), m }),
            None => Err(Error::UndefinedSum { lhs: a.to_string(), rhs: b.to_string() }),
        },
    }
}

/// `c(d,m) = (d, cm)` for `c != 0` and `(0,0)` for `c = 0`.
pub fn scalar_mul(c: &Rational, a: &HValue) -> HValue {
    if c.is_zero() {
        return HValue::zero();
    }
    HValue { d: a.d.clone(), m: ExtRational::Finite(c.clone()).mul(&a.m) }
}

pub fn mul(a: &HValue, b: &HValue) -> HValue {
    if a.is_zero() || b.is_zero() {
        return HValue::zero();
    }
    HValue { d: a.d.plus(&b.d), m: a.m.mul(&b.m) }
}

pub fn sum_finite<'a, I>(values: I) -> Result<HValue>
where
    I: IntoIterator<Item = &'a HValue>,
{
    values.into_iter().try_fold(HValue::zero(), |acc, v| add(&acc, v))
}

pub fn sum_nonneg<'a, I>(values: I) -> HNonNeg
where
    I: IntoIterator<Item = &'a HNonNeg>,
{
    values.into_iter().fold(HNonNeg::zero(), |acc, v| acc.add(v))
}

pub fn sup_finite<'a, I>(values: I) -> Result<HValue>
where
    I: IntoIterator<Item = &'a HValue>,
{
    values.into_iter().max().cloned().ok_or(Error::EmptyList)
}

/// A countable sequence of nonnegative values: a finite prefix followed by
/// one value repeated forever. A `(0,0)` tail describes a finite sum.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SeqDescriptor {
    pub prefix: Vec<HNonNeg>,
    pub tail: HNonNeg,
}

impl SeqDescriptor {
    pub fn finite(prefix: Vec<HNonNeg>) -> Self {
        SeqDescriptor { prefix, tail: HNonNeg::zero() }
    }

    pub fn map(&self, f: impl Fn(&HNonNeg) -> HNonNeg) -> Self {
        SeqDescriptor { prefix: self.prefix.iter().map(&f).collect(), tail: f(&self.tail) }
    }
}

/// Sum of a described series: `(D, sum of m_j over d_j = D)` where `D` is the
/// (attained) supremum of the dimensions.
pub fn sum_described(s: &SeqDescriptor) -> HNonNeg {
    let top = s
        .prefix
        .iter()
        .map(|v| &v.d)
        .chain(std::iter::once(&s.tail.d))
        .max()
        .cloned()
        .unwrap_or_else(Dim::zero);
    let mut m = ExtRational::zero();
    for v in s.prefix.iter().filter(|v| v.d == top) {
        m = m.checked_add(&v.m).expect("nonnegative terms");
    }
    if s.tail.d == top && s.tail.m.is_positive() {
        m = ExtRational::PosInf;
    }
    HNonNeg(HValue { d: top, m })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn hv(s: &str) -> HValue {
        s.parse().unwrap()
    }

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    #[test]
    fn compare_examples() {
        assert_eq!(compare(&hv("(1,3)"), &hv("(2,5)")), Ordering::Less);
        assert_eq!(compare(&hv("(0,5)"), &hv("(0,5)")), Ordering::Equal);
        assert_eq!(compare(&hv("(1,inf)"), &hv("(1,-inf)")), Ordering::Greater);
    }

    #[test]
    fn add_examples() {
        assert_eq!(add(&hv("(1,3)"), &hv("(2,5)")).unwrap(), hv("(2,5)"));
        assert_eq!(add(&hv("(1,3)"), &hv("(1,4)")).unwrap(), hv("(1,7)"));
        assert!(matches!(
            add(&hv("(1,inf)"), &hv("(1,-inf)")),
            Err(Error::UndefinedSum { .. })
        ));
        // different dimensions never collide, even with opposite infinities
        assert_eq!(add(&hv("(1,inf)"), &hv("(2,-inf)")).unwrap(), hv("(2,-inf)"));
    }

    #[test]
    fn scalar_mul_examples() {
        assert_eq!(scalar_mul(&int(2), &hv("(1,3)")), hv("(1,6)"));
        assert_eq!(scalar_mul(&int(0), &hv("(5,inf)")), hv("(0,0)"));
        assert_eq!(scalar_mul(&int(-1), &hv("(1,4)")), hv("(1,-4)"));
    }

    #[test]
    fn mul_examples() {
        assert_eq!(mul(&hv("(1,1)"), &hv("(0,5)")), hv("(1,5)"));
        assert_eq!(mul(&hv("(0,0)"), &hv("(3,inf)")), hv("(0,0)"));
        assert_eq!(mul(&hv("(1,0)"), &hv("(2,inf)")), hv("(3,0)"));
    }

    #[test]
    fn distributivity_fails_with_signed_terms() {
        let a = hv("(1,1)");
        let inner = add(&hv("(0,5)"), &hv("(0,-5)")).unwrap();
        assert_eq!(mul(&a, &inner), hv("(0,0)"));
        let split = add(&mul(&a, &hv("(0,5)")), &mul(&a, &hv("(0,-5)"))).unwrap();
        assert_eq!(split, hv("(1,0)"));
    }

    #[test]
    fn sum_finite_examples() {
        let xs = [hv("(1,2)"), hv("(1,3)"), hv("(0,9)")];
        assert_eq!(sum_finite(&xs).unwrap(), hv("(1,5)"));
        assert_eq!(sum_finite(&[]).unwrap(), hv("(0,0)"));
        assert_eq!(sum_finite(&[hv("(2,1)"), hv("(1,inf)")]).unwrap(), hv("(2,1)"));
        assert!(sum_finite(&[hv("(0,inf)"), hv("(0,-inf)")]).is_err());
    }

    #[test]
    fn sup_finite_examples() {
        assert_eq!(sup_finite(&[hv("(1,2)"), hv("(0,inf)")]).unwrap(), hv("(1,2)"));
        assert_eq!(sup_finite(&[hv("(1,2)"), hv("(1,5)")]).unwrap(), hv("(1,5)"));
        assert_eq!(sup_finite(&[hv("(0,0)")]).unwrap(), hv("(0,0)"));
        assert_eq!(sup_finite(&[]), Err(Error::EmptyList));
    }

    /// Partial sums through `add`, used as the oracle for described series.
    fn partial_sum(s: &SeqDescriptor, terms: usize) -> HValue {
        let mut acc = HValue::zero();
        for v in s.prefix.iter().chain(std::iter::repeat(&s.tail)).take(terms) {
            acc = add(&acc, v).unwrap();
        }
        acc
    }

    #[test]
    fn sum_described_examples() {
        let finite = SeqDescriptor::finite(vec![hn("(1,2)"), hn("(2,3)")]);
        assert_eq!(sum_described(&finite), hn("(2,3)"));

        let stable = SeqDescriptor { prefix: vec![hn("(2,3)")], tail: hn("(1,1)") };
        // oracle: partial sums stabilize
        for k in [1, 5, 50] {
            assert_eq!(partial_sum(&stable, k), hv("(2,3)"));
        }
        assert_eq!(sum_described(&stable), hn("(2,3)"));

        let diverging = SeqDescriptor { prefix: vec![hn("(2,3)")], tail: hn("(2,1)") };
        // oracle: partial sums are (2, 3 + k), unbounded in k
        for k in [1usize, 10, 100] {
            assert_eq!(
                partial_sum(&diverging, k + 1),
                HValue::of(int(2), int(3 + k as i64)).unwrap()
            );
        }
        assert_eq!(sum_described(&diverging), hn("(2,inf)"));

        let zero_tail_at_top = SeqDescriptor { prefix: vec![hn("(2,3)")], tail: hn("(2,0)") };
        assert_eq!(sum_described(&zero_tail_at_top), hn("(2,3)"));
    }

    #[test]
    fn render_parse() {
        assert_eq!(hv("( 1/2 , -inf )").to_string(), "(1/2, -inf)");
        assert_eq!(hv("(4/2, 6/4)").to_string(), "(2, 3/2)");
        assert!("(-1, 0)".parse::<HValue>().is_err());
        assert!("(1, 0".parse::<HValue>().is_err());
        assert!("(0,-1)".parse::<HNonNeg>().is_err());
        assert_eq!(HValue::of(rat(1, 3), int(0)).unwrap().to_string(), "(1/3, 0)");
    }
}
