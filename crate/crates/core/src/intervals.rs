//! Intervals with rational endpoints and finite unions of them.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::rational::{int, parse_rational, render_rational, Rational};

/// A nonempty interval. A point is `[a, a]`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Interval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

/// A bound `(value, closed)` on one side; `None` is unbounded.
type Bound = Option<(Rational, bool)>;

impl Interval {
    pub fn new(lo: Rational, hi: Rational, lo_closed: bool, hi_closed: bool) -> Result<Self> {
        match lo.cmp(&hi) {
            Ordering::Less => Ok(Interval { lo, hi, lo_closed, hi_closed }),
            Ordering::Equal if lo_closed && hi_closed => Ok(Interval { lo, hi, lo_closed, hi_closed }),
            _ => Err(Error::InvalidValue(format!(
                "empty interval with endpoints {} and {}",
                render_rational(&lo),
                render_rational(&hi)
            ))),
        }
    }

    pub fn open(lo: Rational, hi: Rational) -> Result<Self> {
        Interval::new(lo, hi, false, false)
    }

    pub fn closed(lo: Rational, hi: Rational) -> Result<Self> {
        Interval::new(lo, hi, true, true)
    }

    pub fn point(x: Rational) -> Self {
        Interval { lo: x.clone(), hi: x, lo_closed: true, hi_closed: true }
    }

    pub fn is_point(&self) -> bool {
        self.lo == self.hi
    }

    pub fn length(&self) -> Rational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> Rational {
        (&self.lo + &self.hi) / int(2)
    }

    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    /// Whether every point of `self` lies in the open interval `(lo, hi)`.
    pub fn inside_open(&self, lo: &Rational, hi: &Rational) -> bool {
        let left = self.lo > *lo || (self.lo == *lo && !self.lo_closed && !self.is_point());
        let right = self.hi < *hi || (self.hi == *hi && !self.hi_closed && !self.is_point());
        left && right
    }

    /// `self` restricted by optional lower and upper bounds.
    fn clip(&self, lower: &Bound, upper: &Bound) -> Option<Interval> {
        let (mut lo, mut lo_closed) = (self.lo.clone(), self.lo_closed);
        if let Some((b, closed)) = lower {
            match b.cmp(&lo) {
                Ordering::Greater => {
                    lo = b.clone();
                    lo_closed = *closed;
                }
                Ordering::Equal => lo_closed &= *closed,
                Ordering::Less => {}
            }
        }
        let (mut hi, mut hi_closed) = (self.hi.clone(), self.hi_closed);
        if let Some((b, closed)) = upper {
            match b.cmp(&hi) {
                Ordering::Less => {
                    hi = b.clone();
                    hi_closed = *closed;
                }
                Ordering::Equal => hi_closed &= *closed,
                Ordering::Greater => {}
            }
        }
        Interval::new(lo, hi, lo_closed, hi_closed).ok()
    }

    pub fn intersect(&self, other: &Interval) -> Option<Interval> {
        self.clip(
            &Some((other.lo.clone(), other.lo_closed)),
            &Some((other.hi.clone(), other.hi_closed)),
        )
    }

    pub fn overlaps(&self, other: &Interval) -> bool {
        self.intersect(other).is_some()
    }

    /// `self - other` as at most two intervals.
    pub fn difference(&self, other: &Interval) -> Vec<Interval> {
        let left = self.clip(&None, &Some((other.lo.clone(), !other.lo_closed)));
        let right = self.clip(&Some((other.hi.clone(), !other.hi_closed)), &None);
        left.into_iter().chain(right).collect()
    }

    /// The part of `self` below `x` (`x` included when `inclusive`).
    pub fn below(&self, x: &Rational, inclusive: bool) -> Option<Interval> {
        self.clip(&None, &Some((x.clone(), inclusive)))
    }

    /// The part of `self` above `x` (`x` included when `inclusive`).
    pub fn above(&self, x: &Rational, inclusive: bool) -> Option<Interval> {
        self.clip(&Some((x.clone(), inclusive)), &None)
    }

    fn lower_key(&self) -> (Rational, bool) {
        (self.lo.clone(), !self.lo_closed)
    }
}

impl fmt::Display for Interval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_point() {
            return write!(f, "{{{}}}", render_rational(&self.lo));
        }
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            render_rational(&self.lo),
            render_rational(&self.hi),
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

impl FromStr for Interval {
    type Err = Error;

    /// `(a, b)`, `[a, b)`, `(a, b]`, `[a, b]` or `{a}`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = || Error::Parse(format!("expected an interval like '(a, b]' or '{{a}}', found '{t}'"));
        if let Some(inner) = t.strip_prefix('{').and_then(|r| r.strip_suffix('}')) {
            return Ok(Interval::point(parse_rational(inner)?));
        }
        let lo_closed = match t.chars().next() {
            Some('[') => true,
            Some('(') => false,
            _ => return Err(bad()),
        };
        let hi_closed = match t.chars().last() {
            Some(']') => true,
            Some(')') => false,
            _ => return Err(bad()),
        };
        let (a, b) = t[1..t.len() - 1].split_once(',').ok_or_else(bad)?;
        Interval::new(parse_rational(a)?, parse_rational(b)?, lo_closed, hi_closed)
            .map_err(|e| Error::Parse(e.to_string()))
    }
}

/// A finite union of intervals, kept sorted, disjoint and non-adjacent.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct IntervalSet {
    parts: Vec<Interval>,
}

impl IntervalSet {
    pub fn empty() -> Self {
        IntervalSet { parts: Vec::new() }
    }

    pub fn from_parts(parts: impl IntoIterator<Item = Interval>) -> Self {
        let mut parts: Vec<Interval> = parts.into_iter().collect();
        parts.sort_by_key(|p| p.lower_key());
        let mut out: Vec<Interval> = Vec::with_capacity(parts.len());
        for p in parts {
            if let Some(cur) = out.last_mut() {
                let joins = p.lo < cur.hi || (p.lo == cur.hi && (cur.hi_closed || p.lo_closed));
                if joins {
                    match p.hi.cmp(&cur.hi) {
                        Ordering::Greater => {
                            cur.hi = p.hi;
                            cur.hi_closed = p.hi_closed;
                        }
                        Ordering::Equal => cur.hi_closed |= p.hi_closed,
                        Ordering::Less => {}
                    }
                    continue;
                }
            }
            out.push(p);
        }
        IntervalSet { parts: out }
    }

    pub fn parts(&self) -> &[Interval] {
        &self.parts
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn contains(&self, x: &Rational) -> bool {
        self.parts.iter().any(|p| p.contains(x))
    }

    /// Lebesgue measure.
    pub fn length(&self) -> Rational {
        self.parts.iter().map(Interval::length).fold(Rational::zero(), |a, b| a + b)
    }

    pub fn union(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_parts(self.parts.iter().chain(&other.parts).cloned())
    }

    pub fn intersect(&self, other: &IntervalSet) -> IntervalSet {
        IntervalSet::from_parts(
            self.parts
                .iter()
                .flat_map(|a| other.parts.iter().filter_map(move |b| a.intersect(b))),
        )
    }

    pub fn difference(&self, other: &IntervalSet) -> IntervalSet {
        let mut cur: Vec<Interval> = self.parts.clone();
        for b in &other.parts {
            cur = cur.iter().flat_map(|a| a.difference(b)).collect();
        }
        IntervalSet::from_parts(cur)
    }
}

impl fmt::Display for IntervalSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.parts.is_empty() {
            return f.write_str("{}");
        }
        let parts: Vec<String> = self.parts.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join(" u "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn parse_render() {
        assert_eq!(iv("(1/4, 3/4]").to_string(), "(1/4, 3/4]");
        assert_eq!(iv("{1/2}").to_string(), "{1/2}");
        assert_eq!(iv("[1,1]"), Interval::point(int(1)));
        assert!("(1, 1)".parse::<Interval>().is_err());
        assert!("(2, 1)".parse::<Interval>().is_err());
        assert!("1, 2".parse::<Interval>().is_err());
    }

    #[test]
    fn intersections_respect_endpoint_closure() {
        assert!(!iv("(0, 1/2)").overlaps(&iv("[1/2, 1)")));
        assert_eq!(iv("(0, 1/2]").intersect(&iv("[1/2, 1)")), Some(Interval::point(rat(1, 2))));
        assert_eq!(iv("(0, 1)").intersect(&iv("[1/4, 2)")), Some(iv("[1/4, 1)")));
        assert!(!iv("(0, 1)").overlaps(&iv("{1}")));
    }

    #[test]
    fn difference_and_union() {
        let d = iv("(0, 1)").difference(&iv("[1/4, 1/2]"));
        assert_eq!(d, vec![iv("(0, 1/4)"), iv("(1/2, 1)")]);
        let u = IntervalSet::from_parts(vec![iv("(0, 1/2)"), iv("{1/2}"), iv("(1/2, 1)")]);
        assert_eq!(u.parts(), &[iv("(0, 1)")]);
        let gap = IntervalSet::from_parts(vec![iv("(0, 1/2)"), iv("(1/2, 1)")]);
        assert_eq!(gap.parts().len(), 2);
        assert_eq!(gap.length(), int(1));
        let holes = IntervalSet::from_parts(vec![iv("(0, 1)")])
            .difference(&IntervalSet::from_parts(vec![iv("{1/3}"), iv("[1/2, 2]")]));
        assert_eq!(holes.to_string(), "(0, 1/3) u (1/3, 1/2)");
    }

    #[test]
    fn inside_open_bounds() {
        assert!(iv("(0, 1/2]").inside_open(&int(0), &int(1)));
        assert!(!iv("[0, 1/2]").inside_open(&int(0), &int(1)));
        assert!(!iv("{1}").inside_open(&int(0), &int(1)));
        assert!(iv("(0, 1)").inside_open(&int(0), &int(1)));
    }
}
