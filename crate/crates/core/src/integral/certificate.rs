//! Witness families substantiating a computed integral, and their checker.

use std::cmp::Ordering;

use num_traits::{One, Signed, Zero};
use serde_json::{json, Value};

use crate::error::Result;
use crate::hvalue::{HNonNeg, HValue};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{int, pow_lower_bound, rat, rpow, ExtRational, Rational};
use crate::space::{HMeasure, IntervalSpace, MeasurableSet, MeasureSpace};

use super::expr::{DimExpr, Exact, Monotone};
use super::function::{render_set, HFunction, Piece, PiecewiseFn, SimpleFn};

/// A set `L` with its measure `(d'', m'')` and a value `(d', m') <= inf_L f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Witness {
    pub set: MeasurableSet,
    pub measure: HNonNeg,
    pub infimum: HNonNeg,
}

impl Witness {
    /// `d' + d''`
    pub fn dim_sum(&self) -> Rational {
        self.measure.d.value() + self.infimum.d.value()
    }

    /// `m' * m''`
    pub fn mass(&self) -> ExtRational {
        self.measure.m.mul(&self.infimum.m)
    }

    fn to_json(&self) -> Value {
        json!({
            "set": render_set(&self.set),
            "measure": self.measure.to_string(),
            "infimum": self.infimum.to_string(),
        })
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct T4Certificate {
    pub d_witnesses: Vec<Witness>,
    pub m_witnesses: Vec<Witness>,
}

impl T4Certificate {
    pub fn to_json(&self) -> Value {
        json!({
            "d_witnesses": self.d_witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
            "m_witnesses": self.m_witnesses.iter().map(Witness::to_json).collect::<Vec<_>>(),
        })
    }
}

/// For a simple function every piece is its own witness; the infimum over
/// a piece is its coefficient.
pub(crate) fn simple_certificate(space: &MeasureSpace, f: &SimpleFn, value: &HNonNeg) -> Result<T4Certificate> {
    let mut cert = T4Certificate::default();
    for (c, set) in f.pieces() {
        let mu = space.measure(set)?;
        if c.is_zero() || mu.is_zero() {
            continue;
        }
        let w = Witness { set: set.clone(), measure: mu, infimum: c.clone() };
        if &w.dim_sum() == value.d.value() {
            cert.m_witnesses.push(w.clone());
        }
        cert.d_witnesses.push(w);
    }
    Ok(cert)
}

/// Summary of a piecewise evaluation needed to pick witnesses.
pub(crate) struct TopInfo<'a> {
    pub s: Rational,
    /// Proper pieces on which `pi1` is the constant `s`.
    pub top: Vec<&'a Piece>,
    /// Proper pieces whose `pi1` supremum is `s`.
    pub sup: Vec<&'a Piece>,
}

fn open_interior(p: &Interval) -> Interval {
    Interval::open(p.lo.clone(), p.hi.clone()).expect("proper piece")
}

fn split(p: &Interval, n: i64) -> Vec<Interval> {
    let step = p.length() / int(n);
    (0..n)
        .map(|k| {
            let a = &p.lo + &step * int(k);
            Interval::open(a.clone(), a + &step).expect("positive step")
        })
        .collect()
}

fn interval_witness(space: &IntervalSpace, set: Interval, infimum: HNonNeg) -> Witness {
    let measure = space.lift(space.nu(&IntervalSet::from_parts([set.clone()])));
    Witness { set: MeasurableSet::Intervals(vec![set]), measure, infimum }
}

/// A subinterval of `p` on which `pi2` has a positive certified lower bound.
fn positive_mass_part(p: &Piece) -> Result<Option<(Interval, Rational)>> {
    for depth in 0..=10u32 {
        for part in split(&p.set, 1 << depth) {
            let lb = p.pi2.lower_bound(&part)?;
            if lb.is_positive() {
                return Ok(Some((part, lb)));
            }
        }
    }
    Ok(None)
}

/// A point `x_t` of the piece with rational `pi1(x_t) >= t`, and the open part
/// of the piece beyond it, where `pi1 > pi1(x_t)`.
fn approach(p: &Piece, t: &Rational) -> Result<Option<(Interval, Rational)>> {
    let (lo, hi) = (&p.set.lo, &p.set.hi);
    match (&p.pi1, p.pi1.monotone()) {
        (DimExpr::Affine { a, b }, dir) => {
            let x = (t - a) / b;
            let (x, l) = match dir {
                Monotone::Decreasing => {
                    let x = if &x >= hi { hi.clone() } else { x };
                    (x.clone(), Interval::open(lo.clone(), x).ok())
                }
                _ => {
                    let x = if &x <= lo { lo.clone() } else { x };
                    (x.clone(), Interval::open(x, hi.clone()).ok())
                }
            };
            Ok(l.map(|l| (l, a + b * x)))
        }
        (DimExpr::Pow(q), _) => {
            // x = u^den gives pi1(x) = u^num exactly
            let num = u32::try_from(q.numer().clone()).unwrap_or(u32::MAX);
            let den = u32::try_from(q.denom().clone()).unwrap_or(u32::MAX);
            if num > 64 || den > 64 {
                return Ok(None);
            }
            for bits in (4..=64).step_by(4) {
                let mut u = pow_lower_bound(hi, &Rational::new(1.into(), den.into()), bits)?;
                if &rpow(&u, den) >= hi {
                    u -= Rational::new(1.into(), num_bigint::BigInt::from(2).pow(bits));
                }
                let x = rpow(&u, den);
                if u.is_negative() || &x <= lo {
                    continue;
                }
                let d = rpow(&u, num);
                if &d >= t {
                    return Ok(Interval::open(x, hi.clone()).ok().map(|l| (l, d)));
                }
            }
            Ok(None)
        }
        (DimExpr::Const(_), _) => Ok(None),
    }
}

/// Witnesses for a piecewise function whose integral has dimension
/// `d0 + s`. Unattained suprema are approached at `s - eps * min(1, s)` for
/// `eps` in `{1/2, 1/4, 1/8}`.
pub(crate) fn piecewise_certificate(space: &IntervalSpace, info: &TopInfo<'_>, value: &HNonNeg) -> Result<T4Certificate> {
    let mut cert = T4Certificate::default();
    if value.is_zero() {
        return Ok(cert);
    }
    let s = &info.s;
    if s.is_positive() {
        if let Some(p) = info.top.first() {
            let lb = p.pi2.lower_bound(&p.set)?;
            let inf = HNonNeg::of(s.clone(), lb)?;
            cert.d_witnesses.push(interval_witness(space, open_interior(&p.set), inf));
        } else {
            let scale = if s < &Rational::one() { s.clone() } else { Rational::one() };
            for k in 1..=3 {
                let t = s - &scale * rat(1, 1 << k);
                for p in &info.sup {
                    if let Some((l, d)) = approach(p, &t)? {
                        let inf = HNonNeg::of(d, ExtRational::PosInf)?;
                        cert.d_witnesses.push(interval_witness(space, l, inf));
                        break;
                    }
                }
            }
        }
        for p in &info.top {
            for part in split(&p.set, 4) {
                let lb = p.pi2.lower_bound(&part)?;
                let inf = HNonNeg::of(s.clone(), lb)?;
                cert.m_witnesses.push(interval_witness(space, part, inf));
            }
        }
    } else {
        let mut first = true;
        for p in &info.top {
            if let Some((part, lb)) = positive_mass_part(p)? {
                if first {
                    let inf = HNonNeg::of(Rational::zero(), lb.clone())?;
                    cert.d_witnesses.push(interval_witness(space, part.clone(), inf));
                    first = false;
                }
            }
            for part in split(&p.set, 8) {
                let lb = p.pi2.lower_bound(&part)?;
                if lb.is_positive() {
                    let inf = HNonNeg::of(Rational::zero(), lb)?;
                    cert.m_witnesses.push(interval_witness(space, part, inf));
                }
            }
        }
    }
    Ok(cert)
}

/// Whether `v <= f(x)` for every `x` in the interval `j`, inside one piece.
fn piece_bounds(p: &Piece, j: &Interval, v: &HValue) -> Result<bool> {
    let d = Exact::Rat(v.d.value().clone());
    match p.pi1.monotone() {
        Monotone::Constant => {
            let c = p.pi1.constant().expect("constant");
            match c.cmp(v.d.value()) {
                Ordering::Greater => Ok(true),
                Ordering::Less => Ok(false),
                Ordering::Equal => match &v.m {
                    ExtRational::Finite(m) => p.pi2.certify_at_least(m, j),
                    ExtRational::NegInf => Ok(true),
                    ExtRational::PosInf => Ok(false),
                },
            }
        }
        dir => {
            let (end, included) = match dir {
                Monotone::Decreasing => (&j.hi, j.hi_closed),
                _ => (&j.lo, j.lo_closed),
            };
            match p.pi1.at(end)?.cmp_exact(&d)? {
                Ordering::Greater => Ok(true),
                Ordering::Less => Ok(false),
                Ordering::Equal if !included => Ok(true),
                Ordering::Equal => match &v.m {
                    ExtRational::Finite(m) => Ok(p.pi2.at(end)?.cmp_exact(&Exact::Rat(m.clone()))? != Ordering::Less),
                    ExtRational::NegInf => Ok(true),
                    ExtRational::PosInf => Ok(false),
                },
            }
        }
    }
}

fn piecewise_bounds(f: &PiecewiseFn, parts: &[Interval], v: &HValue) -> Result<bool> {
    let set = IntervalSet::from_parts(parts.iter().cloned());
    // off the pieces f is (0,0), which is below any positive bound
    if !set.difference(&f.support()).is_empty() && v > &HValue::zero() {
        return Ok(false);
    }
    for p in f.pieces() {
        for part in set.parts() {
            if let Some(j) = p.set.intersect(part) {
                if !piece_bounds(p, &j, v)? {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}

/// Whether `v <= inf_L f`.
pub fn lower_bound_holds(f: &HFunction, set: &MeasurableSet, v: &HValue) -> Result<bool> {
    match (f, set) {
        (_, s) if s.is_empty() => Ok(true),
        (HFunction::Simple(g), MeasurableSet::Atoms(ids) | MeasurableSet::Catalog(ids)) => {
            Ok(ids.iter().all(|id| g.at_name(id).value() >= v))
        }
        (HFunction::Simple(g), MeasurableSet::Intervals(parts)) => {
            let set = IntervalSet::from_parts(parts.iter().cloned());
            let mut covered = IntervalSet::empty();
            for (c, s) in g.pieces() {
                if let MeasurableSet::Intervals(ps) = s {
                    let ps = IntervalSet::from_parts(ps.iter().cloned());
                    if !ps.intersect(&set).is_empty() && c.value() < v {
                        return Ok(false);
                    }
                    covered = covered.union(&ps);
                }
            }
            Ok(set.difference(&covered).is_empty() || v <= &HValue::zero())
        }
        (HFunction::Piecewise(p), MeasurableSet::Intervals(parts)) => piecewise_bounds(p, parts, v),
        _ => Ok(false),
    }
}

/// Re-evaluates every witness: measures, positivity, infimum bounds, and the
/// relation of the witness sums to the reported value.
pub fn verify_certificate(space: &MeasureSpace, f: &HFunction, value: &HNonNeg, cert: &T4Certificate) -> Result<bool> {
    let zero = HValue::zero();
    for w in cert.d_witnesses.iter().chain(&cert.m_witnesses) {
        if space.measure(&w.set)? != w.measure {
            return Ok(false);
        }
        if w.measure.value() <= &zero || w.infimum.value() <= &zero {
            return Ok(false);
        }
        if !lower_bound_holds(f, &w.set, w.infimum.value())? {
            return Ok(false);
        }
    }
    let d = value.d.value();
    if value.is_zero() {
        return Ok(cert.d_witnesses.is_empty() && cert.m_witnesses.is_empty());
    }
    let Some(best) = cert.d_witnesses.iter().map(Witness::dim_sum).max() else {
        return Ok(false);
    };
    if &best > d || best < d - rat(1, 8) {
        return Ok(false);
    }
    if cert.m_witnesses.iter().any(|w| &w.dim_sum() != d) {
        return Ok(false);
    }
    let sets: Vec<MeasurableSet> = cert.m_witnesses.iter().map(|w| w.set.clone()).collect();
    if MeasurableSet::concat(&sets)?.check_disjoint().is_err() {
        return Ok(false);
    }
    let mut total = ExtRational::zero();
    for w in &cert.m_witnesses {
        total = total.checked_add(&w.mass()).expect("nonnegative terms");
    }
    Ok(total <= value.m)
}
