//! Integral evaluation, sublevel sets and pointwise sums.

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hvalue::{sum_nonneg, HNonNeg, HValue};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{ExtRational, Rational};
use crate::space::{HMeasure, IntervalSpace, MeasurableSet, MeasureSpace};

use super::certificate::{piecewise_certificate, simple_certificate, T4Certificate, TopInfo};
use super::expr::{DimExpr, Exact, MassExpr};
use super::function::{ExactPair, HFunction, Piece, PiecewiseFn, SimpleFn};

/// `sum c_i * mu(A_i)`.
pub fn integrate_simple(space: &impl HMeasure, f: &SimpleFn) -> Result<HNonNeg> {
    let terms = f
        .pieces()
        .iter()
        .map(|(c, set)| Ok(c.mul(&space.measure(set)?)))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_nonneg(&terms))
}

/// The integral and a certificate for it.
pub fn integrate(space: &MeasureSpace, f: &HFunction) -> Result<(HNonNeg, T4Certificate)> {
    match (space, f) {
        (_, HFunction::Simple(s)) => {
            let v = integrate_simple(space, s)?;
            let cert = simple_certificate(space, s, &v)?;
            Ok((v, cert))
        }
        (MeasureSpace::Interval(sp), HFunction::Piecewise(p)) => {
            let info = top_info(sp, p)?;
            let v = t4_value(sp, info.as_ref())?;
            let cert = match &info {
                Some(info) => piecewise_certificate(sp, info, &v)?,
                None => T4Certificate::default(),
            };
            Ok((v, cert))
        }
        (other, HFunction::Piecewise(_)) => Err(Error::UnsupportedExpression(format!(
            "piecewise functions need an interval space, not a {} space",
            other.kind()
        ))),
    }
}

/// The integral alone.
pub fn integrate_value(space: &MeasureSpace, f: &HFunction) -> Result<HNonNeg> {
    match (space, f) {
        (_, HFunction::Simple(s)) => integrate_simple(space, s),
        (MeasureSpace::Interval(sp), HFunction::Piecewise(p)) => integrate_piecewise(sp, p),
        _ => integrate(space, f).map(|(v, _)| v),
    }
}

fn check_inside(space: &IntervalSpace, f: &PiecewiseFn) -> Result<()> {
    let sets: Vec<Interval> = f.pieces().iter().map(|p| p.set.clone()).collect();
    space.interval_set(&sets).map(|_| ())
}

/// Essential supremum of `pi1` over the proper pieces, the pieces attaining
/// it on a positive-length set, and those approaching it. `None` when every
/// set the function lives on is null.
fn top_info<'a>(space: &IntervalSpace, f: &'a PiecewiseFn) -> Result<Option<TopInfo<'a>>> {
    check_inside(space, f)?;
    if space.density().is_zero() {
        return Ok(None);
    }
    let proper: Vec<&Piece> = f.pieces().iter().filter(|p| !p.set.is_point()).collect();
    if proper.is_empty() {
        return Ok(None);
    }
    let sups = proper.iter().map(|p| Ok(p.pi1.range(&p.set)?.1)).collect::<Result<Vec<Exact>>>()?;
    let mut best = Exact::Rat(Rational::zero());
    for v in &sups {
        if v.cmp_exact(&best)? == Ordering::Greater {
            best = v.clone();
        }
    }
    let s = best.to_rational()?;
    let top = proper.iter().copied().filter(|p| p.pi1.constant() == Some(&s)).collect();
    let mut sup = Vec::new();
    for (p, v) in proper.iter().zip(&sups) {
        if v.cmp_exact(&best)? == Ordering::Equal {
            sup.push(*p);
        }
    }
    Ok(Some(TopInfo { s, top, sup }))
}

fn top_mass(space: &IntervalSpace, info: &TopInfo<'_>) -> Result<Rational> {
    let mut m = Rational::zero();
    for p in &info.top {
        m += p.pi2.integrate(space.density(), &p.set)?;
    }
    Ok(m)
}

/// `(d0 + s, m)` with `s` the essential supremum of `pi1` and `m` the
/// integral of `pi2` over `{pi1 = s}`; at `s = 0` the value is the lifted
/// real integral.
fn t4_value(space: &IntervalSpace, info: Option<&TopInfo<'_>>) -> Result<HNonNeg> {
    let Some(info) = info else {
        return Ok(HNonNeg::zero());
    };
    let m = top_mass(space, info)?;
    if info.s.is_positive() {
        HNonNeg::of(space.dim_offset().value() + &info.s, m)
    } else {
        Ok(space.lift(m))
    }
}

pub fn integrate_piecewise(space: &IntervalSpace, f: &PiecewiseFn) -> Result<HNonNeg> {
    t4_value(space, top_info(space, f)?.as_ref())
}

/// For `pi1` constantly `d`: the real integral of `pi2`, shifted up by `d`
/// dimensions (at `d = 0`, lifted through the space's embedding).
pub fn graded_integral(space: &IntervalSpace, f: &PiecewiseFn) -> Result<HNonNeg> {
    check_inside(space, f)?;
    let proper: Vec<&Piece> = f.pieces().iter().filter(|p| !p.set.is_point()).collect();
    if proper.is_empty() || space.density().is_zero() {
        return Ok(HNonNeg::zero());
    }
    let d = f
        .graded_dim()
        .ok_or_else(|| Error::InvalidValue("function is not graded: pi1 is not one constant".into()))?;
    let off = IntervalSet::from_parts([space.bounds()]).difference(&f.support());
    if d.is_positive() && off.parts().iter().any(|p| !p.is_point()) {
        return Err(Error::InvalidValue(
            "function is not graded: it is (0,0) on a set of positive length".into(),
        ));
    }
    let mut r = Rational::zero();
    for p in &proper {
        r += p.pi2.integrate(space.density(), &p.set)?;
    }
    if d.is_positive() {
        HNonNeg::of(space.dim_offset().value() + d, r)
    } else {
        Ok(space.lift(r))
    }
}

/// A nonnegative real function, for essential suprema.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RealFunction {
    /// Value per atom; missing atoms are 0.
    Atoms(BTreeMap<String, Rational>),
    /// Expressions on disjoint intervals; 0 elsewhere.
    Pieces(Vec<(Interval, DimExpr)>),
}

/// Essential supremum with respect to the underlying measure: points and
/// null pieces are ignored, and `sup {} = 0`.
pub fn ess_sup(space: &MeasureSpace, g: &RealFunction) -> Result<ExtRational> {
    let mut best = Exact::Rat(Rational::zero());
    match (space, g) {
        (MeasureSpace::Atoms(a), RealFunction::Atoms(values)) => {
            for (id, v) in values {
                if v.is_negative() {
                    return Err(Error::InvalidValue(format!("negative value at '{id}'")));
                }
                if !a.weight(id)?.is_zero() && v > best.rational().expect("rational") {
                    best = Exact::Rat(v.clone());
                }
            }
        }
        (MeasureSpace::Interval(sp), RealFunction::Pieces(pieces)) => {
            let sets: Vec<Interval> = pieces.iter().map(|(s, _)| s.clone()).collect();
            sp.interval_set(&sets)?;
            if !sp.density().is_zero() {
                for (set, e) in pieces.iter().filter(|(s, _)| !s.is_point()) {
                    e.validate_on(set)?;
                    let sup = e.range(set)?.1;
                    if sup.cmp_exact(&best)? == Ordering::Greater {
                        best = sup;
                    }
                }
            }
        }
        _ => {
            return Err(Error::UnsupportedExpression(format!(
                "essential supremum on a {} space",
                space.kind()
            )))
        }
    }
    Ok(ExtRational::Finite(best.to_rational()?))
}

/// `(ess sup pi1, int_E pi2 dnu)` with `E = {pi1 = ess sup pi1}`, for a space
/// carrying the associated h-measure `(0, nu)`.
pub fn integrate_ordinary(space: &MeasureSpace, f: &HFunction) -> Result<HNonNeg> {
    match (space, f) {
        (MeasureSpace::Atoms(a), HFunction::Simple(g)) => {
            let mut nu = BTreeMap::new();
            for (id, w) in a.atoms() {
                if !w.d.is_zero() {
                    return Err(Error::InvalidValue(format!(
                        "atom '{id}' has weight {w}; an ordinary measure has dimension 0"
                    )));
                }
                nu.insert(id.as_str(), w.m.clone());
            }
            let pi1: BTreeMap<String, Rational> =
                a.ids().map(|id| (id.to_string(), g.at_name(id).d.value().clone())).collect();
            let s = ess_sup(space, &RealFunction::Atoms(pi1))?;
            let s = s.finite().expect("finite").clone();
            let mut m = ExtRational::zero();
            for (id, w) in &nu {
                let v = g.at_name(id);
                if w.is_positive() && v.d.value() == &s {
                    m = m.checked_add(&v.m.mul(w)).expect("nonnegative terms");
                }
            }
            HNonNeg::of(s, m)
        }
        (MeasureSpace::Interval(sp), _) => {
            if !sp.dim_offset().is_zero() {
                return Err(Error::InvalidValue("ordinary integral needs dimension offset 0".into()));
            }
            let p = match f {
                HFunction::Piecewise(p) => p.clone(),
                HFunction::Simple(s) => s.to_piecewise()?,
            };
            check_inside(sp, &p)?;
            let g = RealFunction::Pieces(p.pieces().iter().map(|q| (q.set.clone(), q.pi1.clone())).collect());
            let s = ess_sup(space, &g)?.finite().expect("finite").clone();
            let mut m = Rational::zero();
            for q in p.pieces().iter().filter(|q| !q.set.is_point() && q.pi1.constant() == Some(&s)) {
                m += q.pi2.integrate(sp.density(), &q.set)?;
            }
            HNonNeg::of(s, m)
        }
        _ => Err(Error::UnsupportedExpression(format!(
            "ordinary integral on a {} space",
            space.kind()
        ))),
    }
}

/// `L -> integral of f over L`.
pub struct Indefinite<'a> {
    pub space: &'a MeasureSpace,
    pub f: &'a HFunction,
}

impl<'a> Indefinite<'a> {
    pub fn new(space: &'a MeasureSpace, f: &'a HFunction) -> Self {
        Indefinite { space, f }
    }
}

impl HMeasure for Indefinite<'_> {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg> {
        self.space.measure(s)?;
        integrate_value(self.space, &self.f.restrict(s)?)
    }
}

pub fn indefinite<'a>(space: &'a MeasureSpace, f: &'a HFunction) -> Indefinite<'a> {
    Indefinite::new(space, f)
}

/// `{x : f(x) < v}`.
pub fn sublevel_set(space: &MeasureSpace, f: &HFunction, v: &HValue) -> Result<MeasurableSet> {
    let zero_below = &HValue::zero() < v;
    match (space, f) {
        (MeasureSpace::Atoms(a), HFunction::Simple(g)) => Ok(MeasurableSet::atoms(
            a.ids().filter(|id| g.at_name(id).value() < v).map(str::to_string).collect::<Vec<_>>(),
        )),
        (MeasureSpace::Catalog(c), HFunction::Simple(g)) => Ok(MeasurableSet::catalog(
            c.names().filter(|id| g.at_name(id).value() < v).map(str::to_string).collect::<Vec<_>>(),
        )),
        (MeasureSpace::Interval(sp), HFunction::Simple(g)) => {
            let mut parts = Vec::new();
            let mut covered = IntervalSet::empty();
            for (c, s) in g.pieces() {
                if let MeasurableSet::Intervals(ps) = s {
                    covered = covered.union(&IntervalSet::from_parts(ps.iter().cloned()));
                    if c.value() < v {
                        parts.extend(ps.iter().cloned());
                    }
                }
            }
            if zero_below {
                parts.extend(IntervalSet::from_parts([sp.bounds()]).difference(&covered).parts().iter().cloned());
            }
            Ok(MeasurableSet::Intervals(IntervalSet::from_parts(parts).parts().to_vec()))
        }
        (MeasureSpace::Interval(sp), HFunction::Piecewise(p)) => {
            check_inside(sp, p)?;
            let mut parts = Vec::new();
            for piece in p.pieces() {
                parts.extend(piece_sublevel(piece, v)?);
            }
            if zero_below {
                parts.extend(IntervalSet::from_parts([sp.bounds()]).difference(&p.support()).parts().iter().cloned());
            }
            Ok(MeasurableSet::Intervals(IntervalSet::from_parts(parts).parts().to_vec()))
        }
        _ => Err(Error::UnsupportedExpression(format!(
            "sublevel sets of this function on a {} space",
            space.kind()
        ))),
    }
}

/// `{pi1 < d} u ({pi1 = d} n {pi2 < m})` within one piece.
fn piece_sublevel(p: &Piece, v: &HValue) -> Result<Vec<Interval>> {
    let d = v.d.value();
    let mut out: Vec<Interval> = p.pi1.below(&p.set, d)?.into_iter().collect();
    let level: Option<Interval> = match &p.pi1 {
        DimExpr::Const(c) => (c == d).then(|| p.set.clone()),
        e => {
            let (lo, hi) = (e.at(&p.set.lo)?, e.at(&p.set.hi)?);
            let target = Exact::Rat(d.clone());
            let between = |a: &Exact, b: &Exact| -> Result<bool> {
                Ok(a.cmp_exact(&target)? != Ordering::Greater && b.cmp_exact(&target)? != Ordering::Less)
            };
            if between(&lo, &hi)? || between(&hi, &lo)? {
                let x0 = e.solve(d)?;
                p.set.contains(&x0).then(|| Interval::point(x0))
            } else {
                None
            }
        }
    };
    if let Some(level) = level {
        let below = match &v.m {
            ExtRational::PosInf => Some(level),
            ExtRational::NegInf => None,
            ExtRational::Finite(m) => p.pi2.below(&level, m)?,
        };
        out.extend(below);
    }
    Ok(out)
}

/// `f + g`, pointwise, by common refinement.
pub fn pointwise_add_fn(f: &HFunction, g: &HFunction) -> Result<HFunction> {
    match (f, g) {
        (HFunction::Simple(a), _) if a.pieces().is_empty() => Ok(g.clone()),
        (_, HFunction::Simple(b)) if b.pieces().is_empty() => Ok(f.clone()),
        (HFunction::Simple(a), HFunction::Simple(b)) => add_simple(a, b).map(HFunction::Simple),
        (HFunction::Piecewise(a), HFunction::Piecewise(b)) => add_piecewise(a, b).map(HFunction::Piecewise),
        (HFunction::Simple(a), HFunction::Piecewise(b)) => add_piecewise(&a.to_piecewise()?, b).map(HFunction::Piecewise),
        (HFunction::Piecewise(a), HFunction::Simple(b)) => add_piecewise(a, &b.to_piecewise()?).map(HFunction::Piecewise),
    }
}

fn add_simple(a: &SimpleFn, b: &SimpleFn) -> Result<SimpleFn> {
    let first = a.pieces().iter().chain(b.pieces()).map(|(_, s)| s).find(|s| !s.is_empty());
    match first {
        None => Ok(SimpleFn::zero()),
        Some(MeasurableSet::Intervals(_)) => add_simple_intervals(a, b),
        Some(kind) => {
            let catalog = matches!(kind, MeasurableSet::Catalog(_));
            let mut names = BTreeSet::new();
            for (_, s) in a.pieces().iter().chain(b.pieces()) {
                match s {
                    MeasurableSet::Atoms(ids) if !catalog => names.extend(ids.iter().cloned()),
                    MeasurableSet::Catalog(ids) if catalog => names.extend(ids.iter().cloned()),
                    s if s.is_empty() => {}
                    _ => return Err(Error::InvalidValue("sum of functions on different spaces".into())),
                }
            }
            let mut groups: BTreeMap<HNonNeg, Vec<String>> = BTreeMap::new();
            for n in names {
                let v = a.at_name(&n).add(&b.at_name(&n));
                if !v.is_zero() {
                    groups.entry(v).or_default().push(n);
                }
            }
            let make = |ids: Vec<String>| {
                if catalog {
                    MeasurableSet::Catalog(ids)
                } else {
                    MeasurableSet::Atoms(ids)
                }
            };
            SimpleFn::i_simple(groups.into_iter().map(|(v, ids)| (v, make(ids))).collect())
        }
    }
}

/// Points and open gaps between consecutive breakpoints.
fn cells(breaks: BTreeSet<Rational>) -> Vec<Interval> {
    let pts: Vec<Rational> = breaks.into_iter().collect();
    let mut out = Vec::new();
    for (i, x) in pts.iter().enumerate() {
        out.push(Interval::point(x.clone()));
        if let Some(y) = pts.get(i + 1) {
            out.push(Interval::open(x.clone(), y.clone()).expect("sorted"));
        }
    }
    out
}

fn sample(cell: &Interval) -> Rational {
    cell.midpoint()
}

/// Joins touching cells that carry the same value.
fn merge_cells<T: PartialEq>(cells: Vec<(Interval, T)>) -> Vec<(Interval, T)> {
    let mut out: Vec<(Interval, T)> = Vec::new();
    for (c, v) in cells {
        if let Some((last, lv)) = out.last_mut() {
            if *lv == v && last.hi == c.lo && (last.hi_closed || c.lo_closed) {
                last.hi = c.hi;
                last.hi_closed = c.hi_closed;
                continue;
            }
        }
        out.push((c, v));
    }
    out
}

fn add_simple_intervals(a: &SimpleFn, b: &SimpleFn) -> Result<SimpleFn> {
    let mut breaks = BTreeSet::new();
    for (_, s) in a.pieces().iter().chain(b.pieces()) {
        let MeasurableSet::Intervals(parts) = s else {
            if s.is_empty() {
                continue;
            }
            return Err(Error::InvalidValue("sum of functions on different spaces".into()));
        };
        for p in parts {
            breaks.insert(p.lo.clone());
            breaks.insert(p.hi.clone());
        }
    }
    let mut valued = Vec::new();
    for cell in cells(breaks) {
        let x = sample(&cell);
        let v = a.at_point(&x).add(&b.at_point(&x));
        if !v.is_zero() {
            valued.push((cell, v));
        }
    }
    let mut groups: BTreeMap<HNonNeg, Vec<Interval>> = BTreeMap::new();
    for (cell, v) in merge_cells(valued) {
        groups.entry(v).or_default().push(cell);
    }
    SimpleFn::i_simple(groups.into_iter().map(|(v, ps)| (v, MeasurableSet::Intervals(ps))).collect())
}

type Exprs = (DimExpr, MassExpr);

/// The pair of expressions carried by `p + q` on a cell where both live.
fn add_on_cell(p: &Piece, q: &Piece, cell: &Interval) -> Result<Vec<(Interval, Exprs)>> {
    let pick = |x: &Rational| -> Result<Exprs> {
        let (a, b) = (p.at(x)?, q.at(x)?);
        match a.d.cmp_exact(&b.d)? {
            Ordering::Greater => Ok((p.pi1.clone(), p.pi2.clone())),
            Ordering::Less => Ok((q.pi1.clone(), q.pi2.clone())),
            Ordering::Equal => equal_dim_sum(p, q, &a, &b),
        }
    };
    if cell.is_point() {
        return Ok(vec![(cell.clone(), pick(&cell.lo)?)]);
    }
    match p.pi1.crossings(&q.pi1, &cell.lo, &cell.hi)? {
        None => Ok(vec![(cell.clone(), (p.pi1.clone(), p.pi2.add(&q.pi2)?))]),
        Some(xs) => {
            let mut breaks: BTreeSet<Rational> = xs.into_iter().collect();
            breaks.insert(cell.lo.clone());
            breaks.insert(cell.hi.clone());
            let mut out = Vec::new();
            for sub in cells(breaks) {
                if sub.is_point() && (sub.lo == cell.lo || sub.lo == cell.hi) {
                    continue;
                }
                out.push((sub.clone(), pick(&sample(&sub))?));
            }
            Ok(out)
        }
    }
}

/// `pi2` of a sum where the dimensions agree at one point.
fn equal_dim_sum(p: &Piece, q: &Piece, a: &ExactPair, b: &ExactPair) -> Result<Exprs> {
    if let Ok(m) = p.pi2.add(&q.pi2) {
        return Ok((p.pi1.clone(), m));
    }
    let m = a.m.to_rational()? + b.m.to_rational()?;
    Ok((DimExpr::Const(a.d.to_rational()?), MassExpr::constant(m)))
}

fn add_piecewise(a: &PiecewiseFn, b: &PiecewiseFn) -> Result<PiecewiseFn> {
    let mut breaks = BTreeSet::new();
    for p in a.pieces().iter().chain(b.pieces()) {
        breaks.insert(p.set.lo.clone());
        breaks.insert(p.set.hi.clone());
    }
    let mut valued: Vec<(Interval, Exprs)> = Vec::new();
    for cell in cells(breaks) {
        let x = sample(&cell);
        match (a.piece_at(&x), b.piece_at(&x)) {
            (None, None) => {}
            (Some(p), None) | (None, Some(p)) => valued.push((cell, (p.pi1.clone(), p.pi2.clone()))),
            (Some(p), Some(q)) => valued.extend(add_on_cell(p, q, &cell)?),
        }
    }
    let pieces = merge_cells(valued)
        .into_iter()
        .map(|(set, (pi1, pi2))| Piece { set, pi1, pi2 })
        .filter(|p| !p.is_zero())
        .collect();
    PiecewiseFn::checked_disjoint(pieces)
}
