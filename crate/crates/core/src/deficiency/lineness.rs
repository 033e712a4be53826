//! Lineness: for a candidate line `e`, the size of the perpendicular section
//! `t(y) = K n perp(y) - {y}` integrated along `e`, minimized over a finite
//! candidate list.

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogKind, CatalogSet};
use crate::error::{Error, Result};
use crate::hvalue::HNonNeg;
use crate::integral::{integrate_simple, SimpleFn};
use crate::rational::{int, render_rational, ExtRational, Rational};
use crate::space::MeasurableSet;

use super::geometry::{exact_norm, Line, Point2};

/// A piece of `K`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Primitive {
    Line(Line),
    Segment([Point2; 2]),
    Point(Point2),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct LinenessScenario {
    pub primitives: Vec<Primitive>,
    /// Lines to try; when empty, [`default_candidates`] is used.
    #[serde(default)]
    pub candidates: Vec<Line>,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LinenessResult {
    /// The smallest integral over the candidates, an upper bound for the
    /// infimum over all lines.
    pub value: HNonNeg,
    pub line: Line,
    /// Every candidate that could be evaluated, with its integral.
    pub evaluated: Vec<(Line, HNonNeg)>,
    /// Generated candidates whose sections were not expressible.
    pub skipped: usize,
}

/// Primitives with degenerate segments turned into points.
fn normalized(prims: &[Primitive]) -> Vec<Primitive> {
    prims
        .iter()
        .map(|p| match p {
            Primitive::Segment([a, b]) if a == b => Primitive::Point(a.clone()),
            other => other.clone(),
        })
        .collect()
}

/// `(point, direction)` and, for segments, the parameter range `[0, 1]`.
fn linear_part(p: &Primitive) -> Option<(Point2, Point2, bool)> {
    match p {
        Primitive::Line(l) => Some((l.p.clone(), l.dir(), false)),
        Primitive::Segment([a, b]) => Some((a.clone(), b.sub(a), true)),
        Primitive::Point(_) => None,
    }
}

fn require_norm(e: &Line) -> Result<Rational> {
    exact_norm(&e.dir())?.ok_or_else(|| {
        Error::UnsupportedScenario(format!("{e} has a direction of irrational length"))
    })
}

/// `mu^H(t(y))` at `y = e(t)`.
pub fn section_measure(prims: &[Primitive], e: &Line, t: &Rational) -> Result<HNonNeg> {
    let y = e.at(t);
    let dir = e.dir();
    let perp = dir.perp();
    let n2 = perp.norm2();
    let coord = |z: &Point2| z.sub(&y).dot(&perp) / &n2;
    let on_section = |z: &Point2| z.sub(&y).dot(&dir).is_zero();

    let mut points: BTreeSet<Rational> = BTreeSet::new();
    // spans along the perpendicular; None is unbounded
    let mut spans: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
    for p in normalized(prims) {
        match &p {
            Primitive::Point(z) => {
                if on_section(z) {
                    points.insert(coord(z));
                }
            }
            _ => {
                let (a, u, bounded) = linear_part(&p).expect("linear");
                let det = perp.cross(&u);
                if det.is_zero() {
                    // perpendicular to e: the whole primitive or nothing
                    if on_section(&a) {
                        if bounded {
                            let (s, r) = (coord(&a), coord(&a.add(&u)));
                            let (lo, hi) = if s <= r { (s, r) } else { (r, s) };
                            spans.push((Some(lo), Some(hi)));
                        } else {
                            spans.push((None, None));
                        }
                    }
                    continue;
                }
                let w = a.sub(&y);
                let s = w.cross(&u) / &det;
                let r = w.cross(&perp) / &det;
                if !bounded || (r >= Rational::zero() && r <= Rational::one()) {
                    points.insert(s);
                }
            }
        }
    }
    points.remove(&Rational::zero());
    if !spans.is_empty() {
        if spans.iter().any(|(lo, hi)| lo.is_none() || hi.is_none()) {
            return HNonNeg::of(int(1), ExtRational::PosInf);
        }
        let mut closed: Vec<(Rational, Rational)> =
            spans.into_iter().map(|(lo, hi)| (lo.expect("bounded"), hi.expect("bounded"))).collect();
        closed.sort();
        let mut total = Rational::zero();
        let (mut lo, mut hi) = closed[0].clone();
        for (a, b) in closed.into_iter().skip(1) {
            if a > hi {
                total += &hi - &lo;
                lo = a;
                hi = b;
            } else if b > hi {
                hi = b;
            }
        }
        total += hi - lo;
        return HNonNeg::of(int(1), total * require_norm(e)?);
    }
    HNonNeg::of(Rational::zero(), int(points.len() as i64))
}

/// Parameters along `e` where the section can change.
fn breakpoints(prims: &[Primitive], e: &Line) -> BTreeSet<Rational> {
    let mut out = BTreeSet::new();
    let dir = e.dir();
    let meet = |a: &Point2, u: &Point2, b: &Point2, v: &Point2| -> Option<Point2> {
        let det = u.cross(v);
        if det.is_zero() {
            return None;
        }
        let r = b.sub(a).cross(v) / det;
        Some(a.add(&u.scale(&r)))
    };
    let prims = normalized(prims);
    for p in &prims {
        match p {
            Primitive::Point(z) => {
                out.insert(e.param(z));
            }
            Primitive::Segment([a, b]) => {
                out.insert(e.param(a));
                out.insert(e.param(b));
            }
            Primitive::Line(l) => {
                out.insert(e.param(&l.p));
            }
        }
        if let Some((a, u, _)) = linear_part(p) {
            if let Some(z) = meet(&a, &u, &e.p, &dir) {
                out.insert(e.param(&z));
            }
        }
    }
    for (i, p) in prims.iter().enumerate() {
        for q in &prims[i + 1..] {
            if let (Some((a, u, _)), Some((b, v, _))) = (linear_part(p), linear_part(q)) {
                if let Some(z) = meet(&a, &u, &b, &v) {
                    out.insert(e.param(&z));
                }
            }
        }
    }
    out
}

/// `int_e mu^H(t(y)) dmu^H(y)` for one candidate.
pub fn line_integral(prims: &[Primitive], e: &Line) -> Result<HNonNeg> {
    let breaks: Vec<Rational> = breakpoints(prims, e).into_iter().collect();
    // (name, mu^H of the cell, representative parameter)
    let mut cells: Vec<(String, Option<Rational>, Rational)> = Vec::new();
    let ray = |name: String, rep: Rational| (name, None, rep);
    match (breaks.first(), breaks.last()) {
        (Some(first), Some(last)) => {
            cells.push(ray(format!("e(-inf, {})", render_rational(first)), first - int(1)));
            cells.push(ray(format!("e({}, inf)", render_rational(last)), last + int(1)));
            for (i, t) in breaks.iter().enumerate() {
                cells.push((format!("e{{{}}}", render_rational(t)), Some(Rational::zero()), t.clone()));
                if let Some(u) = breaks.get(i + 1) {
                    let name = format!("e({}, {})", render_rational(t), render_rational(u));
                    cells.push((name, Some(u - t), (t + u) / int(2)));
                }
            }
        }
        _ => cells.push(ray("e".into(), Rational::zero())),
    }
    let mut catalog = Catalog::new();
    let mut pieces = Vec::new();
    for (name, span, rep) in cells {
        let value = section_measure(prims, e, &rep)?;
        if value.is_zero() {
            continue;
        }
        let mu = match span {
            None => HNonNeg::of(int(1), ExtRational::PosInf)?,
            Some(s) if s.is_zero() => HNonNeg::of(Rational::zero(), int(1))?,
            Some(s) => HNonNeg::of(int(1), s * require_norm(e)?)?,
        };
        let kind = if mu.d.is_zero() { CatalogKind::FinitePoints } else { CatalogKind::Segment };
        catalog.insert(CatalogSet::new(name.clone(), 2, mu, kind)?)?;
        pieces.push((value, MeasurableSet::catalog([name])));
    }
    integrate_simple(&catalog, &SimpleFn::i_simple(pieces)?)
}

/// Supporting lines of the primitives, lines through pairs of anchor points,
/// and the horizontal and vertical lines through each anchor.
pub fn default_candidates(prims: &[Primitive]) -> Vec<Line> {
    let mut anchors: BTreeSet<Point2> = BTreeSet::new();
    let mut lines: Vec<Line> = Vec::new();
    for p in normalized(prims) {
        match p {
            Primitive::Point(z) => {
                anchors.insert(z);
            }
            Primitive::Segment([a, b]) => {
                anchors.insert(a.clone());
                anchors.insert(b.clone());
                lines.push(Line::new(a, b).expect("nondegenerate"));
            }
            Primitive::Line(l) => {
                anchors.insert(l.p.clone());
                anchors.insert(l.q.clone());
                lines.push(l);
            }
        }
    }
    let anchors: Vec<Point2> = anchors.into_iter().collect();
    for (i, a) in anchors.iter().enumerate() {
        for b in &anchors[i + 1..] {
            lines.push(Line::new(a.clone(), b.clone()).expect("distinct"));
        }
        let one = Rational::one();
        lines.push(Line::new(a.clone(), Point2::new(&a.x + &one, a.y.clone())).expect("distinct"));
        lines.push(Line::new(a.clone(), Point2::new(a.x.clone(), &a.y + &one)).expect("distinct"));
    }
    let mut seen = BTreeMap::new();
    lines.into_iter().filter(|l| seen.insert(l.key(), ()).is_none()).collect()
}

/// The smallest candidate integral. Explicit candidates must all evaluate;
/// generated ones that cannot be expressed exactly are skipped.
pub fn defi_lineness(s: &LinenessScenario) -> Result<LinenessResult> {
    let explicit = !s.candidates.is_empty();
    let candidates = if explicit { s.candidates.clone() } else { default_candidates(&s.primitives) };
    if candidates.is_empty() {
        return Err(Error::UnsupportedScenario("no candidate lines".into()));
    }
    let total = candidates.len();
    let results: Vec<Result<HNonNeg>> = candidates.par_iter().map(|e| line_integral(&s.primitives, e)).collect();
    let mut evaluated = Vec::new();
    let mut first_error = None;
    for (line, r) in candidates.into_iter().zip(results) {
        match r {
            Ok(v) => evaluated.push((line, v)),
            Err(e) if explicit => return Err(e),
            Err(e) => {
                first_error.get_or_insert(e);
            }
        }
    }
    let best = evaluated.iter().min_by(|a, b| a.1.cmp(&b.1)).cloned();
    let Some((line, value)) = best else {
        return Err(first_error.expect("some candidate failed"));
    };
    let skipped = total - evaluated.len();
    Ok(LinenessResult { value, line, evaluated, skipped })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::new(int(x), int(y))
    }

    fn line(a: Point2, b: Point2) -> Line {
        Line::new(a, b).unwrap()
    }

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    fn axis() -> Line {
        line(pt(0, 0), pt(1, 0))
    }

    #[test]
    fn single_line() {
        let s = LinenessScenario { primitives: vec![Primitive::Line(axis())], candidates: vec![axis()] };
        assert_eq!(defi_lineness(&s).unwrap().value, HNonNeg::zero());
    }

    #[test]
    fn line_with_an_off_point() {
        let prims = vec![Primitive::Line(axis()), Primitive::Point(pt(3, 2))];
        let s = LinenessScenario { primitives: prims.clone(), candidates: vec![axis()] };
        let r = defi_lineness(&s).unwrap();
        assert_eq!(r.value, hn("(0, 1)"));
        assert_eq!(section_measure(&prims, &axis(), &int(3)).unwrap(), hn("(0, 1)"));
        assert_eq!(section_measure(&prims, &axis(), &int(2)).unwrap(), HNonNeg::zero());
        // generated candidates include the axis itself
        let d = defi_lineness(&LinenessScenario { primitives: prims, candidates: vec![] }).unwrap();
        assert_eq!(d.value, hn("(0, 1)"));
    }

    #[test]
    fn parallel_lines() {
        let prims = vec![Primitive::Line(axis()), Primitive::Line(line(pt(0, 1), pt(1, 1)))];
        let s = LinenessScenario { primitives: prims, candidates: vec![axis()] };
        assert_eq!(defi_lineness(&s).unwrap().value, hn("(1, inf)"));
    }

    #[test]
    fn perpendicular_segment_gives_its_length() {
        let prims = vec![Primitive::Line(axis()), Primitive::Segment([pt(2, 1), pt(2, 4)])];
        assert_eq!(section_measure(&prims, &axis(), &int(2)).unwrap(), hn("(1, 3)"));
        let v = line_integral(&prims, &axis()).unwrap();
        assert_eq!(v, hn("(1, 3)"));
    }

    #[test]
    fn slanted_segment_over_a_stretch() {
        // the segment from (0,1) to (2,3) meets each perpendicular over [0,2]
        let prims = vec![Primitive::Line(axis()), Primitive::Segment([pt(0, 1), pt(2, 3)])];
        assert_eq!(line_integral(&prims, &axis()).unwrap(), hn("(1, 2)"));
        assert_eq!(section_measure(&prims, &axis(), &rat(1, 2)).unwrap(), hn("(0, 1)"));
    }

    #[test]
    fn shared_points_are_counted_once() {
        let prims = vec![
            Primitive::Segment([pt(0, 1), pt(2, 1)]),
            Primitive::Segment([pt(2, 1), pt(2, 3)]),
            Primitive::Point(pt(1, 1)),
        ];
        let e = axis();
        assert_eq!(section_measure(&prims, &e, &int(1)).unwrap(), hn("(0, 1)"));
        assert_eq!(section_measure(&prims, &e, &int(2)).unwrap(), hn("(1, 2)"));
    }

    #[test]
    fn more_candidates_never_increase() {
        let prims = vec![Primitive::Line(axis()), Primitive::Point(pt(3, 2))];
        let far = line(pt(0, 5), pt(1, 5));
        let a = defi_lineness(&LinenessScenario { primitives: prims.clone(), candidates: vec![far.clone()] }).unwrap();
        let b = defi_lineness(&LinenessScenario { primitives: prims, candidates: vec![far, axis()] }).unwrap();
        assert!(b.value <= a.value);
        assert_eq!(b.line, axis());
    }

    #[test]
    fn irrational_direction_is_reported() {
        let prims = vec![Primitive::Line(axis()), Primitive::Segment([pt(0, 1), pt(2, 3)])];
        let diag = line(pt(0, 0), pt(1, 1));
        let s = LinenessScenario { primitives: prims, candidates: vec![diag] };
        assert!(matches!(defi_lineness(&s), Err(Error::UnsupportedScenario(_))));
    }
}
