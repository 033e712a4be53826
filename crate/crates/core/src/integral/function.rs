//! Function descriptors: simple and i-simple functions over any space, and
//! piecewise-graded functions over an interval space.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{Signed, Zero};

use crate::error::{Error, Result};
use crate::hvalue::{HNonNeg, HValue};
use crate::intervals::{Interval, IntervalSet};
use crate::rational::{ExtRational, Rational};
use crate::space::MeasurableSet;

use super::expr::{DimExpr, Exact, MassExpr, Monotone};

/// `sum coeff_i * chi(A_i)`, with value `(0,0)` off the union.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimpleFn {
    pieces: Vec<(HNonNeg, MeasurableSet)>,
}

impl SimpleFn {
    /// A simple function: every coefficient has a finite second coordinate.
    pub fn new(pieces: Vec<(HNonNeg, MeasurableSet)>) -> Result<Self> {
        if let Some((c, _)) = pieces.iter().find(|(c, _)| !c.m.is_finite()) {
            return Err(Error::InvalidValue(format!(
                "simple function coefficient {c} is infinite; use an i-simple function"
            )));
        }
        SimpleFn::i_simple(pieces)
    }

    /// An i-simple function: `+inf` is allowed in the second coordinate.
    pub fn i_simple(pieces: Vec<(HNonNeg, MeasurableSet)>) -> Result<Self> {
        let sets: Vec<MeasurableSet> = pieces.iter().map(|(_, s)| s.clone()).collect();
        MeasurableSet::concat(&sets)?.check_disjoint()?;
        Ok(SimpleFn { pieces })
    }

    pub fn zero() -> Self {
        SimpleFn { pieces: Vec::new() }
    }

    /// One coefficient per atom.
    pub fn on_atoms<S: Into<String>>(values: impl IntoIterator<Item = (S, HNonNeg)>) -> Result<Self> {
        SimpleFn::i_simple(
            values
                .into_iter()
                .map(|(id, v)| (v, MeasurableSet::atoms([id.into()])))
                .collect(),
        )
    }

    pub fn pieces(&self) -> &[(HNonNeg, MeasurableSet)] {
        &self.pieces
    }

    pub fn is_i_simple(&self) -> bool {
        self.pieces.iter().any(|(c, _)| !c.m.is_finite())
    }

    /// Value at a named primitive (an atom or a catalog set).
    pub fn at_name(&self, name: &str) -> HNonNeg {
        self.pieces
            .iter()
            .find(|(_, s)| match s {
                MeasurableSet::Atoms(ids) | MeasurableSet::Catalog(ids) => ids.iter().any(|i| i == name),
                MeasurableSet::Intervals(_) => false,
            })
            .map(|(c, _)| c.clone())
            .unwrap_or_else(HNonNeg::zero)
    }

    /// Value at a real point, for functions on an interval space.
    pub fn at_point(&self, x: &Rational) -> HNonNeg {
        self.pieces
            .iter()
            .find(|(_, s)| matches!(s, MeasurableSet::Intervals(parts) if parts.iter().any(|p| p.contains(x))))
            .map(|(c, _)| c.clone())
            .unwrap_or_else(HNonNeg::zero)
    }

    /// `c * f`, pointwise.
    pub fn scale(&self, c: &HNonNeg) -> SimpleFn {
        let pieces = self
            .pieces
            .iter()
            .map(|(v, s)| (c.mul(v), s.clone()))
            .filter(|(v, _)| !v.is_zero())
            .collect();
        SimpleFn { pieces }
    }

    /// `f * chi(L)`.
    pub fn restrict(&self, set: &MeasurableSet) -> Result<SimpleFn> {
        let mut pieces = Vec::new();
        for (c, s) in &self.pieces {
            let cut = intersect_sets(s, set)?;
            if !cut.is_empty() {
                pieces.push((c.clone(), cut));
            }
        }
        Ok(SimpleFn { pieces })
    }

    /// The same function written with piecewise-constant expressions, for an
    /// interval space.
    pub fn to_piecewise(&self) -> Result<PiecewiseFn> {
        let mut pieces = Vec::new();
        for (c, s) in &self.pieces {
            let MeasurableSet::Intervals(parts) = s else {
                if s.is_empty() {
                    continue;
                }
                return Err(Error::InvalidValue("simple function is not defined on intervals".into()));
            };
            let m = c.m.finite().cloned().ok_or_else(|| {
                Error::UnsupportedExpression(format!("coefficient {c} has no polynomial mass"))
            })?;
            for p in parts {
                pieces.push(Piece {
                    set: p.clone(),
                    pi1: DimExpr::Const(c.d.value().clone()),
                    pi2: MassExpr::constant(m.clone()),
                });
            }
        }
        PiecewiseFn::new(pieces)
    }
}

impl fmt::Display for SimpleFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self
            .pieces
            .iter()
            .map(|(c, s)| format!("{c}*chi[{}]", render_set(s)))
            .collect();
        f.write_str(&parts.join(" + "))
    }
}

/// Compact text form of a measurable set.
pub fn render_set(s: &MeasurableSet) -> String {
    match s {
        MeasurableSet::Atoms(ids) | MeasurableSet::Catalog(ids) => format!("{{{}}}", ids.join(", ")),
        MeasurableSet::Intervals(parts) if parts.is_empty() => "{}".into(),
        MeasurableSet::Intervals(parts) => {
            parts.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(" u ")
        }
    }
}

/// Intersection of two sets of the same kind.
pub fn intersect_sets(a: &MeasurableSet, b: &MeasurableSet) -> Result<MeasurableSet> {
    if a.is_empty() || b.is_empty() {
        return Ok(MeasurableSet::empty());
    }
    match (a, b) {
        (MeasurableSet::Atoms(x), MeasurableSet::Atoms(y)) => {
            Ok(MeasurableSet::Atoms(x.iter().filter(|i| y.contains(i)).cloned().collect()))
        }
        (MeasurableSet::Catalog(x), MeasurableSet::Catalog(y)) => {
            Ok(MeasurableSet::Catalog(x.iter().filter(|i| y.contains(i)).cloned().collect()))
        }
        (MeasurableSet::Intervals(x), MeasurableSet::Intervals(y)) => {
            let cut = IntervalSet::from_parts(x.iter().cloned())
                .intersect(&IntervalSet::from_parts(y.iter().cloned()));
            Ok(MeasurableSet::Intervals(cut.parts().to_vec()))
        }
        _ => Err(Error::InvalidValue("intersection of sets from different kinds of space".into())),
    }
}

/// One piece of a piecewise-graded function: `f(x) = (pi1(x), pi2(x))` on `set`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Piece {
    pub set: Interval,
    pub pi1: DimExpr,
    pub pi2: MassExpr,
}

impl Piece {
    pub fn new(set: Interval, pi1: DimExpr, pi2: MassExpr) -> Result<Self> {
        pi1.validate_on(&set)?;
        pi2.validate_on(&set)?;
        Ok(Piece { set, pi1, pi2 })
    }

    pub fn constant(set: Interval, v: &HNonNeg) -> Result<Self> {
        let m = v.m.finite().cloned().ok_or_else(|| {
            Error::UnsupportedExpression(format!("constant {v} has no polynomial mass"))
        })?;
        Piece::new(set, DimExpr::Const(v.d.value().clone()), MassExpr::constant(m))
    }

    pub fn at(&self, x: &Rational) -> Result<ExactPair> {
        Ok(ExactPair { d: self.pi1.at(x)?, m: self.pi2.at(x)? })
    }

    /// Whether the piece is `(0,0)` identically.
    pub fn is_zero(&self) -> bool {
        self.pi2.is_zero() && matches!(&self.pi1, DimExpr::Const(c) if c.is_zero())
    }
}

impl fmt::Display for Piece {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {}) on {}", self.pi1, self.pi2, self.set)
    }
}

/// A value `(d, m)` whose coordinates may be irrational powers.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactPair {
    pub d: Exact,
    pub m: Exact,
}

impl ExactPair {
    pub fn zero() -> Self {
        ExactPair { d: Exact::Rat(Rational::zero()), m: Exact::Rat(Rational::zero()) }
    }

    pub fn from_hvalue(v: &HValue) -> Option<Self> {
        Some(ExactPair { d: Exact::Rat(v.d.value().clone()), m: Exact::Rat(v.m.finite()?.clone()) })
    }

    pub fn to_hvalue(&self) -> Result<HNonNeg> {
        HNonNeg::of(self.d.to_rational()?, self.m.to_rational()?)
    }

    /// Lexicographic comparison with an ordinary value.
    pub fn cmp_hvalue(&self, v: &HValue) -> Result<Ordering> {
        let d = self.d.cmp_exact(&Exact::Rat(v.d.value().clone()))?;
        if d != Ordering::Equal {
            return Ok(d);
        }
        Ok(match &v.m {
            ExtRational::PosInf => Ordering::Less,
            ExtRational::NegInf => Ordering::Greater,
            ExtRational::Finite(r) => self.m.cmp_exact(&Exact::Rat(r.clone()))?,
        })
    }

    pub fn cmp_exact(&self, other: &ExactPair) -> Result<Ordering> {
        Ok(self.d.cmp_exact(&other.d)?.then(self.m.cmp_exact(&other.m)?))
    }
}

impl fmt::Display for ExactPair {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.d, self.m)
    }
}

/// A function on an interval space given by disjoint pieces; `(0,0)` off the
/// pieces.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct PiecewiseFn {
    pieces: Vec<Piece>,
}

impl PiecewiseFn {
    pub fn new(pieces: Vec<Piece>) -> Result<Self> {
        for p in &pieces {
            p.pi1.validate_on(&p.set)?;
            p.pi2.validate_on(&p.set)?;
        }
        PiecewiseFn::checked_disjoint(pieces)
    }

    /// Skips the nonnegativity certificate, which can fail for sums of
    /// polynomials that touch zero; used only for pieces built from valid ones.
    pub(crate) fn checked_disjoint(mut pieces: Vec<Piece>) -> Result<Self> {
        pieces.sort_by(|a, b| a.set.lo.cmp(&b.set.lo).then(b.set.lo_closed.cmp(&a.set.lo_closed)));
        for w in pieces.windows(2) {
            if w[0].set.overlaps(&w[1].set) {
                return Err(Error::NonDisjoint(format!("{} meets {}", w[0].set, w[1].set)));
            }
        }
        Ok(PiecewiseFn { pieces })
    }

    pub fn constant(set: Interval, v: &HNonNeg) -> Result<Self> {
        PiecewiseFn::new(vec![Piece::constant(set, v)?])
    }

    pub fn pieces(&self) -> &[Piece] {
        &self.pieces
    }

    pub fn piece_at(&self, x: &Rational) -> Option<&Piece> {
        self.pieces.iter().find(|p| p.set.contains(x))
    }

    pub fn at(&self, x: &Rational) -> Result<ExactPair> {
        match self.piece_at(x) {
            Some(p) => p.at(x),
            None => Ok(ExactPair::zero()),
        }
    }

    /// The union of the pieces.
    pub fn support(&self) -> IntervalSet {
        IntervalSet::from_parts(self.pieces.iter().map(|p| p.set.clone()))
    }

    /// Whether every `pi1` is the constant `d`.
    pub fn graded_dim(&self) -> Option<Rational> {
        let mut dims = self.pieces.iter().map(|p| p.pi1.constant());
        let first = dims.next()??.clone();
        for d in dims {
            if d? != &first {
                return None;
            }
        }
        Some(first)
    }

    pub fn restrict(&self, set: &IntervalSet) -> PiecewiseFn {
        let mut pieces = Vec::new();
        for p in &self.pieces {
            for part in set.parts() {
                if let Some(cut) = p.set.intersect(part) {
                    pieces.push(Piece { set: cut, pi1: p.pi1.clone(), pi2: p.pi2.clone() });
                }
            }
        }
        PiecewiseFn::checked_disjoint(pieces).expect("restriction of disjoint pieces")
    }

    /// `c * f`, pointwise. The dimension shift keeps `x^q` only when `c` has
    /// dimension 0, and an infinite `c.m` is outside the polynomial grammar.
    pub fn scale(&self, c: &HNonNeg) -> Result<PiecewiseFn> {
        if c.is_zero() {
            return Ok(PiecewiseFn::default());
        }
        let cm = c.m.finite().cloned().ok_or_else(|| {
            Error::UnsupportedExpression(format!("scaling by {c} leaves the polynomial grammar"))
        })?;
        let dc = c.d.value();
        let mut pieces = Vec::new();
        for p in &self.pieces {
            // points where f = (0,0) stay (0,0) under the product
            for set in nonzero_parts(p)? {
                pieces.push(Piece { set, pi1: p.pi1.shift(dc)?, pi2: p.pi2.scale(&cm) });
            }
        }
        PiecewiseFn::checked_disjoint(pieces)
    }
}

/// The parts of a piece where `f != (0,0)`, when `f` vanishes only on a
/// finite set or everywhere.
fn nonzero_parts(p: &Piece) -> Result<Vec<Interval>> {
    if p.is_zero() {
        return Ok(vec![]);
    }
    let zero = Exact::Rat(Rational::zero());
    match p.pi1.monotone() {
        Monotone::Constant => {
            let c = p.pi1.constant().expect("constant");
            if c.is_positive() {
                return Ok(vec![p.set.clone()]);
            }
            if p.pi2.lower_bound(&p.set)?.is_positive() {
                return Ok(vec![p.set.clone()]);
            }
            if let MassExpr::Poly(poly) = &p.pi2 {
                if poly.degree() == Some(1) {
                    let root = -&poly.coeffs()[0] / &poly.coeffs()[1];
                    return Ok(p.set.difference(&Interval::point(root)));
                }
            }
            if let MassExpr::Pow { .. } = &p.pi2 {
                return Ok(p.set.difference(&Interval::point(Rational::zero())));
            }
            Err(Error::UnsupportedExpression(format!(
                "zero set of {} on {} for a dimension shift",
                p.pi2, p.set
            )))
        }
        _ => {
            // pi1 vanishes at most once
            let (lo, hi) = p.pi1.range(&p.set)?;
            if lo.cmp_exact(&zero)? == Ordering::Greater || hi.cmp_exact(&zero)? == Ordering::Less {
                return Ok(vec![p.set.clone()]);
            }
            let x0 = p.pi1.solve(&Rational::zero())?;
            if !p.set.contains(&x0) || p.pi2.at(&x0)?.cmp_exact(&zero)? == Ordering::Greater {
                return Ok(vec![p.set.clone()]);
            }
            Ok(p.set.difference(&Interval::point(x0)))
        }
    }
}

impl fmt::Display for PiecewiseFn {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.pieces.is_empty() {
            return f.write_str("0");
        }
        let parts: Vec<String> = self.pieces.iter().map(|p| p.to_string()).collect();
        f.write_str(&parts.join("; "))
    }
}

/// A measurable function descriptor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum HFunction {
    Simple(SimpleFn),
    Piecewise(PiecewiseFn),
}

impl HFunction {
    pub fn zero() -> Self {
        HFunction::Simple(SimpleFn::zero())
    }

    pub fn scale(&self, c: &HNonNeg) -> Result<HFunction> {
        Ok(match self {
            HFunction::Simple(s) => HFunction::Simple(s.scale(c)),
            HFunction::Piecewise(p) => HFunction::Piecewise(p.scale(c)?),
        })
    }

    /// `f * chi(L)`.
    pub fn restrict(&self, set: &MeasurableSet) -> Result<HFunction> {
        Ok(match self {
            HFunction::Simple(s) => HFunction::Simple(s.restrict(set)?),
            HFunction::Piecewise(p) => {
                if set.is_empty() {
                    return Ok(HFunction::Piecewise(PiecewiseFn::default()));
                }
                let MeasurableSet::Intervals(parts) = set else {
                    return Err(Error::InvalidValue("piecewise functions restrict to intervals".into()));
                };
                HFunction::Piecewise(p.restrict(&IntervalSet::from_parts(parts.iter().cloned())))
            }
        })
    }
}

impl fmt::Display for HFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            HFunction::Simple(s) => s.fmt(f),
            HFunction::Piecewise(p) => p.fmt(f),
        }
    }
}

impl From<SimpleFn> for HFunction {
    fn from(s: SimpleFn) -> Self {
        HFunction::Simple(s)
    }
}

impl From<PiecewiseFn> for HFunction {
    fn from(p: PiecewiseFn) -> Self {
        HFunction::Piecewise(p)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    fn iv(s: &str) -> Interval {
        s.parse().unwrap()
    }

    #[test]
    fn simple_functions_validate() {
        assert!(SimpleFn::new(vec![(hn("(0, inf)"), MeasurableSet::atoms(["x"]))]).is_err());
        assert!(SimpleFn::i_simple(vec![(hn("(0, inf)"), MeasurableSet::atoms(["x"]))]).is_ok());
        let overlap = vec![
            (hn("(1, 1)"), MeasurableSet::intervals([iv("(0, 1/2]")])),
            (hn("(1, 2)"), MeasurableSet::intervals([iv("[1/2, 1)")])),
        ];
        assert!(matches!(SimpleFn::new(overlap), Err(Error::NonDisjoint(_))));
        let f = SimpleFn::on_atoms([("x", hn("(1/2, 2)"))]).unwrap();
        assert_eq!(f.at_name("x"), hn("(1/2, 2)"));
        assert_eq!(f.at_name("y"), HNonNeg::zero());
    }

    #[test]
    fn piecewise_validation() {
        let neg = Piece::new(iv("(0, 1)"), DimExpr::affine(rat(1, 2), int(-1)), MassExpr::constant(int(1)));
        assert!(neg.is_err());
        let neg_mass = Piece::new(
            iv("(0, 1)"),
            DimExpr::Const(int(1)),
            MassExpr::Poly(crate::poly::Poly::linear(rat(-1, 2), int(1))),
        );
        assert!(neg_mass.is_err());
        let f = PiecewiseFn::new(vec![
            Piece::new(iv("(0, 1/2]"), DimExpr::Const(int(1)), MassExpr::constant(int(1))).unwrap(),
            Piece::new(iv("(1/2, 1)"), DimExpr::pow(rat(1, 2)).unwrap(), MassExpr::constant(int(1))).unwrap(),
        ])
        .unwrap();
        assert_eq!(f.at(&rat(1, 4)).unwrap().to_string(), "(1, 1)");
        assert_eq!(f.at(&rat(9, 16)).unwrap().to_string(), "(3/4, 1)");
        assert_eq!(f.at(&int(2)).unwrap(), ExactPair::zero());
        assert_eq!(f.graded_dim(), None);
    }

    #[test]
    fn scaling_keeps_zeros() {
        let x = crate::poly::Poly::linear(int(0), int(1));
        let f = PiecewiseFn::new(vec![Piece::new(iv("[0, 1)"), DimExpr::Const(int(0)), MassExpr::Poly(x)).unwrap()])
            .unwrap();
        let g = f.scale(&hn("(1, 2)")).unwrap();
        assert_eq!(g.at(&int(0)).unwrap(), ExactPair::zero());
        assert_eq!(g.at(&rat(1, 2)).unwrap().to_string(), "(1, 1)");
        assert_eq!(f.scale(&HNonNeg::zero()).unwrap().pieces().len(), 0);
    }
}
