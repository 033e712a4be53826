//! The coordinate expressions a piecewise function may use, with exact
//! evaluation at rational points.

use std::cmp::Ordering;
use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};
use crate::intervals::Interval;
use crate::poly::Poly;
use crate::rational::{
    cmp_pow_with, int, pow_exact, pow_lower_bound, pow_rational, render_rational, rpow, Rational,
};

/// A real number that is either rational or `base^exp` with rational parts.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Exact {
    Rat(Rational),
    Pow(Rational, Rational),
}

impl Exact {
    pub fn pow(base: Rational, exp: Rational) -> Result<Exact> {
        Ok(match pow_exact(&base, &exp)? {
            Some(r) => Exact::Rat(r),
            None => Exact::Pow(base, exp),
        })
    }

    pub fn rational(&self) -> Option<&Rational> {
        match self {
            Exact::Rat(r) => Some(r),
            Exact::Pow(..) => None,
        }
    }

    pub fn to_rational(&self) -> Result<Rational> {
        self.rational().cloned().ok_or_else(|| {
            Error::UnsupportedExpression(format!("{self} is irrational"))
        })
    }

    /// Exact comparison.
    pub fn cmp_exact(&self, other: &Exact) -> Result<Ordering> {
        match (self, other) {
            (Exact::Rat(a), Exact::Rat(b)) => Ok(a.cmp(b)),
            (Exact::Pow(x, q), Exact::Rat(r)) => cmp_pow_with(x, q, r),
            (Exact::Rat(r), Exact::Pow(x, q)) => Ok(cmp_pow_with(x, q, r)?.reverse()),
            (Exact::Pow(x, p), Exact::Pow(y, q)) => {
                // x^(a/b) vs y^(c/e)  <=>  x^(a e) vs y^(c b)
                let parts = |r: &Rational| -> Result<(u32, u32)> {
                    let n = u32::try_from(r.numer().clone())
                        .map_err(|_| Error::UnsupportedExpression("exponent too large".into()))?;
                    let d = u32::try_from(r.denom().clone())
                        .map_err(|_| Error::UnsupportedExpression("exponent too large".into()))?;
                    Ok((n, d))
                };
                let (a, b) = parts(p)?;
                let (c, e) = parts(q)?;
                Ok(rpow(x, a * e).cmp(&rpow(y, c * b)))
            }
        }
    }

    /// A rational `r <= self`.
    pub fn lower_bound(&self) -> Result<Rational> {
        match self {
            Exact::Rat(r) => Ok(r.clone()),
            Exact::Pow(x, q) => pow_lower_bound(x, q, 40),
        }
    }
}

impl fmt::Display for Exact {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Exact::Rat(r) => f.write_str(&render_rational(r)),
            Exact::Pow(x, q) => write!(f, "{}^({})", render_rational(x), render_rational(q)),
        }
    }
}

/// How an expression varies across a piece.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Monotone {
    Constant,
    Increasing,
    Decreasing,
}

/// First-coordinate (dimension) expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum DimExpr {
    Const(Rational),
    /// `x^q` with `q > 0`.
    Pow(Rational),
    /// `a + b x`
    Affine { a: Rational, b: Rational },
}

impl DimExpr {
    pub fn pow(q: Rational) -> Result<DimExpr> {
        if !q.is_positive() {
            return Err(Error::InvalidValue(format!(
                "power exponent must be positive, got {}",
                render_rational(&q)
            )));
        }
        Ok(if q.is_one() {
            DimExpr::Affine { a: Rational::zero(), b: Rational::one() }
        } else {
            DimExpr::Pow(q)
        })
    }

    pub fn affine(a: Rational, b: Rational) -> DimExpr {
        if b.is_zero() {
            DimExpr::Const(a)
        } else {
            DimExpr::Affine { a, b }
        }
    }

    pub fn at(&self, x: &Rational) -> Result<Exact> {
        match self {
            DimExpr::Const(c) => Ok(Exact::Rat(c.clone())),
            DimExpr::Pow(q) => Exact::pow(x.clone(), q.clone()),
            DimExpr::Affine { a, b } => Ok(Exact::Rat(a + b * x)),
        }
    }

    pub fn monotone(&self) -> Monotone {
        match self {
            DimExpr::Const(_) => Monotone::Constant,
            DimExpr::Pow(_) => Monotone::Increasing,
            DimExpr::Affine { b, .. } if b.is_negative() => Monotone::Decreasing,
            DimExpr::Affine { .. } => Monotone::Increasing,
        }
    }

    pub fn constant(&self) -> Option<&Rational> {
        match self {
            DimExpr::Const(c) => Some(c),
            _ => None,
        }
    }

    /// Checks that the expression is defined and nonnegative on the piece.
    pub fn validate_on(&self, piece: &Interval) -> Result<()> {
        if matches!(self, DimExpr::Pow(_)) && piece.lo.is_negative() {
            return Err(Error::InvalidValue(format!("x^q on {piece} reaches negative x")));
        }
        for end in [&piece.lo, &piece.hi] {
            if self.at(end)?.cmp_exact(&Exact::Rat(Rational::zero()))? == Ordering::Less {
                return Err(Error::InvalidValue(format!("dimension {self} is negative on {piece}")));
            }
        }
        Ok(())
    }

    /// `(inf, sup)` over the open interior of a proper piece.
    pub fn range(&self, piece: &Interval) -> Result<(Exact, Exact)> {
        let (lo, hi) = (self.at(&piece.lo)?, self.at(&piece.hi)?);
        Ok(match self.monotone() {
            Monotone::Decreasing => (hi, lo),
            _ => (lo, hi),
        })
    }

    /// `{x in piece : self(x) < d}`.
    pub fn below(&self, piece: &Interval, d: &Rational) -> Result<Option<Interval>> {
        let target = Exact::Rat(d.clone());
        match self {
            DimExpr::Const(c) => Ok((c < d).then(|| piece.clone())),
            _ => {
                let (inf, sup) = self.range(piece)?;
                if sup.cmp_exact(&target)? == Ordering::Less {
                    return Ok(Some(piece.clone()));
                }
                if inf.cmp_exact(&target)? != Ordering::Less {
                    return Ok(None);
                }
                let x0 = self.solve(d)?;
                Ok(match self.monotone() {
                    Monotone::Decreasing => piece.above(&x0, false),
                    _ => piece.below(&x0, false),
                })
            }
        }
    }

    /// The unique `x` with `self(x) = d` for a strictly monotone expression.
    pub fn solve(&self, d: &Rational) -> Result<Rational> {
        match self {
            DimExpr::Const(_) => Err(Error::UnsupportedExpression("constant has no unique level point".into())),
            DimExpr::Pow(q) => pow_rational(d, &q.recip()),
            DimExpr::Affine { a, b } => Ok((d - a) / b),
        }
    }

    /// Adds a constant to the dimension; `x^q + c` leaves the grammar.
    pub fn shift(&self, c: &Rational) -> Result<DimExpr> {
        if c.is_zero() {
            return Ok(self.clone());
        }
        match self {
            DimExpr::Const(v) => Ok(DimExpr::Const(v + c)),
            DimExpr::Affine { a, b } => Ok(DimExpr::Affine { a: a + c, b: b.clone() }),
            DimExpr::Pow(_) => Err(Error::UnsupportedExpression(format!("{self} + {}", render_rational(c)))),
        }
    }

    /// Linear form `(a, b)` when the expression is affine or constant.
    fn as_affine(&self) -> Option<(Rational, Rational)> {
        match self {
            DimExpr::Const(c) => Some((c.clone(), Rational::zero())),
            DimExpr::Affine { a, b } => Some((a.clone(), b.clone())),
            DimExpr::Pow(_) => None,
        }
    }

    /// Points of the open interval `(lo, hi)` where `self` and `other` agree,
    /// or `None` when they agree identically.
    pub fn crossings(&self, other: &DimExpr, lo: &Rational, hi: &Rational) -> Result<Option<Vec<Rational>>> {
        if self == other {
            return Ok(None);
        }
        let inside = |x: &Rational| x > lo && x < hi;
        if let (Some((a1, b1)), Some((a2, b2))) = (self.as_affine(), other.as_affine()) {
            if b1 == b2 {
                return Ok(if a1 == a2 { None } else { Some(vec![]) });
            }
            let x = (&a2 - &a1) / (&b1 - &b2);
            return Ok(Some(if inside(&x) { vec![x] } else { vec![] }));
        }
        match (self, other) {
            (DimExpr::Pow(p), DimExpr::Pow(q)) if p != q => {
                let one = Rational::one();
                Ok(Some(if inside(&one) { vec![one] } else { vec![] }))
            }
            (DimExpr::Pow(q), DimExpr::Const(c)) | (DimExpr::Const(c), DimExpr::Pow(q)) => {
                if !c.is_positive() {
                    return Ok(Some(vec![]));
                }
                let sign = |x: &Rational| -> Result<Ordering> {
                    cmp_pow_with(x, q, c)
                };
                if sign(lo)? == sign(hi)? && sign(lo)? != Ordering::Equal {
                    return Ok(Some(vec![]));
                }
                let x = pow_rational(c, &q.recip())?;
                Ok(Some(if inside(&x) { vec![x] } else { vec![] }))
            }
            _ => {
                // x^q against a sloped line: decide by endpoint signs when the
                // curvature rules out a double crossing.
                let f_lo = self.at(lo)?.cmp_exact(&other.at(lo)?)?;
                let f_hi = self.at(hi)?.cmp_exact(&other.at(hi)?)?;
                let _ = (f_lo, f_hi);
                Err(Error::UnsupportedExpression(format!(
                    "cannot locate where {self} meets {other} on ({}, {})",
                    render_rational(lo),
                    render_rational(hi)
                )))
            }
        }
    }
}

impl fmt::Display for DimExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            DimExpr::Const(c) => f.write_str(&render_rational(c)),
            DimExpr::Pow(q) => write!(f, "x^({})", render_rational(q)),
            DimExpr::Affine { a, b } => write!(f, "{} + {}*x", render_rational(a), render_rational(b)),
        }
    }
}

/// Second-coordinate (mass) expression.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MassExpr {
    Poly(Poly),
    /// `coeff * x^exp` with `exp > 0`.
    Pow { coeff: Rational, exp: Rational },
}

impl MassExpr {
    pub fn constant(c: Rational) -> MassExpr {
        MassExpr::Poly(Poly::constant(c))
    }

    pub fn pow(coeff: Rational, exp: Rational) -> Result<MassExpr> {
        if !exp.is_positive() {
            return Err(Error::InvalidValue("power exponent must be positive".into()));
        }
        Ok(MassExpr::Pow { coeff, exp }.normalized())
    }

    /// Integer powers become polynomials.
    fn normalized(self) -> MassExpr {
        match self {
            MassExpr::Pow { coeff, exp } if exp.is_integer() => {
                let k = u32::try_from(exp.to_integer()).unwrap_or(u32::MAX);
                if k < 64 {
                    let mut c = vec![Rational::zero(); k as usize];
                    c.push(coeff);
                    MassExpr::Poly(Poly::new(c))
                } else {
                    MassExpr::Pow { coeff, exp }
                }
            }
            MassExpr::Pow { coeff, .. } if coeff.is_zero() => MassExpr::Poly(Poly::zero()),
            other => other,
        }
    }

    pub fn at(&self, x: &Rational) -> Result<Exact> {
        match self {
            MassExpr::Poly(p) => Ok(Exact::Rat(p.eval(x))),
            MassExpr::Pow { coeff, exp } => {
                if coeff.is_zero() {
                    return Ok(Exact::Rat(Rational::zero()));
                }
                match Exact::pow(x.clone(), exp.clone())? {
                    Exact::Rat(r) => Ok(Exact::Rat(r * coeff)),
                    Exact::Pow(..) if coeff.is_one() => Exact::pow(x.clone(), exp.clone()),
                    Exact::Pow(..) => Err(Error::UnsupportedExpression(format!(
                        "{} * {}^({}) is not representable exactly",
                        render_rational(coeff),
                        render_rational(x),
                        render_rational(exp)
                    ))),
                }
            }
        }
    }

    pub fn is_zero(&self) -> bool {
        match self {
            MassExpr::Poly(p) => p.is_zero(),
            MassExpr::Pow { coeff, .. } => coeff.is_zero(),
        }
    }

    pub fn validate_on(&self, piece: &Interval) -> Result<()> {
        let ok = match self {
            MassExpr::Poly(p) => p.certify_nonneg(&piece.lo, &piece.hi, 12),
            MassExpr::Pow { coeff, .. } => !coeff.is_negative() && !piece.lo.is_negative(),
        };
        if ok {
            Ok(())
        } else {
            Err(Error::InvalidValue(format!("mass {self} is not nonnegative on {piece}")))
        }
    }

    pub fn add(&self, other: &MassExpr) -> Result<MassExpr> {
        match (self, other) {
            (MassExpr::Poly(p), MassExpr::Poly(q)) => Ok(MassExpr::Poly(p.add(q))),
            (MassExpr::Pow { coeff: c1, exp: e1 }, MassExpr::Pow { coeff: c2, exp: e2 }) if e1 == e2 => {
                Ok(MassExpr::Pow { coeff: c1 + c2, exp: e1.clone() }.normalized())
            }
            (a, b) if a.is_zero() => Ok(b.clone()),
            (a, b) if b.is_zero() => Ok(a.clone()),
            _ => Err(Error::UnsupportedExpression(format!("({self}) + ({other}) leaves the grammar"))),
        }
    }

    pub fn scale(&self, c: &Rational) -> MassExpr {
        match self {
            MassExpr::Poly(p) => MassExpr::Poly(p.scale(c)),
            MassExpr::Pow { coeff, exp } => MassExpr::Pow { coeff: coeff * c, exp: exp.clone() }.normalized(),
        }
    }

    /// `int_piece self * density dx`, exactly.
    pub fn integrate(&self, density: &Poly, piece: &Interval) -> Result<Rational> {
        if piece.is_point() {
            return Ok(Rational::zero());
        }
        match self {
            MassExpr::Poly(p) => Ok(p.mul(density).integrate(&piece.lo, &piece.hi)),
            MassExpr::Pow { coeff, exp } => {
                let mut total = Rational::zero();
                for (k, dk) in density.coeffs().iter().enumerate() {
                    if dk.is_zero() {
                        continue;
                    }
                    let e = exp + int(k as i64 + 1);
                    let hi = pow_rational(&piece.hi, &e)?;
                    let lo = pow_rational(&piece.lo, &e)?;
                    total += coeff * dk * (hi - lo) / e;
                }
                Ok(total)
            }
        }
    }

    /// A certified rational lower bound on the closed piece, never below 0.
    pub fn lower_bound(&self, piece: &Interval) -> Result<Rational> {
        let lb = match self {
            MassExpr::Poly(p) => p.lower_bound(&piece.lo, &piece.hi),
            MassExpr::Pow { coeff, exp } => {
                // nondecreasing in x
                coeff * Exact::pow(piece.lo.clone(), exp.clone())?.lower_bound()?
            }
        };
        Ok(if lb.is_negative() { Rational::zero() } else { lb })
    }

    /// Whether `self >= m` everywhere on the closed piece, decided exactly for
    /// monotone expressions and by certified bounds for polynomials.
    pub fn certify_at_least(&self, m: &Rational, piece: &Interval) -> Result<bool> {
        match self {
            MassExpr::Poly(p) => Ok(p.add(&Poly::constant(-m)).certify_nonneg(&piece.lo, &piece.hi, 14)),
            MassExpr::Pow { .. } => {
                Ok(self.at(&piece.lo)?.cmp_exact(&Exact::Rat(m.clone()))? != Ordering::Less)
            }
        }
    }

    /// `{x in set : self(x) < m}` for sets on which the answer is an interval
    /// with a rational boundary.
    pub fn below(&self, set: &Interval, m: &Rational) -> Result<Option<Interval>> {
        if set.is_point() {
            let v = self.at(&set.lo)?;
            return Ok((v.cmp_exact(&Exact::Rat(m.clone()))? == Ordering::Less).then(|| set.clone()));
        }
        match self {
            MassExpr::Poly(p) => match p.degree() {
                None | Some(0) => {
                    let c = p.constant_value().expect("constant");
                    Ok((c < *m).then(|| set.clone()))
                }
                Some(1) => {
                    let (a, b) = (&p.coeffs()[0], &p.coeffs()[1]);
                    let x0 = (m - a) / b;
                    Ok(if b.is_positive() { set.below(&x0, false) } else { set.above(&x0, false) })
                }
                Some(_) => {
                    if p.lower_bound(&set.lo, &set.hi) >= *m {
                        return Ok(None);
                    }
                    if -p.scale(&int(-1)).lower_bound(&set.lo, &set.hi) < *m {
                        return Ok(Some(set.clone()));
                    }
                    Err(Error::UnsupportedExpression(format!(
                        "sublevel set of {p} below {} on {set}",
                        render_rational(m)
                    )))
                }
            },
            MassExpr::Pow { coeff, exp } => {
                if !m.is_positive() {
                    return Ok(None);
                }
                let target = Exact::Rat(m.clone());
                if self.at(&set.hi)?.cmp_exact(&target)? == Ordering::Less {
                    return Ok(Some(set.clone()));
                }
                if self.at(&set.lo)?.cmp_exact(&target)? != Ordering::Less {
                    return Ok(None);
                }
                let x0 = pow_rational(&(m / coeff), &exp.recip())?;
                Ok(set.below(&x0, false))
            }
        }
    }
}

impl fmt::Display for MassExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MassExpr::Poly(p) => write!(f, "{p}"),
            MassExpr::Pow { coeff, exp } => {
                write!(f, "{}*x^({})", render_rational(coeff), render_rational(exp))
            }
        }
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
    fn exact_comparisons() {
        let cube_root_half = Exact::pow(rat(1, 2), rat(1, 3)).unwrap();
        assert!(matches!(cube_root_half, Exact::Pow(..)));
        assert_eq!(cube_root_half.cmp_exact(&Exact::Rat(rat(4, 5))).unwrap(), Ordering::Less);
        let sqrt_half = Exact::pow(rat(1, 2), rat(1, 2)).unwrap();
        assert_eq!(sqrt_half.cmp_exact(&cube_root_half).unwrap(), Ordering::Less);
        assert_eq!(Exact::pow(rat(1, 4), rat(1, 2)).unwrap(), Exact::Rat(rat(1, 2)));
    }

    #[test]
    fn dim_sublevels() {
        let x = DimExpr::pow(int(1)).unwrap();
        assert_eq!(x.below(&iv("(0, 1)"), &rat(1, 2)).unwrap(), Some(iv("(0, 1/2)")));
        let cube = DimExpr::pow(rat(1, 3)).unwrap();
        assert_eq!(cube.below(&iv("(0, 1)"), &rat(1, 2)).unwrap(), Some(iv("(0, 1/8)")));
        assert_eq!(cube.below(&iv("(0, 1)"), &int(2)).unwrap(), Some(iv("(0, 1)")));
        assert_eq!(cube.below(&iv("(0, 1)"), &int(0)).unwrap(), None);
        // boundary (1/3)^3 is fine, (1/2)^(1/3)... the inverse needs a rational root
        assert!(DimExpr::pow(int(3)).unwrap().below(&iv("(0, 1)"), &rat(1, 2)).is_err());
        let down = DimExpr::affine(int(1), int(-1));
        assert_eq!(down.below(&iv("(0, 1)"), &rat(1, 4)).unwrap(), Some(iv("(3/4, 1)")));
    }

    #[test]
    fn crossings() {
        let x = DimExpr::affine(int(0), int(1));
        let half = DimExpr::Const(rat(1, 2));
        assert_eq!(x.crossings(&half, &int(0), &int(1)).unwrap(), Some(vec![rat(1, 2)]));
        assert_eq!(x.crossings(&x, &int(0), &int(1)).unwrap(), None);
        let sq = DimExpr::pow(int(2)).unwrap();
        assert_eq!(sq.crossings(&DimExpr::Const(rat(1, 4)), &int(0), &int(1)).unwrap(), Some(vec![rat(1, 2)]));
        assert_eq!(sq.crossings(&DimExpr::Const(int(5)), &int(0), &int(1)).unwrap(), Some(vec![]));
        assert!(DimExpr::pow(rat(1, 2)).unwrap().crossings(&x, &int(0), &int(1)).is_err());
    }

    #[test]
    fn mass_integrals() {
        let one = Poly::constant(int(1));
        let cube = MassExpr::pow(int(1), rat(1, 3)).unwrap();
        assert_eq!(cube.integrate(&one, &iv("(0, 1)")).unwrap(), rat(3, 4));
        let x = MassExpr::Poly(Poly::linear(int(0), int(1)));
        assert_eq!(x.integrate(&one, &iv("(0, 1)")).unwrap(), rat(1, 2));
        assert_eq!(x.integrate(&Poly::linear(int(0), int(2)), &iv("(0, 1)")).unwrap(), rat(2, 3));
        assert!(cube.integrate(&one, &iv("(0, 1/2)")).is_err());
        assert_eq!(MassExpr::pow(int(2), int(2)).unwrap(), MassExpr::Poly(Poly::new(vec![int(0), int(0), int(2)])));
    }

    #[test]
    fn mass_sublevels_and_sums() {
        let x = MassExpr::Poly(Poly::linear(int(0), int(1)));
        assert_eq!(x.below(&iv("{1/2}"), &int(0)).unwrap(), None);
        assert_eq!(x.below(&iv("(0, 1)"), &rat(1, 3)).unwrap(), Some(iv("(0, 1/3)")));
        let sum = x.add(&MassExpr::constant(int(1))).unwrap();
        assert_eq!(sum.at(&int(2)).unwrap(), Exact::Rat(int(3)));
        let p = MassExpr::pow(int(1), rat(1, 2)).unwrap();
        assert!(p.add(&x).is_err());
        assert_eq!(p.add(&p).unwrap(), MassExpr::pow(int(2), rat(1, 2)).unwrap());
        assert!(p.certify_at_least(&rat(1, 2), &iv("[1/4, 1]")).unwrap());
        assert!(!p.certify_at_least(&rat(1, 2), &iv("[1/5, 1]")).unwrap());
    }
}
