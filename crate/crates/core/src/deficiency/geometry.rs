//! Points and lines of the rational plane.

use std::fmt;

use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::rational::{parse_rational, pow_exact, render_rational, Rational};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point2 {
    pub x: Rational,
    pub y: Rational,
}

impl Point2 {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point2 { x, y }
    }

    pub fn sub(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x - &o.x, &self.y - &o.y)
    }

    pub fn add(&self, o: &Point2) -> Point2 {
        Point2::new(&self.x + &o.x, &self.y + &o.y)
    }

    pub fn scale(&self, c: &Rational) -> Point2 {
        Point2::new(&self.x * c, &self.y * c)
    }

    pub fn dot(&self, o: &Point2) -> Rational {
        &self.x * &o.x + &self.y * &o.y
    }

    pub fn cross(&self, o: &Point2) -> Rational {
        &self.x * &o.y - &self.y * &o.x
    }

    pub fn norm2(&self) -> Rational {
        self.dot(self)
    }

    /// Rotation by a quarter turn.
    pub fn perp(&self) -> Point2 {
        Point2::new(-&self.y, self.x.clone())
    }

    pub fn is_zero(&self) -> bool {
        self.x.is_zero() && self.y.is_zero()
    }
}

/// `|v|` when it is rational.
pub fn exact_norm(v: &Point2) -> Result<Option<Rational>> {
    pow_exact(&v.norm2(), &Rational::new(1.into(), 2.into()))
}

pub fn distance(a: &Point2, b: &Point2) -> Result<Rational> {
    exact_norm(&b.sub(a))?.ok_or_else(|| {
        Error::UnsupportedScenario(format!("the distance from {a} to {b} is irrational"))
    })
}

impl fmt::Display for Point2 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", render_rational(&self.x), render_rational(&self.y))
    }
}

impl Serialize for Point2 {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [render_rational(&self.x), render_rational(&self.y)].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Point2 {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [x, y] = <[String; 2]>::deserialize(d)?;
        let p = |t: &str| parse_rational(t).map_err(serde::de::Error::custom);
        Ok(Point2::new(p(&x)?, p(&y)?))
    }
}

/// The line through two distinct points, parametrized as `p + t (q - p)`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Line {
    pub p: Point2,
    pub q: Point2,
}

impl Line {
    pub fn new(p: Point2, q: Point2) -> Result<Self> {
        if p == q {
            return Err(Error::InvalidValue(format!("a line needs two distinct points, got {p} twice")));
        }
        Ok(Line { p, q })
    }

    pub fn dir(&self) -> Point2 {
        self.q.sub(&self.p)
    }

    pub fn at(&self, t: &Rational) -> Point2 {
        self.p.add(&self.dir().scale(t))
    }

    /// Parameter of the orthogonal projection of `x`.
    pub fn param(&self, x: &Point2) -> Rational {
        let d = self.dir();
        x.sub(&self.p).dot(&d) / d.norm2()
    }

    pub fn contains(&self, x: &Point2) -> bool {
        x.sub(&self.p).cross(&self.dir()).is_zero()
    }

    pub fn parallel(&self, dir: &Point2) -> bool {
        self.dir().cross(dir).is_zero()
    }

    /// Same set of points.
    pub fn same_as(&self, o: &Line) -> bool {
        self.contains(&o.p) && self.contains(&o.q)
    }

    /// A canonical key: the direction scaled to a primitive form and the
    /// projection-free offset, so equal lines compare equal.
    pub fn key(&self) -> (Point2, Rational) {
        let d = self.dir();
        let unit = if !d.x.is_zero() { d.scale(&d.x.recip()) } else { d.scale(&d.y.recip()) };
        (unit.clone(), self.p.cross(&unit))
    }
}

impl fmt::Display for Line {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line through {} and {}", self.p, self.q)
    }
}

impl Serialize for Line {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        [&self.p, &self.q].serialize(s)
    }
}

impl<'de> Deserialize<'de> for Line {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let [p, q] = <[Point2; 2]>::deserialize(d)?;
        Line::new(p, q).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::{int, rat};

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::new(int(x), int(y))
    }

    #[test]
    fn lines_and_distances() {
        let e = Line::new(pt(0, 0), pt(2, 0)).unwrap();
        assert_eq!(e.param(&pt(1, 5)), rat(1, 2));
        assert!(e.contains(&pt(-7, 0)));
        assert!(e.same_as(&Line::new(pt(5, 0), pt(-1, 0)).unwrap()));
        assert_eq!(e.key(), Line::new(pt(5, 0), pt(-1, 0)).unwrap().key());
        assert_eq!(distance(&pt(0, 0), &pt(3, 4)).unwrap(), int(5));
        assert!(distance(&pt(0, 0), &pt(1, 1)).is_err());
        assert!(Line::new(pt(1, 1), pt(1, 1)).is_err());
        let p: Point2 = serde_json::from_str(r#"["1/2","-3"]"#).unwrap();
        assert_eq!(p, Point2::new(rat(1, 2), int(-3)));
    }
}
