//! Deficiency measures for continuity, lineness and convexity, each reduced to
//! the integral of a simple function over a space of declared `mu^H` values.
//!
//! Cluster sets, perpendicular sections and segment differences are declared
//! by the scenario or derived from its primitives; nothing here computes them
//! from a formula for a function.

mod geometry;
mod lineness;

use std::collections::BTreeSet;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogKind, CatalogSet};
use crate::error::{Error, Result};
use crate::format::rational_str;
use crate::hvalue::HNonNeg;
use crate::integral::{integrate_simple, SimpleFn};
use crate::rational::{int, render_rational, Rational};
use crate::space::{AtomSpace, MeasurableSet};

pub use geometry::{distance, exact_norm, Line, Point2};
pub use lineness::{line_integral, defi_lineness, default_candidates, section_measure, LinenessResult, LinenessScenario, Primitive};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Jump {
    #[serde(with = "rational_str")]
    pub x: Rational,
    /// `mu^H` of the cluster set at `x` without `f(x)`.
    pub remainder: HNonNeg,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GlobalComponent {
    /// A catalog set of the real line.
    pub set: String,
    pub remainder: HNonNeg,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ClusterScenario {
    #[serde(default)]
    pub jumps: Vec<Jump>,
    #[serde(default)]
    pub global: Option<GlobalComponent>,
    /// Extra declared sets, available to `global`.
    #[serde(default)]
    pub catalog: Vec<CatalogSet>,
}

/// Membership of a rational point in a standard catalog set, where it is
/// decidable.
fn standard_contains(name: &str, x: &Rational) -> Option<bool> {
    match name {
        "R" | "Q" => Some(true),
        "Z" => Some(x.is_integer()),
        "unit-segment" => Some(!x.is_negative() && x <= &Rational::one()),
        _ => None,
    }
}

fn jump_name(x: &Rational) -> String {
    format!("{{{}}}", render_rational(x))
}

impl ClusterScenario {
    fn catalog(&self) -> Result<Catalog> {
        let standard = Catalog::standard();
        let mut catalog = standard.clone();
        for set in &self.catalog {
            catalog.insert(set.clone())?;
        }
        let mut seen = BTreeSet::new();
        for j in &self.jumps {
            if !seen.insert(j.x.clone()) {
                return Err(Error::InvalidValue(format!("jump at {} listed twice", render_rational(&j.x))));
            }
            catalog.insert(CatalogSet::points(jump_name(&j.x), 1, 1)?)?;
        }
        if let Some(g) = &self.global {
            let set = catalog.get(&g.set)?;
            if set.ambient != 1 {
                return Err(Error::InvalidValue(format!("global set '{}' is not a subset of the line", g.set)));
            }
            let is_standard = standard.get(&g.set).ok() == Some(set);
            for j in &self.jumps {
                if is_standard && standard_contains(&g.set, &j.x) == Some(true) {
                    return Err(Error::InvalidValue(format!(
                        "jump at {} lies in the global set '{}'",
                        render_rational(&j.x),
                        g.set
                    )));
                }
            }
        }
        Ok(catalog)
    }

    /// The integrand `x -> mu^H(cluster(x) - {f(x)})` as a simple function.
    pub fn integrand(&self) -> Result<SimpleFn> {
        let mut pieces: Vec<(HNonNeg, MeasurableSet)> = self
            .jumps
            .iter()
            .map(|j| (j.remainder.clone(), MeasurableSet::catalog([jump_name(&j.x)])))
            .collect();
        if let Some(g) = &self.global {
            pieces.push((g.remainder.clone(), MeasurableSet::catalog([g.set.clone()])));
        }
        SimpleFn::i_simple(pieces)
    }
}

pub fn defi_continuity(s: &ClusterScenario) -> Result<HNonNeg> {
    let catalog = s.catalog()?;
    integrate_simple(&catalog, &s.integrand()?)
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ConvexityScenario {
    #[serde(default)]
    pub points: Vec<Point2>,
    #[serde(default)]
    pub segments: Vec<[Point2; 2]>,
}

impl ConvexityScenario {
    pub fn points(points: Vec<Point2>) -> Self {
        ConvexityScenario { points, segments: Vec::new() }
    }
}

fn pair_id(a: &Point2, b: &Point2) -> String {
    format!("{a}|{b}")
}

/// A union of collinear segments and points that is itself one segment.
fn as_single_segment(points: &[Point2], segments: &[(Point2, Point2)]) -> Option<(Point2, Point2)> {
    let (a, b) = segments.first()?;
    let line = Line::new(a.clone(), b.clone()).ok()?;
    if !segments.iter().all(|(p, q)| line.contains(p) && line.contains(q)) {
        return None;
    }
    let mut spans: Vec<(Rational, Rational)> = segments
        .iter()
        .map(|(p, q)| {
            let (s, t) = (line.param(p), line.param(q));
            if s <= t {
                (s, t)
            } else {
                (t, s)
            }
        })
        .collect();
    spans.sort();
    let (lo, mut hi) = spans[0].clone();
    for (s, t) in &spans[1..] {
        if s > &hi {
            return None;
        }
        if t > &hi {
            hi = t.clone();
        }
    }
    let inside = |p: &Point2| line.contains(p) && line.param(p) >= lo && line.param(p) <= hi;
    points.iter().all(inside).then(|| (line.at(&lo), line.at(&hi)))
}

/// `int over K x K of mu^H(segment(x, y) - K)`.
pub fn defi_convexity(s: &ConvexityScenario) -> Result<HNonNeg> {
    let mut points: Vec<Point2> = s.points.clone();
    let mut segments = Vec::new();
    for [a, b] in &s.segments {
        if a == b {
            points.push(a.clone());
        } else {
            segments.push((a.clone(), b.clone()));
        }
    }
    points.sort();
    points.dedup();
    if !segments.is_empty() {
        let (a, b) = as_single_segment(&points, &segments).ok_or_else(|| {
            Error::UnsupportedScenario(
                "only finite point sets and single segments have derivable segment differences".into(),
            )
        })?;
        // K is a segment: every segment between two of its points lies in K,
        // so the integrand vanishes on the declared product K x K
        let len2 = b.sub(&a).norm2();
        let kxk = CatalogSet::new(
            "K x K",
            4,
            HNonNeg::of(int(2), len2)?,
            CatalogKind::Product,
        )?;
        let catalog = Catalog::new().with(kxk)?;
        return integrate_simple(&catalog, &SimpleFn::zero());
    }
    let mut atoms = Vec::new();
    let mut values = Vec::new();
    for x in &points {
        for y in &points {
            let id = pair_id(x, y);
            atoms.push((id.clone(), HNonNeg::of(Rational::zero(), int(1))?));
            if x != y {
                // the open segment misses the finite set except at finitely
                // many points, so its mu^H is (1, |xy|)
                values.push((id, HNonNeg::of(int(1), distance(x, y)?)?));
            }
        }
    }
    let space = AtomSpace::new(atoms)?;
    integrate_simple(&space, &SimpleFn::on_atoms(values)?)
}

/// A deficiency scenario file.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum Scenario {
    Continuity(ClusterScenario),
    Lineness(LinenessScenario),
    Convexity(ConvexityScenario),
}

impl Scenario {
    pub fn kind(&self) -> &'static str {
        match self {
            Scenario::Continuity(_) => "continuity",
            Scenario::Lineness(_) => "lineness",
            Scenario::Convexity(_) => "convexity",
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    fn pt(x: i64, y: i64) -> Point2 {
        Point2::new(int(x), int(y))
    }

    #[test]
    fn continuity_values() {
        assert_eq!(defi_continuity(&ClusterScenario::default()).unwrap(), HNonNeg::zero());
        let one = ClusterScenario {
            jumps: vec![Jump { x: rat(1, 2), remainder: hn("(0, 1)") }],
            ..Default::default()
        };
        assert_eq!(defi_continuity(&one).unwrap(), hn("(0, 1)"));
        let dirichlet = ClusterScenario {
            global: Some(GlobalComponent { set: "R".into(), remainder: hn("(0, 1)") }),
            ..Default::default()
        };
        assert_eq!(defi_continuity(&dirichlet).unwrap(), hn("(1, inf)"));
    }

    #[test]
    fn continuity_rejects_bad_scenarios() {
        let twice = ClusterScenario {
            jumps: vec![
                Jump { x: int(0), remainder: hn("(0, 1)") },
                Jump { x: int(0), remainder: hn("(0, 2)") },
            ],
            ..Default::default()
        };
        assert!(defi_continuity(&twice).is_err());
        let inside = ClusterScenario {
            jumps: vec![Jump { x: int(3), remainder: hn("(0, 1)") }],
            global: Some(GlobalComponent { set: "Z".into(), remainder: hn("(0, 1)") }),
            ..Default::default()
        };
        assert!(defi_continuity(&inside).is_err());
        let unknown = ClusterScenario {
            global: Some(GlobalComponent { set: "nowhere".into(), remainder: hn("(0, 1)") }),
            ..Default::default()
        };
        assert!(matches!(defi_continuity(&unknown), Err(Error::UnknownSet(_))));
    }

    #[test]
    fn convexity_values() {
        let two = ConvexityScenario::points(vec![pt(0, 0), pt(1, 0)]);
        assert_eq!(defi_convexity(&two).unwrap(), hn("(1, 2)"));
        let three = ConvexityScenario::points(vec![pt(0, 0), pt(1, 0), pt(2, 0)]);
        assert_eq!(defi_convexity(&three).unwrap(), hn("(1, 8)"));
        let seg = ConvexityScenario { points: vec![pt(1, 0)], segments: vec![[pt(0, 0), pt(2, 0)]] };
        assert_eq!(defi_convexity(&seg).unwrap(), HNonNeg::zero());
        let diag = ConvexityScenario::points(vec![pt(0, 0), pt(1, 1)]);
        assert!(matches!(defi_convexity(&diag), Err(Error::UnsupportedScenario(_))));
        let broken = ConvexityScenario { points: vec![pt(5, 5)], segments: vec![[pt(0, 0), pt(2, 0)]] };
        assert!(matches!(defi_convexity(&broken), Err(Error::UnsupportedScenario(_))));
        let empty = ConvexityScenario::default();
        assert_eq!(defi_convexity(&empty).unwrap(), HNonNeg::zero());
    }

    #[test]
    fn scenario_files_parse() {
        let s: Scenario = serde_json::from_str(
            r#"{"kind":"continuity","jumps":[{"x":"1/2","remainder":"(0, 1)"}],"global":null}"#,
        )
        .unwrap();
        assert_eq!(s.kind(), "continuity");
        let c: Scenario = serde_json::from_str(r#"{"kind":"convexity","points":[["0","0"],["1","0"]]}"#).unwrap();
        let Scenario::Convexity(c) = c else { panic!() };
        assert_eq!(defi_convexity(&c).unwrap(), hn("(1, 2)"));
    }
}
