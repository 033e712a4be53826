//! Declared `mu^H` values for named sets.
//!
//! Hausdorff dimension and measure are not computed here. Each entry is an
//! axiom `(dim_H K, mu^d(K))` supplied by the catalog or by a scenario, and
//! only rational dimensions are representable.

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::hvalue::{HNonNeg, HValue};
use crate::rational::{int, rat, ExtRational, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CatalogKind {
    FinitePoints,
    Countable,
    Segment,
    Line,
    SelfSimilar,
    Product,
    Declared,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CatalogSet {
    pub name: String,
    /// Dimension of the ambient Euclidean space: 1, 2 or 4.
    pub ambient: u8,
    pub hvalue: HNonNeg,
    pub kind: CatalogKind,
}

impl CatalogSet {
    pub fn new(name: impl Into<String>, ambient: u8, hvalue: HNonNeg, kind: CatalogKind) -> Result<Self> {
        let set = CatalogSet { name: name.into(), ambient, hvalue, kind };
        set.validate()?;
        Ok(set)
    }

    pub fn points(name: impl Into<String>, ambient: u8, count: u64) -> Result<Self> {
        let hv = HNonNeg::of(int(0), ExtRational::Finite(Rational::from_integer(count.into())))?;
        CatalogSet::new(name, ambient, hv, CatalogKind::FinitePoints)
    }

    pub fn segment(name: impl Into<String>, ambient: u8, length: Rational) -> Result<Self> {
        CatalogSet::new(name, ambient, HNonNeg::of(int(1), length)?, CatalogKind::Segment)
    }

    pub fn validate(&self) -> Result<()> {
        if !matches!(self.ambient, 1 | 2 | 4) {
            return Err(Error::InvalidValue(format!(
                "catalog set '{}': ambient dimension {} is not 1, 2 or 4",
                self.name, self.ambient
            )));
        }
        let HValue { d, m } = self.hvalue.value();
        if d.value() > &int(self.ambient as i64) {
            return Err(Error::InvalidValue(format!(
                "catalog set '{}': dimension {d} exceeds ambient dimension {}",
                self.name, self.ambient
            )));
        }
        if d.is_zero() {
            let counting = match m {
                ExtRational::PosInf => true,
                ExtRational::Finite(r) => r.is_integer(),
                ExtRational::NegInf => false,
            };
            if !counting {
                return Err(Error::InvalidValue(format!(
                    "catalog set '{}': a dimension-0 measure must be a count, got {m}",
                    self.name
                )));
            }
        }
        Ok(())
    }
}

impl fmt::Display for CatalogSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} in R^{}: {}", self.name, self.ambient, self.hvalue)
    }
}

/// A named collection of catalog sets; the h-measure of a disjoint union of
/// entries is the dominance sum of their declared values.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Catalog {
    sets: BTreeMap<String, CatalogSet>,
}

impl Catalog {
    pub fn new() -> Self {
        Catalog::default()
    }

    /// Frequently used sets with their textbook values. Self-similar entries
    /// have rational dimension by construction (`k` pieces at ratio `r` with
    /// `log k / log(1/r)` rational); their measure is a declared normalisation.
    pub fn standard() -> Self {
        let hn = |d: Rational, m: ExtRational| HNonNeg::of(d, m).expect("static entry");
        let entries = [
            ("R", 1, hn(int(1), ExtRational::PosInf), CatalogKind::Line),
            ("unit-segment", 1, hn(int(1), int(1).into()), CatalogKind::Segment),
            ("Z", 1, hn(int(0), ExtRational::PosInf), CatalogKind::Countable),
            ("Q", 1, hn(int(0), ExtRational::PosInf), CatalogKind::Countable),
            ("cantor-2-1/4", 1, hn(rat(1, 2), int(1).into()), CatalogKind::SelfSimilar),
            ("cantor-4-1/16", 1, hn(rat(1, 2), int(1).into()), CatalogKind::SelfSimilar),
            ("R2", 2, hn(int(2), ExtRational::PosInf), CatalogKind::Declared),
            ("unit-square", 2, hn(int(2), int(1).into()), CatalogKind::Declared),
            ("unit-segment-x-point", 2, hn(int(1), int(1).into()), CatalogKind::Product),
            ("R4", 4, hn(int(4), ExtRational::PosInf), CatalogKind::Declared),
        ];
        let mut c = Catalog::new();
        for (name, ambient, hvalue, kind) in entries {
            c.insert(CatalogSet { name: name.to_string(), ambient, hvalue, kind })
                .expect("static entry");
        }
        c
    }

    pub fn insert(&mut self, set: CatalogSet) -> Result<()> {
        set.validate()?;
        self.sets.insert(set.name.clone(), set);
        Ok(())
    }

    pub fn with(mut self, set: CatalogSet) -> Result<Self> {
        self.insert(set)?;
        Ok(self)
    }

    pub fn get(&self, name: &str) -> Result<&CatalogSet> {
        self.sets.get(name).ok_or_else(|| Error::UnknownSet(name.to_string()))
    }

    pub fn names(&self) -> impl Iterator<Item = &str> {
        self.sets.keys().map(String::as_str)
    }
}
