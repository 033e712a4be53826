//! JSON space and function files. Every number is a string: `"3/4"`,
//! `"(1/2, inf)"`, `"(0, 1]"`.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::catalog::{Catalog, CatalogSet};
use crate::error::{Error, Result};
use crate::format::{rational_str, rational_vec};
use crate::hvalue::{Dim, HNonNeg};
use crate::integral::{DimExpr, HFunction, MassExpr, Piece, PiecewiseFn, SimpleFn};
use crate::intervals::Interval;
use crate::poly::Poly;
use crate::rational::Rational;
use crate::space::{AtomSpace, IntervalSpace, MeasurableSet, MeasureSpace};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum SpaceFile {
    Atoms {
        atoms: BTreeMap<String, HNonNeg>,
    },
    Interval {
        #[serde(with = "rational_str")]
        lo: Rational,
        #[serde(with = "rational_str")]
        hi: Rational,
        #[serde(with = "rational_str")]
        dim_offset: Rational,
        /// Polynomial coefficients, constant term first; `["1"]` if absent.
        #[serde(default, with = "rational_vec")]
        density: Vec<Rational>,
    },
    Catalog {
        /// Start from the standard catalog.
        #[serde(default = "yes")]
        standard: bool,
        #[serde(default)]
        sets: Vec<CatalogSet>,
    },
}

fn yes() -> bool {
    true
}

impl SpaceFile {
    pub fn build(self) -> Result<MeasureSpace> {
        match self {
            SpaceFile::Atoms { atoms } => Ok(MeasureSpace::Atoms(AtomSpace::new(atoms.into_iter().collect())?)),
            SpaceFile::Interval { lo, hi, dim_offset, density } => {
                let density = if density.is_empty() { Poly::constant(Rational::from_integer(1.into())) } else { Poly::new(density) };
                Ok(MeasureSpace::Interval(IntervalSpace::new(lo, hi, Dim::new(dim_offset)?, density)?))
            }
            SpaceFile::Catalog { standard, sets } => {
                let mut c = if standard { Catalog::standard() } else { Catalog::new() };
                for s in sets {
                    c.insert(s)?;
                }
                Ok(MeasureSpace::Catalog(c))
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum SetFile {
    Atoms(Vec<String>),
    /// Interval strings such as `"(0, 1/2]"`.
    Intervals(Vec<String>),
    Catalog(Vec<String>),
}

impl SetFile {
    pub fn build(self) -> Result<MeasurableSet> {
        Ok(match self {
            SetFile::Atoms(ids) => MeasurableSet::atoms(ids),
            SetFile::Intervals(parts) => {
                MeasurableSet::intervals(parts.iter().map(|p| p.parse()).collect::<Result<Vec<Interval>>>()?)
            }
            SetFile::Catalog(names) => MeasurableSet::catalog(names),
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SimplePieceFile {
    pub coeff: HNonNeg,
    pub set: SetFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum DimFile {
    Const {
        #[serde(with = "rational_str")]
        value: Rational,
    },
    /// `x^exp`
    Pow {
        #[serde(with = "rational_str")]
        exp: Rational,
    },
    /// `a + b x`
    Affine {
        #[serde(with = "rational_str")]
        a: Rational,
        #[serde(with = "rational_str")]
        b: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase", deny_unknown_fields)]
pub enum MassFile {
    Const {
        #[serde(with = "rational_str")]
        value: Rational,
    },
    /// Coefficients, constant term first.
    Poly {
        #[serde(with = "rational_vec")]
        coeffs: Vec<Rational>,
    },
    /// `coeff * x^exp`
    Pow {
        #[serde(with = "rational_str")]
        coeff: Rational,
        #[serde(with = "rational_str")]
        exp: Rational,
    },
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PieceFile {
    pub set: String,
    pub pi1: DimFile,
    pub pi2: MassFile,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase", deny_unknown_fields)]
pub enum FunctionFile {
    Simple(Vec<SimplePieceFile>),
    Pieces(Vec<PieceFile>),
}

impl FunctionFile {
    pub fn build(self) -> Result<HFunction> {
        match self {
            FunctionFile::Simple(pieces) => {
                let pieces = pieces
                    .into_iter()
                    .map(|p| Ok((p.coeff, p.set.build()?)))
                    .collect::<Result<Vec<_>>>()?;
                Ok(HFunction::Simple(SimpleFn::i_simple(pieces)?))
            }
            FunctionFile::Pieces(pieces) => {
                let pieces = pieces
                    .into_iter()
                    .map(|p| {
                        let pi1 = match p.pi1 {
                            DimFile::Const { value } => DimExpr::Const(value),
                            DimFile::Pow { exp } => DimExpr::pow(exp)?,
                            DimFile::Affine { a, b } => DimExpr::affine(a, b),
                        };
                        let pi2 = match p.pi2 {
                            MassFile::Const { value } => MassExpr::constant(value),
                            MassFile::Poly { coeffs } => MassExpr::Poly(Poly::new(coeffs)),
                            MassFile::Pow { coeff, exp } => MassExpr::pow(coeff, exp)?,
                        };
                        Piece::new(p.set.parse()?, pi1, pi2)
                    })
                    .collect::<Result<Vec<_>>>()?;
                Ok(HFunction::Piecewise(PiecewiseFn::new(pieces)?))
            }
        }
    }
}

/// A JSON parse failure, with its position when serde knows it (tagged
/// enums are buffered, which loses positions for type errors).
pub fn parse_json<T: serde::de::DeserializeOwned>(label: &str, text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| match e.line() {
        0 => Error::Parse(format!("{label}: {e}")),
        line => Error::Parse(format!("{label}:{line}:{}: {e}", e.column())),
    })
}

pub fn load_space(label: &str, text: &str) -> Result<MeasureSpace> {
    parse_json::<SpaceFile>(label, text)?.build()
}

pub fn load_function(label: &str, text: &str) -> Result<HFunction> {
    parse_json::<FunctionFile>(label, text)?.build()
}
