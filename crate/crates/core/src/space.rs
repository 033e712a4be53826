//! h-measure spaces: finite atom spaces, open intervals carrying a scaled
//! (density-weighted) Lebesgue measure, and catalog spaces of declared
//! `mu^H` values.

use std::collections::BTreeSet;

use num_traits::{Signed, Zero};

use crate::catalog::Catalog;
use crate::error::{Error, Result};
use crate::hvalue::{sum_described, sum_nonneg, Dim, HNonNeg, HValue, SeqDescriptor};
use crate::intervals::{Interval, IntervalSet};
use crate::poly::Poly;
use crate::rational::{render_rational, ExtRational, Rational};

/// A finite disjoint union of primitives of one space kind.
///
/// An empty list of any kind is the empty set and is valid in every space.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum MeasurableSet {
    Atoms(Vec<String>),
    Intervals(Vec<Interval>),
    Catalog(Vec<String>),
}

impl MeasurableSet {
    pub fn empty() -> Self {
        MeasurableSet::Atoms(Vec::new())
    }

    pub fn atoms<S: Into<String>>(ids: impl IntoIterator<Item = S>) -> Self {
        MeasurableSet::Atoms(ids.into_iter().map(Into::into).collect())
    }

    pub fn intervals(parts: impl IntoIterator<Item = Interval>) -> Self {
        MeasurableSet::Intervals(parts.into_iter().collect())
    }

    pub fn catalog<S: Into<String>>(names: impl IntoIterator<Item = S>) -> Self {
        MeasurableSet::Catalog(names.into_iter().map(Into::into).collect())
    }

    pub fn is_empty(&self) -> bool {
        match self {
            MeasurableSet::Atoms(v) | MeasurableSet::Catalog(v) => v.is_empty(),
            MeasurableSet::Intervals(v) => v.is_empty(),
        }
    }

    /// Structural disjointness of the listed primitives.
    pub fn check_disjoint(&self) -> Result<()> {
        match self {
            MeasurableSet::Atoms(ids) | MeasurableSet::Catalog(ids) => {
                let mut seen = BTreeSet::new();
                for id in ids {
                    if !seen.insert(id) {
                        return Err(Error::NonDisjoint(format!("'{id}' listed twice")));
                    }
                }
                Ok(())
            }
            MeasurableSet::Intervals(parts) => {
                for (i, a) in parts.iter().enumerate() {
                    for b in &parts[i + 1..] {
                        if a.overlaps(b) {
                            return Err(Error::NonDisjoint(format!("{a} meets {b}")));
                        }
                    }
                }
                Ok(())
            }
        }
    }

    /// Concatenation of the primitives of several sets (disjointness is not
    /// checked here).
    pub fn concat(sets: &[MeasurableSet]) -> Result<MeasurableSet> {
        let mut out: Option<MeasurableSet> = None;
        for s in sets.iter().filter(|s| !s.is_empty()) {
            out = Some(match (out, s) {
                (None, s) => s.clone(),
                (Some(MeasurableSet::Atoms(mut a)), MeasurableSet::Atoms(b)) => {
                    a.extend(b.iter().cloned());
                    MeasurableSet::Atoms(a)
                }
                (Some(MeasurableSet::Catalog(mut a)), MeasurableSet::Catalog(b)) => {
                    a.extend(b.iter().cloned());
                    MeasurableSet::Catalog(a)
                }
                (Some(MeasurableSet::Intervals(mut a)), MeasurableSet::Intervals(b)) => {
                    a.extend(b.iter().cloned());
                    MeasurableSet::Intervals(a)
                }
                _ => return Err(Error::InvalidValue("union of sets from different kinds of space".into())),
            });
        }
        Ok(out.unwrap_or_else(MeasurableSet::empty))
    }
}

/// Anything that assigns an h-measure value to measurable sets.
pub trait HMeasure {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg>;
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AtomSpace {
    atoms: Vec<(String, HNonNeg)>,
}

impl AtomSpace {
    pub fn new(atoms: Vec<(String, HNonNeg)>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for (id, _) in &atoms {
            if !seen.insert(id) {
                return Err(Error::InvalidValue(format!("duplicate atom '{id}'")));
            }
        }
        Ok(AtomSpace { atoms })
    }

    pub fn atoms(&self) -> &[(String, HNonNeg)] {
        &self.atoms
    }

    pub fn ids(&self) -> impl Iterator<Item = &str> {
        self.atoms.iter().map(|(id, _)| id.as_str())
    }

    pub fn len(&self) -> usize {
        self.atoms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.atoms.is_empty()
    }

    pub fn weight(&self, id: &str) -> Result<&HNonNeg> {
        self.atoms
            .iter()
            .find(|(a, _)| a == id)
            .map(|(_, w)| w)
            .ok_or_else(|| Error::UnknownSet(format!("atom '{id}'")))
    }

    pub fn index_of(&self, id: &str) -> Result<usize> {
        self.atoms
            .iter()
            .position(|(a, _)| a == id)
            .ok_or_else(|| Error::UnknownSet(format!("atom '{id}'")))
    }

    pub fn whole(&self) -> MeasurableSet {
        MeasurableSet::atoms(self.ids())
    }
}

/// The open interval `(lo, hi)` with `mu(L) = (dim_offset, nu(L))` for
/// `nu(L) > 0` and `(0,0)` for `nu`-null `L`, where `nu` has a polynomial
/// density with respect to Lebesgue measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntervalSpace {
    lo: Rational,
    hi: Rational,
    dim_offset: Dim,
    density: Poly,
}

impl IntervalSpace {
    pub fn new(lo: Rational, hi: Rational, dim_offset: Dim, density: Poly) -> Result<Self> {
        if lo >= hi {
            return Err(Error::InvalidValue(format!(
                "interval space needs lo < hi, got ({}, {})",
                render_rational(&lo),
                render_rational(&hi)
            )));
        }
        if !density.certify_nonneg(&lo, &hi, 12) {
            return Err(Error::InvalidValue(format!(
                "density {density} is not certifiably nonnegative on the space"
            )));
        }
        Ok(IntervalSpace { lo, hi, dim_offset, density })
    }

    pub fn lebesgue(lo: Rational, hi: Rational, dim_offset: Dim) -> Result<Self> {
        IntervalSpace::new(lo, hi, dim_offset, Poly::constant(Rational::from_integer(1.into())))
    }

    pub fn lo(&self) -> &Rational {
        &self.lo
    }

    pub fn hi(&self) -> &Rational {
        &self.hi
    }

    pub fn dim_offset(&self) -> &Dim {
        &self.dim_offset
    }

    pub fn density(&self) -> &Poly {
        &self.density
    }

    pub fn bounds(&self) -> Interval {
        Interval::open(self.lo.clone(), self.hi.clone()).expect("lo < hi")
    }

    /// Validates that the primitives are disjoint and inside the space.
    pub fn interval_set(&self, parts: &[Interval]) -> Result<IntervalSet> {
        for p in parts {
            if !p.inside_open(&self.lo, &self.hi) {
                return Err(Error::UnknownSet(format!("{p} is not inside {}", self.bounds())));
            }
        }
        MeasurableSet::Intervals(parts.to_vec()).check_disjoint()?;
        Ok(IntervalSet::from_parts(parts.iter().cloned()))
    }

    /// `nu(L)` for a set already known to lie in the space.
    pub fn nu(&self, set: &IntervalSet) -> Rational {
        set.parts()
            .iter()
            .filter(|p| !p.is_point())
            .map(|p| self.density.integrate(&p.lo, &p.hi))
            .fold(Rational::zero(), |a, b| a + b)
    }

    /// `nu`-integral of a polynomial over one interval.
    pub fn nu_integral(&self, p: &Poly, part: &Interval) -> Rational {
        if part.is_point() {
            return Rational::zero();
        }
        p.mul(&self.density).integrate(&part.lo, &part.hi)
    }

    pub fn lift(&self, nu: Rational) -> HNonNeg {
        if nu.is_positive() {
            HNonNeg::new(HValue::new(self.dim_offset.clone(), nu.into())).expect("positive")
        } else {
            HNonNeg::zero()
        }
    }

    pub fn whole(&self) -> MeasurableSet {
        MeasurableSet::Intervals(vec![self.bounds()])
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MeasureSpace {
    Atoms(AtomSpace),
    Interval(IntervalSpace),
    Catalog(Catalog),
}

impl MeasureSpace {
    pub fn kind(&self) -> &'static str {
        match self {
            MeasureSpace::Atoms(_) => "atoms",
            MeasureSpace::Interval(_) => "interval",
            MeasureSpace::Catalog(_) => "catalog",
        }
    }

    pub fn whole(&self) -> MeasurableSet {
        match self {
            MeasureSpace::Atoms(a) => a.whole(),
            MeasureSpace::Interval(i) => i.whole(),
            MeasureSpace::Catalog(c) => MeasurableSet::catalog(c.names()),
        }
    }
}

impl HMeasure for AtomSpace {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg> {
        if s.is_empty() {
            return Ok(HNonNeg::zero());
        }
        let MeasurableSet::Atoms(ids) = s else {
            return Err(Error::UnknownSet(format!("{s:?} is not a set of atoms")));
        };
        s.check_disjoint()?;
        let weights = ids.iter().map(|id| self.weight(id)).collect::<Result<Vec<_>>>()?;
        Ok(sum_nonneg(weights))
    }
}

impl HMeasure for IntervalSpace {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg> {
        if s.is_empty() {
            return Ok(HNonNeg::zero());
        }
        let MeasurableSet::Intervals(parts) = s else {
            return Err(Error::UnknownSet(format!("{s:?} is not a union of intervals")));
        };
        let set = self.interval_set(parts)?;
        Ok(self.lift(self.nu(&set)))
    }
}

impl HMeasure for Catalog {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg> {
        if s.is_empty() {
            return Ok(HNonNeg::zero());
        }
        let MeasurableSet::Catalog(names) = s else {
            return Err(Error::UnknownSet(format!("{s:?} is not a catalog expression")));
        };
        mu_h(self, names)
    }
}

impl HMeasure for MeasureSpace {
    fn measure(&self, s: &MeasurableSet) -> Result<HNonNeg> {
        match self {
            MeasureSpace::Atoms(a) => a.measure(s),
            MeasureSpace::Interval(i) => i.measure(s),
            MeasureSpace::Catalog(c) => c.measure(s),
        }
    }
}

/// An ordinary (real-valued) measure to be embedded as an h-measure.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum OrdinaryMeasure {
    /// `nu(L) = int_L density` on the open interval `(lo, hi)`.
    Lebesgue { lo: Rational, hi: Rational, density: Poly },
    /// Point masses `nu({x}) >= 0`, `+inf` allowed.
    PointMasses(Vec<(String, ExtRational)>),
}

/// `mu(L) = (d0, nu(L))` when `nu(L) > 0` and `(0,0)` when `nu(L) = 0`.
/// `d0 = 0` gives the associated h-measure `(0, nu)`.
pub fn scaled_embedding(d0: Dim, nu: OrdinaryMeasure) -> Result<MeasureSpace> {
    match nu {
        OrdinaryMeasure::Lebesgue { lo, hi, density } => {
            Ok(MeasureSpace::Interval(IntervalSpace::new(lo, hi, d0, density)?))
        }
        OrdinaryMeasure::PointMasses(masses) => {
            let atoms = masses
                .into_iter()
                .map(|(id, mass)| {
                    if !mass.is_nonneg() {
                        return Err(Error::InvalidValue(format!("negative mass {mass} at '{id}'")));
                    }
                    let w = if mass.is_zero() {
                        HNonNeg::zero()
                    } else {
                        HNonNeg::new(HValue::new(d0.clone(), mass))?
                    };
                    Ok((id, w))
                })
                .collect::<Result<Vec<_>>>()?;
            Ok(MeasureSpace::Atoms(AtomSpace::new(atoms)?))
        }
    }
}

/// `mu^H` of a disjoint union of catalog sets.
pub fn mu_h<S: AsRef<str>>(catalog: &Catalog, names: &[S]) -> Result<HNonNeg> {
    MeasurableSet::catalog(names.iter().map(|s| s.as_ref())).check_disjoint()?;
    let values = names
        .iter()
        .map(|n| catalog.get(n.as_ref()).map(|s| &s.hvalue))
        .collect::<Result<Vec<_>>>()?;
    Ok(sum_nonneg(values))
}

/// Checks `mu(A_1 u ... u A_n) = mu(A_1) + ... + mu(A_n)` for a disjoint family.
pub fn validate_h_measure(m: &impl HMeasure, partition: &[MeasurableSet]) -> Result<bool> {
    let union = MeasurableSet::concat(partition)?;
    union.check_disjoint()?;
    let parts = partition.iter().map(|s| m.measure(s)).collect::<Result<Vec<_>>>()?;
    Ok(m.measure(&union)? == sum_nonneg(&parts))
}

/// Countable version: `union` is split into the listed `prefix` sets and
/// infinitely many further pieces, each of measure `tail`.
pub fn validate_described_partition(
    m: &impl HMeasure,
    union: &MeasurableSet,
    prefix: &[MeasurableSet],
    tail: &HNonNeg,
) -> Result<bool> {
    MeasurableSet::concat(prefix)?.check_disjoint()?;
    let described = SeqDescriptor {
        prefix: prefix.iter().map(|s| m.measure(s)).collect::<Result<Vec<_>>>()?,
        tail: tail.clone(),
    };
    Ok(m.measure(union)? == sum_described(&described))
}
