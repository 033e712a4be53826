//! Deliberately broken implementations. Each one must make its law suite
//! report a violation.

use crate::error::{Error, Result};
use crate::hvalue::{HNonNeg, HValue};
use crate::integral::{integrate_value, HFunction, SimpleFn};
use crate::rational::{ExtRational, Rational};
use crate::space::{HMeasure, MeasurableSet, MeasureSpace};

use super::algebra::{Algebra, ExactAlgebra};
use super::laws::IntegralSystem;

/// Adds second coordinates regardless of dimension: `(max d, m1 + m2)`.
#[derive(Clone, Copy, Debug, Default)]
pub struct DominanceDroppingAdd;

impl Algebra for DominanceDroppingAdd {
    fn add(&self, a: &HValue, b: &HValue) -> Result<HValue> {
        let m = a.m.checked_add(&b.m).ok_or_else(|| Error::UndefinedSum { lhs: a.to_string(), rhs: b.to_string() })?;
        Ok(HValue::new(a.d.clone().max(b.d.clone()), m))
    }

    fn mul(&self, a: &HValue, b: &HValue) -> HValue {
        ExactAlgebra.mul(a, b)
    }

    fn scalar_mul(&self, c: &Rational, a: &HValue) -> HValue {
        ExactAlgebra.scalar_mul(c, a)
    }
}

/// Adds one to the mass of every set with two or more atoms.
#[derive(Clone, Copy, Debug, Default)]
pub struct InflatedMeasure;

impl IntegralSystem for InflatedMeasure {
    fn measure(&self, space: &MeasureSpace, s: &MeasurableSet) -> Result<HNonNeg> {
        let v = space.measure(s)?;
        match s {
            MeasurableSet::Atoms(ids) if ids.len() >= 2 => {
                let m = v.m.checked_add(&ExtRational::from_int(1)).expect("nonnegative");
                HNonNeg::new(HValue::new(v.d.clone(), m))
            }
            _ => Ok(v),
        }
    }
}

/// Forgets the last atom of the space when integrating.
#[derive(Clone, Copy, Debug, Default)]
pub struct AtomDroppingIntegrate;

impl IntegralSystem for AtomDroppingIntegrate {
    fn integrate(&self, space: &MeasureSpace, f: &SimpleFn) -> Result<HNonNeg> {
        let MeasureSpace::Atoms(a) = space else {
            return integrate_value(space, &HFunction::Simple(f.clone()));
        };
        let kept: Vec<&str> = a.ids().take(a.len().saturating_sub(1)).collect();
        integrate_value(space, &HFunction::Simple(f.restrict(&MeasurableSet::atoms(kept))?))
    }
}
