//! Sampled i-simple minorants, and the witness that simple functions cannot
//! squeeze between `(x, 0)` and `(x, 1)`.

use std::collections::BTreeSet;

use num_integer::Integer;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::Result;
use crate::hvalue::{HNonNeg, HValue};
use crate::rational::{int, ExtRational, Rational};
use crate::space::{AtomSpace, MeasurableSet};

use super::evaluate::integrate_simple;
use super::function::SimpleFn;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SupGapReport {
    pub samples: usize,
    /// Integral of `f` itself.
    pub integral: HNonNeg,
    /// Largest integral among the sampled minorants.
    pub largest: HNonNeg,
    /// Whether some sample reached the integral of `f`.
    pub attained: bool,
    /// `(sample index, description)` for every minorant whose integral
    /// exceeded the integral of `f`.
    pub violations: Vec<(usize, String)>,
}

fn random_below(rng: &mut ChaCha8Rng, v: &HNonNeg) -> HNonNeg {
    let d = match rng.gen_range(0..3) {
        0 => v.d.value().clone(),
        1 => v.d.value() / int(2),
        _ => Rational::new(rng.gen_range(0..=8).into(), 4.into()),
    };
    let m = if rng.gen_ratio(1, 8) {
        ExtRational::PosInf
    } else {
        ExtRational::Finite(Rational::new(rng.gen_range(0..=100).into(), rng.gen_range(1..=100).into()))
    };
    HNonNeg::of(d, m).expect("nonnegative")
}

/// Samples i-simple `g` with `g <= f` atom by atom and checks that no sample
/// integrates above `f`. The first sample is `f` itself.
pub fn isimple_sup_gap(space: &AtomSpace, f: &SimpleFn, samples: usize, seed: u64) -> Result<SupGapReport> {
    isimple_sup_gap_with(space, f, samples, seed, |a, b| a <= b)
}

/// As [`isimple_sup_gap`] with the comparison used to accept candidates
/// supplied by the caller.
pub fn isimple_sup_gap_with(
    space: &AtomSpace,
    f: &SimpleFn,
    samples: usize,
    seed: u64,
    le: impl Fn(&HValue, &HValue) -> bool,
) -> Result<SupGapReport> {
    let integral = integrate_simple(space, f)?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut largest = HNonNeg::zero();
    let mut violations = Vec::new();
    for k in 0..samples {
        let g = if k == 0 {
            f.clone()
        } else {
            let mut pieces = Vec::new();
            for id in space.ids() {
                let fv = f.at_name(id);
                let cand = match rng.gen_range(0..4) {
                    0 => fv.clone(),
                    1 => HNonNeg::zero(),
                    _ => random_below(&mut rng, &fv),
                };
                let v = if le(cand.value(), fv.value()) { cand } else { HNonNeg::zero() };
                if !v.is_zero() {
                    pieces.push((v, MeasurableSet::atoms([id])));
                }
            }
            SimpleFn::i_simple(pieces)?
        };
        let value = integrate_simple(space, &g)?;
        if value > integral {
            violations.push((k, format!("g = {g} integrates to {value} > {integral}")));
        }
        if value > largest {
            largest = value;
        }
    }
    let attained = samples > 0 && largest == integral;
    Ok(SupGapReport { samples, integral, largest, attained, violations })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GapWitness {
    pub x: Rational,
    /// `g_n(x)` for each member of the chain.
    pub values: Vec<HNonNeg>,
    /// No member satisfies `(x, 0) < g_n(x) < (x, 1)`.
    pub verified: bool,
}

/// Rationals of `(0, 1)` in order of increasing denominator.
fn farey() -> impl Iterator<Item = Rational> {
    (2i64..).flat_map(|q| (1..q).filter(move |p| p.gcd(&q) == 1).map(move |p| Rational::new(p.into(), q.into())))
}

/// For `f(x) = (x, x)` on `(0, 1)` and a finite chain of simple functions,
/// a rational `x` that no member approximates from inside `((x,0), (x,1))`.
/// Simple functions take finitely many dimensions, so any `x` outside that
/// set works.
pub fn approx_gap_witness(chain: &[SimpleFn]) -> GapWitness {
    let mut dims: BTreeSet<Rational> = BTreeSet::from([Rational::from_integer(0.into())]);
    for g in chain {
        dims.extend(g.pieces().iter().map(|(c, _)| c.d.value().clone()));
    }
    let x = farey().find(|x| !dims.contains(x)).expect("finitely many dimensions");
    let values: Vec<HNonNeg> = chain.iter().map(|g| g.at_point(&x)).collect();
    let lower = HValue::of(x.clone(), int(0)).expect("x > 0");
    let upper = HValue::of(x.clone(), int(1)).expect("x > 0");
    let verified = values.iter().all(|v| !(&lower < v.value() && v.value() < &upper));
    GapWitness { x, values, verified }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intervals::Interval;
    use crate::rational::rat;

    fn hn(s: &str) -> HNonNeg {
        s.parse().unwrap()
    }

    fn space() -> AtomSpace {
        AtomSpace::new(vec![
            ("a".into(), hn("(0, inf)")),
            ("b".into(), hn("(1, inf)")),
            ("c".into(), hn("(1/2, 2)")),
        ])
        .unwrap()
    }

    #[test]
    fn sampled_minorants_stay_below() {
        let f = SimpleFn::on_atoms([("a", hn("(1, 2)")), ("b", hn("(0, 3)")), ("c", hn("(2, 1)"))]).unwrap();
        let r = isimple_sup_gap(&space(), &f, 1000, 3).unwrap();
        assert!(r.violations.is_empty());
        assert!(r.attained);
        assert_eq!(r.largest, r.integral);
    }

    #[test]
    fn zero_function_has_zero_sup() {
        let r = isimple_sup_gap(&space(), &SimpleFn::zero(), 100, 1).unwrap();
        assert_eq!(r.largest, HNonNeg::zero());
        assert!(r.violations.is_empty());
    }

    #[test]
    fn broken_comparison_is_caught() {
        let f = SimpleFn::on_atoms([("c", hn("(1, 1)"))]).unwrap();
        let r = isimple_sup_gap_with(&space(), &f, 200, 5, |_, _| true).unwrap();
        assert!(!r.violations.is_empty());
    }

    #[test]
    fn gap_witnesses() {
        assert_eq!(approx_gap_witness(&[]).x, rat(1, 2));
        let zero = SimpleFn::zero();
        let w = approx_gap_witness(&[zero]);
        assert!(w.verified);
        let on = |d: &str, a: &str, b: &str| {
            let set = MeasurableSet::intervals([Interval::open(a.parse().unwrap(), b.parse().unwrap()).unwrap()]);
            SimpleFn::new(vec![(hn(d), set)]).unwrap()
        };
        let chain = vec![on("(1/4, 1)", "0", "1/2"), on("(1/2, 1/2)", "1/4", "1")];
        let w = approx_gap_witness(&chain);
        assert_eq!(w.x, rat(1, 3));
        assert!(w.verified);
    }
}
