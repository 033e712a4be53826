//! Seeded generators and brute-force law checkers.
//!
//! Every check compares exact values. A trial is a pure function of its seed,
//! so trials run in parallel and the report matches a sequential run.

mod algebra;
mod laws;
pub mod mutants;

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::hvalue::{HNonNeg, HValue};
use crate::rational::{ExtRational, Rational};
use crate::space::AtomSpace;

pub use algebra::{check_algebra_laws, check_algebra_laws_with, Algebra, ExactAlgebra, ALGEBRA_LAWS};
pub use laws::{
    bell, check_integral_laws, check_integral_laws_with, minorant_sample_check, minorant_sample_check_with,
    set_partitions, IntegralSystem, ReferenceSystem, INTEGRAL_LAWS,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Profile {
    /// `m` in `[0, +inf]`.
    Nonneg,
    /// Finite `m` of either sign.
    Signed,
    /// `m` in `[-inf, +inf]`.
    WithInfinities,
}

const DIM_POOL: [(i64, i64); 5] = [(0, 1), (1, 2), (1, 1), (3, 2), (2, 1)];

fn small_rational(rng: &mut ChaCha8Rng, signed: bool) -> Rational {
    let lo = if signed { -100 } else { 0 };
    Rational::new(rng.gen_range(lo..=100).into(), rng.gen_range(1..=100).into())
}

/// One value drawn from `rng`. Dimensions come from a small pool half of the
/// time so that equal dimensions, and hence real additions, are common.
pub fn draw_hvalue(rng: &mut ChaCha8Rng, profile: Profile) -> HValue {
    if rng.gen_ratio(1, 16) {
        return HValue::zero();
    }
    let d = if rng.gen_bool(0.5) {
        let (p, q) = DIM_POOL[rng.gen_range(0..DIM_POOL.len())];
        Rational::new(p.into(), q.into())
    } else {
        small_rational(rng, false)
    };
    let infinite = profile != Profile::Signed && rng.gen_ratio(1, 8);
    let m = match (infinite, profile) {
        (true, Profile::WithInfinities) if rng.gen_bool(0.5) => ExtRational::NegInf,
        (true, _) => ExtRational::PosInf,
        (false, p) => ExtRational::Finite(small_rational(rng, p != Profile::Nonneg)),
    };
    HValue::of(d, m).expect("nonnegative dimension")
}

pub fn draw_nonneg(rng: &mut ChaCha8Rng) -> HNonNeg {
    HNonNeg::new(draw_hvalue(rng, Profile::Nonneg)).expect("nonneg profile")
}

pub fn random_hvalue(seed: u64, profile: Profile) -> HValue {
    draw_hvalue(&mut ChaCha8Rng::seed_from_u64(seed), profile)
}

pub const ATOM_NAMES: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// `n` atoms named `a`, `b`, ... with nonnegative weights, `+inf` included.
pub fn random_atom_space(seed: u64, n: usize) -> AtomSpace {
    assert!((1..=ATOM_NAMES.len()).contains(&n), "atom spaces have 1 to 6 atoms, not {n}");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let atoms = ATOM_NAMES[..n].iter().map(|id| (id.to_string(), draw_nonneg(&mut rng))).collect();
    AtomSpace::new(atoms).expect("distinct names")
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawTally {
    pub law: String,
    pub checks: u64,
    pub violations: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub law: String,
    /// Re-running the trial with this seed reproduces the failure.
    pub seed: u64,
    pub detail: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LawReport {
    pub suite: String,
    pub trials: u64,
    /// Trials used seeds `first_seed, first_seed + 1, ...` (wrapping).
    pub first_seed: u64,
    pub laws: Vec<LawTally>,
    pub violations: Vec<Violation>,
}

impl LawReport {
    pub fn passed(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn seed_range(&self) -> String {
        match self.trials {
            0 => "none".into(),
            n => format!("{}..={}", self.first_seed, self.first_seed.wrapping_add(n - 1)),
        }
    }

    pub fn tally(&self, law: &str) -> Option<&LawTally> {
        self.laws.iter().find(|t| t.law == law)
    }
}

const SHOWN: usize = 20;

impl fmt::Display for LawReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}: {} trials, seeds {}", self.suite, self.trials, self.seed_range())?;
        for t in &self.laws {
            writeln!(f, "  {:<24} {:>8} checks  {} violations", t.law, t.checks, t.violations)?;
        }
        for v in self.violations.iter().take(SHOWN) {
            writeln!(f, "  violation [{}] seed {}: {}", v.law, v.seed, v.detail)?;
        }
        if self.violations.len() > SHOWN {
            writeln!(f, "  ... {} more", self.violations.len() - SHOWN)?;
        }
        Ok(())
    }
}

/// Outcomes of one trial.
pub(crate) struct Trial {
    seed: u64,
    outcomes: Vec<(&'static str, Option<String>)>,
}

impl Trial {
    pub(crate) fn new(seed: u64) -> Self {
        Trial { seed, outcomes: Vec::new() }
    }

    pub(crate) fn rng(&self) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed)
    }

    pub(crate) fn check(&mut self, law: &'static str, ok: bool, detail: impl FnOnce() -> String) {
        self.outcomes.push((law, (!ok).then(detail)));
    }

    /// An error counts as a violation.
    pub(crate) fn check_result(
        &mut self,
        law: &'static str,
        r: crate::error::Result<bool>,
        detail: impl FnOnce() -> String,
    ) {
        match r {
            Ok(ok) => self.check(law, ok, detail),
            Err(e) => self.outcomes.push((law, Some(format!("{}: {e}", detail())))),
        }
    }
}

pub(crate) fn run_trials(
    suite: &str,
    laws: &[&'static str],
    trials: u64,
    first_seed: u64,
    trial: impl Fn(u64) -> Trial + Sync,
) -> LawReport {
    let results: Vec<Trial> =
        (0..trials).into_par_iter().map(|t| trial(first_seed.wrapping_add(t))).collect();
    let mut tallies: Vec<LawTally> =
        laws.iter().map(|l| LawTally { law: l.to_string(), checks: 0, violations: 0 }).collect();
    let mut violations = Vec::new();
    for t in results {
        for (law, outcome) in t.outcomes {
            let i = laws.iter().position(|l| *l == law).expect("declared law");
            tallies[i].checks += 1;
            if let Some(detail) = outcome {
                tallies[i].violations += 1;
                violations.push(Violation { law: law.to_string(), seed: t.seed, detail });
            }
        }
    }
    LawReport { suite: suite.to_string(), trials, first_seed, laws: tallies, violations }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generators_are_deterministic() {
        assert_eq!(random_hvalue(9, Profile::Signed), random_hvalue(9, Profile::Signed));
        assert_eq!(random_atom_space(4, 6), random_atom_space(4, 6));
        assert_eq!(random_atom_space(4, 1).len(), 1);
    }

    #[test]
    fn profiles_are_respected() {
        let mut negative = false;
        let mut infinite = false;
        for seed in 0..1000 {
            let v = random_hvalue(seed, Profile::Nonneg);
            assert!(v.is_nonneg());
            infinite |= !v.m.is_finite();
            let s = random_hvalue(seed, Profile::Signed);
            assert!(s.m.is_finite());
            negative |= !s.m.is_nonneg();
            let w = random_hvalue(seed, Profile::WithInfinities);
            if let Some(m) = w.m.finite() {
                assert!(m.numer().magnitude() <= &100u32.into() && m.denom() <= &100.into());
            }
        }
        assert!(negative && infinite);
    }

    #[test]
    #[should_panic]
    fn oversized_spaces_are_refused() {
        random_atom_space(0, 7);
    }
}
