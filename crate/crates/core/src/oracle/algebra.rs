//! Randomized checks of the semiring laws.

use num_traits::Zero;
use rand::Rng;

use crate::error::Result;
use crate::hvalue::{self, sum_described, HNonNeg, HValue, SeqDescriptor};
use crate::rational::{int, ExtRational, Rational};

use super::{draw_hvalue, draw_nonneg, run_trials, LawReport, Profile, Trial};

/// The operations under test.
pub trait Algebra: Sync {
    fn add(&self, a: &HValue, b: &HValue) -> Result<HValue>;
    fn mul(&self, a: &HValue, b: &HValue) -> HValue;
    fn scalar_mul(&self, c: &Rational, a: &HValue) -> HValue;
}

/// The crate's own arithmetic.
#[derive(Clone, Copy, Debug, Default)]
pub struct ExactAlgebra;

impl Algebra for ExactAlgebra {
    fn add(&self, a: &HValue, b: &HValue) -> Result<HValue> {
        hvalue::add(a, b)
    }

    fn mul(&self, a: &HValue, b: &HValue) -> HValue {
        hvalue::mul(a, b)
    }

    fn scalar_mul(&self, c: &Rational, a: &HValue) -> HValue {
        hvalue::scalar_mul(c, a)
    }
}

pub const ALGEBRA_LAWS: [&str; 10] = [
    "add-commutative",
    "mul-commutative",
    "add-associative",
    "mul-associative",
    "zero-product",
    "distributive",
    "series-distributive",
    "finite-series",
    "order-compatible",
    "embedding",
];

fn same(a: &Result<HValue>, b: &Result<HValue>) -> bool {
    match (a, b) {
        (Ok(x), Ok(y)) => x == y,
        (Err(_), Err(_)) => true,
        _ => false,
    }
}

fn show(r: &Result<HValue>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => e.to_string(),
    }
}

fn nonneg(v: HValue) -> HNonNeg {
    HNonNeg::new(v).expect("sum of nonnegative values")
}

fn algebra_trial<A: Algebra>(alg: &A, seed: u64) -> Trial {
    let mut t = Trial::new(seed);
    let mut rng = t.rng();

    let (a, b) = (draw_hvalue(&mut rng, Profile::WithInfinities), draw_hvalue(&mut rng, Profile::WithInfinities));
    let (ab, ba) = (alg.add(&a, &b), alg.add(&b, &a));
    t.check("add-commutative", same(&ab, &ba), || format!("a = {a}, b = {b}: {} vs {}", show(&ab), show(&ba)));
    let (p, q) = (alg.mul(&a, &b), alg.mul(&b, &a));
    t.check("mul-commutative", p == q, || format!("a = {a}, b = {b}: {p} vs {q}"));
    let is_zero = p.is_zero();
    t.check("zero-product", is_zero == (a.is_zero() || b.is_zero()), || format!("a = {a}, b = {b}, ab = {p}"));

    let s: Vec<HValue> = (0..3).map(|_| draw_hvalue(&mut rng, Profile::Signed)).collect();
    let (x, y, z) = (&s[0], &s[1], &s[2]);
    let left = alg.add(x, y).and_then(|xy| alg.add(&xy, z));
    let right = alg.add(y, z).and_then(|yz| alg.add(x, &yz));
    t.check("add-associative", same(&left, &right), || {
        format!("{x}, {y}, {z}: {} vs {}", show(&left), show(&right))
    });
    let (l, r) = (alg.mul(&alg.mul(x, y), z), alg.mul(x, &alg.mul(y, z)));
    t.check("mul-associative", l == r, || format!("{x}, {y}, {z}: {l} vs {r}"));

    let n: Vec<HNonNeg> = (0..3).map(|_| draw_nonneg(&mut rng)).collect();
    let (x, y, z) = (n[0].value(), n[1].value(), n[2].value());
    let left = alg.add(y, z).map(|yz| alg.mul(x, &yz));
    let right = alg.add(&alg.mul(x, y), &alg.mul(x, z));
    t.check("distributive", matches!((&left, &right), (Ok(u), Ok(v)) if u == v), || {
        format!("a = {x}, b = {y}, c = {z}: a(b+c) = {}, ab+ac = {}", show(&left), show(&right))
    });

    let (lo, hi) = if y <= z { (y, z) } else { (z, y) };
    let (l, r) = (alg.mul(lo, x), alg.mul(hi, x));
    t.check("order-compatible", l <= r, || format!("{lo} <= {hi} but {lo}{x} = {l} > {hi}{x} = {r}"));

    let len = rng.gen_range(0..5);
    let prefix: Vec<HNonNeg> = (0..len).map(|_| draw_nonneg(&mut rng)).collect();
    let tail = if rng.gen_bool(0.5) { HNonNeg::zero() } else { draw_nonneg(&mut rng) };
    let series = SeqDescriptor { prefix: prefix.clone(), tail: tail.clone() };
    let a = &n[0];
    let scaled = series.map(|v| nonneg(alg.mul(a.value(), v.value())));
    let (l, r) = (alg.mul(a.value(), sum_described(&series).value()), sum_described(&scaled).into_value());
    t.check("series-distributive", l == r, || {
        format!("a = {a}, prefix = {}, tail = {tail}: {l} vs {r}", render_list(&prefix))
    });
    let folded = prefix.iter().try_fold(HValue::zero(), |acc, v| alg.add(&acc, v.value()));
    let expected = sum_described(&SeqDescriptor::finite(prefix.clone())).into_value();
    t.check("finite-series", matches!(&folded, Ok(v) if v == &expected), || {
        format!("terms {}: added up to {}, series sum {expected}", render_list(&prefix), show(&folded))
    });

    let c = if rng.gen_ratio(1, 8) {
        Rational::zero()
    } else {
        Rational::new(rng.gen_range(-100..=100).into(), rng.gen_range(1..=100).into())
    };
    let v = draw_hvalue(&mut rng, Profile::WithInfinities);
    let l = alg.scalar_mul(&c, &v);
    let r = if c.is_zero() { HValue::zero() } else { alg.mul(&HValue::of(int(0), c.clone()).expect("d = 0"), &v) };
    t.check("embedding", l == r, || format!("c = {c}, a = {v}: c*a = {l}, (0,c)a = {r}"));
    t
}

fn render_list(v: &[HNonNeg]) -> String {
    let parts: Vec<String> = v.iter().map(|x| x.to_string()).collect();
    format!("[{}]", parts.join(", "))
}

/// The fixed instance `(1,1)((0,5)+(0,-5)) = (0,0)` and
/// `(1,1)(0,5) + (1,1)(0,-5) = (1,0)`.
fn counterexample<A: Algebra>(alg: &A) -> Option<String> {
    let v = |d: i64, m: i64| HValue::of(int(d), int(m)).expect("valid");
    let (a, b, c) = (v(1, 1), v(0, 5), v(0, -5));
    let left = alg.add(&b, &c).map(|s| alg.mul(&a, &s));
    let right = alg.add(&alg.mul(&a, &b), &alg.mul(&a, &c));
    let ok = matches!(&left, Ok(x) if x == &HValue::zero())
        && matches!(&right, Ok(x) if x == &HValue::of(int(1), ExtRational::zero()).expect("valid"));
    (!ok).then(|| format!("expected (0, 0) and (1, 0), got {} and {}", show(&left), show(&right)))
}

pub fn check_algebra_laws(trials: u64, seed: u64) -> LawReport {
    check_algebra_laws_with(&ExactAlgebra, trials, seed)
}

pub fn check_algebra_laws_with<A: Algebra>(alg: &A, trials: u64, seed: u64) -> LawReport {
    let mut laws = ALGEBRA_LAWS.to_vec();
    laws.push("counterexample");
    let mut report = run_trials("algebra laws", &laws, trials, seed, |s| algebra_trial(alg, s));
    if trials > 0 {
        let tally = report.laws.last_mut().expect("counterexample tally");
        tally.checks = 1;
        if let Some(detail) = counterexample(alg) {
            tally.violations = 1;
            report.violations.push(super::Violation { law: "counterexample".into(), seed, detail });
        }
    }
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::oracle::mutants::DominanceDroppingAdd;

    #[test]
    fn exact_algebra_passes() {
        let r = check_algebra_laws(2000, 42);
        assert!(r.passed(), "{r}");
        assert_eq!(r.tally("distributive").unwrap().checks, 2000);
        assert_eq!(r.tally("counterexample").unwrap().checks, 1);
    }

    #[test]
    fn empty_run() {
        let r = check_algebra_laws(0, 5);
        assert!(r.passed());
        assert!(r.laws.iter().all(|t| t.checks == 0));
        assert_eq!(r.seed_range(), "none");
    }

    #[test]
    fn dropping_dominance_is_caught() {
        let r = check_algebra_laws_with(&DominanceDroppingAdd, 200, 0);
        assert!(!r.passed());
        assert!(r.tally("finite-series").unwrap().violations > 0);
        let v = &r.violations[0];
        let again = check_algebra_laws_with(&DominanceDroppingAdd, 1, v.seed);
        assert!(!again.passed());
    }

    #[test]
    fn split_runs_cover_the_same_checks() {
        let whole = check_algebra_laws(300, 11);
        let first = check_algebra_laws(150, 11);
        let second = check_algebra_laws(150, 161);
        for (i, t) in whole.laws.iter().enumerate().take(ALGEBRA_LAWS.len()) {
            assert_eq!(t.checks, first.laws[i].checks + second.laws[i].checks);
        }
    }
}
