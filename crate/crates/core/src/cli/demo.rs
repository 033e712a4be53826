//! Worked counterexamples, printed step by step and checked against their
//! expected values.

use std::io::Write;

use crate::error::Result;
use crate::hvalue::{self, HNonNeg, HValue};
use crate::integral::{approx_gap_witness, integrate_value, DimExpr, HFunction, MassExpr, Piece, PiecewiseFn, SimpleFn};
use crate::intervals::Interval;
use crate::rational::{int, rat, render_rational};
use crate::space::{IntervalSpace, MeasurableSet, MeasureSpace};
use crate::hvalue::Dim;

/// Writes the transcript and returns whether every value matched.
pub type DemoFn = fn(&mut dyn Write) -> Result<bool>;

fn line(out: &mut dyn Write, text: String) {
    // a closed pipe should not turn a passing demo into a failure
    let _ = writeln!(out, "{text}");
}

fn mark(ok: bool) -> &'static str {
    if ok {
        "ok"
    } else {
        "MISMATCH"
    }
}

fn unit_interval() -> Interval {
    Interval::open(int(0), int(1)).expect("0 < 1")
}

/// `f_n(x) = (x^(1/n), x^(1/n))` on `(0, 1)` with `mu = (1, lambda)`: each
/// integral is `(2, 0)`, while the limit `(1, 1)` integrates to `(2, 1)`.
pub fn monotone_failure(out: &mut dyn Write) -> Result<bool> {
    let space = MeasureSpace::Interval(IntervalSpace::lebesgue(int(0), int(1), Dim::new(int(1))?)?);
    line(out, "K = (0, 1), mu(L) = (1, lambda(L))".into());
    let expected_n: HNonNeg = "(2, 0)".parse()?;
    let mut ok = true;
    for n in 1..=3 {
        let q = rat(1, n);
        let piece = Piece::new(unit_interval(), DimExpr::pow(q.clone())?, MassExpr::pow(int(1), q.clone())?)?;
        let f = HFunction::Piecewise(PiecewiseFn::new(vec![piece])?);
        let v = integrate_value(&space, &f)?;
        let good = v == expected_n;
        ok &= good;
        line(out, format!("f_{n}(x) = (x^{q}, x^{q}): integral = {v}  [{}]", mark(good), q = render_rational(&q)));
    }
    let limit = HFunction::Piecewise(PiecewiseFn::constant(unit_interval(), &"(1, 1)".parse()?)?);
    let v = integrate_value(&space, &limit)?;
    let good = v == "(2, 1)".parse()?;
    ok &= good;
    line(out, format!("f(x) = lim f_n(x) = (1, 1): integral = {v}  [{}]", mark(good)));
    line(out, format!("the integrals stay at {expected_n} and do not converge to {v}"));
    Ok(ok)
}

/// `(1,1)((0,5)+(0,-5)) = (0,0)` but `(1,1)(0,5) + (1,1)(0,-5) = (1,0)`.
pub fn distributivity(out: &mut dyn Write) -> Result<bool> {
    let a: HValue = "(1, 1)".parse()?;
    let b: HValue = "(0, 5)".parse()?;
    let c: HValue = "(0, -5)".parse()?;
    let sum = hvalue::add(&b, &c)?;
    let left = hvalue::mul(&a, &sum);
    line(out, format!("{b} + {c} = {sum}"));
    line(out, format!("{a} * {sum} = {left}"));
    let (ab, ac) = (hvalue::mul(&a, &b), hvalue::mul(&a, &c));
    let right = hvalue::add(&ab, &ac)?;
    line(out, format!("{a} * {b} = {ab}"));
    line(out, format!("{a} * {c} = {ac}"));
    line(out, format!("{ab} + {ac} = {right}"));
    let ok = left == "(0, 0)".parse()? && right == "(1, 0)".parse()?;
    line(out, format!("a(b + c) = {left} != {right} = ab + ac  [{}]", mark(ok && left != right)));
    Ok(ok)
}

/// A chain of staircase approximations to `f(x) = (x, x)` and a point where
/// none of them lies strictly between `(x, 0)` and `(x, 1)`.
pub fn no_approx(out: &mut dyn Write) -> Result<bool> {
    let mut chain = Vec::new();
    for n in 1..=3i64 {
        let mut pieces = Vec::new();
        for k in 0..n {
            let step = Interval::new(rat(k, n), rat(k + 1, n), false, k + 1 < n)?;
            let v = HNonNeg::of(rat(k, n), int(0))?;
            if !v.is_zero() {
                pieces.push((v, MeasurableSet::intervals([step])));
            }
        }
        let g = SimpleFn::new(pieces)?;
        line(out, format!("g_{n} = {g}"));
        chain.push(g);
    }
    let w = approx_gap_witness(&chain);
    let x = render_rational(&w.x);
    line(out, format!("witness x = {x}"));
    for (n, v) in w.values.iter().enumerate() {
        line(out, format!("g_{}({x}) = {v}, outside (({x}, 0), ({x}, 1))", n + 1));
    }
    line(out, format!("verified: {}  [{}]", w.verified, mark(w.verified)));
    Ok(w.verified)
}

pub const DEMOS: [(&str, DemoFn); 3] =
    [("monotone-failure", monotone_failure), ("no-approx", no_approx), ("distributivity", distributivity)];

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn demos_match() {
        for (name, demo) in DEMOS {
            let mut buf = Vec::new();
            assert!(demo(&mut buf).unwrap(), "{name}");
            assert!(!String::from_utf8(buf).unwrap().contains("MISMATCH"));
        }
    }

    #[test]
    fn monotone_transcript() {
        let mut buf = Vec::new();
        monotone_failure(&mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        assert_eq!(text.matches("integral = (2, 0)").count(), 3);
        assert!(text.contains("integral = (2, 1)"));
    }
}
