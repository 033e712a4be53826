//! Dense univariate polynomials with rational coefficients.

use std::fmt;

use num_traits::{One, Signed, Zero};

use crate::rational::{int, render_rational, Rational};

/// Coefficients in ascending degree order, trailing zeros trimmed.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    coeffs: Vec<Rational>,
}

impl Poly {
    pub fn new(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Poly { coeffs }
    }

    pub fn zero() -> Self {
        Poly { coeffs: Vec::new() }
    }

    pub fn constant(c: Rational) -> Self {
        Poly::new(vec![c])
    }

    /// `a + b x`
    pub fn linear(a: Rational, b: Rational) -> Self {
        Poly::new(vec![a, b])
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, with `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn constant_value(&self) -> Option<Rational> {
        match self.coeffs.len() {
            0 => Some(Rational::zero()),
            1 => Some(self.coeffs[0].clone()),
            _ => None,
        }
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn add(&self, other: &Poly) -> Poly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let zero = Rational::zero();
        Poly::new(
            (0..n)
                .map(|i| {
                    self.coeffs.get(i).unwrap_or(&zero) + other.coeffs.get(i).unwrap_or(&zero)
                })
                .collect(),
        )
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        if self.is_zero() || other.is_zero() {
            return Poly::zero();
        }
        let mut out = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Poly::new(out)
    }

    pub fn scale(&self, c: &Rational) -> Poly {
        Poly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    pub fn antiderivative(&self) -> Poly {
        let mut out = vec![Rational::zero()];
        for (i, c) in self.coeffs.iter().enumerate() {
            out.push(c / int(i as i64 + 1));
        }
        Poly::new(out)
    }

    /// Exact `int_lo^hi p(x) dx`.
    pub fn integrate(&self, lo: &Rational, hi: &Rational) -> Rational {
        let anti = self.antiderivative();
        anti.eval(hi) - anti.eval(lo)
    }

    /// `p(lo + (hi - lo) t)` as a polynomial in `t`.
    fn reparametrize(&self, lo: &Rational, hi: &Rational) -> Poly {
        let sub = Poly::linear(lo.clone(), hi - lo);
        let mut acc = Poly::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc.mul(&sub).add(&Poly::constant(c.clone()));
        }
        acc
    }

    /// Certified lower bound of `p` on `[lo, hi]`: the smallest Bernstein
    /// coefficient of `p` over that interval.
    pub fn lower_bound(&self, lo: &Rational, hi: &Rational) -> Rational {
        let q = self.reparametrize(lo, hi);
        let n = match q.degree() {
            None => return Rational::zero(),
            Some(n) => n,
        };
        let binom = |n: usize, k: usize| -> Rational {
            let mut b = Rational::one();
            for i in 0..k {
                b = b * int((n - i) as i64) / int(i as i64 + 1);
            }
            b
        };
        (0..=n)
            .map(|k| {
                (0..=k)
                    .map(|i| &q.coeffs[i] * binom(k, i) / binom(n, i))
                    .fold(Rational::zero(), |a, b| a + b)
            })
            .min()
            .expect("nonempty")
    }

    /// Whether `p >= 0` on `[lo, hi]` can be certified by Bernstein bounds on
    /// up to `2^depth` subintervals.
    pub fn certify_nonneg(&self, lo: &Rational, hi: &Rational, depth: u32) -> bool {
        if !self.lower_bound(lo, hi).is_negative() {
            return true;
        }
        if self.eval(lo).is_negative() || self.eval(hi).is_negative() || depth == 0 {
            return false;
        }
        let mid = (lo + hi) / int(2);
        self.certify_nonneg(lo, &mid, depth - 1) && self.certify_nonneg(&mid, hi, depth - 1)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(i, c)| match i {
                0 => render_rational(c),
                1 => format!("{}*x", render_rational(c)),
                _ => format!("{}*x^{i}", render_rational(c)),
            })
            .collect();
        f.write_str(&terms.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rational::rat;

    #[test]
    fn arithmetic_and_integration() {
        let p = Poly::new(vec![int(1), int(-2), int(1)]); // (x - 1)^2
        assert_eq!(p.eval(&int(3)), int(4));
        assert_eq!(p.integrate(&int(0), &int(1)), rat(1, 3));
        assert_eq!(Poly::linear(int(0), int(1)).integrate(&int(0), &int(1)), rat(1, 2));
        let q = Poly::linear(int(1), int(1)).mul(&Poly::linear(int(-1), int(1)));
        assert_eq!(q, Poly::new(vec![int(-1), int(0), int(1)]));
        assert_eq!(q.add(&Poly::constant(int(1))).degree(), Some(2));
        assert!(Poly::new(vec![int(0), int(0)]).is_zero());
    }

    #[test]
    fn bernstein_bounds() {
        let p = Poly::new(vec![int(1), int(-2), int(1)]);
        let lb = p.lower_bound(&int(0), &int(2));
        assert!(lb <= int(0));
        assert!(p.certify_nonneg(&int(0), &int(2), 8) || lb.is_negative());
        let x = Poly::linear(int(0), int(1));
        assert_eq!(x.lower_bound(&rat(1, 4), &rat(1, 2)), rat(1, 4));
        let neg = Poly::linear(rat(-1, 10), int(1));
        assert!(!neg.certify_nonneg(&int(0), &int(1), 6));
        assert!(Poly::new(vec![rat(1, 100), int(-1), int(1)]).certify_nonneg(&int(0), &int(1), 10) == false);
        assert!(Poly::new(vec![rat(1, 2), int(-1), int(1)]).certify_nonneg(&int(0), &int(1), 10));
    }
}
