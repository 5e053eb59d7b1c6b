//! Symbolic application of `(σ^{1-k/l} d/dσ)^n` to `e^{-σ}`.
//!
//! Intermediate expressions are finite sums `Σ c_e σ^e e^{-σ}` whose exponents
//! `e` may be negative or fractional. Only the final product with
//! `(-σ^{k/l})^n e^{σ}` is required to be a genuine polynomial.

use std::collections::BTreeMap;

use num::{Integer, One, Signed, ToPrimitive, Zero};

use super::poly::{RationalPoly, Variable};
use super::{format_rational, PolyError, Rational};
use crate::stable_dist::StableIndex;

/// `coefficient · σ^exponent · e^{-σ}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExpPolyTerm {
    pub coefficient: Rational,
    pub exponent: Rational,
}

/// Sum of [`ExpPolyTerm`]s kept sorted by exponent, with like terms merged.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ExpPolySum {
    terms: BTreeMap<Rational, Rational>,
}

impl ExpPolySum {
    /// `e^{-σ}` itself.
    pub fn exp_neg() -> Self {
        let mut s = Self::default();
        s.push(Rational::one(), Rational::zero());
        s
    }

    pub fn push(&mut self, coefficient: Rational, exponent: Rational) {
        if coefficient.is_zero() {
            return;
        }
        let entry = self.terms.entry(exponent.clone()).or_insert_with(Rational::zero);
        *entry += coefficient;
        if entry.is_zero() {
            self.terms.remove(&exponent);
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = ExpPolyTerm> + '_ {
        self.terms.iter().map(|(e, c)| ExpPolyTerm { coefficient: c.clone(), exponent: e.clone() })
    }

    /// `d/dσ (c σ^e e^{-σ}) = c e σ^{e-1} e^{-σ} - c σ^e e^{-σ}`.
    pub fn derivative(&self) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            out.push(c * e, e - Rational::one());
            out.push(-c, e.clone());
        }
        out
    }

    /// Multiplies by `factor · σ^shift`.
    pub fn times_power(&self, factor: &Rational, shift: &Rational) -> Self {
        let mut out = Self::default();
        for (e, c) in &self.terms {
            out.push(c * factor, e + shift);
        }
        out
    }

    /// Interprets `e^{σ} · self` as a polynomial, failing if any exponent is
    /// negative or fractional.
    pub fn into_polynomial(self, var: Variable) -> Result<RationalPoly, PolyError> {
        let mut coeffs: Vec<Rational> = Vec::new();
        for (e, c) in self.terms {
            if !e.is_integer() || e.is_negative() {
                return Err(PolyError::FractionalExponent(format_rational(&e)));
            }
            let d = e.to_integer().to_usize().expect("small exponent");
            if coeffs.len() <= d {
                coeffs.resize(d + 1, Rational::zero());
            }
            coeffs[d] = c;
        }
        Ok(RationalPoly::from_coeffs(coeffs, var))
    }
}

/// `B^{(l,k)}_n(σ) = (-σ^{k/l})^n e^{σ} (σ^{1-k/l} d/dσ)^n e^{-σ}`, evaluated
/// symbolically.
pub fn rodrigues_lk(n: u32, idx: StableIndex) -> Result<RationalPoly, PolyError> {
    let k_over_l = Rational::one() / idx.ratio();
    let shift = Rational::one() - &k_over_l;
    let mut expr = ExpPolySum::exp_neg();
    for _ in 0..n {
        expr = expr.derivative().times_power(&Rational::one(), &shift);
    }
    let sign = if n.is_odd() { -Rational::one() } else { Rational::one() };
    let n_rat = Rational::from_integer(n.into());
    expr.times_power(&sign, &(k_over_l * n_rat)).into_polynomial(Variable::Sigma)
}
