use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::poly::{RationalPoly, Variable};
use super::{format_rational, to_f64, Rational};

/// Polynomial in two variables, stored sparsely by `(first degree, second degree)`.
///
/// The variable names are only used for display; by default they are `x`
/// and `t`.
#[derive(Clone, Debug)]
pub struct BivariatePoly {
    terms: BTreeMap<(u32, u32), Rational>,
    names: (&'static str, &'static str),
}

impl PartialEq for BivariatePoly {
    fn eq(&self, other: &Self) -> bool {
        self.terms == other.terms
    }
}

impl Eq for BivariatePoly {}

impl Default for BivariatePoly {
    fn default() -> Self {
        Self::zero()
    }
}

impl BivariatePoly {
    pub fn zero() -> Self {
        Self { terms: BTreeMap::new(), names: ("x", "t") }
    }

    pub fn one() -> Self {
        Self::term(Rational::one(), 0, 0)
    }

    pub fn term(c: Rational, i: u32, j: u32) -> Self {
        let mut p = Self::zero();
        p.add_term(c, i, j);
        p
    }

    pub fn with_names(mut self, first: &'static str, second: &'static str) -> Self {
        self.names = (first, second);
        self
    }

    pub fn names(&self) -> (&'static str, &'static str) {
        self.names
    }

    /// Lifts a univariate polynomial into the first variable.
    pub fn from_first(p: &RationalPoly) -> Self {
        let mut out = Self::zero();
        for (i, c) in p.coeffs().iter().enumerate() {
            out.add_term(c.clone(), i as u32, 0);
        }
        out
    }

    /// Lifts a univariate polynomial into the second variable.
    pub fn from_second(p: &RationalPoly) -> Self {
        let mut out = Self::zero();
        for (j, c) in p.coeffs().iter().enumerate() {
            out.add_term(c.clone(), 0, j as u32);
        }
        out
    }

    pub fn add_term(&mut self, c: Rational, i: u32, j: u32) {
        if c.is_zero() {
            return;
        }
        let entry = self.terms.entry((i, j)).or_insert_with(Rational::zero);
        *entry += c;
        if entry.is_zero() {
            self.terms.remove(&(i, j));
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn coeff(&self, i: u32, j: u32) -> Rational {
        self.terms.get(&(i, j)).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn degree_first(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.0).max()
    }

    pub fn degree_second(&self) -> Option<u32> {
        self.terms.keys().map(|k| k.1).max()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = Self::zero().with_names(self.names.0, self.names.1);
        for (&(i, j), a) in &self.terms {
            out.add_term(a * c, i, j);
        }
        out
    }

    pub fn d_first(&self) -> Self {
        let mut out = Self::zero().with_names(self.names.0, self.names.1);
        for (&(i, j), c) in &self.terms {
            if i > 0 {
                out.add_term(c * Rational::from_integer(i.into()), i - 1, j);
            }
        }
        out
    }

    pub fn d_second(&self) -> Self {
        let mut out = Self::zero().with_names(self.names.0, self.names.1);
        for (&(i, j), c) in &self.terms {
            if j > 0 {
                out.add_term(c * Rational::from_integer(j.into()), i, j - 1);
            }
        }
        out
    }

    pub fn eval(&self, a: f64, b: f64) -> f64 {
        self.terms.iter().map(|(&(i, j), c)| to_f64(c) * a.powi(i as i32) * b.powi(j as i32)).sum()
    }

    /// Fixes the second variable, leaving a polynomial in the first.
    pub fn at_second(&self, b: &Rational) -> RationalPoly {
        let degree = self.degree_first().map_or(0, |d| d as usize + 1);
        let mut coeffs = vec![Rational::zero(); degree];
        for (&(i, j), c) in &self.terms {
            coeffs[i as usize] += c * num::pow(b.clone(), j as usize);
        }
        RationalPoly::from_coeffs(coeffs, Variable::X)
    }

    /// Replaces every power `s^j` of the second variable by `rule(j)`, a
    /// polynomial in a new second variable.
    pub fn substitute_second(&self, rule: impl Fn(u32) -> RationalPoly) -> Self {
        let mut out = Self::zero();
        for (&(i, j), c) in &self.terms {
            for (m, d) in rule(j).coeffs().iter().enumerate() {
                out.add_term(c * d, i, m as u32);
            }
        }
        out
    }
}

impl fmt::Display for BivariatePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let power = |name: &str, e: u32| match e {
            0 => String::new(),
            1 => name.to_string(),
            _ => format!("{name}^{e}"),
        };
        for (n, (&(i, j), c)) in self.terms.iter().rev().enumerate() {
            if n == 0 {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if c.is_negative() { "-" } else { "+" })?;
            }
            let mag = c.abs();
            let vars: Vec<String> =
                [power(self.names.0, i), power(self.names.1, j)].into_iter().filter(|s| !s.is_empty()).collect();
            if vars.is_empty() {
                write!(f, "{}", format_rational(&mag))?;
            } else if mag.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{}*{}", format_rational(&mag), vars.join("*"))?;
            }
        }
        Ok(())
    }
}

impl Add for &BivariatePoly {
    type Output = BivariatePoly;
    fn add(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(c.clone(), i, j);
        }
        out
    }
}

impl Sub for &BivariatePoly {
    type Output = BivariatePoly;
    fn sub(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = self.clone();
        for (&(i, j), c) in &rhs.terms {
            out.add_term(-c, i, j);
        }
        out
    }
}

impl Mul for &BivariatePoly {
    type Output = BivariatePoly;
    fn mul(self, rhs: &BivariatePoly) -> BivariatePoly {
        let mut out = BivariatePoly::zero().with_names(self.names.0, self.names.1);
        for (&(i, j), a) in &self.terms {
            for (&(k, l), b) in &rhs.terms {
                out.add_term(a * b, i + k, j + l);
            }
        }
        out
    }
}

impl Neg for &BivariatePoly {
    type Output = BivariatePoly;
    fn neg(self) -> BivariatePoly {
        self.scale(&-Rational::one())
    }
}
