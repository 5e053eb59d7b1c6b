use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{One, Signed, Zero};

use super::{format_rational, to_f64, Rational};

/// Display name of a polynomial's variable. It does not take part in equality.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Default)]
pub enum Variable {
    X,
    T,
    #[default]
    Sigma,
}

impl Variable {
    pub fn name(self) -> &'static str {
        match self {
            Variable::X => "x",
            Variable::T => "t",
            Variable::Sigma => "σ",
        }
    }
}

/// Univariate polynomial with exact rational coefficients, lowest degree first.
#[derive(Clone, Debug, Default)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
    var: Variable,
}

impl PartialEq for RationalPoly {
    fn eq(&self, other: &Self) -> bool {
        self.coeffs == other.coeffs
    }
}

impl Eq for RationalPoly {}

impl RationalPoly {
    pub fn zero(var: Variable) -> Self {
        Self { coeffs: Vec::new(), var }
    }

    pub fn one(var: Variable) -> Self {
        Self::constant(Rational::one(), var)
    }

    pub fn constant(c: Rational, var: Variable) -> Self {
        Self::from_coeffs(vec![c], var)
    }

    pub fn monomial(c: Rational, degree: usize, var: Variable) -> Self {
        let mut coeffs = vec![Rational::zero(); degree + 1];
        coeffs[degree] = c;
        Self::from_coeffs(coeffs, var)
    }

    pub fn from_coeffs(coeffs: Vec<Rational>, var: Variable) -> Self {
        let mut p = Self { coeffs, var };
        p.trim();
        p
    }

    pub fn from_integers(coeffs: &[i64], var: Variable) -> Self {
        Self::from_coeffs(coeffs.iter().map(|&c| Rational::from_integer(c.into())).collect(), var)
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn var(&self) -> Variable {
        self.var
    }

    pub fn with_var(mut self, var: Variable) -> Self {
        self.var = var;
        self
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn coeff(&self, degree: usize) -> Rational {
        self.coeffs.get(degree).cloned().unwrap_or_else(Rational::zero)
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &Rational) -> Self {
        Self::from_coeffs(self.coeffs.iter().map(|a| a * c).collect(), self.var)
    }

    pub fn derivative(&self) -> Self {
        let coeffs =
            self.coeffs.iter().enumerate().skip(1).map(|(i, c)| c * Rational::from_integer(i.into())).collect();
        Self::from_coeffs(coeffs, self.var)
    }

    pub fn eval(&self, x: &Rational) -> Rational {
        self.coeffs.iter().rev().fold(Rational::zero(), |acc, c| acc * x + c)
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs.iter().rev().fold(0.0, |acc, c| acc * x + to_f64(c))
    }

    pub fn to_f64_coeffs(&self) -> Vec<f64> {
        self.coeffs.iter().map(to_f64).collect()
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let name = self.var.name();
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            let mag = c.abs();
            let unit = mag.is_one() && i > 0;
            if !unit {
                write!(f, "{}", format_rational(&mag))?;
                if i > 0 {
                    write!(f, "*")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{name}")?,
                _ => write!(f, "{name}^{i}")?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(coeffs, self.var)
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, rhs: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect();
        RationalPoly::from_coeffs(coeffs, self.var)
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, rhs: &RationalPoly) -> RationalPoly {
        if self.is_zero() || rhs.is_zero() {
            return RationalPoly::zero(self.var);
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        RationalPoly::from_coeffs(coeffs, self.var)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly::from_coeffs(self.coeffs.iter().map(|c| -c).collect(), self.var)
    }
}
