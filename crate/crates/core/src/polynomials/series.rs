use std::fmt::Debug;

use num::{One, Zero};

use super::bivariate::BivariatePoly;
use super::poly::RationalPoly;
use super::{binomial_rational, Rational};

/// Exact ring elements usable as power-series coefficients.
pub trait Coefficient: Clone + PartialEq + Debug {
    fn zero_coeff() -> Self;
    fn one_coeff() -> Self;
    fn is_zero_coeff(&self) -> bool;
    fn add_coeff(&self, other: &Self) -> Self;
    fn mul_coeff(&self, other: &Self) -> Self;
    fn scale_coeff(&self, c: &Rational) -> Self;

    fn from_rational(c: &Rational) -> Self {
        Self::one_coeff().scale_coeff(c)
    }
}

impl Coefficient for Rational {
    fn zero_coeff() -> Self {
        Zero::zero()
    }
    fn one_coeff() -> Self {
        One::one()
    }
    fn is_zero_coeff(&self) -> bool {
        Zero::is_zero(self)
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_coeff(&self, c: &Rational) -> Self {
        self * c
    }
}

impl Coefficient for RationalPoly {
    fn zero_coeff() -> Self {
        RationalPoly::zero(Default::default())
    }
    fn one_coeff() -> Self {
        RationalPoly::one(Default::default())
    }
    fn is_zero_coeff(&self) -> bool {
        RationalPoly::is_zero(self)
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_coeff(&self, c: &Rational) -> Self {
        RationalPoly::scale(self, c)
    }
}

impl Coefficient for BivariatePoly {
    fn zero_coeff() -> Self {
        BivariatePoly::zero()
    }
    fn one_coeff() -> Self {
        BivariatePoly::one()
    }
    fn is_zero_coeff(&self) -> bool {
        BivariatePoly::is_zero(self)
    }
    fn add_coeff(&self, other: &Self) -> Self {
        self + other
    }
    fn mul_coeff(&self, other: &Self) -> Self {
        self * other
    }
    fn scale_coeff(&self, c: &Rational) -> Self {
        BivariatePoly::scale(self, c)
    }
}

/// Power series truncated after the `order`-th coefficient. All operations are
/// exact up to that order.
#[derive(Clone, Debug, PartialEq)]
pub struct FormalSeries<C> {
    coeffs: Vec<C>,
}

impl<C: Coefficient> FormalSeries<C> {
    /// Pads with zeros or truncates so that exactly `order + 1` coefficients are kept.
    pub fn new(mut coeffs: Vec<C>, order: usize) -> Self {
        coeffs.resize(order + 1, C::zero_coeff());
        Self { coeffs }
    }

    pub fn zero(order: usize) -> Self {
        Self::new(Vec::new(), order)
    }

    pub fn one(order: usize) -> Self {
        Self::new(vec![C::one_coeff()], order)
    }

    /// The series variable `λ` itself.
    pub fn variable(order: usize) -> Self {
        Self::new(vec![C::zero_coeff(), C::one_coeff()], order)
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeff(&self, n: usize) -> &C {
        &self.coeffs[n]
    }

    pub fn coeffs(&self) -> &[C] {
        &self.coeffs
    }

    pub fn map<D: Coefficient>(&self, f: impl Fn(&C) -> D) -> FormalSeries<D> {
        FormalSeries { coeffs: self.coeffs.iter().map(f).collect() }
    }

    pub fn add(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        Self::new((0..=order).map(|i| self.coeffs[i].add_coeff(&other.coeffs[i])).collect(), order)
    }

    pub fn neg(&self) -> Self {
        self.scale(&-<Rational as One>::one())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn scale(&self, c: &Rational) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|a| a.scale_coeff(c)).collect() }
    }

    /// Multiplies every coefficient by the ring element `c`.
    pub fn times(&self, c: &C) -> Self {
        FormalSeries { coeffs: self.coeffs.iter().map(|a| a.mul_coeff(c)).collect() }
    }

    pub fn mul(&self, other: &Self) -> Self {
        let order = self.order().min(other.order());
        let mut out = vec![C::zero_coeff(); order + 1];
        for i in 0..=order {
            if self.coeffs[i].is_zero_coeff() {
                continue;
            }
            for j in 0..=order - i {
                out[i + j] = out[i + j].add_coeff(&self.coeffs[i].mul_coeff(&other.coeffs[j]));
            }
        }
        Self { coeffs: out }
    }

    /// `self(inner(λ))`; `inner` must have zero constant term.
    pub fn compose(&self, inner: &Self) -> Self {
        assert!(inner.coeffs[0].is_zero_coeff(), "inner series must vanish at the origin");
        let order = self.order().min(inner.order());
        let mut acc = Self::zero(order);
        for c in self.coeffs[..=order].iter().rev() {
            acc = acc.mul(inner);
            acc.coeffs[0] = acc.coeffs[0].add_coeff(c);
        }
        acc
    }

    /// `exp(self)` for a series with zero constant term, via
    /// `n a_n = Σ_{k=1}^{n} k s_k a_{n-k}`.
    pub fn exp(&self) -> Self {
        assert!(self.coeffs[0].is_zero_coeff(), "exp needs a zero constant term");
        let order = self.order();
        let mut a: Vec<C> = Vec::with_capacity(order + 1);
        a.push(C::one_coeff());
        for n in 1..=order {
            let mut acc = C::zero_coeff();
            for k in 1..=n {
                if self.coeffs[k].is_zero_coeff() {
                    continue;
                }
                let weight = Rational::from_integer(k.into());
                acc = acc.add_coeff(&self.coeffs[k].mul_coeff(&a[n - k]).scale_coeff(&weight));
            }
            a.push(acc.scale_coeff(&Rational::new(One::one(), n.into())));
        }
        Self { coeffs: a }
    }

    /// `(1 + self)^p` for a series with zero constant term, by composing the
    /// binomial series `Σ C(p, j) w^j` with `self`.
    pub fn binomial_power(&self, p: &Rational) -> Self {
        let order = self.order();
        let outer = Self::new((0..=order).map(|j| C::from_rational(&binomial_rational(p, j))).collect(), order);
        outer.compose(self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{factorial, integer, rational};
    use proptest::prelude::*;

    fn series(values: &[i64], order: usize) -> FormalSeries<Rational> {
        FormalSeries::new(values.iter().map(|&v| integer(v)).collect(), order)
    }

    #[test]
    fn exp_of_variable_is_exponential() {
        let e = FormalSeries::<Rational>::variable(8).exp();
        for n in 0..=8u32 {
            assert_eq!(e.coeff(n as usize), &Rational::new(1.into(), factorial(n)));
        }
    }

    #[test]
    fn square_root_series() {
        // (1 - 3λ)^{1/3} = 1 - λ - λ^2 - 5/3 λ^3 - ...
        let w = series(&[0, -3], 3);
        let r = w.binomial_power(&rational(1, 3));
        assert_eq!(r.coeffs(), &[integer(1), integer(-1), integer(-1), rational(-5, 3)]);
    }

    proptest! {
        #[test]
        fn power_then_inverse_power_is_identity(
            a in proptest::collection::vec(-5i64..5, 1..6),
            p in 1i64..5, q in 1i64..5,
        ) {
            let mut coeffs = vec![0];
            coeffs.extend(a);
            let w = series(&coeffs, 6);
            let exponent = rational(p, q);
            let forward = w.binomial_power(&exponent);
            let mut back = forward.clone();
            back.coeffs[0] = integer(0);
            let recovered = back.binomial_power(&(Rational::one() / &exponent));
            let mut expected = w.clone();
            expected.coeffs[0] = integer(1);
            prop_assert_eq!(recovered, expected);
        }

        #[test]
        fn exp_is_a_homomorphism(
            a in proptest::collection::vec(-4i64..4, 1..5),
            b in proptest::collection::vec(-4i64..4, 1..5),
        ) {
            let mut ca = vec![0]; ca.extend(a);
            let mut cb = vec![0]; cb.extend(b);
            let (x, y) = (series(&ca, 6), series(&cb, 6));
            prop_assert_eq!(x.add(&y).exp(), x.exp().mul(&y.exp()));
        }
    }
}
