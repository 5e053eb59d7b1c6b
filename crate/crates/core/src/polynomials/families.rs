//! The polynomial families themselves, each built from its defining formula.

use num::{One, Zero};

use super::bivariate::BivariatePoly;
use super::poly::{RationalPoly, Variable};
use super::series::FormalSeries;
use super::{binomial, factorial, integer, Rational};
use crate::stable_dist::StableIndex;

fn big(n: num::BigInt) -> Rational {
    Rational::from_integer(n)
}

/// Bessel polynomial in Carlitz form from the explicit sum
/// `B_n(t) = Σ_{k=1}^{n} (2n-k-1)! / ((k-1)! (n-k)!) · t^k / 2^{n-k}`, `B_0 = 1`.
pub fn bessel_carlitz(n: u32) -> RationalPoly {
    if n == 0 {
        return RationalPoly::one(Variable::T);
    }
    let mut coeffs = vec![Rational::zero(); n as usize + 1];
    for k in 1..=n {
        let num = factorial(2 * n - k - 1);
        let den = factorial(k - 1) * factorial(n - k) * num::pow(num::BigInt::from(2), (n - k) as usize);
        coeffs[k as usize] = Rational::new(num, den);
    }
    RationalPoly::from_coeffs(coeffs, Variable::T)
}

/// Two-variable Hermite (Kampé de Fériet) polynomial
/// `H_n(x, y) = n! Σ_r x^{n-2r} y^r / ((n-2r)! r!)`.
pub fn hkdf(n: u32) -> BivariatePoly {
    let mut p = BivariatePoly::zero().with_names("x", "y");
    for r in 0..=n / 2 {
        let c = Rational::new(factorial(n), factorial(n - 2 * r) * factorial(r));
        p.add_term(c, n - 2 * r, r);
    }
    p
}

/// Relativistic Newton polynomial `Σ_s C(n,s) x^{n-s} B_s(t) / 2^s`.
pub fn rnp(n: u32) -> BivariatePoly {
    let mut out = BivariatePoly::zero();
    for s in 0..=n {
        let weight = big(binomial(n, s)) / big(num::pow(num::BigInt::from(2), s as usize));
        for (j, c) in bessel_carlitz(s).coeffs().iter().enumerate() {
            out.add_term(c * &weight, n - s, j as u32);
        }
    }
    out
}

/// Relativistic heat polynomial `n! Σ_r x^{n-2r} B_r(t) / ((n-2r)! r! 2^r)`.
pub fn rhp(n: u32) -> BivariatePoly {
    let mut out = BivariatePoly::zero();
    for r in 0..=n / 2 {
        let weight = Rational::new(
            factorial(n),
            factorial(n - 2 * r) * factorial(r) * num::pow(num::BigInt::from(2), r as usize),
        );
        for (j, c) in bessel_carlitz(r).coeffs().iter().enumerate() {
            out.add_term(c * &weight, n - 2 * r, j as u32);
        }
    }
    out
}

/// A polynomial family with a known exponential generating function.
#[derive(Clone, Debug, PartialEq)]
pub enum Family {
    /// `B_n(σ)`, EGF `exp[σ(1 - √(1 - 2λ))]`.
    Bessel,
    /// Relativistic Newton polynomials in `(x, t)`, EGF `e^{λx} exp[t(1 - √(1 - λ))]`.
    Rnp,
    /// `B̃_n(α, β; σ)`, EGF `exp{σ[1 - √(1 - αλ² - βλ)]}`.
    GenAb { alpha: Rational, beta: Rational },
    /// `B^{(l,k)}_n(σ)`, EGF `exp{σ[1 - (1 - (k/l)λ)^{l/k}]}`.
    GenLk(StableIndex),
}

/// `1 - (1 + w)^p` as an exact series.
fn one_minus_power(w: &FormalSeries<Rational>, p: &Rational) -> FormalSeries<Rational> {
    FormalSeries::<Rational>::one(w.order()).sub(&w.binomial_power(p))
}

/// Inner series `h(λ)` with `EGF = exp(σ h(λ))` for the univariate families.
fn exponent_series(family: &Family, order: usize) -> FormalSeries<Rational> {
    let half = Rational::new(1.into(), 2.into());
    match family {
        Family::Bessel => one_minus_power(&FormalSeries::new(vec![integer(0), integer(-2)], order), &half),
        Family::Rnp => one_minus_power(&FormalSeries::new(vec![integer(0), integer(-1)], order), &half),
        Family::GenAb { alpha, beta } => {
            one_minus_power(&FormalSeries::new(vec![integer(0), -beta.clone(), -alpha.clone()], order), &half)
        }
        Family::GenLk(idx) => {
            let ratio = idx.ratio();
            let w = FormalSeries::new(vec![integer(0), -(Rational::one() / &ratio)], order);
            one_minus_power(&w, &ratio)
        }
    }
}

/// `exp(σ h(λ))` with polynomial-in-σ coefficients.
fn sigma_exponential(h: &FormalSeries<Rational>, var: Variable) -> FormalSeries<RationalPoly> {
    let sigma = RationalPoly::monomial(Rational::one(), 1, var);
    h.map(|c| sigma.scale(c)).exp()
}

fn polys_from_egf(egf: &FormalSeries<RationalPoly>, var: Variable) -> Vec<RationalPoly> {
    egf.coeffs().iter().enumerate().map(|(n, c)| c.scale(&big(factorial(n as u32))).with_var(var)).collect()
}

/// Truncated exponential generating function of a family, as a series whose
/// coefficients are polynomials in `(x, σ)`. For the univariate families the
/// `x`-degree is always zero.
pub fn egf_series(family: &Family, order: usize) -> FormalSeries<BivariatePoly> {
    let h = exponent_series(family, order);
    let sigma = BivariatePoly::term(Rational::one(), 0, 1);
    let egf = h.map(|c| sigma.scale(c)).exp();
    match family {
        Family::Rnp => {
            let shift = FormalSeries::new(
                (0..=order as u32).map(|n| BivariatePoly::term(Rational::new(1.into(), factorial(n)), n, 0)).collect(),
                order,
            );
            shift.mul(&egf)
        }
        _ => egf.map(|c| c.clone().with_names("x", "σ")),
    }
}

/// `n!` times the `λ^n` coefficient of [`egf_series`].
pub fn family_polynomial(family: &Family, n: u32) -> BivariatePoly {
    let egf = egf_series(family, n as usize);
    egf.coeff(n as usize).scale(&big(factorial(n)))
}

/// Generalised Bessel polynomials `B̃_0 ..= B̃_{n_max}` from their generating function.
pub fn gen_bessel_ab_all(n_max: u32, alpha: &Rational, beta: &Rational) -> Vec<RationalPoly> {
    let family = Family::GenAb { alpha: alpha.clone(), beta: beta.clone() };
    let egf = sigma_exponential(&exponent_series(&family, n_max as usize), Variable::Sigma);
    polys_from_egf(&egf, Variable::Sigma)
}

pub fn gen_bessel_ab(n: u32, alpha: &Rational, beta: &Rational) -> RationalPoly {
    gen_bessel_ab_all(n, alpha, beta).pop().expect("n + 1 coefficients")
}

/// `B^{(l,k)}_0 ..= B^{(l,k)}_{n_max}` from their generating function.
pub fn gen_bessel_lk_all(n_max: u32, idx: StableIndex) -> Vec<RationalPoly> {
    let egf = sigma_exponential(&exponent_series(&Family::GenLk(idx), n_max as usize), Variable::Sigma);
    polys_from_egf(&egf, Variable::Sigma)
}

pub fn gen_bessel_lk(n: u32, idx: StableIndex) -> RationalPoly {
    gen_bessel_lk_all(n, idx).pop().expect("n + 1 coefficients")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::rational;

    fn t_poly(c: &[i64]) -> RationalPoly {
        RationalPoly::from_integers(c, Variable::T)
    }

    #[test]
    fn bessel_examples() {
        assert_eq!(bessel_carlitz(0), t_poly(&[1]));
        assert_eq!(bessel_carlitz(1), t_poly(&[0, 1]));
        assert_eq!(bessel_carlitz(2), t_poly(&[0, 1, 1]));
        assert_eq!(bessel_carlitz(3), t_poly(&[0, 3, 3, 1]));
        for n in 0..=30 {
            assert_eq!(bessel_carlitz(n).degree(), Some(n as usize));
        }
    }

    #[test]
    fn hkdf_examples() {
        assert_eq!(hkdf(0), BivariatePoly::one());
        let mut h2 = BivariatePoly::term(integer(1), 2, 0);
        h2.add_term(integer(2), 0, 1);
        assert_eq!(hkdf(2), h2);
        let mut h3 = BivariatePoly::term(integer(1), 3, 0);
        h3.add_term(integer(6), 1, 1);
        assert_eq!(hkdf(3), h3);
    }

    #[test]
    fn rnp_examples() {
        assert_eq!(rnp(0), BivariatePoly::one());
        let mut r1 = BivariatePoly::term(integer(1), 1, 0);
        r1.add_term(rational(1, 2), 0, 1);
        assert_eq!(rnp(1), r1);
        // x^2 + x t + (t^2 + t)/4
        let mut r2 = BivariatePoly::term(integer(1), 2, 0);
        r2.add_term(integer(1), 1, 1);
        r2.add_term(rational(1, 4), 0, 2);
        r2.add_term(rational(1, 4), 0, 1);
        assert_eq!(rnp(2), r2);
    }

    #[test]
    fn rhp_examples() {
        let mut r2 = BivariatePoly::term(integer(1), 2, 0);
        r2.add_term(integer(1), 0, 1);
        assert_eq!(rhp(2), r2);
        let mut r3 = BivariatePoly::term(integer(1), 3, 0);
        r3.add_term(integer(3), 1, 1);
        assert_eq!(rhp(3), r3);
        // x^4 + 6x^2 t + 3t^2 + 3t
        let mut r4 = BivariatePoly::term(integer(1), 4, 0);
        r4.add_term(integer(6), 2, 1);
        r4.add_term(integer(3), 0, 2);
        r4.add_term(integer(3), 0, 1);
        assert_eq!(rhp(4), r4);
    }

    #[test]
    fn gen_ab_low_orders() {
        let (a, b) = (rational(2, 3), rational(5, 7));
        let one = gen_bessel_ab(1, &a, &b);
        assert_eq!(one.coeffs(), &[integer(0), &b / integer(2)]);
        let two = gen_bessel_ab(2, &a, &b);
        let quarter = rational(1, 4);
        assert_eq!(two.coeffs(), &[integer(0), &a + &b * &b * &quarter, &b * &b * &quarter]);
    }

    #[test]
    fn gen_lk_one_third() {
        let idx = StableIndex::new(1, 3).unwrap();
        let all = gen_bessel_lk_all(2, idx);
        assert_eq!(all[1], t_poly(&[0, 1]));
        assert_eq!(all[2], t_poly(&[0, 2, 1]));
    }

    #[test]
    fn egf_examples() {
        let b = egf_series(&Family::Bessel, 2);
        assert_eq!(b.coeff(1), &BivariatePoly::term(integer(1), 0, 1));
        let mut two = BivariatePoly::term(rational(1, 2), 0, 2);
        two.add_term(rational(1, 2), 0, 1);
        assert_eq!(b.coeff(2), &two);

        let r = egf_series(&Family::Rnp, 1);
        let mut one = BivariatePoly::term(integer(1), 1, 0);
        one.add_term(rational(1, 2), 0, 1);
        assert_eq!(r.coeff(1), &one);

        let l = egf_series(&Family::GenLk(StableIndex::new(1, 3).unwrap()), 2);
        let mut two = BivariatePoly::term(rational(1, 2), 0, 2);
        two.add_term(integer(1), 0, 1);
        assert_eq!(l.coeff(2), &two);
    }

    #[test]
    fn rnp_from_egf_matches_sum() {
        for n in 0..=8 {
            assert_eq!(family_polynomial(&Family::Rnp, n), rnp(n), "n={n}");
        }
    }
}
