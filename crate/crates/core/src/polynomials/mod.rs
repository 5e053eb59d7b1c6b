//! Exact polynomial families built from Bessel polynomials in Carlitz form.
//!
//! All coefficients are arbitrary-precision rationals, so the identities
//! between families (recurrences, PDE residuals, agreement between the
//! explicit-sum, generating-function and Rodrigues constructions) are checked
//! by equality rather than by tolerance. The numeric moment-integral routes
//! live in [`integral`].

mod bivariate;
mod checks;
mod families;
pub mod integral;
mod poly;
mod rodrigues;
mod series;

use num::bigint::BigInt;
use num::rational::BigRational;
use num::{One, ToPrimitive, Zero};
use thiserror::Error;

pub use bivariate::BivariatePoly;
pub use checks::{lowering_check, pde_residual, recurrence_check, PdeFamily};
pub use families::{
    bessel_carlitz, egf_series, family_polynomial, gen_bessel_ab, gen_bessel_ab_all, gen_bessel_lk, gen_bessel_lk_all,
    hkdf, rhp, rnp, Family,
};
pub use integral::{bessel_moment, gen_bessel_ab_integral, hkdf_value, moment_lk};
pub use poly::{RationalPoly, Variable};
pub use rodrigues::{rodrigues_lk, ExpPolySum, ExpPolyTerm};
pub use series::{Coefficient, FormalSeries};

/// Arbitrary-precision rational scalar, always kept in lowest terms.
pub type Rational = BigRational;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("fractional exponent {0} survived in a Rodrigues product")]
    FractionalExponent(String),
    #[error("cannot parse rational from {0:?}")]
    Parse(String),
}

pub fn rational(numer: i64, denom: i64) -> Rational {
    Rational::new(numer.into(), denom.into())
}

pub fn integer(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, i| acc * BigInt::from(i))
}

pub fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    let k = k.min(n - k);
    (0..k).fold(BigInt::one(), |acc, i| acc * BigInt::from(n - i) / BigInt::from(i + 1))
}

/// Generalised binomial coefficient `p (p-1) ... (p-j+1) / j!`.
pub fn binomial_rational(p: &Rational, j: usize) -> Rational {
    (0..j).fold(<Rational as num::One>::one(), |acc, i| {
        let i = Rational::from_integer(i.into());
        acc * (p - &i) / (i + <Rational as num::One>::one())
    })
}

/// `"p/q"`, or `"p"` when the denominator is one.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Accepts `"p"`, `"p/q"` or a finite decimal such as `"-0.125"`.
pub fn parse_rational(s: &str) -> Result<Rational, PolyError> {
    let s = s.trim();
    let err = || PolyError::Parse(s.to_string());
    if let Some((p, q)) = s.split_once('/') {
        let p: BigInt = p.trim().parse().map_err(|_| err())?;
        let q: BigInt = q.trim().parse().map_err(|_| err())?;
        if q.is_zero() {
            return Err(err());
        }
        return Ok(Rational::new(p, q));
    }
    if let Some((int, frac)) = s.split_once('.') {
        if frac.is_empty() || !frac.bytes().all(|b| b.is_ascii_digit()) {
            return Err(err());
        }
        let negative = int.starts_with('-');
        let whole: BigInt = match int.trim_start_matches(['-', '+']) {
            "" => BigInt::zero(),
            digits => digits.parse().map_err(|_| err())?,
        };
        let scale = num::pow(BigInt::from(10), frac.len());
        let frac: BigInt = frac.parse().map_err(|_| err())?;
        let magnitude = Rational::new(whole * &scale + frac, scale);
        return Ok(if negative { -magnitude } else { magnitude });
    }
    s.parse::<BigInt>().map(Rational::from_integer).map_err(|_| err())
}

pub fn to_f64(r: &Rational) -> f64 {
    r.to_f64().unwrap_or(f64::NAN)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rational_text_round_trip() {
        for s in ["0", "3", "-7/4", "123456789012345678901234567891/7"] {
            assert_eq!(format_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(parse_rational("-0.125").unwrap(), rational(-1, 8));
        assert_eq!(parse_rational(" 6/4 ").unwrap(), rational(3, 2));
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("abc").is_err());
        assert!(parse_rational("1.").is_err());
    }

    #[test]
    fn combinatorics() {
        assert_eq!(factorial(0), BigInt::one());
        assert_eq!(factorial(10), BigInt::from(3_628_800));
        assert_eq!(binomial(10, 3), BigInt::from(120));
        assert_eq!(binomial(3, 5), BigInt::zero());
        assert_eq!(binomial(60, 30).to_string(), "118264581564861424");
    }
}
