//! Residuals of the identities the families satisfy. Each returns a
//! polynomial that is identically zero when the identity holds.

use super::bivariate::BivariatePoly;
use super::families::{bessel_carlitz, rhp, rnp};
use super::poly::RationalPoly;
use super::Rational;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PdeFamily {
    /// `-∂t² + 2∂t = ∂x` on relativistic Newton polynomials.
    Rnp,
    /// `-∂t² + 2∂t = ∂x²` on relativistic heat polynomials.
    Rhp,
}

/// `-∂t²P + 2∂tP - ∂x^m P` for the family's PDE.
pub fn pde_residual(family: PdeFamily, n: u32) -> BivariatePoly {
    let (p, rhs) = match family {
        PdeFamily::Rnp => {
            let p = rnp(n);
            let dx = p.d_first();
            (p, dx)
        }
        PdeFamily::Rhp => {
            let p = rhp(n);
            let dxx = p.d_first().d_first();
            (p, dxx)
        }
    };
    let dt = p.d_second();
    let dtt = dt.d_second();
    let two = Rational::from_integer(2.into());
    let lhs = &dt.scale(&two) - &dtt;
    &lhs - &rhs
}

/// `∂x RN_n - n RN_{n-1}` (for `n = 0` just `∂x RN_0`).
pub fn lowering_check(n: u32) -> BivariatePoly {
    let dx = rnp(n).d_first();
    if n == 0 {
        return dx;
    }
    &dx - &rnp(n - 1).scale(&Rational::from_integer(n.into()))
}

/// `B_n'' - 2B_n' + 2n B_{n-1}` (for `n = 0` just `B_0'' - 2B_0'`).
pub fn recurrence_check(n: u32) -> RationalPoly {
    let b = bessel_carlitz(n);
    let d1 = b.derivative();
    let d2 = d1.derivative();
    let two = Rational::from_integer(2.into());
    let mut out = &d2 - &d1.scale(&two);
    if n > 0 {
        out = &out + &bessel_carlitz(n - 1).scale(&Rational::from_integer((2 * n).into()));
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_cases_vanish() {
        for n in 0..=3 {
            assert!(pde_residual(PdeFamily::Rnp, n).is_zero());
            assert!(pde_residual(PdeFamily::Rhp, n).is_zero());
            assert!(lowering_check(n).is_zero());
            assert!(recurrence_check(n).is_zero());
        }
        assert!(lowering_check(10).is_zero());
        assert!(recurrence_check(20).is_zero());
    }
}
