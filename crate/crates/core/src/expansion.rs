//! Expansion of a function in relativistic heat polynomials
//! `f(x) = Σ c_n RH_n(x, -|y|)`.
//!
//! The coefficients are
//! `c_n = e^{|y|} / (2|y|√π) ∫ g_{1/2}(η) e^{-ηy²} χ_n(η) / √η dη`, where
//! `χ_n(η) = (1/n!) ∫ H_n(ξ/(2y²η), -1/(4y²η)) e^{-ξ²/(4y²η)} f(ξ) dξ`
//! is a Hermite projection at Gaussian width `s = 4y²η`.
//!
//! For polynomial `f` the projection is done exactly: with `s` factored out,
//! `χ_n[ξ^m] = √π q_{n,m} s^{(m-n+1)/2}`, where `q_{n,m}` is rational and
//! vanishes unless `m ≥ n` with `m - n` even. Tabulated `f` is projected by
//! quadrature over its support. The outer `η` integral is always numeric.

use std::f64::consts::PI;

use num::{Signed, ToPrimitive, Zero};
use thiserror::Error;

use crate::evolution::{Grid, GridFunction};
use crate::par;
use crate::polynomials::{factorial, hkdf_value, rhp, to_f64, Rational, RationalPoly};
use crate::quadrature::{self, Estimate, QuadratureError, QuadratureSpec};
use crate::stable_dist::levy_smirnov_pdf;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum ExpansionError {
    #[error("y must be finite and nonzero, got {0}")]
    InvalidY(f64),
    #[error("eta must be positive, got {0}")]
    InvalidEta(f64),
    #[error("coefficient {n}: the eta integral does not converge ({source})")]
    Divergent { n: usize, source: QuadratureError },
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
}

/// The function being expanded.
#[derive(Clone, Debug, PartialEq)]
pub enum ExpansionInput {
    Polynomial(RationalPoly),
    /// Samples, taken as zero outside the grid.
    Tabulated(GridFunction),
}

#[derive(Clone, Debug, PartialEq)]
pub struct ExpansionResult {
    pub y: f64,
    pub coefficients: Vec<f64>,
    pub error_estimates: Vec<f64>,
}

/// `q_{n,m}` with `χ_n[ξ^m] = √π q_{n,m} s^{(m-n+1)/2}`.
///
/// Expanding `H_n(2ξ/s, -1/s) = Σ_j n!/((n-2j)! j!) (2ξ/s)^{n-2j} (-1/s)^j`
/// and using `∫ ξ^{2p} e^{-ξ²/s} dξ = √π (2p-1)!! (s/2)^p √s` leaves a
/// rational multiple of `√π s^{(m-n+1)/2}` for each `j`.
pub fn projection_coefficient(n: u32, m: u32) -> Rational {
    if m < n || (m - n) % 2 == 1 {
        return Rational::zero();
    }
    let two = Rational::from_integer(2.into());
    let mut total = Rational::zero();
    for j in 0..=n / 2 {
        let p2 = n - 2 * j + m;
        let p = p2 / 2;
        let double_fact: num::BigInt = (1..=p).map(|i| num::BigInt::from(2 * i - 1)).product();
        let moment = Rational::from_integer(double_fact) / num::pow(two.clone(), p as usize);
        let hermite = Rational::new(factorial(n), factorial(n - 2 * j) * factorial(j))
            * num::pow(two.clone(), (n - 2 * j) as usize);
        let term = hermite * moment;
        if j % 2 == 1 {
            total -= term;
        } else {
            total += term;
        }
    }
    total / Rational::from_integer(factorial(n))
}

fn check_y(y: f64) -> Result<(), ExpansionError> {
    if y != 0.0 && y.is_finite() {
        Ok(())
    } else {
        Err(ExpansionError::InvalidY(y))
    }
}

/// Edge magnitude above which a tabulated input is reported as truncated.
const TAIL_WARNING: f64 = 1e-10;

/// `χ_n(η)` for the given input.
pub fn chi_n(f: &ExpansionInput, n: u32, y: f64, eta: f64, quad: &QuadratureSpec) -> Result<Estimate, ExpansionError> {
    check_y(y)?;
    if !(eta > 0.0) || !eta.is_finite() {
        return Err(ExpansionError::InvalidEta(eta));
    }
    let s = 4.0 * y * y * eta;
    match f {
        ExpansionInput::Polynomial(p) => {
            let value: f64 = p
                .coeffs()
                .iter()
                .enumerate()
                .filter(|(_, a)| !a.is_zero())
                .map(|(m, a)| {
                    let q = projection_coefficient(n, m as u32);
                    to_f64(&(a * q)) * PI.sqrt() * s.powf((m as f64 - n as f64 + 1.0) / 2.0)
                })
                .sum();
            Ok(Estimate { value, error: 0.0 })
        }
        ExpansionInput::Tabulated(g) => {
            let inv_nfact = 1.0 / factorial(n).to_f64().unwrap_or(f64::INFINITY);
            let reach = 40.0 * s.sqrt();
            let weight = |xi: f64| inv_nfact * hkdf_value(n, 2.0 * xi / s, -1.0 / s) * (-xi * xi / s).exp();
            // For small s the weight is tall and narrow and χ_n is what is left
            // after heavy cancellation, so accuracy is capped by roundoff in ∫|w f|.
            let rough = QuadratureSpec { rel_tol: 1e-3, abs_tol: f64::MIN_POSITIVE, ..*quad };
            let l1 = match quadrature::integrate(|xi: f64| weight(xi).abs(), -reach, reach, &rough) {
                Ok(e) => e.value,
                Err(QuadratureError::NonConvergence { value, .. }) => value,
                Err(e) => return Err(e.into()),
            };
            let floor = 100.0 * f64::EPSILON * l1 * g.max_abs();
            let quad = QuadratureSpec { abs_tol: quad.abs_tol.max(floor), ..*quad };
            Ok(g.integrate_against(weight, -reach, reach, &quad)?)
        }
    }
}

fn outer_error(n: u32, e: QuadratureError) -> ExpansionError {
    match e {
        QuadratureError::NonConvergence { .. } => ExpansionError::Divergent { n: n as usize, source: e },
        other => ExpansionError::Quadrature(other),
    }
}

/// `e^{|y|}/(2|y|√π) ∫ g_{1/2}(η) e^{-ηy²} (4y²η)^{r+1/2} / √η dη`, the outer
/// integral of a single power `s^{r+1/2}` of the projection.
fn outer_power(r: u32, y: f64, quad: &QuadratureSpec) -> Result<Estimate, QuadratureError> {
    let ay = y.abs();
    let prefactor = ay.exp() / (2.0 * ay * PI.sqrt()) * (4.0 * y * y).powf(r as f64 + 0.5);
    let est = quadrature::integrate_semi_axis(
        |eta| levy_smirnov_pdf(eta).unwrap_or(0.0) * (-eta * y * y).exp() * eta.powi(r as i32),
        quad,
    )?;
    Ok(Estimate { value: prefactor * est.value, error: prefactor * est.error })
}

/// `c_n` for tabulated input, with the outer quadrature's error estimate.
fn tabulated_coefficient(
    f: &ExpansionInput,
    n: u32,
    y: f64,
    quad: &QuadratureSpec,
) -> Result<Estimate, ExpansionError> {
    let ay = y.abs();
    let prefactor = ay.exp() / (2.0 * ay * PI.sqrt());
    let integrand = |eta: f64| {
        let g = levy_smirnov_pdf(eta).unwrap_or(0.0);
        let w = (-eta * y * y).exp();
        if g * w == 0.0 {
            return 0.0;
        }
        match chi_n(f, n, y, eta, quad) {
            Ok(chi) => prefactor * g * w * chi.value / eta.sqrt(),
            Err(_) => f64::NAN,
        }
    };
    let est = quadrature::integrate_semi_axis(integrand, quad).map_err(|e| outer_error(n, e))?;
    // the inner tolerance carries through the normalized outer weight
    Ok(Estimate { value: est.value, error: est.error + quad.rel_tol * est.value.abs() })
}

/// Coefficients `c_0..c_{n_max}`.
pub fn rhp_coefficients(
    f: &ExpansionInput,
    y: f64,
    n_max: u32,
    quad: &QuadratureSpec,
) -> Result<ExpansionResult, ExpansionError> {
    check_y(y)?;
    let ns: Vec<u32> = (0..=n_max).collect();
    let estimates = match f {
        ExpansionInput::Polynomial(p) => {
            // χ_n is a combination of powers s^{r+1/2}; each power's outer
            // integral is computed once and the exact weights applied after.
            let degree = p.degree().unwrap_or(0) as u32;
            let rs: Vec<u32> = (0..=degree / 2).collect();
            let powers = par::try_map(&rs, |&r| outer_power(r, y, quad).map_err(|e| outer_error(r, e)))?;
            ns.iter()
                .map(|&n| {
                    let mut acc = Estimate { value: 0.0, error: 0.0 };
                    for (m, a) in p.coeffs().iter().enumerate().skip(n as usize).step_by(2) {
                        if a.is_zero() {
                            continue;
                        }
                        let w = to_f64(&(a * projection_coefficient(n, m as u32))) * PI.sqrt();
                        let pw = &powers[(m - n as usize) / 2];
                        acc.value += w * pw.value;
                        acc.error += w.abs() * pw.error;
                    }
                    acc
                })
                .collect::<Vec<_>>()
        }
        ExpansionInput::Tabulated(g) => {
            let samples = g.samples();
            let edge = samples[0].abs().max(samples[samples.len() - 1].abs());
            if edge > TAIL_WARNING * g.max_abs().max(f64::MIN_POSITIVE) {
                log::warn!("tabulated input is {edge:e} at its edges; the projection truncates it there");
            }
            par::try_map(&ns, |&n| tabulated_coefficient(f, n, y, quad))?
        }
    };
    Ok(ExpansionResult {
        y,
        coefficients: estimates.iter().map(|e| e.value).collect(),
        error_estimates: estimates.iter().map(|e| e.error).collect(),
    })
}

/// `RH_n(x, -|y|)` as an exact polynomial in `x`; `y` is converted exactly
/// from its binary value.
pub fn basis_polynomial(n: u32, y: f64) -> Result<RationalPoly, ExpansionError> {
    check_y(y)?;
    let t = -Rational::from_float(y).ok_or(ExpansionError::InvalidY(y))?.abs();
    Ok(rhp(n).at_second(&t))
}

/// `Σ c_r RH_r(x, -|y|)` on the grid.
pub fn reconstruct(res: &ExpansionResult, grid: &Grid) -> Result<GridFunction, ExpansionError> {
    check_y(res.y)?;
    let basis: Vec<RationalPoly> =
        (0..res.coefficients.len() as u32).map(|n| basis_polynomial(n, res.y)).collect::<Result<_, _>>()?;
    Ok(GridFunction::from_fn(*grid, 0.0, |x| res.coefficients.iter().zip(&basis).map(|(c, b)| c * b.eval_f64(x)).sum()))
}

/// The same coefficients in closed form for polynomial input, for
/// cross-checking: `c_n[ξ^m] = q_{n,m} 2^r B_r(|y|)`, `r = (m-n)/2`.
pub fn polynomial_coefficients_exact(p: &RationalPoly, y: &Rational, n_max: u32) -> Vec<Rational> {
    let ay = y.abs();
    (0..=n_max)
        .map(|n| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(m, a)| !a.is_zero() && *m as u32 >= n && (*m as u32 - n).is_multiple_of(2))
                .fold(Rational::zero(), |acc, (m, a)| {
                    let r = (m as u32 - n) / 2;
                    let b = crate::polynomials::bessel_carlitz(r).eval(&ay);
                    acc + a
                        * projection_coefficient(n, m as u32)
                        * num::pow(Rational::from_integer(2.into()), r as usize)
                        * b
                })
        })
        .collect()
}
