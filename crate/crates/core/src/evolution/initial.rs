use std::f64::consts::PI;

use num::complex::Complex64;

use super::{EvolutionError, GridFunction};
use crate::polynomials::hkdf_value;
use crate::quadrature::{QuadratureSpec, FOURIER_K_LIMIT};

/// Initial data `g(x)` for the evolution problems.
#[derive(Clone, Debug, PartialEq)]
pub enum InitialCondition {
    /// `e^{-x²}/√π`.
    Gaussian,
    /// `x^n`.
    Monomial(u32),
    /// Samples interpolated by local cubics and taken as zero off the grid.
    Tabulated(GridFunction),
    /// Identically zero.
    Zero,
}

/// Kernel half-width in units of `2√y`, beyond which `e^{-s²}` is below 1e-35.
const HEAT_REACH: f64 = 9.0;

impl InitialCondition {
    pub fn value(&self, x: f64) -> f64 {
        match self {
            Self::Gaussian => (-x * x).exp() / PI.sqrt(),
            Self::Monomial(n) => x.powi(*n as i32),
            Self::Tabulated(f) => f.interpolate(x),
            Self::Zero => 0.0,
        }
    }

    /// Heat-flow image `e^{y∂²} g` at `x`. Closed form for the Gaussian and
    /// monomials, quadrature over the tabulated support otherwise.
    pub fn heat(&self, x: f64, y: f64, quad: &QuadratureSpec) -> Result<f64, EvolutionError> {
        if y == 0.0 {
            return Ok(self.value(x));
        }
        if !(y > 0.0) {
            return Err(EvolutionError::Domain(format!("heat time y = {y} must be nonnegative")));
        }
        Ok(match self {
            Self::Gaussian => {
                let w = 1.0 + 4.0 * y;
                (-x * x / w).exp() / (PI * w).sqrt()
            }
            Self::Monomial(n) => hkdf_value(*n, x, y),
            Self::Tabulated(f) => {
                let reach = 2.0 * y.sqrt() * HEAT_REACH;
                let c = 1.0 / (2.0 * (PI * y).sqrt());
                f.integrate_against(|s| c * (-(x - s) * (x - s) / (4.0 * y)).exp(), x - reach, x + reach, quad)?.value
            }
            Self::Zero => 0.0,
        })
    }

    /// `ĝ(k) = ∫ e^{-ikx} g(x) dx`; trapezoid sum for tabulated data.
    pub fn fourier(&self, k: f64) -> Result<Complex64, EvolutionError> {
        match self {
            Self::Gaussian => Ok(Complex64::new((-k * k / 4.0).exp(), 0.0)),
            Self::Monomial(n) => {
                Err(EvolutionError::Unsupported(format!("x^{n} has no Fourier transform as a function")))
            }
            Self::Tabulated(f) => Ok(trapezoid_transform(f, k)),
            Self::Zero => Ok(Complex64::new(0.0, 0.0)),
        }
    }

    /// Largest wavenumber at which [`Self::fourier`] is meaningful.
    pub fn k_limit(&self) -> f64 {
        match self {
            Self::Tabulated(f) => PI / f.grid().step(),
            _ => FOURIER_K_LIMIT,
        }
    }

    /// Interval carrying essentially all of `g`, when one exists.
    pub fn support(&self) -> Option<(f64, f64)> {
        match self {
            Self::Gaussian => Some((-6.0, 6.0)),
            Self::Tabulated(f) => Some((f.grid().x_min(), f.grid().x_max())),
            Self::Monomial(_) | Self::Zero => None,
        }
    }
}

fn trapezoid_transform(f: &GridFunction, k: f64) -> Complex64 {
    let g = f.grid();
    let h = g.step();
    let n = g.n_points();
    let mut acc = Complex64::new(0.0, 0.0);
    for (i, &v) in f.samples().iter().enumerate() {
        let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
        acc += Complex64::from_polar(w * v, -k * g.point(i));
    }
    acc * h
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::evolution::Grid;

    #[test]
    fn tabulated_gaussian_matches_closed_forms() {
        let grid = Grid::with_step(-12.0, 12.0, 1.0 / 32.0).unwrap();
        let tab =
            InitialCondition::Tabulated(GridFunction::from_fn(grid, 0.0, |x| InitialCondition::Gaussian.value(x)));
        let quad = QuadratureSpec::default();
        // local cubics: O(h⁴) with h = 1/32
        for x in [-2.0, 0.0, 0.7, 3.1] {
            let want = InitialCondition::Gaussian.heat(x, 0.3, &quad).unwrap();
            let got = tab.heat(x, 0.3, &quad).unwrap();
            assert!((want - got).abs() < 1e-7, "{x}: {}", (want - got).abs());
        }
        for k in [0.0, 1.0, 5.0, 12.0] {
            let want = InitialCondition::Gaussian.fourier(k).unwrap();
            let got = tab.fourier(k).unwrap();
            assert!((want - got).norm() < 1e-14, "{k}");
        }
        assert!((tab.k_limit() - 32.0 * PI).abs() < 1e-12);
    }

    #[test]
    fn monomial_heat_is_hermite() {
        let q = QuadratureSpec::default();
        assert_eq!(InitialCondition::Monomial(2).heat(1.5, 0.25, &q).unwrap(), 1.5 * 1.5 + 0.5);
        assert!(InitialCondition::Monomial(2).fourier(1.0).is_err());
        assert!(InitialCondition::Gaussian.heat(0.0, -1.0, &q).is_err());
    }
}
