//! Solvers for `∂t F = S(∂x) F` with square-root and fractional-power symbols.
//!
//! Two independent routes are implemented. The real-space route writes the
//! evolution operator as an integral of shifts or heat flows against a
//! one-sided stable density; the spectral route multiplies the Fourier
//! transform of the data by `e^{tS(ik)}`. Every solver is pure, and grid
//! points are evaluated independently (in parallel with the `parallel`
//! feature).

mod convolution;
mod grid;
mod initial;
mod monomial;
mod spectral;
mod symbol;

use thiserror::Error;

pub use convolution::{
    evolve_gaussian_drift, evolve_gen_ab_gaussian, evolve_levy_convolution, evolve_relheat_gaussian, gauss_weierstrass,
};
pub use grid::{Grid, GridFunction};
pub use initial::InitialCondition;
pub use monomial::evolve_monomial;
pub use spectral::{evolve_spectral, telegrapher_solve};
pub use symbol::SymbolSpec;

use crate::quadrature::QuadratureError;
use crate::stable_dist::StableError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum EvolutionError {
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("{0}")]
    Domain(String),
    #[error("the real-space route supports mu = 1 or 2, got {0}")]
    UnsupportedMu(u32),
    #[error("base of the fractional power lies on the negative real axis at k = {k}")]
    BranchCut { k: f64 },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error(transparent)]
    Quadrature(#[from] QuadratureError),
    #[error(transparent)]
    Stable(#[from] StableError),
}

pub(crate) fn check_time(t: f64) -> Result<(), EvolutionError> {
    if t >= 0.0 && t.is_finite() {
        Ok(())
    } else {
        Err(EvolutionError::Domain(format!("time t = {t} must be finite and nonnegative")))
    }
}

/// Edge magnitude (relative to the peak) above which moments are flagged as
/// biased by the truncated domain.
pub const EDGE_THRESHOLD: f64 = 1e-12;

/// `∫ x^m F dx` for `m ≤ 2` by the trapezoid rule on the grid.
///
/// For the smooth, rapidly decaying solutions produced here the trapezoid
/// rule is spectrally accurate, so no higher-order rule is needed.
pub fn moment(f: &GridFunction, order: u32) -> Result<f64, EvolutionError> {
    if order > 2 {
        return Err(EvolutionError::Domain(format!("moment order {order} > 2")));
    }
    let s = f.samples();
    let n = s.len();
    let edge = s[0].abs().max(s[n - 1].abs());
    if edge > EDGE_THRESHOLD {
        log::warn!("solution is {edge:e} at the grid edge; moment {order} is biased by truncation");
    }
    let g = f.grid();
    let total: f64 = s
        .iter()
        .enumerate()
        .map(|(i, v)| {
            let w = if i == 0 || i + 1 == n { 0.5 } else { 1.0 };
            w * v * g.point(i).powi(order as i32)
        })
        .sum();
    Ok(total * g.step())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::QuadratureSpec;
    use std::f64::consts::PI;

    fn quad() -> QuadratureSpec {
        QuadratureSpec::default()
    }

    #[test]
    fn gaussian_moments() {
        let grid = Grid::with_step(-10.0, 10.0, 0.05).unwrap();
        let f = GridFunction::from_fn(grid, 0.0, |x| InitialCondition::Gaussian.value(x));
        assert!((moment(&f, 0).unwrap() - 1.0).abs() < 1e-14);
        assert!(moment(&f, 1).unwrap().abs() < 1e-14);
        assert!((moment(&f, 2).unwrap() - 0.5).abs() < 1e-14);
        assert!(moment(&f, 3).is_err());
    }

    #[test]
    fn zero_time_is_identity() {
        let grid = Grid::new(-3.0, 3.0, 13).unwrap();
        let g = InitialCondition::Gaussian;
        for f in [
            evolve_gaussian_drift(0.0, &grid, &quad()).unwrap(),
            evolve_relheat_gaussian(0.0, &grid, &quad()).unwrap(),
            evolve_gen_ab_gaussian(1.0, 1.0, 0.0, &grid, &quad()).unwrap(),
            evolve_spectral(&g, 0.0, &SymbolSpec::SqrtDrift, &grid, &quad()).unwrap(),
            telegrapher_solve(&g, &InitialCondition::Zero, 0.0, &grid, &quad()).unwrap(),
        ] {
            for (x, v) in f.xs().iter().zip(f.samples()) {
                assert_eq!(*v, (-x * x).exp() / PI.sqrt());
            }
        }
        assert!(evolve_relheat_gaussian(-1.0, &grid, &quad()).is_err());
    }

    #[test]
    fn monomial_under_drift() {
        let grid = Grid::new(-2.0, 2.0, 9).unwrap();
        for t in [0.3, 1.0, 2.0] {
            let f = evolve_levy_convolution(&InitialCondition::Monomial(1), t, &SymbolSpec::SqrtDrift, &grid, &quad())
                .unwrap();
            for (x, v) in f.xs().iter().zip(f.samples()) {
                assert!((v - (x + t)).abs() < 1e-9, "t={t} x={x}");
            }
        }
    }

    #[test]
    fn gauss_weierstrass_examples() {
        let grid = Grid::new(-4.0, 4.0, 17).unwrap();
        let y = 0.7;
        let f = gauss_weierstrass(&InitialCondition::Gaussian, y, &grid, &quad()).unwrap();
        for (x, v) in f.xs().iter().zip(f.samples()) {
            let want = (-x * x / (1.0 + 4.0 * y)).exp() / (PI * (1.0 + 4.0 * y)).sqrt();
            assert!((v - want).abs() < 1e-12);
        }
        let f = gauss_weierstrass(&InitialCondition::Monomial(2), y, &grid, &quad()).unwrap();
        for (x, v) in f.xs().iter().zip(f.samples()) {
            assert!((v - (x * x + 2.0 * y)).abs() < 1e-9 * (1.0 + x * x));
        }
        let f = gauss_weierstrass(&InitialCondition::Gaussian, 1e-8, &grid, &quad()).unwrap();
        for (x, v) in f.xs().iter().zip(f.samples()) {
            assert!((v - InitialCondition::Gaussian.value(*x)).abs() < 1e-7);
        }
        assert!(gauss_weierstrass(&InitialCondition::Gaussian, 0.0, &grid, &quad()).is_err());
    }

    #[test]
    fn unsupported_requests() {
        let grid = Grid::new(-1.0, 1.0, 3).unwrap();
        let idx = crate::stable_dist::StableIndex::new(1, 3).unwrap();
        let g = InitialCondition::Gaussian;
        assert!(matches!(
            evolve_levy_convolution(&g, 1.0, &SymbolSpec::GenLk { idx, mu: 3 }, &grid, &quad()),
            Err(EvolutionError::UnsupportedMu(3))
        ));
        assert!(matches!(
            evolve_spectral(&g, 1.0, &SymbolSpec::GenLk { idx, mu: 4 }, &grid, &quad()),
            Err(EvolutionError::BranchCut { .. })
        ));
        assert!(evolve_spectral(&InitialCondition::Monomial(1), 1.0, &SymbolSpec::RelHeat, &grid, &quad()).is_err());
    }
}
