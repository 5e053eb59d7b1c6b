//! Fourier-space solutions: multiply the transform of the data by the
//! evolution kernel and invert on a truncated window.

use num::complex::Complex64;

use super::{check_time, EvolutionError, Grid, GridFunction, InitialCondition, SymbolSpec};
use crate::quadrature::{fourier_inverse_limited, FourierInversion, QuadratureError, QuadratureSpec};

fn invert<F>(
    khat: F,
    grid: &Grid,
    t: f64,
    quad: &QuadratureSpec,
    k_limit: f64,
    diagnose: impl Fn(f64) -> Option<EvolutionError>,
) -> Result<GridFunction, EvolutionError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    let xs = grid.points();
    match fourier_inverse_limited(khat, &xs, quad, k_limit) {
        Ok(FourierInversion { values, imag_residue, window, .. }) => {
            log::debug!("inverted on |k| <= {window}, imaginary residue {imag_residue:e}");
            GridFunction::new(*grid, values, t)
        }
        Err(QuadratureError::NonFinite { at }) => Err(diagnose(at).unwrap_or(QuadratureError::NonFinite { at }.into())),
        Err(e) => Err(e.into()),
    }
}

/// `F̂(k,t) = e^{tS(ik)} ĝ(k)`, inverted numerically.
pub fn evolve_spectral(
    ic: &InitialCondition,
    t: f64,
    spec: &SymbolSpec,
    grid: &Grid,
    quad: &QuadratureSpec,
) -> Result<GridFunction, EvolutionError> {
    check_time(t)?;
    spec.validate()?;
    if t == 0.0 {
        return Ok(GridFunction::from_fn(*grid, 0.0, |x| ic.value(x)));
    }
    ic.fourier(0.0)?;
    let nan = Complex64::new(f64::NAN, f64::NAN);
    let khat = |k: f64| match (spec.eval(k), ic.fourier(k)) {
        (Ok(s), Ok(g)) => {
            if g == Complex64::new(0.0, 0.0) {
                g
            } else {
                (s * t).exp() * g
            }
        }
        _ => nan,
    };
    let diagnose = |k: f64| spec.eval(k).err().or_else(|| ic.fourier(k).err());
    invert(khat, grid, t, quad, ic.k_limit(), diagnose)
}

/// Telegrapher solution with `F(x,0) = g`, `∂tF(x,0) = s`:
/// `F̂ = e^t [cosh(tω) ĝ + sinh(tω)/ω (ŝ - ĝ)]`, `ω = √(1+k²)`.
pub fn telegrapher_solve(
    g: &InitialCondition,
    s: &InitialCondition,
    t: f64,
    grid: &Grid,
    quad: &QuadratureSpec,
) -> Result<GridFunction, EvolutionError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(GridFunction::from_fn(*grid, 0.0, |x| g.value(x)));
    }
    g.fourier(0.0)?;
    s.fourier(0.0)?;
    let khat = |k: f64| match (g.fourier(k), s.fourier(k)) {
        (Ok(gh), Ok(sh)) => {
            let w = (1.0 + k * k).sqrt();
            let tw = t * w;
            // e^t cosh(tω) and e^t sinh(tω) without overflowing for large tω
            let grow = (t + tw).exp() * 0.5;
            let decay = (t - tw).exp() * 0.5;
            gh * (grow + decay) + (sh - gh) * ((grow - decay) / w)
        }
        _ => Complex64::new(f64::NAN, f64::NAN),
    };
    let limit = g.k_limit().min(s.k_limit());
    let tail = khat(limit).norm();
    if tail > 1e-12 * khat(0.0).norm().max(1.0) {
        log::warn!("kernel growth leaves {tail:e} unresolved at the transform limit |k| = {limit}");
    }
    let diagnose = |k: f64| g.fourier(k).err().or_else(|| s.fourier(k).err());
    invert(khat, grid, t, quad, limit, diagnose)
}
