//! Real-space solutions as Lévy-weighted superpositions of shifts and heat
//! flows of the initial data.

use std::f64::consts::PI;

use super::{check_time, EvolutionError, Grid, GridFunction, InitialCondition, SymbolSpec};
use crate::par;
use crate::quadrature::{self, Estimate, QuadratureError, QuadratureSpec};
use crate::stable_dist::{levy_smirnov_pdf, stable_density};

fn ls(kappa: f64) -> f64 {
    levy_smirnov_pdf(kappa).unwrap_or(0.0)
}

/// `∫₀^∞ f`, split at the given breakpoints so that narrow features away from
/// the origin are not stepped over by the first sampling pass.
fn half_line<F: Fn(f64) -> f64>(
    f: F,
    mut breaks: Vec<f64>,
    quad: &QuadratureSpec,
) -> Result<Estimate, QuadratureError> {
    breaks.retain(|b| *b > 0.0 && b.is_finite());
    breaks.sort_by(f64::total_cmp);
    breaks.dedup();
    let mut total = Estimate { value: 0.0, error: 0.0 };
    let mut lo = 0.0;
    for b in breaks {
        let piece = quadrature::integrate(&f, lo, b, quad)?;
        total.value += piece.value;
        total.error += piece.error;
        lo = b;
    }
    let tail = quadrature::integrate_semi_axis(|s| f(lo + s), quad)?;
    total.value += tail.value;
    total.error += tail.error;
    Ok(total)
}

/// Parameters `s > 0` at which `x + rate·s` crosses the ends or the middle of
/// the initial data's support.
fn shift_breaks(x: f64, rate: f64, support: Option<(f64, f64)>) -> Vec<f64> {
    match support {
        Some((lo, hi)) if rate != 0.0 => [lo, 0.5 * (lo + hi), hi].iter().map(|c| (c - x) / rate).collect(),
        _ => Vec::new(),
    }
}

fn on_grid<F>(grid: &Grid, t: f64, point: F) -> Result<GridFunction, EvolutionError>
where
    F: Fn(f64) -> Result<f64, EvolutionError> + Sync + Send,
{
    let xs = grid.points();
    let samples = par::try_map(&xs, |&x| point(x))?;
    GridFunction::new(*grid, samples, t)
}

/// `e^{tS(∂x)} g` by subordination: the symbol's square root (or `l/k`
/// power) is traded for an integral of shifts (`μ = 1`) or heat flows
/// (`μ = 2`) against the one-sided stable density.
pub fn evolve_levy_convolution(
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
    let support = ic.support();
    let t2 = t * t;
    match *spec {
        SymbolSpec::SqrtDrift => on_grid(grid, t, |x| {
            let rate = 2.0 * t2;
            let f = |k: f64| {
                let v = ic.value(x + rate * k);
                if v == 0.0 {
                    0.0
                } else {
                    ls(k) * (t - k * t2).exp() * v
                }
            };
            Ok(half_line(f, shift_breaks(x, rate, support), quad)?.value)
        }),
        SymbolSpec::RelHeat => on_grid(grid, t, |x| heat_superposition(ic, x, 0.0, 1.0, t, quad)),
        SymbolSpec::GenAb { alpha, beta } => on_grid(grid, t, |x| heat_superposition(ic, x, beta, alpha, t, quad)),
        SymbolSpec::GenLk { idx, mu } => {
            if mu > 2 {
                return Err(EvolutionError::UnsupportedMu(mu));
            }
            let c = t.powf(1.0 / idx.alpha());
            on_grid(grid, t, |x| {
                let f = |u: f64| {
                    let g = stable_density(idx, u);
                    if g == 0.0 {
                        return 0.0;
                    }
                    let w = (t - u * c).exp();
                    if w == 0.0 {
                        return 0.0;
                    }
                    let v = if mu == 1 { Ok(ic.value(x + u * c)) } else { ic.heat(x, u * c, quad) };
                    match v {
                        Ok(v) => g * w * v,
                        Err(_) => f64::NAN,
                    }
                };
                let breaks = if mu == 1 { shift_breaks(x, c, support) } else { Vec::new() };
                Ok(half_line(f, breaks, quad)?.value)
            })
        }
    }
}

/// `e^t ∫ g_{1/2}(η) e^{-ηt²} [e^{αηt²∂²} g](x + βηt²) dη`.
fn heat_superposition(
    ic: &InitialCondition,
    x: f64,
    beta: f64,
    alpha: f64,
    t: f64,
    quad: &QuadratureSpec,
) -> Result<f64, EvolutionError> {
    let t2 = t * t;
    let f = |e: f64| {
        let w = e * t2;
        let weight = ls(e) * (t - w).exp();
        if weight == 0.0 {
            return 0.0;
        }
        match ic.heat(x + beta * w, alpha * w, quad) {
            Ok(v) => weight * v,
            Err(_) => f64::NAN,
        }
    };
    let breaks = shift_breaks(x, beta * t2, ic.support());
    Ok(half_line(f, breaks, quad)?.value)
}

/// Gaussian data under the square-root drift, written as
/// `F = φ(x,t) e^{-x²}/√π` with
/// `φ = e^t ∫ g_{1/2}(κ) e^{-κt²} e^{-4κt²x - 4κ²t⁴} dκ`.
/// The exponents are combined before exponentiating so that `φ` and `e^{-x²}`
/// never overflow or underflow separately.
pub fn evolve_gaussian_drift(t: f64, grid: &Grid, quad: &QuadratureSpec) -> Result<GridFunction, EvolutionError> {
    check_time(t)?;
    if t == 0.0 {
        return Ok(GridFunction::from_fn(*grid, 0.0, |x| InitialCondition::Gaussian.value(x)));
    }
    let t2 = t * t;
    let norm = 1.0 / PI.sqrt();
    on_grid(grid, t, |x| {
        let f = |k: f64| {
            let s = x + 2.0 * k * t2;
            ls(k) * (t - k * t2 - s * s).exp() * norm
        };
        Ok(half_line(f, shift_breaks(x, 2.0 * t2, Some((-6.0, 6.0))), quad)?.value)
    })
}

/// Gaussian data under the relativistic heat operator, via Glaisher's formula:
/// `F = (e^t/√π) ∫ g_{1/2}(η) e^{-ηt²} exp(-x²/(1+4ηt²)) / √(1+4ηt²) dη`.
pub fn evolve_relheat_gaussian(t: f64, grid: &Grid, quad: &QuadratureSpec) -> Result<GridFunction, EvolutionError> {
    evolve_gen_ab_gaussian(1.0, 0.0, t, grid, quad)
}

/// Gaussian data under `1 - √(1 - α∂² - β∂)`:
/// `F = (e^t/√π) ∫ g_{1/2}(η) e^{-ηt²} exp(-(x+βηt²)²/(1+4αηt²)) / √(1+4αηt²) dη`.
pub fn evolve_gen_ab_gaussian(
    alpha: f64,
    beta: f64,
    t: f64,
    grid: &Grid,
    quad: &QuadratureSpec,
) -> Result<GridFunction, EvolutionError> {
    check_time(t)?;
    SymbolSpec::GenAb { alpha, beta }.validate()?;
    if t == 0.0 {
        return Ok(GridFunction::from_fn(*grid, 0.0, |x| InitialCondition::Gaussian.value(x)));
    }
    let t2 = t * t;
    let norm = 1.0 / PI.sqrt();
    on_grid(grid, t, |x| {
        let f = |e: f64| {
            let w = e * t2;
            let d = 1.0 + 4.0 * alpha * w;
            let s = x + beta * w;
            ls(e) * (t - w - s * s / d).exp() * norm / d.sqrt()
        };
        Ok(half_line(f, shift_breaks(x, beta * t2, Some((-6.0, 6.0))), quad)?.value)
    })
}

/// `(1/(2√(πy))) ∫ e^{-(x-σ)²/(4y)} g(σ) dσ` by quadrature in `s = (σ - x)/(2√y)`.
pub fn gauss_weierstrass(
    g: &InitialCondition,
    y: f64,
    grid: &Grid,
    quad: &QuadratureSpec,
) -> Result<GridFunction, EvolutionError> {
    if !(y > 0.0) || !y.is_finite() {
        return Err(EvolutionError::Domain(format!("Gauss-Weierstrass parameter y = {y} must be positive")));
    }
    if let InitialCondition::Tabulated(f) = g {
        let edge = f.samples()[0].abs().max(f.samples()[f.samples().len() - 1].abs());
        if edge > 1e-12 * f.max_abs().max(f64::MIN_POSITIVE) {
            log::warn!("tabulated data is {edge:e} at the edge of its support; the transform is truncated there");
        }
    }
    let r = 2.0 * y.sqrt();
    let norm = 1.0 / PI.sqrt();
    on_grid(grid, 0.0, |x| {
        let est = match g {
            InitialCondition::Tabulated(f) => {
                let c = 1.0 / (2.0 * (PI * y).sqrt());
                f.integrate_against(|s| c * (-(x - s) * (x - s) / (4.0 * y)).exp(), x - 20.0 * r, x + 20.0 * r, quad)?
            }
            _ => quadrature::integrate_real_line(|s| norm * (-s * s).exp() * g.value(x + r * s), quad)?,
        };
        Ok(est.value)
    })
}
