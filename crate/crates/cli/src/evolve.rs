use std::path::Path;

use anyhow::Context;

use relheat::dirac::{two_component_evolve, Generator};
use relheat::evolution::{
    evolve_gaussian_drift, evolve_gen_ab_gaussian, evolve_levy_convolution, evolve_monomial, evolve_relheat_gaussian,
    evolve_spectral, telegrapher_solve, Grid, GridFunction, InitialCondition, SymbolSpec,
};
use relheat::quadrature::QuadratureSpec;

use crate::config::{require, Equation, Format, GeneratorArg, IcArg, Method, Params};
use crate::output::{read_table, write_csv, write_json};
use crate::poly::stable_index;
use crate::CliError;

const DEFAULT_WINDOW: (f64, f64, usize) = (-8.0, 8.0, 257);

pub(crate) fn quad(p: &Params) -> Result<QuadratureSpec, CliError> {
    let d = QuadratureSpec::default();
    let q = QuadratureSpec::new(p.rel_tol.unwrap_or(d.rel_tol), p.abs_tol.unwrap_or(d.abs_tol));
    q.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(q)
}

pub(crate) fn grid(p: &Params, default: (f64, f64, usize)) -> Result<Grid, CliError> {
    let (lo, hi, n) = default;
    Grid::new(p.x_min.unwrap_or(lo), p.x_max.unwrap_or(hi), p.points.unwrap_or(n))
        .map_err(|e| CliError::Usage(e.to_string()))
}

fn real_flag(value: &Option<String>, flag: &str, context: &str) -> Result<f64, CliError> {
    let s = require(value, flag, context)?;
    s.trim()
        .parse::<f64>()
        .ok()
        .filter(|v| v.is_finite())
        .ok_or_else(|| CliError::Usage(format!("--{flag}: expected a real number, got {s:?}")))
}

fn equation_name(e: Equation) -> &'static str {
    match e {
        Equation::SqrtDrift => "sqrt_drift",
        Equation::RelHeat => "rel_heat",
        Equation::GenAb => "gen_ab",
        Equation::GenLk => "gen_lk",
        Equation::Telegrapher => "telegrapher",
        Equation::Dirac => "dirac",
    }
}

fn initial_condition(p: &Params, context: &str) -> Result<InitialCondition, CliError> {
    match (&p.input, p.ic) {
        (Some(_), Some(_)) => Err(CliError::Usage(format!("--ic and --input are exclusive for {context}"))),
        (Some(path), None) => Ok(InitialCondition::Tabulated(read_table(path)?)),
        (None, Some(IcArg::Monomial)) => Ok(InitialCondition::Monomial(require(&p.n, "n", context)?)),
        (None, _) => {
            if p.n.is_some() {
                return Err(CliError::Usage(format!("--n only applies to --ic monomial ({context})")));
            }
            Ok(InitialCondition::Gaussian)
        }
    }
}

fn symbol(p: &Params, eq: Equation, context: &str) -> Result<SymbolSpec, CliError> {
    let spec = match eq {
        Equation::SqrtDrift => SymbolSpec::SqrtDrift,
        Equation::RelHeat => SymbolSpec::RelHeat,
        Equation::GenAb => SymbolSpec::GenAb {
            alpha: real_flag(&p.alpha, "alpha", context)?,
            beta: real_flag(&p.beta, "beta", context)?,
        },
        Equation::GenLk => SymbolSpec::GenLk { idx: stable_index(p, context)?, mu: require(&p.mu, "mu", context)? },
        Equation::Telegrapher | Equation::Dirac => unreachable!("not a scalar symbol"),
    };
    spec.validate().map_err(|e| CliError::Usage(e.to_string()))?;
    Ok(spec)
}

fn time(p: &Params, context: &str) -> Result<f64, CliError> {
    let t = require(&p.t, "t", context)?;
    if t >= 0.0 && t.is_finite() {
        Ok(t)
    } else {
        Err(CliError::Usage(format!("--t must be finite and nonnegative, got {t}")))
    }
}

fn scalar(
    p: &Params,
    eq: Equation,
    context: &str,
    t: f64,
    grid: &Grid,
    q: &QuadratureSpec,
) -> Result<GridFunction, CliError> {
    let spec = symbol(p, eq, context)?;
    let ic = initial_condition(p, context)?;
    let method = p.method.unwrap_or_default();
    let solved = match (method, &ic) {
        (Method::Convolution, _) => evolve_levy_convolution(&ic, t, &spec, grid, q),
        (Method::Spectral, InitialCondition::Monomial(_)) => {
            return Err(CliError::Usage(
                "monomial data has no Fourier transform; use --method convolution or closed".into(),
            ))
        }
        (Method::Spectral, _) => evolve_spectral(&ic, t, &spec, grid, q),
        (Method::Closed, InitialCondition::Monomial(n)) => {
            let exact = evolve_monomial(*n, &spec).context("exact monomial solution")?;
            Ok(GridFunction::from_fn(*grid, t, |x| exact.eval(x, t)))
        }
        (Method::Closed, InitialCondition::Gaussian) => match spec {
            SymbolSpec::SqrtDrift => evolve_gaussian_drift(t, grid, q),
            SymbolSpec::RelHeat => evolve_relheat_gaussian(t, grid, q),
            SymbolSpec::GenAb { alpha, beta } => evolve_gen_ab_gaussian(alpha, beta, t, grid, q),
            SymbolSpec::GenLk { .. } => {
                return Err(CliError::Usage("no closed-form solver for gen_lk; use convolution or spectral".into()))
            }
        },
        (Method::Closed, _) => {
            return Err(CliError::Usage("--method closed needs --ic gaussian or --ic monomial".into()))
        }
    };
    Ok(solved.with_context(|| format!("solving {context} at t = {t}"))?)
}

pub fn run(p: &Params) -> Result<(), CliError> {
    let eq = require(&p.equation, "equation", "evolve")?;
    let context = format!("evolve --equation {}", equation_name(eq));
    let mut allowed =
        vec!["equation", "t", "ic", "input", "n", "x-min", "x-max", "points", "rel-tol", "abs-tol", "out", "format"];
    match eq {
        Equation::SqrtDrift | Equation::RelHeat => allowed.push("method"),
        Equation::GenAb => allowed.extend(["method", "alpha", "beta"]),
        Equation::GenLk => allowed.extend(["method", "l", "k", "mu"]),
        Equation::Telegrapher => {}
        Equation::Dirac => allowed.push("generator"),
    }
    p.only(&context, &allowed)?;
    let t = time(p, &context)?;
    let grid = grid(p, DEFAULT_WINDOW)?;
    let q = quad(p)?;
    let out = p.out.as_deref();
    let format = p.format.unwrap_or(Format::Csv);
    match eq {
        Equation::Telegrapher => {
            let ic = initial_condition(p, &context)?;
            let f = telegrapher_solve(&ic, &InitialCondition::Zero, t, &grid, &q)
                .with_context(|| format!("solving {context} at t = {t}"))?;
            emit(out, format, &f, None)
        }
        Equation::Dirac => {
            let ic = initial_condition(p, &context)?;
            let generator = match p.generator.unwrap_or_default() {
                GeneratorArg::Factorized => Generator::Factorized,
                GeneratorArg::Halved => Generator::Halved,
            };
            let phi = two_component_evolve(&ic, &InitialCondition::Zero, t, generator, &grid, &q)
                .with_context(|| format!("solving {context} at t = {t}"))?;
            emit(out, format, phi.phi1(), Some(phi.phi2()))
        }
        _ => {
            let f = scalar(p, eq, &context, t, &grid, &q)?;
            emit(out, format, &f, None)
        }
    }
}

fn emit(out: Option<&Path>, format: Format, f: &GridFunction, second: Option<&GridFunction>) -> Result<(), CliError> {
    let xs = f.xs();
    match (format, second) {
        (Format::Csv, None) => write_csv(out, &["x", "F"], &[&xs, f.samples()]),
        (Format::Csv, Some(g)) => write_csv(out, &["x", "phi1", "phi2"], &[&xs, f.samples(), g.samples()]),
        (Format::Json, None) => write_json(out, &serde_json::json!({ "t": f.time(), "x": xs, "F": f.samples() })),
        (Format::Json, Some(g)) => {
            write_json(out, &serde_json::json!({ "t": f.time(), "x": xs, "phi1": f.samples(), "phi2": g.samples() }))
        }
    }
}

/// Windows wide enough that each curve has decayed below 1e-9 at the edges
/// for t ≤ 2. The drift solution has an exponential tail on the left only.
fn figure_window(which: u8) -> (f64, f64, usize) {
    match which {
        1 => (-90.0, 12.0, 817),
        2 => (-45.0, 45.0, 721),
        _ => (-20.0, 20.0, 321),
    }
}

pub const FIGURE_TIMES: [u32; 3] = [0, 1, 2];

pub fn figure_curve(which: u8, t: f64, grid: &Grid, q: &QuadratureSpec) -> anyhow::Result<GridFunction> {
    let g = InitialCondition::Gaussian;
    Ok(match which {
        1 => evolve_gaussian_drift(t, grid, q)?,
        2 => evolve_relheat_gaussian(t, grid, q)?,
        _ => {
            let f = telegrapher_solve(&g, &InitialCondition::Zero, t, grid, q)?;
            let origin = Grid::new(0.0, 1.0, 2)?;
            let at_zero = telegrapher_solve(&g, &InitialCondition::Zero, t, &origin, q)?.samples()[0];
            f.map(|_, v| v / at_zero)
        }
    })
}

pub fn figures(p: &Params) -> Result<(), CliError> {
    p.only("figures", &["which", "out", "x-min", "x-max", "points", "rel-tol", "abs-tol"])?;
    let which = require(&p.which, "which", "figures")?;
    let dir = p.out.clone().unwrap_or_else(|| ".".into());
    std::fs::create_dir_all(&dir).with_context(|| format!("cannot create {}", dir.display()))?;
    let grid = grid(p, figure_window(which))?;
    let q = quad(p)?;
    for t in FIGURE_TIMES {
        let f = figure_curve(which, t as f64, &grid, &q).with_context(|| format!("figure {which} at t = {t}"))?;
        let path = dir.join(format!("fig{which}_t{t}.csv"));
        write_csv(Some(&path), &["x", "F"], &[&f.xs(), f.samples()])?;
        log::info!("wrote {}", path.display());
    }
    Ok(())
}
