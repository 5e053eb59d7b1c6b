//! Named invariant suites behind `relheat verify`.
//!
//! Each check reports a pass flag and a short measured detail; errors from
//! the library count as failures rather than aborting the suite.

use std::fmt;

use anyhow::Result;

use relheat::dirac::{pauli_identities, two_component_evolve, Generator};
use relheat::evolution::{
    evolve_gaussian_drift, evolve_gen_ab_gaussian, evolve_levy_convolution, evolve_relheat_gaussian, evolve_spectral,
    moment, telegrapher_solve, Grid, GridFunction, InitialCondition, SymbolSpec,
};
use relheat::expansion::{basis_polynomial, reconstruct, rhp_coefficients, ExpansionInput};
use relheat::polynomials::{
    bessel_carlitz, bessel_moment, family_polynomial, gen_bessel_ab, gen_bessel_ab_integral, gen_bessel_lk,
    gen_bessel_lk_all, integer, lowering_check, moment_lk, pde_residual, rational, recurrence_check, rnp, rodrigues_lk,
    to_f64, Family, PdeFamily, RationalPoly, Variable,
};
use relheat::quadrature::{integrate_real_line, integrate_semi_axis, Mapping, QuadratureSpec};
use relheat::stable_dist::{stable_density, stable_laplace, stable_pdf_integral, StableIndex};

use crate::config::{Params, Suite};
use crate::CliError;

#[derive(Clone, Debug)]
pub struct Check {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

impl fmt::Display for Check {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.passed { "PASS" } else { "FAIL" };
        write!(f, "{tag} {}", self.name)?;
        if !self.detail.is_empty() {
            write!(f, " ({})", self.detail)?;
        }
        Ok(())
    }
}

fn check(name: impl Into<String>, body: impl FnOnce() -> Result<(bool, String)>) -> Check {
    let name = name.into();
    match body() {
        Ok((passed, detail)) => Check { name, passed, detail },
        Err(e) => Check { name, passed: false, detail: format!("error: {e:#}") },
    }
}

/// Passes when `err <= tol`, reporting the measured value.
fn within(err: f64, tol: f64) -> (bool, String) {
    (err <= tol, format!("max error {err:.2e}, tolerance {tol:.0e}"))
}

fn idx(l: u32, k: u32) -> StableIndex {
    StableIndex::new(l, k).expect("valid index")
}

fn max_diff(a: &GridFunction, b: &GridFunction) -> f64 {
    a.samples().iter().zip(b.samples()).map(|(x, y)| (x - y).abs()).fold(0.0, f64::max)
}

fn first_failure(n_max: u32, ok: impl Fn(u32) -> bool) -> (bool, String) {
    match (0..=n_max).find(|&n| !ok(n)) {
        None => (true, format!("n <= {n_max}")),
        Some(n) => (false, format!("first failure at n = {n}")),
    }
}

pub fn polynomials(n_max: u32) -> Vec<Check> {
    let mut out = vec![
        check("three-term recurrence", || Ok(first_failure(n_max, |n| recurrence_check(n).is_zero()))),
        check("lowering relation", || Ok(first_failure(n_max, |n| lowering_check(n).is_zero()))),
        check("RNP heat-type equation", || Ok(first_failure(n_max, |n| pde_residual(PdeFamily::Rnp, n).is_zero()))),
        check("RHP heat-type equation", || Ok(first_failure(n_max, |n| pde_residual(PdeFamily::Rhp, n).is_zero()))),
        check("B^(1,2) equals Carlitz Bessel", || {
            let egf = gen_bessel_lk_all(n_max, idx(1, 2));
            Ok(first_failure(n_max, |n| egf[n as usize] == bessel_carlitz(n)))
        }),
        check("B~(0,2) equals Carlitz Bessel", || {
            Ok(first_failure(n_max, |n| gen_bessel_ab(n, &integer(0), &integer(2)) == bessel_carlitz(n)))
        }),
        check("RNP generating function equals explicit sum", || {
            Ok(first_failure(n_max.min(12), |n| family_polynomial(&Family::Rnp, n) == rnp(n)))
        }),
    ];
    for (l, k) in [(1, 2), (1, 3), (2, 3), (3, 4)] {
        out.push(check(format!("Rodrigues equals generating function for {l}/{k}"), || {
            let egf = gen_bessel_lk_all(n_max, idx(l, k));
            Ok(first_failure(n_max, |n| rodrigues_lk(n, idx(l, k)).is_ok_and(|p| p == egf[n as usize])))
        }));
    }
    out
}

pub fn stable(q: &QuadratureSpec) -> Vec<Check> {
    let mut out = Vec::new();
    for (l, k, tol) in [(1, 2, 1e-8), (1, 3, 1e-6), (2, 3, 1e-6)] {
        out.push(check(format!("Laplace identity for {l}/{k}"), || {
            let mut worst: f64 = 0.0;
            for p in [0.5_f64, 1.0, 2.0, 4.0] {
                let got = stable_laplace(idx(l, k), p, q)?.value;
                worst = worst.max((got - (-p.powf(l as f64 / k as f64)).exp()).abs());
            }
            Ok(within(worst, tol))
        }));
    }
    for (l, k) in [(1, 3), (2, 3), (3, 4)] {
        out.push(check(format!("series and integral routes agree for {l}/{k}"), || {
            let mut worst: f64 = 0.0;
            for u in [0.5, 1.0, 2.0, 5.0, 20.0] {
                let a = stable_density(idx(l, k), u);
                let b = stable_pdf_integral(idx(l, k), u)?;
                worst = worst.max(((a - b) / b).abs());
            }
            Ok(within(worst, 1e-9))
        }));
        out.push(check(format!("unit mass for {l}/{k}"), || {
            let m = integrate_semi_axis(|u| stable_density(idx(l, k), u), q)?;
            Ok(within((m.value - 1.0).abs(), 1e-6))
        }));
    }
    out
}

pub fn quadrature(q: &QuadratureSpec) -> Vec<Check> {
    use std::f64::consts::PI;
    type Case = (&'static str, fn(&QuadratureSpec) -> Result<relheat::quadrature::Estimate, anyhow::Error>, f64);
    let cases: [Case; 4] = [
        ("exponential on the half line", |q| Ok(integrate_semi_axis(|u| (-u).exp(), q)?), 1.0),
        ("Cauchy tail on the half line", |q| Ok(integrate_semi_axis(|u| 1.0 / (1.0 + u * u), q)?), PI / 2.0),
        ("Gaussian on the real line", |q| Ok(integrate_real_line(|x| (-x * x).exp(), q)?), PI.sqrt()),
        ("sech on the real line", |q| Ok(integrate_real_line(|x| 1.0 / x.cosh(), q)?), PI),
    ];
    let mut out = Vec::new();
    for (name, run, exact) in cases {
        for mapping in [Mapping::Rational, Mapping::Exp, Mapping::None] {
            out.push(check(format!("{name}, {mapping:?} mapping"), || {
                let est = run(&q.with_mapping(mapping))?;
                let err = (est.value - exact).abs();
                let tol = q.rel_tol * exact.abs() * 10.0;
                let honest = est.error >= err;
                Ok((err <= tol && honest, format!("error {err:.2e}, estimate {:.2e}", est.error)))
            }));
        }
    }
    out
}

pub fn moments(q: &QuadratureSpec) -> Vec<Check> {
    let rel = |got: f64, want: f64| (got - want).abs() / want.abs().max(1.0);
    vec![
        check("bessel_moment matches B_n", || {
            let mut worst: f64 = 0.0;
            for (n, t) in [(0, 0.7), (1, 1.0), (3, 2.0), (5, 0.4), (8, 1.5)] {
                worst = worst.max(rel(bessel_moment(n, t, q)?.value, bessel_carlitz(n).eval_f64(t)));
            }
            Ok(within(worst, 1e-8))
        }),
        check("gen_bessel_ab_integral matches B~_n", || {
            let mut worst: f64 = 0.0;
            for (n, a, b, s) in [
                (0, (1, 1), (1, 1), 1.0),
                (1, (1, 1), (3, 1), 2.0),
                (2, (1, 1), (0, 1), 1.0),
                (4, (1, 2), (3, 2), 0.8),
                (6, (2, 1), (1, 1), 1.3),
            ] {
                let (a, b) = (rational(a.0, a.1), rational(b.0, b.1));
                let got = gen_bessel_ab_integral(n, to_f64(&a), to_f64(&b), s, q)?.value;
                worst = worst.max(rel(got, gen_bessel_ab(n, &a, &b).eval_f64(s)));
            }
            Ok(within(worst, 1e-8))
        }),
        check("moment_lk matches B^(l,k)_n", || {
            let mut worst: f64 = 0.0;
            for (n, (l, k), s) in
                [(0, (1, 3), 1.3), (1, (1, 2), 1.0), (1, (1, 3), 2.0), (3, (2, 3), 1.5), (4, (3, 4), 0.9)]
            {
                let got = moment_lk(n, idx(l, k), s, q)?.value;
                worst = worst.max(rel(got, gen_bessel_lk(n, idx(l, k)).eval_f64(s)));
            }
            Ok(within(worst, 1e-8))
        }),
    ]
}

pub fn evolution(q: &QuadratureSpec) -> Vec<Check> {
    let g = InitialCondition::Gaussian;
    let mut out = Vec::new();
    for (name, spec) in [("sqrt_drift", SymbolSpec::SqrtDrift), ("rel_heat", SymbolSpec::RelHeat)] {
        out.push(check(format!("{name}: convolution and spectral routes agree on [-8,8]"), || {
            let grid = Grid::with_step(-8.0, 8.0, 0.125)?;
            let mut worst: f64 = 0.0;
            for t in [0.5, 1.0, 2.0] {
                let a = evolve_levy_convolution(&g, t, &spec, &grid, q)?;
                let b = evolve_spectral(&g, t, &spec, &grid, q)?;
                worst = worst.max(max_diff(&a, &b));
            }
            Ok(within(worst, 1e-6))
        }));
    }
    out.push(check("sqrt_drift: mass 1 and mean -t", || {
        let grid = Grid::with_step(-90.0, 12.0, 0.125)?;
        let mut worst: f64 = 0.0;
        for t in [1.0, 2.0] {
            for f in [evolve_gaussian_drift(t, &grid, q)?, evolve_spectral(&g, t, &SymbolSpec::SqrtDrift, &grid, q)?] {
                worst = worst.max((moment(&f, 0)? - 1.0).abs()).max((moment(&f, 1)? + t).abs());
            }
        }
        Ok(within(worst, 1e-6))
    }));
    out.push(check("rel_heat: mass 1 and variance 1/2 + t", || {
        let grid = Grid::with_step(-45.0, 45.0, 0.125)?;
        let mut worst: f64 = 0.0;
        for t in [1.0, 2.0] {
            for f in [evolve_relheat_gaussian(t, &grid, q)?, evolve_spectral(&g, t, &SymbolSpec::RelHeat, &grid, q)?] {
                worst = worst.max((moment(&f, 0)? - 1.0).abs()).max((moment(&f, 2)? - 0.5 - t).abs());
            }
        }
        Ok(within(worst, 1e-6))
    }));
    out.push(check("gen_ab, gen_lk and telegrapher conserve mass", || {
        let grid = Grid::with_step(-90.0, 40.0, 0.125)?;
        let ab = SymbolSpec::GenAb { alpha: 1.0, beta: 1.0 };
        let lk = SymbolSpec::GenLk { idx: idx(1, 3), mu: 2 };
        let mut worst: f64 = 0.0;
        for t in [1.0, 2.0] {
            for f in [
                evolve_gen_ab_gaussian(1.0, 1.0, t, &grid, q)?,
                evolve_spectral(&g, t, &ab, &grid, q)?,
                evolve_spectral(&g, t, &lk, &grid, q)?,
                telegrapher_solve(&g, &InitialCondition::Zero, t, &grid, q)?,
            ] {
                worst = worst.max((moment(&f, 0)? - 1.0).abs());
            }
        }
        Ok(within(worst, 1e-6))
    }));
    out.push(check("spectral semigroup: two steps of 0.5 equal one of 1", || {
        let grid = Grid::with_step(-45.0, 45.0, 0.0625)?;
        let half = evolve_spectral(&g, 0.5, &SymbolSpec::RelHeat, &grid, q)?;
        let two = evolve_spectral(&InitialCondition::Tabulated(half), 0.5, &SymbolSpec::RelHeat, &grid, q)?;
        let one = evolve_spectral(&g, 1.0, &SymbolSpec::RelHeat, &grid, q)?;
        Ok(within(max_diff(&one, &two), 1e-6))
    }));
    out.push(check("gen_ab Gaussian closed form matches spectral route", || {
        let grid = Grid::with_step(-8.0, 8.0, 0.125)?;
        let a = evolve_gen_ab_gaussian(1.0, 1.0, 1.0, &grid, q)?;
        let b = evolve_spectral(&g, 1.0, &SymbolSpec::GenAb { alpha: 1.0, beta: 1.0 }, &grid, q)?;
        Ok(within(max_diff(&a, &b), 1e-6))
    }));
    out
}

pub fn expansion(q: &QuadratureSpec) -> Vec<Check> {
    let mut out = Vec::new();
    for y in [0.5, 1.0, 2.0] {
        out.push(check(format!("round trip c_n(RH_m) = delta_nm, y = {y}"), || {
            let mut worst: f64 = 0.0;
            for m in 0..=6 {
                let res = rhp_coefficients(&ExpansionInput::Polynomial(basis_polynomial(m, y)?), y, 6, q)?;
                for (n, c) in res.coefficients.iter().enumerate() {
                    let want = if n as u32 == m { 1.0 } else { 0.0 };
                    worst = worst.max((c - want).abs());
                }
            }
            Ok(within(worst, 1e-6))
        }));
    }
    out.push(check("cubic reconstruction on [-3,3]", || {
        let cubic =
            RationalPoly::from_coeffs(vec![integer(1), rational(-2, 1), rational(1, 2), integer(3)], Variable::X);
        let grid = Grid::new(-3.0, 3.0, 61)?;
        let mut worst: f64 = 0.0;
        for y in [0.5, 1.0, 2.0] {
            let res = rhp_coefficients(&ExpansionInput::Polynomial(cubic.clone()), y, 3, q)?;
            let f = reconstruct(&res, &grid)?;
            for (x, v) in f.xs().iter().zip(f.samples()) {
                worst = worst.max((v - cubic.eval_f64(*x)).abs());
            }
        }
        Ok(within(worst, 1e-5))
    }));
    out
}

/// Largest fourth-order residual of `(∂t-1)²φ - (1-∂x²)φ` at `t = 1`.
pub fn dirac_residual(step: f64, q: &QuadratureSpec) -> Result<f64> {
    let grid = Grid::with_step(-8.0, 8.0, step)?;
    let g = InitialCondition::Gaussian;
    let mut levels = Vec::new();
    for j in -2..=2 {
        let t = 1.0 + j as f64 * step;
        levels.push(two_component_evolve(&g, &InitialCondition::Zero, t, Generator::Factorized, &grid, q)?);
    }
    let h2 = step * step;
    let mut worst: f64 = 0.0;
    for pick in [0, 1] {
        let f: Vec<&[f64]> =
            levels.iter().map(|l| if pick == 0 { l.phi1().samples() } else { l.phi2().samples() }).collect();
        let c = f[2];
        for i in 2..c.len() - 2 {
            let tt = (-f[4][i] + 16.0 * f[3][i] - 30.0 * c[i] + 16.0 * f[1][i] - f[0][i]) / (12.0 * h2);
            let t1 = (-f[4][i] + 8.0 * f[3][i] - 8.0 * f[1][i] + f[0][i]) / (12.0 * step);
            let xx = (-c[i + 2] + 16.0 * c[i + 1] - 30.0 * c[i] + 16.0 * c[i - 1] - c[i - 2]) / (12.0 * h2);
            worst = worst.max((tt - 2.0 * t1 + xx).abs());
        }
    }
    Ok(worst)
}

pub fn dirac(q: &QuadratureSpec) -> Vec<Check> {
    let report = pauli_identities();
    let mut out: Vec<Check> =
        report.checks.iter().map(|c| Check { name: c.name.clone(), passed: c.holds, detail: String::new() }).collect();
    out.push(check("two-component telegrapher residual at t = 1, step 1/64", || {
        Ok(within(dirac_residual(1.0 / 64.0, q)?, 1e-4))
    }));
    out
}

pub fn suite(s: Suite, n_max: u32, q: &QuadratureSpec) -> Vec<Check> {
    match s {
        Suite::Polynomials => polynomials(n_max),
        Suite::Stable => stable(q),
        Suite::Quadrature => quadrature(q),
        Suite::Moments => moments(q),
        Suite::Evolution => evolution(q),
        Suite::Expansion => expansion(q),
        Suite::Dirac => dirac(q),
        Suite::All => [
            Suite::Polynomials,
            Suite::Stable,
            Suite::Quadrature,
            Suite::Moments,
            Suite::Evolution,
            Suite::Expansion,
            Suite::Dirac,
        ]
        .into_iter()
        .flat_map(|s| suite(s, n_max, q))
        .collect(),
    }
}

pub const DEFAULT_NMAX: u32 = 30;

pub fn run(p: &Params) -> Result<(), CliError> {
    p.only("verify", &["suite", "nmax"])?;
    let s = crate::config::require(&p.suite, "suite", "verify")?;
    let checks = suite(s, p.nmax.unwrap_or(DEFAULT_NMAX), &QuadratureSpec::default());
    for c in &checks {
        println!("{c}");
    }
    let failed = checks.iter().filter(|c| !c.passed).count();
    println!("{} of {} checks passed", checks.len() - failed, checks.len());
    if failed > 0 {
        return Err(CliError::ChecksFailed { failed, total: checks.len() });
    }
    Ok(())
}
