use relheat::dirac::{pauli_identities, two_component_evolve, Generator, TwoComponentGrid};
use relheat::evolution::{telegrapher_solve, Grid, InitialCondition};
use relheat::quadrature::QuadratureSpec;

const STEP: f64 = 1.0 / 64.0;

fn solve(t: f64, generator: Generator, grid: &Grid) -> TwoComponentGrid {
    two_component_evolve(
        &InitialCondition::Gaussian,
        &InitialCondition::Zero,
        t,
        generator,
        grid,
        &QuadratureSpec::default(),
    )
    .unwrap()
}

fn component(s: &TwoComponentGrid, pick: usize) -> Vec<f64> {
    if pick == 0 { s.phi1() } else { s.phi2() }.samples().to_vec()
}

/// Largest fourth-order centered residual of `(∂t-1)²φ - scale·(1-∂x²)φ`
/// over interior points, for both components at t = 1.
fn residual(generator: Generator, scale: f64) -> f64 {
    let grid = Grid::with_step(-8.0, 8.0, STEP).unwrap();
    let levels: Vec<TwoComponentGrid> = (-2..=2).map(|j| solve(1.0 + j as f64 * STEP, generator, &grid)).collect();
    let h2 = STEP * STEP;
    let mut worst: f64 = 0.0;
    for pick in [0, 1] {
        let f: Vec<Vec<f64>> = levels.iter().map(|l| component(l, pick)).collect();
        let c = &f[2];
        for i in 2..c.len() - 2 {
            let tt = (-f[4][i] + 16.0 * f[3][i] - 30.0 * c[i] + 16.0 * f[1][i] - f[0][i]) / (12.0 * h2);
            let t1 = (-f[4][i] + 8.0 * f[3][i] - 8.0 * f[1][i] + f[0][i]) / (12.0 * STEP);
            let xx = (-c[i + 2] + 16.0 * c[i + 1] - 30.0 * c[i] + 16.0 * c[i - 1] - c[i - 2]) / (12.0 * h2);
            worst = worst.max((tt - 2.0 * t1 + c[i] - scale * (c[i] - xx)).abs());
        }
    }
    worst
}

/// Same residual with three-point stencils and step `d`, on `[-3, 3]`.
fn residual_second_order(d: f64) -> f64 {
    let grid = Grid::with_step(-3.0, 3.0, d).unwrap();
    let f: Vec<Vec<f64>> =
        (-1..=1).map(|j| component(&solve(1.0 + j as f64 * d, Generator::Factorized, &grid), 0)).collect();
    let c = &f[1];
    (1..c.len() - 1)
        .map(|i| {
            let tt = (f[2][i] - 2.0 * c[i] + f[0][i]) / (d * d);
            let t1 = (f[2][i] - f[0][i]) / (2.0 * d);
            let xx = (c[i + 1] - 2.0 * c[i] + c[i - 1]) / (d * d);
            (tt - 2.0 * t1 + c[i] - (c[i] - xx)).abs()
        })
        .fold(0.0, f64::max)
}

#[test]
fn components_obey_the_telegrapher_equation() {
    let r = residual(Generator::Factorized, 1.0);
    assert!(r < 1e-4, "{r:e}");
}

#[test]
fn halved_generator_obeys_the_quartered_equation() {
    assert!(residual(Generator::Halved, 0.25) < 1e-4);
    assert!(residual(Generator::Halved, 1.0) > 1e-2);
}

#[test]
fn three_point_residual_is_pure_truncation() {
    // halving the step divides the residual by four
    let (a, b) = (residual_second_order(1.0 / 32.0), residual_second_order(1.0 / 64.0));
    assert!((a / b - 4.0).abs() < 0.05, "{a:e} {b:e}");
}

#[test]
fn first_component_is_the_scalar_telegrapher_solution() {
    // φ₁(·,0) = g and φ₂(·,0) = 0 give ∂tφ₁(·,0) = φ₁(·,0), i.e. s = g
    let grid = Grid::with_step(-6.0, 6.0, 0.25).unwrap();
    let q = QuadratureSpec::default();
    let two = solve(1.0, Generator::Factorized, &grid);
    let one = telegrapher_solve(&InitialCondition::Gaussian, &InitialCondition::Gaussian, 1.0, &grid, &q).unwrap();
    for (a, b) in two.phi1().samples().iter().zip(one.samples()) {
        assert!((a - b).abs() < 1e-9);
    }
}

#[test]
fn algebra_holds() {
    assert!(pauli_identities().all_hold());
}
