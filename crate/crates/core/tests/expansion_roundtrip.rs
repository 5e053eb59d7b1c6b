use relheat::evolution::{Grid, GridFunction};
use relheat::expansion::{basis_polynomial, reconstruct, rhp_coefficients, ExpansionInput};
use relheat::polynomials::{RationalPoly, Variable};
use relheat::quadrature::QuadratureSpec;

#[test]
fn basis_functions_expand_to_unit_vectors() {
    let q = QuadratureSpec::default();
    for y in [0.5, 1.0, 2.0] {
        for m in 0..=6 {
            let f = ExpansionInput::Polynomial(basis_polynomial(m, y).unwrap());
            let res = rhp_coefficients(&f, y, 6, &q).unwrap();
            for (n, c) in res.coefficients.iter().enumerate() {
                let want = if n as u32 == m { 1.0 } else { 0.0 };
                assert!((c - want).abs() < 1e-6, "y={y} m={m} n={n}: {c}");
            }
        }
    }
}

#[test]
fn cubic_is_reconstructed() {
    let q = QuadratureSpec::default();
    let cubic = RationalPoly::monomial(relheat::polynomials::integer(1), 3, Variable::X);
    let res = rhp_coefficients(&ExpansionInput::Polynomial(cubic), 1.0, 6, &q).unwrap();
    let grid = Grid::with_step(-3.0, 3.0, 0.125).unwrap();
    let back = reconstruct(&res, &grid).unwrap();
    for (x, v) in back.xs().iter().zip(back.samples()) {
        assert!((v - x * x * x).abs() < 1e-5, "x={x}");
    }
}

#[test]
fn closure_and_parity() {
    let q = QuadratureSpec::default();
    let even = RationalPoly::from_integers(&[2, 0, -3, 0, 1], Variable::X);
    let odd = RationalPoly::from_integers(&[0, 1, 0, 5, 0, -1], Variable::X);
    for (p, parity) in [(even, 0), (odd, 1)] {
        let d = p.degree().unwrap();
        let res = rhp_coefficients(&ExpansionInput::Polynomial(p.clone()), -1.5, 8, &q).unwrap();
        for (n, c) in res.coefficients.iter().enumerate() {
            if n > d || n % 2 != parity {
                assert!(c.abs() < 1e-8, "n={n}: {c}");
            }
        }
        let grid = Grid::with_step(-2.0, 2.0, 0.25).unwrap();
        let back = reconstruct(&res, &grid).unwrap();
        for (x, v) in back.xs().iter().zip(back.samples()) {
            let want = p.eval_f64(*x);
            assert!((v - want).abs() < 1e-7 * want.abs().max(1.0), "x={x}");
        }
    }
}

#[test]
fn tabulated_input_matches_polynomial_path() {
    let q = QuadratureSpec::default();
    let p = basis_polynomial(2, 1.0).unwrap();
    let grid = Grid::with_step(-40.0, 40.0, 1.0 / 32.0).unwrap();
    let tab = ExpansionInput::Tabulated(GridFunction::from_fn(grid, 0.0, |x| p.eval_f64(x)));
    let res = rhp_coefficients(&tab, 1.0, 4, &q).unwrap();
    for (n, c) in res.coefficients.iter().enumerate() {
        let want = if n == 2 { 1.0 } else { 0.0 };
        assert!((c - want).abs() < 1e-6, "n={n}: {c}");
    }
}

#[test]
fn error_estimates_are_reported() {
    let q = QuadratureSpec::default();
    let res = rhp_coefficients(&ExpansionInput::Polynomial(basis_polynomial(3, 2.0).unwrap()), 2.0, 4, &q).unwrap();
    assert_eq!(res.error_estimates.len(), 5);
    assert!(res.error_estimates.iter().all(|e| e.is_finite() && *e >= 0.0));
    assert!(rhp_coefficients(&ExpansionInput::Polynomial(RationalPoly::one(Variable::X)), 0.0, 2, &q).is_err());
}

#[test]
fn coarse_wide_table_resolves_narrow_kernels() {
    // at small η the projection kernel is far narrower than a step of 1/8
    let q = QuadratureSpec::default();
    let gauss = |x: f64| (-x * x).exp();
    let coarse = Grid::with_step(-30.0, 30.0, 1.0 / 8.0).unwrap();
    let fine = Grid::with_step(-10.0, 10.0, 1.0 / 64.0).unwrap();
    let a =
        rhp_coefficients(&ExpansionInput::Tabulated(GridFunction::from_fn(coarse, 0.0, gauss)), 0.5, 6, &q).unwrap();
    let b = rhp_coefficients(&ExpansionInput::Tabulated(GridFunction::from_fn(fine, 0.0, gauss)), 0.5, 6, &q).unwrap();
    for (n, (x, z)) in a.coefficients.iter().zip(&b.coefficients).enumerate() {
        // the two tables differ by cubic interpolation error at step 1/8
        assert!((x - z).abs() < 2e-4, "n={n}: {x} vs {z}");
        if n % 2 == 1 {
            assert!(x.abs() < 1e-12, "n={n}: {x}");
        }
    }
}
