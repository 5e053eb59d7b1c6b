use std::f64::consts::PI;

use proptest::prelude::*;
use relheat::polynomials::{
    bessel_carlitz, bessel_moment, gen_bessel_ab, gen_bessel_ab_integral, gen_bessel_lk, moment_lk, rational, Rational,
};
use relheat::quadrature::{integrate_real_line, integrate_semi_axis, Estimate, Mapping, QuadratureSpec};
use relheat::stable_dist::{levy_smirnov_pdf, stable_density, stable_laplace, StableIndex};

fn idx(l: u32, k: u32) -> StableIndex {
    StableIndex::new(l, k).unwrap()
}

#[test]
fn laplace_identity() {
    let q = QuadratureSpec::default();
    for (index, tol) in [(idx(1, 2), 1e-8), (idx(1, 3), 1e-6), (idx(2, 3), 1e-6)] {
        for p in [0.5_f64, 1.0, 2.0, 4.0] {
            let got = stable_laplace(index, p, &q).unwrap().value;
            let want = (-p.powf(index.alpha())).exp();
            assert!((got - want).abs() < tol, "{index} p={p}: {got} vs {want}");
        }
    }
}

fn rel_close(got: f64, want: f64, tol: f64) -> bool {
    (got - want).abs() <= tol * want.abs().max(1.0)
}

#[test]
fn moment_routes_match_exact_polynomials() {
    let q = QuadratureSpec::default();
    for (n, t) in [(0, 0.7), (1, 1.0), (3, 2.0), (5, 0.4), (8, 1.5)] {
        let want = bessel_carlitz(n).eval_f64(t);
        let got = bessel_moment(n, t, &q).unwrap().value;
        assert!(rel_close(got, want, 1e-8), "B_{n}({t}): {got} vs {want}");
    }
    for (n, a, b, s) in [
        (0, rational(1, 1), rational(1, 1), 1.0),
        (1, rational(1, 1), rational(3, 1), 2.0),
        (2, rational(1, 1), rational(0, 1), 1.0),
        (4, rational(1, 2), rational(3, 2), 0.8),
        (6, rational(2, 1), rational(1, 1), 1.3),
    ] {
        let want = gen_bessel_ab(n, &a, &b).eval_f64(s);
        let got = gen_bessel_ab_integral(n, to_f(&a), to_f(&b), s, &q).unwrap().value;
        assert!(rel_close(got, want, 1e-8), "n={n}: {got} vs {want}");
    }
    for (n, index, s) in
        [(0, idx(1, 3), 1.3), (1, idx(1, 2), 1.0), (1, idx(1, 3), 2.0), (3, idx(2, 3), 1.5), (4, idx(3, 4), 0.9)]
    {
        let want = gen_bessel_lk(n, index).eval_f64(s);
        let got = moment_lk(n, index, s, &q).unwrap().value;
        assert!(rel_close(got, want, 1e-8), "{index} n={n} s={s}: {got} vs {want}");
    }
}

fn to_f(r: &Rational) -> f64 {
    relheat::polynomials::to_f64(r)
}

type Case = (&'static str, Box<dyn Fn(&QuadratureSpec) -> Estimate>, f64);

fn suite() -> Vec<Case> {
    let ls = |k: f64| levy_smirnov_pdf(k).unwrap_or(0.0);
    let mut cases: Vec<Case> = vec![
        ("exp", Box::new(|q| integrate_semi_axis(|u| (-u).exp(), q).unwrap()), 1.0),
        (
            "laplace 1/2 at 1",
            Box::new(move |q| integrate_semi_axis(|k| ls(k) * (-k).exp(), q).unwrap()),
            (-1.0_f64).exp(),
        ),
        (
            "first moment at t=2",
            Box::new(move |q| integrate_semi_axis(|k| k * ls(k) * (-4.0 * k).exp(), q).unwrap()),
            (-2.0_f64).exp() / 4.0,
        ),
        ("gaussian", Box::new(|q| integrate_real_line(|x| (-x * x).exp() / PI.sqrt(), q).unwrap()), 1.0),
        ("gaussian x^2", Box::new(|q| integrate_real_line(|x| x * x * (-x * x).exp() / PI.sqrt(), q).unwrap()), 0.5),
        (
            "hermite weight",
            Box::new(|q| integrate_real_line(|x| (x * x + 2.0) * (-x * x).exp(), q).unwrap()),
            2.5 * PI.sqrt(),
        ),
        ("rational tail", Box::new(|q| integrate_semi_axis(|u| 1.0 / (1.0 + u * u), q).unwrap()), PI / 2.0),
        ("sech", Box::new(|q| integrate_real_line(|x| 1.0 / x.cosh(), q).unwrap()), PI),
    ];
    for (l, k) in [(1, 3), (2, 3)] {
        // algebraic tails u^{-1-l/k}
        let index = idx(l, k);
        cases.push((
            "stable mass",
            Box::new(move |q| integrate_semi_axis(|u| stable_density(index, u), q).unwrap()),
            1.0,
        ));
    }
    for p in [0.5, 1.0, 2.0, 4.0] {
        cases.push((
            "laplace 1/2",
            Box::new(move |q| integrate_semi_axis(|k| ls(k) * (-p * k).exp(), q).unwrap()),
            (-f64::sqrt(p)).exp(),
        ));
        let third = idx(1, 3);
        cases.push((
            "laplace 1/3",
            Box::new(move |q| integrate_semi_axis(|u| stable_density(third, u) * (-p * u).exp(), q).unwrap()),
            (-p.powf(1.0 / 3.0)).exp(),
        ));
    }
    cases
}

fn specs() -> Vec<QuadratureSpec> {
    let mut out = Vec::new();
    for mapping in [Mapping::Rational, Mapping::Exp] {
        for (r, a) in [(1e-6, 1e-9), (1e-8, 1e-11), (1e-10, 1e-13)] {
            out.push(QuadratureSpec::new(r, a).with_mapping(mapping));
        }
    }
    out
}

#[test]
fn error_estimates_are_honest() {
    let mut honest = 0;
    let mut total = 0;
    for spec in specs() {
        for (name, run, exact) in suite() {
            let est = run(&spec);
            let actual = (est.value - exact).abs();
            total += 1;
            if est.error >= actual {
                honest += 1;
            } else {
                eprintln!("{name} {spec:?}: estimate {:e} < actual {actual:e}", est.error);
            }
        }
    }
    assert!(honest as f64 >= 0.95 * total as f64, "{honest}/{total}");
}

#[test]
fn mappings_agree() {
    for (name, run, _) in suite() {
        let a = run(&QuadratureSpec::default());
        let b = run(&QuadratureSpec::default().with_mapping(Mapping::Exp));
        let c = run(&QuadratureSpec::default().with_mapping(Mapping::None));
        let tol = a.error + b.error + 1e-9 * a.value.abs().max(1e-3);
        assert!((a.value - b.value).abs() <= tol, "{name}: {} {}", a.value, b.value);
        assert!((a.value - c.value).abs() <= tol + c.error, "{name}: {} {}", a.value, c.value);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn density_is_positive_and_routes_agree(u in 0.3f64..40.0, which in 0usize..3) {
        let index = [idx(1, 3), idx(2, 3), idx(3, 4)][which];
        let a = stable_density(index, u);
        let b = relheat::stable_dist::stable_pdf_integral(index, u).unwrap();
        prop_assert!(a > 0.0);
        prop_assert!(((a - b) / b).abs() < 1e-9, "{} {} {}", u, a, b);
    }

    #[test]
    fn laplace_transform_is_completely_monotone_in_p(p in 0.1f64..6.0) {
        let q = QuadratureSpec::default();
        let index = idx(1, 3);
        let a = stable_laplace(index, p, &q).unwrap().value;
        let b = stable_laplace(index, p * 1.5, &q).unwrap().value;
        prop_assert!(b < a);
        prop_assert!((a - (-p.powf(1.0 / 3.0)).exp()).abs() < 1e-6);
    }

    #[test]
    fn bessel_moments_track_the_polynomials(n in 0u32..7, t in 0.2f64..3.0) {
        let got = bessel_moment(n, t, &QuadratureSpec::default()).unwrap().value;
        let want = bessel_carlitz(n).eval_f64(t);
        prop_assert!(rel_close(got, want, 1e-8));
    }
}
