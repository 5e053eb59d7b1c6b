//! Numeric counterparts of the exact families: moments of one-sided stable
//! laws that reproduce the polynomials when integrated.

use crate::quadrature::{self, Estimate, QuadratureSpec};
use crate::stable_dist::{levy_smirnov_pdf, stable_density, StableError, StableIndex};

/// `H_n(x, y)` in floating point via `H_{n+1} = x H_n + 2 n y H_{n-1}`.
pub fn hkdf_value(n: u32, x: f64, y: f64) -> f64 {
    let (mut prev, mut cur) = (1.0, x);
    if n == 0 {
        return prev;
    }
    for m in 1..n {
        let next = x * cur + 2.0 * m as f64 * y * prev;
        prev = cur;
        cur = next;
    }
    cur
}

fn positive(v: f64) -> Result<(), StableError> {
    if v > 0.0 && v.is_finite() {
        Ok(())
    } else {
        Err(StableError::Domain(v))
    }
}

fn ls(kappa: f64) -> f64 {
    levy_smirnov_pdf(kappa).unwrap_or(0.0)
}

/// `B_n(t) = e^t ∫ g_{1/2}(η) e^{-ηt²} (2ηt²)^n dη`.
pub fn bessel_moment(n: u32, t: f64, quad: &QuadratureSpec) -> Result<Estimate, StableError> {
    positive(t)?;
    let t2 = t * t;
    let est =
        quadrature::integrate_semi_axis(|eta| ls(eta) * (t - eta * t2).exp() * (2.0 * eta * t2).powi(n as i32), quad)?;
    Ok(est)
}

/// `B̃_n(α, β; σ) = e^σ ∫ g_{1/2}(ξ) e^{-ξσ²} H_n(βξσ², αξσ²) dξ`.
pub fn gen_bessel_ab_integral(
    n: u32,
    alpha: f64,
    beta: f64,
    sigma: f64,
    quad: &QuadratureSpec,
) -> Result<Estimate, StableError> {
    positive(sigma)?;
    let s2 = sigma * sigma;
    let est = quadrature::integrate_semi_axis(
        |xi| {
            let w = xi * s2;
            ls(xi) * (sigma - w).exp() * hkdf_value(n, beta * w, alpha * w)
        },
        quad,
    )?;
    Ok(est)
}

/// `B^{(l,k)}_n(σ) = ((k/l) σ^{k/l})^n e^σ ∫ e^{-uσ^{k/l}} g_{l/k}(u) u^n du`.
pub fn moment_lk(n: u32, idx: StableIndex, sigma: f64, quad: &QuadratureSpec) -> Result<Estimate, StableError> {
    positive(sigma)?;
    let inv = 1.0 / idx.alpha();
    let a = sigma.powf(inv);
    let prefactor = (inv * a).powi(n as i32);
    let est =
        quadrature::integrate_semi_axis(|u| (sigma - u * a).exp() * stable_density(idx, u) * u.powi(n as i32), quad)?;
    Ok(Estimate { value: prefactor * est.value, error: prefactor * est.error })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polynomials::{hkdf, to_f64};

    #[test]
    fn hkdf_recurrence_matches_exact() {
        for n in 0..12 {
            let exact = hkdf(n);
            for (x, y) in [(0.3, -1.2), (2.0, 0.5), (-1.5, 3.0)] {
                let got = hkdf_value(n, x, y);
                let want: f64 = exact.terms().map(|(&(i, j), c)| to_f64(c) * x.powi(i as i32) * y.powi(j as i32)).sum();
                assert!((got - want).abs() <= 1e-12 * want.abs().max(1.0), "n={n}");
            }
        }
    }

    #[test]
    fn moment_examples() {
        let q = QuadratureSpec::default();
        assert!((bessel_moment(0, 0.7, &q).unwrap().value - 1.0).abs() < 1e-10);
        assert!((bessel_moment(1, 1.0, &q).unwrap().value - 1.0).abs() < 1e-10);
        assert!((bessel_moment(3, 2.0, &q).unwrap().value - 26.0).abs() < 1e-8);
        assert!(bessel_moment(1, 0.0, &q).is_err());

        assert!((gen_bessel_ab_integral(0, 1.0, 1.0, 1.0, &q).unwrap().value - 1.0).abs() < 1e-10);
        assert!((gen_bessel_ab_integral(1, 1.0, 3.0, 2.0, &q).unwrap().value - 3.0).abs() < 1e-9);
        assert!((gen_bessel_ab_integral(2, 1.0, 0.0, 1.0, &q).unwrap().value - 1.0).abs() < 1e-9);

        let third = StableIndex::new(1, 3).unwrap();
        assert!((moment_lk(0, third, 1.3, &q).unwrap().value - 1.0).abs() < 1e-9);
        assert!((moment_lk(1, StableIndex::LEVY_SMIRNOV, 1.0, &q).unwrap().value - 1.0).abs() < 1e-9);
        assert!((moment_lk(1, third, 2.0, &q).unwrap().value - 2.0).abs() < 1e-8);
    }
}
