use num::{One, Zero};

use super::{EvolutionError, SymbolSpec};
use crate::polynomials::{
    bessel_carlitz, binomial, factorial, gen_bessel_lk_all, BivariatePoly, Rational, RationalPoly, Variable,
};

fn big(n: num::BigInt) -> Rational {
    Rational::from_integer(n)
}

fn exact(v: f64, what: &str) -> Result<Rational, EvolutionError> {
    Rational::from_float(v).ok_or_else(|| EvolutionError::Domain(format!("{what} = {v} is not finite")))
}

/// `(x + a w)^n` as a polynomial in `(x, w)`.
fn shifted_power(n: u32, a: &Rational) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for j in 0..=n {
        p.add_term(big(binomial(n, j)) * num::pow(a.clone(), j as usize), n - j, j);
    }
    p
}

/// `H_n(x + βw, αw)` as a polynomial in `(x, w)`.
fn shifted_hermite(n: u32, alpha: &Rational, beta: &Rational) -> BivariatePoly {
    let mut p = BivariatePoly::zero();
    for j in 0..=n {
        let outer = big(binomial(n, j));
        for r in 0..=j / 2 {
            let c = big(factorial(j)) / big(factorial(j - 2 * r) * factorial(r))
                * num::pow(beta.clone(), (j - 2 * r) as usize)
                * num::pow(alpha.clone(), r as usize);
            p.add_term(&outer * c, n - j, j - r);
        }
    }
    p
}

/// Exact solution for the data `x^n` as a polynomial in `(x, t)`.
///
/// The Lévy superposition only ever integrates powers of the subordinator,
/// so each `w^m` is replaced by the matching moment polynomial in `t`:
/// `B_m(t)/2^m` for the square-root operators and `(l/k)^m B^{(l,k)}_m(t)`
/// for the `l/k` family.
pub fn evolve_monomial(n: u32, spec: &SymbolSpec) -> Result<BivariatePoly, EvolutionError> {
    spec.validate()?;
    let half = Rational::new(1.into(), 2.into());
    let bessel_moment = |m: u32| bessel_carlitz(m).scale(&num::pow(half.clone(), m as usize));
    let out = match *spec {
        SymbolSpec::SqrtDrift => shifted_power(n, &Rational::from_integer(2.into())).substitute_second(bessel_moment),
        SymbolSpec::RelHeat => shifted_hermite(n, &Rational::one(), &Rational::zero()).substitute_second(bessel_moment),
        SymbolSpec::GenAb { alpha, beta } => {
            shifted_hermite(n, &exact(alpha, "alpha")?, &exact(beta, "beta")?).substitute_second(bessel_moment)
        }
        SymbolSpec::GenLk { idx, mu } => {
            let table = gen_bessel_lk_all(n, idx);
            let ratio = idx.ratio();
            let lk_moment = |m: u32| -> RationalPoly {
                table[m as usize].scale(&num::pow(ratio.clone(), m as usize)).with_var(Variable::T)
            };
            match mu {
                1 => shifted_power(n, &Rational::one()).substitute_second(lk_moment),
                2 => shifted_hermite(n, &Rational::one(), &Rational::zero()).substitute_second(lk_moment),
                _ => return Err(EvolutionError::UnsupportedMu(mu)),
            }
        }
    };
    Ok(out)
}
