//! Two-component (Dirac-type) form of the relativistic heat equation.
//!
//! With `N(∂) = [[0, 1+∂], [1-∂, 0]] = σ₁ + iσ₂∂` one has `N² = (1 - ∂²)·1̂`,
//! so `∂tΦ = (1̂ + cN)Φ` gives `(∂t - 1)²φᵢ = c²(1 - ∂²)φᵢ` for each component.
//! `c = 1` reproduces the telegrapher equation; `c = 1/2` (the halved
//! coupling) squares to a quarter of it.
//!
//! The algebra is checked exactly with matrices whose entries are
//! polynomials in a formal symbol with Gaussian-rational coefficients.

use std::fmt;
use std::ops::{Add, Mul, Sub};

use num::complex::{Complex, Complex64};
use num::{One, Zero};
use thiserror::Error;

use crate::evolution::{EvolutionError, Grid, GridFunction, InitialCondition};
use crate::polynomials::Rational;
use crate::quadrature::{fourier_inverse_limited, QuadratureSpec};

/// `p + iq` with `p, q` rational.
pub type GaussRational = Complex<Rational>;

fn gr(re: i64, im: i64) -> GaussRational {
    Complex::new(Rational::from_integer(re.into()), Rational::from_integer(im.into()))
}

/// Polynomial in one formal symbol with [`GaussRational`] coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct SymbolPoly {
    coeffs: Vec<GaussRational>,
}

impl SymbolPoly {
    pub fn new(mut coeffs: Vec<GaussRational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn constant(c: GaussRational) -> Self {
        Self::new(vec![c])
    }

    /// The formal symbol itself.
    pub fn symbol() -> Self {
        Self::new(vec![GaussRational::zero(), GaussRational::one()])
    }

    pub fn coeffs(&self) -> &[GaussRational] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn scale(&self, c: &GaussRational) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }
}

impl Add for &SymbolPoly {
    type Output = SymbolPoly;
    fn add(self, o: &SymbolPoly) -> SymbolPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        let zero = GaussRational::zero();
        SymbolPoly::new(
            (0..n).map(|i| self.coeffs.get(i).unwrap_or(&zero) + o.coeffs.get(i).unwrap_or(&zero)).collect(),
        )
    }
}

impl Sub for &SymbolPoly {
    type Output = SymbolPoly;
    fn sub(self, o: &SymbolPoly) -> SymbolPoly {
        self + &o.scale(&gr(-1, 0))
    }
}

impl Mul for &SymbolPoly {
    type Output = SymbolPoly;
    fn mul(self, o: &SymbolPoly) -> SymbolPoly {
        if self.is_zero() || o.is_zero() {
            return SymbolPoly::zero();
        }
        let mut out = vec![GaussRational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in o.coeffs.iter().enumerate() {
                out[i + j] = &out[i + j] + a * b;
            }
        }
        SymbolPoly::new(out)
    }
}

/// 2×2 matrix of [`SymbolPoly`] entries.
#[derive(Clone, Debug, PartialEq)]
pub struct Matrix2 {
    pub entries: [[SymbolPoly; 2]; 2],
}

impl Matrix2 {
    pub fn new(a: SymbolPoly, b: SymbolPoly, c: SymbolPoly, d: SymbolPoly) -> Self {
        Self { entries: [[a, b], [c, d]] }
    }

    pub fn constant(a: GaussRational, b: GaussRational, c: GaussRational, d: GaussRational) -> Self {
        Self::new(SymbolPoly::constant(a), SymbolPoly::constant(b), SymbolPoly::constant(c), SymbolPoly::constant(d))
    }

    pub fn identity() -> Self {
        Self::constant(gr(1, 0), gr(0, 0), gr(0, 0), gr(1, 0))
    }

    pub fn zero() -> Self {
        Self::constant(gr(0, 0), gr(0, 0), gr(0, 0), gr(0, 0))
    }

    pub fn scale(&self, c: &SymbolPoly) -> Self {
        let e = &self.entries;
        Self::new(c * &e[0][0], c * &e[0][1], c * &e[1][0], c * &e[1][1])
    }

    pub fn commutator(&self, o: &Self) -> Self {
        &(self * o) - &(o * self)
    }

    pub fn anticommutator(&self, o: &Self) -> Self {
        &(self * o) + &(o * self)
    }
}

impl Add for &Matrix2 {
    type Output = Matrix2;
    fn add(self, o: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.entries, &o.entries);
        Matrix2::new(&a[0][0] + &b[0][0], &a[0][1] + &b[0][1], &a[1][0] + &b[1][0], &a[1][1] + &b[1][1])
    }
}

impl Sub for &Matrix2 {
    type Output = Matrix2;
    fn sub(self, o: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.entries, &o.entries);
        Matrix2::new(&a[0][0] - &b[0][0], &a[0][1] - &b[0][1], &a[1][0] - &b[1][0], &a[1][1] - &b[1][1])
    }
}

impl Mul for &Matrix2 {
    type Output = Matrix2;
    fn mul(self, o: &Matrix2) -> Matrix2 {
        let (a, b) = (&self.entries, &o.entries);
        let e = |i: usize, j: usize| &(&a[i][0] * &b[0][j]) + &(&a[i][1] * &b[1][j]);
        Matrix2::new(e(0, 0), e(0, 1), e(1, 0), e(1, 1))
    }
}

/// Pauli matrices `σ₁, σ₂, σ₃`.
pub fn pauli() -> [Matrix2; 3] {
    [
        Matrix2::constant(gr(0, 0), gr(1, 0), gr(1, 0), gr(0, 0)),
        Matrix2::constant(gr(0, 0), gr(0, -1), gr(0, 1), gr(0, 0)),
        Matrix2::constant(gr(1, 0), gr(0, 0), gr(0, 0), gr(-1, 0)),
    ]
}

/// Which two-component generator to evolve with.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum Generator {
    /// `1̂ + N(∂)`: each component obeys `(∂t-1)²φ = (1-∂²)φ`.
    #[default]
    Factorized,
    /// `1̂ + N(∂)/2`: each component obeys `(∂t-1)²φ = (1-∂²)φ/4`.
    Halved,
}

impl Generator {
    pub fn coupling(self) -> f64 {
        match self {
            Self::Factorized => 1.0,
            Self::Halved => 0.5,
        }
    }

    fn coupling_exact(self) -> GaussRational {
        match self {
            Self::Factorized => gr(1, 0),
            Self::Halved => Complex::new(Rational::new(1.into(), 2.into()), Rational::zero()),
        }
    }

    /// `M(ik)` with `k` the formal symbol.
    pub fn symbol_matrix(self) -> Matrix2 {
        let c = SymbolPoly::constant(self.coupling_exact());
        let ik = SymbolPoly::symbol().scale(&gr(0, 1));
        let one = SymbolPoly::constant(gr(1, 0));
        let n = Matrix2::new(SymbolPoly::zero(), &one + &ik, &one - &ik, SymbolPoly::zero());
        &Matrix2::identity() + &n.scale(&c)
    }
}

/// One named identity and whether it holds.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Check {
    pub name: String,
    pub holds: bool,
}

/// Outcome of [`pauli_identities`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PauliReport {
    pub checks: Vec<Check>,
    /// `[σ_l, σ_m] = iε_{lmn}σ_n` without the factor 2, recorded for
    /// comparison only; it does not hold and is not part of [`Self::all_hold`].
    pub unit_commutator_convention_holds: bool,
}

impl PauliReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }
}

impl fmt::Display for PauliReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for c in &self.checks {
            writeln!(f, "{} {}", if c.holds { "PASS" } else { "FAIL" }, c.name)?;
        }
        write!(
            f,
            "info [s_l, s_m] = i e_lmn s_n (no factor 2): {}",
            if self.unit_commutator_convention_holds { "holds" } else { "does not hold" }
        )
    }
}

/// Exact check of the Pauli algebra and of the factorization identities.
pub fn pauli_identities() -> PauliReport {
    let s = pauli();
    let id = Matrix2::identity();
    let mut checks = Vec::new();
    let mut push = |name: String, holds: bool| checks.push(Check { name, holds });
    for (i, m) in s.iter().enumerate() {
        push(format!("s{}^2 = 1", i + 1), (m * m) == id);
    }
    let mut unit_convention = true;
    for (l, m, n) in [(0, 1, 2), (1, 2, 0), (2, 0, 1)] {
        push(format!("{{s{}, s{}}} = 0", l + 1, m + 1), s[l].anticommutator(&s[m]) == Matrix2::zero());
        let i_sigma = s[n].scale(&SymbolPoly::constant(gr(0, 1)));
        push(
            format!("[s{}, s{}] = 2i s{}", l + 1, m + 1, n + 1),
            s[l].commutator(&s[m]) == i_sigma.scale(&SymbolPoly::constant(gr(2, 0))),
        );
        unit_convention &= s[l].commutator(&s[m]) == i_sigma;
    }
    let z = SymbolPoly::symbol();
    let one = SymbolPoly::constant(gr(1, 0));
    let n = &s[0] + &s[1].scale(&z.scale(&gr(0, 1)));
    push("(s1 + i s2 z)^2 = (1 - z^2) 1".into(), &n * &n == id.scale(&(&one - &(&z * &z))));
    let k2 = &one + &(&z * &z);
    let factorized = &Generator::Factorized.symbol_matrix() - &id;
    push("(M(ik) - 1)^2 = (1 + k^2) 1 for the factorized generator".into(), &factorized * &factorized == id.scale(&k2));
    let halved = &Generator::Halved.symbol_matrix() - &id;
    push(
        "4 (M(ik) - 1)^2 = (1 + k^2) 1 for the halved generator".into(),
        (&halved * &halved).scale(&SymbolPoly::constant(gr(4, 0))) == id.scale(&k2),
    );
    PauliReport { checks, unit_commutator_convention_holds: unit_convention }
}

/// Eigenvalues `1 ± c√(1+k²)` of the numeric generator `M(ik)`, computed
/// from its characteristic polynomial `λ² - tr λ + det`.
pub fn generator_eigenvalues(generator: Generator, k: f64) -> [Complex64; 2] {
    let c = generator.coupling();
    let m =
        [[Complex64::new(1.0, 0.0), Complex64::new(c, c * k)], [Complex64::new(c, -c * k), Complex64::new(1.0, 0.0)]];
    let tr = m[0][0] + m[1][1];
    let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
    let disc = (tr * tr - 4.0 * det).sqrt();
    [(tr + disc) / 2.0, (tr - disc) / 2.0]
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum DiracError {
    #[error("components must share grid and time")]
    Mismatch,
    #[error(transparent)]
    Evolution(#[from] EvolutionError),
}

/// `Φ = (φ₁, φ₂)` on a shared grid and time.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoComponentGrid {
    phi1: GridFunction,
    phi2: GridFunction,
}

impl TwoComponentGrid {
    pub fn new(phi1: GridFunction, phi2: GridFunction) -> Result<Self, DiracError> {
        if phi1.grid() != phi2.grid() || phi1.time() != phi2.time() {
            return Err(DiracError::Mismatch);
        }
        Ok(Self { phi1, phi2 })
    }

    pub fn phi1(&self) -> &GridFunction {
        &self.phi1
    }

    pub fn phi2(&self) -> &GridFunction {
        &self.phi2
    }

    pub fn time(&self) -> f64 {
        self.phi1.time()
    }
}

/// Solves `∂tΦ = M(∂x)Φ` with `Φ(·,0) = (φ₁, φ₂)` through
/// `e^{tM(ik)} = e^t [cosh(ωt) 1̂ + sinh(ωt)/ω · cN(ik)]`, `ω = c√(1+k²)`.
pub fn two_component_evolve(
    phi1: &InitialCondition,
    phi2: &InitialCondition,
    t: f64,
    generator: Generator,
    grid: &Grid,
    quad: &QuadratureSpec,
) -> Result<TwoComponentGrid, DiracError> {
    if !(t >= 0.0) || !t.is_finite() {
        return Err(EvolutionError::Domain(format!("time t = {t} must be finite and nonnegative")).into());
    }
    if t == 0.0 {
        return TwoComponentGrid::new(
            GridFunction::from_fn(*grid, 0.0, |x| phi1.value(x)),
            GridFunction::from_fn(*grid, 0.0, |x| phi2.value(x)),
        );
    }
    phi1.fourier(0.0)?;
    phi2.fourier(0.0)?;
    let c = generator.coupling();
    let k_limit = phi1.k_limit().min(phi2.k_limit());
    let nan = Complex64::new(f64::NAN, f64::NAN);
    // returns e^{tM(ik)} applied to (ĝ1, ĝ2), component `which`
    let component = |which: usize| {
        move |k: f64| {
            let (Ok(g1), Ok(g2)) = (phi1.fourier(k), phi2.fourier(k)) else {
                return nan;
            };
            let w = c * (1.0 + k * k).sqrt();
            let grow = (t + w * t).exp() * 0.5;
            let decay = (t - w * t).exp() * 0.5;
            let cosh = grow + decay;
            let sinh_over = (grow - decay) / w;
            if which == 0 {
                g1 * cosh + g2 * Complex64::new(c, c * k) * sinh_over
            } else {
                g2 * cosh + g1 * Complex64::new(c, -c * k) * sinh_over
            }
        }
    };
    let xs = grid.points();
    let mut out = Vec::with_capacity(2);
    for which in 0..2 {
        let inv = fourier_inverse_limited(component(which), &xs, quad, k_limit).map_err(EvolutionError::from)?;
        out.push(GridFunction::new(*grid, inv.values, t)?);
    }
    let phi2 = out.pop().expect("two components");
    let phi1 = out.pop().expect("two components");
    TwoComponentGrid::new(phi1, phi2)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn report_passes_and_flags_unit_convention() {
        let r = pauli_identities();
        assert!(r.all_hold(), "{r}");
        assert!(!r.unit_commutator_convention_holds);
        assert!(r.to_string().contains("PASS s1^2 = 1"));
    }

    #[test]
    fn halved_generator_does_not_square_to_telegrapher() {
        let id = Matrix2::identity();
        let p = &Generator::Halved.symbol_matrix() - &id;
        let one = SymbolPoly::constant(gr(1, 0));
        let k = SymbolPoly::symbol();
        assert_ne!(&p * &p, id.scale(&(&one + &(&k * &k))));
    }

    #[test]
    fn eigenvalues() {
        for k in [-3.0_f64, 0.0, 0.5, 10.0] {
            let w = (1.0 + k * k).sqrt();
            let [a, b] = generator_eigenvalues(Generator::Factorized, k);
            assert!((a - Complex64::new(1.0 + w, 0.0)).norm() < 1e-12);
            assert!((b - Complex64::new(1.0 - w, 0.0)).norm() < 1e-12);
            let [a, b] = generator_eigenvalues(Generator::Halved, k);
            assert!((a - Complex64::new(1.0 + w / 2.0, 0.0)).norm() < 1e-12);
            assert!((b - Complex64::new(1.0 - w / 2.0, 0.0)).norm() < 1e-12);
        }
    }

    #[test]
    fn zero_time_is_identity() {
        let grid = Grid::new(-2.0, 2.0, 5).unwrap();
        let q = QuadratureSpec::default();
        let phi = two_component_evolve(
            &InitialCondition::Gaussian,
            &InitialCondition::Zero,
            0.0,
            Generator::Factorized,
            &grid,
            &q,
        )
        .unwrap();
        for (x, v) in phi.phi1().xs().iter().zip(phi.phi1().samples()) {
            assert_eq!(*v, InitialCondition::Gaussian.value(*x));
        }
        assert!(phi.phi2().samples().iter().all(|v| *v == 0.0));
    }
}
