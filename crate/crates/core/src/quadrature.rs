//! Adaptive Gauss-Kronrod integration on finite intervals, the half line and
//! the real line, plus a truncated Fourier inversion used by the spectral
//! solvers.
//!
//! Every routine works with the 21-point Kronrod extension of the 10-point
//! Gauss rule. The difference between the two is rescaled the way QUADPACK
//! does it, which gives a conservative error estimate for smooth integrands.

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::ops::{Add, Mul, Sub};

use num::complex::Complex64;
use thiserror::Error;

use crate::par;

/// Kronrod abscissae on [-1, 1], largest first. Odd indices are Gauss nodes.
const XGK: [f64; 11] = [
    0.995_657_163_025_808_080_735_527_280_689_003,
    0.973_906_528_517_171_720_077_964_012_084_452,
    0.930_157_491_355_708_226_001_207_180_059_508,
    0.865_063_366_688_984_510_732_096_688_423_493,
    0.780_817_726_586_416_897_063_717_578_345_042,
    0.679_409_568_299_024_406_234_327_365_114_874,
    0.562_757_134_668_604_683_339_000_099_272_694,
    0.433_395_394_129_247_190_799_265_943_165_784,
    0.294_392_862_701_460_198_131_126_603_103_866,
    0.148_874_338_981_631_210_884_826_001_129_720,
    0.0,
];

const WGK: [f64; 11] = [
    0.011_694_638_867_371_874_278_064_396_062_192,
    0.032_558_162_307_964_727_478_818_972_459_390,
    0.054_755_896_574_351_996_031_381_300_244_580,
    0.075_039_674_810_919_952_767_043_140_916_190,
    0.093_125_454_583_697_605_535_065_465_083_366,
    0.109_387_158_802_297_641_899_210_590_325_805,
    0.123_491_976_262_065_851_077_943_344_981_869,
    0.134_709_217_311_473_325_928_054_001_771_707,
    0.142_775_938_577_060_080_797_094_273_138_717,
    0.147_739_104_901_338_491_374_841_515_972_068,
    0.149_445_554_002_916_905_664_936_468_389_821,
];

/// Gauss weights for the nodes `XGK[1], XGK[3], ..., XGK[9]`.
const WG: [f64; 5] = [
    0.066_671_344_308_688_137_593_568_809_893_332,
    0.149_451_349_150_580_593_145_776_339_657_697,
    0.219_086_362_515_982_043_995_534_934_228_163,
    0.269_266_719_309_996_355_091_226_921_569_469,
    0.295_524_224_714_752_870_173_892_994_651_338,
];

/// Change of variables applied before integrating over an infinite range.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Mapping {
    /// `x = u / (1 - u)` on the half line; the real line is folded onto it.
    #[default]
    Rational,
    /// `x = exp(s)` on the half line, `x = sinh(s)` on the real line, with `s`
    /// itself mapped rationally. Suited to algebraically decaying integrands.
    Exp,
    /// No mapping: integrate over successively doubled blocks until they stop
    /// contributing.
    None,
}

/// Tolerances and limits for one integration.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct QuadratureSpec {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_subdivisions: usize,
    pub mapping: Mapping,
}

impl Default for QuadratureSpec {
    fn default() -> Self {
        Self { rel_tol: 1e-10, abs_tol: 1e-13, max_subdivisions: 2000, mapping: Mapping::Rational }
    }
}

impl QuadratureSpec {
    pub fn new(rel_tol: f64, abs_tol: f64) -> Self {
        Self { rel_tol, abs_tol, ..Self::default() }
    }

    pub fn with_mapping(mut self, mapping: Mapping) -> Self {
        self.mapping = mapping;
        self
    }

    pub fn with_max_subdivisions(mut self, max_subdivisions: usize) -> Self {
        self.max_subdivisions = max_subdivisions;
        self
    }

    pub fn validate(&self) -> Result<(), QuadratureError> {
        if !(self.rel_tol > 0.0 && self.abs_tol > 0.0) {
            return Err(QuadratureError::InvalidSpec(format!(
                "tolerances must be positive (rel {}, abs {})",
                self.rel_tol, self.abs_tol
            )));
        }
        if self.max_subdivisions == 0 {
            return Err(QuadratureError::InvalidSpec("max_subdivisions must be at least 1".into()));
        }
        Ok(())
    }

    fn tolerance(&self, value: f64) -> f64 {
        self.abs_tol.max(self.rel_tol * value.abs())
    }
}

#[derive(Debug, Error, Clone, PartialEq)]
pub enum QuadratureError {
    #[error("invalid quadrature spec: {0}")]
    InvalidSpec(String),
    #[error("no convergence after {subdivisions} subdivisions (value {value:e}, error estimate {error:e})")]
    NonConvergence { value: f64, error: f64, subdivisions: usize },
    #[error("integrand is not finite at x = {at}")]
    NonFinite { at: f64 },
    #[error("integrand does not fall below the truncation threshold for |k| <= {k_limit}")]
    WindowSearch { k_limit: f64 },
}

/// Value of an integral together with its error estimate.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Estimate<V = f64> {
    pub value: V,
    pub error: f64,
}

/// Scalar types the adaptive rule can accumulate.
pub trait Integrand: Copy + Add<Output = Self> + Sub<Output = Self> + Mul<f64, Output = Self> + Send + Sync {
    fn zero() -> Self;
    fn magnitude(&self) -> f64;
    fn finite(&self) -> bool;
    /// Real part, used when reporting a failed estimate.
    fn real(&self) -> f64;
}

impl Integrand for f64 {
    fn zero() -> Self {
        0.0
    }
    fn magnitude(&self) -> f64 {
        self.abs()
    }
    fn finite(&self) -> bool {
        self.is_finite()
    }
    fn real(&self) -> f64 {
        *self
    }
}

impl Integrand for Complex64 {
    fn zero() -> Self {
        Complex64::new(0.0, 0.0)
    }
    fn magnitude(&self) -> f64 {
        self.norm()
    }
    fn finite(&self) -> bool {
        self.re.is_finite() && self.im.is_finite()
    }
    fn real(&self) -> f64 {
        self.re
    }
}

fn rescale_error(err: f64, res_abs: f64, res_asc: f64) -> f64 {
    let mut scaled = err.abs();
    if res_asc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / res_asc).powf(1.5);
        scaled = if scale < 1.0 { res_asc * scale } else { res_asc };
    }
    if res_abs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * res_abs);
    }
    scaled
}

#[derive(Clone, Copy, Debug)]
struct Segment<V> {
    a: f64,
    b: f64,
    value: V,
    error: f64,
}

impl<V> PartialEq for Segment<V> {
    fn eq(&self, other: &Self) -> bool {
        self.error == other.error
    }
}
impl<V> Eq for Segment<V> {}
impl<V> PartialOrd for Segment<V> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl<V> Ord for Segment<V> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.error.total_cmp(&other.error)
    }
}

/// Applies the 21-point rule on `[a, b]` using precomputed integrand values at
/// the Kronrod nodes (`fv[0..10]` on the left, `fv[10]` at the centre,
/// `fv[11..21]` on the right, both sides ordered like `XGK`).
fn kronrod_from_values<V: Integrand>(fv: &[V; 21], half: f64) -> (V, f64) {
    let centre = fv[10];
    let mut res_k = centre * WGK[10];
    let mut res_g = V::zero();
    let mut res_abs = centre.magnitude() * WGK[10];
    for j in 0..10 {
        let pair = fv[j] + fv[11 + j];
        res_k = res_k + pair * WGK[j];
        res_abs += WGK[j] * (fv[j].magnitude() + fv[11 + j].magnitude());
        if j % 2 == 1 {
            res_g = res_g + pair * WG[j / 2];
        }
    }
    let mean = res_k * 0.5;
    let mut res_asc = WGK[10] * (centre - mean).magnitude();
    for j in 0..10 {
        res_asc += WGK[j] * ((fv[j] - mean).magnitude() + (fv[11 + j] - mean).magnitude());
    }
    let value = res_k * half;
    let err = (res_k - res_g).magnitude() * half;
    (value, rescale_error(err, res_abs * half.abs(), res_asc * half.abs()))
}

/// Kronrod nodes of `[a, b]` in the layout `kronrod_from_values` expects.
fn kronrod_nodes(a: f64, b: f64) -> [f64; 21] {
    let centre = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let mut nodes = [centre; 21];
    for j in 0..10 {
        nodes[j] = centre - half * XGK[j];
        nodes[11 + j] = centre + half * XGK[j];
    }
    nodes
}

fn gk21<V: Integrand, F: Fn(f64) -> V>(f: &F, a: f64, b: f64) -> Result<Segment<V>, QuadratureError> {
    let nodes = kronrod_nodes(a, b);
    let mut fv = [V::zero(); 21];
    for (slot, &x) in fv.iter_mut().zip(nodes.iter()) {
        let v = f(x);
        if !v.finite() {
            return Err(QuadratureError::NonFinite { at: x });
        }
        *slot = v;
    }
    let (value, error) = kronrod_from_values(&fv, 0.5 * (b - a));
    Ok(Segment { a, b, value, error })
}

/// Globally adaptive integration of `f` over the finite interval `[a, b]`.
pub fn integrate<V, F>(f: F, a: f64, b: f64, spec: &QuadratureSpec) -> Result<Estimate<V>, QuadratureError>
where
    V: Integrand,
    F: Fn(f64) -> V,
{
    integrate_split(&f, a, b, 1, spec)
}

fn integrate_split<V, F>(
    f: &F,
    a: f64,
    b: f64,
    pieces: usize,
    spec: &QuadratureSpec,
) -> Result<Estimate<V>, QuadratureError>
where
    V: Integrand,
    F: Fn(f64) -> V,
{
    spec.validate()?;
    if a == b {
        return Ok(Estimate { value: V::zero(), error: 0.0 });
    }
    let width = (b - a) / pieces as f64;
    let mut heap = BinaryHeap::with_capacity(spec.max_subdivisions + pieces);
    for i in 0..pieces {
        let lo = a + width * i as f64;
        let hi = if i + 1 == pieces { b } else { lo + width };
        heap.push(gk21(f, lo, hi)?);
    }
    let mut subdivisions = pieces;
    loop {
        let (value, error) = heap.iter().fold((V::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
        if error <= spec.tolerance(value.magnitude()) {
            return Ok(Estimate { value, error });
        }
        let worst = heap.pop().expect("heap is never empty");
        let mid = 0.5 * (worst.a + worst.b);
        // interval can no longer be split in floating point
        if subdivisions >= spec.max_subdivisions || mid <= worst.a.min(worst.b) || mid >= worst.a.max(worst.b) {
            heap.push(worst);
            let (value, error) = heap.iter().fold((V::zero(), 0.0), |(v, e), s| (v + s.value, e + s.error));
            return Err(QuadratureError::NonConvergence { value: value.real(), error, subdivisions });
        }
        heap.push(gk21(f, worst.a, mid)?);
        heap.push(gk21(f, mid, worst.b)?);
        subdivisions += 1;
    }
}

/// Wraps a mapped integrand so that points at which the map or its Jacobian
/// overflows contribute nothing.
fn mapped<V: Integrand>(f: impl Fn(f64) -> V, x: f64, jac: f64) -> V {
    if !x.is_finite() || !jac.is_finite() {
        return V::zero();
    }
    let v = f(x);
    if v.magnitude() == 0.0 {
        V::zero()
    } else {
        v * jac
    }
}

/// The map `x = u/(1-u)` for `u ∈ [0, 1)`, parameterized so that both ends
/// sit next to `z = 0`: `z ∈ [0, 1/2]` is `u = z`, and `z ∈ [-1/2, 0)` is
/// `1 - u = -z`. Writing `1 - u` directly keeps full precision near `x = ∞`,
/// which a plain `u` loses beyond `x ≈ 1e16`; that matters for integrands
/// with slowly decaying algebraic tails.
fn rational_half_line<F: Fn(f64) -> f64>(f: &F, z: f64) -> f64 {
    if z >= 0.0 {
        let w = 1.0 - z;
        mapped(f, z / w, 1.0 / (w * w))
    } else {
        let w = -z;
        mapped(f, (1.0 - w) / w, 1.0 / (w * w))
    }
}

/// Integral of `f` over `(0, ∞)`.
pub fn integrate_semi_axis<F>(f: F, spec: &QuadratureSpec) -> Result<Estimate, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    match spec.mapping {
        Mapping::Rational => integrate_split(&|z: f64| rational_half_line(&f, z), -0.5, 0.5, 4, spec),
        Mapping::Exp => integrate_split(
            &|v: f64| {
                let w = 1.0 - v * v;
                let s = v / w;
                let x = s.exp();
                mapped(&f, x, x * (1.0 + v * v) / (w * w))
            },
            -1.0,
            1.0,
            8,
            spec,
        ),
        Mapping::None => integrate_blocks(&f, spec),
    }
}

/// Unmapped half-line integration: blocks `[0,1], [1,2], [2,4], ...` until
/// two consecutive blocks fall below tolerance. The blocks beyond the last one
/// are bounded by a geometric series with the ratio of the last two blocks,
/// which covers algebraic tails as well as exponential ones.
fn integrate_blocks<F: Fn(f64) -> f64>(f: &F, spec: &QuadratureSpec) -> Result<Estimate, QuadratureError> {
    let mut total = 0.0;
    let mut error = 0.0;
    let mut quiet = 0;
    let mut previous = f64::INFINITY;
    let (mut lo, mut hi) = (0.0, 1.0);
    for _ in 0..1024 {
        let block = integrate(f, lo, hi, spec)?;
        total += block.value;
        error += block.error;
        let size = block.value.abs();
        let ratio = if previous > 0.0 { (size / previous).clamp(0.5, 0.99) } else { 0.5 };
        let tail = size * ratio / (1.0 - ratio);
        if size + tail <= spec.tolerance(total) {
            quiet += 1;
            if quiet >= 2 {
                return Ok(Estimate { value: total, error: error + size + tail });
            }
        } else {
            quiet = 0;
        }
        previous = size;
        lo = hi;
        hi *= 2.0;
        if !hi.is_finite() {
            break;
        }
    }
    Err(QuadratureError::NonConvergence { value: total, error, subdivisions: 1024 })
}

/// Integral of `f` over the whole real line.
pub fn integrate_real_line<F>(f: F, spec: &QuadratureSpec) -> Result<Estimate, QuadratureError>
where
    F: Fn(f64) -> f64,
{
    match spec.mapping {
        Mapping::Rational => {
            integrate_split(&|z: f64| rational_half_line(&|x: f64| f(x) + f(-x), z), -0.5, 0.5, 4, spec)
        }
        Mapping::Exp => integrate_split(
            &|v: f64| {
                let w = 1.0 - v * v;
                let s = v / w;
                mapped(&f, s.sinh(), s.cosh() * (1.0 + v * v) / (w * w))
            },
            -1.0,
            1.0,
            8,
            spec,
        ),
        Mapping::None => integrate_blocks(&|x: f64| f(x) + f(-x), spec),
    }
}

/// Result of a truncated Fourier inversion on a set of points.
#[derive(Clone, Debug, PartialEq)]
pub struct FourierInversion {
    /// Real part of `(1/2π) ∫ e^{ikx} khat(k) dk` at each point.
    pub values: Vec<f64>,
    /// Per-point error estimates.
    pub errors: Vec<f64>,
    /// Largest imaginary part encountered (zero for Hermitian `khat`).
    pub imag_residue: f64,
    /// Half-width `K` of the window `[-K, K]` actually integrated.
    pub window: f64,
}

/// Magnitude below which the transform is treated as zero.
pub const FOURIER_CUTOFF: f64 = 1e-14;

/// Default search limit for the truncation window.
pub const FOURIER_K_LIMIT: f64 = 4096.0;

/// `(1/2π) ∫ e^{ikx} khat(k) dk` at every `x` in `xs`.
pub fn fourier_inverse<F>(khat: F, xs: &[f64], spec: &QuadratureSpec) -> Result<FourierInversion, QuadratureError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    fourier_inverse_limited(khat, xs, spec, FOURIER_K_LIMIT)
}

/// Finds `K` such that `|khat(k)| < FOURIER_CUTOFF · max(1, peak)` for
/// `K <= |k| <= k_limit`, scanning on a grid of step 1/16.
pub fn fourier_window<F>(khat: &F, k_limit: f64) -> Result<f64, QuadratureError>
where
    F: Fn(f64) -> Complex64,
{
    let step = 1.0 / 16.0;
    let mut peak: f64 = 1.0;
    let mut last_hit = 0.0;
    let mut k = 0.0;
    while k <= k_limit {
        let m = khat(k).norm().max(khat(-k).norm());
        if !m.is_finite() {
            return Err(QuadratureError::NonFinite { at: k });
        }
        peak = peak.max(m);
        if m >= FOURIER_CUTOFF * peak {
            last_hit = k;
        } else if k >= 2.0 * last_hit + 8.0 {
            return Ok(last_hit + step);
        }
        k += step;
    }
    if last_hit < 0.5 * k_limit {
        Ok(last_hit + step)
    } else {
        Err(QuadratureError::WindowSearch { k_limit })
    }
}

/// As [`fourier_inverse`], with the window search capped at `k_limit`
/// (the Nyquist wavenumber for tabulated transforms).
///
/// The window is covered with equal panels; `khat` is sampled once per
/// refinement level and shared by every output point. Panels are halved until
/// each point meets `max(abs_tol, rel_tol·|F|)` or the panel count exceeds
/// `max_subdivisions`.
pub fn fourier_inverse_limited<F>(
    khat: F,
    xs: &[f64],
    spec: &QuadratureSpec,
    k_limit: f64,
) -> Result<FourierInversion, QuadratureError>
where
    F: Fn(f64) -> Complex64 + Sync,
{
    spec.validate()?;
    let window = fourier_window(&khat, k_limit)?;
    let x_max = xs.iter().fold(0.0_f64, |m, x| m.max(x.abs()));
    // about one radian of phase per panel at the outermost point
    let mut panels = ((2.0 * window * (x_max + 1.0)).ceil() as usize).max(16);
    loop {
        let h = 2.0 * window / panels as f64;
        let nodes: Vec<f64> = (0..panels)
            .flat_map(|p| {
                let a = -window + h * p as f64;
                kronrod_nodes(a, a + h)
            })
            .collect();
        let samples: Vec<Complex64> = par::map(&nodes, |&k| khat(k));
        if let Some(pos) = samples.iter().position(|s| !s.finite()) {
            return Err(QuadratureError::NonFinite { at: nodes[pos] });
        }
        let l1: f64 = samples
            .chunks(21)
            .map(|fv| {
                let mut acc = WGK[10] * fv[10].norm();
                for j in 0..10 {
                    acc += WGK[j] * (fv[j].norm() + fv[11 + j].norm());
                }
                acc * 0.5 * h
            })
            .sum::<f64>()
            / (2.0 * std::f64::consts::PI);
        let per_point: Vec<(Complex64, f64)> = par::map(xs, |&x| {
            let mut total = Complex64::new(0.0, 0.0);
            let mut err = 0.0;
            let mut fv = [Complex64::new(0.0, 0.0); 21];
            for (p, chunk) in samples.chunks(21).enumerate() {
                let base = 21 * p;
                for j in 0..21 {
                    fv[j] = chunk[j] * Complex64::new(0.0, nodes[base + j] * x).exp();
                }
                let (v, e) = kronrod_from_values(&fv, 0.5 * h);
                total += v;
                err += e;
            }
            let scale = 1.0 / (2.0 * std::f64::consts::PI);
            (total * scale, err * scale)
        });
        let floor = 100.0 * f64::EPSILON * l1;
        let converged = per_point.iter().all(|(v, e)| *e <= spec.tolerance(v.re).max(floor));
        if converged {
            return Ok(FourierInversion {
                values: per_point.iter().map(|(v, _)| v.re).collect(),
                errors: per_point.iter().map(|(_, e)| *e).collect(),
                imag_residue: per_point.iter().fold(0.0, |m, (v, _)| m.max(v.im.abs())),
                window,
            });
        }
        if 2 * panels > spec.max_subdivisions.max(16) {
            let (worst, err) =
                per_point.iter().fold((0.0, 0.0), |acc, (v, e)| if *e > acc.1 { (v.re, *e) } else { acc });
            return Err(QuadratureError::NonConvergence { value: worst, error: err, subdivisions: panels });
        }
        panels *= 2;
    }
}
