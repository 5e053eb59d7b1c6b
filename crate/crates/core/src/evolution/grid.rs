use super::EvolutionError;
use crate::quadrature::{self, Estimate, QuadratureError, QuadratureSpec};

/// Uniform grid `x_min, x_min + h, ..., x_max` with `n_points` nodes.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Grid {
    x_min: f64,
    x_max: f64,
    n_points: usize,
}

impl Grid {
    pub fn new(x_min: f64, x_max: f64, n_points: usize) -> Result<Self, EvolutionError> {
        if n_points < 2 || !(x_min < x_max) || !x_min.is_finite() || !x_max.is_finite() {
            return Err(EvolutionError::InvalidGrid(format!(
                "need finite x_min < x_max and at least 2 points, got [{x_min}, {x_max}] with {n_points}"
            )));
        }
        Ok(Self { x_min, x_max, n_points })
    }

    /// Grid with spacing `step` starting at `x_min`; `x_max - x_min` must be a
    /// whole number of steps up to rounding.
    pub fn with_step(x_min: f64, x_max: f64, step: f64) -> Result<Self, EvolutionError> {
        let intervals = ((x_max - x_min) / step).round();
        if !(intervals >= 1.0) || ((x_max - x_min) / step - intervals).abs() > 1e-9 * intervals {
            return Err(EvolutionError::InvalidGrid(format!("step {step} does not divide [{x_min}, {x_max}]")));
        }
        Self::new(x_min, x_max, intervals as usize + 1)
    }

    pub fn x_min(&self) -> f64 {
        self.x_min
    }

    pub fn x_max(&self) -> f64 {
        self.x_max
    }

    pub fn n_points(&self) -> usize {
        self.n_points
    }

    pub fn step(&self) -> f64 {
        (self.x_max - self.x_min) / (self.n_points - 1) as f64
    }

    pub fn point(&self, i: usize) -> f64 {
        if i + 1 == self.n_points {
            self.x_max
        } else {
            self.x_min + i as f64 * self.step()
        }
    }

    pub fn points(&self) -> Vec<f64> {
        (0..self.n_points).map(|i| self.point(i)).collect()
    }
}

/// Samples of a real function on a [`Grid`] at a given time.
#[derive(Clone, Debug, PartialEq)]
pub struct GridFunction {
    grid: Grid,
    samples: Vec<f64>,
    time: f64,
}

impl GridFunction {
    pub fn new(grid: Grid, samples: Vec<f64>, time: f64) -> Result<Self, EvolutionError> {
        if samples.len() != grid.n_points() {
            return Err(EvolutionError::InvalidGrid(format!(
                "{} samples for a grid of {} points",
                samples.len(),
                grid.n_points()
            )));
        }
        Ok(Self { grid, samples, time })
    }

    pub fn from_fn(grid: Grid, time: f64, f: impl Fn(f64) -> f64) -> Self {
        let samples = grid.points().into_iter().map(f).collect();
        Self { grid, samples, time }
    }

    pub fn grid(&self) -> &Grid {
        &self.grid
    }

    pub fn samples(&self) -> &[f64] {
        &self.samples
    }

    pub fn into_samples(self) -> Vec<f64> {
        self.samples
    }

    pub fn time(&self) -> f64 {
        self.time
    }

    pub fn xs(&self) -> Vec<f64> {
        self.grid.points()
    }

    pub fn with_time(mut self, time: f64) -> Self {
        self.time = time;
        self
    }

    /// Pointwise map of the samples, keeping grid and time.
    pub fn map(&self, f: impl Fn(f64, f64) -> f64) -> Self {
        let samples = self.samples.iter().enumerate().map(|(i, &v)| f(self.grid.point(i), v)).collect();
        Self { grid: self.grid, samples, time: self.time }
    }

    /// Four-point Lagrange interpolation; zero outside `[x_min, x_max]`.
    pub fn interpolate(&self, x: f64) -> f64 {
        let g = &self.grid;
        if !(x >= g.x_min() && x <= g.x_max()) {
            return 0.0;
        }
        let h = g.step();
        let n = g.n_points();
        if n < 4 {
            let i = (((x - g.x_min()) / h).floor() as usize).min(n - 2);
            let s = (x - g.point(i)) / h;
            return self.samples[i] * (1.0 - s) + self.samples[i + 1] * s;
        }
        let i = ((x - g.x_min()) / h).floor() as isize;
        let start = (i - 1).clamp(0, n as isize - 4) as usize;
        let s = (x - g.point(start)) / h;
        let mut acc = 0.0;
        for a in 0..4 {
            let mut w = 1.0;
            for b in 0..4 {
                if a != b {
                    w *= (s - b as f64) / (a as f64 - b as f64);
                }
            }
            acc += w * self.samples[start + a];
        }
        acc
    }

    /// `∫_a^b w(x) f(x) dx` for the interpolant `f`, integrating one grid
    /// cell at a time so that each panel sees a single smooth cubic.
    pub fn integrate_against(
        &self,
        w: impl Fn(f64) -> f64,
        a: f64,
        b: f64,
        quad: &QuadratureSpec,
    ) -> Result<Estimate, QuadratureError> {
        let g = &self.grid;
        let (a, b) = (a.max(g.x_min()), b.min(g.x_max()));
        let mut total = Estimate { value: 0.0, error: 0.0 };
        if a >= b {
            return Ok(total);
        }
        let h = g.step();
        let first = ((a - g.x_min()) / h).floor() as usize;
        let last = (((b - g.x_min()) / h).ceil() as usize).min(g.n_points() - 1);
        for i in first..last {
            let (lo, hi) = (g.point(i).max(a), g.point(i + 1).min(b));
            if lo >= hi {
                continue;
            }
            let piece = quadrature::integrate(|x: f64| w(x) * self.interpolate(x), lo, hi, quad)?;
            total.value += piece.value;
            total.error += piece.error;
        }
        Ok(total)
    }

    pub fn max_abs(&self) -> f64 {
        self.samples.iter().fold(0.0, |m, v| m.max(v.abs()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_validation() {
        assert!(Grid::new(0.0, 1.0, 1).is_err());
        assert!(Grid::new(1.0, 0.0, 5).is_err());
        let g = Grid::with_step(-8.0, 8.0, 1.0 / 16.0).unwrap();
        assert_eq!(g.n_points(), 257);
        assert_eq!(g.point(256), 8.0);
        assert_eq!(g.point(128), 0.0);
        assert!(Grid::with_step(0.0, 1.0, 0.3).is_err());
    }

    #[test]
    fn cubic_interpolation_is_exact_on_cubics() {
        let g = Grid::new(-1.0, 2.0, 13).unwrap();
        let f = GridFunction::from_fn(g, 0.0, |x| x * x * x - 2.0 * x + 1.0);
        for x in [-1.0, -0.93, 0.1, 1.37, 1.99, 2.0] {
            assert!((f.interpolate(x) - (x * x * x - 2.0 * x + 1.0)).abs() < 1e-12, "{x}");
        }
        assert_eq!(f.interpolate(2.5), 0.0);
        assert!(GridFunction::new(g, vec![0.0; 3], 0.0).is_err());
    }
}
