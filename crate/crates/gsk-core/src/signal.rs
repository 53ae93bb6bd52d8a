//! Sampled signals and fields.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum SignalError {
    #[error("signal needs at least 2 samples, got {0}")]
    TooShort(usize),
    #[error("sample spacing must be positive and finite, got {0}")]
    BadStep(f64),
    #[error("non-finite sample at index {0}")]
    NonFinite(usize),
    #[error("field shape {rows}x{cols} does not match {len} values")]
    ShapeMismatch { rows: usize, cols: usize, len: usize },
}

/// A uniformly sampled 1-d signal.
#[derive(Debug, Clone, PartialEq)]
pub struct Signal1D {
    samples: Vec<Complex64>,
    dt: f64,
    t0: f64,
}

impl Signal1D {
    pub fn new(samples: Vec<Complex64>, dt: f64, t0: f64) -> Result<Self, SignalError> {
        if samples.len() < 2 {
            return Err(SignalError::TooShort(samples.len()));
        }
        if !dt.is_finite() || dt <= 0.0 || !t0.is_finite() {
            return Err(SignalError::BadStep(dt));
        }
        if let Some(i) = samples.iter().position(|z| !z.re.is_finite() || !z.im.is_finite()) {
            return Err(SignalError::NonFinite(i));
        }
        Ok(Signal1D { samples, dt, t0 })
    }

    pub fn from_real(samples: &[f64], dt: f64, t0: f64) -> Result<Self, SignalError> {
        Signal1D::new(samples.iter().map(|&x| Complex64::new(x, 0.0)).collect(), dt, t0)
    }

    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    pub fn dt(&self) -> f64 {
        self.dt
    }

    pub fn t0(&self) -> f64 {
        self.t0
    }

    pub fn samples(&self) -> &[Complex64] {
        &self.samples
    }

    pub fn time(&self, n: usize) -> f64 {
        self.t0 + n as f64 * self.dt
    }

    /// First and last sample times.
    pub fn span(&self) -> (f64, f64) {
        (self.t0, self.time(self.len() - 1))
    }

    /// `sum |f_n|^2 dt`.
    pub fn energy(&self) -> f64 {
        self.samples.iter().map(|z| z.norm_sqr()).sum::<f64>() * self.dt
    }

    /// Relative L2 distance to another signal of the same shape.
    pub fn relative_l2_error(&self, other: &Signal1D) -> f64 {
        let num: f64 = self
            .samples
            .iter()
            .zip(&other.samples)
            .map(|(a, b)| (a - b).norm_sqr())
            .sum();
        let den: f64 = other.samples.iter().map(|z| z.norm_sqr()).sum();
        (num / den).sqrt()
    }
}

/// A complex field sampled on a uniform rectangular grid; rows run over the
/// first coordinate.
#[derive(Debug, Clone, PartialEq)]
pub struct Field2D {
    values: Vec<Complex64>,
    rows: usize,
    cols: usize,
    origin: [f64; 2],
    step: [f64; 2],
}

impl Field2D {
    pub fn new(
        values: Vec<Complex64>,
        rows: usize,
        cols: usize,
        origin: [f64; 2],
        step: [f64; 2],
    ) -> Result<Self, SignalError> {
        if values.len() != rows * cols || rows < 2 || cols < 2 {
            return Err(SignalError::ShapeMismatch { rows, cols, len: values.len() });
        }
        if step.iter().any(|&s| !s.is_finite() || s <= 0.0) {
            return Err(SignalError::BadStep(step[0].min(step[1])));
        }
        Ok(Field2D { values, rows, cols, origin, step })
    }

    /// Builds a field by evaluating `f` on the grid.
    pub fn from_fn(
        rows: usize,
        cols: usize,
        origin: [f64; 2],
        step: [f64; 2],
        f: impl Fn(f64, f64) -> Complex64,
    ) -> Result<Self, SignalError> {
        let mut values = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            let x = origin[0] + i as f64 * step[0];
            for j in 0..cols {
                let y = origin[1] + j as f64 * step[1];
                values.push(f(x, y));
            }
        }
        Field2D::new(values, rows, cols, origin, step)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.cols + j]
    }

    pub fn coord(&self, i: usize, j: usize) -> (f64, f64) {
        (self.origin[0] + i as f64 * self.step[0], self.origin[1] + j as f64 * self.step[1])
    }

    pub fn cell_area(&self) -> f64 {
        self.step[0] * self.step[1]
    }

    pub fn values(&self) -> &[Complex64] {
        &self.values
    }
}
