//! Gaussian-exponential vectors `exp(x^T A x + b^T x + c)`.
//!
//! `A` is complex symmetric with negative definite real part, so the vector
//! is square-integrable. The class is closed under the three operations the
//! induced representations perform: affine substitution of the argument,
//! multiplication by `exp(i * real quadratic)`, and positive scalar factors.
//! Representation identities can therefore be tested exactly on the
//! coefficients instead of on grids.

use num_complex::Complex64;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum AnalyticError {
    #[error("dimension must be 1 or 2, got {0}")]
    BadDimension(usize),
    #[error("Re(A) must be negative definite")]
    NotNormalizable,
    #[error("dimension mismatch: {expected} vs {got}")]
    DimensionMismatch { expected: usize, got: usize },
}

/// `exp(x^T A x + b^T x + c)` in one or two variables.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnalyticVector {
    dim: usize,
    a: [[Complex64; 2]; 2],
    b: [Complex64; 2],
    c: Complex64,
}

const ZERO: Complex64 = Complex64::new(0.0, 0.0);

impl AnalyticVector {
    /// One-dimensional vector `exp(a x^2 + b x + c)`.
    pub fn new_1d(a: Complex64, b: Complex64, c: Complex64) -> Result<Self, AnalyticError> {
        if a.re >= 0.0 {
            return Err(AnalyticError::NotNormalizable);
        }
        Ok(AnalyticVector { dim: 1, a: [[a, ZERO], [ZERO, ZERO]], b: [b, ZERO], c })
    }

    /// Two-dimensional vector with symmetric quadratic part
    /// `a11 x1^2 + 2 a12 x1 x2 + a22 x2^2`.
    pub fn new_2d(
        a11: Complex64,
        a12: Complex64,
        a22: Complex64,
        b1: Complex64,
        b2: Complex64,
        c: Complex64,
    ) -> Result<Self, AnalyticError> {
        let det = a11.re * a22.re - a12.re * a12.re;
        if a11.re >= 0.0 || det <= 0.0 {
            return Err(AnalyticError::NotNormalizable);
        }
        Ok(AnalyticVector { dim: 2, a: [[a11, a12], [a12, a22]], b: [b1, b2], c })
    }

    /// Normalized-exponent Gaussian `exp(-(x-center)^2 / (2 width^2))`.
    pub fn gaussian_1d(center: f64, width: f64) -> Self {
        let a = Complex64::new(-0.5 / (width * width), 0.0);
        let b = Complex64::new(center / (width * width), 0.0);
        let c = Complex64::new(-0.5 * center * center / (width * width), 0.0);
        AnalyticVector { dim: 1, a: [[a, ZERO], [ZERO, ZERO]], b: [b, ZERO], c }
    }

    /// Axis-aligned 2-d Gaussian.
    pub fn gaussian_2d(center: [f64; 2], width: [f64; 2]) -> Self {
        let g1 = Self::gaussian_1d(center[0], width[0]);
        let g2 = Self::gaussian_1d(center[1], width[1]);
        g1.tensor(&g2).expect("1-d factors")
    }

    /// Tensor product of two 1-d vectors: first factor becomes coordinate 1.
    pub fn tensor(&self, other: &AnalyticVector) -> Result<Self, AnalyticError> {
        if self.dim != 1 || other.dim != 1 {
            return Err(AnalyticError::BadDimension(self.dim.max(other.dim)));
        }
        Ok(AnalyticVector {
            dim: 2,
            a: [[self.a[0][0], ZERO], [ZERO, other.a[0][0]]],
            b: [self.b[0], other.b[0]],
            c: self.c + other.c,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn quad(&self) -> &[[Complex64; 2]; 2] {
        &self.a
    }

    pub fn linear(&self) -> &[Complex64; 2] {
        &self.b
    }

    pub fn constant(&self) -> Complex64 {
        self.c
    }

    /// Evaluates the vector at `x`.
    pub fn eval(&self, x: &[f64]) -> Complex64 {
        debug_assert_eq!(x.len(), self.dim);
        let mut expo = self.c;
        for i in 0..self.dim {
            expo += self.b[i] * x[i];
            for j in 0..self.dim {
                expo += self.a[i][j] * x[i] * x[j];
            }
        }
        expo.exp()
    }

    /// Substitutes `x -> L x + m` (real affine map).
    pub fn substitute_affine(&self, l: &[[f64; 2]; 2], m: &[f64; 2]) -> Self {
        let n = self.dim;
        let mut a = [[ZERO; 2]; 2];
        let mut b = [ZERO; 2];
        // A' = L^T A L
        for i in 0..n {
            for j in 0..n {
                let mut acc = ZERO;
                for r in 0..n {
                    for s in 0..n {
                        acc += self.a[r][s] * l[r][i] * l[s][j];
                    }
                }
                a[i][j] = acc;
            }
        }
        // b' = L^T (b + 2 A m)
        for i in 0..n {
            let mut acc = ZERO;
            for r in 0..n {
                let mut am = ZERO;
                for s in 0..n {
                    am += self.a[r][s] * m[s];
                }
                acc += l[r][i] * (self.b[r] + 2.0 * am);
            }
            b[i] = acc;
        }
        // c' = m^T A m + b^T m + c
        let mut c = self.c;
        for r in 0..n {
            c += self.b[r] * m[r];
            for s in 0..n {
                c += self.a[r][s] * m[r] * m[s];
            }
        }
        AnalyticVector { dim: n, a, b, c }
    }

    /// Multiplies by `exp(i (xq x^T x-form + bq x + cq))` with real
    /// coefficients: `aq` quadratic (symmetric), `bq` linear, `cq` constant.
    pub fn mul_phase(&self, aq: &[[f64; 2]; 2], bq: &[f64; 2], cq: f64) -> Self {
        let mut out = *self;
        for i in 0..self.dim {
            out.b[i] += Complex64::new(0.0, bq[i]);
            for j in 0..self.dim {
                out.a[i][j] += Complex64::new(0.0, aq[i][j]);
            }
        }
        out.c += Complex64::new(0.0, cq);
        out
    }

    /// Multiplies by the real factor `exp(r)`.
    pub fn mul_log_scale(&self, r: f64) -> Self {
        let mut out = *self;
        out.c += Complex64::new(r, 0.0);
        out
    }

    /// Coefficientwise distance, relative with unit floor, constant-term
    /// phases compared mod 2 pi.
    pub fn distance(&self, other: &AnalyticVector) -> f64 {
        if self.dim != other.dim {
            return f64::INFINITY;
        }
        let rel = |x: Complex64, y: Complex64| (x - y).norm() / f64::max(1.0, y.norm());
        let mut worst = 0.0_f64;
        for i in 0..self.dim {
            worst = worst.max(rel(self.b[i], other.b[i]));
            for j in 0..self.dim {
                worst = worst.max(rel(self.a[i][j], other.a[i][j]));
            }
        }
        worst = worst.max((self.c.re - other.c.re).abs() / f64::max(1.0, other.c.re.abs()));
        worst.max(wrap_phase(self.c.im - other.c.im).abs())
    }

    /// Mean and marginal standard deviations of the density `|v|^2`.
    ///
    /// Used for tail-mass bounds: `|v(x)|^2` is a Gaussian density with
    /// precision matrix `-4 Re(A)`.
    pub fn density_moments(&self) -> (Vec<f64>, Vec<f64>) {
        let n = self.dim;
        if n == 1 {
            let lam = -4.0 * self.a[0][0].re;
            let mean = 2.0 * self.b[0].re / lam;
            (vec![mean], vec![(1.0 / lam).sqrt()])
        } else {
            let l11 = -4.0 * self.a[0][0].re;
            let l12 = -4.0 * self.a[0][1].re;
            let l22 = -4.0 * self.a[1][1].re;
            let det = l11 * l22 - l12 * l12;
            // Covariance = Lambda^{-1}
            let c11 = l22 / det;
            let c12 = -l12 / det;
            let c22 = l11 / det;
            let eta = [2.0 * self.b[0].re, 2.0 * self.b[1].re];
            let mean = vec![c11 * eta[0] + c12 * eta[1], c12 * eta[0] + c22 * eta[1]];
            (mean, vec![c11.sqrt(), c22.sqrt()])
        }
    }
}

/// Wraps a phase into (-pi, pi].
pub fn wrap_phase(mut x: f64) -> f64 {
    let two_pi = 2.0 * std::f64::consts::PI;
    x %= two_pi;
    if x > std::f64::consts::PI {
        x -= two_pi;
    } else if x <= -std::f64::consts::PI {
        x += two_pi;
    }
    x
}
