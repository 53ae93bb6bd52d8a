//! Analyzing windows, given by their Fourier-side profile on the momentum
//! half-line, and the admissibility constant `c = integral of |w(p)|^2 / p`.

use crate::quad::composite_gauss_legendre;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum WindowError {
    #[error("window parameter {name} must be finite and positive, got {value}")]
    BadParameter { name: &'static str, value: f64 },
    #[error("window is not admissible: {reason}")]
    Inadmissible { reason: String },
}

/// Window families.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum WindowFamily {
    /// `exp(-(p - center)^2 / (2 width^2))`; admissible only when pushed off
    /// zero frequency.
    Gaussian,
    /// A Gaussian centered at the modulation frequency `omega0`; in the time
    /// domain a modulated Gaussian.
    Morlet,
    /// `(p / width) exp(-p^2 / (2 width^2))` on `p > 0`; vanishes linearly
    /// at zero, so its admissibility constant is exactly 1/2.
    RampGaussian,
}

impl WindowFamily {
    pub fn tag(self) -> &'static str {
        match self {
            WindowFamily::Gaussian => "gaussian",
            WindowFamily::Morlet => "morlet",
            WindowFamily::RampGaussian => "ramp-gaussian",
        }
    }
}

impl std::str::FromStr for WindowFamily {
    type Err = WindowError;

    fn from_str(s: &str) -> Result<Self, WindowError> {
        match s {
            "gaussian" => Ok(WindowFamily::Gaussian),
            "morlet" => Ok(WindowFamily::Morlet),
            "ramp-gaussian" => Ok(WindowFamily::RampGaussian),
            other => Err(WindowError::Inadmissible { reason: format!("unknown family `{other}`") }),
        }
    }
}

/// A window specification.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct WindowSpec {
    pub family: WindowFamily,
    pub center: f64,
    pub width: f64,
}

impl WindowSpec {
    pub fn new(family: WindowFamily, center: f64, width: f64) -> Result<Self, WindowError> {
        if !center.is_finite() {
            return Err(WindowError::BadParameter { name: "center", value: center });
        }
        if !width.is_finite() || width <= 0.0 {
            return Err(WindowError::BadParameter { name: "width", value: width });
        }
        Ok(WindowSpec { family, center, width })
    }

    pub fn gaussian(center: f64, width: f64) -> Result<Self, WindowError> {
        Self::new(WindowFamily::Gaussian, center, width)
    }

    /// Morlet window at modulation frequency `omega0`, unit bandwidth.
    pub fn morlet(omega0: f64) -> Result<Self, WindowError> {
        Self::new(WindowFamily::Morlet, omega0, 1.0)
    }

    pub fn ramp_gaussian(width: f64) -> Result<Self, WindowError> {
        Self::new(WindowFamily::RampGaussian, 0.0, width)
    }

    /// Fourier-side value at momentum `p`. All bundled families are
    /// real-valued there.
    pub fn fourier_eval(&self, p: f64) -> f64 {
        match self.family {
            WindowFamily::Gaussian | WindowFamily::Morlet => {
                let z = (p - self.center) / self.width;
                (-0.5 * z * z).exp()
            }
            WindowFamily::RampGaussian => {
                if p <= 0.0 {
                    0.0
                } else {
                    let z = p / self.width;
                    z * (-0.5 * z * z).exp()
                }
            }
        }
    }

    /// Momentum interval outside which the window is below ~1e-16.
    pub fn fourier_support(&self) -> (f64, f64) {
        match self.family {
            WindowFamily::Gaussian | WindowFamily::Morlet => {
                (self.center - 8.7 * self.width, self.center + 8.7 * self.width)
            }
            WindowFamily::RampGaussian => (0.0, 9.0 * self.width),
        }
    }

    /// The admissibility constant `integral over p > 0 of |w(p)|^2 / p dp`.
    ///
    /// Computed in log coordinates; a divergence probe flags windows whose
    /// integral keeps growing as the lower cutoff shrinks.
    pub fn admissibility_constant(&self) -> Result<f64, WindowError> {
        let hi = self.fourier_support().1.max(1.0);
        let integral = |p_min: f64| -> f64 {
            let (u, w) = composite_gauss_legendre(p_min.ln(), hi.ln(), 1024, 4);
            u.iter()
                .zip(&w)
                .map(|(&u, &w)| {
                    let val = self.fourier_eval(u.exp());
                    w * val * val
                })
                .sum()
        };
        let coarse = integral(1e-8);
        let fine = integral(1e-14);
        let drift = (fine - coarse).abs();
        if drift > 1e-9 * f64::max(1.0, coarse.abs()) {
            return Err(WindowError::Inadmissible {
                reason: format!(
                    "integral of |w|^2/p diverges near p = 0 (cutoff drift {drift:e})"
                ),
            });
        }
        Ok(fine)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn ramp_gaussian_constant_is_one_half() {
        for width in [0.5, 1.0, 2.0] {
            let w = WindowSpec::ramp_gaussian(width).unwrap();
            assert_relative_eq!(w.admissibility_constant().unwrap(), 0.5, epsilon = 1e-8);
        }
    }

    #[test]
    fn centered_gaussian_is_inadmissible() {
        let w = WindowSpec::gaussian(0.0, 1.0).unwrap();
        assert!(matches!(
            w.admissibility_constant(),
            Err(WindowError::Inadmissible { .. })
        ));
    }

    #[test]
    fn morlet_constant_is_finite_and_grid_stable() {
        let w = WindowSpec::morlet(6.0).unwrap();
        let c = w.admissibility_constant().unwrap();
        assert!(c > 0.0 && c.is_finite());
        // Oracle: integral of e^{-(p-6)^2}/p over p > 0, by direct quadrature
        // on a refined linear grid.
        let (p, wts) = composite_gauss_legendre(1e-6, 16.0, 4096, 4);
        let direct: f64 = p
            .iter()
            .zip(&wts)
            .map(|(&p, &w0)| {
                let v = w.fourier_eval(p);
                w0 * v * v / p
            })
            .sum();
        assert_relative_eq!(c, direct, epsilon = 1e-6);
    }

    #[test]
    fn bad_parameters_are_rejected() {
        assert!(WindowSpec::gaussian(f64::NAN, 1.0).is_err());
        assert!(WindowSpec::gaussian(1.0, 0.0).is_err());
    }
}
