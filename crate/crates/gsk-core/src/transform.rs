//! Signal transforms as matrix coefficients `g -> <U(g) w, f>` of the
//! induced representations, on sampled signals and fields.
//!
//! All coefficient maps use direct quadrature (no FFT): the 1-d transforms
//! pair the Fourier side of the signal with the transformed window on a
//! uniform momentum comb whose period is chosen so periodization images fall
//! outside the analyzed range; the shearlet transform integrates the
//! transformed window against a sampled `(E, p)` field. Each coefficient
//! cell is an independent fixed-order pairwise sum, so results are
//! bit-identical under any parallel schedule.
//!
//! The wavelet row at scale `s` pairs the signal with `w(s p)` modulated to
//! time `b`; its translation axis stores `b`, so shifting the signal shifts
//! coefficient rows the same way. The Stockwell transform is realized in
//! the classical normalization, whose row windows integrate to one; that is
//! the `theta = 0` coefficient of the Stockwell representation with a
//! Gaussian window, times the row factor `sqrt(2 pi f) / (2 pi)` and the
//! phase `e^{-2 i zeta_T}` with `zeta_T = a e^{-sigma} = -2 pi f b`
//! contributed by the trivializing coboundary. The marginal identity `sum
//! over b of S(b, f) db = fhat(f)` pins the normalization independently.

use crate::quad::pairwise_sum;
use crate::rep::{apply_rep, RepError, RepTag};
use crate::signal::{Field2D, Signal1D, SignalError};
use crate::window::{WindowError, WindowFamily, WindowSpec};
use crate::AnalyticVector;
use crate::{GroupDescriptor, GroupError, GroupId};
use num_complex::Complex64;
use rayon::prelude::*;
use thiserror::Error;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum TransformError {
    #[error("{0} grid must not be empty")]
    EmptyGrid(&'static str),
    #[error("{0} axis must be uniform and increasing")]
    NonUniformAxis(&'static str),
    #[error("{0} axis values must be positive")]
    NonPositiveAxis(&'static str),
    #[error("window family {family:?} is not usable for {purpose}")]
    UnsupportedWindow { family: WindowFamily, purpose: &'static str },
    #[error("expected a {expected} coefficient grid, got {got}")]
    WrongKind { expected: TransformKind, got: TransformKind },
    #[error("time marginal undefined: {0}")]
    MarginalUndefined(String),
    #[error("synthesis is only defined for the wavelet transform")]
    UnsupportedSynthesis,
    #[error(transparent)]
    Signal(#[from] SignalError),
    #[error(transparent)]
    Window(#[from] WindowError),
    #[error(transparent)]
    Rep(#[from] RepError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The four coefficient maps.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TransformKind {
    Cwt,
    Stft,
    Stockwell,
    Shearlet,
}

impl TransformKind {
    pub fn tag(self) -> &'static str {
        match self {
            TransformKind::Cwt => "cwt",
            TransformKind::Stft => "stft",
            TransformKind::Stockwell => "stockwell",
            TransformKind::Shearlet => "shearlet",
        }
    }
}

impl std::fmt::Display for TransformKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for TransformKind {
    type Err = TransformError;

    fn from_str(s: &str) -> Result<Self, TransformError> {
        match s {
            "cwt" => Ok(TransformKind::Cwt),
            "stft" => Ok(TransformKind::Stft),
            "stockwell" => Ok(TransformKind::Stockwell),
            "shearlet" => Ok(TransformKind::Shearlet),
            _ => Err(TransformError::EmptyGrid("kind")),
        }
    }
}

/// A named coefficient axis.
#[derive(Debug, Clone, PartialEq)]
pub struct AxisData {
    pub name: &'static str,
    pub values: Vec<f64>,
}

/// Sampled transform coefficients over a rectangular parameter grid;
/// row-major over `(axis1, axis2)`.
#[derive(Debug, Clone, PartialEq)]
pub struct CoefficientGrid {
    pub kind: TransformKind,
    pub axis1: AxisData,
    pub axis2: AxisData,
    pub values: Vec<Complex64>,
    /// Time support of the analyzed signal, where meaningful.
    pub signal_span: Option<(f64, f64)>,
    /// Stockwell window width multiplier.
    pub window_width: Option<f64>,
}

impl CoefficientGrid {
    pub fn shape(&self) -> (usize, usize) {
        (self.axis1.values.len(), self.axis2.values.len())
    }

    pub fn at(&self, i: usize, j: usize) -> Complex64 {
        self.values[i * self.axis2.values.len() + j]
    }
}

fn check_axis(name: &'static str, values: &[f64]) -> Result<(), TransformError> {
    if values.is_empty() {
        return Err(TransformError::EmptyGrid(name));
    }
    if values.iter().any(|x| !x.is_finite()) {
        return Err(TransformError::NonUniformAxis(name));
    }
    Ok(())
}

fn uniform_step(name: &'static str, values: &[f64]) -> Result<f64, TransformError> {
    if values.len() < 2 {
        return Err(TransformError::EmptyGrid(name));
    }
    let step = (values[values.len() - 1] - values[0]) / (values.len() - 1) as f64;
    if !(step.is_finite() && step > 0.0) {
        return Err(TransformError::NonUniformAxis(name));
    }
    for (k, pair) in values.windows(2).enumerate() {
        if ((pair[1] - pair[0]) - step).abs() > 1e-9 * step.abs().max(1.0) {
            let _ = k;
            return Err(TransformError::NonUniformAxis(name));
        }
    }
    Ok(step)
}

/// The uniform momentum comb shared by wavelet analysis and synthesis.
struct MomentumComb {
    dp: f64,
    /// Node `m` sits at `(m + 1) dp`.
    count: usize,
}

impl MomentumComb {
    /// `reach` is the largest time displacement the comb must resolve;
    /// images then fall at least `reach` past the analyzed range.
    fn new(reach: f64, p_max: f64) -> Self {
        let period = 2.0 * reach.max(1.0);
        let dp = 2.0 * std::f64::consts::PI / period;
        let count = (p_max / dp).ceil() as usize;
        MomentumComb { dp, count: count.max(8) }
    }

    fn node(&self, m: usize) -> f64 {
        (m as f64 + 1.0) * self.dp
    }

    /// Comb index range covering `[lo, hi]`.
    fn range(&self, lo: f64, hi: f64) -> std::ops::Range<usize> {
        let mlo = (lo / self.dp - 1.0).floor().max(0.0) as usize;
        let mhi = ((hi / self.dp).ceil() as usize).min(self.count);
        mlo..mhi
    }
}

/// Fourier transform of the signal on the comb, `fhat(p) = sum f_n
/// e^{-i p t_n} dt`.
fn fourier_on_comb(signal: &Signal1D, comb: &MomentumComb) -> Vec<Complex64> {
    (0..comb.count)
        .into_par_iter()
        .map(|m| {
            let p = comb.node(m);
            signal.dt()
                * pairwise_sum(signal.len(), &|n| {
                    signal.samples()[n] * Complex64::from_polar(1.0, -p * signal.time(n))
                })
        })
        .collect()
}

/// Continuous wavelet coefficients on a `scales x times` grid.
///
/// Row `s`, column `b` holds `<U(-b, ln s) w, f>` over the positive
/// momentum half-line: `sqrt(s) * integral of w(s p) e^{i p b} fhat(p) dp`.
pub fn analyze_cwt(
    signal: &Signal1D,
    window: &WindowSpec,
    scales: &[f64],
    times: &[f64],
) -> Result<CoefficientGrid, TransformError> {
    check_axis("scale", scales)?;
    check_axis("time", times)?;
    if scales.iter().any(|&s| s <= 0.0) {
        return Err(TransformError::NonPositiveAxis("scale"));
    }
    let comb = cwt_comb(signal.span(), window, scales, times);
    let fhat = fourier_on_comb(signal, &comb);
    let (sup_lo, sup_hi) = window.fourier_support();
    let rows: Vec<Vec<Complex64>> = scales
        .par_iter()
        .map(|&s| {
            let range = comb.range(sup_lo.max(0.0) / s, sup_hi / s);
            let row_vals: Vec<Complex64> = range
                .clone()
                .map(|m| comb.dp * window.fourier_eval(s * comb.node(m)) * fhat[m])
                .collect();
            times
                .iter()
                .map(|&b| {
                    s.sqrt()
                        * pairwise_sum(row_vals.len(), &|i| {
                            row_vals[i]
                                * Complex64::from_polar(1.0, comb.node(range.start + i) * b)
                        })
                })
                .collect()
        })
        .collect();
    Ok(CoefficientGrid {
        kind: TransformKind::Cwt,
        axis1: AxisData { name: "scale", values: scales.to_vec() },
        axis2: AxisData { name: "time", values: times.to_vec() },
        values: rows.into_iter().flatten().collect(),
        signal_span: Some(signal.span()),
        window_width: None,
    })
}

fn cwt_comb(
    signal_span: (f64, f64),
    window: &WindowSpec,
    scales: &[f64],
    times: &[f64],
) -> MomentumComb {
    let (t_lo, t_hi) = signal_span;
    let b_lo = times.iter().cloned().fold(f64::INFINITY, f64::min).min(t_lo);
    let b_hi = times.iter().cloned().fold(f64::NEG_INFINITY, f64::max).max(t_hi);
    let s_max = scales.iter().cloned().fold(0.0_f64, f64::max);
    let s_min = scales.iter().cloned().fold(f64::INFINITY, f64::min);
    let reach = (b_hi - b_lo) + 10.0 * s_max / window.width + 1.0;
    let p_max = window.fourier_support().1 / s_min;
    MomentumComb::new(reach, p_max)
}

/// Log-uniform scale grid covering band `[f_lo, f_hi]` (Hz) with margin.
pub fn cwt_default_scales(window: &WindowSpec, f_lo: f64, f_hi: f64, n: usize) -> Vec<f64> {
    let peak = match window.family {
        WindowFamily::RampGaussian => window.width,
        _ => window.center.abs().max(window.width),
    };
    let s_min = peak / (2.0 * std::f64::consts::PI * f_hi) / 1.6;
    let s_max = peak / (2.0 * std::f64::consts::PI * f_lo) * 1.6;
    log_space(s_min, s_max, n)
}

/// `n` log-uniform points from `lo` to `hi`.
pub fn log_space(lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let (llo, lhi) = (lo.ln(), hi.ln());
    (0..n)
        .map(|i| (llo + (lhi - llo) * i as f64 / (n - 1).max(1) as f64).exp())
        .collect()
}

/// Translation grid at signal resolution, padded past the widest wavelet.
pub fn cwt_default_times(signal: &Signal1D, window: &WindowSpec, scales: &[f64]) -> Vec<f64> {
    let s_max = scales.iter().cloned().fold(0.0_f64, f64::max);
    let pad = (10.0 * s_max / window.width / signal.dt()).ceil() as i64;
    let (t_lo, t_hi) = signal.span();
    let n_hi = ((t_hi - t_lo) / signal.dt()).round() as i64;
    (-pad..=n_hi + pad).map(|n| t_lo + n as f64 * signal.dt()).collect()
}

/// Wavelet synthesis from coefficients on a log-uniform scale grid:
/// `fhat(p) = (1 / 2 pi c_w) * integral over (s, b) of W(s, b) e^{-i p b}
/// w(s p) / sqrt(s) db d(ln s)`, inverted to the time axis over the
/// positive half-line (real signals).
pub fn synthesize_cwt(
    coeffs: &CoefficientGrid,
    window: &WindowSpec,
) -> Result<Signal1D, TransformError> {
    if coeffs.kind != TransformKind::Cwt {
        return Err(TransformError::WrongKind { expected: TransformKind::Cwt, got: coeffs.kind });
    }
    let c_w = window.admissibility_constant()?;
    let scales = &coeffs.axis1.values;
    let times = &coeffs.axis2.values;
    check_axis("scale", scales)?;
    let db = uniform_step("time", times)?;
    let span = coeffs.signal_span.unwrap_or((times[0], times[times.len() - 1]));
    let comb = cwt_comb(span, window, scales, times);
    let (sup_lo, sup_hi) = window.fourier_support();
    let n_scales = scales.len();
    // d(ln s) weights by midpoint differences.
    let dsigma: Vec<f64> = (0..n_scales)
        .map(|j| {
            let lo = if j == 0 { scales[0].ln() } else { scales[j - 1].ln() };
            let hi = if j + 1 == n_scales { scales[j].ln() } else { scales[j + 1].ln() };
            0.5 * (hi - lo) * if j == 0 || j + 1 == n_scales { 2.0 } else { 1.0 }
        })
        .collect();
    // Accumulate the reconstructed Fourier side on the comb.
    let mut fhat = vec![Complex64::new(0.0, 0.0); comb.count];
    let contributions: Vec<(std::ops::Range<usize>, Vec<Complex64>)> = (0..n_scales)
        .into_par_iter()
        .map(|j| {
            let s = scales[j];
            let range = comb.range(sup_lo.max(0.0) / s, sup_hi / s);
            let vals: Vec<Complex64> = range
                .clone()
                .map(|m| {
                    let p = comb.node(m);
                    let g = pairwise_sum(times.len(), &|k| {
                        coeffs.at(j, k) * Complex64::from_polar(1.0, -p * times[k])
                    }) * db;
                    dsigma[j] / s.sqrt() * window.fourier_eval(s * p) * g
                })
                .collect();
            (range, vals)
        })
        .collect();
    for (range, vals) in contributions {
        for (m, v) in range.zip(vals) {
            fhat[m] += v;
        }
    }
    // fhat currently lacks the 1/(2 pi c_w) resolution constant; the
    // half-line inversion of a real signal contributes another 1/pi.
    let norm = 1.0 / (2.0 * std::f64::consts::PI * c_w * std::f64::consts::PI);
    let samples: Vec<Complex64> = times
        .par_iter()
        .map(|&t| {
            let re = pairwise_sum(comb.count, &|m| {
                fhat[m] * Complex64::from_polar(1.0, comb.node(m) * t)
            })
            .re;
            Complex64::new(norm * comb.dp * re, 0.0)
        })
        .collect();
    Ok(Signal1D::new(samples, db, times[0])?)
}

/// Short-time Fourier coefficients with a Gaussian window of time-domain
/// standard deviation `window.width`.
pub fn analyze_stft(
    signal: &Signal1D,
    window: &WindowSpec,
    freqs_hz: &[f64],
    times: &[f64],
) -> Result<CoefficientGrid, TransformError> {
    if window.family != WindowFamily::Gaussian {
        return Err(TransformError::UnsupportedWindow {
            family: window.family,
            purpose: "short-time Fourier analysis",
        });
    }
    check_axis("frequency", freqs_hz)?;
    check_axis("time", times)?;
    let w = window.width;
    let rows: Vec<Vec<Complex64>> = freqs_hz
        .par_iter()
        .map(|&f| {
            times
                .iter()
                .map(|&tau| {
                    let (lo, hi) = sample_range(signal, tau, 9.0 * w);
                    signal.dt()
                        * pairwise_sum(hi - lo, &|i| {
                            let n = lo + i;
                            let t = signal.time(n);
                            let z = (t - tau) / w;
                            signal.samples()[n]
                                * (-0.5 * z * z).exp()
                                * Complex64::from_polar(
                                    1.0,
                                    -2.0 * std::f64::consts::PI * f * t,
                                )
                        })
                })
                .collect()
        })
        .collect();
    Ok(CoefficientGrid {
        kind: TransformKind::Stft,
        axis1: AxisData { name: "frequency", values: freqs_hz.to_vec() },
        axis2: AxisData { name: "time", values: times.to_vec() },
        values: rows.into_iter().flatten().collect(),
        signal_span: Some(signal.span()),
        window_width: None,
    })
}

/// Default STFT grids: symmetric frequency axis past Nyquist plus window
/// bandwidth, hop of about 0.4 window widths.
pub fn stft_default_grid(signal: &Signal1D, window: &WindowSpec) -> (Vec<f64>, Vec<f64>) {
    let w = window.width;
    let dt = signal.dt();
    let f_max = 0.5 / dt + 5.0 / (2.0 * std::f64::consts::PI * w);
    let df = 1.0 / (20.0 * w);
    let n_f = (f_max / df).ceil() as i64;
    let freqs: Vec<f64> = (-n_f..=n_f).map(|m| m as f64 * df).collect();
    let hop = (w / (2.5 * dt)).round().max(1.0) * dt;
    let (t_lo, t_hi) = signal.span();
    let n_t = ((t_hi - t_lo + 8.0 * w) / hop).ceil() as i64;
    let times: Vec<f64> = (0..=n_t).map(|k| t_lo - 4.0 * w + k as f64 * hop).collect();
    (freqs, times)
}

fn sample_range(signal: &Signal1D, center: f64, half_width: f64) -> (usize, usize) {
    let lo = ((center - half_width - signal.t0()) / signal.dt()).floor().max(0.0) as usize;
    let hi = (((center + half_width - signal.t0()) / signal.dt()).ceil() as usize + 1)
        .min(signal.len());
    (lo.min(hi), hi)
}

/// Stockwell coefficients in the classical normalization: row `f`, column
/// `tau` holds `integral of f(t) (|f| / (W sqrt(2 pi))) e^{-(t - tau)^2 f^2
/// / (2 W^2)} e^{-2 pi i f t} dt`, with `W = window.width`. Frequency rows
/// are the Fourier frequencies `m / (N dt)`, `m = 1..n_freq`.
pub fn analyze_stockwell(
    signal: &Signal1D,
    window: &WindowSpec,
    n_freq: usize,
    times: &[f64],
) -> Result<CoefficientGrid, TransformError> {
    if window.family != WindowFamily::Gaussian {
        return Err(TransformError::UnsupportedWindow {
            family: window.family,
            purpose: "Stockwell analysis",
        });
    }
    if n_freq == 0 {
        return Err(TransformError::EmptyGrid("frequency"));
    }
    check_axis("time", times)?;
    let w = window.width;
    let df = 1.0 / (signal.len() as f64 * signal.dt());
    let freqs: Vec<f64> = (1..=n_freq).map(|m| m as f64 * df).collect();
    let norm = 1.0 / (w * (2.0 * std::f64::consts::PI).sqrt());
    let rows: Vec<Vec<Complex64>> = freqs
        .par_iter()
        .map(|&f| {
            let sigma_t = w / f;
            times
                .iter()
                .map(|&tau| {
                    let (lo, hi) = sample_range(signal, tau, 9.0 * sigma_t);
                    signal.dt()
                        * f
                        * norm
                        * pairwise_sum(hi - lo, &|i| {
                            let n = lo + i;
                            let t = signal.time(n);
                            let z = (t - tau) / sigma_t;
                            signal.samples()[n]
                                * (-0.5 * z * z).exp()
                                * Complex64::from_polar(
                                    1.0,
                                    -2.0 * std::f64::consts::PI * f * t,
                                )
                        })
                })
                .collect()
        })
        .collect();
    Ok(CoefficientGrid {
        kind: TransformKind::Stockwell,
        axis1: AxisData { name: "frequency", values: freqs },
        axis2: AxisData { name: "time", values: times.to_vec() },
        values: rows.into_iter().flatten().collect(),
        signal_span: Some(signal.span()),
        window_width: Some(w),
    })
}

/// Time grid for the Stockwell transform, padded past the widest row window.
pub fn stockwell_default_times(signal: &Signal1D, window: &WindowSpec) -> Vec<f64> {
    let f1 = 1.0 / (signal.len() as f64 * signal.dt());
    let pad = (7.0 * window.width / f1 / signal.dt()).ceil() as i64;
    let (t_lo, t_hi) = signal.span();
    let n_hi = ((t_hi - t_lo) / signal.dt()).round() as i64;
    (-pad..=n_hi + pad).map(|n| t_lo + n as f64 * signal.dt()).collect()
}

/// Per-row time marginal `sum over tau of S(tau, f) dtau`; for full
/// coverage this reproduces the Fourier transform of the signal at the row
/// frequency.
pub fn stockwell_time_marginal(
    coeffs: &CoefficientGrid,
) -> Result<Vec<Complex64>, TransformError> {
    if coeffs.kind != TransformKind::Stockwell {
        return Err(TransformError::WrongKind {
            expected: TransformKind::Stockwell,
            got: coeffs.kind,
        });
    }
    let times = &coeffs.axis2.values;
    let dtau = uniform_step("time", times)?;
    let (span_lo, span_hi) = coeffs
        .signal_span
        .ok_or_else(|| TransformError::MarginalUndefined("unknown signal span".to_string()))?;
    let w = coeffs.window_width.unwrap_or(1.0);
    let f_min = coeffs.axis1.values.iter().cloned().fold(f64::INFINITY, f64::min);
    let margin = 5.5 * w / f_min;
    if span_lo - times[0] < margin - 1e-9 || times[times.len() - 1] - span_hi < margin - 1e-9 {
        return Err(TransformError::MarginalUndefined(format!(
            "time axis must extend {margin:.3} beyond the signal on both sides"
        )));
    }
    let (n1, n2) = coeffs.shape();
    Ok((0..n1)
        .map(|i| dtau * pairwise_sum(n2, &|j| coeffs.at(i, j)))
        .collect())
}

/// Shearlet coefficients of a sampled `(E, p)` field over a `scale x shear`
/// grid at fixed translations `(alpha, beta)`: cell `(mu, nu)` holds
/// `<U(mu, nu, alpha, beta) w, F>` by quadrature over the field grid.
pub fn analyze_shearlet(
    field: &Field2D,
    window: &AnalyticVector,
    scales: &[f64],
    shears: &[f64],
    alpha: f64,
    beta: f64,
) -> Result<CoefficientGrid, TransformError> {
    check_axis("scale", scales)?;
    check_axis("shear", shears)?;
    if scales.iter().any(|&s| s <= 0.0) {
        return Err(TransformError::NonPositiveAxis("scale"));
    }
    if window.dim() != 2 {
        return Err(RepError::DimensionMismatch { expected: 2, got: window.dim() }.into());
    }
    let shear_group = GroupDescriptor::new(GroupId::Shear);
    let rep = RepTag::UShear { positive: true };
    let area = field.cell_area();
    let cells: Vec<Complex64> = scales
        .par_iter()
        .flat_map(|&mu| {
            shears
                .par_iter()
                .map(|&nu| {
                    let g = shear_group
                        .element(&[mu, nu, alpha, beta])
                        .expect("validated scale");
                    let w = apply_rep(&rep, &g, window).expect("2-d window");
                    let (rows, cols) = (field.rows(), field.cols());
                    area * pairwise_sum(rows * cols, &|k| {
                        let (i, j) = (k / cols, k % cols);
                        let (e, p) = field.coord(i, j);
                        w.eval(&[e, p]).conj() * field.at(i, j)
                    })
                })
                .collect::<Vec<_>>()
        })
        .collect();
    Ok(CoefficientGrid {
        kind: TransformKind::Shearlet,
        axis1: AxisData { name: "scale", values: scales.to_vec() },
        axis2: AxisData { name: "shear", values: shears.to_vec() },
        values: cells,
        signal_span: None,
        window_width: None,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn tone(freq: f64, n: usize, dt: f64) -> Signal1D {
        let samples: Vec<f64> = (0..n)
            .map(|i| (2.0 * std::f64::consts::PI * freq * (i as f64 * dt)).cos())
            .collect();
        Signal1D::from_real(&samples, dt, 0.0).unwrap()
    }

    #[test]
    fn cwt_peaks_at_the_morlet_scale() {
        let signal = tone(5.0, 1024, 1.0 / 256.0);
        let window = WindowSpec::morlet(6.0).unwrap();
        let scales = cwt_default_scales(&window, 2.0, 20.0, 48);
        let times = cwt_default_times(&signal, &window, &scales);
        let grid = analyze_cwt(&signal, &window, &scales, &times).unwrap();
        let expected = 6.0 / (2.0 * std::f64::consts::PI * 5.0);
        let nearest = scales
            .iter()
            .enumerate()
            .min_by(|a, b| {
                (a.1 - expected).abs().partial_cmp(&(b.1 - expected).abs()).unwrap()
            })
            .unwrap()
            .0;
        // Interior translations: those over the middle half of the signal.
        let (n1, n2) = grid.shape();
        let mut hits = 0usize;
        let mut total = 0usize;
        for k in 0..n2 {
            let b = times[k];
            if !(1.0..=3.0).contains(&b) {
                continue;
            }
            total += 1;
            let best = (0..n1)
                .max_by(|&i, &j| {
                    grid.at(i, k).norm().partial_cmp(&grid.at(j, k).norm()).unwrap()
                })
                .unwrap();
            if best.abs_diff(nearest) <= 1 {
                hits += 1;
            }
        }
        assert!(hits as f64 >= 0.9 * total as f64, "{hits}/{total} argmax hits");
    }

    #[test]
    fn zero_signal_gives_zero_coefficients() {
        let signal = Signal1D::from_real(&[0.0; 64], 1.0 / 64.0, 0.0).unwrap();
        let window = WindowSpec::morlet(6.0).unwrap();
        let scales = log_space(0.05, 0.5, 8);
        let times = cwt_default_times(&signal, &window, &scales);
        let grid = analyze_cwt(&signal, &window, &scales, &times).unwrap();
        assert!(grid.values.iter().all(|z| z.norm() == 0.0));
    }

    #[test]
    fn cwt_round_trip_on_a_tone() {
        let signal = tone(5.0, 1024, 1.0 / 256.0);
        let window = WindowSpec::morlet(6.0).unwrap();
        let scales = cwt_default_scales(&window, 3.0, 9.0, 48);
        let times = cwt_default_times(&signal, &window, &scales);
        let grid = analyze_cwt(&signal, &window, &scales, &times).unwrap();
        let rec = synthesize_cwt(&grid, &window).unwrap();
        // Compare over the padded axis against the zero-extended signal.
        let mut reference = vec![Complex64::new(0.0, 0.0); times.len()];
        let offset = times.iter().position(|&b| (b - signal.t0()).abs() < 1e-9).unwrap();
        for (n, &z) in signal.samples().iter().enumerate() {
            reference[offset + n] = z;
        }
        let reference = Signal1D::new(reference, rec.dt(), rec.t0()).unwrap();
        let err = rec.relative_l2_error(&reference);
        assert!(err <= 1e-2, "round-trip relative L2 error {err}");
    }

    #[test]
    fn synthesize_rejects_inadmissible_window() {
        let signal = tone(5.0, 256, 1.0 / 128.0);
        let window = WindowSpec::gaussian(0.0, 1.0).unwrap();
        // Analysis itself is fine with any window.
        let scales = log_space(0.05, 0.5, 8);
        let times = cwt_default_times(&signal, &window, &scales);
        let grid = analyze_cwt(&signal, &window, &scales, &times).unwrap();
        assert!(matches!(
            synthesize_cwt(&grid, &window),
            Err(TransformError::Window(WindowError::Inadmissible { .. }))
        ));
    }

    #[test]
    fn stockwell_marginal_matches_fourier_oracle() {
        let n = 256;
        let dt = 1.0 / 256.0;
        let signal = tone(8.0, n, dt);
        let window = WindowSpec::gaussian(0.0, 1.0).unwrap();
        let times = stockwell_default_times(&signal, &window);
        let grid = analyze_stockwell(&signal, &window, 16, &times).unwrap();
        let marginal = stockwell_time_marginal(&grid).unwrap();
        for (row, &f) in grid.axis1.values.iter().enumerate() {
            let oracle = signal.dt()
                * pairwise_sum(signal.len(), &|k| {
                    signal.samples()[k]
                        * Complex64::from_polar(
                            1.0,
                            -2.0 * std::f64::consts::PI * f * signal.time(k),
                        )
                });
            let denom = oracle.norm().max(1e-3);
            assert!(
                (marginal[row] - oracle).norm() / denom <= 1e-6,
                "row {row} at {f} Hz: marginal {} vs oracle {}",
                marginal[row],
                oracle
            );
        }
    }

    #[test]
    fn stockwell_magnitude_peaks_on_the_tone_row() {
        let signal = tone(8.0, 256, 1.0 / 256.0);
        let window = WindowSpec::gaussian(0.0, 1.0).unwrap();
        let times = stockwell_default_times(&signal, &window);
        let grid = analyze_stockwell(&signal, &window, 16, &times).unwrap();
        let (n1, n2) = grid.shape();
        let row_energy: Vec<f64> = (0..n1)
            .map(|i| (0..n2).map(|j| grid.at(i, j).norm_sqr()).sum())
            .collect();
        let best = (0..n1)
            .max_by(|&i, &j| row_energy[i].partial_cmp(&row_energy[j]).unwrap())
            .unwrap();
        assert_relative_eq!(grid.axis1.values[best], 8.0, epsilon = 1e-12);
    }

    #[test]
    fn marginal_needs_time_coverage() {
        let signal = tone(8.0, 256, 1.0 / 256.0);
        let window = WindowSpec::gaussian(0.0, 1.0).unwrap();
        let times: Vec<f64> = (0..256).map(|n| n as f64 / 256.0).collect();
        let grid = analyze_stockwell(&signal, &window, 16, &times).unwrap();
        assert!(matches!(
            stockwell_time_marginal(&grid),
            Err(TransformError::MarginalUndefined(_))
        ));
    }

    #[test]
    fn stft_energy_identity() {
        let n = 512;
        let dt = 1.0 / 128.0;
        let samples: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 * dt;
                (2.0 * std::f64::consts::PI * 11.0 * t).cos()
                    + 0.5 * (2.0 * std::f64::consts::PI * 23.0 * t).sin()
            })
            .collect();
        let signal = Signal1D::from_real(&samples, dt, 0.0).unwrap();
        let window = WindowSpec::gaussian(0.0, 0.05).unwrap();
        let (freqs, times) = stft_default_grid(&signal, &window);
        let grid = analyze_stft(&signal, &window, &freqs, &times).unwrap();
        let df = freqs[1] - freqs[0];
        let dtau = times[1] - times[0];
        let window_energy = window.width * std::f64::consts::PI.sqrt();
        let total: f64 = grid.values.iter().map(|z| z.norm_sqr()).sum();
        let energy = total * df * dtau / window_energy;
        let err = (energy - signal.energy()).abs() / signal.energy();
        assert!(err <= 0.01, "energy identity off by {err}");
    }

    #[test]
    fn shearlet_dual_path_agreement() {
        // Path (a): symbolic representation action then quadrature; path
        // (b): the same coefficient with the transformed window evaluated
        // directly under the integral.
        let window = AnalyticVector::gaussian_2d([0.0, 1.0], [1.0, 0.5]);
        let field = Field2D::from_fn(48, 48, [-3.0, 0.1], [0.125, 0.125], |e, p| {
            Complex64::new((-e * e - (p - 1.5) * (p - 1.5)).exp(), 0.3 * e * p)
        })
        .unwrap();
        let scales = log_space(0.5, 2.0, 6);
        let shears: Vec<f64> = (-2..=2).map(|k| k as f64 * 0.4).collect();
        let grid = analyze_shearlet(&field, &window, &scales, &shears, 0.2, -0.1).unwrap();
        let area = field.cell_area();
        for (j, &mu) in scales.iter().enumerate() {
            for (k, &nu) in shears.iter().enumerate() {
                let mut direct = Complex64::new(0.0, 0.0);
                for i in 0..field.rows() {
                    for l in 0..field.cols() {
                        let (e, p) = field.coord(i, l);
                        // u_shear formula evaluated pointwise.
                        let rt = mu.sqrt();
                        let phase = Complex64::from_polar(1.0, e * (-0.1) + p * 0.2);
                        let w = mu.powf(0.75)
                            * phase
                            * window.eval(&[rt * (e + p * nu), mu * p]);
                        direct += w.conj() * field.at(i, l) * area;
                    }
                }
                let got = grid.at(j, k);
                assert!(
                    (got - direct).norm() <= 1e-10 * direct.norm().max(1.0),
                    "cell ({j}, {k}): {got} vs {direct}"
                );
            }
        }
    }

    #[test]
    fn analyze_is_linear() {
        let f = tone(5.0, 256, 1.0 / 128.0);
        let g = tone(9.0, 256, 1.0 / 128.0);
        let combined: Vec<Complex64> = f
            .samples()
            .iter()
            .zip(g.samples())
            .map(|(a, b)| 2.0 * a - 0.5 * b)
            .collect();
        let combined = Signal1D::new(combined, f.dt(), f.t0()).unwrap();
        let window = WindowSpec::morlet(6.0).unwrap();
        let scales = log_space(0.05, 0.3, 8);
        let times = cwt_default_times(&combined, &window, &scales);
        let ga = analyze_cwt(&f, &window, &scales, &times).unwrap();
        let gb = analyze_cwt(&g, &window, &scales, &times).unwrap();
        let gc = analyze_cwt(&combined, &window, &scales, &times).unwrap();
        let scale: f64 = gc.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        for ((a, b), c) in ga.values.iter().zip(&gb.values).zip(&gc.values) {
            assert!((2.0 * a - 0.5 * b - c).norm() <= 1e-10 * scale.max(1.0));
        }
    }

    #[test]
    fn cwt_covariance_under_time_shift() {
        let n = 512;
        let dt = 1.0 / 128.0;
        let shift = 8usize;
        // Envelope keeps the last samples at zero so the shift loses nothing.
        let base: Vec<f64> = (0..n)
            .map(|i| {
                let t = i as f64 * dt;
                let z = (t - 1.2) / 0.4;
                (-0.5 * z * z).exp() * (2.0 * std::f64::consts::PI * 10.0 * t).cos()
            })
            .collect();
        let mut shifted = vec![0.0; n];
        shifted[shift..].copy_from_slice(&base[..n - shift]);
        let f = Signal1D::from_real(&base, dt, 0.0).unwrap();
        let fs = Signal1D::from_real(&shifted, dt, 0.0).unwrap();
        let window = WindowSpec::morlet(6.0).unwrap();
        let scales = cwt_default_scales(&window, 6.0, 16.0, 12);
        let times = cwt_default_times(&f, &window, &scales);
        let ga = analyze_cwt(&f, &window, &scales, &times).unwrap();
        let gb = analyze_cwt(&fs, &window, &scales, &times).unwrap();
        let peak: f64 = ga.values.iter().map(|z| z.norm()).fold(0.0, f64::max);
        let (n1, n2) = ga.shape();
        for i in 0..n1 {
            for j in 0..n2 - shift {
                let defect = (gb.at(i, j + shift) - ga.at(i, j)).norm();
                assert!(defect <= 1e-10 * peak, "bin ({i}, {j}): defect {defect}");
            }
        }
    }
}
