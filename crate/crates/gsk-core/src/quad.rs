//! Composite Gauss-Legendre quadrature and deterministic pairwise summation.

use num_complex::Complex64;

/// Nodes and weights of the `n`-point Gauss-Legendre rule on `[-1, 1]`.
///
/// Newton iteration on the Legendre recurrence; accurate to machine precision
/// for the small per-panel orders used here.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(n >= 1, "quadrature order must be at least 1");
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    let m = n.div_ceil(2);
    for i in 0..m {
        // Tricomi initial guess for the i-th positive root.
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (p, d) = legendre_pair(n, x);
            dp = d;
            let dx = p / d;
            x -= dx;
            if dx.abs() < 1e-15 {
                break;
            }
        }
        let w = 2.0 / ((1.0 - x * x) * dp * dp);
        nodes[i] = -x;
        nodes[n - 1 - i] = x;
        weights[i] = w;
        weights[n - 1 - i] = w;
    }
    if n % 2 == 1 {
        nodes[n / 2] = 0.0;
    }
    (nodes, weights)
}

/// Value and derivative of the Legendre polynomial P_n at `x`.
fn legendre_pair(n: usize, x: f64) -> (f64, f64) {
    let mut p0 = 1.0;
    let mut p1 = x;
    for k in 2..=n {
        let kf = k as f64;
        let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
        p0 = p1;
        p1 = p2;
    }
    let d = n as f64 * (x * p1 - p0) / (x * x - 1.0);
    (p1, d)
}

/// A composite Gauss-Legendre rule: `panels` equal panels of `order` points
/// each on `[lo, hi]`.
pub fn composite_gauss_legendre(lo: f64, hi: f64, panels: usize, order: usize) -> (Vec<f64>, Vec<f64>) {
    assert!(hi > lo, "empty quadrature interval");
    assert!(panels >= 1);
    let (base_x, base_w) = gauss_legendre(order);
    let h = (hi - lo) / panels as f64;
    let mut nodes = Vec::with_capacity(panels * order);
    let mut weights = Vec::with_capacity(panels * order);
    for p in 0..panels {
        let a = lo + p as f64 * h;
        let mid = a + 0.5 * h;
        for (&x, &w) in base_x.iter().zip(&base_w) {
            nodes.push(mid + 0.5 * h * x);
            weights.push(0.5 * h * w);
        }
    }
    (nodes, weights)
}

/// Sums `f(0) + ... + f(n-1)` by pairwise reduction.
///
/// The reduction tree is fixed by `n` alone, so the result is independent of
/// any parallel evaluation schedule and rounding error grows like O(log n).
pub fn pairwise_sum<F: Fn(usize) -> Complex64>(n: usize, f: &F) -> Complex64 {
    fn go<F: Fn(usize) -> Complex64>(lo: usize, hi: usize, f: &F) -> Complex64 {
        if hi - lo <= 32 {
            let mut acc = Complex64::new(0.0, 0.0);
            for i in lo..hi {
                acc += f(i);
            }
            acc
        } else {
            let mid = lo + (hi - lo) / 2;
            go(lo, mid, f) + go(mid, hi, f)
        }
    }
    if n == 0 {
        Complex64::new(0.0, 0.0)
    } else {
        go(0, n, f)
    }
}

/// Pairwise sum over an explicit slice.
pub fn pairwise_sum_slice(values: &[Complex64]) -> Complex64 {
    pairwise_sum(values.len(), &|i| values[i])
}
