//! Induced unitary representations on Gaussian-exponential vectors.
//!
//! Every representation here acts on [`AnalyticVector`]s by an affine
//! substitution of the orbit coordinates, a phase `exp(i * quadratic)` and a
//! Jacobian-normalizing factor, so the action is exact on the coefficients.
//! Quadrature enters only through inner products on an [`OrbitGrid`].
//!
//! Carrier charts: the affine family and its restrictions act on `(E, p)`;
//! the extended Galilei-Schrodinger representations act on `(k1, k2)`; the
//! Heisenberg representation acts on the line; the Stockwell representation
//! acts on `(t, p)`. The Galilei-Schrodinger representations `u_gs`/`u_gts`
//! are realized in the `(E, p)` chart, unitarily equivalent to the
//! `(t = E/p^2, p)` form via the chart change and its `|p|` half-density
//! factor; the `(E, p)` form keeps the class of quadratic exponentials
//! closed for every group element.

use crate::analytic::{AnalyticError, AnalyticVector};
use crate::cocycle::{Exponent, ExponentId};
use crate::embed::EmbeddingMap;
use crate::group::{GroupDescriptor, GroupElement, GroupError, GroupId};
use crate::quad::{composite_gauss_legendre, pairwise_sum};
use num_complex::Complex64;
use thiserror::Error;

/// Tail mass a test vector may leave outside the grid box.
pub const TAIL_TOL: f64 = 1e-12;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum RepError {
    #[error("{rep} takes elements of {expected}, got {got}")]
    WrongGroup { rep: String, expected: GroupDescriptor, got: GroupDescriptor },
    #[error("vector dimension {got} does not match the representation's orbit dimension {expected}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("grid has {got} axes, vectors have dimension {expected}")]
    GridMismatch { expected: usize, got: usize },
    #[error("constant {name} must be non-zero and finite, got {value}")]
    InvalidConstant { name: &'static str, value: f64 },
    #[error("vector tail mass {tail:e} outside the grid box exceeds {TAIL_TOL:e}")]
    DomainTruncation { tail: f64 },
    #[error("embedding targets {target}, representation lives on {rep}")]
    IncompatibleEmbedding { target: GroupDescriptor, rep: GroupDescriptor },
    #[error("projective comparison needs elements of the base group {expected}")]
    NotProjective { expected: GroupId },
    #[error(transparent)]
    Analytic(#[from] AnalyticError),
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// One axis of a quadrature grid.
#[derive(Debug, Clone, PartialEq)]
pub struct GridAxis {
    pub lo: f64,
    pub hi: f64,
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GridAxis {
    /// Composite Gauss-Legendre axis.
    pub fn gauss_legendre(lo: f64, hi: f64, panels: usize, order: usize) -> Self {
        let (nodes, weights) = composite_gauss_legendre(lo, hi, panels, order);
        GridAxis { lo, hi, nodes, weights }
    }
}

/// Quadrature grid over one or two orbit coordinates.
#[derive(Debug, Clone, PartialEq)]
pub struct OrbitGrid {
    axes: Vec<GridAxis>,
}

impl OrbitGrid {
    pub fn new_1d(axis: GridAxis) -> Self {
        OrbitGrid { axes: vec![axis] }
    }

    pub fn new_2d(axis1: GridAxis, axis2: GridAxis) -> Self {
        OrbitGrid { axes: vec![axis1, axis2] }
    }

    /// Default line grid: `[-10, 10]`, 1024 points.
    pub fn default_line() -> Self {
        Self::new_1d(GridAxis::gauss_legendre(-10.0, 10.0, 256, 4))
    }

    /// Default half-line grid on the `sign` side, `0.05 <= |x| <= 10`.
    pub fn default_half_line(positive: bool) -> Self {
        let (lo, hi) = if positive { (0.05, 10.0) } else { (-10.0, -0.05) };
        Self::new_1d(GridAxis::gauss_legendre(lo, hi, 256, 4))
    }

    /// Default half-plane grid: full line times a half line.
    pub fn default_half_plane(positive: bool) -> Self {
        let (lo, hi) = if positive { (0.05, 10.0) } else { (-10.0, -0.05) };
        OrbitGrid {
            axes: vec![
                GridAxis::gauss_legendre(-10.0, 10.0, 256, 4),
                GridAxis::gauss_legendre(lo, hi, 256, 4),
            ],
        }
    }

    pub fn dim(&self) -> usize {
        self.axes.len()
    }

    pub fn axes(&self) -> &[GridAxis] {
        &self.axes
    }
}

/// Inner product `<v1, v2> = integral of conj(v1) v2` over the grid,
/// conjugate-linear in the first argument.
pub fn inner_product(
    v1: &AnalyticVector,
    v2: &AnalyticVector,
    grid: &OrbitGrid,
) -> Result<Complex64, RepError> {
    if v1.dim() != v2.dim() {
        return Err(RepError::DimensionMismatch { expected: v1.dim(), got: v2.dim() });
    }
    if grid.dim() != v1.dim() {
        return Err(RepError::GridMismatch { expected: v1.dim(), got: grid.dim() });
    }
    // conj(v1) v2 is itself a quadratic exponential; evaluate it once.
    let mut a = [[Complex64::new(0.0, 0.0); 2]; 2];
    let mut b = [Complex64::new(0.0, 0.0); 2];
    for i in 0..v1.dim() {
        b[i] = v1.linear()[i].conj() + v2.linear()[i];
        for j in 0..v1.dim() {
            a[i][j] = v1.quad()[i][j].conj() + v2.quad()[i][j];
        }
    }
    let c = v1.constant().conj() + v2.constant();
    if grid.dim() == 1 {
        let ax = &grid.axes[0];
        Ok(pairwise_sum(ax.nodes.len(), &|i| {
            let x = ax.nodes[i];
            ax.weights[i] * (a[0][0] * x * x + b[0] * x + c).exp()
        }))
    } else {
        let (ax, ay) = (&grid.axes[0], &grid.axes[1]);
        let ny = ay.nodes.len();
        Ok(pairwise_sum(ax.nodes.len() * ny, &|k| {
            let (i, j) = (k / ny, k % ny);
            let (x, y) = (ax.nodes[i], ay.nodes[j]);
            let expo = a[0][0] * x * x
                + 2.0 * a[0][1] * x * y
                + a[1][1] * y * y
                + b[0] * x
                + b[1] * y
                + c;
            (ax.weights[i] * ay.weights[j]) * expo.exp()
        }))
    }
}

/// Fraction of the density `|v|^2` outside the grid box (marginal bound).
pub fn tail_mass_fraction(v: &AnalyticVector, grid: &OrbitGrid) -> f64 {
    let (mean, std) = v.density_moments();
    let mut tail = 0.0;
    for (i, ax) in grid.axes.iter().enumerate() {
        let z_lo = (mean[i] - ax.lo) / (std[i] * std::f64::consts::SQRT_2);
        let z_hi = (ax.hi - mean[i]) / (std[i] * std::f64::consts::SQRT_2);
        tail += 0.5 * libm::erfc(z_lo) + 0.5 * libm::erfc(z_hi);
    }
    tail
}

/// The bundled representations.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum RepTag {
    /// Affine Galilei on the `(E, p)` half-plane.
    UAff { positive: bool },
    /// Affine Galilei on the `E` half-line.
    VAff { positive: bool },
    /// Shearlet restriction on the `(E, p)` half-plane.
    UShear { positive: bool },
    /// Wavelet representation on the `p` half-line.
    UWav { positive: bool },
    /// Extended Galilei-Schrodinger on the `(k1, k2)` half-plane.
    UGms { positive: bool, kappa: f64, mass: f64 },
    /// Heisenberg representation on the line, orbit constant `s`.
    UHeis { s: f64 },
    /// Galilei-Schrodinger on the `(E, p)` half-plane.
    UGs { positive: bool },
    /// Trivially extended Galilei-Schrodinger; adds the central and
    /// coboundary phases to `UGs`.
    UGts { positive: bool },
    /// Stockwell representation on the `(t, p)` half-plane.
    USw { positive: bool },
}

impl RepTag {
    /// Extended Galilei-Schrodinger representation; `kappa` and `mass` must
    /// be non-zero.
    pub fn ugms(positive: bool, kappa: f64, mass: f64) -> Result<Self, RepError> {
        if !kappa.is_finite() || kappa == 0.0 {
            return Err(RepError::InvalidConstant { name: "kappa", value: kappa });
        }
        if !mass.is_finite() || mass == 0.0 {
            return Err(RepError::InvalidConstant { name: "M", value: mass });
        }
        Ok(RepTag::UGms { positive, kappa, mass })
    }

    /// Orbit dimension of the carrier space.
    pub fn dim(&self) -> usize {
        match self {
            RepTag::VAff { .. } | RepTag::UWav { .. } | RepTag::UHeis { .. } => 1,
            _ => 2,
        }
    }

    /// The group whose elements the representation accepts.
    pub fn group_descriptor(&self) -> GroupDescriptor {
        match self {
            RepTag::UAff { .. } | RepTag::VAff { .. } => GroupDescriptor::new(GroupId::Gaff),
            RepTag::UShear { .. } => GroupDescriptor::new(GroupId::Shear),
            RepTag::UWav { .. } => GroupDescriptor::new(GroupId::Wav),
            RepTag::UGms { mass, .. } => {
                GroupDescriptor::with_mass(GroupId::Gms, *mass).expect("validated mass")
            }
            RepTag::UHeis { .. } => GroupDescriptor::new(GroupId::Heis),
            RepTag::UGs { .. } => GroupDescriptor::new(GroupId::Gs),
            RepTag::UGts { .. } => GroupDescriptor::new(GroupId::Gts),
            RepTag::USw { .. } => GroupDescriptor::new(GroupId::Sw),
        }
    }

    /// Default quadrature grid of the rep's orbit chart.
    pub fn default_grid(&self) -> OrbitGrid {
        match self {
            RepTag::UAff { positive }
            | RepTag::UShear { positive }
            | RepTag::UGms { positive, .. }
            | RepTag::UGs { positive }
            | RepTag::UGts { positive }
            | RepTag::USw { positive } => OrbitGrid::default_half_plane(*positive),
            RepTag::VAff { positive } | RepTag::UWav { positive } => {
                OrbitGrid::default_half_line(*positive)
            }
            RepTag::UHeis { .. } => OrbitGrid::default_line(),
        }
    }

    pub fn name(&self) -> String {
        let sign = |p: &bool| if *p { "+" } else { "-" };
        match self {
            RepTag::UAff { positive } => format!("u_aff{}", sign(positive)),
            RepTag::VAff { positive } => format!("v_aff{}", sign(positive)),
            RepTag::UShear { positive } => format!("u_shear{}", sign(positive)),
            RepTag::UWav { positive } => format!("u_wav{}", sign(positive)),
            RepTag::UGms { positive, .. } => format!("u_gms{}", sign(positive)),
            RepTag::UHeis { .. } => "u_heis".to_string(),
            RepTag::UGs { positive } => format!("u_gs{}", sign(positive)),
            RepTag::UGts { positive } => format!("u_gts{}", sign(positive)),
            RepTag::USw { positive } => format!("u_sw{}", sign(positive)),
        }
    }
}

const NO_QUAD: [[f64; 2]; 2] = [[0.0; 2]; 2];

/// Applies `U(g)` to `v`: exact update of the `(A, b, c)` coefficients.
pub fn apply_rep(
    rep: &RepTag,
    g: &GroupElement,
    v: &AnalyticVector,
) -> Result<AnalyticVector, RepError> {
    let expected = rep.group_descriptor();
    if g.descriptor() != &expected {
        return Err(RepError::WrongGroup { rep: rep.name(), expected, got: *g.descriptor() });
    }
    if v.dim() != rep.dim() {
        return Err(RepError::DimensionMismatch { expected: rep.dim(), got: v.dim() });
    }
    let x = g.params();
    let out = match rep {
        // e^{(sigma+tau)/2} e^{i(Eb + pa)} psi(e^tau (E + p v), e^sigma p)
        RepTag::UAff { .. } => {
            let (b, a, vv, s, t) = (x[0], x[1], x[2], x[3], x[4]);
            let l = [[t.exp(), t.exp() * vv], [0.0, s.exp()]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[b, a], 0.0)
                .mul_log_scale(0.5 * (s + t))
        }
        // e^{tau/2} e^{iEb} psi(e^tau E)
        RepTag::VAff { .. } => {
            let (b, t) = (x[0], x[4]);
            let l = [[t.exp(), 0.0], [0.0, 0.0]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[b, 0.0], 0.0)
                .mul_log_scale(0.5 * t)
        }
        // mu^{3/4} e^{i(E beta + p alpha)} psi(sqrt(mu)(E + p nu), mu p)
        RepTag::UShear { .. } => {
            let (mu, nu, alpha, beta) = (x[0], x[1], x[2], x[3]);
            let rt = mu.sqrt();
            let l = [[rt, rt * nu], [0.0, mu]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[beta, alpha], 0.0)
                .mul_log_scale(0.75 * mu.ln())
        }
        // e^{sigma/2} e^{ipa} psi(e^sigma p)
        RepTag::UWav { .. } => {
            let (a, s) = (x[0], x[1]);
            let l = [[s.exp(), 0.0], [0.0, 0.0]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[a, 0.0], 0.0)
                .mul_log_scale(0.5 * s)
        }
        // e^{3 sigma/2} e^{i(kappa theta + k1 a + (k2 + k1^2/(2 kappa M)) b)}
        //   psi(e^sigma (k1 + kappa M v), e^{2 sigma} k2)
        RepTag::UGms { kappa, mass, .. } => {
            let (theta, b, a, vv, s) = (x[0], x[1], x[2], x[3], x[4]);
            let l = [[s.exp(), 0.0], [0.0, (2.0 * s).exp()]];
            let shift = [s.exp() * kappa * mass * vv, 0.0];
            let quad = [[b / (2.0 * kappa * mass), 0.0], [0.0, 0.0]];
            v.substitute_affine(&l, &shift)
                .mul_phase(&quad, &[a, b], kappa * theta)
                .mul_log_scale(1.5 * s)
        }
        // e^{is theta} e^{itq} psi(t + s p)
        RepTag::UHeis { s } => {
            let (theta, q, p) = (x[0], x[1], x[2]);
            let l = [[1.0, 0.0], [0.0, 0.0]];
            v.substitute_affine(&l, &[s * p, 0.0]).mul_phase(&NO_QUAD, &[q, 0.0], s * theta)
        }
        // tau = 2 sigma restriction of the affine representation.
        RepTag::UGs { .. } => {
            let (b, a, vv, s) = (x[0], x[1], x[2], x[3]);
            let l = [[(2.0 * s).exp(), (2.0 * s).exp() * vv], [0.0, s.exp()]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[b, a], 0.0)
                .mul_log_scale(1.5 * s)
        }
        // e^{i theta} e^{i zeta_T(g)} U_gs(g), zeta_T = a e^{-sigma}
        RepTag::UGts { positive } => {
            let (theta, b, a, vv, s) = (x[0], x[1], x[2], x[3], x[4]);
            let base = GroupDescriptor::new(GroupId::Gs).element(&[b, a, vv, s])?;
            let inner = apply_rep(&RepTag::UGs { positive: *positive }, &base, v)?;
            inner.mul_phase(&NO_QUAD, &[0.0, 0.0], theta + a * (-s).exp())
        }
        // e^{i(theta + gamma delta)} e^{ip delta} gamma^{-1/2} psi(t, p/gamma)
        RepTag::USw { .. } => {
            let (theta, gamma, delta) = (x[0], x[1], x[2]);
            let l = [[1.0, 0.0], [0.0, 1.0 / gamma]];
            v.substitute_affine(&l, &[0.0, 0.0])
                .mul_phase(&NO_QUAD, &[0.0, delta], theta + gamma * delta)
                .mul_log_scale(-0.5 * gamma.ln())
        }
    };
    Ok(out)
}

/// Coefficient distance between `U(g1) U(g2) v` and `omega U(g1 g2) v`.
///
/// For elements of the representation's own group `omega = 1`: the extended
/// composition already accumulates the exponent in `theta`. Passing
/// Galilei-Schrodinger elements to a `u_gts` tag instead compares the
/// `theta = 0` lifts against the multiplier `omega = e^{i xi_2(g1, g2)}`.
pub fn rep_homomorphism_defect(
    rep: &RepTag,
    g1: &GroupElement,
    g2: &GroupElement,
    v: &AnalyticVector,
) -> Result<f64, RepError> {
    let expected = rep.group_descriptor();
    if g1.descriptor() == &expected {
        let lhs = apply_rep(rep, g1, &apply_rep(rep, g2, v)?)?;
        let rhs = apply_rep(rep, &g1.compose(g2)?, v)?;
        return Ok(lhs.distance(&rhs));
    }
    // Projective comparison for the theta = 0 lift over gs.
    if let RepTag::UGts { .. } = rep {
        if g1.group() == GroupId::Gs && g2.group() == GroupId::Gs {
            let lift = |g: &GroupElement| {
                let mut params = vec![0.0];
                params.extend_from_slice(g.params());
                expected.element(&params)
            };
            let xi2 = Exponent::new(ExponentId::XiGs2);
            let omega = xi2.value(g1, g2).map_err(|_| RepError::NotProjective {
                expected: GroupId::Gs,
            })?;
            let lhs = apply_rep(rep, &lift(g1)?, &apply_rep(rep, &lift(g2)?, v)?)?;
            let rhs = apply_rep(rep, &lift(&g1.compose(g2)?)?, v)?
                .mul_phase(&NO_QUAD, &[0.0, 0.0], omega);
            return Ok(lhs.distance(&rhs));
        }
    }
    Err(RepError::WrongGroup { rep: rep.name(), expected, got: *g1.descriptor() })
}

/// Relative unitarity defect `|<U v1, U v2> - <v1, v2>| / |<v1, v2>|`.
///
/// All four vectors must sit inside the grid box (tail mass below
/// [`TAIL_TOL`]); half-plane carriers are handled by concentration, not by
/// boundary-corrected integrals.
pub fn unitarity_defect(
    rep: &RepTag,
    g: &GroupElement,
    v1: &AnalyticVector,
    v2: &AnalyticVector,
    grid: &OrbitGrid,
) -> Result<f64, RepError> {
    let u1 = apply_rep(rep, g, v1)?;
    let u2 = apply_rep(rep, g, v2)?;
    for v in [v1, v2, &u1, &u2] {
        let tail = tail_mass_fraction(v, grid);
        if tail > TAIL_TOL {
            return Err(RepError::DomainTruncation { tail });
        }
    }
    let before = inner_product(v1, v2, grid)?;
    let after = inner_product(&u1, &u2, grid)?;
    Ok((after - before).norm() / before.norm())
}

/// A representation pre-composed with a subgroup embedding.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct RestrictedRep {
    rep: RepTag,
    embedding: EmbeddingMap,
}

/// Restricts `rep` along `e`: the result accepts source-group elements.
pub fn restrict_rep(rep: &RepTag, e: &EmbeddingMap) -> Result<RestrictedRep, RepError> {
    if e.target() != &rep.group_descriptor() {
        return Err(RepError::IncompatibleEmbedding {
            target: *e.target(),
            rep: rep.group_descriptor(),
        });
    }
    Ok(RestrictedRep { rep: *rep, embedding: *e })
}

impl RestrictedRep {
    pub fn rep(&self) -> &RepTag {
        &self.rep
    }

    pub fn embedding(&self) -> &EmbeddingMap {
        &self.embedding
    }

    pub fn apply(&self, g: &GroupElement, v: &AnalyticVector) -> Result<AnalyticVector, RepError> {
        apply_rep(&self.rep, &self.embedding.apply(g)?, v)
    }
}

/// The tensor-factorization claims checked by [`factorization_defect`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FactorizationCase {
    /// Wavelet subgroup of the affine representation: identity on `E`,
    /// wavelet representation on `p`.
    WaveletInAff { positive: bool },
    /// Heisenberg subgroup of the extended Galilei-Schrodinger
    /// representation: Heisenberg representation (orbit constant `kappa`)
    /// on `k1`, identity on `k2`.
    HeisenbergInGms { positive: bool, kappa: f64, mass: f64 },
    /// Stockwell representation: identity on `t`, 1-d Stockwell action on `p`.
    StockwellInSw { positive: bool },
}

/// Distance between the restricted action on `spectator (x) acted` and
/// `spectator (x) (factor action on acted)`; zero certifies the identity (x)
/// factor structure.
pub fn factorization_defect(
    case: &FactorizationCase,
    spectator: &AnalyticVector,
    acted: &AnalyticVector,
    g: &GroupElement,
) -> Result<f64, RepError> {
    if spectator.dim() != 1 || acted.dim() != 1 {
        return Err(RepError::DimensionMismatch {
            expected: 1,
            got: spectator.dim().max(acted.dim()),
        });
    }
    match case {
        FactorizationCase::WaveletInAff { positive } => {
            let rep = RepTag::UAff { positive: *positive };
            let e = crate::embed::embedding_between(
                &GroupDescriptor::new(GroupId::Wav),
                &GroupDescriptor::new(GroupId::Gaff),
            )?;
            let full = apply_rep(&rep, &e.apply(g)?, &spectator.tensor(acted)?)?;
            let factor = apply_rep(&RepTag::UWav { positive: *positive }, g, acted)?;
            Ok(full.distance(&spectator.tensor(&factor)?))
        }
        FactorizationCase::HeisenbergInGms { positive, kappa, mass } => {
            let rep = RepTag::ugms(*positive, *kappa, *mass)?;
            let e = crate::embed::embedding_between(
                &GroupDescriptor::new(GroupId::Heis),
                &rep.group_descriptor(),
            )?;
            let full = apply_rep(&rep, &e.apply(g)?, &acted.tensor(spectator)?)?;
            let factor = apply_rep(&RepTag::UHeis { s: *kappa }, g, acted)?;
            Ok(full.distance(&factor.tensor(spectator)?))
        }
        FactorizationCase::StockwellInSw { positive } => {
            let rep = RepTag::USw { positive: *positive };
            let full = apply_rep(&rep, g, &spectator.tensor(acted)?)?;
            let factor = stockwell_factor_action(g, acted)?;
            Ok(full.distance(&spectator.tensor(&factor)?))
        }
    }
}

/// 1-d Stockwell action on the `p` factor:
/// `e^{i(theta + gamma delta)} e^{ip delta} gamma^{-1/2} chi(p / gamma)`.
fn stockwell_factor_action(
    g: &GroupElement,
    chi: &AnalyticVector,
) -> Result<AnalyticVector, RepError> {
    if g.group() != GroupId::Sw {
        return Err(RepError::WrongGroup {
            rep: "u_sw factor".to_string(),
            expected: GroupDescriptor::new(GroupId::Sw),
            got: *g.descriptor(),
        });
    }
    let (theta, gamma, delta) = (g.params()[0], g.params()[1], g.params()[2]);
    let l = [[1.0 / gamma, 0.0], [0.0, 0.0]];
    Ok(chi
        .substitute_affine(&l, &[0.0, 0.0])
        .mul_phase(&NO_QUAD, &[delta, 0.0], theta + gamma * delta)
        .mul_log_scale(-0.5 * gamma.ln()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn gaff(params: &[f64]) -> GroupElement {
        GroupDescriptor::new(GroupId::Gaff).element(params).unwrap()
    }

    #[test]
    fn heis_translation_example() {
        // exp(-t^2) under (theta, q, p) = (0, 0, 1) at s = 1 becomes exp(-(t+1)^2).
        let rep = RepTag::UHeis { s: 1.0 };
        let g = GroupDescriptor::new(GroupId::Heis).element(&[0.0, 0.0, 1.0]).unwrap();
        let v = AnalyticVector::new_1d(
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let w = apply_rep(&rep, &g, &v).unwrap();
        assert_relative_eq!(w.quad()[0][0].re, -1.0, epsilon = 1e-15);
        assert_relative_eq!(w.linear()[0].re, -2.0, epsilon = 1e-15);
        assert_relative_eq!(w.constant().re, -1.0, epsilon = 1e-15);
    }

    #[test]
    fn uaff_dilation_example() {
        // exp(-E^2 - p^2) under sigma = ln 4 picks up the factor 2 and the
        // substitution p -> 4p.
        let rep = RepTag::UAff { positive: true };
        let g = gaff(&[0.0, 0.0, 0.0, 4.0_f64.ln(), 0.0]);
        let v = AnalyticVector::new_2d(
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let w = apply_rep(&rep, &g, &v).unwrap();
        assert_relative_eq!(w.quad()[0][0].re, -1.0, epsilon = 1e-15);
        assert_relative_eq!(w.quad()[1][1].re, -16.0, epsilon = 1e-15);
        assert_relative_eq!(w.constant().re, 4.0_f64.ln() / 2.0, epsilon = 1e-15);
    }

    #[test]
    fn identity_acts_trivially() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        let reps = all_reps();
        for rep in &reps {
            let d = rep.group_descriptor();
            let v = test_vector(rep, &mut rng);
            let w = apply_rep(rep, &d.identity(), &v).unwrap();
            assert!(v.distance(&w) < 1e-15, "{}", rep.name());
        }
    }

    fn all_reps() -> Vec<RepTag> {
        vec![
            RepTag::UAff { positive: true },
            RepTag::UAff { positive: false },
            RepTag::VAff { positive: true },
            RepTag::UShear { positive: true },
            RepTag::UWav { positive: true },
            RepTag::ugms(true, 1.0, 1.0).unwrap(),
            RepTag::ugms(false, -0.5, 1.5).unwrap(),
            RepTag::UHeis { s: 1.0 },
            RepTag::UGs { positive: true },
            RepTag::UGts { positive: true },
            RepTag::USw { positive: true },
        ]
    }

    fn test_vector(rep: &RepTag, rng: &mut ChaCha8Rng) -> AnalyticVector {
        use rand::Rng;
        let c: f64 = rng.gen_range(-0.5..0.5);
        if rep.dim() == 1 {
            AnalyticVector::gaussian_1d(c, 0.8)
        } else {
            AnalyticVector::gaussian_2d([c, 1.0], [0.8, 0.4])
        }
    }

    #[test]
    fn homomorphism_defects_are_tiny() {
        let mut rng = ChaCha8Rng::seed_from_u64(43);
        for rep in all_reps() {
            let d = rep.group_descriptor();
            for _ in 0..100 {
                let g1 = d.sample(&mut rng);
                let g2 = d.sample(&mut rng);
                let v = test_vector(&rep, &mut rng);
                let defect = rep_homomorphism_defect(&rep, &g1, &g2, &v).unwrap();
                assert!(defect <= 1e-12, "{}: defect {defect}", rep.name());
            }
        }
    }

    #[test]
    fn ugts_is_projective_over_gs() {
        let mut rng = ChaCha8Rng::seed_from_u64(47);
        let rep = RepTag::UGts { positive: true };
        let d = GroupDescriptor::new(GroupId::Gs);
        for _ in 0..200 {
            let g1 = d.sample(&mut rng);
            let g2 = d.sample(&mut rng);
            let v = AnalyticVector::gaussian_2d([0.0, 1.0], [0.8, 0.4]);
            let defect = rep_homomorphism_defect(&rep, &g1, &g2, &v).unwrap();
            assert!(defect <= 1e-12, "projective defect {defect}");
        }
    }

    #[test]
    fn vaff_ignores_a_v_sigma() {
        let rep = RepTag::VAff { positive: true };
        let v = AnalyticVector::gaussian_1d(1.0, 0.5);
        let g1 = gaff(&[0.4, 1.0, 2.0, 0.7, -0.3]);
        let g2 = gaff(&[0.4, -1.5, 0.3, -0.2, -0.3]);
        let w1 = apply_rep(&rep, &g1, &v).unwrap();
        let w2 = apply_rep(&rep, &g2, &v).unwrap();
        assert!(w1.distance(&w2) < 1e-15);
    }

    #[test]
    fn gaussian_inner_product_oracle() {
        // <exp(-t^2), exp(-t^2)> = sqrt(pi/2) on [-8, 8].
        let grid = OrbitGrid::new_1d(GridAxis::gauss_legendre(-8.0, 8.0, 128, 4));
        let v = AnalyticVector::new_1d(
            Complex64::new(-1.0, 0.0),
            Complex64::new(0.0, 0.0),
            Complex64::new(0.0, 0.0),
        )
        .unwrap();
        let ip = inner_product(&v, &v, &grid).unwrap();
        assert_relative_eq!(ip.re, (std::f64::consts::PI / 2.0).sqrt(), epsilon = 1e-8);
        assert!(ip.im.abs() < 1e-14);
        assert!(ip.re > 0.0);
    }

    #[test]
    fn shifted_gaussian_product_oracle() {
        // Closed form: integral of e^{-(t-3)^2} e^{-(t+3)^2} = e^{-18} sqrt(pi/2).
        let grid = OrbitGrid::new_1d(GridAxis::gauss_legendre(-8.0, 8.0, 128, 4));
        let mk = |center: f64| {
            AnalyticVector::new_1d(
                Complex64::new(-1.0, 0.0),
                Complex64::new(2.0 * center, 0.0),
                Complex64::new(-center * center, 0.0),
            )
            .unwrap()
        };
        let ip = inner_product(&mk(3.0), &mk(-3.0), &grid).unwrap();
        let want = (-18.0_f64).exp() * (std::f64::consts::PI / 2.0).sqrt();
        assert_relative_eq!(ip.re, want, max_relative = 1e-8);
    }

    #[test]
    fn unitarity_of_uaff() {
        let rep = RepTag::UAff { positive: true };
        let g = gaff(&[0.5, 0.3, 0.2, 0.2, -0.1]);
        let v1 = AnalyticVector::gaussian_2d([0.0, 1.0], [0.7, 0.12]);
        let v2 = AnalyticVector::gaussian_2d([0.2, 1.1], [0.8, 0.12]);
        let defect = unitarity_defect(&rep, &g, &v1, &v2, &rep.default_grid()).unwrap();
        assert!(defect <= 1e-6, "defect {defect}");
    }

    #[test]
    fn unitarity_rejects_leaky_vectors() {
        let rep = RepTag::UWav { positive: true };
        let g = GroupDescriptor::new(GroupId::Wav).element(&[0.0, 0.0]).unwrap();
        // Centered on the carrier boundary.
        let v = AnalyticVector::gaussian_1d(0.05, 0.5);
        assert!(matches!(
            unitarity_defect(&rep, &g, &v, &v, &rep.default_grid()),
            Err(RepError::DomainTruncation { .. })
        ));
    }

    #[test]
    fn restriction_along_shear_matches_ushear() {
        let mut rng = ChaCha8Rng::seed_from_u64(53);
        let shear = GroupDescriptor::new(GroupId::Shear);
        let e = crate::embed::embedding_between(&shear, &GroupDescriptor::new(GroupId::Gaff))
            .unwrap();
        let restricted = restrict_rep(&RepTag::UAff { positive: true }, &e).unwrap();
        for _ in 0..100 {
            let g = shear.sample(&mut rng);
            let v = AnalyticVector::gaussian_2d([0.3, 1.0], [0.9, 0.5]);
            let lhs = restricted.apply(&g, &v).unwrap();
            let rhs = apply_rep(&RepTag::UShear { positive: true }, &g, &v).unwrap();
            assert!(lhs.distance(&rhs) <= 1e-12);
        }
    }

    #[test]
    fn restriction_along_wavelet_leaves_energy_argument_alone() {
        let mut rng = ChaCha8Rng::seed_from_u64(59);
        let wav = GroupDescriptor::new(GroupId::Wav);
        let e = crate::embed::embedding_between(&wav, &GroupDescriptor::new(GroupId::Gaff))
            .unwrap();
        let restricted = restrict_rep(&RepTag::UAff { positive: true }, &e).unwrap();
        for _ in 0..100 {
            let g = wav.sample(&mut rng);
            let v = AnalyticVector::gaussian_2d([0.1, 1.2], [0.8, 0.5]);
            let w = restricted.apply(&g, &v).unwrap();
            // E-coefficients untouched.
            assert_relative_eq!(
                w.quad()[0][0].re,
                v.quad()[0][0].re,
                epsilon = 1e-14
            );
            assert_relative_eq!(w.linear()[0].re, v.linear()[0].re, epsilon = 1e-14);
            assert!(w.quad()[0][1].norm() < 1e-14);
        }
    }

    #[test]
    fn restriction_along_identity_embedding_is_identity() {
        let gs = GroupDescriptor::new(GroupId::Gs);
        let e = crate::embed::embedding_between(&gs, &GroupDescriptor::gph(-0.5).unwrap())
            .unwrap();
        // gph(-1/2) is not a representation group here, so mismatch errors.
        assert!(restrict_rep(&RepTag::UGs { positive: true }, &e).is_err());
    }

    #[test]
    fn factorizations_hold() {
        let mut rng = ChaCha8Rng::seed_from_u64(61);
        let spectator = AnalyticVector::gaussian_1d(0.0, 1.0);
        let acted = AnalyticVector::gaussian_1d(1.0, 0.4);
        let wav = GroupDescriptor::new(GroupId::Wav);
        let heis = GroupDescriptor::new(GroupId::Heis);
        let sw = GroupDescriptor::new(GroupId::Sw);
        for _ in 0..100 {
            let d = factorization_defect(
                &FactorizationCase::WaveletInAff { positive: true },
                &spectator,
                &acted,
                &wav.sample(&mut rng),
            )
            .unwrap();
            assert!(d <= 1e-12, "wavelet factorization defect {d}");
            let d = factorization_defect(
                &FactorizationCase::HeisenbergInGms { positive: true, kappa: 1.0, mass: 1.0 },
                &spectator,
                &acted,
                &heis.sample(&mut rng),
            )
            .unwrap();
            assert!(d <= 1e-12, "heisenberg factorization defect {d}");
            let d = factorization_defect(
                &FactorizationCase::StockwellInSw { positive: true },
                &spectator,
                &acted,
                &sw.sample(&mut rng),
            )
            .unwrap();
            assert!(d <= 1e-12, "stockwell factorization defect {d}");
        }
    }

    #[test]
    fn factorization_with_identity_is_exact_zero() {
        let spectator = AnalyticVector::gaussian_1d(0.0, 1.0);
        let acted = AnalyticVector::gaussian_1d(1.0, 0.4);
        let g = GroupDescriptor::new(GroupId::Wav).identity();
        let d = factorization_defect(
            &FactorizationCase::WaveletInAff { positive: true },
            &spectator,
            &acted,
            &g,
        )
        .unwrap();
        assert_eq!(d, 0.0);
    }

    #[test]
    fn ugms_rejects_zero_constants() {
        assert!(RepTag::ugms(true, 0.0, 1.0).is_err());
        assert!(RepTag::ugms(true, 1.0, 0.0).is_err());
    }

    #[test]
    fn wrong_group_and_dim_are_rejected() {
        let rep = RepTag::UAff { positive: true };
        let g = GroupDescriptor::new(GroupId::Wav).identity();
        let v = AnalyticVector::gaussian_2d([0.0, 1.0], [1.0, 0.5]);
        assert!(matches!(apply_rep(&rep, &g, &v), Err(RepError::WrongGroup { .. })));
        let g = GroupDescriptor::new(GroupId::Gaff).identity();
        let v1 = AnalyticVector::gaussian_1d(0.0, 1.0);
        assert!(matches!(
            apply_rep(&rep, &g, &v1),
            Err(RepError::DimensionMismatch { .. })
        ));
    }
}
