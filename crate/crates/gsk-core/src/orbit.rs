//! Dual actions on characters of the abelian factor, orbit classification
//! and the measure factors of each orbit chart.
//!
//! Each semidirect product acts on the dual of its abelian normal subgroup:
//!
//! * the affine Galilei group on `(E, p)` through boosts and both dilations;
//! * the extended Galilei-Schrodinger group on `(q, E, p)`, with `q`
//!   invariant, through `(v, sigma)`;
//! * the Galilei-Schrodinger group on `(E, p)` through `(v, sigma)`;
//! * the Heisenberg group on `(s, t)` through the single parameter `p`.
//!
//! Orbits are classified with an absolute zero threshold of `1e-12`; points
//! inside the band get the boundary/degenerate label.

use thiserror::Error;

/// Zero threshold for orbit classification.
pub const CLASSIFY_EPS: f64 = 1e-12;

/// Errors from dual-action evaluation and chart changes.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum OrbitError {
    #[error("boost for {space:?} takes {expected} parameters, got {got}")]
    WrongFactor { space: DualSpace, expected: usize, got: usize },
    #[error("point in {space:?} takes {expected} coordinates, got {got}")]
    WrongArity { space: DualSpace, expected: usize, got: usize },
    #[error("non-finite value {0}")]
    NonFinite(f64),
    #[error("chart is singular at {what} = 0")]
    SingularChart { what: &'static str },
    #[error("unknown dual-space tag `{0}`")]
    UnknownSpace(String),
}

/// Which dual action a point belongs to.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum DualSpace {
    /// Affine Galilei duals `(E, p)`; boosts `(v, sigma, tau)`.
    Gaff,
    /// Extended Galilei-Schrodinger duals `(q, E, p)`; boosts `(v, sigma)`.
    Gms { mass: f64 },
    /// Galilei-Schrodinger duals `(E, p)`; boosts `(v, sigma)`.
    Gs,
    /// Heisenberg duals `(s, t)`; boosts `p`.
    Heis,
}

impl DualSpace {
    pub fn point_arity(&self) -> usize {
        match self {
            DualSpace::Gms { .. } => 3,
            _ => 2,
        }
    }

    pub fn boost_arity(&self) -> usize {
        match self {
            DualSpace::Gaff => 3,
            DualSpace::Gms { .. } | DualSpace::Gs => 2,
            DualSpace::Heis => 1,
        }
    }

    /// Composition of the acting factor group.
    pub fn boost_compose(&self, h1: &[f64], h2: &[f64]) -> Result<Vec<f64>, OrbitError> {
        self.check_boost(h1)?;
        self.check_boost(h2)?;
        Ok(match self {
            // (v, sigma, tau): v'' = v + e^{sigma - tau} v'
            DualSpace::Gaff => vec![
                h1[0] + (h1[1] - h1[2]).exp() * h2[0],
                h1[1] + h2[1],
                h1[2] + h2[2],
            ],
            // (v, sigma): v'' = v + e^{-sigma} v'
            DualSpace::Gms { .. } | DualSpace::Gs => {
                vec![h1[0] + (-h1[1]).exp() * h2[0], h1[1] + h2[1]]
            }
            DualSpace::Heis => vec![h1[0] + h2[0]],
        })
    }

    pub fn boost_inverse(&self, h: &[f64]) -> Result<Vec<f64>, OrbitError> {
        self.check_boost(h)?;
        Ok(match self {
            DualSpace::Gaff => vec![-(h[2] - h[1]).exp() * h[0], -h[1], -h[2]],
            DualSpace::Gms { .. } | DualSpace::Gs => vec![-h[1].exp() * h[0], -h[1]],
            DualSpace::Heis => vec![-h[0]],
        })
    }

    fn check_boost(&self, h: &[f64]) -> Result<(), OrbitError> {
        if h.len() != self.boost_arity() {
            return Err(OrbitError::WrongFactor {
                space: *self,
                expected: self.boost_arity(),
                got: h.len(),
            });
        }
        for &x in h {
            if !x.is_finite() {
                return Err(OrbitError::NonFinite(x));
            }
        }
        Ok(())
    }
}

/// A point of the dual space.
#[derive(Debug, Clone, PartialEq)]
pub struct DualPoint {
    space: DualSpace,
    coords: Vec<f64>,
}

impl DualPoint {
    pub fn new(space: DualSpace, coords: &[f64]) -> Result<Self, OrbitError> {
        if coords.len() != space.point_arity() {
            return Err(OrbitError::WrongArity {
                space,
                expected: space.point_arity(),
                got: coords.len(),
            });
        }
        for &x in coords {
            if !x.is_finite() {
                return Err(OrbitError::NonFinite(x));
            }
        }
        Ok(DualPoint { space, coords: coords.to_vec() })
    }

    pub fn gaff(e: f64, p: f64) -> Result<Self, OrbitError> {
        DualPoint::new(DualSpace::Gaff, &[e, p])
    }

    pub fn gms(q: f64, e: f64, p: f64, mass: f64) -> Result<Self, OrbitError> {
        DualPoint::new(DualSpace::Gms { mass }, &[q, e, p])
    }

    pub fn gs(e: f64, p: f64) -> Result<Self, OrbitError> {
        DualPoint::new(DualSpace::Gs, &[e, p])
    }

    pub fn heis(s: f64, t: f64) -> Result<Self, OrbitError> {
        DualPoint::new(DualSpace::Heis, &[s, t])
    }

    pub fn space(&self) -> DualSpace {
        self.space
    }

    pub fn coords(&self) -> &[f64] {
        &self.coords
    }

    /// Chart coordinates: `(E, p)` for `gaff`/`gs`-as-`(t, p)`, `(k1, k2)`
    /// for `gms`, `(s, t)` for `heis`.
    pub fn to_orbit_coords(&self) -> Result<Vec<f64>, OrbitError> {
        let x = &self.coords;
        Ok(match self.space {
            DualSpace::Gaff => x.clone(),
            DualSpace::Gms { mass } => {
                if x[0].abs() < CLASSIFY_EPS {
                    return Err(OrbitError::SingularChart { what: "q" });
                }
                vec![x[2], x[1] - x[2] * x[2] / (2.0 * x[0] * mass)]
            }
            DualSpace::Gs => {
                if x[1].abs() < CLASSIFY_EPS {
                    return Err(OrbitError::SingularChart { what: "p" });
                }
                vec![x[0] / (x[1] * x[1]), x[1]]
            }
            DualSpace::Heis => x.clone(),
        })
    }
}

/// Inverse chart change. `anchor` supplies the orbit constant the chart
/// forgets: `Some(kappa)` for `gms`, ignored elsewhere.
pub fn from_orbit_coords(
    space: DualSpace,
    anchor: Option<f64>,
    coords: &[f64],
) -> Result<DualPoint, OrbitError> {
    match space {
        DualSpace::Gaff => DualPoint::new(space, coords),
        DualSpace::Gms { mass } => {
            let kappa = anchor.ok_or(OrbitError::SingularChart { what: "q" })?;
            if kappa.abs() < CLASSIFY_EPS {
                return Err(OrbitError::SingularChart { what: "q" });
            }
            let (k1, k2) = (coords[0], coords[1]);
            DualPoint::new(space, &[kappa, k2 + k1 * k1 / (2.0 * kappa * mass), k1])
        }
        DualSpace::Gs => {
            let (t, p) = (coords[0], coords[1]);
            if p.abs() < CLASSIFY_EPS {
                return Err(OrbitError::SingularChart { what: "p" });
            }
            DualPoint::new(space, &[t * p * p, p])
        }
        DualSpace::Heis => DualPoint::new(space, coords),
    }
}

/// Applies the dual action of the boost `h` to the point `x`.
pub fn dual_act(h: &[f64], x: &DualPoint) -> Result<DualPoint, OrbitError> {
    x.space.check_boost(h)?;
    let c = &x.coords;
    let coords = match x.space {
        // Ebar = e^{-tau} E - e^{-sigma} p v, pbar = e^{-sigma} p
        DualSpace::Gaff => {
            let (v, s, t) = (h[0], h[1], h[2]);
            vec![(-t).exp() * c[0] - (-s).exp() * c[1] * v, (-s).exp() * c[1]]
        }
        // qbar = q, Ebar = e^{-2s} E - e^{-s} p v + q M v^2 / 2,
        // pbar = e^{-s} p - q M v
        DualSpace::Gms { mass } => {
            let (v, s) = (h[0], h[1]);
            let (q, e, p) = (c[0], c[1], c[2]);
            vec![
                q,
                (-2.0 * s).exp() * e - (-s).exp() * p * v + 0.5 * q * mass * v * v,
                (-s).exp() * p - q * mass * v,
            ]
        }
        // The tau = 2 sigma restriction of the affine action.
        DualSpace::Gs => {
            let (v, s) = (h[0], h[1]);
            vec![(-2.0 * s).exp() * c[0] - (-s).exp() * c[1] * v, (-s).exp() * c[1]]
        }
        // sbar = s, tbar = t - s p
        DualSpace::Heis => vec![c[0], c[1] - c[0] * h[0]],
    };
    DualPoint::new(x.space, &coords)
}

/// Orbit class labels.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum OrbitLabel {
    HalfPlanePos,
    HalfPlaneNeg,
    HalfLinePos,
    HalfLineNeg,
    Degenerate,
    ParabolaInterior,
    ParabolaExterior,
    ParabolaBoundary,
    Line { s: f64 },
}

impl std::fmt::Display for OrbitLabel {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrbitLabel::HalfPlanePos => write!(f, "HALF_PLANE_POS"),
            OrbitLabel::HalfPlaneNeg => write!(f, "HALF_PLANE_NEG"),
            OrbitLabel::HalfLinePos => write!(f, "HALF_LINE_POS"),
            OrbitLabel::HalfLineNeg => write!(f, "HALF_LINE_NEG"),
            OrbitLabel::Degenerate => write!(f, "DEGENERATE"),
            OrbitLabel::ParabolaInterior => write!(f, "PARABOLA_INTERIOR"),
            OrbitLabel::ParabolaExterior => write!(f, "PARABOLA_EXTERIOR"),
            OrbitLabel::ParabolaBoundary => write!(f, "PARABOLA_BOUNDARY"),
            OrbitLabel::Line { s } => write!(f, "LINE(s={s})"),
        }
    }
}

/// Classifies the orbit through `x`.
pub fn orbit_id(x: &DualPoint) -> OrbitLabel {
    let c = &x.coords;
    match x.space {
        DualSpace::Gaff => {
            let (e, p) = (c[0], c[1]);
            if p.abs() < CLASSIFY_EPS {
                if e.abs() < CLASSIFY_EPS {
                    OrbitLabel::Degenerate
                } else if e > 0.0 {
                    OrbitLabel::HalfLinePos
                } else {
                    OrbitLabel::HalfLineNeg
                }
            } else if p > 0.0 {
                OrbitLabel::HalfPlanePos
            } else {
                OrbitLabel::HalfPlaneNeg
            }
        }
        DualSpace::Gms { mass } => {
            let (q, e, p) = (c[0], c[1], c[2]);
            if q.abs() < CLASSIFY_EPS {
                // q = 0 orbits are not modeled.
                return OrbitLabel::Degenerate;
            }
            let k2 = e - p * p / (2.0 * q * mass);
            if k2.abs() < CLASSIFY_EPS {
                OrbitLabel::ParabolaBoundary
            } else if k2 > 0.0 {
                OrbitLabel::ParabolaInterior
            } else {
                OrbitLabel::ParabolaExterior
            }
        }
        DualSpace::Gs => {
            let p = c[1];
            if p.abs() < CLASSIFY_EPS {
                OrbitLabel::Degenerate
            } else if p > 0.0 {
                OrbitLabel::HalfPlanePos
            } else {
                OrbitLabel::HalfPlaneNeg
            }
        }
        DualSpace::Heis => {
            let s = c[0];
            if s.abs() < CLASSIFY_EPS {
                OrbitLabel::Degenerate
            } else {
                OrbitLabel::Line { s }
            }
        }
    }
}

/// Orbit charts whose measure factors are exposed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrbitChart {
    /// `(E, p)` half-plane orbits of the affine Galilei group.
    AffHalfPlane,
    /// `E` half-line orbits of the affine Galilei group (`p = 0`).
    AffHalfLine,
    /// `(k1, k2)` charts of the extended Galilei-Schrodinger orbits.
    GmsK,
    /// `(t, p)` charts of the Galilei-Schrodinger orbits.
    GsTp,
    /// `t` lines of the Heisenberg duals (invariant measure).
    HeisLine,
}

/// The scalar factor by which the inverse dual action scales the chart
/// measure: `e^{sigma+tau}`, `e^{tau}`, `e^{3 sigma}`, `e^{sigma}` and `1`.
pub fn measure_jacobian(chart: OrbitChart, h: &[f64]) -> Result<f64, OrbitError> {
    let space = match chart {
        OrbitChart::AffHalfPlane | OrbitChart::AffHalfLine => DualSpace::Gaff,
        OrbitChart::GmsK => DualSpace::Gms { mass: 1.0 },
        OrbitChart::GsTp => DualSpace::Gs,
        OrbitChart::HeisLine => DualSpace::Heis,
    };
    space.check_boost(h)?;
    Ok(match chart {
        OrbitChart::AffHalfPlane => (h[1] + h[2]).exp(),
        OrbitChart::AffHalfLine => h[2].exp(),
        OrbitChart::GmsK => (3.0 * h[1]).exp(),
        OrbitChart::GsTp => h[1].exp(),
        OrbitChart::HeisLine => 1.0,
    })
}
