//! Composition laws, inverses and faithful matrix realizations.
//!
//! Each group is identified by a [`GroupId`] and, where needed, fixed
//! constants (the mass `M > 0` of the quantum extensions, the family
//! parameter `-1 < p <= 1` of the extended Heisenberg groups). Elements are
//! ordered real tuples; the order is fixed per group:
//!
//! | group      | parameters                 | notes                                   |
//! |------------|----------------------------|-----------------------------------------|
//! | `g0`       | `(b, a, v)`                | time/space translation, boost           |
//! | `gaff`     | `(b, a, v, sigma, tau)`    | adds log space/time dilations           |
//! | `gph`      | `(b, a, v, sigma)`         | `tau = sigma/(p+1)` subfamily of `gaff` |
//! | `shear`    | `(mu, nu, alpha, beta)`    | `mu > 0` stored raw                     |
//! | `wav`      | `(a, sigma)`               | dilation stored as log                  |
//! | `affprime` | `(gamma, delta)`           | `gamma > 0` stored raw                  |
//! | `gs`       | `(b, a, v, sigma)`         | `tau = 2 sigma` subgroup of `gaff`      |
//! | `gm`       | `(theta, b, a, v)`         | mass `M`                                |
//! | `gmaff`    | `(theta, b, a, v, sigma, tau)` | mass `M`, non-central extension     |
//! | `gms`      | `(theta, b, a, v, sigma)`  | mass `M`                                |
//! | `gmsp`     | `(theta, b, a, v, sigma)`  | mass `M`, second exponent               |
//! | `gts`      | `(theta, b, a, v, sigma)`  | trivial exponent                        |
//! | `heis`     | `(theta, q, p)`            |                                         |
//! | `wh`       | `(theta, q, p)`            |                                         |
//! | `sw`       | `(theta, gamma, delta)`    | `gamma > 0` stored raw                  |
//! | `t2`       | `(x1, x2)`                 | plane translations                      |
//!
//! Dilations named `sigma`/`tau` are stored as logarithms so the realized
//! dilation `e^sigma` is positive by construction; the shearlet `mu` and
//! Stockwell `gamma` are stored as the raw positive values and validated.

use nalgebra::DMatrix;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use std::str::FromStr;
use thiserror::Error;

/// Identifies one of the sixteen bundled groups.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum GroupId {
    /// (1+1)-Galilei group.
    G0,
    /// Affine Galilei group: Galilei plus independent space/time dilations.
    Gaff,
    /// Extended Heisenberg family, dilations on the line `tau = sigma/(p+1)`.
    Gph,
    /// Reduced shearlet group (the `p = 1` member in shearlet coordinates).
    Shear,
    /// Connected affine (wavelet) group.
    Wav,
    /// Affine group in reciprocal-dilation coordinates.
    AffPrime,
    /// Galilei-Schrodinger group (`tau = 2 sigma`).
    Gs,
    /// Quantum Galilei group: the mass-M central extension of `G0`.
    Gm,
    /// Extended affine Galilei group (non-central extension of `gaff`).
    GmAff,
    /// Central extension of `gs` by the quantum exponent.
    Gms,
    /// Central extension of `gs` by the equivalent second exponent.
    Gmsp,
    /// Trivial central extension of `gs`.
    Gts,
    /// Heisenberg group.
    Heis,
    /// Weyl-Heisenberg group.
    Wh,
    /// Connected Stockwell group.
    Sw,
    /// Translations of the plane.
    T2,
}

impl GroupId {
    /// All bundled group tags.
    pub const ALL: [GroupId; 16] = [
        GroupId::G0,
        GroupId::Gaff,
        GroupId::Gph,
        GroupId::Shear,
        GroupId::Wav,
        GroupId::AffPrime,
        GroupId::Gs,
        GroupId::Gm,
        GroupId::GmAff,
        GroupId::Gms,
        GroupId::Gmsp,
        GroupId::Gts,
        GroupId::Heis,
        GroupId::Wh,
        GroupId::Sw,
        GroupId::T2,
    ];

    /// Lowercase tag used by the CLI and the atlas dump.
    pub fn tag(self) -> &'static str {
        match self {
            GroupId::G0 => "g0",
            GroupId::Gaff => "gaff",
            GroupId::Gph => "gph",
            GroupId::Shear => "shear",
            GroupId::Wav => "wav",
            GroupId::AffPrime => "affprime",
            GroupId::Gs => "gs",
            GroupId::Gm => "gm",
            GroupId::GmAff => "gmaff",
            GroupId::Gms => "gms",
            GroupId::Gmsp => "gmsp",
            GroupId::Gts => "gts",
            GroupId::Heis => "heis",
            GroupId::Wh => "wh",
            GroupId::Sw => "sw",
            GroupId::T2 => "t2",
        }
    }
}

impl fmt::Display for GroupId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

impl FromStr for GroupId {
    type Err = GroupError;

    fn from_str(s: &str) -> Result<Self, GroupError> {
        GroupId::ALL
            .into_iter()
            .find(|id| id.tag() == s)
            .ok_or_else(|| GroupError::UnknownGroupTag(s.to_string()))
    }
}

/// Errors produced by group construction and composition.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum GroupError {
    #[error("descriptor mismatch: {0} vs {1}")]
    DescriptorMismatch(GroupDescriptor, GroupDescriptor),
    #[error("parameter {name} must be finite, got {value}")]
    NonFinite { name: String, value: f64 },
    #[error("parameter {name} must be positive, got {value}")]
    NonPositive { name: String, value: f64 },
    #[error("expected {expected} parameters for {group}, got {got}")]
    ArityMismatch { group: GroupId, expected: usize, got: usize },
    #[error("invalid constant {name} = {value} for {group}")]
    InvalidConstant { group: GroupId, name: &'static str, value: f64 },
    #[error("no bundled embedding from {src} into {dst}")]
    UnknownEmbedding { src: GroupId, dst: GroupId },
    #[error("unknown group tag `{0}`")]
    UnknownGroupTag(String),
    #[error("sample count must be at least 1")]
    InvalidSampleCount,
}

/// A group together with its fixed constants.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GroupDescriptor {
    id: GroupId,
    mass: Option<f64>,
    p: Option<f64>,
}

/// How a parameter is validated and fuzzed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ParamKind {
    /// Unconstrained; fuzzed uniformly on [-2, 2].
    Linear,
    /// A log-dilation; fuzzed uniformly on [-1, 1].
    LogDilation,
    /// A raw positive dilation; fuzzed as e^u, u uniform on [-1, 1].
    Positive,
}

impl GroupDescriptor {
    /// Descriptor with default constants (`M = 1`, `p = 1/2` where used).
    pub fn new(id: GroupId) -> Self {
        let mass = if id.uses_mass() { Some(1.0) } else { None };
        let p = if id == GroupId::Gph { Some(0.5) } else { None };
        GroupDescriptor { id, mass, p }
    }

    /// Extended Heisenberg group with family parameter `-1 < p <= 1`.
    pub fn gph(p: f64) -> Result<Self, GroupError> {
        if !p.is_finite() || p <= -1.0 || p > 1.0 {
            return Err(GroupError::InvalidConstant { group: GroupId::Gph, name: "p", value: p });
        }
        Ok(GroupDescriptor { id: GroupId::Gph, mass: None, p: Some(p) })
    }

    /// Descriptor with an explicit mass constant `M > 0`.
    pub fn with_mass(id: GroupId, mass: f64) -> Result<Self, GroupError> {
        if !id.uses_mass() {
            return Err(GroupError::InvalidConstant { group: id, name: "M", value: mass });
        }
        if !mass.is_finite() || mass <= 0.0 {
            return Err(GroupError::InvalidConstant { group: id, name: "M", value: mass });
        }
        Ok(GroupDescriptor { id, mass: Some(mass), p: None })
    }

    /// The sixteen bundled descriptors with default constants.
    pub fn bundled() -> Vec<GroupDescriptor> {
        GroupId::ALL.into_iter().map(GroupDescriptor::new).collect()
    }

    pub fn id(&self) -> GroupId {
        self.id
    }

    /// Mass constant, when the group carries one.
    pub fn mass(&self) -> Option<f64> {
        self.mass
    }

    /// Family parameter of the extended Heisenberg groups.
    pub fn family_p(&self) -> Option<f64> {
        self.p
    }

    /// Number of real parameters of an element.
    pub fn arity(&self) -> usize {
        self.param_names().len()
    }

    /// Size of the faithful matrix realization.
    pub fn matrix_dim(&self) -> usize {
        match self.id {
            GroupId::Wav | GroupId::AffPrime => 2,
            GroupId::G0
            | GroupId::Gaff
            | GroupId::Gph
            | GroupId::Shear
            | GroupId::Gs
            | GroupId::Heis
            | GroupId::T2 => 3,
            GroupId::Gm
            | GroupId::GmAff
            | GroupId::Gms
            | GroupId::Gmsp
            | GroupId::Gts
            | GroupId::Wh
            | GroupId::Sw => 4,
        }
    }

    /// Parameter names in element order.
    pub fn param_names(&self) -> &'static [&'static str] {
        match self.id {
            GroupId::G0 => &["b", "a", "v"],
            GroupId::Gaff => &["b", "a", "v", "sigma", "tau"],
            GroupId::Gph | GroupId::Gs => &["b", "a", "v", "sigma"],
            GroupId::Shear => &["mu", "nu", "alpha", "beta"],
            GroupId::Wav => &["a", "sigma"],
            GroupId::AffPrime => &["gamma", "delta"],
            GroupId::Gm => &["theta", "b", "a", "v"],
            GroupId::GmAff => &["theta", "b", "a", "v", "sigma", "tau"],
            GroupId::Gms | GroupId::Gmsp | GroupId::Gts => &["theta", "b", "a", "v", "sigma"],
            GroupId::Heis | GroupId::Wh => &["theta", "q", "p"],
            GroupId::Sw => &["theta", "gamma", "delta"],
            GroupId::T2 => &["x1", "x2"],
        }
    }

    fn param_kinds(&self) -> &'static [ParamKind] {
        use ParamKind::*;
        match self.id {
            GroupId::G0 => &[Linear, Linear, Linear],
            GroupId::Gaff => &[Linear, Linear, Linear, LogDilation, LogDilation],
            GroupId::Gph | GroupId::Gs => &[Linear, Linear, Linear, LogDilation],
            GroupId::Shear => &[Positive, Linear, Linear, Linear],
            GroupId::Wav => &[Linear, LogDilation],
            GroupId::AffPrime => &[Positive, Linear],
            GroupId::Gm => &[Linear, Linear, Linear, Linear],
            GroupId::GmAff => &[Linear, Linear, Linear, Linear, LogDilation, LogDilation],
            GroupId::Gms | GroupId::Gmsp | GroupId::Gts => {
                &[Linear, Linear, Linear, Linear, LogDilation]
            }
            GroupId::Heis | GroupId::Wh => &[Linear, Linear, Linear],
            GroupId::Sw => &[Linear, Positive, Linear],
            GroupId::T2 => &[Linear, Linear],
        }
    }

    /// Builds an element after validating arity, finiteness and positivity.
    pub fn element(&self, params: &[f64]) -> Result<GroupElement, GroupError> {
        if params.len() != self.arity() {
            return Err(GroupError::ArityMismatch {
                group: self.id,
                expected: self.arity(),
                got: params.len(),
            });
        }
        for ((&value, &kind), &name) in
            params.iter().zip(self.param_kinds()).zip(self.param_names())
        {
            if !value.is_finite() {
                return Err(GroupError::NonFinite { name: name.to_string(), value });
            }
            if kind == ParamKind::Positive && value <= 0.0 {
                return Err(GroupError::NonPositive { name: name.to_string(), value });
            }
        }
        Ok(GroupElement { descriptor: *self, params: params.to_vec() })
    }

    /// The identity element.
    pub fn identity(&self) -> GroupElement {
        let params: Vec<f64> = self
            .param_kinds()
            .iter()
            .map(|kind| if *kind == ParamKind::Positive { 1.0 } else { 0.0 })
            .collect();
        GroupElement { descriptor: *self, params }
    }

    /// Draws a random element from the bounded fuzzing box: linear
    /// parameters uniform on [-2, 2], log-dilations on [-1, 1], raw
    /// dilations as e^u with u on [-1, 1].
    pub fn sample<R: Rng + ?Sized>(&self, rng: &mut R) -> GroupElement {
        let params: Vec<f64> = self
            .param_kinds()
            .iter()
            .map(|kind| match kind {
                ParamKind::Linear => rng.gen_range(-2.0..2.0),
                ParamKind::LogDilation => rng.gen_range(-1.0..1.0),
                ParamKind::Positive => rng.gen_range(-1.0_f64..1.0).exp(),
            })
            .collect();
        GroupElement { descriptor: *self, params }
    }
}

impl fmt::Display for GroupDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.id)?;
        if let Some(m) = self.mass {
            write!(f, "[M={m}]")?;
        }
        if let Some(p) = self.p {
            write!(f, "[p={p}]")?;
        }
        Ok(())
    }
}

impl GroupId {
    fn uses_mass(self) -> bool {
        matches!(self, GroupId::Gm | GroupId::GmAff | GroupId::Gms | GroupId::Gmsp)
    }
}

/// An element of one of the bundled groups.
#[derive(Debug, Clone, PartialEq)]
pub struct GroupElement {
    descriptor: GroupDescriptor,
    params: Vec<f64>,
}

impl GroupElement {
    pub fn descriptor(&self) -> &GroupDescriptor {
        &self.descriptor
    }

    pub fn group(&self) -> GroupId {
        self.descriptor.id
    }

    pub fn params(&self) -> &[f64] {
        &self.params
    }

    /// Group product `self * other`.
    pub fn compose(&self, other: &GroupElement) -> Result<GroupElement, GroupError> {
        if self.descriptor != other.descriptor {
            return Err(GroupError::DescriptorMismatch(self.descriptor, other.descriptor));
        }
        let g = &self.params;
        let h = &other.params;
        let d = &self.descriptor;
        let params = match d.id {
            GroupId::G0 => vec![g[0] + h[0], g[1] + h[1] + g[2] * h[0], g[2] + h[2]],
            GroupId::Gaff => {
                let (et, es) = (g[4].exp(), g[3].exp());
                vec![
                    g[0] + et * h[0],
                    g[1] + et * h[0] * g[2] + es * h[1],
                    g[2] + (g[3] - g[4]).exp() * h[2],
                    g[3] + h[3],
                    g[4] + h[4],
                ]
            }
            GroupId::Gph => {
                let p = d.p.expect("gph carries p");
                let m1 = g[3] / (p + 1.0);
                vec![
                    g[0] + m1.exp() * h[0],
                    g[1] + g[3].exp() * h[1] + m1.exp() * g[2] * h[0],
                    g[2] + (g[3] - m1).exp() * h[2],
                    g[3] + h[3],
                ]
            }
            GroupId::Shear => {
                let rt = g[0].sqrt();
                vec![
                    g[0] * h[0],
                    g[1] + h[1] * rt,
                    g[2] + g[0] * h[2] + g[1] * rt * h[3],
                    g[3] + rt * h[3],
                ]
            }
            GroupId::Wav => vec![g[0] + g[1].exp() * h[0], g[1] + h[1]],
            GroupId::AffPrime => vec![g[0] * h[0], g[1] + h[1] / g[0]],
            GroupId::Gs => gs_compose(g, h).to_vec(),
            GroupId::Gm => {
                let m = d.mass.expect("gm carries M");
                vec![
                    g[0] + h[0] + m * (g[3] * h[2] + 0.5 * h[1] * g[3] * g[3]),
                    g[1] + h[1],
                    g[2] + h[2] + g[3] * h[1],
                    g[3] + h[3],
                ]
            }
            GroupId::GmAff => {
                let m = d.mass.expect("gmaff carries M");
                let (es, et) = (g[4].exp(), g[5].exp());
                vec![
                    g[0]
                        + (2.0 * g[4] - g[5]).exp() * h[0]
                        + m * (es * g[3] * h[2] + 0.5 * et * g[3] * g[3] * h[1]),
                    g[1] + et * h[1],
                    g[2] + et * h[1] * g[3] + es * h[2],
                    g[3] + (g[4] - g[5]).exp() * h[3],
                    g[4] + h[4],
                    g[5] + h[5],
                ]
            }
            GroupId::Gms => {
                let m = d.mass.expect("gms carries M");
                let es = g[4].exp();
                let theta = g[0]
                    + h[0]
                    + m * (g[3] * es * h[2] + 0.5 * g[3] * g[3] * es * es * h[1]);
                prepend(theta, &gs_compose(&g[1..], &h[1..]))
            }
            GroupId::Gmsp => {
                let m = d.mass.expect("gmsp carries M");
                let es = g[4].exp();
                let theta = g[0]
                    + h[0]
                    + 0.5
                        * m
                        * (-g[3] * h[3] * h[1] * es + g[3] * h[2] * es
                            - g[2] * h[3] / es);
                prepend(theta, &gs_compose(&g[1..], &h[1..]))
            }
            GroupId::Gts => {
                let theta = g[0]
                    + h[0]
                    + g[2] * (-g[4]).exp() * (1.0 - (-h[4]).exp())
                    - (g[4] - h[4]).exp() * g[3] * h[1];
                prepend(theta, &gs_compose(&g[1..], &h[1..]))
            }
            GroupId::Heis => vec![g[0] + h[0] + g[2] * h[1], g[1] + h[1], g[2] + h[2]],
            GroupId::Wh => vec![
                g[0] + h[0] + 0.5 * (g[2] * h[1] - h[2] * g[1]),
                g[1] + h[1],
                g[2] + h[2],
            ],
            GroupId::Sw => vec![
                g[0] + h[0] + g[1] * g[2] * (1.0 - h[1]),
                g[1] * h[1],
                g[2] + h[2] / g[1],
            ],
            GroupId::T2 => vec![g[0] + h[0], g[1] + h[1]],
        };
        Ok(GroupElement { descriptor: self.descriptor, params })
    }

    /// Group inverse, from the closed form of each law.
    pub fn inverse(&self) -> GroupElement {
        let g = &self.params;
        let d = &self.descriptor;
        let params = match d.id {
            GroupId::G0 => vec![-g[0], g[2] * g[0] - g[1], -g[2]],
            GroupId::Gaff => vec![
                -(-g[4]).exp() * g[0],
                (-g[3]).exp() * (g[0] * g[2] - g[1]),
                -(g[4] - g[3]).exp() * g[2],
                -g[3],
                -g[4],
            ],
            GroupId::Gph => {
                let p = d.p.expect("gph carries p");
                let m1 = g[3] / (p + 1.0);
                vec![
                    -(-m1).exp() * g[0],
                    (-g[3]).exp() * (g[2] * g[0] - g[1]),
                    -(m1 - g[3]).exp() * g[2],
                    -g[3],
                ]
            }
            GroupId::Shear => {
                let rt = g[0].sqrt();
                vec![1.0 / g[0], -g[1] / rt, (g[1] * g[3] - g[2]) / g[0], -g[3] / rt]
            }
            GroupId::Wav => vec![-(-g[1]).exp() * g[0], -g[1]],
            GroupId::AffPrime => vec![1.0 / g[0], -g[0] * g[1]],
            GroupId::Gs => gs_inverse(g).to_vec(),
            GroupId::Gm => {
                let m = d.mass.expect("gm carries M");
                vec![
                    -g[0] + m * (g[3] * g[2] - 0.5 * g[1] * g[3] * g[3]),
                    -g[1],
                    g[3] * g[1] - g[2],
                    -g[3],
                ]
            }
            GroupId::GmAff => {
                let m = d.mass.expect("gmaff carries M");
                vec![
                    -(g[5] - 2.0 * g[4]).exp()
                        * (g[0] + m * (0.5 * g[1] * g[3] * g[3] - g[2] * g[3])),
                    -(-g[5]).exp() * g[1],
                    (-g[4]).exp() * (g[1] * g[3] - g[2]),
                    -(g[5] - g[4]).exp() * g[3],
                    -g[4],
                    -g[5],
                ]
            }
            GroupId::Gms => {
                let m = d.mass.expect("gms carries M");
                let theta = -g[0] + m * (g[3] * g[2] - 0.5 * g[1] * g[3] * g[3]);
                prepend(theta, &gs_inverse(&g[1..]))
            }
            GroupId::Gmsp => prepend(-g[0], &gs_inverse(&g[1..])),
            GroupId::Gts => {
                let theta = -g[0] - (g[2] * (-g[4]).exp() - g[2] + g[3] * g[1]);
                prepend(theta, &gs_inverse(&g[1..]))
            }
            GroupId::Heis => vec![-g[0] + g[2] * g[1], -g[1], -g[2]],
            GroupId::Wh => vec![-g[0], -g[1], -g[2]],
            GroupId::Sw => vec![
                -g[0] - g[1] * g[2] * (1.0 - 1.0 / g[1]),
                1.0 / g[1],
                -g[1] * g[2],
            ],
            GroupId::T2 => vec![-g[0], -g[1]],
        };
        GroupElement { descriptor: self.descriptor, params }
    }

    /// The faithful matrix realization with parameters substituted.
    pub fn to_matrix(&self) -> DMatrix<f64> {
        let g = &self.params;
        let d = &self.descriptor;
        match d.id {
            GroupId::G0 => mat3([[1.0, g[2], g[1]], [0.0, 1.0, g[0]], [0.0, 0.0, 1.0]]),
            GroupId::Gaff => {
                let (es, et) = (g[3].exp(), g[4].exp());
                mat3([[es, g[2] * et, g[1]], [0.0, et, g[0]], [0.0, 0.0, 1.0]])
            }
            GroupId::Gph => {
                let p = d.p.expect("gph carries p");
                let (es, em) = (g[3].exp(), (g[3] / (p + 1.0)).exp());
                mat3([[es, g[2] * em, g[1]], [0.0, em, g[0]], [0.0, 0.0, 1.0]])
            }
            GroupId::Shear => {
                let rt = g[0].sqrt();
                mat3([[g[0], g[1] * rt, g[2]], [0.0, rt, g[3]], [0.0, 0.0, 1.0]])
            }
            GroupId::Wav => mat2([[g[1].exp(), g[0]], [0.0, 1.0]]),
            GroupId::AffPrime => mat2([[1.0 / g[0], g[1]], [0.0, 1.0]]),
            GroupId::Gs => {
                let (es, e2s) = (g[3].exp(), (2.0 * g[3]).exp());
                mat3([[es, g[2] * e2s, g[1]], [0.0, e2s, g[0]], [0.0, 0.0, 1.0]])
            }
            GroupId::Gm => {
                let m = d.mass.expect("gm carries M");
                mat4([
                    [1.0, g[3], 0.0, g[2]],
                    [0.0, 1.0, 0.0, g[1]],
                    [m * g[3], 0.5 * m * g[3] * g[3], 1.0, g[0]],
                    [0.0, 0.0, 0.0, 1.0],
                ])
            }
            GroupId::GmAff => {
                let m = d.mass.expect("gmaff carries M");
                let (es, et) = (g[4].exp(), g[5].exp());
                mat4([
                    [es, g[3] * et, 0.0, g[2]],
                    [0.0, et, 0.0, g[1]],
                    [
                        m * g[3] * es,
                        0.5 * m * g[3] * g[3] * et,
                        (2.0 * g[4] - g[5]).exp(),
                        g[0],
                    ],
                    [0.0, 0.0, 0.0, 1.0],
                ])
            }
            GroupId::Gms => {
                let m = d.mass.expect("gms carries M");
                let (es, e2s) = (g[4].exp(), (2.0 * g[4]).exp());
                mat4([
                    [es, g[3] * e2s, 0.0, g[2]],
                    [0.0, e2s, 0.0, g[1]],
                    [m * g[3] * es, 0.5 * m * g[3] * g[3] * e2s, 1.0, g[0]],
                    [0.0, 0.0, 0.0, 1.0],
                ])
            }
            GroupId::Gmsp => {
                // (1,2) entry carries +b e^{-sigma}; the opposite sign fails
                // to reproduce the composition law.
                let m = d.mass.expect("gmsp carries M");
                let (es, ems) = (g[4].exp(), (-g[4]).exp());
                mat4([
                    [es, g[1] * ems, 0.0, g[2] - g[3] * g[1]],
                    [0.0, ems, 0.0, -g[3]],
                    [0.5 * m * g[3] * es, 0.5 * m * g[2] * ems, 1.0, g[0]],
                    [0.0, 0.0, 0.0, 1.0],
                ])
            }
            GroupId::Gts => {
                let (es, ems) = (g[4].exp(), (-g[4]).exp());
                mat4([
                    [1.0, g[2] * ems, -es * g[3], g[0]],
                    [0.0, ems, 0.0, 1.0 - ems],
                    [0.0, -ems * g[1], es, ems * g[1]],
                    [0.0, 0.0, 0.0, 1.0],
                ])
            }
            GroupId::Heis => mat3([[1.0, g[2], g[0]], [0.0, 1.0, g[1]], [0.0, 0.0, 1.0]]),
            GroupId::Wh => mat4([
                [1.0, 0.0, 0.0, g[1]],
                [0.0, 1.0, 0.0, -g[2]],
                [0.5 * g[2], 0.5 * g[1], 1.0, g[0]],
                [0.0, 0.0, 0.0, 1.0],
            ]),
            GroupId::Sw => mat4([
                [1.0, g[1] * g[2], 0.0, g[0]],
                [0.0, g[1], 0.0, 1.0 - g[1]],
                [0.0, 0.0, 1.0 / g[1], 0.0],
                [0.0, 0.0, 0.0, 1.0],
            ]),
            GroupId::T2 => mat3([[1.0, 0.0, g[0]], [0.0, 1.0, g[1]], [0.0, 0.0, 1.0]]),
        }
    }
}

/// Galilei-Schrodinger composition on raw `(b, a, v, sigma)` slices; shared
/// by the three central extensions.
fn gs_compose(g: &[f64], h: &[f64]) -> [f64; 4] {
    let (es, e2s) = (g[3].exp(), (2.0 * g[3]).exp());
    [
        g[0] + e2s * h[0],
        g[1] + es * h[1] + e2s * g[2] * h[0],
        g[2] + (-g[3]).exp() * h[2],
        g[3] + h[3],
    ]
}

fn gs_inverse(g: &[f64]) -> [f64; 4] {
    [
        -(-2.0 * g[3]).exp() * g[0],
        (-g[3]).exp() * (g[2] * g[0] - g[1]),
        -g[3].exp() * g[2],
        -g[3],
    ]
}

fn prepend(theta: f64, rest: &[f64]) -> Vec<f64> {
    let mut out = Vec::with_capacity(rest.len() + 1);
    out.push(theta);
    out.extend_from_slice(rest);
    out
}

fn mat2(rows: [[f64; 2]; 2]) -> DMatrix<f64> {
    DMatrix::from_row_slice(2, 2, &[rows[0][0], rows[0][1], rows[1][0], rows[1][1]])
}

fn mat3(rows: [[f64; 3]; 3]) -> DMatrix<f64> {
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    DMatrix::from_row_slice(3, 3, &flat)
}

fn mat4(rows: [[f64; 4]; 4]) -> DMatrix<f64> {
    let flat: Vec<f64> = rows.iter().flatten().copied().collect();
    DMatrix::from_row_slice(4, 4, &flat)
}

/// Max entrywise deviation between two matrices, relative with unit floor.
pub fn matrix_deviation(lhs: &DMatrix<f64>, rhs: &DMatrix<f64>) -> f64 {
    lhs.iter()
        .zip(rhs.iter())
        .map(|(&x, &y)| (x - y).abs() / f64::max(1.0, y.abs()))
        .fold(0.0, f64::max)
}

/// Fuzzes `to_matrix(g1 * g2)` against `to_matrix(g1) * to_matrix(g2)` on
/// random pairs from the bounded box; returns the max entrywise deviation.
pub fn verify_matrix_homomorphism(
    descriptor: &GroupDescriptor,
    n_samples: usize,
    seed: u64,
) -> Result<f64, GroupError> {
    if n_samples == 0 {
        return Err(GroupError::InvalidSampleCount);
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0_f64;
    for _ in 0..n_samples {
        let g1 = descriptor.sample(&mut rng);
        let g2 = descriptor.sample(&mut rng);
        let composed = g1.compose(&g2)?.to_matrix();
        let product = g1.to_matrix() * g2.to_matrix();
        worst = worst.max(matrix_deviation(&composed, &product));
    }
    Ok(worst)
}
