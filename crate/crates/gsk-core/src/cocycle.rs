//! Exponents (real two-cocycles), coboundaries and central extensions.
//!
//! An exponent `xi` on a group `G` satisfies the cocycle identity
//! `xi(g1,g2) + xi(g1 g2, g3) = xi(g2,g3) + xi(g1, g2 g3)` and builds the
//! centrally extended composition `(theta, g)(theta', g') =
//! (theta + theta' + xi(g, g'), g g')`. Two exponents are projectively
//! equivalent when their difference is the coboundary of a function
//! `zeta: G -> R`; both coboundary sign conventions occur in the source
//! derivations, so each bundled [`CoboundaryFunction`] carries its own.

use crate::group::{GroupDescriptor, GroupElement, GroupError, GroupId};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::fmt;
use thiserror::Error;

/// Errors from exponent evaluation and extension building.
#[derive(Debug, Clone, Error, PartialEq)]
pub enum CocycleError {
    #[error("exponent {exponent} is defined on {expected}, got an element of {got}")]
    BaseGroupMismatch { exponent: ExponentId, expected: GroupId, got: GroupId },
    #[error("coboundary {coboundary:?} is defined on {expected}, got an element of {got}")]
    CoboundaryMismatch { coboundary: CoboundaryId, expected: GroupId, got: GroupId },
    #[error("elements come from different descriptors")]
    ElementMismatch,
    #[error("exponent {exponent} fails the cocycle identity on {base} (max defect {defect:e})")]
    CocycleCheckFailed { exponent: ExponentId, base: GroupId, defect: f64 },
    #[error("exponent {exponent} cannot extend {base}")]
    IncompatibleBase { exponent: ExponentId, base: GroupId },
    #[error(transparent)]
    Group(#[from] GroupError),
}

/// The bundled exponents.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ExponentId {
    /// `b v'` on plane translations `(b, v)`.
    XiH,
    /// `M [v a' + b' v^2 / 2]` on the Galilei group.
    XiQg,
    /// `M [v e^sigma a' + v^2 e^{2 sigma} b' / 2]` on the Galilei-Schrodinger group.
    XiGs,
    /// `(M/2) [-v v' b' e^sigma + v a' e^sigma - a v' e^{-sigma}]` on the same group.
    XiGs1,
    /// `a e^{-sigma}(1 - e^{-sigma'}) - e^{sigma - sigma'} v b'`, a trivial exponent.
    XiGs2,
    /// `p q'` on plane translations `(q, p)`.
    XiHpq,
    /// `(p q' - p' q)/2` on plane translations.
    XiWh,
    /// `gamma delta (1 - gamma')` on the reciprocal affine group.
    XiSw,
    /// The zero exponent on any group (direct product extension).
    Zero,
}

impl fmt::Display for ExponentId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            ExponentId::XiH => "xi_h",
            ExponentId::XiQg => "xi_qg",
            ExponentId::XiGs => "xi_gs",
            ExponentId::XiGs1 => "xi_gs1",
            ExponentId::XiGs2 => "xi_gs2",
            ExponentId::XiHpq => "xi_hpq",
            ExponentId::XiWh => "xi_wh",
            ExponentId::XiSw => "xi_sw",
            ExponentId::Zero => "zero",
        };
        f.write_str(name)
    }
}

/// A named exponent, with its mass constant where one appears.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Exponent {
    id: ExponentId,
    mass: f64,
}

impl Exponent {
    /// Exponent with mass 1 where a mass appears.
    pub fn new(id: ExponentId) -> Self {
        Exponent { id, mass: 1.0 }
    }

    /// Exponent with an explicit mass `M > 0` (meaningful for `xi_qg`,
    /// `xi_gs`, `xi_gs1`).
    pub fn with_mass(id: ExponentId, mass: f64) -> Result<Self, CocycleError> {
        if !mass.is_finite() || mass <= 0.0 {
            return Err(GroupError::InvalidConstant { group: GroupId::Gm, name: "M", value: mass }
                .into());
        }
        Ok(Exponent { id, mass })
    }

    pub fn id(&self) -> ExponentId {
        self.id
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    /// The group the exponent lives on; `None` for the zero exponent.
    pub fn base_group(&self) -> Option<GroupId> {
        match self.id {
            ExponentId::XiH | ExponentId::XiHpq | ExponentId::XiWh => Some(GroupId::T2),
            ExponentId::XiQg => Some(GroupId::G0),
            ExponentId::XiGs | ExponentId::XiGs1 | ExponentId::XiGs2 => Some(GroupId::Gs),
            ExponentId::XiSw => Some(GroupId::AffPrime),
            ExponentId::Zero => None,
        }
    }

    fn check_domain(&self, g: &GroupElement) -> Result<(), CocycleError> {
        if let Some(base) = self.base_group() {
            if g.group() != base {
                return Err(CocycleError::BaseGroupMismatch {
                    exponent: self.id,
                    expected: base,
                    got: g.group(),
                });
            }
        }
        Ok(())
    }

    /// Evaluates the exponent on a pair of elements of its base group.
    pub fn value(&self, g1: &GroupElement, g2: &GroupElement) -> Result<f64, CocycleError> {
        self.check_domain(g1)?;
        self.check_domain(g2)?;
        if g1.descriptor() != g2.descriptor() {
            return Err(CocycleError::ElementMismatch);
        }
        let (g, h) = (g1.params(), g2.params());
        let m = self.mass;
        Ok(match self.id {
            ExponentId::XiH => g[0] * h[1],
            ExponentId::XiQg => m * (g[2] * h[1] + 0.5 * h[0] * g[2] * g[2]),
            ExponentId::XiGs => {
                let es = g[3].exp();
                m * (g[2] * es * h[1] + 0.5 * g[2] * g[2] * es * es * h[0])
            }
            ExponentId::XiGs1 => {
                let es = g[3].exp();
                0.5 * m * (-g[2] * h[2] * h[0] * es + g[2] * h[1] * es - g[1] * h[2] / es)
            }
            ExponentId::XiGs2 => {
                g[1] * (-g[3]).exp() * (1.0 - (-h[3]).exp()) - (g[3] - h[3]).exp() * g[2] * h[0]
            }
            ExponentId::XiHpq => g[1] * h[0],
            ExponentId::XiWh => 0.5 * (g[1] * h[0] - h[1] * g[0]),
            ExponentId::XiSw => g[0] * g[1] * (1.0 - h[0]),
            ExponentId::Zero => 0.0,
        })
    }

    /// The eight bundled exponents at mass `m`.
    pub fn bundled(m: f64) -> Vec<Exponent> {
        [
            ExponentId::XiH,
            ExponentId::XiQg,
            ExponentId::XiGs,
            ExponentId::XiGs1,
            ExponentId::XiGs2,
            ExponentId::XiHpq,
            ExponentId::XiWh,
            ExponentId::XiSw,
        ]
        .into_iter()
        .map(|id| Exponent { id, mass: m })
        .collect()
    }
}

/// Cocycle identity defect `xi(g1,g2) + xi(g1 g2, g3) - xi(g2,g3) - xi(g1, g2 g3)`.
pub fn cocycle_defect(
    xi: &Exponent,
    g1: &GroupElement,
    g2: &GroupElement,
    g3: &GroupElement,
) -> Result<f64, CocycleError> {
    let g12 = g1.compose(g2)?;
    let g23 = g2.compose(g3)?;
    Ok(xi.value(g1, g2)? + xi.value(&g12, g3)? - xi.value(g2, g3)? - xi.value(g1, &g23)?)
}

/// The bundled coboundary functions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CoboundaryId {
    /// `(M/2) a v` on the Galilei-Schrodinger group.
    ZetaM,
    /// `a e^{-sigma}` on the Galilei-Schrodinger group.
    ZetaT,
    /// `gamma delta` on the reciprocal affine group.
    ZetaS,
    /// `p q / 2` on plane translations.
    ZetaWh,
}

/// Which way the coboundary of `zeta` is written.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SignConvention {
    /// `zeta(g g') - zeta(g) - zeta(g')`.
    ProductMinusParts,
    /// `zeta(g) + zeta(g') - zeta(g g')`.
    PartsMinusProduct,
}

/// A coboundary function with its declared sign convention.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CoboundaryFunction {
    id: CoboundaryId,
    mass: f64,
    convention: SignConvention,
}

impl CoboundaryFunction {
    /// The bundled function with the convention its source derivation uses.
    pub fn bundled(id: CoboundaryId, mass: f64) -> Self {
        let convention = match id {
            CoboundaryId::ZetaM | CoboundaryId::ZetaWh => SignConvention::ProductMinusParts,
            CoboundaryId::ZetaT | CoboundaryId::ZetaS => SignConvention::PartsMinusProduct,
        };
        CoboundaryFunction { id, mass, convention }
    }

    pub fn id(&self) -> CoboundaryId {
        self.id
    }

    pub fn convention(&self) -> SignConvention {
        self.convention
    }

    /// The group the function lives on.
    pub fn base_group(&self) -> GroupId {
        match self.id {
            CoboundaryId::ZetaM | CoboundaryId::ZetaT => GroupId::Gs,
            CoboundaryId::ZetaS => GroupId::AffPrime,
            CoboundaryId::ZetaWh => GroupId::T2,
        }
    }

    /// Evaluates `zeta(g)`.
    pub fn eval(&self, g: &GroupElement) -> Result<f64, CocycleError> {
        if g.group() != self.base_group() {
            return Err(CocycleError::CoboundaryMismatch {
                coboundary: self.id,
                expected: self.base_group(),
                got: g.group(),
            });
        }
        let x = g.params();
        Ok(match self.id {
            CoboundaryId::ZetaM => 0.5 * self.mass * x[1] * x[2],
            CoboundaryId::ZetaT => x[1] * (-x[3]).exp(),
            CoboundaryId::ZetaS => x[0] * x[1],
            CoboundaryId::ZetaWh => 0.5 * x[0] * x[1],
        })
    }

    /// The coboundary of `zeta` on a pair, in the declared convention.
    pub fn coboundary(&self, g1: &GroupElement, g2: &GroupElement) -> Result<f64, CocycleError> {
        let product = self.eval(&g1.compose(g2)?)?;
        let parts = self.eval(g1)? + self.eval(g2)?;
        Ok(match self.convention {
            SignConvention::ProductMinusParts => product - parts,
            SignConvention::PartsMinusProduct => parts - product,
        })
    }
}

/// Projective-equivalence defect `(xa - xb)(g1,g2) - d(zeta)(g1,g2)`.
///
/// Zero certifies that `xa` and `xb` differ by the coboundary of `z`; taking
/// `xb` as the zero exponent certifies that `xa` itself is trivial.
pub fn coboundary_defect(
    xa: &Exponent,
    xb: &Exponent,
    z: &CoboundaryFunction,
    g1: &GroupElement,
    g2: &GroupElement,
) -> Result<f64, CocycleError> {
    Ok(xa.value(g1, g2)? - xb.value(g1, g2)? - z.coboundary(g1, g2)?)
}

/// A central extension of `base` by the exponent `xi`.
///
/// Elements are raw tuples `(theta, base params...)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CentralExtension {
    base: GroupDescriptor,
    exponent: Exponent,
}

/// Tolerance of the cocycle pre-check run by [`central_extend`].
const COCYCLE_CHECK_TOL: f64 = 1e-9;

/// Builds the central extension of `base` by `xi` after fuzzing the cocycle
/// identity on seeded random triples.
pub fn central_extend(
    base: GroupDescriptor,
    xi: Exponent,
) -> Result<CentralExtension, CocycleError> {
    if let Some(required) = xi.base_group() {
        if base.id() != required {
            return Err(CocycleError::IncompatibleBase { exponent: xi.id(), base: base.id() });
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x9e3779b9);
    let mut worst = 0.0_f64;
    for _ in 0..200 {
        let g1 = base.sample(&mut rng);
        let g2 = base.sample(&mut rng);
        let g3 = base.sample(&mut rng);
        worst = worst.max(cocycle_defect(&xi, &g1, &g2, &g3)?.abs());
    }
    if worst > COCYCLE_CHECK_TOL {
        return Err(CocycleError::CocycleCheckFailed {
            exponent: xi.id(),
            base: base.id(),
            defect: worst,
        });
    }
    Ok(CentralExtension { base, exponent: xi })
}

impl CentralExtension {
    pub fn base(&self) -> &GroupDescriptor {
        &self.base
    }

    pub fn exponent(&self) -> &Exponent {
        &self.exponent
    }

    pub fn arity(&self) -> usize {
        self.base.arity() + 1
    }

    pub fn identity(&self) -> Vec<f64> {
        let mut out = vec![0.0];
        out.extend_from_slice(self.base.identity().params());
        out
    }

    /// Extended product `(theta + theta' + xi(g, g'), g g')`.
    pub fn compose(&self, e1: &[f64], e2: &[f64]) -> Result<Vec<f64>, CocycleError> {
        let g1 = self.base.element(&e1[1..])?;
        let g2 = self.base.element(&e2[1..])?;
        let theta = e1[0] + e2[0] + self.exponent.value(&g1, &g2)?;
        let mut out = vec![theta];
        out.extend_from_slice(g1.compose(&g2)?.params());
        Ok(out)
    }

    /// Extended inverse `(-theta - xi(g, g^{-1}), g^{-1})`.
    pub fn inverse(&self, e: &[f64]) -> Result<Vec<f64>, CocycleError> {
        let g = self.base.element(&e[1..])?;
        let ginv = g.inverse();
        let theta = -e[0] - self.exponent.value(&g, &ginv)?;
        let mut out = vec![theta];
        out.extend_from_slice(ginv.params());
        Ok(out)
    }

    /// The bundled descriptor this extension reproduces, when there is one.
    pub fn bundled_equivalent(&self) -> Option<GroupDescriptor> {
        let m = self.exponent.mass();
        match (self.base.id(), self.exponent.id()) {
            (GroupId::Gs, ExponentId::XiGs) => GroupDescriptor::with_mass(GroupId::Gms, m).ok(),
            (GroupId::Gs, ExponentId::XiGs1) => GroupDescriptor::with_mass(GroupId::Gmsp, m).ok(),
            (GroupId::Gs, ExponentId::XiGs2) => Some(GroupDescriptor::new(GroupId::Gts)),
            (GroupId::T2, ExponentId::XiHpq) => Some(GroupDescriptor::new(GroupId::Heis)),
            (GroupId::T2, ExponentId::XiWh) => Some(GroupDescriptor::new(GroupId::Wh)),
            (GroupId::AffPrime, ExponentId::XiSw) => Some(GroupDescriptor::new(GroupId::Sw)),
            (GroupId::G0, ExponentId::XiQg) => GroupDescriptor::with_mass(GroupId::Gm, m).ok(),
            _ => None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use rand::SeedableRng;

    fn gs(params: &[f64]) -> GroupElement {
        GroupDescriptor::new(GroupId::Gs).element(params).unwrap()
    }

    #[test]
    fn xi_qg_hand_value() {
        let d = GroupDescriptor::new(GroupId::G0);
        let xi = Exponent::new(ExponentId::XiQg);
        let g = d.element(&[0.0, 0.0, 2.0]).unwrap();
        let gp = d.element(&[1.0, 3.0, 0.0]).unwrap();
        assert_relative_eq!(xi.value(&g, &gp).unwrap(), 8.0, epsilon = 1e-15);
    }

    #[test]
    fn xi_gs2_hand_value() {
        let xi = Exponent::new(ExponentId::XiGs2);
        let g = gs(&[0.0, 1.0, 0.0, 0.0]);
        let gp = gs(&[0.0, 0.0, 0.0, 2.0_f64.ln()]);
        assert_relative_eq!(xi.value(&g, &gp).unwrap(), 0.5, epsilon = 1e-15);
    }

    #[test]
    fn exponents_are_normalized() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for xi in Exponent::bundled(1.3) {
            let d = GroupDescriptor::new(xi.base_group().unwrap());
            let e = d.identity();
            for _ in 0..20 {
                let g = d.sample(&mut rng);
                assert_eq!(xi.value(&e, &g).unwrap(), 0.0, "{}: xi(e, g) != 0", xi.id());
                assert_eq!(xi.value(&g, &e).unwrap(), 0.0, "{}: xi(g, e) != 0", xi.id());
            }
        }
    }

    #[test]
    fn cocycle_identity_holds_for_bundled_exponents() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for xi in Exponent::bundled(2.0) {
            let d = GroupDescriptor::new(xi.base_group().unwrap());
            for _ in 0..200 {
                let (g1, g2, g3) = (d.sample(&mut rng), d.sample(&mut rng), d.sample(&mut rng));
                let defect = cocycle_defect(&xi, &g1, &g2, &g3).unwrap();
                assert!(defect.abs() <= 1e-9, "{}: defect {defect}", xi.id());
            }
        }
    }

    #[test]
    fn cocycle_defect_vanishes_with_identity_middle() {
        let d = GroupDescriptor::new(GroupId::Gs);
        let xi = Exponent::new(ExponentId::XiGs);
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        let g1 = d.sample(&mut rng);
        let g3 = d.sample(&mut rng);
        assert_eq!(cocycle_defect(&xi, &g1, &d.identity(), &g3).unwrap(), 0.0);
    }

    #[test]
    fn coboundary_hand_example() {
        // xi = 5, xi1 = -4, d(zeta_M) = 16 - 1 - 6 = 9 at M = 2.
        let xa = Exponent::with_mass(ExponentId::XiGs, 2.0).unwrap();
        let xb = Exponent::with_mass(ExponentId::XiGs1, 2.0).unwrap();
        let z = CoboundaryFunction::bundled(CoboundaryId::ZetaM, 2.0);
        let g = gs(&[0.0, 1.0, 1.0, 0.0]);
        let gp = gs(&[1.0, 2.0, 3.0, 0.0]);
        assert_relative_eq!(xa.value(&g, &gp).unwrap(), 5.0, epsilon = 1e-15);
        assert_relative_eq!(xb.value(&g, &gp).unwrap(), -4.0, epsilon = 1e-15);
        assert_relative_eq!(z.coboundary(&g, &gp).unwrap(), 9.0, epsilon = 1e-15);
        assert_relative_eq!(
            coboundary_defect(&xa, &xb, &z, &g, &gp).unwrap(),
            0.0,
            epsilon = 1e-15
        );
    }

    #[test]
    fn equivalences_hold_on_random_pairs() {
        let mut rng = ChaCha8Rng::seed_from_u64(13);
        let m = 1.7;
        let gs_d = GroupDescriptor::new(GroupId::Gs);
        let t2 = GroupDescriptor::new(GroupId::T2);
        let ap = GroupDescriptor::new(GroupId::AffPrime);
        let zero = Exponent::new(ExponentId::Zero);
        let cases: Vec<(Exponent, Exponent, CoboundaryFunction, GroupDescriptor)> = vec![
            (
                Exponent::with_mass(ExponentId::XiGs, m).unwrap(),
                Exponent::with_mass(ExponentId::XiGs1, m).unwrap(),
                CoboundaryFunction::bundled(CoboundaryId::ZetaM, m),
                gs_d,
            ),
            (
                Exponent::new(ExponentId::XiGs2),
                zero,
                CoboundaryFunction::bundled(CoboundaryId::ZetaT, 1.0),
                gs_d,
            ),
            (
                Exponent::new(ExponentId::XiSw),
                zero,
                CoboundaryFunction::bundled(CoboundaryId::ZetaS, 1.0),
                ap,
            ),
            (
                Exponent::new(ExponentId::XiHpq),
                Exponent::new(ExponentId::XiWh),
                CoboundaryFunction::bundled(CoboundaryId::ZetaWh, 1.0),
                t2,
            ),
        ];
        for (xa, xb, z, d) in cases {
            for _ in 0..200 {
                let g1 = d.sample(&mut rng);
                let g2 = d.sample(&mut rng);
                let defect = coboundary_defect(&xa, &xb, &z, &g1, &g2).unwrap();
                assert!(defect.abs() <= 1e-12, "{} vs {}: defect {defect}", xa.id(), xb.id());
            }
        }
    }

    #[test]
    fn identity_pair_has_zero_defect() {
        let d = GroupDescriptor::new(GroupId::Gs);
        let xa = Exponent::new(ExponentId::XiGs);
        let xb = Exponent::new(ExponentId::XiGs1);
        let z = CoboundaryFunction::bundled(CoboundaryId::ZetaM, 1.0);
        let e = d.identity();
        assert_eq!(coboundary_defect(&xa, &xb, &z, &e, &e).unwrap(), 0.0);
    }

    #[test]
    fn central_extension_reproduces_bundled_groups() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        let m = 1.4;
        let cases = [
            (GroupId::Gs, ExponentId::XiGs),
            (GroupId::Gs, ExponentId::XiGs1),
            (GroupId::Gs, ExponentId::XiGs2),
            (GroupId::T2, ExponentId::XiHpq),
            (GroupId::T2, ExponentId::XiWh),
            (GroupId::AffPrime, ExponentId::XiSw),
        ];
        for (base_id, xi_id) in cases {
            let base = GroupDescriptor::new(base_id);
            let xi = Exponent::with_mass(xi_id, m).unwrap();
            let ext = central_extend(base, xi).unwrap();
            let target = ext.bundled_equivalent().unwrap();
            for _ in 0..200 {
                let e1: Vec<f64> = target.sample(&mut rng).params().to_vec();
                let e2: Vec<f64> = target.sample(&mut rng).params().to_vec();
                let via_ext = ext.compose(&e1, &e2).unwrap();
                let via_target = target
                    .element(&e1)
                    .unwrap()
                    .compose(&target.element(&e2).unwrap())
                    .unwrap();
                for (x, y) in via_ext.iter().zip(via_target.params()) {
                    assert!((x - y).abs() <= 1e-12, "{base_id}/{xi_id}: law mismatch");
                }
                let inv_ext = ext.inverse(&e1).unwrap();
                let inv_target = target.element(&e1).unwrap().inverse();
                for (x, y) in inv_ext.iter().zip(inv_target.params()) {
                    assert!((x - y).abs() <= 1e-12, "{base_id}/{xi_id}: inverse mismatch");
                }
            }
        }
    }

    #[test]
    fn zero_exponent_gives_direct_product() {
        let base = GroupDescriptor::new(GroupId::Wav);
        let ext = central_extend(base, Exponent::new(ExponentId::Zero)).unwrap();
        let out = ext.compose(&[0.5, 1.0, 0.25], &[0.75, -1.0, 0.5]).unwrap();
        assert_relative_eq!(out[0], 1.25, epsilon = 1e-15);
    }

    #[test]
    fn wrong_base_is_rejected() {
        let base = GroupDescriptor::new(GroupId::Wav);
        let xi = Exponent::new(ExponentId::XiGs);
        assert!(matches!(
            central_extend(base, xi),
            Err(CocycleError::IncompatibleBase { .. })
        ));
    }

    #[test]
    fn base_group_mismatch_is_rejected() {
        let xi = Exponent::new(ExponentId::XiGs);
        let g = GroupDescriptor::new(GroupId::Wav).element(&[0.0, 0.0]).unwrap();
        assert!(matches!(
            xi.value(&g, &g),
            Err(CocycleError::BaseGroupMismatch { .. })
        ));
    }
}
