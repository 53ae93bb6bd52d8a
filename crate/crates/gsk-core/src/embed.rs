//! The subgroup/quotient atlas connecting the bundled groups.
//!
//! Every entry is a genuine group homomorphism, checkable by fuzzing. Three
//! kinds of arrow occur:
//!
//! * subgroup inclusions (e.g. the wavelet group inside the shearlet group);
//! * central quotients, for the non-trivial extensions `gms` and `gmsp`,
//!   which admit no splitting homomorphism back from `gs`;
//! * splitting sections for the trivial extensions `gts` and `sw`, where the
//!   phase is pinned to `theta = -zeta(g)` by the coboundary that
//!   trivializes the exponent. The bare `theta = 0` section is not a
//!   homomorphism for any of these extensions.

use crate::group::{GroupDescriptor, GroupElement, GroupError, GroupId};

/// A homomorphism between two bundled groups.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EmbeddingMap {
    source: GroupDescriptor,
    target: GroupDescriptor,
    kind: EmbeddingKind,
    note: &'static str,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum EmbeddingKind {
    G0IntoGaff,
    GsIntoGaff,
    GphIntoGaff,
    ShearIntoGph,
    ShearIntoGaff,
    WavIntoShear,
    WavIntoGaff,
    GsIntoGph,
    GmsOntoGs,
    GmspOntoGs,
    GsIntoGts,
    HeisIntoGms,
    WhIntoGmsp,
    SwIntoGts,
    WavIntoSw,
}

impl EmbeddingMap {
    pub fn source(&self) -> &GroupDescriptor {
        &self.source
    }

    pub fn target(&self) -> &GroupDescriptor {
        &self.target
    }

    /// Textual identification of the arrow.
    pub fn note(&self) -> &'static str {
        self.note
    }

    /// Applies the map to an element of the source group.
    pub fn apply(&self, g: &GroupElement) -> Result<GroupElement, GroupError> {
        if g.descriptor() != &self.source {
            return Err(GroupError::DescriptorMismatch(*g.descriptor(), self.source));
        }
        let x = g.params();
        let out: Vec<f64> = match self.kind {
            EmbeddingKind::G0IntoGaff => vec![x[0], x[1], x[2], 0.0, 0.0],
            EmbeddingKind::GsIntoGaff => vec![x[0], x[1], x[2], x[3], 2.0 * x[3]],
            EmbeddingKind::GphIntoGaff => {
                let p = self.source.family_p().expect("gph carries p");
                vec![x[0], x[1], x[2], x[3], x[3] / (p + 1.0)]
            }
            EmbeddingKind::ShearIntoGph => vec![x[3], x[2], x[1], x[0].ln()],
            EmbeddingKind::ShearIntoGaff => {
                let s = x[0].ln();
                vec![x[3], x[2], x[1], s, 0.5 * s]
            }
            EmbeddingKind::WavIntoShear => vec![x[1].exp(), 0.0, x[0], 0.0],
            EmbeddingKind::WavIntoGaff => vec![0.0, x[0], 0.0, x[1], 0.0],
            EmbeddingKind::GsIntoGph => x.to_vec(),
            EmbeddingKind::GmsOntoGs | EmbeddingKind::GmspOntoGs => x[1..].to_vec(),
            EmbeddingKind::GsIntoGts => {
                // zeta_T(b,a,v,sigma) = a e^{-sigma}
                vec![-x[1] * (-x[3]).exp(), x[0], x[1], x[2], x[3]]
            }
            EmbeddingKind::HeisIntoGms | EmbeddingKind::WhIntoGmsp => {
                let m = self.target.mass().expect("target carries M");
                vec![x[0], 0.0, x[1], x[2] / m, 0.0]
            }
            EmbeddingKind::SwIntoGts => vec![x[0], 0.0, x[2], 0.0, -x[1].ln()],
            EmbeddingKind::WavIntoSw => {
                // zeta_s(gamma, delta) = gamma delta with gamma = e^{-sigma},
                // delta = a.
                let gamma = (-x[1]).exp();
                vec![-x[0] * gamma, gamma, x[0]]
            }
        };
        self.target.element(&out)
    }
}

/// The bundled atlas, instantiated with mass `m` for the extended groups and
/// family parameter `p` for the extended Heisenberg arrow.
pub fn embedding_atlas(m: f64, p: f64) -> Result<Vec<EmbeddingMap>, GroupError> {
    let gms = GroupDescriptor::with_mass(GroupId::Gms, m)?;
    let gmsp = GroupDescriptor::with_mass(GroupId::Gmsp, m)?;
    let gph = GroupDescriptor::gph(p)?;
    let gph1 = GroupDescriptor::gph(1.0)?;
    let gph_half = GroupDescriptor::gph(-0.5)?;
    let plain = GroupDescriptor::new;
    use EmbeddingKind::*;
    let entry = |source, target, kind, note| EmbeddingMap { source, target, kind, note };
    Ok(vec![
        entry(plain(GroupId::G0), plain(GroupId::Gaff), G0IntoGaff, "sigma = tau = 0"),
        entry(plain(GroupId::Gs), plain(GroupId::Gaff), GsIntoGaff, "tau = 2 sigma"),
        entry(gph, plain(GroupId::Gaff), GphIntoGaff, "tau = sigma/(p+1)"),
        entry(plain(GroupId::Shear), gph1, ShearIntoGph, "p = 1; mu -> e^sigma, nu -> v, alpha -> a, beta -> b"),
        entry(plain(GroupId::Shear), plain(GroupId::Gaff), ShearIntoGaff, "tau = sigma/2 composite"),
        entry(plain(GroupId::Wav), plain(GroupId::Shear), WavIntoShear, "b = v = 0; d -> mu, t -> alpha"),
        entry(plain(GroupId::Wav), plain(GroupId::Gaff), WavIntoGaff, "b = v = tau = 0"),
        entry(plain(GroupId::Gs), gph_half, GsIntoGph, "p = -1/2 identification"),
        entry(gms, plain(GroupId::Gs), GmsOntoGs, "central quotient (theta forgotten); the extension does not split"),
        entry(gmsp, plain(GroupId::Gs), GmspOntoGs, "central quotient (theta forgotten); the extension does not split"),
        entry(plain(GroupId::Gs), plain(GroupId::Gts), GsIntoGts, "splitting section theta = -zeta_T(g)"),
        entry(plain(GroupId::Heis), gms, HeisIntoGms, "b = sigma = 0; Mv -> p, a -> q"),
        entry(plain(GroupId::Wh), gmsp, WhIntoGmsp, "b = sigma = 0; Mv -> p, a -> q"),
        entry(plain(GroupId::Sw), plain(GroupId::Gts), SwIntoGts, "v = b = 0; e^{-sigma} -> gamma, a -> delta"),
        entry(plain(GroupId::Wav), plain(GroupId::Sw), WavIntoSw, "trivial central extension, section theta = -zeta_s"),
    ])
}

/// Looks up the bundled arrow from `source` into `target`.
///
/// Constants are taken from the given descriptors and must be consistent
/// with the arrow (e.g. the shearlet group only lands in the `p = 1` member
/// of the extended Heisenberg family).
pub fn embedding_between(
    source: &GroupDescriptor,
    target: &GroupDescriptor,
) -> Result<EmbeddingMap, GroupError> {
    let unknown = || GroupError::UnknownEmbedding { src: source.id(), dst: target.id() };
    let mass = target.mass().or_else(|| source.mass()).unwrap_or(1.0);
    let p = source.family_p().or_else(|| target.family_p()).unwrap_or(0.5);
    let atlas = embedding_atlas(mass, p)?;
    atlas
        .into_iter()
        .find(|e| e.source == *source && e.target == *target)
        .ok_or_else(unknown)
}
