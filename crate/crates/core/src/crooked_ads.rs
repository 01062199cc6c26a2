//! Crooked planes in anti-de Sitter space: construction from a vertex
//! and a unit spacelike spine direction, stratified membership through
//! the geodesic logarithm (with an independent trace-algebraic route),
//! the dual-plane description, and the lift to the double cover with its
//! co-strata.

use crate::ads::{act, AdSPoint, HatAdSPoint, IsometryG0};
use crate::constants::{TOL_PROJECTIVE, TOL_STRATUM};
use crate::crooked_e3::{hinge_dirs, membership as e3_membership, CrookedPlaneE3, StratumTag};
use crate::error::{GeomError, Result};
use crate::sl2::{
    cross, det3, geodesic_connect_dbl, lorentz_dot, mink_to_sl2, sl2_to_mink, Mat2, MinkVec3,
    TangentSL2, PSL2, SL2,
};
use serde::{Deserialize, Serialize};

/// Strata of an anti-de Sitter crooked plane and of its lift to the
/// double cover, ordered by priority (smaller wins when merging the
/// classifications of several geodesic logarithms).
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum AdSStratumTag {
    Vertex,
    Covertex,
    Hinge1,
    Hinge2,
    Cohinge1,
    Cohinge2,
    Spine,
    Cospine,
    Wing1,
    Wing2,
    Cowing1,
    Cowing2,
    StemInterior,
    Outside,
}

impl AdSStratumTag {
    /// The co-stratum: what the deck transformation does to labels.
    pub fn co(self) -> AdSStratumTag {
        use AdSStratumTag::*;
        match self {
            Vertex => Covertex,
            Covertex => Vertex,
            Hinge1 => Cohinge1,
            Hinge2 => Cohinge2,
            Cohinge1 => Hinge1,
            Cohinge2 => Hinge2,
            Spine => Cospine,
            Cospine => Spine,
            Wing1 => Cowing1,
            Wing2 => Cowing2,
            Cowing1 => Wing1,
            Cowing2 => Wing2,
            StemInterior => StemInterior,
            Outside => Outside,
        }
    }

    /// Forgetting the co-decoration (the projection to anti-de Sitter
    /// space merges each stratum with its co-stratum).
    pub fn base(self) -> AdSStratumTag {
        use AdSStratumTag::*;
        match self {
            Covertex => Vertex,
            Cohinge1 => Hinge1,
            Cohinge2 => Hinge2,
            Cospine => Spine,
            Cowing1 => Wing1,
            Cowing2 => Wing2,
            other => other,
        }
    }
}

/// A crooked plane in anti-de Sitter space: vertex g and unit spacelike
/// spine direction s in the left trivialization. The planes of s and -s
/// coincide, so s is stored in a canonical sign.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawAdSPlane", into = "RawAdSPlane")]
pub struct AdSCrookedPlane {
    g: PSL2,
    s: TangentSL2,
}

#[derive(Serialize, Deserialize)]
struct RawAdSPlane {
    g: Mat2,
    s: Mat2,
}

impl TryFrom<RawAdSPlane> for AdSCrookedPlane {
    type Error = GeomError;
    fn try_from(raw: RawAdSPlane) -> Result<AdSCrookedPlane> {
        let det = raw.g.det();
        if det <= 0.0 {
            return Err(GeomError::NotUnimodular(det));
        }
        AdSCrookedPlane::new(PSL2::from(raw.g), TangentSL2::new(raw.s)?)
    }
}

impl From<AdSCrookedPlane> for RawAdSPlane {
    fn from(cp: AdSCrookedPlane) -> RawAdSPlane {
        RawAdSPlane { g: cp.g.rep().mat(), s: cp.s.mat() }
    }
}

fn canonical_spacelike_sign(s: TangentSL2) -> TangentSL2 {
    let v = sl2_to_mink(&s);
    for c in [v.x, v.y, v.z] {
        if c.abs() > 1e-12 {
            return if c < 0.0 { s.scale(-1.0) } else { s };
        }
    }
    s
}

impl AdSCrookedPlane {
    pub fn new(g: PSL2, s: TangentSL2) -> Result<AdSCrookedPlane> {
        let q = lorentz_dot(&s, &s);
        if (q - 1.0).abs() > 1e-9 {
            return Err(GeomError::NotUnitSpacelike(q));
        }
        Ok(AdSCrookedPlane { g, s: canonical_spacelike_sign(s) })
    }

    /// The standard plane: vertex at the identity, spine direction
    /// diag(1, -1).
    pub fn standard() -> AdSCrookedPlane {
        AdSCrookedPlane { g: PSL2::identity(), s: TangentSL2::diag_spine() }
    }

    pub fn vertex(&self) -> AdSPoint {
        AdSPoint::new(self.g)
    }

    pub fn spine_dir(&self) -> TangentSL2 {
        self.s
    }
}

/// The tangent cone at the vertex, in the left trivialization: the
/// Minkowski crooked plane with vertex 0 and the same spine direction.
pub fn tangent_cone(cp: &AdSCrookedPlane) -> CrookedPlaneE3 {
    CrookedPlaneE3::new(MinkVec3::new(0.0, 0.0, 0.0), sl2_to_mink(&cp.s))
        .expect("spine direction is unit spacelike")
}

fn e3_to_ads_tag(tag: StratumTag) -> AdSStratumTag {
    match tag {
        StratumTag::Vertex => AdSStratumTag::Vertex,
        StratumTag::Hinge1 => AdSStratumTag::Hinge1,
        StratumTag::Hinge2 => AdSStratumTag::Hinge2,
        StratumTag::Spine => AdSStratumTag::Spine,
        StratumTag::Wing1 => AdSStratumTag::Wing1,
        StratumTag::Wing2 => AdSStratumTag::Wing2,
        StratumTag::StemInterior => AdSStratumTag::StemInterior,
        StratumTag::Outside => AdSStratumTag::Outside,
    }
}

/// Stratified membership in anti-de Sitter space: classify every
/// principal geodesic logarithm of the relative position in the tangent
/// cone and keep the highest-priority stratum.
pub fn membership_ads(cp: &AdSCrookedPlane, x: &AdSPoint) -> AdSStratumTag {
    let cone = tangent_cone(cp);
    let m = cp.g.inverse() * x.g;
    let mut best = AdSStratumTag::Outside;
    for lift in m.lifts() {
        if let Some(xi) = geodesic_connect_dbl(&lift) {
            let tag = e3_to_ads_tag(e3_membership(&cone, &sl2_to_mink(&xi)));
            best = best.min(tag);
        }
    }
    best
}

/// The lift of a crooked plane to the double cover: the full preimage,
/// recorded by the canonical lift of the vertex. Its vertex-side strata
/// keep their names; the strata through the antipodal covertex carry the
/// co-names.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatAdSCrookedPlane {
    pub vertex: SL2,
    pub s: TangentSL2,
}

pub fn lift(cp: &AdSCrookedPlane) -> HatAdSCrookedPlane {
    HatAdSCrookedPlane { vertex: cp.g.rep(), s: cp.s }
}

impl HatAdSCrookedPlane {
    pub fn covertex(&self) -> SL2 {
        -self.vertex
    }

    pub fn project(&self) -> AdSCrookedPlane {
        AdSCrookedPlane::new(PSL2::new(self.vertex), self.s)
            .expect("projection of a valid lift")
    }
}

/// Stratified membership on the double cover. The lifted plane is the
/// union of the exponential image of the crooked cone at the vertex and
/// its deck image through the covertex; logarithms based at the covertex
/// classify into the same cone but receive co-labels.
pub fn membership_hat(hcp: &HatAdSCrookedPlane, x: &HatAdSPoint) -> AdSStratumTag {
    let cone = CrookedPlaneE3::new(MinkVec3::new(0.0, 0.0, 0.0), sl2_to_mink(&hcp.s))
        .expect("spine direction is unit spacelike");
    let m = hcp.vertex.inverse() * x.g;
    let mut best = AdSStratumTag::Outside;
    if let Some(xi) = geodesic_connect_dbl(&m) {
        let tag = e3_to_ads_tag(e3_membership(&cone, &sl2_to_mink(&xi)));
        best = best.min(tag);
    }
    if let Some(xi) = geodesic_connect_dbl(&-m) {
        let tag = e3_to_ads_tag(e3_membership(&cone, &sl2_to_mink(&xi))).co();
        best = best.min(tag);
    }
    best
}

/// Independent trace-algebraic membership route. Uses only traces and
/// the linear structure of the relative position: with m the lift of
/// g^{-1} x of non-negative trace, nu the Minkowski vector of its
/// traceless part and tau its trace,
///   - the stem plane is tr(s m) = 0,
///   - |tau| < 2 there forces nu timelike (stem interior),
///   - tau = 2 with nu on a hinge line is that hinge,
///   - tau > 2 with nu on the spine line is the spine,
///   - tau > 2 with nu in a hinge's null plane on the positive side is
///     that wing.
pub fn membership_ads_trace(cp: &AdSCrookedPlane, x: &AdSPoint) -> AdSStratumTag {
    let m_psl = cp.g.inverse() * x.g;
    if m_psl.approx_eq(&PSL2::identity(), TOL_PROJECTIVE) {
        return AdSStratumTag::Vertex;
    }
    let mut m = m_psl.rep().mat();
    if m.trace() < 0.0 {
        m = m.scale(-1.0);
    }
    let tau = m.trace();
    let half = 0.5 * tau;
    let n_part = Mat2::new(m.a - half, m.b, m.c, m.d - half);
    let nu = sl2_to_mink(&TangentSL2::new(n_part).expect("traceless by construction"));
    let sc = nu.sup_norm().max(1.0);
    let s_vec = sl2_to_mink(&cp.s);
    let (n1, n2) = hinge_dirs(&tangent_cone(cp));
    let axis = {
        let u = n1 + n2;
        u.scale(1.0 / (-u.norm2()).sqrt())
    };

    if (tau - 2.0).abs() <= TOL_STRATUM {
        // Parabolic: on the plane only along a hinge line.
        for (n, tag) in [(n1, AdSStratumTag::Hinge1), (n2, AdSStratumTag::Hinge2)] {
            if nu.cross(&n).sup_norm() <= TOL_STRATUM * sc {
                return tag;
            }
        }
        return AdSStratumTag::Outside;
    }
    if tau < 2.0 {
        // Elliptic range: nu is automatically timelike; membership is the
        // stem-plane condition tr(s m) = 0, i.e. <s, nu> = 0.
        if nu.dot(&s_vec).abs() <= TOL_STRATUM * sc {
            return AdSStratumTag::StemInterior;
        }
        return AdSStratumTag::Outside;
    }
    // Hyperbolic range.
    if nu.cross(&s_vec).sup_norm() <= TOL_STRATUM * sc {
        return AdSStratumTag::Spine;
    }
    for (n, tag) in [(n1, AdSStratumTag::Wing1), (n2, AdSStratumTag::Wing2)] {
        if nu.dot(&n).abs() <= TOL_STRATUM * sc && det3(&n, &axis, &nu) > TOL_STRATUM * sc {
            return tag;
        }
    }
    AdSStratumTag::Outside
}

/// How a crooked plane transforms under an isometry (g1, g2):
/// the vertex moves by the action and the spine direction by Ad(g2).
///
/// The transported spine is renormalized instead of re-validated: the
/// adjoint preserves the norm exactly, but for isometries with large
/// entries the recomputed norm is cancellation-limited, so a unit check
/// on it would spuriously reject valid inputs.
pub fn transform_plane(iso: &IsometryG0, cp: &AdSCrookedPlane) -> AdSCrookedPlane {
    let g = act(iso, &cp.vertex()).g;
    let s = crate::sl2::ad(&iso.g2, &cp.s);
    let q = lorentz_dot(&s, &s);
    let s = s.scale(q.sqrt().recip());
    AdSCrookedPlane { g, s: canonical_spacelike_sign(s) }
}

/// A complete spacelike geodesic, as a point and a left-trivialized unit
/// spacelike direction there.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeGeodesic {
    pub point: AdSPoint,
    pub dir: TangentSL2,
}

impl SpacelikeGeodesic {
    pub fn at(&self, t: f64) -> AdSPoint {
        crate::ads::exp_at(&self.point, &self.dir.scale(t))
    }
}

/// The dual description of a crooked plane: the pair (dual plane handle,
/// spacelike geodesic ell = stem intersect g*). The geodesic consists of
/// the points at timelike radius pi/2 in the stem plane, and its
/// left-trivialized tangent is parallel to the spine direction.
pub fn dual_description(cp: &AdSCrookedPlane) -> (AdSPoint, SpacelikeGeodesic) {
    let (n1, n2) = hinge_dirs(&tangent_cone(cp));
    let u = n1 + n2;
    let axis = u.scale(1.0 / (-u.norm2()).sqrt());
    let tau = mink_to_sl2(&axis);
    let point = crate::ads::exp_at(&cp.vertex(), &tau.scale(std::f64::consts::FRAC_PI_2));
    (cp.vertex(), SpacelikeGeodesic { point, dir: cp.s })
}

/// Reconstruction of a crooked plane from its dual description. The
/// geodesic must lie on g*; the spine direction is recovered as the
/// Minkowski normal of the plane of timelike logarithms from g to ell.
pub fn from_dual(g: &AdSPoint, ell: &SpacelikeGeodesic) -> Result<AdSCrookedPlane> {
    let mut worst = 0.0f64;
    for t in [-1.3, -0.4, 0.0, 0.7, 1.9] {
        let p = ell.at(t);
        let tr = (g.g.inverse() * p.g).rep().trace().abs();
        worst = worst.max(tr);
    }
    if worst > 1e-8 {
        return Err(GeomError::GeodesicNotInPlane(worst));
    }
    let tau0 = pi_half_log(g, &ell.at(0.0))?;
    let tau1 = pi_half_log(g, &ell.at(1.0))?;
    let s_raw = cross(&tau0, &tau1);
    let q = lorentz_dot(&s_raw, &s_raw);
    if q <= 1e-12 {
        return Err(GeomError::DependentPair);
    }
    AdSCrookedPlane::new(g.g, s_raw.scale(1.0 / q.sqrt()))
}

/// A logarithm of y at g of timelike radius pi/2 (exists exactly when y
/// lies on the dual plane g*).
fn pi_half_log(g: &AdSPoint, y: &AdSPoint) -> Result<TangentSL2> {
    let mut best = f64::INFINITY;
    for xi in crate::ads::log_at(g, y) {
        let q = lorentz_dot(&xi, &xi);
        let residual = (q + std::f64::consts::FRAC_PI_2.powi(2)).abs();
        if residual <= 1e-8 {
            return Ok(xi);
        }
        best = best.min(residual);
    }
    Err(GeomError::GeodesicNotInPlane(best))
}
