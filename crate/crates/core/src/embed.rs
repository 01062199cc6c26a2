//! The conformal compactification picture: the affine embedding of
//! Minkowski 3-space into the Einstein universe, the embedding `psi` of the
//! group model of anti-de Sitter space onto the complement of the invariant
//! Einstein hypersphere, rulings of the invariant sphere in the affine
//! patch, closed-form images of one-parameter subgroups and totally
//! geodesic surfaces, crooked surfaces built from stem configurations, and
//! the two-way correspondence between anti-de Sitter crooked planes and
//! adapted crooked surfaces.

use serde::{Deserialize, Serialize};

use crate::constants::{TOL_INCIDENT, TOL_PATCH, TOL_PROJECTIVE, ELLIPTIC_IMAGE_Z_SIGN};
use crate::crooked_ads::{tangent_cone, AdSCrookedPlane};
use crate::crooked_e3::{membership, hinge_dirs, CrookedPlaneE3, StratumTag};
use crate::ein::{
    p0, p1, p2, p_infinity, photon_meets_fixed_set, photon_through, point, spacelike_circle_dual,
    ConformalMap5, ProjectivePoint5, SpacelikeCircle, Vec5,
};
use crate::error::{GeomError, Result};
use crate::sl2::{
    ad, det3, exp_sl2, mink_to_sl2, rank1_kernel_image, Mat2, MinkVec3, PSL2, SL2, TangentSL2,
};

/// The affine chart of the Einstein universe: p -> [p : Q_E(p) : 1].
///
/// The image is an isotropic line, and the chart identifies Minkowski
/// 3-space conformally with the complement of the light cone of the
/// improper point.
pub fn embed_mink(v: &MinkVec3) -> ProjectivePoint5 {
    let q = v.norm2();
    point(&Vec5::new(v.x, v.y, v.z, q, 1.0)).expect("affine embedding is isotropic")
}

/// Inverse of the affine chart. Fails on the light cone of the improper
/// point (V = 0 on the sup-normalized representative).
pub fn mink_from_ein(p: &ProjectivePoint5) -> Result<MinkVec3> {
    let r = p.rep();
    if r.v.abs() <= TOL_PATCH {
        return Err(GeomError::NotInMinkowskiPatch);
    }
    Ok(MinkVec3::new(r.x / r.v, r.y / r.v, r.z / r.v))
}

/// The equivariant embedding of the group model into the Einstein
/// universe:
///
/// [[a, b], [c, d]]  ->  [a - d : b + c : b - c : a + d - 2 : a + d + 2].
///
/// It sends the identity to the origin of the affine chart and -1 to the
/// improper point, and intertwines deck inversion with the hypersphere
/// inversion: psi(-m) = inversion(psi(m)).
pub fn psi(m: &SL2) -> ProjectivePoint5 {
    let mm = m.mat();
    let v = Vec5::new(
        mm.a - mm.d,
        mm.b + mm.c,
        mm.b - mm.c,
        mm.a + mm.d - 2.0,
        mm.a + mm.d + 2.0,
    );
    point(&v).expect("psi lands on the null quadric")
}

/// Inverse of `psi` on its image, the complement of the invariant
/// hypersphere {U = V}. Fails with `OnEinstein2` on the hypersphere.
pub fn psi_inverse(p: &ProjectivePoint5) -> Result<SL2> {
    let r = p.rep();
    let dvu = r.v - r.u;
    if dvu.abs() <= TOL_PATCH {
        return Err(GeomError::OnEinstein2);
    }
    let a = (2.0 * r.x + r.u + r.v) / dvu;
    let b = 2.0 * (r.y + r.z) / dvu;
    let c = 2.0 * (r.y - r.z) / dvu;
    let d = (-2.0 * r.x + r.u + r.v) / dvu;
    SL2::new(Mat2::new(a, b, c, d))
}

/// The involution swapping the two affine-chart coordinates U and V. Its
/// fixed set is the invariant Einstein hypersphere; it realizes deck
/// inversion of the group model on the complement.
pub fn inversion(p: &ProjectivePoint5) -> ProjectivePoint5 {
    let r = p.rep();
    point(&Vec5::new(r.x, r.y, r.z, r.v, r.u)).expect("inversion of a point is a point")
}

/// Whether a point lies on the invariant hypersphere {U = V}.
pub fn fixed_set_contains(p: &ProjectivePoint5) -> bool {
    let r = p.rep();
    (r.u - r.v).abs() <= TOL_INCIDENT
}

/// One of the two families of rulings of the unit Lorentzian sphere
/// {x^2 + y^2 - z^2 = 1}.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RulingSign {
    Plus,
    Minus,
}

/// The point of the ruling line through (cos t, sin t, 0) at height eta.
/// Every output satisfies x^2 + y^2 - z^2 = 1, and under the affine
/// embedding each ruling is an isotropic line contained in the invariant
/// hypersphere.
pub fn ruling_point(theta: f64, sign: RulingSign, eta: f64) -> MinkVec3 {
    let (s, c) = theta.sin_cos();
    let (x, y) = match sign {
        RulingSign::Plus => (c - eta * s, s + eta * c),
        RulingSign::Minus => (c + eta * s, s - eta * c),
    };
    MinkVec3::new(x, y, eta)
}

/// The ideal endpoint of a ruling on the circle {U = V = 0}:
///
///   plus:  [-sin t :  cos t : 1 : 0 : 0]
///   minus: [ sin t : -cos t : 1 : 0 : 0].
pub fn ruling_ideal_endpoint(theta: f64, sign: RulingSign) -> ProjectivePoint5 {
    let (s, c) = theta.sin_cos();
    let v = match sign {
        RulingSign::Plus => Vec5::new(-s, c, 1.0, 0.0, 0.0),
        RulingSign::Minus => Vec5::new(s, -c, 1.0, 0.0, 0.0),
    };
    point(&v).expect("ruling endpoints are isotropic")
}

/// The four conjugacy families of one-parameter subgroup curves whose
/// affine-chart images have closed forms.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum GeodesicFamily {
    /// t -> diag(e^t, e^{-t}); image x = tanh(t/2) on the spine axis.
    Hyperbolic,
    /// t -> -diag(e^t, e^{-t}); image x = coth(t/2), off the patch at t=0.
    AntiHyperbolic,
    /// t -> rotation by t; image z = -tan(t/2), off the patch at t = pi.
    Elliptic,
    /// t -> [[1, t], [0, 1]]; image (0, t/4, t/4), exactly.
    Unipotent,
}

/// Evaluates the affine-chart image of the chosen subgroup at parameter t
/// and returns it together with the sup-norm deviation from the
/// closed-form curve. Fails with `NotInPatch` where the curve leaves the
/// chart.
pub fn geodesic_image_check(family: GeodesicFamily, t: f64) -> Result<(MinkVec3, f64)> {
    let (m, predicted) = match family {
        GeodesicFamily::Hyperbolic => (
            Mat2::new(t.exp(), 0.0, 0.0, (-t).exp()),
            MinkVec3::new((t / 2.0).tanh(), 0.0, 0.0),
        ),
        GeodesicFamily::AntiHyperbolic => (
            Mat2::new(-t.exp(), 0.0, 0.0, -(-t).exp()),
            MinkVec3::new((t / 2.0).tanh().recip(), 0.0, 0.0),
        ),
        GeodesicFamily::Elliptic => (
            Mat2::new(t.cos(), -t.sin(), t.sin(), t.cos()),
            MinkVec3::new(0.0, 0.0, ELLIPTIC_IMAGE_Z_SIGN * (t / 2.0).tan()),
        ),
        GeodesicFamily::Unipotent => (
            Mat2::new(1.0, t, 0.0, 1.0),
            MinkVec3::new(0.0, t / 4.0, t / 4.0),
        ),
    };
    let p = psi(&SL2::new(m)?);
    let q = mink_from_ein(&p).map_err(|_| GeomError::NotInPatch(p.rep().v.abs()))?;
    Ok((q, (q - predicted).sup_norm()))
}

/// Totally geodesic families with linear or quadric image constraints in
/// the affine chart.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum TotallyGeodesicFamily {
    /// Upper-triangular subgroup; its image satisfies Y = Z.
    BorelUpper,
    /// Lower-triangular subgroup; its image satisfies Y = -Z.
    BorelLower,
    /// The set {a = d}; its image satisfies X = 0.
    IndefinitePlane,
    /// The trace-zero set (the dual plane of the identity); its image
    /// satisfies U + V = 0 and its affine part lies on the unit timelike
    /// hyperboloid |q|^2 = -1.
    DualGeodesicPlane,
}

/// Checks that `m` belongs to the stated family and returns the residual
/// of the corresponding image constraint on the sup-normalized
/// representative of psi(m).
pub fn totally_geodesic_image_check(family: TotallyGeodesicFamily, m: &SL2) -> Result<f64> {
    let mm = m.mat();
    let r = psi(m).rep();
    match family {
        TotallyGeodesicFamily::BorelUpper => {
            if mm.c.abs() > TOL_INCIDENT {
                return Err(GeomError::InvalidConfiguration(
                    "matrix is not upper triangular",
                ));
            }
            Ok((r.y - r.z).abs())
        }
        TotallyGeodesicFamily::BorelLower => {
            if mm.b.abs() > TOL_INCIDENT {
                return Err(GeomError::InvalidConfiguration(
                    "matrix is not lower triangular",
                ));
            }
            Ok((r.y + r.z).abs())
        }
        TotallyGeodesicFamily::IndefinitePlane => {
            if (mm.a - mm.d).abs() > TOL_INCIDENT {
                return Err(GeomError::InvalidConfiguration(
                    "matrix does not have equal diagonal entries",
                ));
            }
            Ok(r.x.abs())
        }
        TotallyGeodesicFamily::DualGeodesicPlane => {
            if m.trace().abs() > TOL_INCIDENT {
                return Err(GeomError::InvalidConfiguration("matrix is not trace-free"));
            }
            let q = mink_from_ein(&psi(m))?;
            Ok((r.u + r.v).abs().max((q.norm2() + 1.0).abs()))
        }
    }
}

/// A stem configuration: an ordered quadruple of pairwise distinct points
/// with q1, q2 each incident to both q0 and q_inf, while q0 is not
/// incident to q_inf and q1 is not incident to q2. These are exactly the
/// configurations conjugate to the standard quadruple under the identity
/// component of the conformal group.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct StemConfiguration {
    pub q0: ProjectivePoint5,
    #[serde(rename = "qinf")]
    pub q_inf: ProjectivePoint5,
    pub q1: ProjectivePoint5,
    pub q2: ProjectivePoint5,
}

impl StemConfiguration {
    pub fn standard() -> StemConfiguration {
        StemConfiguration {
            q0: p0(),
            q_inf: p_infinity(),
            q1: p1(),
            q2: p2(),
        }
    }
}

/// A crooked surface, stored together with the conformal transformation
/// carrying its stem configuration to the standard quadruple.
#[derive(Debug, Clone)]
pub struct CrookedSurface {
    cfg: StemConfiguration,
    to_standard: ConformalMap5,
    from_standard: ConformalMap5,
}

impl CrookedSurface {
    pub fn standard() -> CrookedSurface {
        crooked_surface(&StemConfiguration::standard())
            .expect("the standard quadruple is a stem configuration")
    }

    pub fn configuration(&self) -> &StemConfiguration {
        &self.cfg
    }

    /// The normalizing transformation: it carries the surface onto the
    /// standard crooked surface.
    pub fn to_standard(&self) -> &ConformalMap5 {
        &self.to_standard
    }

    /// Inverse of the normalizing transformation.
    pub fn from_standard(&self) -> &ConformalMap5 {
        &self.from_standard
    }
}

/// Builds the crooked surface determined by a stem configuration.
pub fn crooked_surface(cfg: &StemConfiguration) -> Result<CrookedSurface> {
    let t = crate::ein::normalize_to_standard(&cfg.q0, &cfg.q_inf, &cfg.q1, &cfg.q2)?;
    let from_standard = t.inverse();
    Ok(CrookedSurface {
        cfg: cfg.clone(),
        to_standard: t,
        from_standard,
    })
}

/// Strata of a crooked surface.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum EinStratumTag {
    Vertex,
    Covertex,
    Hingepoint1,
    Hingepoint2,
    Hinge,
    Cohinge,
    StemT1,
    StemT2,
    Wing1,
    Wing2,
    SpineCircle,
    Outside,
}

/// Classifies a point of the Einstein universe against a crooked surface.
///
/// The point is first moved to standard position. Affine points are then
/// classified through the Minkowski crooked plane whose closure the
/// standard surface is; the two timelike stem triangles are separated by
/// the sign of the affine z-coordinate. Ideal points other than the
/// covertex and the hingepoints lie on the surface exactly when they lie
/// on one of the two isotropic lines joining the covertex to a hingepoint.
pub fn cs_membership(cs: &CrookedSurface, p: &ProjectivePoint5) -> EinStratumTag {
    let q = cs
        .to_standard
        .apply_point(p)
        .expect("conformal image of a point is a point");
    if q.approx_eq(&p0(), TOL_PROJECTIVE) {
        return EinStratumTag::Vertex;
    }
    if q.approx_eq(&p_infinity(), TOL_PROJECTIVE) {
        return EinStratumTag::Covertex;
    }
    if q.approx_eq(&p1(), TOL_PROJECTIVE) {
        return EinStratumTag::Hingepoint1;
    }
    if q.approx_eq(&p2(), TOL_PROJECTIVE) {
        return EinStratumTag::Hingepoint2;
    }
    let r = q.rep();
    if r.v.abs() > TOL_PATCH {
        let a = MinkVec3::new(r.x / r.v, r.y / r.v, r.z / r.v);
        return match membership(&CrookedPlaneE3::standard(), &a) {
            StratumTag::Vertex => EinStratumTag::Vertex,
            StratumTag::Hinge1 | StratumTag::Hinge2 => EinStratumTag::Hinge,
            StratumTag::Spine => EinStratumTag::SpineCircle,
            StratumTag::Wing1 => EinStratumTag::Wing1,
            StratumTag::Wing2 => EinStratumTag::Wing2,
            StratumTag::StemInterior => {
                if a.z > 0.0 {
                    EinStratumTag::StemT1
                } else {
                    EinStratumTag::StemT2
                }
            }
            StratumTag::Outside => EinStratumTag::Outside,
        };
    }
    // Ideal point. The ideal part of the surface consists of the two
    // isotropic lines through the covertex and a hingepoint.
    for hp in [p1(), p2()] {
        let phi = photon_through(&p_infinity(), &hp).expect("covertex-hingepoint line");
        if phi.contains(&q, TOL_INCIDENT) {
            return EinStratumTag::Cohinge;
        }
    }
    EinStratumTag::Outside
}

/// The spine circle of a crooked surface: the dual circle of its
/// hingepoint pair. It passes through the vertex and the covertex.
pub fn cs_spine(cs: &CrookedSurface) -> Result<SpacelikeCircle> {
    spacelike_circle_dual(&cs.cfg.q1, &cs.cfg.q2)
}

/// Whether a stem configuration is adapted to the hypersphere inversion:
/// the inversion must swap q0 with q_inf and fix q1 and q2.
pub fn is_adapted_configuration(cfg: &StemConfiguration) -> bool {
    inversion(&cfg.q0).approx_eq(&cfg.q_inf, TOL_PROJECTIVE)
        && inversion(&cfg.q_inf).approx_eq(&cfg.q0, TOL_PROJECTIVE)
        && inversion(&cfg.q1).approx_eq(&cfg.q1, TOL_PROJECTIVE)
        && inversion(&cfg.q2).approx_eq(&cfg.q2, TOL_PROJECTIVE)
}

/// Whether a crooked surface's stem configuration is adapted to the
/// hypersphere inversion.
pub fn is_adapted(cs: &CrookedSurface) -> bool {
    is_adapted_configuration(&cs.cfg)
}

/// How a stem configuration sits relative to the hypersphere inversion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum AdaptednessClass {
    /// The inversion swaps q0 with q_inf and fixes both hingepoints.
    Adapted,
    /// The inversion preserves {q0, q_inf} and {q1, q2} only setwise, so
    /// the surface is invariant without the configuration being adapted.
    InvariantOnly,
    /// The inversion does not preserve the configuration.
    Neither,
}

/// Classifies a stem configuration as adapted, merely inversion-invariant,
/// or neither.
pub fn adaptedness_class(cfg: &StemConfiguration) -> AdaptednessClass {
    if is_adapted_configuration(cfg) {
        return AdaptednessClass::Adapted;
    }
    let i0 = inversion(&cfg.q0);
    let ii = inversion(&cfg.q_inf);
    let i1 = inversion(&cfg.q1);
    let i2 = inversion(&cfg.q2);
    let stem_setwise = (i0.approx_eq(&cfg.q_inf, TOL_PROJECTIVE)
        && ii.approx_eq(&cfg.q0, TOL_PROJECTIVE))
        || (i0.approx_eq(&cfg.q0, TOL_PROJECTIVE) && ii.approx_eq(&cfg.q_inf, TOL_PROJECTIVE));
    let hinge_setwise = (i1.approx_eq(&cfg.q1, TOL_PROJECTIVE)
        && i2.approx_eq(&cfg.q2, TOL_PROJECTIVE))
        || (i1.approx_eq(&cfg.q2, TOL_PROJECTIVE) && i2.approx_eq(&cfg.q1, TOL_PROJECTIVE));
    if stem_setwise && hinge_setwise {
        AdaptednessClass::InvariantOnly
    } else {
        AdaptednessClass::Neither
    }
}

fn negate(m: &SL2) -> SL2 {
    SL2::new(m.mat().scale(-1.0)).expect("negation preserves the determinant")
}

/// The conformal involution [X:Y:Z:U:V] -> [X:-Y:-Z:-U:-V]. It lies in
/// the identity component of the conformal group, fixes the standard
/// quadruple pointwise, fixes the stem, spine circle, hinges, and
/// cohinges of the standard surface, and carries each wing half-plane to
/// the opposite half of the same null plane. A stem configuration
/// therefore determines its crooked surface only up to this flip; the
/// normalizing transformation stored in `CrookedSurface` resolves the
/// choice.
fn wing_flip() -> ConformalMap5 {
    ConformalMap5::from_rows([
        [1.0, 0.0, 0.0, 0.0, 0.0],
        [0.0, -1.0, 0.0, 0.0, 0.0],
        [0.0, 0.0, -1.0, 0.0, 0.0],
        [0.0, 0.0, 0.0, -1.0, 0.0],
        [0.0, 0.0, 0.0, 0.0, -1.0],
    ])
}

/// A tangent direction into the first wing of the crooked plane: it is
/// orthogonal to the first hinge and points to the positively oriented
/// side of the null plane.
fn wing1_direction(n1: &MinkVec3, n2: &MinkVec3) -> MinkVec3 {
    let axis = *n1 + *n2;
    let mut w = n1.cross(n2);
    w = w.scale(w.sup_norm().recip());
    if det3(n1, &axis, &w) < 0.0 {
        w = w.scale(-1.0);
    }
    *n1 + w
}

/// The closure in the Einstein universe of the image under `psi` of the
/// preimage of an anti-de Sitter crooked plane in the double cover. The
/// result is the crooked surface of an adapted stem configuration: the
/// vertex and covertex are the psi-images of the two lifts of the vertex,
/// the hingepoints are where the isotropic lines spanned by the hinges
/// meet the invariant hypersphere, and the wing attachment is pinned by a
/// sample point on the first wing of the plane.
pub fn closure_of_lift(cp: &AdSCrookedPlane) -> Result<CrookedSurface> {
    let v_hat = cp.vertex().g.rep();
    let q0 = psi(&v_hat);
    let q_inf = psi(&negate(&v_hat));
    let (n1, n2) = hinge_dirs(&tangent_cone(cp));
    let mut hingepoints = [p1(), p2()];
    for (slot, n) in hingepoints.iter_mut().zip([n1, n2]) {
        let on_hinge = psi(&(v_hat * exp_sl2(&mink_to_sl2(&n))));
        let phi = photon_through(&q0, &on_hinge)?;
        *slot = photon_meets_fixed_set(&phi)?;
    }
    let cfg = StemConfiguration {
        q0,
        q_inf,
        q1: hingepoints[0],
        q2: hingepoints[1],
    };
    let mut cs = crooked_surface(&cfg)?;
    // The stem configuration leaves the wing attachment two-valued; the
    // closure must contain the psi-image of the plane's own wings.
    let probe = psi(&(v_hat * exp_sl2(&mink_to_sl2(&wing1_direction(&n1, &n2)))));
    if cs_membership(&cs, &probe) != EinStratumTag::Wing1 {
        cs.to_standard = wing_flip().compose(&cs.to_standard);
        cs.from_standard = cs.to_standard.inverse();
    }
    if cs_membership(&cs, &probe) != EinStratumTag::Wing1 {
        return Err(GeomError::VerificationFailed(
            "wing sample is not classified on the first wing",
        ));
    }
    Ok(cs)
}

/// Reconstructs the anti-de Sitter crooked plane whose lift closes up to
/// the given crooked surface with adapted stem configuration.
///
/// The vertex is recovered from q_inf through `psi_inverse`; the spine
/// direction is recovered by moving the configuration to the standard
/// quadruple with a group-model isometry and pulling back the standard
/// spine. The reconstruction is verified by recomputing the closure and
/// comparing memberships on a stratum-covering probe set; a surface with
/// the mirrored wing attachment is rejected, since it is not the closure
/// of the lift of any crooked plane.
pub fn ads_from_adapted(cs: &CrookedSurface) -> Result<AdSCrookedPlane> {
    let cfg = &cs.cfg;
    if !is_adapted_configuration(cfg) {
        return Err(GeomError::NotAdapted);
    }
    let m_inf = psi_inverse(&cfg.q_inf)?;
    let neg_m_inf = negate(&m_inf);
    // (1, -m_inf) carries q_inf to the improper point and q0 to the
    // origin; the hingepoints then land on the ideal circle {U = V = 0}.
    let c1 = ConformalMap5::from_isometry(&SL2::identity(), &neg_m_inf);
    let mut kernels = [[0.0f64; 2]; 2];
    for (slot, q) in kernels.iter_mut().zip([&cfg.q1, &cfg.q2]) {
        let im = c1.apply_point(q)?;
        let r = im.rep();
        if r.u.abs() > 1e-8 || r.v.abs() > 1e-8 {
            return Err(GeomError::VerificationFailed(
                "hingepoint does not reach the ideal circle",
            ));
        }
        let nil = mink_to_sl2(&MinkVec3::new(r.x, r.y, r.z));
        let (ker, _) = rank1_kernel_image(&nil.mat())?;
        *slot = [ker.u, ker.v];
    }
    // The inner conjugation aligning the two kernel lines with the
    // coordinate axes of the plane.
    let mut m = Mat2::new(kernels[0][0], kernels[1][0], kernels[0][1], kernels[1][1]);
    let det = m.det();
    if det.abs() < 1e-12 {
        return Err(GeomError::InvalidConfiguration(
            "hingepoint directions are not independent",
        ));
    }
    if det < 0.0 {
        m.b = -m.b;
        m.d = -m.d;
    }
    let h = SL2::new(m.scale(m.det().sqrt().recip()))?.inverse();
    let g2 = h * neg_m_inf;
    let s = ad(&g2.inverse(), &TangentSL2::diag_spine());
    let plane = AdSCrookedPlane::new(PSL2::new(neg_m_inf), s)?;
    // Verify: the closure of the reconstruction must reproduce the input
    // surface, up to the labelling symmetries of a stem configuration.
    // Swapping vertex with covertex and swapping the two hingepoints are
    // both induced by conformal maps preserving the surface, so the
    // recomputed closure may carry relabelled strata; the relabelling is
    // fixed once by matching configurations and then every probe must
    // agree under it. A surface with mirrored wing attachment fails on
    // the wing probes: it is not the closure of the lift of any plane.
    let back = closure_of_lift(&plane)?;
    let b = back.configuration();
    let tol = 1e-8;
    let vswap = if b.q0.approx_eq(&cfg.q0, tol) && b.q_inf.approx_eq(&cfg.q_inf, tol) {
        false
    } else if b.q0.approx_eq(&cfg.q_inf, tol) && b.q_inf.approx_eq(&cfg.q0, tol) {
        true
    } else {
        return Err(GeomError::VerificationFailed(
            "reconstructed crooked plane does not reproduce the stem",
        ));
    };
    let hswap = if b.q1.approx_eq(&cfg.q1, tol) && b.q2.approx_eq(&cfg.q2, tol) {
        false
    } else if b.q1.approx_eq(&cfg.q2, tol) && b.q2.approx_eq(&cfg.q1, tol) {
        true
    } else {
        return Err(GeomError::VerificationFailed(
            "reconstructed crooked plane does not reproduce the hingepoints",
        ));
    };
    for probe in stratum_probes(cs)? {
        let want = relabel_tag(cs_membership(cs, &probe), vswap, hswap);
        if cs_membership(&back, &probe) != want {
            return Err(GeomError::VerificationFailed(
                "reconstructed crooked plane does not reproduce the surface",
            ));
        }
    }
    Ok(plane)
}

/// Probe points covering every stratum tag of the surface, plus points on
/// the mirrored wing half-planes (which must classify outside), obtained
/// by transporting a fixed list from the standard surface.
pub(crate) fn stratum_probes(cs: &CrookedSurface) -> Result<Vec<ProjectivePoint5>> {
    let e = |x: f64, y: f64, z: f64| embed_mink(&MinkVec3::new(x, y, z));
    let mut raw = vec![
        p0(),
        p_infinity(),
        p1(),
        p2(),
        e(0.0, 1.0, 1.0),
        e(0.0, -2.0, 2.0),
        inversion(&e(0.0, 1.0, 1.0)),
        e(3.0, 2.0, 2.0),
        e(-3.0, 2.0, -2.0),
        e(-3.0, 2.0, 2.0),
        e(3.0, 2.0, -2.0),
        e(0.0, 0.3, 1.0),
        e(0.0, 0.3, -1.0),
        e(2.0, 0.0, 0.0),
        e(-0.7, 0.0, 0.0),
        e(1.0, 1.0, 0.0),
        e(0.0, 2.0, 1.0),
    ];
    raw.push(point(&Vec5::new(0.0, 1.0, -1.0, 3.0, 0.0))?);
    raw.push(point(&Vec5::new(1.0, 0.0, -1.0, 2.0, 0.0))?);
    raw.iter().map(|p| cs.from_standard.apply_point(p)).collect()
}

/// The stratum relabelling induced by swapping vertex with covertex
/// (which exchanges the two stem triangles and hinges with cohinges) and
/// by swapping the two hingepoints (which exchanges the two wings).
fn relabel_tag(tag: EinStratumTag, vswap: bool, hswap: bool) -> EinStratumTag {
    use EinStratumTag::*;
    let mut t = tag;
    if vswap {
        t = match t {
            Vertex => Covertex,
            Covertex => Vertex,
            Hinge => Cohinge,
            Cohinge => Hinge,
            StemT1 => StemT2,
            StemT2 => StemT1,
            other => other,
        };
    }
    if hswap {
        t = match t {
            Hingepoint1 => Hingepoint2,
            Hingepoint2 => Hingepoint1,
            Wing1 => Wing2,
            Wing2 => Wing1,
            other => other,
        };
    }
    t
}
