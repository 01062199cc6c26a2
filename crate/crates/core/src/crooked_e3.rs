//! Crooked planes in Minkowski 3-space: construction from a vertex and a
//! unit-spacelike spine direction, the hinge directions, the stratified
//! membership test, and the ideal points of the closure in Ein^3.

use crate::constants::{TOL_NULL, TOL_STRATUM};
use crate::ein::{point, ProjectivePoint5, Vec5};
use crate::error::{GeomError, Result};
use crate::sl2::{det3, MinkVec3};
use serde::{Deserialize, Serialize};

/// The strata of a crooked plane (and `Outside`), in priority order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum StratumTag {
    Vertex,
    Hinge1,
    Hinge2,
    Spine,
    Wing1,
    Wing2,
    StemInterior,
    Outside,
}

/// A crooked plane in Minkowski space, determined by its vertex and the
/// direction of its spine (unit spacelike).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawCrookedPlane", into = "RawCrookedPlane")]
pub struct CrookedPlaneE3 {
    vertex: MinkVec3,
    spine_dir: MinkVec3,
}

#[derive(Serialize, Deserialize)]
struct RawCrookedPlane {
    vertex: [f64; 3],
    spine_dir: [f64; 3],
}

impl TryFrom<RawCrookedPlane> for CrookedPlaneE3 {
    type Error = GeomError;
    fn try_from(raw: RawCrookedPlane) -> Result<CrookedPlaneE3> {
        CrookedPlaneE3::new(MinkVec3::from(raw.vertex), MinkVec3::from(raw.spine_dir))
    }
}

impl From<CrookedPlaneE3> for RawCrookedPlane {
    fn from(cp: CrookedPlaneE3) -> RawCrookedPlane {
        RawCrookedPlane { vertex: cp.vertex.into(), spine_dir: cp.spine_dir.into() }
    }
}

impl CrookedPlaneE3 {
    /// A crooked plane with the given vertex and unit spacelike spine
    /// direction.
    pub fn new(vertex: MinkVec3, spine_dir: MinkVec3) -> Result<CrookedPlaneE3> {
        let q = spine_dir.norm2();
        if (q - 1.0).abs() > 1e-9 {
            return Err(GeomError::NotUnitSpacelike(q));
        }
        Ok(CrookedPlaneE3 { vertex, spine_dir })
    }

    /// The standard crooked plane: vertex at the origin, spine along e_x.
    pub fn standard() -> CrookedPlaneE3 {
        CrookedPlaneE3 { vertex: MinkVec3::new(0.0, 0.0, 0.0), spine_dir: MinkVec3::new(1.0, 0.0, 0.0) }
    }

    pub fn vertex(&self) -> MinkVec3 {
        self.vertex
    }

    pub fn spine_dir(&self) -> MinkVec3 {
        self.spine_dir
    }
}

/// The two hinge directions of a crooked plane: the null lines of the
/// plane orthogonal to the spine direction, future-normalized to z = 1
/// and canonically ordered (descending lexicographically by x, then y).
pub fn hinge_dirs(cp: &CrookedPlaneE3) -> (MinkVec3, MinkVec3) {
    let s = cp.spine_dir;
    let r2 = s.x * s.x + s.y * s.y;
    debug_assert!(r2 > 0.0, "unit spacelike s has sx^2 + sy^2 = 1 + sz^2 > 0");
    let plus = MinkVec3::new((s.z * s.x - s.y) / r2, (s.z * s.y + s.x) / r2, 1.0);
    let minus = MinkVec3::new((s.z * s.x + s.y) / r2, (s.z * s.y - s.x) / r2, 1.0);
    // Descending lexicographic order with a tolerance on the tie so the
    // labels are stable under rounding noise.
    let tie = 1e-9 * plus.sup_norm().max(minus.sup_norm());
    let plus_first = if (plus.x - minus.x).abs() > tie {
        plus.x > minus.x
    } else {
        plus.y >= minus.y
    };
    if plus_first {
        (plus, minus)
    } else {
        (minus, plus)
    }
}

/// The future-pointing unit timelike direction in the stem plane,
/// symmetric in the hinges.
fn stem_axis(n1: &MinkVec3, n2: &MinkVec3) -> MinkVec3 {
    let u = *n1 + *n2;
    let q = u.norm2();
    debug_assert!(q < 0.0);
    u.scale(1.0 / (-q).sqrt())
}

/// The point vertex + t * spine_dir.
pub fn spine_point(cp: &CrookedPlaneE3, t: f64) -> MinkVec3 {
    cp.vertex + cp.spine_dir.scale(t)
}

/// Stratified membership. Intrinsic characterizations, evaluated in
/// priority order Vertex > Hinge > Spine > Wing > StemInterior:
/// the stem is the set of causal vectors of the plane spanned by the
/// hinges; each wing is the open half of a hinge's null plane selected
/// by det3(n, u, .) > 0 with u future timelike off that plane.
pub fn membership(cp: &CrookedPlaneE3, q: &MinkVec3) -> StratumTag {
    let d = *q - cp.vertex;
    let sc = d.sup_norm().max(1.0);
    if d.sup_norm() <= TOL_STRATUM * sc {
        return StratumTag::Vertex;
    }
    let (n1, n2) = hinge_dirs(cp);
    let axis = stem_axis(&n1, &n2);
    for (n, tag) in [(n1, StratumTag::Hinge1), (n2, StratumTag::Hinge2)] {
        if d.cross(&n).sup_norm() <= TOL_STRATUM * sc {
            return tag;
        }
    }
    let s = cp.spine_dir;
    let alpha = d.dot(&s);
    let d_perp = d - s.scale(alpha);
    if d_perp.sup_norm() <= TOL_STRATUM * sc {
        return StratumTag::Spine;
    }
    for (n, tag) in [(n1, StratumTag::Wing1), (n2, StratumTag::Wing2)] {
        if d.dot(&n).abs() <= TOL_STRATUM * sc && det3(&n, &axis, &d) > TOL_STRATUM * sc {
            return tag;
        }
    }
    if alpha.abs() <= TOL_STRATUM * sc && d.norm2() < -TOL_STRATUM * sc * sc {
        return StratumTag::StemInterior;
    }
    StratumTag::Outside
}

/// The ideal points added by taking the closure in Ein^3: the endpoints
/// of the two hinges and the improper point (the limit of every
/// non-null ray of the plane).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct IdealPoints {
    pub hinge1: ProjectivePoint5,
    pub hinge2: ProjectivePoint5,
    pub improper: ProjectivePoint5,
}

/// The ideal endpoint of the null ray p + t n (n null): dominant in t.
pub fn null_ray_ideal_point(p: &MinkVec3, n: &MinkVec3) -> Result<ProjectivePoint5> {
    if n.norm2().abs() > TOL_NULL {
        return Err(GeomError::NotLightlike(n.norm2()));
    }
    point(&Vec5::new(n.x, n.y, n.z, 2.0 * p.dot(n), 0.0))
}

pub fn closure_ideal_points(cp: &CrookedPlaneE3) -> IdealPoints {
    let (n1, n2) = hinge_dirs(cp);
    let v = cp.vertex;
    IdealPoints {
        hinge1: null_ray_ideal_point(&v, &n1).expect("hinge directions are null"),
        hinge2: null_ray_ideal_point(&v, &n2).expect("hinge directions are null"),
        improper: crate::ein::p_infinity(),
    }
}
