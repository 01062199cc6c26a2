//! Anti-de Sitter 3-space as PSL(2, R) with its bi-invariant Lorentzian
//! metric, its double cover SL(2, R), isometries, geodesics, point
//! symmetries, dual planes, null planes, and wings.

use crate::constants::{TOL_PROJECTIVE, TOL_STRATUM, TOL_TRACELESS};
use crate::error::{GeomError, Result};
use crate::sl2::{
    classify, det3, exp_sl2, geodesic_connect_dbl, sl2_to_mink, CausalClass, MinkVec3, TangentSL2,
    PSL2, SL2,
};
use serde::{Deserialize, Serialize};

/// A point of anti-de Sitter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdSPoint {
    pub g: PSL2,
}

impl AdSPoint {
    pub fn new(g: PSL2) -> AdSPoint {
        AdSPoint { g }
    }

    pub fn identity() -> AdSPoint {
        AdSPoint { g: PSL2::identity() }
    }

    pub fn approx_eq(&self, other: &AdSPoint, tol: f64) -> bool {
        self.g.approx_eq(&other.g, tol)
    }
}

/// A point of the double cover of anti-de Sitter space.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct HatAdSPoint {
    pub g: SL2,
}

impl HatAdSPoint {
    pub fn new(g: SL2) -> HatAdSPoint {
        HatAdSPoint { g }
    }

    pub fn identity() -> HatAdSPoint {
        HatAdSPoint { g: SL2::identity() }
    }

    /// Projection to anti-de Sitter space.
    pub fn project(&self) -> AdSPoint {
        AdSPoint { g: PSL2::new(self.g) }
    }

    /// The deck transformation (the antipode in the fiber).
    pub fn deck(&self) -> HatAdSPoint {
        HatAdSPoint { g: -self.g }
    }

    pub fn approx_eq(&self, other: &HatAdSPoint, tol: f64) -> bool {
        self.g.approx_eq(&other.g, tol)
    }
}

/// A tangent vector in the left trivialization: the pair (base point,
/// element of the Lie algebra).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AdSTangent {
    pub base: AdSPoint,
    pub xi: TangentSL2,
}

/// An element (g1, g2) of the identity component of the isometry group,
/// acting by x -> g1 x g2^{-1}. Stored as lifts; the action descends.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct IsometryG0 {
    pub g1: SL2,
    pub g2: SL2,
}

impl IsometryG0 {
    pub fn new(g1: SL2, g2: SL2) -> IsometryG0 {
        IsometryG0 { g1, g2 }
    }

    pub fn identity() -> IsometryG0 {
        IsometryG0 { g1: SL2::identity(), g2: SL2::identity() }
    }

    pub fn inverse(&self) -> IsometryG0 {
        IsometryG0 { g1: self.g1.inverse(), g2: self.g2.inverse() }
    }

    pub fn compose(&self, other: &IsometryG0) -> IsometryG0 {
        IsometryG0 { g1: self.g1 * other.g1, g2: self.g2 * other.g2 }
    }
}

/// The isometric action on anti-de Sitter space.
pub fn act(iso: &IsometryG0, x: &AdSPoint) -> AdSPoint {
    let m = PSL2::new(iso.g1) * x.g * PSL2::new(iso.g2.inverse());
    AdSPoint { g: m }
}

/// The isometric action on the double cover.
pub fn act_hat(iso: &IsometryG0, x: &HatAdSPoint) -> HatAdSPoint {
    HatAdSPoint { g: iso.g1 * x.g * iso.g2.inverse() }
}

/// The geodesic exponential in the left trivialization: x exp(xi).
pub fn exp_at(x: &AdSPoint, xi: &TangentSL2) -> AdSPoint {
    AdSPoint { g: x.g * PSL2::new(exp_sl2(xi)) }
}

/// The geodesic exponential on the double cover.
pub fn exp_at_hat(x: &HatAdSPoint, xi: &TangentSL2) -> HatAdSPoint {
    HatAdSPoint { g: x.g * exp_sl2(xi) }
}

/// All left-trivialized logarithms of y at x delivered by the principal
/// geodesic search: candidates from both lifts of x^{-1} y.
pub fn log_at(x: &AdSPoint, y: &AdSPoint) -> Vec<TangentSL2> {
    let m = x.g.inverse() * y.g;
    let mut out = Vec::new();
    for lift in m.lifts() {
        if let Some(xi) = geodesic_connect_dbl(&lift) {
            out.push(xi);
        }
    }
    out
}

/// The principal logarithm on the double cover (single lift).
pub fn log_at_hat(x: &HatAdSPoint, y: &HatAdSPoint) -> Option<TangentSL2> {
    geodesic_connect_dbl(&(x.g.inverse() * y.g))
}

/// The point symmetry about g: x -> g x^{-1} g. An isometry reversing
/// geodesics through g; not of the form (g1, g2), so exposed directly.
pub fn symmetry(g: &AdSPoint, x: &AdSPoint) -> AdSPoint {
    AdSPoint { g: g.g * x.g.inverse() * g.g }
}

/// The point symmetry on the double cover.
pub fn symmetry_hat(g: &HatAdSPoint, x: &HatAdSPoint) -> HatAdSPoint {
    HatAdSPoint { g: g.g * x.g.inverse() * g.g }
}

/// The transvection translating distance t along the unit-speed geodesic
/// exp(s xi) through the identity: (e^{t xi / 2}, e^{-t xi / 2}).
pub fn transvection(xi: &TangentSL2, t: f64) -> IsometryG0 {
    let half = xi.scale(0.5 * t);
    IsometryG0 { g1: exp_sl2(&half), g2: exp_sl2(&half.scale(-1.0)) }
}

/// Membership in the dual plane g* (the set at timelike distance pi/2
/// from g): characterized by a traceless relative position.
pub fn dual_plane_contains(g: &AdSPoint, x: &AdSPoint) -> bool {
    let m = (g.g.inverse() * x.g).rep().mat();
    m.trace().abs() <= TOL_TRACELESS.max(1e-10 * m.sup_norm())
}

/// Checks that exp_at(g, xi) lands on g* for a timelike xi; errors when
/// xi is not timelike. True exactly when the timelike radius is an odd
/// multiple of pi/2.
pub fn dual_plane_radius_check(g: &AdSPoint, xi: &TangentSL2) -> Result<bool> {
    if classify(xi) != CausalClass::Timelike {
        return Err(GeomError::NotTimelike(sl2_to_mink(xi).norm2()));
    }
    Ok(dual_plane_contains(g, &exp_at(g, xi)))
}

/// The null plane P(p, n): the image under Exp_p of the B-orthogonal
/// complement of a null direction n.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct NullPlane {
    pub p: AdSPoint,
    pub n: MinkVec3,
}

impl NullPlane {
    pub fn new(p: AdSPoint, n: MinkVec3) -> Result<NullPlane> {
        if classify(&crate::sl2::mink_to_sl2(&n)) != CausalClass::Lightlike {
            return Err(GeomError::NotLightlike(n.norm2()));
        }
        Ok(NullPlane { p, n })
    }

    pub fn contains(&self, x: &AdSPoint) -> bool {
        log_at(&self.p, x)
            .iter()
            .any(|xi| sl2_to_mink(xi).dot(&self.n).abs() <= TOL_STRATUM)
            || x.approx_eq(&self.p, TOL_PROJECTIVE)
    }
}

/// Future-normalize a null vector so its z-coordinate is positive.
pub fn future_null(n: &MinkVec3) -> Result<MinkVec3> {
    if crate::sl2::classify(&crate::sl2::mink_to_sl2(n)) != CausalClass::Lightlike {
        return Err(GeomError::NotLightlike(n.norm2()));
    }
    if n.z == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    Ok(if n.z > 0.0 { *n } else { n.scale(-1.0) })
}

/// The wing W(p, n): the open half of the null plane selected by the
/// orientation condition det3(n_future, u, xi) > 0 for a future-pointing
/// timelike reference u off the plane (default e_z, never tangent to a
/// null plane).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Wing {
    pub p: AdSPoint,
    pub n: MinkVec3,
    pub u: MinkVec3,
}

impl Wing {
    pub fn new(p: AdSPoint, n: MinkVec3) -> Result<Wing> {
        Wing::with_reference(p, n, MinkVec3::new(0.0, 0.0, 1.0))
    }

    pub fn with_reference(p: AdSPoint, n: MinkVec3, u: MinkVec3) -> Result<Wing> {
        let n = future_null(&n)?;
        if u.norm2() >= 0.0 || u.z <= 0.0 {
            return Err(GeomError::NotTimelike(u.norm2()));
        }
        if u.dot(&n).abs() <= TOL_STRATUM {
            return Err(GeomError::InvalidConfiguration(
                "reference vector is tangent to the null plane",
            ));
        }
        Ok(Wing { p, n, u })
    }

    pub fn contains(&self, x: &AdSPoint) -> bool {
        log_at(&self.p, x).iter().any(|xi| {
            let v = sl2_to_mink(xi);
            v.dot(&self.n).abs() <= TOL_STRATUM && det3(&self.n, &self.u, &v) > TOL_STRATUM
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::sl2::{mink_to_sl2, Mat2};
    use std::f64::consts::PI;

    const TOL: f64 = 1e-12;

    fn tv(a: f64, b: f64, c: f64) -> TangentSL2 {
        TangentSL2::new(Mat2::new(a, b, c, -a)).unwrap()
    }

    #[test]
    fn act_is_a_left_action() {
        let iso1 = IsometryG0::new(
            exp_sl2(&tv(0.3, 0.1, -0.2)),
            exp_sl2(&tv(-0.5, 0.7, 0.2)),
        );
        let iso2 = IsometryG0::new(
            exp_sl2(&tv(0.0, 1.2, 0.4)),
            exp_sl2(&tv(0.9, -0.3, 0.6)),
        );
        let x = AdSPoint::new(PSL2::from(Mat2::new(2.0, 1.0, 1.0, 1.0)));
        let lhs = act(&iso1, &act(&iso2, &x));
        let rhs = act(&iso1.compose(&iso2), &x);
        assert!(lhs.approx_eq(&rhs, 1e-12));
        let und = act(&iso1.inverse(), &act(&iso1, &x));
        assert!(und.approx_eq(&x, 1e-12));
    }

    #[test]
    fn exp_log_round_trip() {
        let x = AdSPoint::new(PSL2::from(Mat2::new(1.0, 0.5, 0.0, 1.0)));
        for xi in [tv(0.4, 0.2, -0.3), tv(0.0, 0.9, -0.9), tv(0.1, 0.3, -1.2)] {
            let y = exp_at(&x, &xi);
            let logs = log_at(&x, &y);
            assert!(
                logs.iter().any(|l| (*l - xi).sup_norm() < 1e-9),
                "xi {:?} not recovered among {:?}",
                xi,
                logs
            );
        }
    }

    #[test]
    fn symmetry_is_an_involution_fixing_g() {
        let g = AdSPoint::new(PSL2::from(Mat2::new(1.3, 0.4, 0.2, 0.9)));
        let x = AdSPoint::new(PSL2::from(Mat2::new(2.0, -1.0, 0.5, 0.3)));
        assert!(symmetry(&g, &g).approx_eq(&g, 1e-12));
        let twice = symmetry(&g, &symmetry(&g, &x));
        assert!(twice.approx_eq(&x, 1e-12));
        // Reverses geodesics: iota_g(exp_g(xi)) = exp_g(-xi).
        let xi = tv(0.3, -0.2, 0.5);
        let fwd = symmetry(&g, &exp_at(&g, &xi));
        let back = exp_at(&g, &xi.scale(-1.0));
        assert!(fwd.approx_eq(&back, 1e-12));
    }

    #[test]
    fn symmetry_fixed_set_is_g_union_dual_plane() {
        let g = AdSPoint::identity();
        // Points of g* are fixed.
        for tau in [tv(0.0, 1.0, -1.0).scale(0.5), tv(0.3, 0.4, -0.8)] {
            let v = sl2_to_mink(&tau);
            let unit = tau.scale(1.0 / (-v.norm2()).sqrt());
            let x = exp_at(&g, &unit.scale(PI / 2.0));
            assert!(dual_plane_contains(&g, &x));
            assert!(symmetry(&g, &x).approx_eq(&x, 1e-9));
        }
        // A generic point is not fixed.
        let y = exp_at(&g, &tv(0.4, 0.1, 0.2));
        assert!(!symmetry(&g, &y).approx_eq(&y, 1e-6));
    }

    #[test]
    fn transvection_translates_the_geodesic() {
        let xi = tv(1.0, 0.0, 0.0); // unit spacelike
        let iso = transvection(&xi, 0.7);
        // Moves exp(s xi) to exp((s + 0.7) xi).
        let x = exp_at(&AdSPoint::identity(), &xi.scale(0.4));
        let y = act(&iso, &x);
        let expected = exp_at(&AdSPoint::identity(), &xi.scale(1.1));
        assert!(y.approx_eq(&expected, 1e-12));
        // Upper-triangular closed form on the identity: diag(e^{t/2}, e^{-t/2})^2.
        let origin = act(&iso, &AdSPoint::identity());
        let want = exp_at(&AdSPoint::identity(), &xi.scale(0.7));
        assert!(origin.approx_eq(&want, 1e-12));
    }

    #[test]
    fn dual_plane_golden() {
        let e = AdSPoint::identity();
        // J(t) = [[0, -e^t], [e^{-t}, 0]] lies on e*.
        for t in [-1.0f64, 0.0, 0.8] {
            let j = AdSPoint::new(PSL2::from(Mat2::new(0.0, -t.exp(), (-t).exp(), 0.0)));
            assert!(dual_plane_contains(&e, &j));
        }
        assert!(!dual_plane_contains(&e, &exp_at(&e, &tv(0.5, 0.0, 0.0))));
        // Radius check: pi/2 timelike radius lands on the dual plane.
        let tau = mink_to_sl2(&MinkVec3::new(0.0, 0.0, 1.0)).scale(PI / 2.0);
        assert!(dual_plane_radius_check(&e, &tau).unwrap());
        let half = mink_to_sl2(&MinkVec3::new(0.0, 0.0, 1.0)).scale(PI / 4.0);
        assert!(!dual_plane_radius_check(&e, &half).unwrap());
        assert!(matches!(
            dual_plane_radius_check(&e, &tv(1.0, 0.0, 0.0)),
            Err(GeomError::NotTimelike(_))
        ));
    }

    #[test]
    fn timelike_geodesics_close_up() {
        let e = AdSPoint::identity();
        let tau = mink_to_sl2(&MinkVec3::new(0.0, 0.0, 1.0));
        // Period pi in AdS (projective), 2 pi in the double cover.
        let p = exp_at(&e, &tau.scale(PI));
        assert!(p.approx_eq(&e, 1e-9));
        let hat = exp_at_hat(&HatAdSPoint::identity(), &tau.scale(PI));
        assert!(hat.approx_eq(&HatAdSPoint::new(-SL2::identity()), 1e-9));
        let full = exp_at_hat(&HatAdSPoint::identity(), &tau.scale(2.0 * PI));
        assert!(full.approx_eq(&HatAdSPoint::identity(), 1e-9));
    }

    #[test]
    fn null_plane_standard_example() {
        // P(identity, n1) with n1 = (0,1,1): contains the unipotent uppers
        // and the spine, not the lowers.
        let plane = NullPlane::new(AdSPoint::identity(), MinkVec3::new(0.0, 1.0, 1.0)).unwrap();
        let upper = AdSPoint::new(PSL2::from(Mat2::new(1.0, 1.0, 0.0, 1.0)));
        assert!(plane.contains(&upper));
        let spine_pt = AdSPoint::new(PSL2::from(Mat2::new(1.5, 0.0, 0.0, 1.0 / 1.5)));
        assert!(plane.contains(&spine_pt));
        let lower = AdSPoint::new(PSL2::from(Mat2::new(1.0, 0.0, 1.0, 1.0)));
        assert!(!plane.contains(&lower));
        assert!(plane.contains(&AdSPoint::identity()));
        assert!(NullPlane::new(AdSPoint::identity(), MinkVec3::new(1.0, 0.0, 0.0)).is_err());
    }

    #[test]
    fn wing_standard_example() {
        // W(identity, n1): upper-triangular with a > 1 (x > 0 side).
        let wing = Wing::new(AdSPoint::identity(), MinkVec3::new(0.0, 1.0, 1.0)).unwrap();
        let pos = exp_at(
            &AdSPoint::identity(),
            &(tv(0.8, 0.0, 0.0) + mink_to_sl2(&MinkVec3::new(0.0, 1.0, 1.0)).scale(0.3)),
        );
        assert!(wing.contains(&pos));
        let neg = exp_at(
            &AdSPoint::identity(),
            &(tv(-0.8, 0.0, 0.0) + mink_to_sl2(&MinkVec3::new(0.0, 1.0, 1.0)).scale(0.3)),
        );
        assert!(!wing.contains(&neg));
        // The hinge itself is not in the open wing.
        let hinge_pt = exp_at(
            &AdSPoint::identity(),
            &mink_to_sl2(&MinkVec3::new(0.0, 1.0, 1.0)).scale(0.5),
        );
        assert!(!wing.contains(&hinge_pt));
        // Reference vector must be future timelike and off the plane.
        assert!(Wing::with_reference(
            AdSPoint::identity(),
            MinkVec3::new(0.0, 1.0, 1.0),
            MinkVec3::new(1.0, 0.0, 0.0)
        )
        .is_err());
    }

    #[test]
    fn act_hat_commutes_with_projection_and_deck() {
        let iso = IsometryG0::new(
            exp_sl2(&tv(0.3, 0.1, -0.2)),
            exp_sl2(&tv(-0.5, 0.7, 0.2)),
        );
        let xhat = HatAdSPoint::new(exp_sl2(&tv(0.2, -0.4, 0.9)));
        let a = act_hat(&iso, &xhat).project();
        let b = act(&iso, &xhat.project());
        assert!(a.approx_eq(&b, 1e-12));
        let c = act_hat(&iso, &xhat.deck());
        assert!(c.approx_eq(&act_hat(&iso, &xhat).deck(), TOL));
    }

    #[test]
    fn hat_log_round_trip() {
        let x = HatAdSPoint::new(exp_sl2(&tv(0.1, 0.2, -0.3)));
        let xi = tv(0.5, -0.2, 0.4);
        let y = exp_at_hat(&x, &xi);
        let l = log_at_hat(&x, &y).unwrap();
        assert!((l - xi).sup_norm() < 1e-9);
        // The deck image is not reachable by the principal search when the
        // relative holonomy is hyperbolic-like.
        assert!(log_at_hat(&x, &y.deck()).is_none());
    }
}
