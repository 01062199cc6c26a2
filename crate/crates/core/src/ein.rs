//! The inner-product space R^{3,2}, its projectivized null cone (the
//! Einstein universe Ein^3), incidence, photons, spacelike circles,
//! Einstein hyperspheres, and conformal normalizing maps.
//!
//! Coordinates are (X, Y, Z, U, V) with quadratic form
//! Q = X^2 + Y^2 - Z^2 - UV.

use crate::constants::{
    TOL_INCIDENT, TOL_NULL, TOL_ORTHOGONAL, TOL_PATCH, TOL_PROJECTIVE, TOL_SIGNATURE,
    TOL_SUBSPACE,
};
use crate::error::{GeomError, Result};
use crate::sl2::{Mat2, SL2};
use nalgebra::{DMatrix, Matrix5, SMatrix};
use serde::{Deserialize, Serialize};

/// A vector of R^{3,2}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[f64; 5]", into = "[f64; 5]")]
pub struct Vec5 {
    pub x: f64,
    pub y: f64,
    pub z: f64,
    pub u: f64,
    pub v: f64,
}

impl Vec5 {
    pub const fn new(x: f64, y: f64, z: f64, u: f64, v: f64) -> Self {
        Vec5 { x, y, z, u, v }
    }

    pub const fn zero() -> Self {
        Vec5::new(0.0, 0.0, 0.0, 0.0, 0.0)
    }

    pub fn as_array(&self) -> [f64; 5] {
        [self.x, self.y, self.z, self.u, self.v]
    }

    pub fn sup_norm(&self) -> f64 {
        self.as_array().iter().fold(0.0f64, |m, c| m.max(c.abs()))
    }

    pub fn scale(&self, t: f64) -> Vec5 {
        Vec5::new(t * self.x, t * self.y, t * self.z, t * self.u, t * self.v)
    }

    pub fn add(&self, o: &Vec5) -> Vec5 {
        Vec5::new(
            self.x + o.x,
            self.y + o.y,
            self.z + o.z,
            self.u + o.u,
            self.v + o.v,
        )
    }

    pub fn sub(&self, o: &Vec5) -> Vec5 {
        self.add(&o.scale(-1.0))
    }
}

impl From<[f64; 5]> for Vec5 {
    fn from(a: [f64; 5]) -> Self {
        Vec5::new(a[0], a[1], a[2], a[3], a[4])
    }
}

impl From<Vec5> for [f64; 5] {
    fn from(v: Vec5) -> Self {
        v.as_array()
    }
}

/// The quadratic form Q(v) = X^2 + Y^2 - Z^2 - UV.
pub fn q_form(v: &Vec5) -> f64 {
    v.x * v.x + v.y * v.y - v.z * v.z - v.u * v.v
}

/// The symmetric bilinear form polarizing Q; note the cross term
/// -(U_v V_w + U_w V_v)/2.
pub fn b_form(v: &Vec5, w: &Vec5) -> f64 {
    v.x * w.x + v.y * w.y - v.z * w.z - 0.5 * (v.u * w.v + w.u * v.v)
}

/// The Gram matrix of Q in the (X, Y, Z, U, V) basis.
pub const GRAM: [[f64; 5]; 5] = [
    [1.0, 0.0, 0.0, 0.0, 0.0],
    [0.0, 1.0, 0.0, 0.0, 0.0],
    [0.0, 0.0, -1.0, 0.0, 0.0],
    [0.0, 0.0, 0.0, 0.0, -0.5],
    [0.0, 0.0, 0.0, -0.5, 0.0],
];

/// Entries below this on a sup-norm-1 representative count as zero when
/// fixing the canonical projective sign.
const SIGN_EPS: f64 = 1e-12;

fn canonicalize_rep(v: &Vec5) -> Result<Vec5> {
    let n = v.sup_norm();
    if n == 0.0 {
        return Err(GeomError::ZeroVector);
    }
    let mut r = v.scale(1.0 / n);
    for c in r.as_array() {
        if c.abs() > SIGN_EPS {
            if c < 0.0 {
                r = r.scale(-1.0);
            }
            break;
        }
    }
    Ok(r)
}

/// A point of Ein^3: a null line of R^{3,2}, stored as the canonical
/// representative with sup norm 1 and positive first non-negligible
/// coordinate.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec5", into = "Vec5")]
pub struct ProjectivePoint5 {
    rep: Vec5,
}

impl ProjectivePoint5 {
    pub fn rep(&self) -> Vec5 {
        self.rep
    }

    /// Sign-robust projective distance between canonical representatives.
    pub fn dist(&self, other: &ProjectivePoint5) -> f64 {
        let d = self.rep.sub(&other.rep).sup_norm();
        let s = self.rep.add(&other.rep).sup_norm();
        d.min(s)
    }

    pub fn approx_eq(&self, other: &ProjectivePoint5, tol: f64) -> bool {
        self.dist(other) <= tol
    }
}

impl TryFrom<Vec5> for ProjectivePoint5 {
    type Error = GeomError;
    fn try_from(v: Vec5) -> Result<ProjectivePoint5> {
        point(&v)
    }
}

impl From<ProjectivePoint5> for Vec5 {
    fn from(p: ProjectivePoint5) -> Vec5 {
        p.rep
    }
}

/// Projectivize a null vector; errors if v is zero or off the null cone.
pub fn point(v: &Vec5) -> Result<ProjectivePoint5> {
    let rep = canonicalize_rep(v)?;
    let q = q_form(&rep);
    if q.abs() > TOL_NULL {
        return Err(GeomError::NotNull(q.abs()));
    }
    Ok(ProjectivePoint5 { rep })
}

/// The five golden points of the standard stem configuration and patch.
pub fn p0() -> ProjectivePoint5 {
    ProjectivePoint5 { rep: Vec5::new(0.0, 0.0, 0.0, 0.0, 1.0) }
}

pub fn p_infinity() -> ProjectivePoint5 {
    ProjectivePoint5 { rep: Vec5::new(0.0, 0.0, 0.0, 1.0, 0.0) }
}

pub fn p1() -> ProjectivePoint5 {
    ProjectivePoint5 { rep: Vec5::new(0.0, 1.0, 1.0, 0.0, 0.0) }
}

pub fn p2() -> ProjectivePoint5 {
    ProjectivePoint5 { rep: Vec5::new(0.0, 1.0, -1.0, 0.0, 0.0) }
}

/// Incidence: p and q lie on a common photon iff B(p, q) = 0.
pub fn incident(p: &ProjectivePoint5, q: &ProjectivePoint5) -> bool {
    b_form(&p.rep, &q.rep).abs() <= TOL_INCIDENT
}

/// A photon: the projectivization of an isotropic 2-plane.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PhotonLine {
    pub basis: [Vec5; 2],
}

impl PhotonLine {
    /// The point of parameters (a, b), i.e. [a b1 + b b2].
    pub fn at(&self, a: f64, b: f64) -> Result<ProjectivePoint5> {
        point(&self.basis[0].scale(a).add(&self.basis[1].scale(b)))
    }

    pub fn contains(&self, p: &ProjectivePoint5, tol: f64) -> bool {
        span_residual(&[self.basis[0], self.basis[1]], &p.rep) <= tol
    }
}

/// The photon through two distinct incident points.
pub fn photon_through(p: &ProjectivePoint5, q: &ProjectivePoint5) -> Result<PhotonLine> {
    if p.approx_eq(q, TOL_PROJECTIVE) {
        return Err(GeomError::SamePoint);
    }
    let b = b_form(&p.rep, &q.rep);
    if b.abs() > TOL_INCIDENT {
        return Err(GeomError::NotIncident(b.abs()));
    }
    Ok(PhotonLine { basis: [p.rep, q.rep] })
}

/// The unique point of a photon lying on the hyperplane U = V.
///
/// Solving a (u1 - v1) + b (u2 - v2) = 0 for the span coefficients; the
/// resulting representative has U - V = 0 exactly in floating point.
pub fn photon_meets_fixed_set(phi: &PhotonLine) -> Result<ProjectivePoint5> {
    let d1 = phi.basis[0].u - phi.basis[0].v;
    let d2 = phi.basis[1].u - phi.basis[1].v;
    let scale = phi.basis[0].sup_norm().max(phi.basis[1].sup_norm());
    if d1.abs() <= TOL_PATCH * scale && d2.abs() <= TOL_PATCH * scale {
        return Err(GeomError::PhotonInsideHypersurface);
    }
    let r = phi.basis[0].scale(-d2).add(&phi.basis[1].scale(d1));
    point(&r)
}

/// Euclidean residual of the least-squares projection of v onto the span
/// of the given vectors, relative to |v|_sup (0 when v = 0).
fn span_residual(basis: &[Vec5], v: &Vec5) -> f64 {
    let n = v.sup_norm();
    if n == 0.0 {
        return 0.0;
    }
    let a = DMatrix::from_fn(5, basis.len(), |r, c| basis[c].as_array()[r]);
    let b = nalgebra::DVector::from_row_slice(&v.as_array());
    let svd = a.clone().svd(true, true);
    let sol = svd.solve(&b, 1e-13).expect("svd solve");
    let residual = (&a * sol - b).amax();
    residual / n
}

/// Signature (positives, negatives, zeros) of the Gram matrix of a basis,
/// with eigenvalues below `TOL_SIGNATURE` * scale counted as zero.
fn gram_signature(basis: &[Vec5]) -> (usize, usize, usize) {
    let k = basis.len();
    let gram = DMatrix::from_fn(k, k, |i, j| b_form(&basis[i], &basis[j]));
    let scale = gram.amax().max(1e-300);
    let eig = gram.symmetric_eigenvalues();
    let mut sig = (0usize, 0usize, 0usize);
    for e in eig.iter() {
        if e.abs() <= TOL_SIGNATURE * scale {
            sig.2 += 1;
        } else if *e > 0.0 {
            sig.0 += 1;
        } else {
            sig.1 += 1;
        }
    }
    sig
}

/// B-orthogonal complement of the span of `vs` (assumed independent),
/// returned as 5 - vs.len() spanning vectors via an SVD kernel.
///
/// The coefficient matrix is padded with zero rows to 5x5 so the thin
/// SVD still exposes the full right-singular basis.
fn orthogonal_complement(vs: &[Vec5]) -> Vec<Vec5> {
    let rows = vs.len();
    // Row i = G * vs[i], so the kernel is the B-orthogonal complement.
    let a = DMatrix::from_fn(5, 5, |r, c| {
        if r >= rows {
            return 0.0;
        }
        let v = vs[r].as_array();
        match c {
            0 => v[0],
            1 => v[1],
            2 => -v[2],
            3 => -0.5 * v[4],
            _ => -0.5 * v[3],
        }
    });
    let svd = a.svd(false, true);
    let v_t = svd.v_t.expect("svd v_t");
    let mut out = Vec::new();
    // Kernel vectors = rows of V^T whose singular value is (near) zero.
    let sv = &svd.singular_values;
    for i in 0..5 {
        let s = if i < sv.len() { sv[i] } else { 0.0 };
        if s <= 1e-10 * sv[0].max(1e-300) {
            let row = v_t.row(i);
            out.push(Vec5::new(row[0], row[1], row[2], row[3], row[4]));
        }
    }
    out
}

/// A spacelike circle: the projectivized null directions of a
/// signature-(2,1) subspace F.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SpacelikeCircle {
    pub basis: [Vec5; 3],
}

impl SpacelikeCircle {
    pub fn new(basis: [Vec5; 3]) -> Result<SpacelikeCircle> {
        let sig = gram_signature(&basis);
        if sig != (2, 1, 0) {
            return Err(GeomError::WrongSignature {
                expected: "(2,1)",
                found: format!("({},{},{})", sig.0, sig.1, sig.2),
            });
        }
        Ok(SpacelikeCircle { basis })
    }
}

/// The spacelike circle dual to a non-incident pair: F = span(p, q)^perp.
pub fn spacelike_circle_dual(
    p: &ProjectivePoint5,
    q: &ProjectivePoint5,
) -> Result<SpacelikeCircle> {
    if incident(p, q) {
        return Err(GeomError::IncidentPair);
    }
    let comp = orthogonal_complement(&[p.rep, q.rep]);
    if comp.len() != 3 {
        return Err(GeomError::DegenerateSpan);
    }
    SpacelikeCircle::new([comp[0], comp[1], comp[2]])
}

/// Membership of a point on a spacelike circle: in span(F) within
/// tolerance (the point is already null by construction).
pub fn circle_contains(c: &SpacelikeCircle, p: &ProjectivePoint5) -> bool {
    span_residual(&c.basis, &p.rep) <= TOL_SUBSPACE
}

/// An Einstein hypersphere: projectivized null cone of a signature-(2,2)
/// 4-dimensional subspace.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct EinsteinHypersphere {
    pub basis: [Vec5; 4],
}

impl EinsteinHypersphere {
    pub fn contains(&self, p: &ProjectivePoint5) -> bool {
        span_residual(&self.basis, &p.rep) <= TOL_SUBSPACE
    }
}

/// The unique Einstein hypersphere through a spanning quadruple.
pub fn hypersphere_through(
    q0: &ProjectivePoint5,
    q_inf: &ProjectivePoint5,
    q1: &ProjectivePoint5,
    q2: &ProjectivePoint5,
) -> Result<EinsteinHypersphere> {
    let basis = [q0.rep, q_inf.rep, q1.rep, q2.rep];
    let a = DMatrix::from_fn(5, 4, |r, c| basis[c].as_array()[r]);
    let svd = a.svd(false, false);
    let sv = svd.singular_values;
    if sv[sv.len() - 1] <= 1e-9 * sv[0].max(1e-300) {
        return Err(GeomError::DegenerateSpan);
    }
    let sig = gram_signature(&basis);
    if sig != (2, 2, 0) {
        return Err(GeomError::WrongSignature {
            expected: "(2,2)",
            found: format!("({},{},{})", sig.0, sig.1, sig.2),
        });
    }
    Ok(EinsteinHypersphere { basis })
}

/// A linear map of R^{3,2} preserving B (an automorphism of Ein^3),
/// stored as a row-major 5x5 matrix.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(from = "[[f64; 5]; 5]", into = "[[f64; 5]; 5]")]
pub struct ConformalMap5 {
    m: [[f64; 5]; 5],
}

impl From<[[f64; 5]; 5]> for ConformalMap5 {
    fn from(m: [[f64; 5]; 5]) -> Self {
        ConformalMap5 { m }
    }
}

impl From<ConformalMap5> for [[f64; 5]; 5] {
    fn from(t: ConformalMap5) -> Self {
        t.m
    }
}

impl ConformalMap5 {
    pub fn identity() -> ConformalMap5 {
        let mut m = [[0.0; 5]; 5];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1.0;
        }
        ConformalMap5 { m }
    }

    pub(crate) fn from_rows(m: [[f64; 5]; 5]) -> ConformalMap5 {
        ConformalMap5 { m }
    }

    pub fn matrix(&self) -> [[f64; 5]; 5] {
        self.m
    }

    /// The conformal inversion I_S swapping the U and V coordinates.
    pub fn inversion() -> ConformalMap5 {
        let mut m = [[0.0; 5]; 5];
        m[0][0] = 1.0;
        m[1][1] = 1.0;
        m[2][2] = 1.0;
        m[3][4] = 1.0;
        m[4][3] = 1.0;
        ConformalMap5 { m }
    }

    /// The conformal extension of the isometry x -> g1 x g2^{-1} of
    /// anti-de Sitter space, through the linear model
    /// P = [[2X+U+V, 2(Y+Z)], [2(Y-Z), -2X+U+V]], delta = V - U, on
    /// which the action is P -> g1 P g2^{-1} with delta fixed.
    pub fn from_isometry(g1: &SL2, g2: &SL2) -> ConformalMap5 {
        let g2_inv = g2.inverse();
        let mut m = [[0.0; 5]; 5];
        for col in 0..5 {
            let mut e = [0.0; 5];
            e[col] = 1.0;
            let v = Vec5::new(e[0], e[1], e[2], e[3], e[4]);
            let p = Mat2::new(
                2.0 * v.x + v.u + v.v,
                2.0 * (v.y + v.z),
                2.0 * (v.y - v.z),
                -2.0 * v.x + v.u + v.v,
            );
            let delta = v.v - v.u;
            let p2 = g1.mat() * p * g2_inv.mat();
            let sum = 0.5 * (p2.a + p2.d);
            let img = [
                0.25 * (p2.a - p2.d),
                0.25 * (p2.b + p2.c),
                0.25 * (p2.b - p2.c),
                0.5 * (sum - delta),
                0.5 * (sum + delta),
            ];
            for (row, val) in img.iter().enumerate() {
                m[row][col] = *val;
            }
        }
        ConformalMap5 { m }
    }

    /// The Minkowski homothety x -> e^t x, extended conformally:
    /// diag(1, 1, 1, e^t, e^{-t}).
    pub fn dilation(t: f64) -> ConformalMap5 {
        let mut m = ConformalMap5::identity().m;
        m[3][3] = t.exp();
        m[4][4] = (-t).exp();
        ConformalMap5 { m }
    }

    /// The Minkowski translation x -> x + w, extended conformally.
    pub fn translation(w: &crate::sl2::MinkVec3) -> ConformalMap5 {
        let mut m = ConformalMap5::identity().m;
        // X' = X + wx V, etc.; U' = U + 2 <w, (X,Y,Z)> + Q_E(w) V.
        m[0][4] = w.x;
        m[1][4] = w.y;
        m[2][4] = w.z;
        m[3][0] = 2.0 * w.x;
        m[3][1] = 2.0 * w.y;
        m[3][2] = -2.0 * w.z;
        m[3][4] = w.norm2();
        ConformalMap5 { m }
    }

    pub fn apply(&self, v: &Vec5) -> Vec5 {
        let a = v.as_array();
        let mut out = [0.0; 5];
        for (i, row) in self.m.iter().enumerate() {
            out[i] = row[0] * a[0] + row[1] * a[1] + row[2] * a[2] + row[3] * a[3] + row[4] * a[4];
        }
        Vec5::new(out[0], out[1], out[2], out[3], out[4])
    }

    pub fn apply_point(&self, p: &ProjectivePoint5) -> Result<ProjectivePoint5> {
        point(&self.apply(&p.rep))
    }

    pub fn compose(&self, other: &ConformalMap5) -> ConformalMap5 {
        let mut m = [[0.0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                let mut acc = 0.0;
                for (k, other_row) in other.m.iter().enumerate() {
                    acc += self.m[i][k] * other_row[j];
                }
                m[i][j] = acc;
            }
        }
        ConformalMap5 { m }
    }

    /// Inverse via the form: T^{-1} = G^{-1} T^T G.
    pub fn inverse(&self) -> ConformalMap5 {
        let g = Matrix5::from_fn(|i, j| GRAM[i][j]);
        let t = Matrix5::from_fn(|i, j| self.m[i][j]);
        let g_inv = g.try_inverse().expect("G invertible");
        let inv = g_inv * t.transpose() * g;
        let mut m = [[0.0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                m[i][j] = inv[(i, j)];
            }
        }
        ConformalMap5 { m }
    }

    pub fn det(&self) -> f64 {
        let t: SMatrix<f64, 5, 5> = SMatrix::from_fn(|i, j| self.m[i][j]);
        t.determinant()
    }

    /// |T^T G T - G|_sup, the orthogonality residual.
    pub fn orthogonality_residual(&self) -> f64 {
        let g = Matrix5::from_fn(|i, j| GRAM[i][j]);
        let t = Matrix5::from_fn(|i, j| self.m[i][j]);
        (t.transpose() * g * t - g).amax()
    }

    /// True when this map preserves the orientation of negative-definite
    /// 2-planes (together with det = +1 this characterizes the identity
    /// component of the automorphism group).
    pub fn preserves_time_orientation(&self) -> bool {
        let f1 = Vec5::new(0.0, 0.0, 1.0, 0.0, 0.0);
        let f2 = Vec5::new(0.0, 0.0, 0.0, 1.0, 1.0);
        let tf1 = self.apply(&f1);
        let tf2 = self.apply(&f2);
        let c11 = -b_form(&tf1, &f1);
        let c12 = -b_form(&tf1, &f2);
        let c21 = -b_form(&tf2, &f1);
        let c22 = -b_form(&tf2, &f2);
        c11 * c22 - c12 * c21 > 0.0
    }
}

/// A standard-position stem configuration: scaled representatives of
/// (q0, q_inf, q1, q2) with the Gram matrix of (p0, p_inf, p1, p2).
struct ScaledQuadruple {
    reps: [Vec5; 4],
}

fn scaled_quadruple(
    q0: &ProjectivePoint5,
    q_inf: &ProjectivePoint5,
    q1: &ProjectivePoint5,
    q2: &ProjectivePoint5,
) -> Result<ScaledQuadruple> {
    let beta = b_form(&q0.rep, &q_inf.rep);
    if beta.abs() <= TOL_INCIDENT {
        return Err(GeomError::InvalidConfiguration(
            "q0 and q_inf must be non-incident",
        ));
    }
    if q1.approx_eq(q2, TOL_PROJECTIVE) {
        return Err(GeomError::InvalidConfiguration("q1 = q2"));
    }
    for qi in [q1, q2] {
        for (base, _name) in [(q0, "q0"), (q_inf, "q_inf")] {
            if b_form(&qi.rep, &base.rep).abs() > TOL_INCIDENT {
                return Err(GeomError::InvalidConfiguration(
                    "hingepoints must be incident to q0 and q_inf",
                ));
            }
        }
    }
    let gamma = b_form(&q1.rep, &q2.rep);
    if gamma.abs() <= TOL_INCIDENT {
        return Err(GeomError::InvalidConfiguration(
            "hingepoints must be non-incident to each other",
        ));
    }
    // Scale q_inf so B(q0, q_inf) = -1/2 and q2 so B(q1, q2) = 2.
    let r0 = q0.rep;
    let r_inf = q_inf.rep.scale(-0.5 / beta);
    let s1 = (2.0 / gamma.abs()).sqrt();
    let s2 = if gamma > 0.0 { s1 } else { -s1 };
    let r1 = q1.rep.scale(s1);
    let r2 = q2.rep.scale(s2);
    Ok(ScaledQuadruple { reps: [r0, r_inf, r1, r2] })
}

/// The element of the identity component of Aut(Ein^3) carrying a stem
/// configuration to the standard quadruple (p0, p_inf, p1, p2).
pub fn normalize_to_standard(
    q0: &ProjectivePoint5,
    q_inf: &ProjectivePoint5,
    q1: &ProjectivePoint5,
    q2: &ProjectivePoint5,
) -> Result<ConformalMap5> {
    let mut quad = scaled_quadruple(q0, q_inf, q1, q2)?.reps;
    let comp = orthogonal_complement(&quad);
    if comp.len() != 1 {
        return Err(GeomError::InvalidConfiguration(
            "configuration does not span a 4-dimensional subspace",
        ));
    }
    let mut w = comp[0];
    let qw = q_form(&w);
    if qw <= TOL_SIGNATURE {
        return Err(GeomError::WrongSignature {
            expected: "positive complement",
            found: format!("Q(w) = {qw}"),
        });
    }
    w = w.scale(1.0 / qw.sqrt());

    // The standard counterparts, complement first: (e_X, p0~, pinf~, p1~, p2~).
    let standard = [
        Vec5::new(1.0, 0.0, 0.0, 0.0, 0.0),
        Vec5::new(0.0, 0.0, 0.0, 0.0, 1.0),
        Vec5::new(0.0, 0.0, 0.0, 1.0, 0.0),
        Vec5::new(0.0, 1.0, 1.0, 0.0, 0.0),
        Vec5::new(0.0, 1.0, -1.0, 0.0, 0.0),
    ];

    let build = |w: &Vec5, quad: &[Vec5; 4]| -> Result<ConformalMap5> {
        let cols = [*w, quad[0], quad[1], quad[2], quad[3]];
        let mq = Matrix5::from_fn(|i, j| cols[j].as_array()[i]);
        let mp = Matrix5::from_fn(|i, j| standard[j].as_array()[i]);
        let mq_inv = mq
            .try_inverse()
            .ok_or(GeomError::InvalidConfiguration("singular frame matrix"))?;
        let t = mp * mq_inv;
        let mut m = [[0.0; 5]; 5];
        for i in 0..5 {
            for j in 0..5 {
                m[i][j] = t[(i, j)];
            }
        }
        Ok(ConformalMap5 { m })
    };

    let mut t = build(&w, &quad)?;
    if t.det() < 0.0 {
        w = w.scale(-1.0);
        t = build(&w, &quad)?;
    }
    if !t.preserves_time_orientation() {
        // Negating the (q0, q_inf) pair of representatives fixes all four
        // projective points and the determinant but flips the time class.
        quad[0] = quad[0].scale(-1.0);
        quad[1] = quad[1].scale(-1.0);
        t = build(&w, &quad)?;
    }
    debug_assert!(t.det() > 0.0);
    debug_assert!(t.preserves_time_orientation());
    if t.orthogonality_residual() > TOL_ORTHOGONAL {
        return Err(GeomError::InvalidConfiguration(
            "normalizing map failed the orthogonality residual",
        ));
    }
    Ok(t)
}
