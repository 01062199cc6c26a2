//! Error type shared by every geometric constructor and operation.

use thiserror::Error;

/// Failure modes of geometric constructions.
///
/// Every fallible operation in this crate reports one of these variants;
/// the variant names follow the geometric precondition that was violated
/// rather than the call site that noticed it.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum GeomError {
    /// An all-zero vector was passed where a direction was required.
    #[error("zero vector has no projective class")]
    ZeroVector,
    /// A vector expected on the null cone of R^{3,2} has |Q| above tolerance.
    #[error("vector is not null: Q residual {0:e}")]
    NotNull(f64),
    /// Two projective points expected incident (B = 0) are not.
    #[error("points are not incident: |B| = {0:e}")]
    NotIncident(f64),
    /// Two projectively equal points were passed where a genuine pair was needed.
    #[error("points coincide projectively")]
    SamePoint,
    /// A photon lies entirely inside the hypersurface it was to be cut with.
    #[error("photon is contained in the fixed hypersurface")]
    PhotonInsideHypersurface,
    /// A pair of incident points spans a degenerate plane, not a (1,1)-plane.
    #[error("incident pair spans a degenerate plane")]
    IncidentPair,
    /// Four points expected to span a 4-dimensional subspace do not.
    #[error("span is degenerate (rank < 4)")]
    DegenerateSpan,
    /// A subspace has the wrong metric signature for the requested object.
    #[error("wrong signature: expected {expected}, found {found}")]
    WrongSignature { expected: &'static str, found: String },
    /// A stem configuration violates its incidence or distinctness invariants.
    #[error("invalid stem configuration: {0}")]
    InvalidConfiguration(&'static str),
    /// A 2x2 matrix expected in SL(2,R) has determinant away from 1.
    #[error("matrix is not unimodular: |det - 1| = {0:e}")]
    NotUnimodular(f64),
    /// A matrix expected traceless (in sl(2,R)) has trace above tolerance.
    #[error("matrix is not traceless: |tr| = {0:e}")]
    NotTraceless(f64),
    /// A point expected in the upper halfplane has y <= 0.
    #[error("point is not in the upper halfplane")]
    NotUpperHalfplane,
    /// A matrix expected of rank exactly one is zero or invertible.
    #[error("matrix does not have rank one")]
    NotRankOne,
    /// Two tangent vectors expected independent are linearly dependent.
    #[error("tangent vectors are linearly dependent")]
    DependentPair,
    /// Series evaluation was requested outside its guaranteed range.
    #[error("norm {0} exceeds the supported range for series evaluation")]
    NormTooLarge(f64),
    /// A vector expected unit spacelike is not.
    #[error("vector is not unit spacelike: <s,s> = {0}")]
    NotUnitSpacelike(f64),
    /// A vector expected spacelike is not.
    #[error("vector is not spacelike: <v,v> = {0}")]
    NotSpacelike(f64),
    /// A vector expected timelike is not.
    #[error("vector is not timelike: <v,v> = {0}")]
    NotTimelike(f64),
    /// A vector expected null (lightlike) is not.
    #[error("vector is not lightlike: <v,v> = {0}")]
    NotLightlike(f64),
    /// A projective point lies outside the affine Minkowski patch {V != 0}.
    #[error("point lies outside the Minkowski patch (V ~ 0)")]
    NotInMinkowskiPatch,
    /// A point of Ein^3 lies on the fixed Einstein hypersphere {U = V}.
    #[error("point lies on the fixed Einstein 2-sphere (U ~ V)")]
    OnEinstein2,
    /// A requested parameter puts the image outside the affine patch.
    #[error("parameter {0} maps outside the affine patch")]
    NotInPatch(f64),
    /// A geodesic expected inside a totally geodesic plane leaves it.
    #[error("geodesic does not lie in the plane: residual {0:e}")]
    GeodesicNotInPlane(f64),
    /// A stem configuration is not adapted to the inversion.
    #[error("configuration is not adapted to the inversion")]
    NotAdapted,
    /// A conformal map failed its orthogonality validation.
    #[error("matrix does not preserve the form: residual {0:e}")]
    NotOrthogonal(f64),
    /// Round-trip verification of a reconstruction failed.
    #[error("reconstruction verification failed: {0}")]
    VerificationFailed(&'static str),
    /// A verification run was requested with invalid parameters.
    #[error("invalid run configuration: {0}")]
    InvalidRunConfig(String),
}

pub type Result<T> = std::result::Result<T, GeomError>;
