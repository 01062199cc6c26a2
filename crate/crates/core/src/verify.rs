//! Seeded, sharded verification suites.
//!
//! Every module's sampled invariants are packaged as named checks grouped
//! into suites. A run is deterministic in (seed, samples): work is split
//! over a fixed number of shards, each shard draws from its own counter
//! based stream derived from (seed, check name, shard index), and shard
//! results are merged in index order, so reports are byte-identical
//! across repeated runs and across worker-pool sizes.

use std::collections::BTreeMap;
use std::str::FromStr;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::ads::{
    act, dual_plane_contains, dual_plane_radius_check, exp_at, exp_at_hat, log_at, symmetry,
    transvection, AdSPoint, HatAdSPoint, IsometryG0,
};
use crate::constants::{TOL_INCIDENT, TOL_NULL, TOL_ORTHOGONAL};
use crate::crooked_ads::{
    lift, membership_ads, membership_ads_trace, membership_hat, tangent_cone, transform_plane,
    AdSCrookedPlane, AdSStratumTag,
};
use crate::crooked_e3::{hinge_dirs, membership, CrookedPlaneE3, StratumTag};
use crate::ein::{
    b_form, incident, normalize_to_standard, p0, p1, p2, p_infinity, photon_through, point,
    q_form, spacelike_circle_dual, ConformalMap5, ProjectivePoint5, Vec5,
};
use crate::embed::{
    ads_from_adapted, closure_of_lift, cs_membership, embed_mink, fixed_set_contains, inversion,
    is_adapted, mink_from_ein, psi, psi_inverse, stratum_probes, CrookedSurface, EinStratumTag,
};
use crate::error::{GeomError, Result};
use crate::sl2::{
    ad, det3, exp_series_oracle, exp_sl2, geodesic_connect_dbl, lie_triple_check, lorentz_dot,
    mink_to_sl2, sl2_to_mink, Mat2, MinkVec3, TangentSL2, PSL2, SL2,
};

/// Number of shards a check's samples are split into. Fixed so that the
/// derived random streams, and therefore the reports, are independent of
/// the worker count.
const SHARDS: usize = 64;

/// Residual recorded for samples that fail with a non-finite value or a
/// structural error; finite so reports stay plain JSON.
const HARD_FAILURE: f64 = 1e300;

/// A named verification suite.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Suite {
    Core,
    Sl2,
    Ads,
    Crooked,
    Einstein,
    MainTheorem,
    All,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::Core => "core",
            Suite::Sl2 => "sl2",
            Suite::Ads => "ads",
            Suite::Crooked => "crooked",
            Suite::Einstein => "einstein",
            Suite::MainTheorem => "main-theorem",
            Suite::All => "all",
        }
    }
}

impl FromStr for Suite {
    type Err = GeomError;

    fn from_str(s: &str) -> Result<Suite> {
        match s {
            "core" => Ok(Suite::Core),
            "sl2" => Ok(Suite::Sl2),
            "ads" => Ok(Suite::Ads),
            "crooked" => Ok(Suite::Crooked),
            "einstein" => Ok(Suite::Einstein),
            "main-theorem" => Ok(Suite::MainTheorem),
            "all" => Ok(Suite::All),
            other => Err(GeomError::InvalidRunConfig(format!(
                "unknown suite '{other}'"
            ))),
        }
    }
}

/// Configuration of a verification run.
///
/// `samples` scales every check relative to its nominal sample count
/// (10000 keeps the nominal counts); `tolerances` overrides the
/// tolerance of individual checks by name.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RunConfig {
    pub seed: u64,
    pub samples: usize,
    #[serde(default)]
    pub tolerances: BTreeMap<String, f64>,
}

impl RunConfig {
    pub fn new(seed: u64) -> RunConfig {
        RunConfig { seed, samples: 10_000, tolerances: BTreeMap::new() }
    }

    fn validate(&self) -> Result<()> {
        if self.samples == 0 {
            return Err(GeomError::InvalidRunConfig(
                "samples must be at least 1".to_string(),
            ));
        }
        for (name, tol) in &self.tolerances {
            if !(*tol > 0.0) {
                return Err(GeomError::InvalidRunConfig(format!(
                    "tolerance override '{name}' must be positive"
                )));
            }
        }
        Ok(())
    }
}

impl Default for RunConfig {
    fn default() -> RunConfig {
        RunConfig::new(0)
    }
}

/// Outcome of one named check.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheckReport {
    pub check: String,
    pub samples: usize,
    pub failures: usize,
    pub max_residual: f64,
    pub tolerance: f64,
    pub pass: bool,
}

/// Outcome of a whole suite run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub samples: usize,
    pub checks: Vec<CheckReport>,
    pub pass: bool,
}

/// A worker pool sized by CROOKED_NUM_THREADS (or all available cores).
fn worker_pool() -> rayon::ThreadPool {
    let threads = std::env::var("CROOKED_NUM_THREADS")
        .ok()
        .and_then(|s| s.parse::<usize>().ok())
        .filter(|&n| n >= 1)
        .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
    rayon::ThreadPoolBuilder::new()
        .num_threads(threads)
        .build()
        .expect("worker pool")
}

fn fnv1a(s: &str) -> u64 {
    let mut h = 0xcbf2_9ce4_8422_2325u64;
    for b in s.bytes() {
        h ^= b as u64;
        h = h.wrapping_mul(0x0000_0100_0000_01b3);
    }
    h
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9e37_79b9_7f4a_7c15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

/// The random stream owned by one shard of one check.
fn shard_rng(seed: u64, check: &str, shard: usize) -> ChaCha8Rng {
    let mut state = seed ^ fnv1a(check) ^ ((shard as u64) << 32);
    let mut key = [0u8; 32];
    for chunk in key.chunks_mut(8) {
        chunk.copy_from_slice(&splitmix64(&mut state).to_le_bytes());
    }
    ChaCha8Rng::from_seed(key)
}

/// Nominal count scaled by the run's baseline (10000 = nominal).
fn scaled(nominal: usize, samples: usize) -> usize {
    (((nominal as u128) * (samples as u128)) / 10_000).max(1) as usize
}

struct CheckDef {
    name: &'static str,
    suites: &'static [Suite],
    /// Sample (or instance) count at the baseline of 10000.
    nominal: usize,
    /// Default tolerance on the per-sample residual.
    tolerance: f64,
    /// Draws one sample (or one instance) and returns its residual.
    /// Arguments: random stream, effective tolerance, run baseline (used
    /// to scale the inner sample counts of instance-based checks).
    sample: fn(&mut ChaCha8Rng, f64, usize) -> f64,
}

fn run_check(def: &CheckDef, cfg: &RunConfig) -> CheckReport {
    let total = scaled(def.nominal, cfg.samples);
    let tol = cfg.tolerances.get(def.name).copied().unwrap_or(def.tolerance);
    let base = total / SHARDS;
    let rem = total % SHARDS;
    let outcomes: Vec<(usize, f64)> = (0..SHARDS)
        .into_par_iter()
        .map(|shard| {
            let n = base + usize::from(shard < rem);
            let mut rng = shard_rng(cfg.seed, def.name, shard);
            let mut failures = 0usize;
            let mut max_residual = 0.0f64;
            for _ in 0..n {
                let mut r = (def.sample)(&mut rng, tol, cfg.samples);
                if !r.is_finite() {
                    r = HARD_FAILURE;
                }
                if r > tol {
                    failures += 1;
                }
                if r > max_residual {
                    max_residual = r;
                }
            }
            (failures, max_residual)
        })
        .collect();
    let mut failures = 0usize;
    let mut max_residual = 0.0f64;
    for (f, m) in outcomes {
        failures += f;
        if m > max_residual {
            max_residual = m;
        }
    }
    CheckReport {
        check: def.name.to_string(),
        samples: total,
        failures,
        max_residual,
        tolerance: tol,
        pass: failures == 0,
    }
}

/// Runs a suite and returns its report. `Suite::All` runs every check.
pub fn run_suite(suite: Suite, cfg: &RunConfig) -> Result<SuiteReport> {
    cfg.validate()?;
    let pool = worker_pool();
    let defs = check_table();
    let selected: Vec<&CheckDef> = defs
        .iter()
        .filter(|d| suite == Suite::All || d.suites.contains(&suite))
        .collect();
    let checks: Vec<CheckReport> =
        pool.install(|| selected.iter().map(|d| run_check(d, cfg)).collect());
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport {
        suite: suite.name().to_string(),
        seed: cfg.seed,
        samples: cfg.samples,
        checks,
        pass,
    })
}

// ---------------------------------------------------------------------
// Random generators
// ---------------------------------------------------------------------

/// Random SL(2,R) element: normal entries renormalized to determinant 1.
///
/// Conditioning is bounded (determinant floor before renormalizing, sup
/// norm cap after) so that chains of adjoint actions built from these
/// elements keep quadratic forms clear of their cancellation floor;
/// without the cap, compound conjugations reach entry sizes where an
/// absolute 1e-9 unit check is below the rounding noise of the form.
fn rand_sl2(rng: &mut ChaCha8Rng) -> SL2 {
    let normal = Normal::new(0.0, 1.5).expect("normal");
    loop {
        let m = Mat2::new(
            normal.sample(rng),
            normal.sample(rng),
            normal.sample(rng),
            normal.sample(rng),
        );
        let d = m.det();
        if d < 0.2 {
            continue;
        }
        let m = m.scale(d.sqrt().recip());
        if m.sup_norm() > 3.0 {
            continue;
        }
        if let Ok(g) = SL2::new(m) {
            return g;
        }
    }
}

/// Random tangent vector with identification coordinates N(0, sigma).
fn rand_tangent(rng: &mut ChaCha8Rng, sigma: f64) -> TangentSL2 {
    let normal = Normal::new(0.0, sigma).expect("normal");
    mink_to_sl2(&MinkVec3::new(
        normal.sample(rng),
        normal.sample(rng),
        normal.sample(rng),
    ))
}

fn rand_unit_timelike(rng: &mut ChaCha8Rng) -> TangentSL2 {
    loop {
        let xi = rand_tangent(rng, 1.0);
        let q = lorentz_dot(&xi, &xi);
        if q < -1e-3 {
            return xi.scale((-q).sqrt().recip());
        }
    }
}

fn rand_mink(rng: &mut ChaCha8Rng, sigma: f64) -> MinkVec3 {
    let normal = Normal::new(0.0, sigma).expect("normal");
    MinkVec3::new(normal.sample(rng), normal.sample(rng), normal.sample(rng))
}

/// Uniform random point of the Einstein universe, sampled on S^2 x S^1
/// in split coordinates and mapped back to [X:Y:Z:U:V].
fn rand_ein_point(rng: &mut ChaCha8Rng) -> ProjectivePoint5 {
    let normal = Normal::new(0.0, 1.0).expect("normal");
    loop {
        let a: f64 = normal.sample(rng);
        let b: f64 = normal.sample(rng);
        let c: f64 = normal.sample(rng);
        let d: f64 = normal.sample(rng);
        let e: f64 = normal.sample(rng);
        let s = (a * a + b * b + c * c).sqrt();
        let t = (d * d + e * e).sqrt();
        if s < 1e-3 || t < 1e-3 {
            continue;
        }
        let (x, y, q) = (a / s, b / s, c / s);
        let (z, p) = (d / t, e / t);
        // U = p + q and V = p - q turn X^2+Y^2-Z^2-UV into the split
        // form, so the point lies on the quadric by construction.
        if let Ok(pt) = point(&Vec5::new(x, y, z, p + q, p - q)) {
            return pt;
        }
    }
}

/// Random conformal transformation from the identity component: an
/// isometry of the group model composed with a translation and a
/// dilation of the affine chart.
fn rand_conformal(rng: &mut ChaCha8Rng) -> ConformalMap5 {
    let g1 = rand_sl2(rng);
    let g2 = rand_sl2(rng);
    let w = rand_mink(rng, 1.0);
    let t: f64 = rng.gen_range(-1.0..1.0);
    ConformalMap5::from_isometry(&g1, &g2)
        .compose(&ConformalMap5::translation(&w))
        .compose(&ConformalMap5::dilation(t))
}

fn rand_iso(rng: &mut ChaCha8Rng) -> IsometryG0 {
    IsometryG0::new(rand_sl2(rng), rand_sl2(rng))
}

/// A random unit spacelike spine direction: the adjoint image of the
/// standard one, renormalized against rounding drift.
fn rand_spine(rng: &mut ChaCha8Rng) -> TangentSL2 {
    let s = ad(&rand_sl2(rng), &TangentSL2::diag_spine());
    let q = lorentz_dot(&s, &s);
    s.scale(q.sqrt().recip())
}

/// Random anti-de Sitter crooked plane.
fn rand_plane(rng: &mut ChaCha8Rng) -> AdSCrookedPlane {
    AdSCrookedPlane::new(PSL2::new(rand_sl2(rng)), rand_spine(rng))
        .expect("renormalized spine is unit spacelike")
}

/// Random crooked plane in Minkowski space.
fn rand_e3_plane(rng: &mut ChaCha8Rng) -> CrookedPlaneE3 {
    CrookedPlaneE3::new(rand_mink(rng, 2.0), sl2_to_mink(&rand_spine(rng)))
        .expect("renormalized spine is unit spacelike")
}

fn sign_range(rng: &mut ChaCha8Rng, lo: f64, hi: f64) -> f64 {
    let t = rng.gen_range(lo..hi);
    if rng.gen::<bool>() {
        t
    } else {
        -t
    }
}

/// Constructs a direction inside the requested stratum of a tangent
/// cone. `Outside` is not constructible here.
fn sample_in_stratum(
    tc: &CrookedPlaneE3,
    rng: &mut ChaCha8Rng,
    tag: StratumTag,
) -> Option<MinkVec3> {
    let (n1, n2) = hinge_dirs(tc);
    let s = tc.spine_dir();
    let axis = {
        let u = n1 + n2;
        u.scale((-u.norm2()).sqrt().recip())
    };
    let wing = |n: &MinkVec3, rng: &mut ChaCha8Rng| {
        // The wing of hinge n is the open half of span(n, s) selected by
        // det3(n, axis, .) > 0; the sign of the spine coefficient picks
        // the half. Both coefficients stay clear of zero so the sample
        // cannot collapse onto the hinge or spine lines.
        let c = det3(n, &axis, &s);
        let a = sign_range(rng, 0.05, 1.5);
        let b = rng.gen_range(0.05..1.5) * c.signum();
        n.scale(a) + s.scale(b)
    };
    match tag {
        StratumTag::Vertex => Some(MinkVec3::new(0.0, 0.0, 0.0)),
        StratumTag::Hinge1 => Some(n1.scale(sign_range(rng, 0.05, 2.0))),
        StratumTag::Hinge2 => Some(n2.scale(sign_range(rng, 0.05, 2.0))),
        StratumTag::Spine => Some(s.scale(sign_range(rng, 0.05, 2.0))),
        StratumTag::Wing1 => Some(wing(&n1, rng)),
        StratumTag::Wing2 => Some(wing(&n2, rng)),
        StratumTag::StemInterior => {
            let a = rng.gen_range(0.05..1.0);
            let b = rng.gen_range(0.05..1.0);
            let u = n1.scale(a) + n2.scale(b);
            let unit = u.scale((-u.norm2()).sqrt().recip());
            // Stay clear of the vertex and of the closing length pi of
            // the timelike geodesics downstream.
            Some(unit.scale(sign_range(rng, 0.1, 2.6)))
        }
        StratumTag::Outside => None,
    }
}

/// The strata a cone sample can be drawn from.
const CONE_STRATA: [StratumTag; 7] = [
    StratumTag::Vertex,
    StratumTag::Hinge1,
    StratumTag::Hinge2,
    StratumTag::Spine,
    StratumTag::Wing1,
    StratumTag::Wing2,
    StratumTag::StemInterior,
];

/// A direction drawn from a random non-vertex stratum, labeled by the
/// membership oracle of the cone itself.
fn cone_sample(tc: &CrookedPlaneE3, rng: &mut ChaCha8Rng) -> (MinkVec3, StratumTag) {
    let tag = CONE_STRATA[rng.gen_range(1..CONE_STRATA.len())];
    let v = sample_in_stratum(tc, rng, tag).expect("cone strata are constructible");
    (v, membership(tc, &v))
}

// ---------------------------------------------------------------------
// Core suite: projective geometry of the null cone
// ---------------------------------------------------------------------

fn rand_vec5(rng: &mut ChaCha8Rng, sigma: f64) -> Vec5 {
    let normal = Normal::new(0.0, sigma).expect("normal");
    Vec5::new(
        normal.sample(rng),
        normal.sample(rng),
        normal.sample(rng),
        normal.sample(rng),
        normal.sample(rng),
    )
}

fn check_polarization(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let v = rand_vec5(rng, 1.5);
    let w = rand_vec5(rng, 1.5);
    let a: f64 = rng.gen_range(-2.0..2.0);
    let b: f64 = rng.gen_range(-2.0..2.0);
    let lhs = q_form(&v.scale(a).add(&w.scale(b)));
    let rhs = a * a * q_form(&v) + 2.0 * a * b * b_form(&v, &w) + b * b * q_form(&w);
    let scale = (a.abs() * v.sup_norm() + b.abs() * w.sup_norm()).powi(2);
    (lhs - rhs).abs() / scale.max(1.0)
}

fn check_projective_scaling(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let v = rand_ein_point(rng).rep();
    let lambda = sign_range(rng, 0.01, 100.0);
    match (point(&v), point(&v.scale(lambda))) {
        (Ok(p), Ok(q)) => p.dist(&q),
        _ => HARD_FAILURE,
    }
}

fn check_photon_incidence(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // A generic incident pair: the image of (p0, an affine null point)
    // under a random conformal map.
    let t = rand_conformal(rng);
    let xy = rand_mink(rng, 1.5);
    let null = MinkVec3::new(xy.x, xy.y, (xy.x * xy.x + xy.y * xy.y).sqrt());
    if null.sup_norm() < 1e-3 {
        return 0.0;
    }
    let p = match t.apply_point(&embed_mink(&null)) {
        Ok(p) => p,
        Err(_) => return HARD_FAILURE,
    };
    let q = match t.apply_point(&p0()) {
        Ok(q) => q,
        Err(_) => return HARD_FAILURE,
    };
    let phi = match photon_through(&p, &q) {
        Ok(phi) => phi,
        Err(_) => return HARD_FAILURE,
    };
    if !phi.contains(&p, TOL_INCIDENT) || !phi.contains(&q, TOL_INCIDENT) {
        return HARD_FAILURE;
    }
    // The whole line lies on the quadric.
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let a: f64 = rng.gen_range(-1.0..1.0);
        let b: f64 = rng.gen_range(-1.0..1.0);
        let c = p.rep().scale(a).add(&q.rep().scale(b));
        let sup = c.sup_norm();
        if sup < 1e-6 {
            continue;
        }
        worst = worst.max(q_form(&c).abs() / (sup * sup));
    }
    worst
}

fn check_dual_circle(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let t = rand_conformal(rng);
    let (p, q) = match (t.apply_point(&p0()), t.apply_point(&p_infinity())) {
        (Ok(p), Ok(q)) => (p, q),
        _ => return HARD_FAILURE,
    };
    let circle = match spacelike_circle_dual(&p, &q) {
        Ok(c) => c,
        Err(_) => return HARD_FAILURE,
    };
    // Null directions in the span of the circle are orthogonal to both
    // poles.
    let mut worst = 0.0f64;
    for _ in 0..4 {
        let mut found = None;
        for _ in 0..32 {
            let comb = |c: &[f64; 3]| {
                circle.basis[0]
                    .scale(c[0])
                    .add(&circle.basis[1].scale(c[1]))
                    .add(&circle.basis[2].scale(c[2]))
            };
            let u = comb(&[
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]);
            let w = comb(&[
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
                rng.gen_range(-1.0..1.0),
            ]);
            let (qa, qb, qc) = (q_form(&w), 2.0 * b_form(&u, &w), q_form(&u));
            if qa.abs() < 1e-9 {
                continue;
            }
            let disc = qb * qb - 4.0 * qa * qc;
            if disc <= 0.0 {
                continue;
            }
            let root = (-qb + disc.sqrt()) / (2.0 * qa);
            let v = u.add(&w.scale(root));
            if v.sup_norm() > 1e-3 {
                found = Some(v);
                break;
            }
        }
        let v = match found {
            Some(v) => v,
            None => continue,
        };
        let sup = v.sup_norm();
        let r1 = b_form(&v, &p.rep()).abs() / (sup * p.rep().sup_norm());
        let r2 = b_form(&v, &q.rep()).abs() / (sup * q.rep().sup_norm());
        worst = worst.max(r1).max(r2);
    }
    worst
}

fn check_normalize_to_standard(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let t = rand_conformal(rng);
    let img = |p: &ProjectivePoint5| t.apply_point(p);
    let (q0, q_inf, q1, q2) = match (img(&p0()), img(&p_infinity()), img(&p1()), img(&p2())) {
        (Ok(a), Ok(b), Ok(c), Ok(d)) => (a, b, c, d),
        _ => return HARD_FAILURE,
    };
    let m = match normalize_to_standard(&q0, &q_inf, &q1, &q2) {
        Ok(m) => m,
        Err(_) => return HARD_FAILURE,
    };
    let mut worst = m.orthogonality_residual();
    for (src, dst) in [(q0, p0()), (q_inf, p_infinity()), (q1, p1()), (q2, p2())] {
        match m.apply_point(&src) {
            Ok(got) => worst = worst.max(got.dist(&dst)),
            Err(_) => return HARD_FAILURE,
        }
    }
    worst
}

// ---------------------------------------------------------------------
// sl2 suite
// ---------------------------------------------------------------------

fn check_exp_series(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let xi = mink_to_sl2(&MinkVec3::new(
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
    ));
    match exp_series_oracle(&xi) {
        Ok(oracle) => (exp_sl2(&xi).mat() - oracle.mat()).sup_norm(),
        Err(_) => HARD_FAILURE,
    }
}

fn check_exp_unimodular(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let xi = mink_to_sl2(&MinkVec3::new(
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
        rng.gen_range(-5.0..5.0),
    ));
    (exp_sl2(&xi).mat().det() - 1.0).abs()
}

fn check_ad_invariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let g = rand_sl2(rng);
    let a = rand_tangent(rng, 2.0);
    let b = rand_tangent(rng, 2.0);
    let ga = ad(&g, &a);
    let gb = ad(&g, &b);
    let scale = (ga.sup_norm() * gb.sup_norm())
        .max(a.sup_norm() * b.sup_norm())
        .max(1.0);
    (lorentz_dot(&ga, &gb) - lorentz_dot(&a, &b)).abs() / scale
}

fn check_elliptic_periodicity(_rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let k = TangentSL2::k_rotation();
    let pi = std::f64::consts::PI;
    let half = (exp_sl2(&k.scale(pi)).mat() + Mat2::identity()).sup_norm();
    let full = (exp_sl2(&k.scale(2.0 * pi)).mat() - Mat2::identity()).sup_norm();
    half.max(full)
}

fn check_geodesic_connect(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let g = rand_sl2(rng);
    match geodesic_connect_dbl(&g) {
        Some(xi) => (exp_sl2(&xi).mat() - g.mat()).sup_norm() / g.mat().sup_norm().max(1.0),
        None => 0.0,
    }
}

fn check_identification_isometry(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let a = rand_tangent(rng, 2.0);
    let b = rand_tangent(rng, 2.0);
    let va = sl2_to_mink(&a);
    let vb = sl2_to_mink(&b);
    let scale = (a.sup_norm() * b.sup_norm()).max(1.0);
    (lorentz_dot(&a, &b) - va.dot(&vb)).abs() / scale
}

fn check_exp_branch_boundary(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // Near-null tangent vectors straddling the branch boundary:
    // |<xi, xi>| below 1e-8.
    let eps: f64 = rng.gen_range(-1e-8..1e-8);
    let x = sign_range(rng, 0.3, 3.0);
    let y: f64 = rng.gen_range(-3.0..3.0);
    let z = (x * x + y * y - eps).sqrt();
    let xi = mink_to_sl2(&MinkVec3::new(x, y, if rng.gen::<bool>() { z } else { -z }));
    match exp_series_oracle(&xi) {
        Ok(oracle) => (exp_sl2(&xi).mat() - oracle.mat()).sup_norm(),
        Err(_) => HARD_FAILURE,
    }
}

// ---------------------------------------------------------------------
// ads suite
// ---------------------------------------------------------------------

fn check_switch_equivariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let iso = rand_iso(rng);
    let switched = IsometryG0::new(iso.g2, iso.g1);
    let x = AdSPoint::new(PSL2::new(rand_sl2(rng)));
    let e = AdSPoint::identity();
    let lhs = symmetry(&e, &act(&iso, &x));
    let rhs = act(&switched, &symmetry(&e, &x));
    let scale = lhs
        .g
        .rep()
        .mat()
        .sup_norm()
        .max(rhs.g.rep().mat().sup_norm())
        .max(1.0);
    lhs.g.dist(&rhs.g) / scale
}

fn check_transvection_geodesic(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let xi = rand_tangent(rng, 1.0);
    let s: f64 = rng.gen_range(-1.5..1.5);
    let t: f64 = rng.gen_range(-1.5..1.5);
    let e = AdSPoint::identity();
    let lhs = act(&transvection(&xi, t), &exp_at(&e, &xi.scale(s)));
    let rhs = exp_at(&e, &xi.scale(s + t));
    let scale = rhs.g.rep().mat().sup_norm().max(1.0);
    lhs.g.dist(&rhs.g) / scale
}

fn check_symmetry_fixed_set(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let g = AdSPoint::new(PSL2::new(rand_sl2(rng)));
    // The geodesic symmetry at g fixes g...
    let mut worst = symmetry(&g, &g).g.dist(&g.g);
    // ...and fixes the dual plane pointwise: the points at timelike
    // distance pi/2 from g, in every direction.
    let xi = rand_unit_timelike(rng);
    let x = exp_at(&g, &xi.scale(std::f64::consts::FRAC_PI_2));
    let scale = x.g.rep().mat().sup_norm().max(1.0);
    worst = worst.max(symmetry(&g, &x).g.dist(&x.g) / scale);
    if !dual_plane_contains(&g, &x) {
        return HARD_FAILURE;
    }
    worst
}

fn check_timelike_period(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let pi = std::f64::consts::PI;
    let xi = rand_unit_timelike(rng);
    let e = AdSPoint::identity();
    // Unit timelike geodesics close after pi downstairs and after 2 pi
    // on the double cover, passing the antipode at pi.
    let closed = exp_at(&e, &xi.scale(pi));
    let mut worst = closed.g.dist(&PSL2::identity());
    let e_hat = HatAdSPoint::identity();
    let half = exp_at_hat(&e_hat, &xi.scale(pi));
    worst = worst.max((half.g.mat() + Mat2::identity()).sup_norm());
    let full = exp_at_hat(&e_hat, &xi.scale(2.0 * pi));
    worst.max((full.g.mat() - Mat2::identity()).sup_norm())
}

fn check_lie_triple(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let a = rand_tangent(rng, 1.5);
    let b = rand_tangent(rng, 1.5);
    match lie_triple_check(&a, &b) {
        Ok(true) => 0.0,
        Ok(false) => 1.0,
        // Dependent pairs are measure zero but can occur; they carry no
        // information about the invariant.
        Err(GeomError::DependentPair) => 0.0,
        Err(_) => HARD_FAILURE,
    }
}

fn check_dual_plane_radius(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let g = AdSPoint::new(PSL2::new(rand_sl2(rng)));
    let xi = rand_unit_timelike(rng).scale(std::f64::consts::FRAC_PI_2);
    match dual_plane_radius_check(&g, &xi) {
        Ok(true) => 0.0,
        Ok(false) => 1.0,
        Err(_) => HARD_FAILURE,
    }
}

// ---------------------------------------------------------------------
// crooked suite
// ---------------------------------------------------------------------

/// The linear action of the identity component of SO(2,1) through the
/// adjoint.
fn apply_so21(g: &SL2, v: &MinkVec3) -> MinkVec3 {
    sl2_to_mink(&ad(g, &mink_to_sl2(v)))
}

/// Hinge labels are canonical per plane, not equivariant: a motion can
/// exchange the two hinge lines. Detects whether the image of the first
/// hinge direction aligns with the moved plane's first or second hinge.
/// Returns None if it aligns with neither or both (a structural error).
fn hinge_labels_swapped(image_of_n1: &MinkVec3, m1: &MinkVec3, m2: &MinkVec3) -> Option<bool> {
    let align = |a: &MinkVec3, b: &MinkVec3| {
        a.cross(b).sup_norm() / (a.sup_norm() * b.sup_norm())
    };
    let r1 = align(image_of_n1, m1);
    let r2 = align(image_of_n1, m2);
    if r1.min(r2) > 1e-6 || (r1 < 1e-6 && r2 < 1e-6) {
        return None;
    }
    Some(r2 < r1)
}

fn swap_e3_tag(tag: StratumTag, swapped: bool) -> StratumTag {
    if !swapped {
        return tag;
    }
    match tag {
        StratumTag::Hinge1 => StratumTag::Hinge2,
        StratumTag::Hinge2 => StratumTag::Hinge1,
        StratumTag::Wing1 => StratumTag::Wing2,
        StratumTag::Wing2 => StratumTag::Wing1,
        t => t,
    }
}

fn swap_ads_tag(tag: AdSStratumTag, swapped: bool) -> AdSStratumTag {
    if !swapped {
        return tag;
    }
    match tag {
        AdSStratumTag::Hinge1 => AdSStratumTag::Hinge2,
        AdSStratumTag::Hinge2 => AdSStratumTag::Hinge1,
        AdSStratumTag::Cohinge1 => AdSStratumTag::Cohinge2,
        AdSStratumTag::Cohinge2 => AdSStratumTag::Cohinge1,
        AdSStratumTag::Wing1 => AdSStratumTag::Wing2,
        AdSStratumTag::Wing2 => AdSStratumTag::Wing1,
        AdSStratumTag::Cowing1 => AdSStratumTag::Cowing2,
        AdSStratumTag::Cowing2 => AdSStratumTag::Cowing1,
        t => t,
    }
}

fn check_e3_equivariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let cp = rand_e3_plane(rng);
    let g = rand_sl2(rng);
    let tau = rand_mink(rng, 2.0);
    let spine = apply_so21(&g, &cp.spine_dir());
    let spine = spine.scale(spine.norm2().sqrt().recip());
    let moved = match CrookedPlaneE3::new(apply_so21(&g, &cp.vertex()) + tau, spine) {
        Ok(cp) => cp,
        Err(_) => return HARD_FAILURE,
    };
    let (n1, _) = hinge_dirs(&cp);
    let (m1, m2) = hinge_dirs(&moved);
    let swapped = match hinge_labels_swapped(&apply_so21(&g, &n1), &m1, &m2) {
        Some(s) => s,
        None => return HARD_FAILURE,
    };
    // Mix generic points with points constructed on the strata.
    let q = if rng.gen::<bool>() {
        cp.vertex() + rand_mink(rng, 2.5)
    } else {
        let tc = CrookedPlaneE3::new(MinkVec3::new(0.0, 0.0, 0.0), cp.spine_dir())
            .expect("validated spine");
        let (v, _) = cone_sample(&tc, rng);
        cp.vertex() + v
    };
    let before = swap_e3_tag(membership(&cp, &q), swapped);
    let after = membership(&moved, &(apply_so21(&g, &q) + tau));
    if before == after {
        0.0
    } else {
        1.0
    }
}

fn check_e3_hinge_boundary(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // Hinge directions are null, orthogonal to the spine, and their
    // lines through the vertex are tagged as hinges.
    let cp = rand_e3_plane(rng);
    let (n1, n2) = hinge_dirs(&cp);
    let n = if rng.gen::<bool>() { n1 } else { n2 };
    let s = cp.spine_dir();
    let r1 = n.norm2().abs() / n.sup_norm().powi(2);
    let r2 = n.dot(&s).abs() / (n.sup_norm() * s.sup_norm());
    let p = cp.vertex() + n.scale(sign_range(rng, 0.05, 2.0));
    let tag = membership(&cp, &p);
    if tag != StratumTag::Hinge1 && tag != StratumTag::Hinge2 {
        return HARD_FAILURE;
    }
    r1.max(r2)
}

fn check_e3_spine_bisects(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // For the standard plane the wings are the half-planes x > 0, z = y
    // and x < 0, z = -y, and the rotation by pi around the spine axis
    // (y, z) -> (-y, -z) preserves each of them.
    let cp = CrookedPlaneE3::standard();
    let x = rng.gen_range(0.05..3.0);
    let y: f64 = rng.gen_range(-2.0..2.0);
    let pa = MinkVec3::new(x, y, y);
    let pb = MinkVec3::new(-x, y, -y);
    let a = membership(&cp, &pa);
    let ar = membership(&cp, &MinkVec3::new(pa.x, -pa.y, -pa.z));
    let b = membership(&cp, &pb);
    let br = membership(&cp, &MinkVec3::new(pb.x, -pb.y, -pb.z));
    let wing_or_spine = |t: StratumTag| {
        t == StratumTag::Wing1 || t == StratumTag::Wing2 || t == StratumTag::Spine
    };
    let ok = a == ar
        && b == br
        && wing_or_spine(a)
        && wing_or_spine(b)
        && (a != b || a == StratumTag::Spine);
    if ok {
        0.0
    } else {
        1.0
    }
}

fn check_e3_cone_scaling(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let cp = rand_e3_plane(rng);
    let q = cp.vertex() + rand_mink(rng, 2.0);
    let lambda: f64 = rng.gen_range(0.1..8.0);
    let scaled_pt = cp.vertex() + (q - cp.vertex()).scale(lambda);
    if membership(&cp, &q) == membership(&cp, &scaled_pt) {
        0.0
    } else {
        1.0
    }
}

/// A probe for the anti-de Sitter membership checks: half generic, half
/// constructed on the plane through the exponential of a cone direction.
fn ads_probe(cp: &AdSCrookedPlane, rng: &mut ChaCha8Rng) -> AdSPoint {
    if rng.gen::<bool>() {
        AdSPoint::new(PSL2::new(rand_sl2(rng)))
    } else {
        let (v, _) = cone_sample(&tangent_cone(cp), rng);
        exp_at(&cp.vertex(), &mink_to_sl2(&v))
    }
}

fn check_ads_equivariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let cp = rand_plane(rng);
    let iso = rand_iso(rng);
    let moved = transform_plane(&iso, &cp);
    // The tangent directions transform through the adjoint of the second
    // factor; detect whether that exchanges the hinge labels.
    let (n1, _) = hinge_dirs(&tangent_cone(&cp));
    let (m1, m2) = hinge_dirs(&tangent_cone(&moved));
    let swapped = match hinge_labels_swapped(&apply_so21(&iso.g2, &n1), &m1, &m2) {
        Some(s) => s,
        None => return HARD_FAILURE,
    };
    let x = ads_probe(&cp, rng);
    let before = swap_ads_tag(membership_ads(&cp, &x), swapped);
    if before == membership_ads(&moved, &act(&iso, &x)) {
        0.0
    } else {
        1.0
    }
}

fn check_ads_particles(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // Stem particles: the timelike geodesics of the stem close up after
    // pi, and their interior stays on the stem.
    let pi = std::f64::consts::PI;
    let cp = rand_plane(rng);
    let tc = tangent_cone(&cp);
    let (n1, n2) = hinge_dirs(&tc);
    let a = rng.gen_range(0.05..1.0);
    let b = rng.gen_range(0.05..1.0);
    let u = n1.scale(a) + n2.scale(b);
    let unit = mink_to_sl2(&u.scale((-u.norm2()).sqrt().recip()));
    let g = cp.vertex();
    let closed = exp_at(&g, &unit.scale(pi));
    let scale = g.g.rep().mat().sup_norm().max(1.0);
    let residual = closed.g.dist(&g.g) / scale;
    let t: f64 = rng.gen_range(0.1..(pi - 0.1));
    let tag = membership_ads(&cp, &exp_at(&g, &unit.scale(t)));
    if tag != AdSStratumTag::StemInterior && tag != AdSStratumTag::Vertex {
        return HARD_FAILURE;
    }
    residual
}

fn check_ads_deck_equivariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let cp = rand_plane(rng);
    let hcp = lift(&cp);
    let base = HatAdSPoint::new(cp.vertex().g.rep());
    let x = if rng.gen::<bool>() {
        HatAdSPoint::new(rand_sl2(rng))
    } else {
        let (v, _) = cone_sample(&tangent_cone(&cp), rng);
        let start = if rng.gen::<bool>() { base } else { base.deck() };
        exp_at_hat(&start, &mink_to_sl2(&v))
    };
    if membership_hat(&hcp, &x.deck()) == membership_hat(&hcp, &x).co() {
        0.0
    } else {
        1.0
    }
}

fn check_ads_dual_route(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let cp = rand_plane(rng);
    let x = ads_probe(&cp, rng);
    if membership_ads(&cp, &x) == membership_ads_trace(&cp, &x) {
        0.0
    } else {
        1.0
    }
}

/// Main theorem, part one: stratified membership of an anti-de Sitter
/// crooked plane agrees with the stratification of its tangent cone, in
/// both directions. One sample = one plane instance.
fn check_mt1(rng: &mut ChaCha8Rng, _tol: f64, samples: usize) -> f64 {
    let per_stratum = scaled(1000, samples).min(1000);
    let cp = rand_plane(rng);
    let tc = tangent_cone(&cp);
    let g = cp.vertex();
    let mut mismatches = 0usize;
    for tag in CONE_STRATA {
        for _ in 0..per_stratum {
            let v = sample_in_stratum(&tc, rng, tag).expect("cone strata are constructible");
            // The construction and the cone's membership oracle must
            // agree on the label.
            if membership(&tc, &v) != tag {
                mismatches += 1;
                continue;
            }
            let expected = match tag {
                StratumTag::Vertex => AdSStratumTag::Vertex,
                StratumTag::Hinge1 => AdSStratumTag::Hinge1,
                StratumTag::Hinge2 => AdSStratumTag::Hinge2,
                StratumTag::Spine => AdSStratumTag::Spine,
                StratumTag::Wing1 => AdSStratumTag::Wing1,
                StratumTag::Wing2 => AdSStratumTag::Wing2,
                StratumTag::StemInterior => AdSStratumTag::StemInterior,
                StratumTag::Outside => unreachable!(),
            };
            let x = exp_at(&g, &mink_to_sl2(&v));
            // Forward: the exponential of a cone stratum lands in the
            // matching plane stratum.
            if membership_ads(&cp, &x) != expected {
                mismatches += 1;
                continue;
            }
            if tag == StratumTag::Vertex {
                continue;
            }
            // Reverse: some geodesic logarithm of an on-plane point
            // classifies back into the matching cone stratum.
            let ok = log_at(&g, &x)
                .iter()
                .any(|eta| membership(&tc, &sl2_to_mink(eta)) == tag);
            if !ok {
                mismatches += 1;
            }
        }
    }
    if mismatches == 0 {
        0.0
    } else {
        1.0
    }
}

// ---------------------------------------------------------------------
// einstein suite
// ---------------------------------------------------------------------

fn check_psi_null_cone(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let m = rand_sl2(rng);
    q_form(&psi(&m).rep()).abs()
}

fn check_psi_inversion(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let m = rand_sl2(rng);
    let neg = SL2::new(m.mat().scale(-1.0)).expect("negation stays unimodular");
    psi(&neg).dist(&inversion(&psi(&m)))
}

fn check_patch_round_trips(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    let m = rand_sl2(rng);
    let mut worst = match psi_inverse(&psi(&m)) {
        Ok(back) => (back.mat() - m.mat()).sup_norm() / m.mat().sup_norm().max(1.0),
        Err(_) => return HARD_FAILURE,
    };
    let v = rand_mink(rng, 2.0);
    match mink_from_ein(&embed_mink(&v)) {
        Ok(back) => worst = worst.max((back - v).sup_norm() / v.sup_norm().max(1.0)),
        Err(_) => return HARD_FAILURE,
    }
    worst
}

fn check_ideal_cone_trace(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // Alternate generic elements with trace -2 elements: the image lies
    // on the lightcone of the improper point exactly for the latter, and
    // never on the fixed hypersphere.
    let m = if rng.gen::<bool>() {
        rand_sl2(rng)
    } else {
        let t: f64 = rng.gen_range(-3.0..3.0);
        let base = Mat2::new(-1.0, -t, 0.0, -1.0);
        let h = rand_sl2(rng);
        match SL2::new(h.mat() * base * h.inverse().mat()) {
            Ok(m) => m,
            Err(_) => return 0.0,
        }
    };
    let image = psi(&m);
    if fixed_set_contains(&image) {
        return HARD_FAILURE;
    }
    let on_cone = incident(&image, &p_infinity());
    let trace_says = (m.trace() + 2.0).abs() <= 2.0 * TOL_INCIDENT;
    if on_cone == trace_says {
        0.0
    } else {
        1.0
    }
}

fn check_stabilizer_invariance(rng: &mut ChaCha8Rng, _tol: f64, _n: usize) -> f64 {
    // Identity-component conformal maps fixing the standard quadruple
    // pointwise: chart dilations composed with conjugation by the
    // one-parameter group of the spine. They preserve every stratum of
    // the standard surface.
    let t: f64 = rng.gen_range(-1.5..1.5);
    let u: f64 = rng.gen_range(-1.2..1.2);
    let h = exp_sl2(&TangentSL2::diag_spine().scale(u));
    let map = ConformalMap5::dilation(t).compose(&ConformalMap5::from_isometry(&h, &h));
    for p in [p0(), p_infinity(), p1(), p2()] {
        match map.apply_point(&p) {
            Ok(img) => {
                if img.dist(&p) > 1e-9 {
                    return HARD_FAILURE;
                }
            }
            Err(_) => return HARD_FAILURE,
        }
    }
    let cs = CrookedSurface::standard();
    let probes = match stratum_probes(&cs) {
        Ok(p) => p,
        Err(_) => return HARD_FAILURE,
    };
    for p in probes {
        let moved = match map.apply_point(&p) {
            Ok(m) => m,
            Err(_) => return HARD_FAILURE,
        };
        if cs_membership(&cs, &moved) != cs_membership(&cs, &p) {
            return 1.0;
        }
    }
    0.0
}

/// Whether a stratum of the lifted plane maps into the matching stratum
/// of the crooked surface. The two stem triangles are not individually
/// labeled by the lift, so the stem accepts either triangle tag.
fn hat_tag_matches(hat: AdSStratumTag, ein: EinStratumTag) -> bool {
    use AdSStratumTag as H;
    use EinStratumTag as E;
    match hat {
        H::Vertex => ein == E::Vertex,
        H::Covertex => ein == E::Covertex,
        H::Hinge1 | H::Hinge2 => ein == E::Hinge,
        H::Cohinge1 | H::Cohinge2 => ein == E::Cohinge,
        H::Spine | H::Cospine => ein == E::SpineCircle,
        H::Wing1 | H::Cowing1 => ein == E::Wing1,
        H::Wing2 | H::Cowing2 => ein == E::Wing2,
        H::StemInterior => ein == E::StemT1 || ein == E::StemT2,
        H::Outside => ein == E::Outside,
    }
}

/// Main theorem, part two: the closure of the lift is an adapted crooked
/// surface, and the embedding carries every stratum of the lifted plane
/// into the matching surface stratum. One sample = one plane instance.
fn check_mt2(rng: &mut ChaCha8Rng, _tol: f64, samples: usize) -> f64 {
    let per_stratum = scaled(1000, samples).min(1000);
    let cp = rand_plane(rng);
    let cs = match closure_of_lift(&cp) {
        Ok(cs) => cs,
        Err(_) => return HARD_FAILURE,
    };
    if !is_adapted(&cs) {
        return HARD_FAILURE;
    }
    let hcp = lift(&cp);
    let base = HatAdSPoint::new(cp.vertex().g.rep());
    let tc = tangent_cone(&cp);
    let mut mismatches = 0usize;
    for tag in CONE_STRATA {
        for _ in 0..per_stratum {
            let v = sample_in_stratum(&tc, rng, tag).expect("cone strata are constructible");
            // Sample the vertex-side strata and, through the deck
            // transformation, the co-strata.
            let start = if rng.gen::<bool>() { base } else { base.deck() };
            let x = exp_at_hat(&start, &mink_to_sl2(&v));
            let hat_tag = membership_hat(&hcp, &x);
            if hat_tag == AdSStratumTag::Outside {
                mismatches += 1;
                continue;
            }
            if !hat_tag_matches(hat_tag, cs_membership(&cs, &psi(&x.g))) {
                mismatches += 1;
            }
        }
    }
    if mismatches == 0 {
        0.0
    } else {
        1.0
    }
}

/// Main theorem, part three: reconstruction from the closure recovers
/// the plane (vertex in the quotient group, spine up to sign), and the
/// two closures classify points identically. One sample = one instance.
fn check_mt3(rng: &mut ChaCha8Rng, tol: f64, samples: usize) -> f64 {
    let points = scaled(10_000, samples).min(10_000);
    let cp = rand_plane(rng);
    let cs = match closure_of_lift(&cp) {
        Ok(cs) => cs,
        Err(_) => return HARD_FAILURE,
    };
    let back = match ads_from_adapted(&cs) {
        Ok(p) => p,
        Err(_) => return HARD_FAILURE,
    };
    let scale = cp.vertex().g.rep().mat().sup_norm().max(1.0);
    let mut residual = back.vertex().g.dist(&cp.vertex().g) / scale;
    let sa = back.spine_dir().mat();
    let sb = cp.spine_dir().mat();
    residual = residual.max((sa - sb).sup_norm().min((sa + sb).sup_norm()));
    if residual > tol {
        return residual;
    }
    let cs_back = match closure_of_lift(&back) {
        Ok(c) => c,
        Err(_) => return HARD_FAILURE,
    };
    for _ in 0..points {
        let p = rand_ein_point(rng);
        if cs_membership(&cs, &p) != cs_membership(&cs_back, &p) {
            return 1.0;
        }
    }
    residual
}

// ---------------------------------------------------------------------
// Check table
// ---------------------------------------------------------------------

fn check_table() -> Vec<CheckDef> {
    use Suite::*;
    vec![
        CheckDef {
            name: "polarization_identity",
            suites: &[Core],
            nominal: 10_000,
            tolerance: 1e-12,
            sample: check_polarization,
        },
        CheckDef {
            name: "projective_scaling",
            suites: &[Core],
            nominal: 10_000,
            tolerance: 1e-14,
            sample: check_projective_scaling,
        },
        CheckDef {
            name: "photon_incidence",
            suites: &[Core],
            nominal: 10_000,
            tolerance: TOL_NULL,
            sample: check_photon_incidence,
        },
        CheckDef {
            name: "dual_circle_incidence",
            suites: &[Core],
            nominal: 2_000,
            tolerance: TOL_INCIDENT,
            sample: check_dual_circle,
        },
        CheckDef {
            name: "normalize_to_standard_conformal",
            suites: &[Core],
            nominal: 1_000,
            tolerance: TOL_ORTHOGONAL,
            sample: check_normalize_to_standard,
        },
        CheckDef {
            name: "exp_matches_series",
            suites: &[Sl2],
            nominal: 10_000,
            tolerance: 1e-11,
            sample: check_exp_series,
        },
        CheckDef {
            name: "exp_unimodular",
            suites: &[Sl2],
            nominal: 10_000,
            tolerance: 1e-10,
            sample: check_exp_unimodular,
        },
        CheckDef {
            name: "ad_invariance",
            suites: &[Sl2],
            nominal: 10_000,
            tolerance: 1e-9,
            sample: check_ad_invariance,
        },
        CheckDef {
            name: "elliptic_periodicity",
            suites: &[Sl2],
            nominal: 1,
            tolerance: 1e-10,
            sample: check_elliptic_periodicity,
        },
        CheckDef {
            name: "geodesic_connect_round_trip",
            suites: &[Sl2],
            nominal: 10_000,
            tolerance: 1e-9,
            sample: check_geodesic_connect,
        },
        CheckDef {
            name: "identification_isometry",
            suites: &[Sl2],
            nominal: 10_000,
            tolerance: 1e-12,
            sample: check_identification_isometry,
        },
        CheckDef {
            name: "exp_branch_boundary",
            suites: &[Sl2],
            nominal: 1_000,
            tolerance: 1e-9,
            sample: check_exp_branch_boundary,
        },
        CheckDef {
            name: "symmetry_switch_equivariance",
            suites: &[Ads],
            nominal: 10_000,
            tolerance: 1e-12,
            sample: check_switch_equivariance,
        },
        CheckDef {
            name: "transvection_translates_geodesic",
            suites: &[Ads],
            nominal: 10_000,
            tolerance: 1e-10,
            sample: check_transvection_geodesic,
        },
        CheckDef {
            name: "symmetry_fixed_set",
            suites: &[Ads],
            nominal: 2_000,
            tolerance: 1e-9,
            sample: check_symmetry_fixed_set,
        },
        CheckDef {
            name: "timelike_period",
            suites: &[Ads],
            nominal: 1_000,
            tolerance: 1e-10,
            sample: check_timelike_period,
        },
        CheckDef {
            name: "lie_triple_planes",
            suites: &[Ads],
            nominal: 1_000,
            tolerance: 0.5,
            sample: check_lie_triple,
        },
        CheckDef {
            name: "dual_plane_radius",
            suites: &[Ads],
            nominal: 1_000,
            tolerance: 0.5,
            sample: check_dual_plane_radius,
        },
        CheckDef {
            name: "e3_membership_equivariance",
            suites: &[Crooked],
            nominal: 10_000,
            tolerance: 0.5,
            sample: check_e3_equivariance,
        },
        CheckDef {
            name: "e3_hinge_boundary",
            suites: &[Crooked],
            nominal: 10_000,
            tolerance: 1e-12,
            sample: check_e3_hinge_boundary,
        },
        CheckDef {
            name: "e3_spine_bisects_wings",
            suites: &[Crooked],
            nominal: 1_000,
            tolerance: 0.5,
            sample: check_e3_spine_bisects,
        },
        CheckDef {
            name: "e3_cone_scaling",
            suites: &[Crooked],
            nominal: 10_000,
            tolerance: 0.5,
            sample: check_e3_cone_scaling,
        },
        CheckDef {
            name: "ads_membership_equivariance",
            suites: &[Crooked],
            nominal: 2_000,
            tolerance: 0.5,
            sample: check_ads_equivariance,
        },
        CheckDef {
            name: "ads_particles_closed",
            suites: &[Crooked],
            nominal: 1_000,
            tolerance: 1e-9,
            sample: check_ads_particles,
        },
        CheckDef {
            name: "ads_deck_equivariance",
            suites: &[Crooked],
            nominal: 10_000,
            tolerance: 0.5,
            sample: check_ads_deck_equivariance,
        },
        CheckDef {
            name: "ads_dual_route_agreement",
            suites: &[Crooked],
            nominal: 2_000,
            tolerance: 0.5,
            sample: check_ads_dual_route,
        },
        CheckDef {
            name: "mt1_stratum_two_way",
            suites: &[Crooked, MainTheorem],
            nominal: 100,
            tolerance: 0.5,
            sample: check_mt1,
        },
        CheckDef {
            name: "psi_null_cone",
            suites: &[Einstein],
            nominal: 100_000,
            tolerance: 1e-10,
            sample: check_psi_null_cone,
        },
        CheckDef {
            name: "psi_inversion_equivariance",
            suites: &[Einstein],
            nominal: 100_000,
            tolerance: 1e-12,
            sample: check_psi_inversion,
        },
        CheckDef {
            name: "patch_round_trips",
            suites: &[Einstein],
            nominal: 10_000,
            tolerance: 1e-9,
            sample: check_patch_round_trips,
        },
        CheckDef {
            name: "ideal_cone_trace",
            suites: &[Einstein],
            nominal: 10_000,
            tolerance: 0.5,
            sample: check_ideal_cone_trace,
        },
        CheckDef {
            name: "quadruple_stabilizer_invariance",
            suites: &[Einstein],
            nominal: 1_000,
            tolerance: 0.5,
            sample: check_stabilizer_invariance,
        },
        CheckDef {
            name: "mt2_closure_adapted_strata",
            suites: &[Einstein, MainTheorem],
            nominal: 100,
            tolerance: 0.5,
            sample: check_mt2,
        },
        CheckDef {
            name: "mt3_round_trip",
            suites: &[Einstein, MainTheorem],
            nominal: 100,
            tolerance: 1e-8,
            sample: check_mt3,
        },
    ]
}
