//! Microbenchmarks for the hot kernels: the closed-form exponential, the
//! projective embedding and its inverse, the three membership classifiers,
//! and surface normalization. Inputs are drawn once from a seeded stream
//! and cycled, so runs are comparable.

use criterion::{black_box, criterion_group, criterion_main, Criterion};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Normal};

use crooked_core::ads::exp_at;
use crooked_core::crooked_ads::{membership_ads, tangent_cone, AdSCrookedPlane};
use crooked_core::crooked_e3::membership;
use crooked_core::ein::{point, ProjectivePoint5, Vec5};
use crooked_core::embed::{closure_of_lift, cs_membership, psi, psi_inverse};
use crooked_core::sl2::{
    ad, exp_sl2, lorentz_dot, mink_to_sl2, Mat2, MinkVec3, PSL2, SL2, TangentSL2,
};

const POOL: usize = 1024;

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

fn rand_tangent(rng: &mut ChaCha8Rng) -> TangentSL2 {
    let normal = Normal::new(0.0, 1.5).expect("normal");
    mink_to_sl2(&MinkVec3::new(
        normal.sample(rng),
        normal.sample(rng),
        normal.sample(rng),
    ))
}

fn rand_plane(rng: &mut ChaCha8Rng) -> AdSCrookedPlane {
    let s = ad(&rand_sl2(rng), &TangentSL2::diag_spine());
    let q = lorentz_dot(&s, &s);
    let s = s.scale(q.sqrt().recip());
    AdSCrookedPlane::new(PSL2::new(rand_sl2(rng)), s).expect("unit spacelike spine")
}

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
        if let Ok(p) = point(&Vec5::new(a / s, b / s, d / t, e / t + c / s, e / t - c / s)) {
            return p;
        }
    }
}

fn bench_exp(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7001);
    let pool: Vec<TangentSL2> = (0..POOL).map(|_| rand_tangent(&mut rng)).collect();
    let mut i = 0;
    c.bench_function("exp_sl2", |b| {
        b.iter(|| {
            i = (i + 1) % POOL;
            exp_sl2(black_box(&pool[i]))
        })
    });
}

fn bench_embedding(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7002);
    let pool: Vec<SL2> = (0..POOL).map(|_| rand_sl2(&mut rng)).collect();
    let mut i = 0;
    c.bench_function("psi", |b| {
        b.iter(|| {
            i = (i + 1) % POOL;
            psi(black_box(&pool[i]))
        })
    });
    let images: Vec<_> = pool.iter().map(psi).collect();
    let mut j = 0;
    c.bench_function("psi_inverse", |b| {
        b.iter(|| {
            j = (j + 1) % POOL;
            psi_inverse(black_box(&images[j])).expect("embedded point")
        })
    });
}

fn bench_membership(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7003);
    let cp = rand_plane(&mut rng);
    let tc = tangent_cone(&cp);
    let normal = Normal::new(0.0, 1.5).expect("normal");
    let points: Vec<MinkVec3> = (0..POOL)
        .map(|_| {
            MinkVec3::new(
                normal.sample(&mut rng),
                normal.sample(&mut rng),
                normal.sample(&mut rng),
            )
        })
        .collect();
    let mut i = 0;
    c.bench_function("membership_e3", |b| {
        b.iter(|| {
            i = (i + 1) % POOL;
            membership(black_box(&tc), black_box(&points[i]))
        })
    });

    let group_points: Vec<_> = points
        .iter()
        .map(|v| exp_at(&cp.vertex(), &mink_to_sl2(&v.scale(0.5))))
        .collect();
    let mut j = 0;
    c.bench_function("membership_ads", |b| {
        b.iter(|| {
            j = (j + 1) % POOL;
            membership_ads(black_box(&cp), black_box(&group_points[j]))
        })
    });

    let cs = closure_of_lift(&cp).expect("closure of a lift");
    let ein_points: Vec<_> = (0..POOL).map(|_| rand_ein_point(&mut rng)).collect();
    let mut k = 0;
    c.bench_function("cs_membership", |b| {
        b.iter(|| {
            k = (k + 1) % POOL;
            cs_membership(black_box(&cs), black_box(&ein_points[k]))
        })
    });
}

fn bench_normalization(c: &mut Criterion) {
    let mut rng = ChaCha8Rng::seed_from_u64(7004);
    let planes: Vec<AdSCrookedPlane> = (0..64).map(|_| rand_plane(&mut rng)).collect();
    let mut i = 0;
    c.bench_function("closure_of_lift", |b| {
        b.iter(|| {
            i = (i + 1) % planes.len();
            closure_of_lift(black_box(&planes[i])).expect("closure of a lift")
        })
    });
}

criterion_group!(
    kernels,
    bench_exp,
    bench_embedding,
    bench_membership,
    bench_normalization
);
criterion_main!(kernels);
