//! Triangulated meshes of crooked planes.
//!
//! The two-dimensional strata (stem and wings) are sampled on parameter
//! grids; hinges and spine appear as grid boundary rows. Faces are grouped
//! by stratum in the OBJ output, degenerate triangles are dropped, and
//! every emitted vertex is re-classified against the plane to guarantee it
//! lies on (the closure of) its claimed stratum.

use crooked_core::ads::{exp_at_hat, AdSPoint, HatAdSPoint};
use crooked_core::crooked_ads::{membership_ads, tangent_cone, AdSCrookedPlane, AdSStratumTag};
use crooked_core::crooked_e3::{hinge_dirs, membership, CrookedPlaneE3, StratumTag};
use crooked_core::embed::{mink_from_ein, psi};
use crooked_core::sl2::{mink_to_sl2, MinkVec3, PSL2};

/// Half-width of the parameter grids.
const EXTENT: f64 = 2.0;

/// Cap on the Lorentzian length of timelike parameters in the curved
/// model: the chart image of a stem ray leaves the affine patch when its
/// length reaches pi.
const TIMELIKE_CAP: f64 = 2.9;

pub struct MeshGroup {
    pub name: &'static str,
    pub vertices: Vec<[f64; 3]>,
    /// Local, zero-based indices into `vertices`.
    pub triangles: Vec<[usize; 3]>,
}

pub struct MeshOutput {
    pub groups: Vec<MeshGroup>,
}

impl MeshOutput {
    pub fn to_obj(&self) -> String {
        let mut out = String::from("# crooked plane mesh\n");
        let mut offset = 1usize; // OBJ indices are global and 1-based
        for group in &self.groups {
            out.push_str(&format!("g {}\n", group.name));
            for v in &group.vertices {
                out.push_str(&format!("v {} {} {}\n", v[0], v[1], v[2]));
            }
            for t in &group.triangles {
                out.push_str(&format!(
                    "f {} {} {}\n",
                    offset + t[0],
                    offset + t[1],
                    offset + t[2]
                ));
            }
            offset += group.vertices.len();
        }
        out
    }
}

fn triangle_area(a: &[f64; 3], b: &[f64; 3], c: &[f64; 3]) -> f64 {
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let x = u[1] * w[2] - u[2] * w[1];
    let y = u[2] * w[0] - u[0] * w[2];
    let z = u[0] * w[1] - u[1] * w[0];
    0.5 * (x * x + y * y + z * z).sqrt()
}

/// Triangulates one (n+1) x (n+1) parameter grid. Grid nodes may be
/// rejected by the position map (e.g. off the affine patch); faces
/// touching a rejected node are dropped, as are degenerate faces. Only
/// vertices referenced by a surviving face are emitted.
fn grid_patch(
    n: usize,
    position: impl Fn(usize, usize) -> Option<[f64; 3]>,
) -> (Vec<[f64; 3]>, Vec<[usize; 3]>) {
    let node = |i: usize, j: usize| i * (n + 1) + j;
    let positions: Vec<Option<[f64; 3]>> = (0..=n)
        .flat_map(|i| (0..=n).map(move |j| (i, j)))
        .map(|(i, j)| position(i, j))
        .collect();
    let mut tris: Vec<[usize; 3]> = Vec::new();
    for i in 0..n {
        for j in 0..n {
            let corners = [node(i, j), node(i + 1, j), node(i + 1, j + 1), node(i, j + 1)];
            for tri in [[0, 1, 2], [0, 2, 3]] {
                let idx = [corners[tri[0]], corners[tri[1]], corners[tri[2]]];
                let (Some(a), Some(b), Some(c)) =
                    (positions[idx[0]], positions[idx[1]], positions[idx[2]])
                else {
                    continue;
                };
                if triangle_area(&a, &b, &c) > 1e-12 {
                    tris.push(idx);
                }
            }
        }
    }
    // Compact to the referenced vertices.
    let mut remap = vec![usize::MAX; positions.len()];
    let mut vertices = Vec::new();
    for tri in &mut tris {
        for idx in tri.iter_mut() {
            if remap[*idx] == usize::MAX {
                remap[*idx] = vertices.len();
                vertices.push(positions[*idx].expect("referenced vertices are valid"));
            }
            *idx = remap[*idx];
        }
    }
    (vertices, tris)
}

/// The tangent-cone parameter grids common to both models: the stem as
/// two hinge-coordinate quadrants and each wing as a hinge x spine
/// rectangle on the side of the null plane that belongs to the plane.
struct ConeGrids {
    n1: MinkVec3,
    n2: MinkVec3,
    s: MinkVec3,
    wing_sides: [f64; 2],
}

fn cone_grids(cone: &CrookedPlaneE3) -> Result<ConeGrids, String> {
    let (n1, n2) = hinge_dirs(cone);
    let s = cone.spine_dir();
    let mut wing_sides = [0.0f64; 2];
    for (k, (n, tag)) in [(n1, StratumTag::Wing1), (n2, StratumTag::Wing2)]
        .into_iter()
        .enumerate()
    {
        wing_sides[k] = [1.0, -1.0]
            .into_iter()
            .find(|side| membership(cone, &(cone.vertex() + n + s.scale(*side))) == tag)
            .ok_or("no side of the null plane classifies as the wing")?;
    }
    Ok(ConeGrids { n1, n2, s, wing_sides })
}

impl ConeGrids {
    /// Stem parameter for grid node (i, j) of the future (+1) or past
    /// (-1) quadrant.
    fn stem_param(&self, n: usize, i: usize, j: usize, nappe: f64) -> MinkVec3 {
        let u = EXTENT * (i as f64) / (n as f64);
        let v = EXTENT * (j as f64) / (n as f64);
        (self.n1.scale(u) + self.n2.scale(v)).scale(nappe)
    }

    /// Wing parameter for grid node (i, j) of wing `k` (0 or 1).
    fn wing_param(&self, n: usize, i: usize, j: usize, k: usize) -> MinkVec3 {
        let a = EXTENT * (2.0 * (i as f64) / (n as f64) - 1.0);
        let b = EXTENT * (j as f64) / (n as f64) * self.wing_sides[k];
        let hinge = if k == 0 { self.n1 } else { self.n2 };
        hinge.scale(a) + self.s.scale(b)
    }
}

fn allowed_on(group: &str, tag: StratumTag) -> bool {
    use StratumTag as T;
    match group {
        "stem" => matches!(tag, T::StemInterior | T::Hinge1 | T::Hinge2 | T::Vertex),
        "wing1" => matches!(tag, T::Wing1 | T::Hinge1 | T::Spine | T::Vertex),
        "wing2" => matches!(tag, T::Wing2 | T::Hinge2 | T::Spine | T::Vertex),
        _ => false,
    }
}

/// Mesh of a Minkowski crooked plane: affine coordinates.
pub fn mesh_e3(cp: &CrookedPlaneE3, resolution: usize) -> Result<MeshOutput, String> {
    let grids = cone_grids(cp)?;
    let place = |w: MinkVec3| {
        let p = cp.vertex() + w;
        Some([p.x, p.y, p.z])
    };

    let mut groups = Vec::new();
    let mut stem_vertices = Vec::new();
    let mut stem_triangles = Vec::new();
    for nappe in [1.0, -1.0] {
        let (v, mut t) = grid_patch(resolution, |i, j| place(grids.stem_param(resolution, i, j, nappe)));
        let offset = stem_vertices.len();
        for tri in &mut t {
            for idx in tri.iter_mut() {
                *idx += offset;
            }
        }
        stem_vertices.extend(v);
        stem_triangles.extend(t);
    }
    groups.push(MeshGroup { name: "stem", vertices: stem_vertices, triangles: stem_triangles });

    for (k, name) in [(0usize, "wing1"), (1usize, "wing2")] {
        let (v, t) = grid_patch(resolution, |i, j| place(grids.wing_param(resolution, i, j, k)));
        groups.push(MeshGroup { name, vertices: v, triangles: t });
    }

    let mesh = MeshOutput { groups };
    for group in &mesh.groups {
        for v in &group.vertices {
            let tag = membership(cp, &MinkVec3::new(v[0], v[1], v[2]));
            if !allowed_on(group.name, tag) {
                return Err(format!(
                    "internal mesh inconsistency: {:?} vertex in group {}",
                    tag, group.name
                ));
            }
        }
    }
    Ok(mesh)
}

fn allowed_on_ads(group: &str, tag: AdSStratumTag) -> bool {
    use AdSStratumTag as T;
    match group {
        "stem" => matches!(tag, T::StemInterior | T::Hinge1 | T::Hinge2 | T::Vertex),
        "wing1" => matches!(tag, T::Wing1 | T::Hinge1 | T::Spine | T::Vertex),
        "wing2" => matches!(tag, T::Wing2 | T::Hinge2 | T::Spine | T::Vertex),
        _ => false,
    }
}

/// Mesh of an anti-de Sitter crooked plane: the image of the plane under
/// the group embedding, drawn in the affine chart of the Einstein
/// universe. Grid nodes whose image leaves the chart are dropped.
pub fn mesh_ads(cp: &AdSCrookedPlane, resolution: usize) -> Result<MeshOutput, String> {
    let cone = tangent_cone(cp);
    let grids = cone_grids(&cone)?;
    let base = HatAdSPoint::new(cp.vertex().g.rep());

    let lift_of = |w: MinkVec3| {
        // Timelike rays reach the chart boundary at length pi; cap them.
        let q = w.norm2();
        let w = if q < 0.0 {
            let r = (-q).sqrt();
            if r > TIMELIKE_CAP {
                w.scale(TIMELIKE_CAP / r)
            } else {
                w
            }
        } else {
            w
        };
        exp_at_hat(&base, &mink_to_sl2(&w))
    };
    let place = |w: MinkVec3| {
        let p = mink_from_ein(&psi(&lift_of(w).g)).ok()?;
        Some([p.x, p.y, p.z])
    };

    let mut groups = Vec::new();
    let mut stem_vertices = Vec::new();
    let mut stem_triangles = Vec::new();
    for nappe in [1.0, -1.0] {
        let (v, mut t) = grid_patch(resolution, |i, j| place(grids.stem_param(resolution, i, j, nappe)));
        let offset = stem_vertices.len();
        for tri in &mut t {
            for idx in tri.iter_mut() {
                *idx += offset;
            }
        }
        stem_vertices.extend(v);
        stem_triangles.extend(t);
    }
    groups.push(MeshGroup { name: "stem", vertices: stem_vertices, triangles: stem_triangles });

    for (k, name) in [(0usize, "wing1"), (1usize, "wing2")] {
        let (v, t) = grid_patch(resolution, |i, j| place(grids.wing_param(resolution, i, j, k)));
        groups.push(MeshGroup { name, vertices: v, triangles: t });
    }

    let mesh = MeshOutput { groups };
    // Re-classify each emitted chart vertex through the inverse chart: it
    // must lie on (the closure of) its claimed stratum of the plane.
    for group in &mesh.groups {
        for v in &group.vertices {
            let p = crooked_core::embed::embed_mink(&MinkVec3::new(v[0], v[1], v[2]));
            let m = crooked_core::embed::psi_inverse(&p)
                .map_err(|e| format!("mesh vertex left the group chart: {e}"))?;
            let tag = membership_ads(cp, &AdSPoint::new(PSL2::new(m)));
            if !allowed_on_ads(group.name, tag) {
                return Err(format!(
                    "internal mesh inconsistency: {:?} vertex in group {}",
                    tag, group.name
                ));
            }
        }
    }
    Ok(mesh)
}
