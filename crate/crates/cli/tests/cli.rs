//! End-to-end tests of the `crooked` binary: exit codes, output formats,
//! determinism, and mesh well-formedness.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use crooked_core::crooked_ads::{membership_ads, AdSCrookedPlane, AdSStratumTag};
use crooked_core::crooked_e3::{membership, CrookedPlaneE3, StratumTag};
use crooked_core::ein::ConformalMap5;
use crooked_core::embed::{psi_inverse, StemConfiguration};
use crooked_core::sl2::{MinkVec3, PSL2};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_crooked"))
}

fn write(dir: &Path, name: &str, content: &str) -> PathBuf {
    let path = dir.join(name);
    std::fs::write(&path, content).expect("fixture write");
    path
}

fn stdout_lines(out: &Output) -> Vec<String> {
    String::from_utf8_lossy(&out.stdout)
        .lines()
        .map(str::to_string)
        .collect()
}

const E3_STANDARD: &str = r#"{"vertex": [0.0, 0.0, 0.0], "spine_dir": [1.0, 0.0, 0.0]}"#;
const ADS_STANDARD: &str = r#"{"g": [[1.0, 0.0], [0.0, 1.0]], "s": [[1.0, 0.0], [0.0, -1.0]]}"#;
const CFG_STANDARD: &str =
    r#"{"q0": [0,0,0,0,1], "qinf": [0,0,0,1,0], "q1": [0,1,1,0,0], "q2": [0,1,-1,0,0]}"#;

// ---------------------------------------------------------------------------
// verify
// ---------------------------------------------------------------------------

#[test]
fn verify_reports_are_deterministic_and_exit_zero() {
    let dir = tempfile::tempdir().unwrap();
    let report_path = dir.path().join("report.json");
    let run = || {
        bin()
            .args(["verify", "sl2", "--seed", "42", "--samples", "300"])
            .arg("--out")
            .arg(&report_path)
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert!(first.status.success(), "stderr: {:?}", String::from_utf8_lossy(&first.stderr));
    let report_file = std::fs::read(&report_path).unwrap();
    assert_eq!(first.stdout, report_file, "--out content matches stdout");

    let second = run();
    assert_eq!(first.stdout, second.stdout, "byte-identical reports");

    let parsed: serde_json::Value = serde_json::from_slice(&first.stdout).unwrap();
    assert_eq!(parsed["suite"], "sl2");
    assert_eq!(parsed["pass"], true);
    assert!(parsed["checks"].as_array().unwrap().len() >= 5);
}

#[test]
fn verify_seed_changes_the_report() {
    let run = |seed: &str| {
        bin()
            .args(["verify", "core", "--samples", "200", "--seed", seed])
            .output()
            .expect("binary runs")
    };
    assert_ne!(run("1").stdout, run("2").stdout);
}

#[test]
fn verify_rejects_bad_input_with_exit_one() {
    let cases: Vec<Vec<&str>> = vec![
        vec!["verify", "bogus"],
        vec!["verify", "sl2", "--samples", "0"],
        vec!["verify", "sl2", "--tol", "exp_matches_series=-1"],
        vec!["verify", "sl2", "--tol", "notanumber=abc"],
        vec!["verify", "sl2", "--tol", "missingequals"],
        vec!["not-a-command"],
    ];
    for args in cases {
        let out = bin().args(&args).output().expect("binary runs");
        assert_eq!(out.status.code(), Some(1), "args {args:?}");
    }
}

#[test]
fn verify_tolerance_override_forces_exit_two() {
    let out = bin()
        .args([
            "verify",
            "sl2",
            "--samples",
            "200",
            "--tol",
            "exp_matches_series=1e-300",
        ])
        .output()
        .expect("binary runs");
    assert_eq!(out.status.code(), Some(2));
    let parsed: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(parsed["pass"], false);
}

#[test]
fn verify_worker_count_does_not_change_the_report() {
    let run = |threads: &str| {
        bin()
            .env("CROOKED_NUM_THREADS", threads)
            .args(["verify", "crooked", "--samples", "300", "--seed", "7"])
            .output()
            .expect("binary runs")
    };
    assert_eq!(run("1").stdout, run("4").stdout);
}

// ---------------------------------------------------------------------------
// membership
// ---------------------------------------------------------------------------

#[test]
fn membership_classifies_minkowski_points() {
    let dir = tempfile::tempdir().unwrap();
    let obj = write(dir.path(), "plane.json", E3_STANDARD);
    let pts = write(
        dir.path(),
        "points.json",
        "[[0.0, 1.0, 2.0], [3.0, 0.0, 0.0], [0.5, 0.7, 0.7], [-0.5, 0.7, -0.7], [0.0, 0.0, 0.0], [1.0, 2.0, 0.3]]",
    );
    let out = bin().arg("membership").arg(&obj).arg(&pts).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        stdout_lines(&out),
        ["StemInterior", "Spine", "Wing1", "Wing2", "Vertex", "Outside"]
    );
}

#[test]
fn membership_classifies_group_points() {
    let dir = tempfile::tempdir().unwrap();
    let obj = write(dir.path(), "plane.json", ADS_STANDARD);
    let t = 0.3f64;
    let pts = write(
        dir.path(),
        "points.json",
        &format!(
            "[[[1.0, 0.0], [0.0, 1.0]], [[{c}, {ms}], [{s}, {c}]], [[{e}, 0.0], [0.0, {einv}]]]",
            c = t.cos(),
            ms = -t.sin(),
            s = t.sin(),
            e = t.exp(),
            einv = (-t).exp(),
        ),
    );
    let out = bin().arg("membership").arg(&obj).arg(&pts).output().unwrap();
    assert!(out.status.success());
    // The rotation direction is timelike (stem), the diagonal direction is
    // the spine itself.
    assert_eq!(stdout_lines(&out), ["Vertex", "StemInterior", "Spine"]);
}

#[test]
fn membership_classifies_einstein_points() {
    let dir = tempfile::tempdir().unwrap();
    let obj = write(dir.path(), "cfg.json", CFG_STANDARD);
    let pts = write(
        dir.path(),
        "points.json",
        "[[0,0,0,1,0], [0,0,0,0,1], [0,1,1,0,0], [0,1,-1,0,0], [0.5,0.7,0.1,0.73,1.0]]",
    );
    let out = bin().arg("membership").arg(&obj).arg(&pts).output().unwrap();
    assert!(out.status.success());
    assert_eq!(
        stdout_lines(&out),
        ["Covertex", "Vertex", "Hingepoint1", "Hingepoint2", "Outside"]
    );
}

#[test]
fn membership_rejects_bad_input_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let obj = write(dir.path(), "plane.json", E3_STANDARD);
    let cfg = write(dir.path(), "cfg.json", CFG_STANDARD);
    let cases = [
        (obj.clone(), write(dir.path(), "bad.json", "not json")),
        // Points in the wrong geometry for the object.
        (obj.clone(), write(dir.path(), "p5.json", "[[0,0,0,1,0]]")),
        // A point off the null quadric.
        (cfg.clone(), write(dir.path(), "offq.json", "[[1,0,0,0,0.5]]")),
        // A non-unit spine direction.
        (
            write(dir.path(), "badplane.json", r#"{"vertex": [0,0,0], "spine_dir": [2,0,0]}"#),
            write(dir.path(), "okpts.json", "[[0,1,2]]"),
        ),
        // Missing file.
        (obj.clone(), dir.path().join("nope.json")),
    ];
    for (obj, pts) in cases {
        let out = bin().arg("membership").arg(&obj).arg(&pts).output().unwrap();
        assert_eq!(out.status.code(), Some(1), "obj {obj:?} pts {pts:?}");
    }
}

// ---------------------------------------------------------------------------
// adapted
// ---------------------------------------------------------------------------

#[test]
fn adapted_classifies_the_standard_configuration() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(dir.path(), "cfg.json", CFG_STANDARD);
    let out = bin().arg("adapted").arg(&cfg).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), ["adapted"]);
}

#[test]
fn adapted_detects_invariant_only_configurations() {
    // The inversion fixes q0 and q_inf individually (both lie on the
    // invariant hypersphere) and swaps the hingepoints q1 and q2, so the
    // surface is invariant without the configuration being adapted.
    let dir = tempfile::tempdir().unwrap();
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"q0": [1,0,0,1,1], "qinf": [-1,0,0,1,1], "q1": [0,0,1,1,-1], "q2": [0,0,1,-1,1]}"#,
    );
    let out = bin().arg("adapted").arg(&cfg).output().unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert_eq!(stdout_lines(&out), ["invariant-only"]);
}

#[test]
fn adapted_detects_unrelated_configurations() {
    // Translate the standard configuration off the hypersphere: the
    // inversion no longer preserves the quadruple.
    let t = ConformalMap5::translation(&MinkVec3::new(0.3, 0.0, 0.0));
    let std = StemConfiguration::standard();
    let cfg = StemConfiguration {
        q0: t.apply_point(&std.q0).unwrap(),
        q_inf: t.apply_point(&std.q_inf).unwrap(),
        q1: t.apply_point(&std.q1).unwrap(),
        q2: t.apply_point(&std.q2).unwrap(),
    };
    let dir = tempfile::tempdir().unwrap();
    let path = write(dir.path(), "cfg.json", &serde_json::to_string(&cfg).unwrap());
    let out = bin().arg("adapted").arg(&path).output().unwrap();
    assert!(out.status.success());
    assert_eq!(stdout_lines(&out), ["neither"]);
}

#[test]
fn adapted_rejects_invalid_configurations() {
    let dir = tempfile::tempdir().unwrap();
    // q1 is not incident to q0 and q_inf here (generic affine point).
    let cfg = write(
        dir.path(),
        "cfg.json",
        r#"{"q0": [0,0,0,0,1], "qinf": [0,0,0,1,0], "q1": [0.5,0.7,0.1,0.73,1.0], "q2": [0,1,-1,0,0]}"#,
    );
    let out = bin().arg("adapted").arg(&cfg).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
    // A crooked plane is not a configuration.
    let plane = write(dir.path(), "plane.json", E3_STANDARD);
    let out = bin().arg("adapted").arg(&plane).output().unwrap();
    assert_eq!(out.status.code(), Some(1));
}

// ---------------------------------------------------------------------------
// export-mesh
// ---------------------------------------------------------------------------

struct ObjMesh {
    vertices: Vec<[f64; 3]>,
    /// (group, zero-based vertex ids)
    faces: Vec<(String, [usize; 3])>,
}

fn parse_obj(text: &str) -> ObjMesh {
    let mut vertices = Vec::new();
    let mut faces = Vec::new();
    let mut group = String::new();
    for line in text.lines() {
        let mut parts = line.split_whitespace();
        match parts.next() {
            Some("g") => group = parts.next().expect("group name").to_string(),
            Some("v") => {
                let coords: Vec<f64> = parts.map(|p| p.parse().expect("coordinate")).collect();
                assert_eq!(coords.len(), 3, "vertex line {line:?}");
                assert!(coords.iter().all(|c| c.is_finite()));
                vertices.push([coords[0], coords[1], coords[2]]);
            }
            Some("f") => {
                let ids: Vec<usize> = parts.map(|p| p.parse().expect("index")).collect();
                assert_eq!(ids.len(), 3, "face line {line:?}");
                for id in &ids {
                    assert!(*id >= 1 && *id <= vertices.len(), "face index out of range");
                }
                faces.push((group.clone(), [ids[0] - 1, ids[1] - 1, ids[2] - 1]));
            }
            _ => {}
        }
    }
    ObjMesh { vertices, faces }
}

fn face_area(m: &ObjMesh, f: &[usize; 3]) -> f64 {
    let [a, b, c] = [m.vertices[f[0]], m.vertices[f[1]], m.vertices[f[2]]];
    let u = [b[0] - a[0], b[1] - a[1], b[2] - a[2]];
    let w = [c[0] - a[0], c[1] - a[1], c[2] - a[2]];
    let x = u[1] * w[2] - u[2] * w[1];
    let y = u[2] * w[0] - u[0] * w[2];
    let z = u[0] * w[1] - u[1] * w[0];
    0.5 * (x * x + y * y + z * z).sqrt()
}

fn export(dir: &Path, object: &str, resolution: &str) -> ObjMesh {
    let obj = write(dir, "object.json", object);
    let out_path = dir.join("mesh.obj");
    let out = bin()
        .arg("export-mesh")
        .arg(&obj)
        .args(["--resolution", resolution, "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(
        out.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    parse_obj(&std::fs::read_to_string(&out_path).unwrap())
}

#[test]
fn export_mesh_emits_three_stratum_groups_of_valid_faces() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = export(dir.path(), E3_STANDARD, "32");
    let groups: std::collections::BTreeSet<&str> =
        mesh.faces.iter().map(|(g, _)| g.as_str()).collect();
    assert_eq!(
        groups,
        ["stem", "wing1", "wing2"].into_iter().collect::<std::collections::BTreeSet<_>>()
    );
    for (_, f) in &mesh.faces {
        assert!(face_area(&mesh, f) > 1e-12, "degenerate face");
    }

    // Every vertex used by a face of a stratum group must classify into
    // that stratum's closure.
    let cp: CrookedPlaneE3 = serde_json::from_str(E3_STANDARD).unwrap();
    for (group, f) in &mesh.faces {
        for idx in f {
            let v = mesh.vertices[*idx];
            let tag = membership(&cp, &MinkVec3::new(v[0], v[1], v[2]));
            let ok = match group.as_str() {
                "stem" => matches!(
                    tag,
                    StratumTag::StemInterior | StratumTag::Hinge1 | StratumTag::Hinge2 | StratumTag::Vertex
                ),
                "wing1" => matches!(tag, StratumTag::Wing1 | StratumTag::Hinge1 | StratumTag::Spine | StratumTag::Vertex),
                "wing2" => matches!(tag, StratumTag::Wing2 | StratumTag::Hinge2 | StratumTag::Spine | StratumTag::Vertex),
                _ => false,
            };
            assert!(ok, "vertex {v:?} in group {group} classifies as {tag:?}");
        }
    }
}

#[test]
fn export_mesh_draws_the_group_model_in_the_affine_chart() {
    let dir = tempfile::tempdir().unwrap();
    let mesh = export(dir.path(), ADS_STANDARD, "16");
    let groups: std::collections::BTreeSet<&str> =
        mesh.faces.iter().map(|(g, _)| g.as_str()).collect();
    assert_eq!(
        groups,
        ["stem", "wing1", "wing2"].into_iter().collect::<std::collections::BTreeSet<_>>()
    );
    for (_, f) in &mesh.faces {
        assert!(face_area(&mesh, f) > 1e-12, "degenerate face");
    }

    // Chart vertices pull back to points of the plane's strata.
    let cp: AdSCrookedPlane = serde_json::from_str(ADS_STANDARD).unwrap();
    for (group, f) in &mesh.faces {
        for idx in f {
            let v = mesh.vertices[*idx];
            let p = crooked_core::embed::embed_mink(&MinkVec3::new(v[0], v[1], v[2]));
            let m = psi_inverse(&p).expect("mesh vertices stay off the hypersphere");
            let tag = membership_ads(&cp, &crooked_core::ads::AdSPoint::new(PSL2::new(m)));
            let ok = match group.as_str() {
                "stem" => matches!(
                    tag,
                    AdSStratumTag::StemInterior
                        | AdSStratumTag::Hinge1
                        | AdSStratumTag::Hinge2
                        | AdSStratumTag::Vertex
                ),
                "wing1" => matches!(
                    tag,
                    AdSStratumTag::Wing1 | AdSStratumTag::Hinge1 | AdSStratumTag::Spine | AdSStratumTag::Vertex
                ),
                "wing2" => matches!(
                    tag,
                    AdSStratumTag::Wing2 | AdSStratumTag::Hinge2 | AdSStratumTag::Spine | AdSStratumTag::Vertex
                ),
                _ => false,
            };
            assert!(ok, "vertex {v:?} in group {group} classifies as {tag:?}");
        }
    }
}

#[test]
fn export_mesh_rejects_bad_input_with_exit_one() {
    let dir = tempfile::tempdir().unwrap();
    let obj = write(dir.path(), "plane.json", E3_STANDARD);
    let cfg = write(dir.path(), "cfg.json", CFG_STANDARD);
    let out_path = dir.path().join("mesh.obj");

    let out = bin()
        .arg("export-mesh")
        .arg(&obj)
        .args(["--resolution", "1", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "resolution below 2");

    let out = bin()
        .arg("export-mesh")
        .arg(&cfg)
        .args(["--resolution", "8", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1), "configurations have no chart mesh");
}
