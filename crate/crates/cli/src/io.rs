//! JSON input formats.
//!
//! Objects are distinguished by their key sets:
//! - Minkowski crooked plane: `{"vertex": [x,y,z], "spine_dir": [x,y,z]}`
//! - anti-de Sitter crooked plane: `{"g": [[a,b],[c,d]], "s": [[a,b],[c,d]]}`
//! - stem configuration: `{"q0": [..5], "qinf": [..5], "q1": [..5], "q2": [..5]}`
//!
//! Points files hold a JSON array in the object's own geometry: Minkowski
//! triples, group elements as 2x2 matrices, or null 5-vectors.

use std::path::Path;

use crooked_core::ads::AdSPoint;
use crooked_core::crooked_ads::AdSCrookedPlane;
use crooked_core::crooked_e3::CrookedPlaneE3;
use crooked_core::ein::{point, ProjectivePoint5, Vec5};
use crooked_core::embed::StemConfiguration;
use crooked_core::sl2::{Mat2, MinkVec3, PSL2};

pub enum GeomObject {
    PlaneE3(CrookedPlaneE3),
    PlaneAdS(AdSCrookedPlane),
    Configuration(StemConfiguration),
}

fn read_json(path: &Path) -> Result<serde_json::Value, String> {
    let text = std::fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))?;
    serde_json::from_str(&text).map_err(|e| format!("{}: {e}", path.display()))
}

pub fn load_object(path: &Path) -> Result<GeomObject, String> {
    let value = read_json(path)?;
    let keys = value
        .as_object()
        .ok_or_else(|| format!("{}: expected a JSON object", path.display()))?;
    if keys.contains_key("vertex") && keys.contains_key("spine_dir") {
        let cp: CrookedPlaneE3 = serde_json::from_value(value)
            .map_err(|e| format!("{}: invalid crooked plane: {e}", path.display()))?;
        Ok(GeomObject::PlaneE3(cp))
    } else if keys.contains_key("g") && keys.contains_key("s") {
        let cp: AdSCrookedPlane = serde_json::from_value(value)
            .map_err(|e| format!("{}: invalid crooked plane: {e}", path.display()))?;
        Ok(GeomObject::PlaneAdS(cp))
    } else if ["q0", "qinf", "q1", "q2"].iter().all(|k| keys.contains_key(*k)) {
        let cfg: StemConfiguration = serde_json::from_value(value)
            .map_err(|e| format!("{}: invalid stem configuration: {e}", path.display()))?;
        Ok(GeomObject::Configuration(cfg))
    } else {
        Err(format!(
            "{}: unrecognized object (expected vertex/spine_dir, g/s, or q0/qinf/q1/q2 keys)",
            path.display()
        ))
    }
}

pub enum PointsFile {
    Mink(Vec<MinkVec3>),
    Group(Vec<AdSPoint>),
    Ein(Vec<ProjectivePoint5>),
}

pub fn load_points(path: &Path, object: &GeomObject) -> Result<PointsFile, String> {
    let value = read_json(path)?;
    match object {
        GeomObject::PlaneE3(_) => {
            let raw: Vec<[f64; 3]> = serde_json::from_value(value)
                .map_err(|e| format!("{}: expected an array of [x, y, z]: {e}", path.display()))?;
            Ok(PointsFile::Mink(raw.into_iter().map(MinkVec3::from).collect()))
        }
        GeomObject::PlaneAdS(_) => {
            let raw: Vec<Mat2> = serde_json::from_value(value).map_err(|e| {
                format!("{}: expected an array of [[a, b], [c, d]]: {e}", path.display())
            })?;
            let mut pts = Vec::with_capacity(raw.len());
            for (i, m) in raw.into_iter().enumerate() {
                let det = m.det();
                if det <= 0.0 {
                    return Err(format!(
                        "{}: point {i} has determinant {det}, not positive",
                        path.display()
                    ));
                }
                pts.push(AdSPoint::new(PSL2::from(m)));
            }
            Ok(PointsFile::Group(pts))
        }
        GeomObject::Configuration(_) => {
            let raw: Vec<[f64; 5]> = serde_json::from_value(value).map_err(|e| {
                format!("{}: expected an array of [x, y, z, u, v]: {e}", path.display())
            })?;
            let mut pts = Vec::with_capacity(raw.len());
            for (i, v) in raw.into_iter().enumerate() {
                let p = point(&Vec5::new(v[0], v[1], v[2], v[3], v[4]))
                    .map_err(|e| format!("{}: point {i}: {e}", path.display()))?;
                pts.push(p);
            }
            Ok(PointsFile::Ein(pts))
        }
    }
}
