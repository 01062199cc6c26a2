//! `crooked`: construct crooked-plane objects, classify points against
//! them, run the verification suites, and export meshes.
//!
//! Exit codes: 0 success, 1 bad input, 2 verification failure.

mod io;
mod mesh;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::error::ErrorKind;
use clap::{Parser, Subcommand};

use crooked_core::crooked_ads::membership_ads;
use crooked_core::crooked_e3::membership;
use crooked_core::embed::{adaptedness_class, crooked_surface, cs_membership, AdaptednessClass};
use crooked_core::verify::{run_suite, RunConfig, Suite};

use crate::io::{load_object, load_points, GeomObject, PointsFile};

#[derive(Parser)]
#[command(name = "crooked", version, about = "Crooked-plane geometry toolkit")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Run a verification suite and print its JSON report
    Verify {
        /// core | sl2 | ads | crooked | einstein | main-theorem | all
        suite: String,
        /// RNG seed for the deterministic sampling plan
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Sampling budget per check, scaling each check's nominal count
        /// relative to the default of 10000
        #[arg(long)]
        samples: Option<usize>,
        /// Tolerance override, repeatable (e.g. --tol exp_matches_series=1e-9)
        #[arg(long = "tol", value_name = "NAME=VALUE")]
        tol: Vec<String>,
        /// Also write the JSON report to this file
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Classify points from a JSON file against a crooked object
    Membership {
        /// Crooked plane (Minkowski or anti-de Sitter) or stem configuration
        object: PathBuf,
        /// Points matching the object's geometry, one stratum tag printed per point
        points: PathBuf,
    },
    /// Report whether a stem configuration is adapted to the inversion
    Adapted {
        /// Stem configuration JSON file
        config: PathBuf,
    },
    /// Export a triangulated OBJ mesh of a crooked plane
    ExportMesh {
        /// Crooked plane (Minkowski or anti-de Sitter) JSON file
        object: PathBuf,
        /// Grid segments per parameter direction (at least 2)
        #[arg(long)]
        resolution: u32,
        /// Output OBJ path
        #[arg(long)]
        out: PathBuf,
    },
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version displays are successes; everything else is
            // bad input, which this tool reports as exit 1 (exit 2 is
            // reserved for verification failures).
            let code = match e.kind() {
                ErrorKind::DisplayHelp | ErrorKind::DisplayVersion => 0,
                _ => 1,
            };
            let _ = e.print();
            return ExitCode::from(code);
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}

fn run(cli: Cli) -> Result<ExitCode, String> {
    match cli.cmd {
        Cmd::Verify { suite, seed, samples, tol, out } => cmd_verify(&suite, seed, samples, &tol, out.as_deref()),
        Cmd::Membership { object, points } => cmd_membership(&object, &points),
        Cmd::Adapted { config } => cmd_adapted(&config),
        Cmd::ExportMesh { object, resolution, out } => cmd_export_mesh(&object, resolution, &out),
    }
}

fn cmd_verify(
    suite: &str,
    seed: u64,
    samples: Option<usize>,
    tol: &[String],
    out: Option<&std::path::Path>,
) -> Result<ExitCode, String> {
    let suite: Suite = suite.parse().map_err(|e| format!("{e}"))?;
    let mut cfg = RunConfig::new(seed);
    if let Some(samples) = samples {
        cfg.samples = samples;
    }
    for spec in tol {
        let (name, value) = spec
            .split_once('=')
            .ok_or_else(|| format!("tolerance override '{spec}' is not NAME=VALUE"))?;
        let value: f64 = value
            .parse()
            .map_err(|_| format!("tolerance value '{value}' is not a number"))?;
        cfg.tolerances.insert(name.to_string(), value);
    }
    let report = run_suite(suite, &cfg).map_err(|e| format!("{e}"))?;
    let json = serde_json::to_string_pretty(&report).map_err(|e| format!("{e}"))?;
    println!("{json}");
    if let Some(path) = out {
        std::fs::write(path, format!("{json}\n"))
            .map_err(|e| format!("{}: {e}", path.display()))?;
    }
    Ok(if report.pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    })
}

fn cmd_membership(object: &std::path::Path, points: &std::path::Path) -> Result<ExitCode, String> {
    let object = load_object(object)?;
    let points = load_points(points, &object)?;
    match (object, points) {
        (GeomObject::PlaneE3(cp), PointsFile::Mink(pts)) => {
            for p in pts {
                println!("{:?}", membership(&cp, &p));
            }
        }
        (GeomObject::PlaneAdS(cp), PointsFile::Group(pts)) => {
            for p in pts {
                println!("{:?}", membership_ads(&cp, &p));
            }
        }
        (GeomObject::Configuration(cfg), PointsFile::Ein(pts)) => {
            let cs = crooked_surface(&cfg).map_err(|e| format!("invalid stem configuration: {e}"))?;
            for p in pts {
                println!("{:?}", cs_membership(&cs, &p));
            }
        }
        _ => unreachable!("points are parsed against the object kind"),
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_adapted(config: &std::path::Path) -> Result<ExitCode, String> {
    let object = load_object(config)?;
    let GeomObject::Configuration(cfg) = object else {
        return Err("adapted expects a stem configuration file".to_string());
    };
    // Validate the configuration's incidence structure before classifying.
    crooked_surface(&cfg).map_err(|e| format!("invalid stem configuration: {e}"))?;
    let verdict = match adaptedness_class(&cfg) {
        AdaptednessClass::Adapted => "adapted",
        AdaptednessClass::InvariantOnly => "invariant-only",
        AdaptednessClass::Neither => "neither",
    };
    println!("{verdict}");
    Ok(ExitCode::SUCCESS)
}

fn cmd_export_mesh(
    object: &std::path::Path,
    resolution: u32,
    out: &std::path::Path,
) -> Result<ExitCode, String> {
    if resolution < 2 {
        return Err("resolution must be at least 2".to_string());
    }
    let mesh = match load_object(object)? {
        GeomObject::PlaneE3(cp) => mesh::mesh_e3(&cp, resolution as usize)?,
        GeomObject::PlaneAdS(cp) => mesh::mesh_ads(&cp, resolution as usize)?,
        GeomObject::Configuration(_) => {
            return Err("export-mesh expects a crooked plane, not a stem configuration".to_string())
        }
    };
    std::fs::write(out, mesh.to_obj()).map_err(|e| format!("{}: {e}", out.display()))?;
    Ok(ExitCode::SUCCESS)
}
