//! Command-line front end: reads a JSON mesh file and prints JSON to stdout.
//!
//! Exit status is 0 on success, 1 when the input is invalid or a request
//! cannot be carried out, and 2 on usage errors.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde_json::{json, Value};
use splinedim::exactla::parse_rational;
use splinedim::io::{MeshFile, Model, Report};
use splinedim::mesh::Axis;
use splinedim::rules::{prune, pruned_dimension, reduce, ReductionRequest, Rule, Step};
use splinedim::{build_complexes, spline_dim_kernel, Error, GradedComplex};

#[derive(Parser)]
#[command(
    name = "splinedim",
    version,
    about = "Exact dimensions of mixed-smoothness spline spaces"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check a mesh file and summarise the mesh.
    Validate { file: PathBuf },
    /// Full dimension report for Q^r.
    Dim { file: PathBuf },
    /// Homology of the ideal, chain and quotient complexes.
    Homology { file: PathBuf },
    /// Lower smoothness step by step, certifying each step.
    Reduce {
        file: PathBuf,
        /// `i,j=S`, optionally `i,j=S@rule`.
        #[arg(long = "edge", value_name = "I,J=S")]
        edges: Vec<String>,
        /// `h:COORD=S` or `v:COORD[:LO..HI]=S`, optionally `...=S@rule`.
        #[arg(long = "segment", value_name = "AXIS:COORD=S")]
        segments: Vec<String>,
        /// Face id whose edges all drop to -1, optionally `F@rule`.
        #[arg(long = "face", value_name = "F")]
        faces: Vec<String>,
        /// Also write the reduced mesh file here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Remove unconstrained faces and report the hole dimension.
    Prune {
        file: PathBuf,
        /// Only remove these faces.
        #[arg(long = "face", value_name = "F")]
        faces: Vec<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Spline dimension from the kernel of the top boundary map only.
    Oracle { file: PathBuf },
}

enum Failure {
    Invalid(Value),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::InvalidMesh(v) => Failure::Invalid(json!({"valid": false, "violations": v})),
            other => Failure::Invalid(json!({"error": other.to_string()})),
        }
    }
}

fn load(path: &Path) -> Result<Model, Failure> {
    let text = if path.as_os_str() == "-" {
        std::io::read_to_string(std::io::stdin())
    } else {
        std::fs::read_to_string(path)
    }
    .map_err(|e| Failure::Invalid(json!({"error": format!("{}: {e}", path.display())})))?;
    let file = MeshFile::from_json(&text).map_err(|e| {
        Failure::Invalid(json!({
            "valid": false,
            "violations": [{"rule": "parse", "cells": [], "message": e.to_string()}],
        }))
    })?;
    let violations = file.violations()?;
    if !violations.is_empty() {
        return Err(Failure::Invalid(
            json!({"valid": false, "violations": violations}),
        ));
    }
    Ok(file.to_model()?)
}

fn split_rule(spec: &str) -> Result<(&str, Option<Rule>), Failure> {
    match spec.split_once('@') {
        Some((body, rule)) => Ok((
            body,
            Some(
                rule.parse()
                    .map_err(|e: Error| Failure::Usage(e.to_string()))?,
            ),
        )),
        None => Ok((spec, None)),
    }
}

fn parse_order(s: &str, whole: &str) -> Result<i64, Failure> {
    s.trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{whole:?}: order must be an integer")))
}

fn parse_edge(spec: &str) -> Result<Step, Failure> {
    let (body, rule) = split_rule(spec)?;
    let bad = || Failure::Usage(format!("{spec:?}: expected I,J=S"));
    let (ends, s) = body.split_once('=').ok_or_else(bad)?;
    let (i, j) = ends.split_once(',').ok_or_else(bad)?;
    Ok(Step::Edge {
        ends: (
            i.trim().parse().map_err(|_| bad())?,
            j.trim().parse().map_err(|_| bad())?,
        ),
        s: parse_order(s, spec)?,
        rule,
    })
}

fn parse_segment(spec: &str) -> Result<Step, Failure> {
    let (body, rule) = split_rule(spec)?;
    let bad = |why: &str| Failure::Usage(format!("{spec:?}: {why}"));
    let (line, s) = body
        .split_once('=')
        .ok_or_else(|| bad("expected AXIS:COORD=S"))?;
    let mut parts = line.split(':');
    let axis = match parts.next().map(str::trim) {
        Some("h") | Some("horizontal") => Axis::Horizontal,
        Some("v") | Some("vertical") => Axis::Vertical,
        _ => return Err(bad("axis must be h or v")),
    };
    let coord = parts.next().ok_or_else(|| bad("missing coordinate"))?;
    let coord = parse_rational(coord).map_err(|e| bad(&e.to_string()))?;
    let range = match parts.next() {
        None => None,
        Some(r) => {
            let (lo, hi) = r
                .split_once("..")
                .ok_or_else(|| bad("range must be LO..HI"))?;
            Some((
                parse_rational(lo).map_err(|e| bad(&e.to_string()))?,
                parse_rational(hi).map_err(|e| bad(&e.to_string()))?,
            ))
        }
    };
    if parts.next().is_some() {
        return Err(bad("too many ':' fields"));
    }
    Ok(Step::Segment {
        axis,
        coord,
        range,
        s: parse_order(s, spec)?,
        rule,
    })
}

fn parse_face(spec: &str) -> Result<Step, Failure> {
    let (body, rule) = split_rule(spec)?;
    let face = body
        .trim()
        .parse()
        .map_err(|_| Failure::Usage(format!("{spec:?}: expected a face id")))?;
    Ok(Step::Face { face, rule })
}

/// Steps in command-line order, across all three flags.
fn ordered_steps(matches: &ArgMatches) -> Result<Vec<Step>, Failure> {
    let mut tagged: Vec<(usize, Step)> = Vec::new();
    type Parse = fn(&str) -> Result<Step, Failure>;
    let flags: [(&str, Parse); 3] = [
        ("edges", parse_edge),
        ("segments", parse_segment),
        ("faces", parse_face),
    ];
    for (id, parse) in flags {
        let (Some(values), Some(idx)) = (matches.get_many::<String>(id), matches.indices_of(id))
        else {
            continue;
        };
        for (v, i) in values.zip(idx) {
            tagged.push((i, parse(v)?));
        }
    }
    tagged.sort_by_key(|(i, _)| *i);
    Ok(tagged.into_iter().map(|(_, s)| s).collect())
}

fn complex_json(c: &GradedComplex) -> Value {
    json!({
        "dims": c.dims,
        "euler_characteristic": c.euler_characteristic(),
        "homology": c.homology(),
    })
}

fn write_mesh(path: &Option<PathBuf>, file: &MeshFile) -> Result<(), Failure> {
    if let Some(p) = path {
        std::fs::write(p, file.to_json() + "\n")
            .map_err(|e| Failure::Invalid(json!({"error": format!("{}: {e}", p.display())})))?;
    }
    Ok(())
}

fn run(command: Command, matches: &ArgMatches) -> Result<Value, Failure> {
    match command {
        Command::Validate { file } => {
            let m = load(&file)?;
            let mesh = &m.mesh;
            let class = if mesh.is_triangulation() {
                "triangulation"
            } else if mesh.is_tmesh() {
                "tmesh"
            } else {
                "polygonal"
            };
            Ok(json!({
                "valid": true,
                "class": class,
                "vertices": mesh.num_vertices(),
                "edges": mesh.num_edges(),
                "faces": mesh.num_faces(),
                "interior_edges": mesh.interior_edges().len(),
                "interior_vertices": mesh.interior_vertices().len(),
                "holes": mesh.hole_count(),
            }))
        }
        Command::Dim { file } => {
            let m = load(&file)?;
            Ok(serde_json::to_value(Report::compute(&m)?).expect("report serializes"))
        }
        Command::Homology { file } => {
            let m = load(&file)?;
            let c = build_complexes(&m.mesh, &m.deg, &m.r)?;
            Ok(json!({
                "quotient": complex_json(&c.quotient),
                "ideal": complex_json(&c.ideal),
                "chain": complex_json(&c.chain),
            }))
        }
        Command::Reduce { file, out, .. } => {
            let m = load(&file)?;
            let sub = matches
                .subcommand_matches("reduce")
                .expect("reduce matches");
            let request = ReductionRequest {
                steps: ordered_steps(sub)?,
            };
            let outcome = reduce(&m.mesh, &m.deg, &m.r, &request)?;
            let reduced = Model {
                mesh: m.mesh.clone(),
                deg: m.deg.clone(),
                r: outcome.s.clone(),
            };
            let mut report = Report::compute(&reduced)?;
            report.certificates = outcome
                .steps
                .iter()
                .flat_map(|s| s.certificates.clone())
                .collect();
            let new_file = MeshFile::from_model(&reduced);
            write_mesh(&out, &new_file)?;
            Ok(json!({
                "verdict": outcome.verdict(),
                "steps": outcome.steps,
                "report": report,
                "mesh": new_file,
            }))
        }
        Command::Prune { file, faces, out } => {
            let m = load(&file)?;
            let subset = (!faces.is_empty()).then_some(faces.as_slice());
            let p = prune(&m.mesh, &m.deg, &m.r, subset)?;
            let pruned = Model {
                mesh: p.mesh.clone(),
                deg: p.deg.clone(),
                r: p.r.clone(),
            };
            let mut report = Report::compute(&pruned)?;
            report.pruned_faces = Some(p.faces.clone());
            let mut note = Value::Null;
            match pruned_dimension(&m.mesh, &m.deg, &m.r, &p.faces) {
                Ok(d) => report.pruned_dimension = Some(d),
                Err(e @ Error::FormulaInapplicable(_)) => note = json!(e.to_string()),
                Err(e) => return Err(e.into()),
            }
            let new_file = MeshFile::from_model(&pruned);
            write_mesh(&out, &new_file)?;
            let mut body = json!({"report": report, "mesh": new_file});
            if !note.is_null() {
                body["note"] = note;
            }
            Ok(body)
        }
        Command::Oracle { file } => {
            let m = load(&file)?;
            Ok(json!({"kernel_dim": spline_dim_kernel(&m.mesh, &m.deg, &m.r)?}))
        }
    }
}

fn emit(v: &Value) {
    // a closed pipe is not worth a panic
    let _ = writeln!(
        std::io::stdout(),
        "{}",
        serde_json::to_string_pretty(v).expect("json")
    );
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = match Cli::from_arg_matches(&matches) {
        Ok(c) => c,
        Err(e) => e.exit(),
    };
    match run(cli.command, &matches) {
        Ok(v) => {
            emit(&v);
            ExitCode::SUCCESS
        }
        Err(Failure::Invalid(v)) => {
            emit(&v);
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
