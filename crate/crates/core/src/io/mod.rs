//! JSON mesh files and dimension reports.
//!
//! Edges are implicit in the face loops. Smoothness overrides are keyed by
//! the two endpoint ids, `"i,j"`. Rationals are written as `"p/q"` strings
//! and integers may be given as plain numbers.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::complex::{build_complexes, spline_dim_kernel, SmoothnessDistribution};
use crate::exactla::{format_rational, parse_rational, Rational};
use crate::mesh::{validate, DegreeDistribution, Mesh, Point, Violation};
use crate::polyspace::PolyKind;
use crate::rules::Certificate;
use crate::{Error, Result};

pub const FORMAT_VERSION: u32 = 1;

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Coord {
    Int(i64),
    Text(String),
}

impl Coord {
    fn value(&self) -> Result<Rational> {
        match self {
            Coord::Int(n) => Ok(Rational::from_integer((*n).into())),
            Coord::Text(s) => parse_rational(s),
        }
    }

    fn from_value(q: &Rational) -> Coord {
        let text = format_rational(q);
        match text.parse::<i64>() {
            Ok(n) => Coord::Int(n),
            Err(_) => Coord::Text(text),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum KindName {
    Total,
    Bidegree,
}

impl From<KindName> for PolyKind {
    fn from(k: KindName) -> PolyKind {
        match k {
            KindName::Total => PolyKind::TotalDegree,
            KindName::Bidegree => PolyKind::Bidegree,
        }
    }
}

impl From<PolyKind> for KindName {
    fn from(k: PolyKind) -> KindName {
        match k {
            PolyKind::TotalDegree => KindName::Total,
            PolyKind::Bidegree => KindName::Bidegree,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DegreeSection {
    pub kind: KindName,
    pub default: u32,
    /// Face id to degree.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, u32>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SmoothnessSection {
    /// Order on interior edges; boundary edges are always -1.
    pub default: i64,
    /// `"i,j"` to order.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub overrides: BTreeMap<String, i64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MeshFile {
    pub version: u32,
    pub vertices: Vec<[Coord; 2]>,
    pub faces: Vec<Vec<usize>>,
    pub degree: DegreeSection,
    pub smoothness: SmoothnessSection,
}

/// A parsed and validated spline problem.
#[derive(Clone, Debug)]
pub struct Model {
    pub mesh: Mesh,
    pub deg: DegreeDistribution,
    pub r: SmoothnessDistribution,
}

fn edge_key(key: &str) -> Result<(usize, usize)> {
    let bad = || Error::Parse(format!("edge key {key:?} is not \"i,j\""));
    let (a, b) = key.split_once(',').ok_or_else(bad)?;
    Ok((
        a.trim().parse().map_err(|_| bad())?,
        b.trim().parse().map_err(|_| bad())?,
    ))
}

fn most_common<T: Ord + Copy>(values: impl Iterator<Item = T>) -> Option<T> {
    let mut counts: BTreeMap<T, usize> = BTreeMap::new();
    for v in values {
        *counts.entry(v).or_default() += 1;
    }
    // ties go to the smallest value
    counts.iter().rev().max_by_key(|(_, &c)| c).map(|(&v, _)| v)
}

impl MeshFile {
    pub fn from_json(text: &str) -> Result<MeshFile> {
        let file: MeshFile = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
        if file.version != FORMAT_VERSION {
            return Err(Error::Parse(format!(
                "unsupported version {}, expected {FORMAT_VERSION}",
                file.version
            )));
        }
        Ok(file)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("mesh file serializes")
    }

    pub fn points(&self) -> Result<Vec<Point>> {
        self.vertices
            .iter()
            .map(|[x, y]| Ok(Point::new(x.value()?, y.value()?)))
            .collect()
    }

    /// Geometric and combinatorial problems with the mesh, empty if valid.
    pub fn violations(&self) -> Result<Vec<Violation>> {
        Ok(validate(&self.points()?, &self.faces))
    }

    pub fn to_model(&self) -> Result<Model> {
        let mesh = Mesh::new(self.points()?, self.faces.clone())?;
        let mut degrees = vec![self.degree.default; mesh.num_faces()];
        for (key, &m) in &self.degree.overrides {
            let f: usize = key
                .trim()
                .parse()
                .map_err(|_| Error::Parse(format!("face key {key:?} is not an index")))?;
            *degrees
                .get_mut(f)
                .ok_or_else(|| Error::Degree(format!("override for missing face {f}")))? = m;
        }
        let deg = DegreeDistribution::new(self.degree.kind.into(), degrees);
        deg.check(&mesh)?;

        let default = self.smoothness.default;
        let mut values: Vec<i64> = mesh
            .edges()
            .iter()
            .map(|e| if e.interior { default } else { -1 })
            .collect();
        for (key, &s) in &self.smoothness.overrides {
            let (i, j) = edge_key(key)?;
            let e = mesh
                .edge_between(i, j)
                .ok_or_else(|| Error::Smoothness(format!("override for missing edge {i},{j}")))?;
            values[e] = s;
        }
        let r = SmoothnessDistribution::new(&mesh, values)?;
        Ok(Model { mesh, deg, r })
    }

    /// Canonical file for a model: integer coordinates as numbers, the most
    /// common degree and interior order as defaults.
    pub fn from_model(model: &Model) -> MeshFile {
        let Model { mesh, deg, r } = model;
        let m_default = most_common(deg.degrees().iter().copied()).unwrap_or(0);
        let overrides = deg
            .degrees()
            .iter()
            .enumerate()
            .filter(|&(_, &m)| m != m_default)
            .map(|(f, &m)| (f.to_string(), m))
            .collect();
        let interior = mesh.interior_edges();
        let s_default = most_common(interior.iter().map(|&e| r.get(e))).unwrap_or(-1);
        let s_overrides = interior
            .iter()
            .filter(|&&e| r.get(e) != s_default)
            .map(|&e| {
                let (a, b) = mesh.edge(e).ends;
                (format!("{a},{b}"), r.get(e))
            })
            .collect();
        MeshFile {
            version: FORMAT_VERSION,
            vertices: mesh
                .vertices()
                .iter()
                .map(|p| [Coord::from_value(&p.x), Coord::from_value(&p.y)])
                .collect(),
            faces: mesh.face_loops(),
            degree: DegreeSection {
                kind: deg.kind().into(),
                default: m_default,
                overrides,
            },
            smoothness: SmoothnessSection {
                default: s_default,
                overrides: s_overrides,
            },
        }
    }
}

pub fn parse_model(text: &str) -> Result<Model> {
    MeshFile::from_json(text)?.to_model()
}

/// Homology of `Q^r` together with the kernel dimension.
#[derive(Clone, Debug, Serialize)]
pub struct Report {
    /// Ranks of the chain groups at positions 2, 1, 0.
    pub dims: [usize; 3],
    pub euler_characteristic: i64,
    /// `h_2, h_1, h_0`.
    pub homology: [usize; 3],
    pub kernel_dim: usize,
    pub lower_acyclic: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruned_faces: Option<Vec<usize>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub pruned_dimension: Option<i64>,
}

impl Report {
    pub fn compute(model: &Model) -> Result<Report> {
        let q = build_complexes(&model.mesh, &model.deg, &model.r)?.quotient;
        let homology = q.homology();
        let kernel_dim = spline_dim_kernel(&model.mesh, &model.deg, &model.r)?;
        let chi = q.euler_characteristic();
        debug_assert_eq!(
            kernel_dim as i64,
            chi + homology[1] as i64 - homology[2] as i64
        );
        Ok(Report {
            dims: q.dims,
            euler_characteristic: chi,
            homology,
            kernel_dim,
            lower_acyclic: homology[1] == 0 && homology[2] == 0,
            certificates: Vec::new(),
            pruned_faces: None,
            pruned_dimension: None,
        })
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    const SQUARE: &str = r#"{
        "version": 1,
        "vertices": [[0, 0], [1, 0], [1, 1], ["0", "2/2"]],
        "faces": [[0, 1, 3], [1, 2, 3]],
        "degree": {"kind": "total", "default": 2},
        "smoothness": {"default": 1}
    }"#;

    #[test]
    fn parse_and_report() {
        let model = parse_model(SQUARE).unwrap();
        let rep = Report::compute(&model).unwrap();
        assert_eq!(rep.kernel_dim, 7);
        assert_eq!(rep.homology, [7, 0, 0]);
        assert!(rep.lower_acyclic);
    }

    #[test]
    fn round_trip() {
        let model = parse_model(SQUARE).unwrap();
        let file = MeshFile::from_model(&model);
        let again = parse_model(&file.to_json()).unwrap();
        assert_eq!(again.mesh.vertices(), model.mesh.vertices());
        assert_eq!(again.mesh.face_loops(), model.mesh.face_loops());
        assert_eq!(again.r, model.r);
        assert_eq!(again.deg, model.deg);
        assert_eq!(MeshFile::from_model(&again).to_json(), file.to_json());
    }

    #[test]
    fn boundary_override_rejected() {
        let text = SQUARE.replace(
            r#""default": 1}"#,
            r#""default": 1, "overrides": {"0,1": 0}}"#,
        );
        assert!(matches!(parse_model(&text), Err(Error::Smoothness(_))));
        let ok = SQUARE.replace(
            r#""default": 1}"#,
            r#""default": 1, "overrides": {"1,0": -1, "3,1": 0}}"#,
        );
        let model = parse_model(&ok).unwrap();
        assert_eq!(model.r.get(model.mesh.edge_between(1, 3).unwrap()), 0);
    }

    #[test]
    fn bad_inputs() {
        assert!(matches!(parse_model("{"), Err(Error::Parse(_))));
        assert!(parse_model(&SQUARE.replace("\"version\": 1", "\"version\": 9")).is_err());
        assert!(parse_model(&SQUARE.replace("\"2/2\"", "\"1/0\"")).is_err());
        let crossing = SQUARE.replace("[[0, 1, 3], [1, 2, 3]]", "[[0, 1, 2], [0, 1, 3]]");
        let file = MeshFile::from_json(&crossing).unwrap();
        assert!(!file.violations().unwrap().is_empty());
    }
}
