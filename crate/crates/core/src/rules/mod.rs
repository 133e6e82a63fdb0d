//! Certified smoothness reductions, face pruning and hole dimensions.
//!
//! Every rule returns a [`Certificate`]: either a witness that reducing the
//! requested smoothness keeps `Q` lower-acyclic, or the reason the rule does
//! not apply. Rules are sufficient conditions only; the kernel oracle in
//! [`crate::complex`] remains the ground truth.

mod polygonal;
mod prune;
mod reduce;
mod regularity;
mod tmesh;
mod triangulation;

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use serde_json::Value;

use crate::complex::SmoothnessDistribution;
use crate::mesh::{DegreeDistribution, Mesh};
use crate::polyspace::PolyKind;
use crate::Error;

pub use polygonal::{polygonal_edge_rule, polygonal_face_rule};
pub use prune::{prunable_faces, prune, pruned_dimension, Pruned};
pub use reduce::{reduce, ReductionOutcome, ReductionRequest, Step, StepReport};
pub use regularity::{omega, omega_formula, saturation_degree};
pub use tmesh::{segment_weight, tmesh_edge_rule, tmesh_segment_rule, SegmentWeight};
pub use triangulation::{face_removal_cokernel_dim, tri_edge_rule, triangle_removal_rule};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Rule {
    TriEdge,
    TmeshEdge,
    PolygonalEdge,
    TmeshSegment,
    TriangleRemoval,
    PolygonalFace,
}

impl Rule {
    pub const ALL: [Rule; 6] = [
        Rule::TriEdge,
        Rule::TmeshEdge,
        Rule::PolygonalEdge,
        Rule::TmeshSegment,
        Rule::TriangleRemoval,
        Rule::PolygonalFace,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Rule::TriEdge => "tri_edge",
            Rule::TmeshEdge => "tmesh_edge",
            Rule::PolygonalEdge => "polygonal_edge",
            Rule::TmeshSegment => "tmesh_segment",
            Rule::TriangleRemoval => "triangle_removal",
            Rule::PolygonalFace => "polygonal_face",
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Rule {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        Rule::ALL
            .into_iter()
            .find(|r| r.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown rule {s:?}")))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Certified,
    NotApplicable,
}

/// Cells a certificate talks about. Edges are given by endpoint ids.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Cells {
    pub edges: Vec<[usize; 2]>,
    pub vertices: Vec<usize>,
    pub faces: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct Certificate {
    pub rule: Rule,
    pub verdict: Verdict,
    pub cells: Cells,
    pub reason: String,
    pub evidence: BTreeMap<String, Value>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub warnings: Vec<String>,
}

impl Certificate {
    fn new(rule: Rule, cells: Cells) -> Self {
        Certificate {
            rule,
            verdict: Verdict::NotApplicable,
            cells,
            reason: String::new(),
            evidence: BTreeMap::new(),
            warnings: Vec::new(),
        }
    }

    fn certified(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::Certified;
        self.reason = reason.into();
        self
    }

    fn not_applicable(mut self, reason: impl Into<String>) -> Self {
        self.verdict = Verdict::NotApplicable;
        self.reason = reason.into();
        self
    }

    fn with(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.evidence.insert(key.to_string(), value.into());
        self
    }

    pub fn is_certified(&self) -> bool {
        self.verdict == Verdict::Certified
    }
}

fn edge_cell(mesh: &Mesh, e: usize) -> [usize; 2] {
    let (u, v) = mesh.edge(e).ends;
    [u, v]
}

/// The common total degree of all faces around the given vertices.
fn uniform_total_degree(mesh: &Mesh, deg: &DegreeDistribution, vertices: &[usize]) -> Option<u32> {
    if deg.kind() != PolyKind::TotalDegree {
        return None;
    }
    let mut ms = vertices
        .iter()
        .flat_map(|&v| mesh.vertex_faces(v).iter().map(|&f| deg.degrees()[f]));
    let first = ms.next()?;
    ms.all(|m| m == first).then_some(first)
}

/// Orders of the edges at `v` other than -1, if they all equal `r`.
fn incident_orders_are(
    mesh: &Mesh,
    r: &SmoothnessDistribution,
    v: usize,
    order: i64,
    allow_free: bool,
) -> bool {
    mesh.vertex_edges(v)
        .iter()
        .all(|&e| r.get(e) == order || (allow_free && r.get(e) == -1))
}
