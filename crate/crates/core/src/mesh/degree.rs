use super::Mesh;
use crate::polyspace::{PolyKind, PolySpaceSpec};
use crate::{Error, Result};

/// Polynomial space per face. All faces share one kind, so spaces on
/// neighbouring faces are always nested and sums reduce to maxima.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DegreeDistribution {
    kind: PolyKind,
    degrees: Vec<u32>,
}

impl DegreeDistribution {
    pub fn uniform(kind: PolyKind, m: u32, faces: usize) -> Self {
        DegreeDistribution {
            kind,
            degrees: vec![m; faces],
        }
    }

    pub fn new(kind: PolyKind, degrees: Vec<u32>) -> Self {
        DegreeDistribution { kind, degrees }
    }

    pub fn from_specs(specs: &[PolySpaceSpec]) -> Result<Self> {
        let kind = specs
            .first()
            .ok_or_else(|| Error::Degree("no faces".into()))?
            .kind;
        if specs.iter().any(|s| s.kind != kind) {
            return Err(Error::Degree(
                "total-degree and bidegree spaces cannot be mixed; neighbouring spaces would not be nested".into(),
            ));
        }
        Ok(DegreeDistribution {
            kind,
            degrees: specs.iter().map(|s| s.m).collect(),
        })
    }

    pub fn kind(&self) -> PolyKind {
        self.kind
    }

    pub fn degrees(&self) -> &[u32] {
        &self.degrees
    }

    pub fn check(&self, mesh: &Mesh) -> Result<()> {
        if self.degrees.len() != mesh.num_faces() {
            return Err(Error::Degree(format!(
                "{} degrees for {} faces",
                self.degrees.len(),
                mesh.num_faces()
            )));
        }
        Ok(())
    }

    pub fn face_spec(&self, f: usize) -> PolySpaceSpec {
        PolySpaceSpec {
            kind: self.kind,
            m: self.degrees[f],
        }
    }

    fn max_over(&self, faces: &[usize]) -> PolySpaceSpec {
        PolySpaceSpec {
            kind: self.kind,
            m: faces.iter().map(|&f| self.degrees[f]).max().unwrap_or(0),
        }
    }

    /// `P_τ`: the largest space among the faces next to the edge.
    pub fn edge_spec(&self, mesh: &Mesh, e: usize) -> PolySpaceSpec {
        self.max_over(&mesh.edge(e).faces)
    }

    /// `P_γ`: the largest space among the faces around the vertex.
    pub fn vertex_spec(&self, mesh: &Mesh, v: usize) -> PolySpaceSpec {
        self.max_over(mesh.vertex_faces(v))
    }

    /// Restriction to the kept faces, given old ids in new order.
    pub fn restrict(&self, kept_faces: &[usize]) -> DegreeDistribution {
        DegreeDistribution {
            kind: self.kind,
            degrees: kept_faces.iter().map(|&f| self.degrees[f]).collect(),
        }
    }
}

/// Per-edge and per-vertex spaces induced by `deg`.
pub fn induced_spaces(
    mesh: &Mesh,
    deg: &DegreeDistribution,
) -> Result<(Vec<PolySpaceSpec>, Vec<PolySpaceSpec>)> {
    deg.check(mesh)?;
    let edges = (0..mesh.num_edges())
        .map(|e| deg.edge_spec(mesh, e))
        .collect();
    let verts = (0..mesh.num_vertices())
        .map(|v| deg.vertex_spec(mesh, v))
        .collect();
    Ok((edges, verts))
}
