use serde_json::json;

use super::regularity::omega;
use super::{edge_cell, incident_orders_are, uniform_total_degree, Cells, Certificate, Rule};
use crate::complex::{sum_of_vertex_ideals_codim, SmoothnessDistribution};
use crate::mesh::{DegreeDistribution, Mesh};
use crate::polyspace::PolySpaceSpec;
use crate::{Error, Result};

/// An interior edge meeting `e` at an endpoint with order -1 whose degree is
/// at least that of `e`. Returns `(vertex, edge)`.
pub(super) fn free_neighbour(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> Option<(usize, usize)> {
    let (lo, hi) = mesh.edge(e).ends;
    let m = deg.edge_spec(mesh, e).m;
    [lo, hi].into_iter().find_map(|v| {
        mesh.vertex_edges(v)
            .iter()
            .copied()
            .find(|&t| {
                t != e && mesh.edge(t).interior && r.get(t) == -1 && deg.edge_spec(mesh, t).m >= m
            })
            .map(|t| (v, t))
    })
}

pub(super) fn edge_rule(
    rule: Rule,
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> Certificate {
    let cert = Certificate::new(
        rule,
        Cells {
            edges: vec![edge_cell(mesh, e)],
            ..Cells::default()
        },
    );
    if !mesh.edge(e).interior {
        return cert.not_applicable("boundary edge");
    }
    if r.get(e) < 0 {
        return cert.not_applicable("edge already has order -1");
    }
    match free_neighbour(mesh, deg, r, e) {
        Some((v, t)) => cert
            .with("vertex", v)
            .with("free_edge", json!(edge_cell(mesh, t)))
            .certified(format!(
                "edge {:?} at vertex {v} already has order -1",
                edge_cell(mesh, t)
            )),
        None => cert
            .not_applicable("no interior neighbour edge of order -1 and at least the same degree"),
    }
}

/// Lowering an interior triangulation edge to any order, justified by an
/// unconstrained neighbour edge at one of its endpoints.
pub fn tri_edge_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> Certificate {
    if !mesh.is_triangulation() {
        let cells = Cells {
            edges: vec![edge_cell(mesh, e)],
            ..Cells::default()
        };
        return Certificate::new(Rule::TriEdge, cells)
            .not_applicable("mesh is not a triangulation");
    }
    edge_rule(Rule::TriEdge, mesh, deg, r, e)
}

/// `dim P_m / Σ J_γ` over the vertices of face `f`, where `m` is the face's
/// total degree. All vertices must be interior with the same degree around.
pub fn face_removal_cokernel_dim(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    f: usize,
) -> Result<usize> {
    let verts = &mesh.face(f).boundary;
    if let Some(&v) = verts.iter().find(|&&v| !mesh.is_interior_vertex(v)) {
        return Err(Error::Rule(format!("face {f} has boundary vertex {v}")));
    }
    let m = uniform_total_degree(mesh, deg, verts).ok_or_else(|| {
        Error::Rule(format!(
            "face {f}: degrees around its vertices are not one total degree"
        ))
    })?;
    Ok(sum_of_vertex_ideals_codim(
        mesh,
        deg,
        r,
        verts,
        PolySpaceSpec::total(m),
    ))
}

/// Dropping all three edges of an interior triangle to order -1.
pub fn triangle_removal_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    f: usize,
) -> Certificate {
    let face = mesh.face(f);
    let cert = Certificate::new(
        Rule::TriangleRemoval,
        Cells {
            edges: face.edges.iter().map(|&e| edge_cell(mesh, e)).collect(),
            vertices: face.boundary.clone(),
            faces: vec![f],
        },
    );
    if !mesh.is_triangulation() {
        return cert.not_applicable("mesh is not a triangulation");
    }
    let verts = face.boundary.clone();
    if let Some(v) = verts.iter().find(|&&v| !mesh.is_interior_vertex(v)) {
        return cert.not_applicable(format!("vertex {v} is on the boundary"));
    }
    let Some(m) = uniform_total_degree(mesh, deg, &verts) else {
        return cert.not_applicable("needs one total degree on every face around the triangle");
    };
    let order = r.get(face.edges[0]);
    if order < 0 || face.edges.iter().any(|&e| r.get(e) != order) {
        return cert.not_applicable("triangle edges need a common order of at least 0");
    }
    if let Some(v) = verts
        .iter()
        .find(|&&v| !incident_orders_are(mesh, r, v, order, false))
    {
        return cert.not_applicable(format!("edges at vertex {v} do not all have order {order}"));
    }
    let omegas: Vec<i64> = match verts.iter().map(|&v| omega(mesh, v, order)).collect() {
        Ok(o) => o,
        Err(e) => return cert.not_applicable(e.to_string()),
    };
    let slopes: Vec<usize> = verts.iter().map(|&v| mesh.slopes_at_vertex(v)).collect();
    let total: i64 = omegas.iter().sum();
    let bound = 2 * m as i64 > total - 3;
    let cokernel = sum_of_vertex_ideals_codim(mesh, deg, r, &verts, PolySpaceSpec::total(m));
    let cert = cert
        .with("m", m)
        .with("r", order)
        .with("omega", json!(omegas))
        .with("slopes", json!(slopes))
        .with("bound_holds", bound)
        .with("cokernel_dim", cokernel);
    if bound {
        cert.certified(format!("m = {m} exceeds (ΣΩ - 3)/2 with ΣΩ = {total}"))
    } else if cokernel == 0 {
        cert.certified("vertex ideals of the triangle span all of P_m")
    } else {
        cert.not_applicable(format!(
            "vertex ideals leave a cokernel of dimension {cokernel}"
        ))
    }
}
