use serde_json::json;

use super::regularity::omega;
use super::{edge_cell, incident_orders_are, uniform_total_degree, Cells, Certificate, Rule};
use crate::complex::SmoothnessDistribution;
use crate::mesh::{DegreeDistribution, Mesh};

/// Dropping every edge of a convex polygonal face to order -1.
pub fn polygonal_face_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    f: usize,
) -> Certificate {
    let face = mesh.face(f);
    let mut cert = Certificate::new(
        Rule::PolygonalFace,
        Cells {
            edges: face.edges.iter().map(|&e| edge_cell(mesh, e)).collect(),
            vertices: face.boundary.clone(),
            faces: vec![f],
        },
    );
    if !mesh.face_is_convex(f) {
        cert.warnings.push(format!("face {f} is not convex"));
        return cert.not_applicable("face is not convex");
    }
    let verts = face.boundary.clone();
    if let Some(v) = verts.iter().find(|&&v| !mesh.is_interior_vertex(v)) {
        return cert.not_applicable(format!("vertex {v} is on the boundary"));
    }
    let Some(m) = uniform_total_degree(mesh, deg, &verts) else {
        return cert.not_applicable("needs one total degree on every face around the polygon");
    };
    let order = r.get(face.edges[0]);
    if order < 0 || face.edges.iter().any(|&e| r.get(e) != order) {
        return cert.not_applicable("face edges need a common order of at least 0");
    }
    if let Some(v) = verts
        .iter()
        .find(|&&v| !incident_orders_are(mesh, r, v, order, true))
    {
        return cert.not_applicable(format!(
            "edges at vertex {v} mix orders other than {order} and -1"
        ));
    }
    let omegas: Vec<i64> = match verts.iter().map(|&v| omega(mesh, v, order)).collect() {
        Ok(o) => o,
        Err(e) => return cert.not_applicable(e.to_string()),
    };
    let m = m as i64;
    let cert = cert
        .with("m", m)
        .with("r", order)
        .with("omega", json!(omegas));
    if m > 3 * order {
        return cert.certified(format!("m = {m} exceeds 3r = {}", 3 * order));
    }
    let n = verts.len();
    match (0..n).find(|&i| m > omegas[i] + omegas[(i + 1) % n] - 2) {
        Some(i) => {
            let (a, b) = (verts[i], verts[(i + 1) % n]);
            cert.with("pair", json!([a, b]))
                .certified(format!("m = {m} exceeds Ω_{a} + Ω_{b} - 2"))
        }
        None => cert.not_applicable("no adjacent vertex pair satisfies the degree bound"),
    }
}

/// Dropping a single interior edge with interior endpoints to order -1.
pub fn polygonal_edge_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> Certificate {
    let (a, b) = mesh.edge(e).ends;
    let cert = Certificate::new(
        Rule::PolygonalEdge,
        Cells {
            edges: vec![edge_cell(mesh, e)],
            vertices: vec![a, b],
            faces: Vec::new(),
        },
    );
    if !mesh.edge(e).interior {
        return cert.not_applicable("boundary edge");
    }
    if let Some(v) = [a, b].into_iter().find(|&v| !mesh.is_interior_vertex(v)) {
        return cert.not_applicable(format!("endpoint {v} is on the boundary"));
    }
    let Some(m) = uniform_total_degree(mesh, deg, &[a, b]) else {
        return cert.not_applicable("needs one total degree on every face around the edge");
    };
    let order = r.get(e);
    if order < 0 {
        return cert.not_applicable("edge already has order -1");
    }
    if let Some(v) = [a, b]
        .into_iter()
        .find(|&v| !incident_orders_are(mesh, r, v, order, true))
    {
        return cert.not_applicable(format!(
            "edges at vertex {v} mix orders other than {order} and -1"
        ));
    }
    let (oa, ob) = match (omega(mesh, a, order), omega(mesh, b, order)) {
        (Ok(x), Ok(y)) => (x, y),
        (Err(err), _) | (_, Err(err)) => return cert.not_applicable(err.to_string()),
    };
    let m = m as i64;
    let cert = cert
        .with("m", m)
        .with("r", order)
        .with("omega", json!([oa, ob]));
    if m > oa + ob - 2 {
        cert.certified(format!(
            "m = {m} exceeds Ω_{a} + Ω_{b} - 2 = {}",
            oa + ob - 2
        ))
    } else {
        cert.not_applicable(format!(
            "m = {m} does not exceed Ω_{a} + Ω_{b} - 2 = {}",
            oa + ob - 2
        ))
    }
}
