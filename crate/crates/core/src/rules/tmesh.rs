use serde::Serialize;
use serde_json::json;

use super::triangulation::edge_rule;
use super::{edge_cell, Cells, Certificate, Rule};
use crate::complex::SmoothnessDistribution;
use crate::exactla::{format_rational, Rational};
use crate::mesh::{Axis, DegreeDistribution, Mesh, Segment};
use crate::polyspace::{univ_sum_dim, univ_sum_dim_oracle, ShiftedPoint};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SegmentWeight {
    /// Rank of the transversal slices.
    pub exact: usize,
    /// Value of the closed form on the same points; informational only.
    pub formula: usize,
    /// `(crossing, exponent, shift)` per transversal edge.
    pub points: Vec<(String, i64, i64)>,
}

/// Weight of segment `A` under smoothness `s`: the dimension of
/// `Σ (x - a)^{s+1} P̄_{m_A - e - s - 1}` over the transversal edges, where
/// `e = max(0, m_A - m_τ̄)`.
pub fn segment_weight(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    s: &SmoothnessDistribution,
    seg: &Segment,
) -> SegmentWeight {
    let m = seg.m as i64;
    let points: Vec<ShiftedPoint> = mesh
        .transversal_edges(deg, seg)
        .into_iter()
        .map(|t| ShiftedPoint::new(t.at, s.get(t.edge) + 1, (m - t.m as i64).max(0)))
        .collect();
    SegmentWeight {
        exact: univ_sum_dim_oracle(seg.m, &points),
        formula: univ_sum_dim(seg.m, &points),
        points: points
            .iter()
            .map(|p| (format_rational(&p.a), p.d, p.e))
            .collect(),
    }
}

fn span(mesh: &Mesh, e: usize, axis: Axis) -> (Rational, Rational, Rational) {
    let (u, v) = mesh.edge(e).ends;
    let (p, q) = (mesh.vertex(u), mesh.vertex(v));
    let (c, a, b) = match axis {
        Axis::Horizontal => (&p.y, &p.x, &q.x),
        Axis::Vertical => (&p.x, &p.y, &q.y),
    };
    (c.clone(), a.min(b).clone(), a.max(b).clone())
}

/// An interior edge extending `seg` by one step along its line with the
/// same degree and order at most `new_r`.
fn extension_edge(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    seg: &Segment,
    new_r: i64,
) -> Option<usize> {
    (0..mesh.num_edges()).find(|&e| {
        if !mesh.edge(e).interior || mesh.edge_axis(e) != Some(seg.axis) || seg.edges.contains(&e) {
            return false;
        }
        let (c, lo, hi) = span(mesh, e, seg.axis);
        c == seg.coord
            && (hi == seg.lo || lo == seg.hi)
            && deg.edge_spec(mesh, e).m == seg.m
            && r.get(e) <= new_r
    })
}

/// Lowering every edge of segment `A` to `new_r`.
pub fn tmesh_segment_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    seg: &Segment,
    new_r: i64,
) -> Certificate {
    let cert = Certificate::new(
        Rule::TmeshSegment,
        Cells {
            edges: seg.edges.iter().map(|&e| edge_cell(mesh, e)).collect(),
            ..Cells::default()
        },
    )
    .with("segment", seg.to_string())
    .with("new_r", new_r);
    if !mesh.is_tmesh() {
        return cert.not_applicable("mesh is not a T-mesh");
    }
    if let Some(&e) = seg.edges.iter().find(|&&e| r.get(e) < new_r) {
        return cert.not_applicable(format!(
            "edge {:?} has order below {new_r}",
            edge_cell(mesh, e)
        ));
    }
    let mut s = r.clone();
    for &e in &seg.edges {
        s = s.with(e, new_r);
    }
    let w = segment_weight(mesh, deg, &s, seg);
    let full = seg.m as usize + 1;
    let cert = cert
        .with("omega", w.exact)
        .with("omega_formula", w.formula)
        .with("m", seg.m)
        .with("transversals", json!(w.points));
    if let Some(e) = extension_edge(mesh, deg, r, seg, new_r) {
        return cert
            .with("extension_edge", json!(edge_cell(mesh, e)))
            .certified(format!(
                "segment extends through {:?}, already at order at most {new_r}",
                edge_cell(mesh, e)
            ));
    }
    if w.exact == full {
        cert.certified(format!("weight {} equals m + 1", w.exact))
    } else {
        cert.not_applicable(format!(
            "weight {} is below m + 1 = {full} and no reduced extension exists",
            w.exact
        ))
    }
}

/// Lowering an interior T-mesh edge, justified by an unconstrained edge of
/// at least the same degree touching it.
pub fn tmesh_edge_rule(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> Certificate {
    if !mesh.is_tmesh() {
        let cells = Cells {
            edges: vec![edge_cell(mesh, e)],
            ..Cells::default()
        };
        return Certificate::new(Rule::TmeshEdge, cells).not_applicable("mesh is not a T-mesh");
    }
    edge_rule(Rule::TmeshEdge, mesh, deg, r, e)
}
