use serde::Serialize;

use super::{
    edge_cell, polygonal_edge_rule, polygonal_face_rule, tmesh_edge_rule, tmesh_segment_rule,
    tri_edge_rule, triangle_removal_rule, Cells, Certificate, Rule,
};
use crate::complex::SmoothnessDistribution;
use crate::exactla::Rational;
use crate::mesh::{Axis, DegreeDistribution, Mesh, Segment};
use crate::{Error, Result};

/// One requested reduction. `rule = None` picks rules by mesh class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Step {
    /// Edge between two vertex ids, lowered to `s`.
    Edge {
        ends: (usize, usize),
        s: i64,
        rule: Option<Rule>,
    },
    /// Every interior edge on a line (or a sub-range of it), lowered to `s`.
    Segment {
        axis: Axis,
        coord: Rational,
        range: Option<(Rational, Rational)>,
        s: i64,
        rule: Option<Rule>,
    },
    /// All edges of a face dropped to -1.
    Face { face: usize, rule: Option<Rule> },
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReductionRequest {
    pub steps: Vec<Step>,
}

#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub target: String,
    pub new_order: i64,
    pub edges: Vec<[usize; 2]>,
    pub certified: bool,
    /// Rules tried, in order, up to the first that certifies.
    pub certificates: Vec<Certificate>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct ReductionOutcome {
    #[serde(skip)]
    pub s: SmoothnessDistribution,
    pub steps: Vec<StepReport>,
    pub certified: bool,
}

impl ReductionOutcome {
    pub fn verdict(&self) -> &'static str {
        if self.certified {
            "certified"
        } else {
            "uncertified"
        }
    }
}

enum Target {
    Edge(usize),
    Segment(Box<Segment>),
    Face(usize),
}

fn candidates(mesh: &Mesh, target: &Target) -> Vec<Rule> {
    match target {
        Target::Edge(_) if mesh.is_triangulation() => vec![Rule::TriEdge, Rule::PolygonalEdge],
        Target::Edge(_) if mesh.is_tmesh() => {
            vec![Rule::TmeshEdge, Rule::TmeshSegment, Rule::PolygonalEdge]
        }
        Target::Edge(_) => vec![Rule::PolygonalEdge],
        Target::Segment(_) => vec![Rule::TmeshSegment],
        Target::Face(f) if mesh.is_triangulation() && mesh.face(*f).boundary.len() == 3 => {
            vec![Rule::TriangleRemoval, Rule::PolygonalFace]
        }
        Target::Face(_) => vec![Rule::PolygonalFace],
    }
}

fn evaluate(
    rule: Rule,
    mesh: &Mesh,
    deg: &DegreeDistribution,
    s: &SmoothnessDistribution,
    target: &Target,
    new: i64,
) -> Result<Certificate> {
    let lowers_to_free = matches!(
        rule,
        Rule::PolygonalEdge | Rule::PolygonalFace | Rule::TriangleRemoval
    );
    if lowers_to_free && new != -1 {
        let cells = Cells {
            edges: target_edges(mesh, target)
                .iter()
                .map(|&e| edge_cell(mesh, e))
                .collect(),
            ..Cells::default()
        };
        return Ok(Certificate::new(rule, cells).not_applicable("rule only lowers to order -1"));
    }
    let wrong = || Error::Reduction(format!("rule {rule} does not apply to this kind of step"));
    Ok(match (rule, target) {
        (Rule::TriEdge, Target::Edge(e)) => tri_edge_rule(mesh, deg, s, *e),
        (Rule::TmeshEdge, Target::Edge(e)) => tmesh_edge_rule(mesh, deg, s, *e),
        (Rule::PolygonalEdge, Target::Edge(e)) => polygonal_edge_rule(mesh, deg, s, *e),
        (Rule::TmeshSegment, Target::Edge(e)) => {
            let Some(axis) = mesh.edge_axis(*e) else {
                let cells = Cells {
                    edges: vec![edge_cell(mesh, *e)],
                    ..Cells::default()
                };
                return Ok(
                    Certificate::new(rule, cells).not_applicable("edge is not axis-parallel")
                );
            };
            match single_edge_segment(mesh, deg, *e, axis) {
                Ok(seg) => tmesh_segment_rule(mesh, deg, s, &seg, new),
                Err(err) => {
                    let cells = Cells {
                        edges: vec![edge_cell(mesh, *e)],
                        ..Cells::default()
                    };
                    Certificate::new(rule, cells).not_applicable(err.to_string())
                }
            }
        }
        (Rule::TmeshSegment, Target::Segment(seg)) => tmesh_segment_rule(mesh, deg, s, seg, new),
        (Rule::TriangleRemoval, Target::Face(f)) => triangle_removal_rule(mesh, deg, s, *f),
        (Rule::PolygonalFace, Target::Face(f)) => polygonal_face_rule(mesh, deg, s, *f),
        _ => return Err(wrong()),
    })
}

fn single_edge_segment(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    e: usize,
    axis: Axis,
) -> Result<Segment> {
    let (u, v) = mesh.edge(e).ends;
    let (p, q) = (mesh.vertex(u), mesh.vertex(v));
    let (c, a, b) = match axis {
        Axis::Horizontal => (&p.y, &p.x, &q.x),
        Axis::Vertical => (&p.x, &p.y, &q.y),
    };
    mesh.segment(deg, axis, c, Some((a.min(b), a.max(b))))
}

fn target_edges(mesh: &Mesh, target: &Target) -> Vec<usize> {
    match target {
        Target::Edge(e) => vec![*e],
        Target::Segment(seg) => seg.edges.clone(),
        Target::Face(f) => mesh
            .face(*f)
            .edges
            .iter()
            .copied()
            .filter(|&e| mesh.edge(e).interior)
            .collect(),
    }
}

fn resolve(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    step: &Step,
) -> Result<(Target, i64, Option<Rule>, String)> {
    Ok(match step {
        Step::Edge {
            ends: (i, j),
            s,
            rule,
        } => {
            let e = mesh
                .edge_between(*i, *j)
                .ok_or_else(|| Error::Reduction(format!("no edge between vertices {i} and {j}")))?;
            if !mesh.edge(e).interior {
                return Err(Error::Reduction(format!("edge {i}-{j} is on the boundary")));
            }
            (Target::Edge(e), *s, *rule, format!("edge {i},{j}"))
        }
        Step::Segment {
            axis,
            coord,
            range,
            s,
            rule,
        } => {
            let seg = mesh.segment(deg, *axis, coord, range.as_ref().map(|(a, b)| (a, b)))?;
            let name = seg.to_string();
            (
                Target::Segment(Box::new(seg)),
                *s,
                *rule,
                format!("segment {name}"),
            )
        }
        Step::Face { face, rule } => {
            if *face >= mesh.num_faces() {
                return Err(Error::Reduction(format!("no face {face}")));
            }
            (Target::Face(*face), -1, *rule, format!("face {face}"))
        }
    })
}

/// Applies the steps in order, certifying each against the smoothness
/// reached so far. Uncertified steps are still applied and flagged.
pub fn reduce(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    request: &ReductionRequest,
) -> Result<ReductionOutcome> {
    let mut s = r.clone();
    let mut reports = Vec::new();
    for step in &request.steps {
        let (target, new, rule, name) = resolve(mesh, deg, step)?;
        if new < -1 {
            return Err(Error::Reduction(format!("{name}: order {new} below -1")));
        }
        let edges = target_edges(mesh, &target);
        if let Some(&e) = edges.iter().find(|&&e| s.get(e) < new) {
            let [a, b] = edge_cell(mesh, e);
            return Err(Error::Reduction(format!(
                "{name}: edge {a}-{b} would be raised from {} to {new}",
                s.get(e)
            )));
        }
        let mut report = StepReport {
            target: name,
            new_order: new,
            edges: edges.iter().map(|&e| edge_cell(mesh, e)).collect(),
            certified: false,
            certificates: Vec::new(),
            note: None,
        };
        if edges.iter().all(|&e| s.get(e) == new) {
            report.certified = true;
            report.note = Some("nothing to lower".into());
            reports.push(report);
            continue;
        }
        let rules = match rule {
            Some(r) => vec![r],
            None => candidates(mesh, &target),
        };
        for rule in rules {
            let cert = evaluate(rule, mesh, deg, &s, &target, new)?;
            let ok = cert.is_certified();
            report.certificates.push(cert);
            if ok {
                report.certified = true;
                break;
            }
        }
        for &e in &edges {
            s = s.with(e, new);
        }
        reports.push(report);
    }
    let certified = reports.iter().all(|r| r.certified);
    Ok(ReductionOutcome {
        s,
        steps: reports,
        certified,
    })
}
