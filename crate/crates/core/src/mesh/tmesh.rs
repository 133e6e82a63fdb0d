//! Axis-aligned box meshes and their segments.

use std::cmp::Ordering;
use std::collections::BTreeMap;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use super::geometry::orient;
use super::{DegreeDistribution, Mesh};
use crate::exactla::{format_rational, Rational};
use crate::{Error, Result};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// Edges on a line `y = c`.
    Horizontal,
    /// Edges on a line `x = c`.
    Vertical,
}

impl Axis {
    pub fn perpendicular(self) -> Axis {
        match self {
            Axis::Horizontal => Axis::Vertical,
            Axis::Vertical => Axis::Horizontal,
        }
    }
}

/// A connected run of collinear interior edges sharing one edge degree.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Segment {
    pub axis: Axis,
    /// Fixed coordinate of the supporting line.
    pub coord: Rational,
    pub lo: Rational,
    pub hi: Rational,
    /// Member edges ordered along the line.
    pub edges: Vec<usize>,
    pub m: u32,
}

impl std::fmt::Display for Segment {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let tag = match self.axis {
            Axis::Horizontal => "h",
            Axis::Vertical => "v",
        };
        write!(
            f,
            "{tag}:{}@{}..{}",
            format_rational(&self.coord),
            format_rational(&self.lo),
            format_rational(&self.hi)
        )
    }
}

/// An edge perpendicular to a segment whose closure meets it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Transversal {
    pub edge: usize,
    /// Coordinate along the segment where the edge's line crosses it.
    pub at: Rational,
    pub m: u32,
}

impl Mesh {
    /// Axis of an axis-parallel edge.
    pub fn edge_axis(&self, e: usize) -> Option<Axis> {
        let l = &self.edges[e].line;
        if l.a.is_zero() {
            Some(Axis::Horizontal)
        } else if l.b.is_zero() {
            Some(Axis::Vertical)
        } else {
            None
        }
    }

    /// `(fixed coordinate, low, high)` of an axis-parallel edge.
    fn edge_span(&self, e: usize, axis: Axis) -> (Rational, Rational, Rational) {
        let (u, v) = self.edges[e].ends;
        let (p, q) = (&self.vertices[u], &self.vertices[v]);
        let (c, a, b) = match axis {
            Axis::Horizontal => (&p.y, &p.x, &q.x),
            Axis::Vertical => (&p.x, &p.y, &q.y),
        };
        if a <= b {
            (c.clone(), a.clone(), b.clone())
        } else {
            (c.clone(), b.clone(), a.clone())
        }
    }

    pub fn face_is_box(&self, f: usize) -> bool {
        let face = &self.faces[f];
        if face.edges.iter().any(|&e| self.edge_axis(e).is_none()) {
            return false;
        }
        let pts = self.face_points(f);
        let n = pts.len();
        let turns = (0..n)
            .filter(|&k| orient(pts[k], pts[(k + 1) % n], pts[(k + 2) % n]) != Ordering::Equal)
            .count();
        turns == 4
    }

    /// All edges axis-parallel and every face an axis-aligned box.
    pub fn is_tmesh(&self) -> bool {
        (0..self.edges.len()).all(|e| self.edge_axis(e).is_some())
            && (0..self.faces.len()).all(|f| self.face_is_box(f))
    }

    fn interior_on_line(&self, axis: Axis, coord: &Rational) -> Vec<(Rational, Rational, usize)> {
        let mut run: Vec<(Rational, Rational, usize)> = (0..self.edges.len())
            .filter(|&e| self.edges[e].interior && self.edge_axis(e) == Some(axis))
            .filter_map(|e| {
                let (c, lo, hi) = self.edge_span(e, axis);
                (&c == coord).then_some((lo, hi, e))
            })
            .collect();
        run.sort();
        run
    }

    /// Maximal segments, grouped by line and split where edges stop touching
    /// or the edge degree changes.
    pub fn detect_segments(&self, deg: &DegreeDistribution) -> Result<Vec<Segment>> {
        if !self.is_tmesh() {
            return Err(Error::NotTMesh);
        }
        let mut lines: BTreeMap<(Axis, Rational), ()> = BTreeMap::new();
        for e in self.interior_edges() {
            let axis = self.edge_axis(e).expect("t-mesh edges are axis-parallel");
            lines.insert((axis, self.edge_span(e, axis).0), ());
        }
        let mut out = Vec::new();
        for (axis, coord) in lines.into_keys() {
            let run = self.interior_on_line(axis, &coord);
            let mut current: Option<Segment> = None;
            for (lo, hi, e) in run {
                let m = deg.edge_spec(self, e).m;
                match current.as_mut() {
                    Some(s) if s.hi == lo && s.m == m => {
                        s.hi = hi;
                        s.edges.push(e);
                    }
                    _ => {
                        out.extend(current.take());
                        current = Some(Segment {
                            axis,
                            coord: coord.clone(),
                            lo,
                            hi,
                            edges: vec![e],
                            m,
                        });
                    }
                }
            }
            out.extend(current);
        }
        Ok(out)
    }

    /// The segment covering `[lo, hi]` on the given line, or every interior
    /// edge of the line when no range is given.
    pub fn segment(
        &self,
        deg: &DegreeDistribution,
        axis: Axis,
        coord: &Rational,
        range: Option<(&Rational, &Rational)>,
    ) -> Result<Segment> {
        if !self.is_tmesh() {
            return Err(Error::NotTMesh);
        }
        let name = match axis {
            Axis::Horizontal => "y",
            Axis::Vertical => "x",
        };
        let mut run = self.interior_on_line(axis, coord);
        if let Some((lo, hi)) = range {
            if lo >= hi {
                return Err(Error::Segment(format!(
                    "empty range {}..{}",
                    format_rational(lo),
                    format_rational(hi)
                )));
            }
            run.retain(|(a, b, _)| a >= lo && b <= hi);
            let covers =
                run.first().is_some_and(|r| &r.0 == lo) && run.last().is_some_and(|r| &r.1 == hi);
            if !covers {
                return Err(Error::Segment(format!(
                    "{}..{} on {name} = {} is not a union of interior edges",
                    format_rational(lo),
                    format_rational(hi),
                    format_rational(coord)
                )));
            }
        }
        if run.is_empty() {
            return Err(Error::Segment(format!(
                "no interior edges on {name} = {}",
                format_rational(coord)
            )));
        }
        if run.windows(2).any(|w| w[0].1 != w[1].0) {
            return Err(Error::Segment(format!(
                "interior edges on {name} = {} are not connected",
                format_rational(coord)
            )));
        }
        let m = deg.edge_spec(self, run[0].2).m;
        if run.iter().any(|r| deg.edge_spec(self, r.2).m != m) {
            return Err(Error::Segment(
                "edge degree changes along the segment".into(),
            ));
        }
        Ok(Segment {
            axis,
            coord: coord.clone(),
            lo: run[0].0.clone(),
            hi: run[run.len() - 1].1.clone(),
            edges: run.into_iter().map(|r| r.2).collect(),
            m,
        })
    }

    /// Perpendicular edges, interior or not, whose closure meets the segment.
    pub fn transversal_edges(&self, deg: &DegreeDistribution, seg: &Segment) -> Vec<Transversal> {
        let perp = seg.axis.perpendicular();
        let mut out: Vec<Transversal> = (0..self.edges.len())
            .filter(|&e| self.edge_axis(e) == Some(perp))
            .filter_map(|e| {
                let (at, lo, hi) = self.edge_span(e, perp);
                let meets = at >= seg.lo && at <= seg.hi && lo <= seg.coord && seg.coord <= hi;
                meets.then(|| Transversal {
                    edge: e,
                    at,
                    m: deg.edge_spec(self, e).m,
                })
            })
            .collect();
        out.sort_by(|a, b| a.at.cmp(&b.at).then(a.edge.cmp(&b.edge)));
        out
    }
}
