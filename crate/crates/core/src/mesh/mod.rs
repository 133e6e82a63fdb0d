//! Planar polygonal meshes with exact coordinates.

mod degree;
pub mod geometry;
mod tmesh;
mod validate;

use std::collections::{BTreeSet, HashMap};

use crate::polyspace::LinearForm;
use crate::{Error, Result};

pub use degree::{induced_spaces, DegreeDistribution};
pub use geometry::Point;
pub use tmesh::{Axis, Segment, Transversal};
pub use validate::{validate, Violation};

#[derive(Clone, Debug)]
pub struct Edge {
    /// Endpoints, lower id first; this is also the edge orientation.
    pub ends: (usize, usize),
    pub line: LinearForm,
    pub faces: Vec<usize>,
    pub interior: bool,
}

#[derive(Clone, Debug)]
pub struct Face {
    /// Counterclockwise vertex loop.
    pub boundary: Vec<usize>,
    /// `edges[k]` joins `boundary[k]` and `boundary[k + 1]`.
    pub edges: Vec<usize>,
    /// +1 when the loop runs along the edge orientation.
    pub signs: Vec<i32>,
}

#[derive(Clone, Debug)]
pub struct Mesh {
    vertices: Vec<Point>,
    edges: Vec<Edge>,
    faces: Vec<Face>,
    edge_index: HashMap<(usize, usize), usize>,
    vertex_edges: Vec<Vec<usize>>,
    vertex_faces: Vec<Vec<usize>>,
    interior_vertex: Vec<bool>,
}

/// `ℓ` vanishing on the line through `p` and `q`.
pub fn edge_line_form(p: &Point, q: &Point) -> Result<LinearForm> {
    LinearForm::through((&p.x, &p.y), (&q.x, &q.y)).ok_or(Error::DegenerateEdge(0))
}

impl Mesh {
    /// Build and validate a mesh from counterclockwise face loops.
    pub fn new(vertices: Vec<Point>, faces: Vec<Vec<usize>>) -> Result<Mesh> {
        let violations = validate(&vertices, &faces);
        if !violations.is_empty() {
            return Err(Error::InvalidMesh(
                violations.into_iter().map(|v| v.message).collect(),
            ));
        }

        let mut keys = BTreeSet::new();
        for lp in &faces {
            for k in 0..lp.len() {
                let (u, v) = (lp[k], lp[(k + 1) % lp.len()]);
                keys.insert((u.min(v), u.max(v)));
            }
        }
        let mut edges = Vec::with_capacity(keys.len());
        let mut edge_index = HashMap::new();
        for (id, &(u, v)) in keys.iter().enumerate() {
            let line = edge_line_form(&vertices[u], &vertices[v])
                .map_err(|_| Error::DegenerateEdge(id))?;
            edges.push(Edge {
                ends: (u, v),
                line,
                faces: Vec::new(),
                interior: false,
            });
            edge_index.insert((u, v), id);
        }

        let mut face_list = Vec::with_capacity(faces.len());
        let mut vertex_faces = vec![Vec::new(); vertices.len()];
        for (f, lp) in faces.into_iter().enumerate() {
            let mut fe = Vec::with_capacity(lp.len());
            let mut signs = Vec::with_capacity(lp.len());
            for k in 0..lp.len() {
                let (u, v) = (lp[k], lp[(k + 1) % lp.len()]);
                let id = edge_index[&(u.min(v), u.max(v))];
                edges[id].faces.push(f);
                fe.push(id);
                signs.push(if u < v { 1 } else { -1 });
                vertex_faces[u].push(f);
            }
            face_list.push(Face {
                boundary: lp,
                edges: fe,
                signs,
            });
        }

        let mut vertex_edges = vec![Vec::new(); vertices.len()];
        for (id, e) in edges.iter_mut().enumerate() {
            e.interior = e.faces.len() == 2;
            vertex_edges[e.ends.0].push(id);
            vertex_edges[e.ends.1].push(id);
        }
        let interior_vertex = vertex_edges
            .iter()
            .map(|es| !es.is_empty() && es.iter().all(|&e| edges[e].interior))
            .collect();

        Ok(Mesh {
            vertices,
            edges,
            faces: face_list,
            edge_index,
            vertex_edges,
            vertex_faces,
            interior_vertex,
        })
    }

    pub fn vertices(&self) -> &[Point] {
        &self.vertices
    }

    pub fn vertex(&self, v: usize) -> &Point {
        &self.vertices[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> &Edge {
        &self.edges[e]
    }

    pub fn faces(&self) -> &[Face] {
        &self.faces
    }

    pub fn face(&self, f: usize) -> &Face {
        &self.faces[f]
    }

    pub fn num_vertices(&self) -> usize {
        self.vertices.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn num_faces(&self) -> usize {
        self.faces.len()
    }

    pub fn face_loops(&self) -> Vec<Vec<usize>> {
        self.faces.iter().map(|f| f.boundary.clone()).collect()
    }

    pub fn edge_between(&self, u: usize, v: usize) -> Option<usize> {
        self.edge_index.get(&(u.min(v), u.max(v))).copied()
    }

    pub fn vertex_edges(&self, v: usize) -> &[usize] {
        &self.vertex_edges[v]
    }

    pub fn vertex_faces(&self, v: usize) -> &[usize] {
        &self.vertex_faces[v]
    }

    pub fn is_interior_vertex(&self, v: usize) -> bool {
        self.interior_vertex[v]
    }

    pub fn interior_edges(&self) -> Vec<usize> {
        (0..self.edges.len())
            .filter(|&e| self.edges[e].interior)
            .collect()
    }

    pub fn interior_vertices(&self) -> Vec<usize> {
        (0..self.vertices.len())
            .filter(|&v| self.interior_vertex[v])
            .collect()
    }

    /// Interior edges and interior vertices.
    pub fn classify_interior(&self) -> (Vec<usize>, Vec<usize>) {
        (self.interior_edges(), self.interior_vertices())
    }

    pub fn edge_line_form(&self, e: usize) -> &LinearForm {
        &self.edges[e].line
    }

    /// The endpoint of `e` other than `v`.
    pub fn other_end(&self, e: usize, v: usize) -> usize {
        let (a, b) = self.edges[e].ends;
        if a == v {
            b
        } else {
            a
        }
    }

    /// Number of distinct line directions among the edges at `v`.
    pub fn slopes_at_vertex(&self, v: usize) -> usize {
        self.vertex_edges[v]
            .iter()
            .map(|&e| self.edges[e].line.slope_key())
            .collect::<BTreeSet<_>>()
            .len()
    }

    pub fn face_points(&self, f: usize) -> Vec<&Point> {
        self.faces[f]
            .boundary
            .iter()
            .map(|&v| &self.vertices[v])
            .collect()
    }

    pub fn face_is_convex(&self, f: usize) -> bool {
        geometry::is_convex(&self.face_points(f))
    }

    pub fn is_triangulation(&self) -> bool {
        self.faces.iter().all(|f| f.boundary.len() == 3)
    }

    /// Number of holes, from the cellular Euler relation of the closed domain.
    pub fn hole_count(&self) -> usize {
        let chi = self.vertices.len() as i64 - self.edges.len() as i64 + self.faces.len() as i64;
        (1 - chi).max(0) as usize
    }

    /// The mesh with the given faces deleted and unused vertices dropped.
    ///
    /// Returns the new mesh, the old id of each kept face and the old id of
    /// each kept vertex.
    pub fn without_faces(
        &self,
        removed: &BTreeSet<usize>,
    ) -> Result<(Mesh, Vec<usize>, Vec<usize>)> {
        let kept_faces: Vec<usize> = (0..self.faces.len())
            .filter(|f| !removed.contains(f))
            .collect();
        if kept_faces.is_empty() {
            return Err(Error::Prune("pruning removes every face".into()));
        }
        let mut new_id = vec![None; self.vertices.len()];
        let mut kept_vertices = Vec::new();
        for &f in &kept_faces {
            for &v in &self.faces[f].boundary {
                if new_id[v].is_none() {
                    new_id[v] = Some(usize::MAX);
                }
            }
        }
        for (v, id) in new_id.iter_mut().enumerate() {
            if id.is_some() {
                *id = Some(kept_vertices.len());
                kept_vertices.push(v);
            }
        }
        let verts = kept_vertices
            .iter()
            .map(|&v| self.vertices[v].clone())
            .collect();
        let loops = kept_faces
            .iter()
            .map(|&f| {
                self.faces[f]
                    .boundary
                    .iter()
                    .map(|&v| new_id[v].expect("kept vertex"))
                    .collect()
            })
            .collect();
        let mesh = Mesh::new(verts, loops).map_err(|e| match e {
            Error::InvalidMesh(v) => {
                Error::Prune(format!("pruned mesh is invalid: {}", v.join("; ")))
            }
            other => other,
        })?;
        Ok((mesh, kept_faces, kept_vertices))
    }
}
