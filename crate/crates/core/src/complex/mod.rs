//! The three-row diagram `I^r → C → Q^r` and its homology.
//!
//! Faces use global coordinates, edges are centred at their lower endpoint
//! and vertices at themselves; maps between cells translate accordingly.
//! Faces are counterclockwise, edges run from lower to higher vertex id,
//! `[σ:τ]` is the agreement of the two orientations and `[τ:γ]` is +1 at
//! the head, -1 at the tail.

pub mod local;

use std::sync::OnceLock;

use serde::Serialize;

use crate::exactla::{kernel_dim, rank, Rational, RationalMatrix, Rref};
use crate::mesh::{DegreeDistribution, Mesh, Point};
use crate::polyspace::{space_dim, MonomialBasis};
use crate::{Error, Result};

pub use local::{edge_ideal_dim, sum_of_vertex_ideals_codim, vertex_ideal_dim};

/// Smoothness order per edge; boundary edges carry -1.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SmoothnessDistribution {
    values: Vec<i64>,
}

impl SmoothnessDistribution {
    /// `r` on every interior edge, -1 on the boundary.
    pub fn uniform(mesh: &Mesh, r: i64) -> Self {
        SmoothnessDistribution {
            values: mesh
                .edges()
                .iter()
                .map(|e| if e.interior { r } else { -1 })
                .collect(),
        }
    }

    pub fn new(mesh: &Mesh, values: Vec<i64>) -> Result<Self> {
        if values.len() != mesh.num_edges() {
            return Err(Error::Smoothness(format!(
                "{} values for {} edges",
                values.len(),
                mesh.num_edges()
            )));
        }
        for (e, &s) in values.iter().enumerate() {
            let (u, v) = mesh.edge(e).ends;
            if s < -1 {
                return Err(Error::Smoothness(format!(
                    "edge {u}-{v}: order {s} below -1"
                )));
            }
            if !mesh.edge(e).interior && s != -1 {
                return Err(Error::Smoothness(format!(
                    "boundary edge {u}-{v} must have order -1, got {s}"
                )));
            }
        }
        Ok(SmoothnessDistribution { values })
    }

    pub fn get(&self, e: usize) -> i64 {
        self.values[e]
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }

    /// Copy with edge `e` set to `s`.
    pub fn with(&self, e: usize, s: i64) -> Self {
        let mut values = self.values.clone();
        values[e] = s;
        SmoothnessDistribution { values }
    }

    /// Restriction to a sub-mesh, given the old id of each new vertex.
    pub fn restrict(&self, old: &Mesh, new: &Mesh, vertex_map: &[usize]) -> Self {
        let values = new
            .edges()
            .iter()
            .map(|e| {
                if !e.interior {
                    return -1;
                }
                let id = old
                    .edge_between(vertex_map[e.ends.0], vertex_map[e.ends.1])
                    .expect("sub-mesh edge exists in the original mesh");
                self.values[id]
            })
            .collect();
        SmoothnessDistribution { values }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ComplexRow {
    Ideal,
    Chain,
    Quotient,
}

/// A complex `X_2 → X_1 → X_0` with exact boundary matrices.
#[derive(Clone, Debug)]
pub struct GradedComplex {
    pub row: ComplexRow,
    /// Dimensions at positions 2, 1, 0.
    pub dims: [usize; 3],
    /// `∂_2 : X_2 → X_1`, a `dims[1] × dims[0]` matrix.
    pub d2: RationalMatrix,
    /// `∂_1 : X_1 → X_0`, a `dims[2] × dims[1]` matrix.
    pub d1: RationalMatrix,
    rank_d2: OnceLock<usize>,
    rank_d1: OnceLock<usize>,
}

impl GradedComplex {
    fn new(row: ComplexRow, dims: [usize; 3], d2: RationalMatrix, d1: RationalMatrix) -> Self {
        GradedComplex {
            row,
            dims,
            d2,
            d1,
            rank_d2: OnceLock::new(),
            rank_d1: OnceLock::new(),
        }
    }

    pub fn rank_d2(&self) -> usize {
        *self.rank_d2.get_or_init(|| rank(&self.d2))
    }

    pub fn rank_d1(&self) -> usize {
        *self.rank_d1.get_or_init(|| rank(&self.d1))
    }

    pub fn euler_characteristic(&self) -> i64 {
        self.dims[0] as i64 - self.dims[1] as i64 + self.dims[2] as i64
    }

    /// `[h_2, h_1, h_0]`.
    pub fn homology(&self) -> [usize; 3] {
        [2, 1, 0].map(|i| self.homology_at(i))
    }

    pub fn homology_at(&self, i: usize) -> usize {
        match i {
            2 => self.dims[0] - self.rank_d2(),
            1 => self.dims[1] - self.rank_d1() - self.rank_d2(),
            0 => self.dims[2] - self.rank_d1(),
            _ => panic!("homology position {i} out of range"),
        }
    }

    pub fn boundary_squares_to_zero(&self) -> bool {
        self.d1.mul(&self.d2).is_zero()
    }
}

pub fn euler_characteristic(x: &GradedComplex) -> i64 {
    x.euler_characteristic()
}

/// Homology dimension at position `i` (2 = faces, 1 = edges, 0 = vertices).
pub fn homology_dim(x: &GradedComplex, i: usize) -> usize {
    x.homology_at(i)
}

#[derive(Clone, Debug)]
pub struct Complexes {
    pub ideal: GradedComplex,
    pub chain: GradedComplex,
    pub quotient: GradedComplex,
}

struct EdgeData {
    basis: MonomialBasis,
    rref: Rref,
    proj: RationalMatrix,
}

struct VertexData {
    basis: MonomialBasis,
    rref: Rref,
    proj: RationalMatrix,
}

struct Layout {
    face_off: Vec<usize>,
    face_dim: Vec<usize>,
    interior_edges: Vec<usize>,
    interior_vertices: Vec<usize>,
    vertex_pos: Vec<Option<usize>>,
}

fn layout(mesh: &Mesh, deg: &DegreeDistribution) -> Layout {
    let mut face_off = Vec::with_capacity(mesh.num_faces());
    let mut face_dim = Vec::with_capacity(mesh.num_faces());
    let mut acc = 0;
    for f in 0..mesh.num_faces() {
        face_off.push(acc);
        let d = space_dim(deg.face_spec(f));
        face_dim.push(d);
        acc += d;
    }
    let interior_edges = mesh.interior_edges();
    let interior_vertices = mesh.interior_vertices();
    let mut vertex_pos = vec![None; mesh.num_vertices()];
    for (k, &v) in interior_vertices.iter().enumerate() {
        vertex_pos[v] = Some(k);
    }
    Layout {
        face_off,
        face_dim,
        interior_edges,
        interior_vertices,
        vertex_pos,
    }
}

fn offsets(sizes: impl Iterator<Item = usize>) -> (Vec<usize>, usize) {
    let mut out = Vec::new();
    let mut acc = 0;
    for s in sizes {
        out.push(acc);
        acc += s;
    }
    (out, acc)
}

fn check_inputs(mesh: &Mesh, deg: &DegreeDistribution, r: &SmoothnessDistribution) -> Result<()> {
    deg.check(mesh)?;
    if r.values().len() != mesh.num_edges() {
        return Err(Error::Smoothness(
            "distribution does not match the mesh".into(),
        ));
    }
    Ok(())
}

fn delta(to: &Point, from: &Point) -> (Rational, Rational) {
    (&to.x - &from.x, &to.y - &from.y)
}

/// Maps `X_2 → X_1` in monomial coordinates: per interior edge and adjacent
/// face, the signed translation of `P_σ` into the edge frame inside `P_τ`.
fn face_to_edge_blocks<'a>(
    mesh: &'a Mesh,
    deg: &'a DegreeDistribution,
    lay: &'a Layout,
    edges: &'a [EdgeData],
) -> impl Iterator<Item = (usize, usize, RationalMatrix)> + 'a {
    let origin = Point::new(
        Rational::from_integer(0.into()),
        Rational::from_integer(0.into()),
    );
    lay.interior_edges
        .iter()
        .enumerate()
        .flat_map(move |(k, &e)| {
            let ed = &edges[k];
            let lo = mesh.vertex(mesh.edge(e).ends.0);
            let (dx, dy) = delta(lo, &origin);
            let shift = ed.basis.shift_matrix((&dx, &dy));
            mesh.edge(e)
                .faces
                .iter()
                .map(|&f| {
                    let face = mesh.face(f);
                    let pos = face
                        .edges
                        .iter()
                        .position(|&x| x == e)
                        .expect("face lists its edges");
                    let sign = Rational::from_integer(face.signs[pos].into());
                    let embed = MonomialBasis::new(deg.face_spec(f)).embedding_matrix(&ed.basis);
                    (k, f, shift.mul(&embed).scaled(&sign))
                })
                .collect::<Vec<_>>()
        })
}

fn edge_data(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    lay: &Layout,
) -> Vec<EdgeData> {
    lay.interior_edges
        .iter()
        .map(|&e| {
            let (basis, rref) = local::edge_ideal_rref(mesh, deg, r, e);
            let proj = local::quotient_projection(&rref);
            EdgeData { basis, rref, proj }
        })
        .collect()
}

/// The quotient top map `∂̄ : ⊕ P_σ → ⊕ P_τ / J_τ`.
fn quotient_top(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    lay: &Layout,
    edges: &[EdgeData],
) -> RationalMatrix {
    let (q_off, q_total) = offsets(edges.iter().map(|d| d.proj.rows()));
    let cols: usize = lay.face_dim.iter().sum();
    let mut m = RationalMatrix::zeros(q_total, cols);
    for (k, f, block) in face_to_edge_blocks(mesh, deg, lay, edges) {
        m.set_block(q_off[k], lay.face_off[f], &edges[k].proj.mul(&block));
    }
    m
}

pub fn build_complexes(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
) -> Result<Complexes> {
    check_inputs(mesh, deg, r)?;
    let lay = layout(mesh, deg);
    let edges = edge_data(mesh, deg, r, &lay);
    let verts: Vec<VertexData> = lay
        .interior_vertices
        .iter()
        .map(|&v| {
            let (basis, rref) = local::vertex_ideal_rref(mesh, deg, r, v);
            let proj = local::quotient_projection(&rref);
            VertexData { basis, rref, proj }
        })
        .collect();

    let (ce_off, ce_total) = offsets(edges.iter().map(|d| d.basis.len()));
    let (qe_off, qe_total) = offsets(edges.iter().map(|d| d.proj.rows()));
    let (ie_off, ie_total) = offsets(edges.iter().map(|d| d.rref.rank()));
    let (cv_off, cv_total) = offsets(verts.iter().map(|d| d.basis.len()));
    let (qv_off, qv_total) = offsets(verts.iter().map(|d| d.proj.rows()));
    let (iv_off, iv_total) = offsets(verts.iter().map(|d| d.rref.rank()));
    let c_faces: usize = lay.face_dim.iter().sum();

    let mut c2 = RationalMatrix::zeros(ce_total, c_faces);
    let mut q2 = RationalMatrix::zeros(qe_total, c_faces);
    for (k, f, block) in face_to_edge_blocks(mesh, deg, &lay, &edges) {
        q2.set_block(qe_off[k], lay.face_off[f], &edges[k].proj.mul(&block));
        c2.set_block(ce_off[k], lay.face_off[f], &block);
    }

    let mut c1 = RationalMatrix::zeros(cv_total, ce_total);
    let mut q1 = RationalMatrix::zeros(qv_total, qe_total);
    let mut i1 = RationalMatrix::zeros(iv_total, ie_total);
    for (k, &e) in lay.interior_edges.iter().enumerate() {
        let ed = &edges[k];
        let (lo, hi) = mesh.edge(e).ends;
        let lift = local::quotient_lift(&ed.rref);
        let incl = local::ideal_inclusion(&ed.rref);
        for (v, sign) in [(lo, -1i64), (hi, 1i64)] {
            let Some(j) = lay.vertex_pos[v] else { continue };
            let vd = &verts[j];
            let (dx, dy) = delta(mesh.vertex(v), mesh.vertex(lo));
            let block = vd
                .basis
                .shift_matrix((&dx, &dy))
                .mul(&ed.basis.embedding_matrix(&vd.basis))
                .scaled(&Rational::from_integer(sign.into()));
            c1.set_block(cv_off[j], ce_off[k], &block);
            q1.set_block(qv_off[j], qe_off[k], &vd.proj.mul(&block).mul(&lift));
            let coords = local::ideal_coordinates(&vd.rref);
            i1.set_block(iv_off[j], ie_off[k], &coords.mul(&block).mul(&incl));
        }
    }

    Ok(Complexes {
        ideal: GradedComplex::new(
            ComplexRow::Ideal,
            [0, ie_total, iv_total],
            RationalMatrix::zeros(ie_total, 0),
            i1,
        ),
        chain: GradedComplex::new(ComplexRow::Chain, [c_faces, ce_total, cv_total], c2, c1),
        quotient: GradedComplex::new(ComplexRow::Quotient, [c_faces, qe_total, qv_total], q2, q1),
    })
}

/// `h_1(Q^r) = h_0(Q^r) = 0`, decided by direct rank computations.
pub fn is_lower_acyclic(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
) -> Result<bool> {
    let q = build_complexes(mesh, deg, r)?.quotient;
    Ok(q.homology_at(0) == 0 && q.homology_at(1) == 0)
}

/// Spline dimension as the kernel of the quotient top map; needs no
/// acyclicity hypothesis.
pub fn spline_dim_kernel(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
) -> Result<usize> {
    check_inputs(mesh, deg, r)?;
    let lay = layout(mesh, deg);
    let edges = edge_data(mesh, deg, r, &lay);
    Ok(kernel_dim(&quotient_top(mesh, deg, &lay, &edges)))
}
