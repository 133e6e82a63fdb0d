//! Edge and vertex ideals in local coordinate frames.

use num_traits::{One, Zero};

use super::SmoothnessDistribution;
use crate::exactla::{rank, rref_rows, Rational, RationalMatrix, Rref};
use crate::mesh::{DegreeDistribution, Mesh, Point};
use crate::polyspace::{
    principal_ideal_dim, principal_ideal_generators, space_dim, MonomialBasis, Poly2, PolySpaceSpec,
};

/// Generators of `J_τ ⊆ P_τ` written in coordinates centred at `origin`.
pub fn edge_generators(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
    origin: &Point,
) -> Vec<Poly2> {
    let spec = deg.edge_spec(mesh, e);
    let s = r.get(e);
    if s < 0 {
        return MonomialBasis::new(spec)
            .exponents()
            .iter()
            .map(|&(i, j)| Poly2::monomial(i, j, Rational::one()))
            .collect();
    }
    let form = mesh.edge_line_form(e).translated(&origin.x, &origin.y);
    principal_ideal_generators(spec, &form, (s + 1) as u32)
}

pub fn edge_ideal_dim(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> usize {
    let spec = deg.edge_spec(mesh, e);
    let s = r.get(e);
    if s < 0 {
        space_dim(spec)
    } else {
        principal_ideal_dim(spec, mesh.edge_line_form(e), (s + 1) as u32)
    }
}

fn rows_in(basis: &MonomialBasis, gens: &[Poly2]) -> Vec<Vec<Rational>> {
    gens.iter()
        .map(|g| {
            basis
                .coordinates(g)
                .expect("ideal generator leaves the ambient space")
        })
        .collect()
}

/// Echelon basis of `J_τ` in the monomial basis of `P_τ`, frame at the
/// edge's lower endpoint.
pub fn edge_ideal_rref(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    e: usize,
) -> (MonomialBasis, Rref) {
    let basis = MonomialBasis::new(deg.edge_spec(mesh, e));
    let origin = mesh.vertex(mesh.edge(e).ends.0);
    let rows = rows_in(&basis, &edge_generators(mesh, deg, r, e, origin));
    let n = basis.len();
    (basis, rref_rows(rows, n))
}

/// Generators of `Σ_{τ ∋ v} J_τ` inside `spec`, in coordinates centred at `origin`.
pub fn vertex_generator_rows(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    v: usize,
    basis: &MonomialBasis,
    origin: &Point,
) -> Vec<Vec<Rational>> {
    mesh.vertex_edges(v)
        .iter()
        .filter(|&&e| mesh.edge(e).interior)
        .flat_map(|&e| rows_in(basis, &edge_generators(mesh, deg, r, e, origin)))
        .collect()
}

/// Echelon basis of `J_γ` in the monomial basis of `P_γ`, frame at the vertex.
pub fn vertex_ideal_rref(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    v: usize,
) -> (MonomialBasis, Rref) {
    let basis = MonomialBasis::new(deg.vertex_spec(mesh, v));
    let rows = vertex_generator_rows(mesh, deg, r, v, &basis, mesh.vertex(v));
    let n = basis.len();
    (basis, rref_rows(rows, n))
}

pub fn vertex_ideal_dim(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    v: usize,
) -> usize {
    let basis = MonomialBasis::new(deg.vertex_spec(mesh, v));
    let rows = vertex_generator_rows(mesh, deg, r, v, &basis, mesh.vertex(v));
    if rows.is_empty() {
        return 0;
    }
    rank(&RationalMatrix::from_rows(rows))
}

/// `dim spec - dim(Σ J_γ)` over the given vertices, all ideals read inside `spec`.
pub fn sum_of_vertex_ideals_codim(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    vertices: &[usize],
    spec: PolySpaceSpec,
) -> usize {
    let basis = MonomialBasis::new(spec);
    let origin = mesh.vertex(vertices[0]);
    let rows: Vec<Vec<Rational>> = vertices
        .iter()
        .flat_map(|&v| vertex_generator_rows(mesh, deg, r, v, &basis, origin))
        .collect();
    let rk = if rows.is_empty() {
        0
    } else {
        rank(&RationalMatrix::from_rows(rows))
    };
    basis.len() - rk
}

/// Projection `P → P/J` onto the free columns of an echelon basis.
pub fn quotient_projection(rref: &Rref) -> RationalMatrix {
    let free = rref.free_columns();
    let mut m = RationalMatrix::zeros(free.len(), rref.cols);
    for (k, &c) in free.iter().enumerate() {
        m.set(k, c, Rational::one());
        for (row, &p) in rref.rows.iter().zip(&rref.pivots) {
            if !row[c].is_zero() {
                m.set(k, p, -row[c].clone());
            }
        }
    }
    m
}

/// Lift `P/J → P` sending each quotient basis element to its monomial.
pub fn quotient_lift(rref: &Rref) -> RationalMatrix {
    let free = rref.free_columns();
    let mut m = RationalMatrix::zeros(rref.cols, free.len());
    for (k, &c) in free.iter().enumerate() {
        m.set(c, k, Rational::one());
    }
    m
}

/// Inclusion `J → P` with columns the echelon basis vectors.
pub fn ideal_inclusion(rref: &Rref) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rref.cols, rref.rank());
    for (k, row) in rref.rows.iter().enumerate() {
        for (c, x) in row.iter().enumerate() {
            if !x.is_zero() {
                m.set(c, k, x.clone());
            }
        }
    }
    m
}

/// Coordinates `P ⊇ J → J` in the echelon basis: reads the pivot entries.
/// Only meaningful on vectors already in `J`.
pub fn ideal_coordinates(rref: &Rref) -> RationalMatrix {
    let mut m = RationalMatrix::zeros(rref.rank(), rref.cols);
    for (k, &p) in rref.pivots.iter().enumerate() {
        m.set(k, p, Rational::one());
    }
    m
}
