//! Exact dimensions of bivariate polynomial spline spaces of mixed smoothness.
//!
//! A spline space on a planar mesh is described by a polynomial space per
//! face and a smoothness order per edge. This crate builds the generalized
//! Billera-Schenck-Stillman chain complex `Q^r` together with its companions
//! `I^r` and `C`, computes their homology exactly over the rationals, and
//! certifies smoothness reductions that keep `Q^r` lower-acyclic, in which
//! case the spline dimension equals the Euler characteristic of `Q^r`.
//!
//! Every dimension can also be obtained from [`complex::spline_dim_kernel`],
//! the kernel of the top boundary map, which needs no acyclicity hypothesis.

pub mod complex;
pub mod exactla;
pub mod io;
pub mod mesh;
pub mod polyspace;
pub mod rules;

pub use complex::{
    build_complexes, euler_characteristic, homology_dim, is_lower_acyclic, spline_dim_kernel,
    ComplexRow, Complexes, GradedComplex, SmoothnessDistribution,
};
pub use exactla::{Rational, RationalMatrix};
pub use mesh::{DegreeDistribution, Mesh};
pub use polyspace::{PolyKind, PolySpaceSpec};

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("invalid mesh: {}", .0.join("; "))]
    InvalidMesh(Vec<String>),
    #[error("degenerate edge {0}: endpoints coincide")]
    DegenerateEdge(usize),
    #[error("degree distribution: {0}")]
    Degree(String),
    #[error("smoothness distribution: {0}")]
    Smoothness(String),
    #[error("segments defined only for T-meshes")]
    NotTMesh,
    #[error("invalid segment: {0}")]
    Segment(String),
    #[error("reduction request: {0}")]
    Reduction(String),
    #[error("{0}")]
    Prune(String),
    #[error("formula inapplicable; use kernel oracle ({0})")]
    FormulaInapplicable(String),
    #[error("{0}")]
    Rule(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
