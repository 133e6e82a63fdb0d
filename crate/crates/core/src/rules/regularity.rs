use crate::complex::{vertex_ideal_dim, SmoothnessDistribution};
use crate::mesh::{DegreeDistribution, Mesh};
use crate::polyspace::{space_dim, PolyKind, PolySpaceSpec};
use crate::{Error, Result};

/// Degree from which every form lies in the ideal generated by the
/// `(r+1)`-st powers of `n` distinct linear forms through a point.
///
/// `t = min(r + 2, n)` and `Ω = r + ⌈(r + 1) / (t - 1)⌉`.
pub fn omega_formula(r: i64, n: usize) -> Result<i64> {
    if n < 2 {
        return Err(Error::Rule(format!(
            "regularity needs at least two slopes, got {n}"
        )));
    }
    if r < 0 {
        return Ok(0);
    }
    let t = (r + 2).min(n as i64);
    Ok(r + (r + 1 + t - 2) / (t - 1))
}

/// `Ω` at vertex `v` for smoothness order `r` on all of its edges.
pub fn omega(mesh: &Mesh, v: usize, r: i64) -> Result<i64> {
    omega_formula(r, mesh.slopes_at_vertex(v))
}

/// Smallest `d` such that every form of degree at least `d` (up to
/// `max_degree`) in local coordinates at `v` lies in `J_v`, found from ranks
/// of the vertex ideal in growing total-degree spaces. `None` if no such
/// `d ≤ max_degree` exists.
pub fn saturation_degree(
    mesh: &Mesh,
    r: &SmoothnessDistribution,
    v: usize,
    max_degree: u32,
) -> Option<u32> {
    // J_v is homogeneous at v, so its graded pieces are successive rank differences
    let mut full_from: Option<u32> = None;
    let mut prev = 0usize;
    for k in 0..=max_degree {
        let deg = DegreeDistribution::uniform(PolyKind::TotalDegree, k, mesh.num_faces());
        let dim = vertex_ideal_dim(mesh, &deg, r, v);
        let piece = dim - prev;
        prev = dim;
        let full = space_dim(PolySpaceSpec::total(k))
            - if k == 0 {
                0
            } else {
                space_dim(PolySpaceSpec::total(k - 1))
            };
        if piece == full {
            full_from.get_or_insert(k);
        } else {
            full_from = None;
        }
    }
    full_from
}
