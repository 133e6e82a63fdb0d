use std::collections::BTreeSet;

use crate::complex::{build_complexes, SmoothnessDistribution};
use crate::mesh::{DegreeDistribution, Mesh};
use crate::polyspace::space_dim;
use crate::{Error, Result};

/// A mesh with unconstrained faces removed.
#[derive(Clone, Debug)]
pub struct Pruned {
    pub mesh: Mesh,
    pub deg: DegreeDistribution,
    pub r: SmoothnessDistribution,
    /// Removed faces, as ids of the original mesh.
    pub faces: Vec<usize>,
    /// Original id of each kept face.
    pub kept_faces: Vec<usize>,
    /// Original id of each kept vertex.
    pub kept_vertices: Vec<usize>,
}

/// Faces whose every edge has order -1.
pub fn prunable_faces(mesh: &Mesh, r: &SmoothnessDistribution) -> Vec<usize> {
    (0..mesh.num_faces())
        .filter(|&f| mesh.face(f).edges.iter().all(|&e| r.get(e) == -1))
        .collect()
}

fn checked_faces(
    mesh: &Mesh,
    r: &SmoothnessDistribution,
    subset: Option<&[usize]>,
) -> Result<Vec<usize>> {
    let all = prunable_faces(mesh, r);
    let Some(subset) = subset else { return Ok(all) };
    let mut faces: Vec<usize> = subset.to_vec();
    faces.sort_unstable();
    faces.dedup();
    if let Some(f) = faces.iter().find(|f| !all.contains(f)) {
        return Err(Error::Prune(format!(
            "face {f} has an edge of order other than -1"
        )));
    }
    Ok(faces)
}

/// Removes the unconstrained faces (all of them, or the given subset) and
/// restricts degrees and smoothness. Interiority is recomputed, so edges
/// that become boundary get order -1.
pub fn prune(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    subset: Option<&[usize]>,
) -> Result<Pruned> {
    let faces = checked_faces(mesh, r, subset)?;
    let removed: BTreeSet<usize> = faces.iter().copied().collect();
    let (pm, kept_faces, kept_vertices) = mesh.without_faces(&removed)?;
    let pr = r.restrict(mesh, &pm, &kept_vertices);
    Ok(Pruned {
        deg: deg.restrict(&kept_faces),
        r: pr,
        mesh: pm,
        faces,
        kept_faces,
        kept_vertices,
    })
}

/// Spline dimension on the pruned mesh, `χ(Q^r) - Σ dim P_σ` over the
/// removed faces. Requires `Q^r` lower-acyclic on the full mesh.
pub fn pruned_dimension(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
    faces: &[usize],
) -> Result<i64> {
    let faces = checked_faces(mesh, r, Some(faces))?;
    let q = build_complexes(mesh, deg, r)?.quotient;
    let [_, h1, h0] = q.homology();
    if h1 != 0 || h0 != 0 {
        return Err(Error::FormulaInapplicable(format!("h1 = {h1}, h0 = {h0}")));
    }
    let removed: usize = faces.iter().map(|&f| space_dim(deg.face_spec(f))).sum();
    Ok(q.euler_characteristic() - removed as i64)
}
