//! Shared fixtures, generators and brute-force oracles for integration tests.
//!
//! The oracles here deliberately avoid the crate's polynomial and complex
//! code: spline spaces are built straight from the smoothness conditions and
//! ranks come from a plain rational Gauss-Jordan elimination.

#![allow(dead_code)]

use std::collections::{BTreeMap, BTreeSet};
use std::path::PathBuf;

use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use splinedim::io::{parse_model, Model};
use splinedim::mesh::Point;
use splinedim::{DegreeDistribution, Mesh, PolyKind, Rational, SmoothnessDistribution};

pub fn q(n: i64) -> Rational {
    Rational::from_integer(n.into())
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    rand::SeedableRng::seed_from_u64(seed)
}

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.json"))
}

pub fn fixture(name: &str) -> Model {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_model(&text).unwrap()
}

pub fn mesh(coords: &[(i64, i64)], faces: &[Vec<usize>]) -> Mesh {
    Mesh::new(
        coords
            .iter()
            .map(|&(x, y)| Point::new(q(x), q(y)))
            .collect(),
        faces.to_vec(),
    )
    .unwrap()
}

pub fn grid(nx: usize, ny: usize) -> Mesh {
    let mut c = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            c.push((i as i64, j as i64));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut f = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            f.push(vec![id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1)]);
        }
    }
    mesh(&c, &f)
}

pub fn smoothness_on_line(m: &Mesh, r: i64, horizontal_y: i64, s: i64) -> SmoothnessDistribution {
    let mut out = SmoothnessDistribution::uniform(m, r);
    for e in m.interior_edges() {
        let (a, b) = m.edge(e).ends;
        if m.vertex(a).y == q(horizontal_y) && m.vertex(b).y == q(horizontal_y) {
            out = out.with(e, s);
        }
    }
    out
}

// ---------------------------------------------------------------------------
// exact linear algebra

pub fn gauss_rank(mut rows: Vec<Vec<Rational>>) -> usize {
    let Some(cols) = rows.first().map(|r| r.len()) else {
        return 0;
    };
    let mut rank = 0;
    for c in 0..cols {
        let Some(p) = (rank..rows.len()).find(|&i| !rows[i][c].is_zero()) else {
            continue;
        };
        rows.swap(rank, p);
        let inv = Rational::one() / rows[rank][c].clone();
        for v in rows[rank].iter_mut() {
            *v *= &inv;
        }
        let pivot = rows[rank].clone();
        for (i, row) in rows.iter_mut().enumerate() {
            if i == rank || row[c].is_zero() {
                continue;
            }
            let f = row[c].clone();
            for (v, pv) in row.iter_mut().zip(&pivot) {
                if !pv.is_zero() {
                    *v -= &f * pv;
                }
            }
        }
        rank += 1;
    }
    rank
}

// ---------------------------------------------------------------------------
// spline dimension from the smoothness conditions

type Poly = BTreeMap<(u32, u32), Rational>;

fn monomials(kind: PolyKind, m: u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for i in 0..=m {
        for j in 0..=m {
            if kind == PolyKind::Bidegree || i + j <= m {
                out.push((i, j));
            }
        }
    }
    out
}

fn directional(p: &Poly, nx: &Rational, ny: &Rational) -> Poly {
    let mut out = Poly::new();
    for (&(i, j), c) in p {
        if i > 0 {
            *out.entry((i - 1, j)).or_insert_with(Rational::zero) += c * nx * q(i as i64);
        }
        if j > 0 {
            *out.entry((i, j - 1)).or_insert_with(Rational::zero) += c * ny * q(j as i64);
        }
    }
    out.retain(|_, c| !c.is_zero());
    out
}

fn powers(base: &Rational, step: &Rational, n: u32) -> Vec<Vec<Rational>> {
    // coefficients in t of (base + step t)^k for k = 0..=n
    let mut out = vec![vec![Rational::one()]];
    for k in 1..=n as usize {
        let prev = &out[k - 1];
        let mut next = vec![Rational::zero(); k + 1];
        for (d, c) in prev.iter().enumerate() {
            next[d] += c * base;
            next[d + 1] += c * step;
        }
        out.push(next);
    }
    out
}

/// `p(a + t (b - a))` as coefficients in `t`.
fn restrict_to_line(p: &Poly, a: &Point, b: &Point, top: usize) -> Vec<Rational> {
    let n = p.keys().map(|&(i, j)| i.max(j)).max().unwrap_or(0);
    let px = powers(&a.x, &(&b.x - &a.x), n);
    let py = powers(&a.y, &(&b.y - &a.y), n);
    let mut out = vec![Rational::zero(); top + 1];
    for (&(i, j), c) in p {
        for (s, u) in px[i as usize].iter().enumerate() {
            for (t, v) in py[j as usize].iter().enumerate() {
                out[s + t] += c * u * v;
            }
        }
    }
    out
}

/// Dimension of the spline space by brute force: one unknown per face
/// monomial and, across every interior edge of order `r ≥ 0`, the jump and
/// its first `r` normal derivatives must vanish along the edge's line.
pub fn divisibility_dim(
    mesh: &Mesh,
    deg: &DegreeDistribution,
    r: &SmoothnessDistribution,
) -> usize {
    let loops = mesh.face_loops();
    let bases: Vec<Vec<(u32, u32)>> = deg
        .degrees()
        .iter()
        .map(|&m| monomials(deg.kind(), m))
        .collect();
    let mut offset = vec![0];
    for b in &bases {
        offset.push(offset.last().unwrap() + b.len());
    }
    let unknowns = *offset.last().unwrap();
    let mut sides: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, l) in loops.iter().enumerate() {
        for k in 0..l.len() {
            let (a, b) = (l[k], l[(k + 1) % l.len()]);
            sides.entry((a.min(b), a.max(b))).or_default().push(f);
        }
    }
    let top = 2 * *deg.degrees().iter().max().unwrap() as usize;
    let mut rows = Vec::new();
    for (&(a, b), faces) in &sides {
        if faces.len() != 2 {
            continue;
        }
        let order = r.get(mesh.edge_between(a, b).unwrap());
        if order < 0 {
            continue;
        }
        let (pa, pb) = (mesh.vertex(a), mesh.vertex(b));
        let (nx, ny) = (&pa.y - &pb.y, &pb.x - &pa.x);
        for k in 0..=order as u32 {
            let mut block = vec![vec![Rational::zero(); unknowns]; top + 1];
            for (sign, &f) in [1i64, -1].iter().zip(faces) {
                for (idx, &(i, j)) in bases[f].iter().enumerate() {
                    let mut p = Poly::from([((i, j), Rational::one())]);
                    for _ in 0..k {
                        p = directional(&p, &nx, &ny);
                    }
                    for (t, c) in restrict_to_line(&p, pa, pb, top).into_iter().enumerate() {
                        block[t][offset[f] + idx] += c * q(*sign);
                    }
                }
            }
            rows.extend(
                block
                    .into_iter()
                    .filter(|row| row.iter().any(|c| !c.is_zero())),
            );
        }
    }
    unknowns - gauss_rank(rows)
}

/// Univariate spline count `(m+1) + Σ (m - r_k)` for interior knots of order `r_k`.
pub fn univariate_spline_dim(m: u32, knot_orders: &[i64]) -> i64 {
    (m as i64 + 1) + knot_orders.iter().map(|&r| m as i64 - r).sum::<i64>()
}

/// Smallest `d` for which the `(r+1)`-st powers of the given directions
/// generate every binary form of degree `d`, searched up to `max`.
pub fn power_saturation(directions: &[(i64, i64)], r: u32, max: u32) -> Option<u32> {
    (0..=max).find(|&k| {
        if k < r + 1 {
            return false;
        }
        // forms of degree k in (x, y), coefficient of x^i y^(k-i) at i
        let mut rows = Vec::new();
        for &(a, b) in directions {
            // line a y - b x through the origin along (a, b)
            let p = powers(&q(-b), &q(a), r + 1).pop().unwrap();
            for shift in 0..=(k - r - 1) as usize {
                let mut row = vec![Rational::zero(); k as usize + 1];
                // (-b x + a y)^(r+1): coefficient of y^s x^(r+1-s) is p[s]
                for (s, c) in p.iter().enumerate() {
                    row[shift + s] += c;
                }
                rows.push(row);
            }
        }
        gauss_rank(rows) == k as usize + 1
    })
}

// ---------------------------------------------------------------------------
// random meshes

/// Jittered grid split into triangles with random diagonals.
pub fn random_triangulation(rng: &mut ChaCha8Rng, nx: usize, ny: usize) -> Mesh {
    let mut c = Vec::new();
    for j in 0..=ny {
        for i in 0..=nx {
            let inside = i > 0 && i < nx && j > 0 && j < ny;
            let (dx, dy) = if inside {
                (rng.gen_range(-1..=1), rng.gen_range(-1..=1))
            } else {
                (0, 0)
            };
            c.push((6 * i as i64 + dx, 6 * j as i64 + dy));
        }
    }
    let id = |i: usize, j: usize| j * (nx + 1) + i;
    let mut f = Vec::new();
    for j in 0..ny {
        for i in 0..nx {
            let (a, b, cc, d) = (id(i, j), id(i + 1, j), id(i + 1, j + 1), id(i, j + 1));
            if rng.gen_bool(0.5) {
                f.push(vec![a, b, cc]);
                f.push(vec![a, cc, d]);
            } else {
                f.push(vec![a, b, d]);
                f.push(vec![b, cc, d]);
            }
        }
    }
    mesh(&c, &f)
}

/// Star of triangles around the origin whose edges lie on the given lines,
/// each line contributing both of its rays.
pub fn vertex_star(directions: &[(i64, i64)]) -> Mesh {
    let mut rays: Vec<(i64, i64)> = directions
        .iter()
        .flat_map(|&(a, b)| [(a, b), (-a, -b)])
        .collect();
    rays.sort_by(|p, q| {
        let ang = |(x, y): (i64, i64)| (y as f64).atan2(x as f64);
        ang(*p).partial_cmp(&ang(*q)).unwrap()
    });
    let mut c = vec![(0, 0)];
    c.extend(rays.iter().copied());
    let n = rays.len();
    let f: Vec<Vec<usize>> = (0..n).map(|k| vec![0, 1 + k, 1 + (k + 1) % n]).collect();
    mesh(&c, &f)
}

/// `n` lines through the origin with distinct slopes and small integer directions.
pub fn random_directions(rng: &mut ChaCha8Rng, n: usize) -> Vec<(i64, i64)> {
    let mut pool: Vec<(i64, i64)> = Vec::new();
    let mut seen = BTreeSet::new();
    for a in -3i64..=3 {
        for b in 0i64..=3 {
            if (a, b) == (0, 0) || (b == 0 && a < 0) || num_integer::gcd(a, b) != 1 {
                continue;
            }
            if seen.insert((a, b)) {
                pool.push((a, b));
            }
        }
    }
    pool.shuffle(rng);
    pool.truncate(n);
    pool
}

/// Random triangle fan around one interior vertex.
pub fn random_fan(rng: &mut ChaCha8Rng, k: usize) -> Mesh {
    // k rim points on a circle-ish polygon, angles strictly increasing
    let rim: Vec<(i64, i64)> = (0..k)
        .map(|i| {
            let t = std::f64::consts::TAU * (i as f64 + rng.gen_range(-0.2..0.2)) / k as f64;
            (
                (12.0 * t.cos()).round() as i64,
                (12.0 * t.sin()).round() as i64,
            )
        })
        .collect();
    let mut c = vec![(0, 0)];
    c.extend(rim);
    let f: Vec<Vec<usize>> = (0..k).map(|i| vec![0, 1 + i, 1 + (i + 1) % k]).collect();
    mesh(&c, &f)
}

/// Random box subdivision of `[0,8]²` with T-junctions.
pub fn random_tmesh(rng: &mut ChaCha8Rng, splits: usize) -> Mesh {
    let mut rects: Vec<[i64; 4]> = vec![[0, 0, 8, 8]];
    for _ in 0..splits {
        let k = rng.gen_range(0..rects.len());
        let [x0, y0, x1, y1] = rects[k];
        let vertical = if x1 - x0 > 1 && y1 - y0 > 1 {
            rng.gen_bool(0.5)
        } else {
            x1 - x0 > 1
        };
        if vertical && x1 - x0 > 1 {
            let x = rng.gen_range(x0 + 1..x1);
            rects[k] = [x0, y0, x, y1];
            rects.push([x, y0, x1, y1]);
        } else if !vertical && y1 - y0 > 1 {
            let y = rng.gen_range(y0 + 1..y1);
            rects[k] = [x0, y0, x1, y];
            rects.push([x0, y, x1, y1]);
        }
    }
    boxes_to_mesh(&rects)
}

/// Mesh from axis-aligned boxes `[x0, y0, x1, y1]` tiling a region.
pub fn boxes_to_mesh(rects: &[[i64; 4]]) -> Mesh {
    let corners: BTreeSet<(i64, i64)> = rects
        .iter()
        .flat_map(|&[x0, y0, x1, y1]| [(x0, y0), (x1, y0), (x1, y1), (x0, y1)])
        .collect();
    let pts: Vec<(i64, i64)> = corners.iter().copied().collect();
    let id: BTreeMap<(i64, i64), usize> = pts.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let faces = rects
        .iter()
        .map(|&[x0, y0, x1, y1]| {
            let mut bottom: Vec<_> = pts
                .iter()
                .filter(|p| p.1 == y0 && p.0 >= x0 && p.0 < x1)
                .copied()
                .collect();
            bottom.sort();
            let mut right: Vec<_> = pts
                .iter()
                .filter(|p| p.0 == x1 && p.1 >= y0 && p.1 < y1)
                .copied()
                .collect();
            right.sort_by_key(|p| p.1);
            let mut top: Vec<_> = pts
                .iter()
                .filter(|p| p.1 == y1 && p.0 > x0 && p.0 <= x1)
                .copied()
                .collect();
            top.sort_by_key(|p| -p.0);
            let mut left: Vec<_> = pts
                .iter()
                .filter(|p| p.0 == x0 && p.1 > y0 && p.1 <= y1)
                .copied()
                .collect();
            left.sort_by_key(|p| -p.1);
            bottom
                .into_iter()
                .chain(right)
                .chain(top)
                .chain(left)
                .map(|p| id[&p])
                .collect()
        })
        .collect::<Vec<Vec<usize>>>();
    mesh(&pts, &faces)
}

pub fn random_smoothness(
    rng: &mut ChaCha8Rng,
    mesh: &Mesh,
    choices: &[i64],
) -> SmoothnessDistribution {
    let values = mesh
        .edges()
        .iter()
        .map(|e| {
            if e.interior {
                *choices.choose(rng).unwrap()
            } else {
                -1
            }
        })
        .collect();
    SmoothnessDistribution::new(mesh, values).unwrap()
}
