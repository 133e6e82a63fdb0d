use std::cmp::Ordering;
use std::collections::{BTreeMap, HashMap};

use num_traits::Zero;
use serde::Serialize;

use super::geometry::{
    locate, on_segment, overlap_from_shared, segments_intersect, signed_area2, Location, Point,
};

/// One failed mesh condition, with the offending cell ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Violation {
    pub rule: &'static str,
    /// Vertex ids for vertex/edge problems, face ids for face problems.
    pub cells: Vec<usize>,
    pub message: String,
}

impl Violation {
    fn new(rule: &'static str, cells: Vec<usize>, message: impl Into<String>) -> Self {
        Violation {
            rule,
            cells,
            message: message.into(),
        }
    }
}

/// Check the mesh conditions, reporting every violation found.
pub fn validate(vertices: &[Point], faces: &[Vec<usize>]) -> Vec<Violation> {
    let mut out = Vec::new();
    if faces.is_empty() {
        out.push(Violation::new("empty", vec![], "mesh has no faces"));
        return out;
    }

    let mut seen: HashMap<&Point, usize> = HashMap::new();
    for (i, p) in vertices.iter().enumerate() {
        if let Some(&j) = seen.get(p) {
            out.push(Violation::new(
                "duplicate_vertex",
                vec![j, i],
                format!("vertices {j} and {i} coincide"),
            ));
        } else {
            seen.insert(p, i);
        }
    }

    // loops must be well formed before any geometry is attempted
    let mut good = vec![true; faces.len()];
    for (f, lp) in faces.iter().enumerate() {
        if lp.len() < 3 {
            out.push(Violation::new(
                "face_loop",
                vec![f],
                format!("face {f} has fewer than 3 vertices"),
            ));
            good[f] = false;
            continue;
        }
        if let Some(&v) = lp.iter().find(|&&v| v >= vertices.len()) {
            out.push(Violation::new(
                "face_loop",
                vec![f],
                format!("face {f} references missing vertex {v}"),
            ));
            good[f] = false;
            continue;
        }
        let mut sorted = lp.clone();
        sorted.sort_unstable();
        if sorted.windows(2).any(|w| w[0] == w[1]) {
            out.push(Violation::new(
                "face_loop",
                vec![f],
                format!("face {f} repeats a vertex"),
            ));
            good[f] = false;
        }
    }
    if !good.iter().all(|&g| g) {
        return out;
    }
    if !out.is_empty() {
        // coincident vertices make every later predicate unreliable
        return out;
    }

    let pts = |lp: &[usize]| -> Vec<&Point> { lp.iter().map(|&v| &vertices[v]).collect() };

    for (f, lp) in faces.iter().enumerate() {
        let poly = pts(lp);
        let n = poly.len();
        let mut simple = true;
        for i in 0..n {
            for j in i + 1..n {
                let (a, b) = (poly[i], poly[(i + 1) % n]);
                let (c, d) = (poly[j], poly[(j + 1) % n]);
                let adjacent = j == i + 1 || (i == 0 && j == n - 1);
                let bad = if adjacent {
                    if j == i + 1 {
                        overlap_from_shared(b, a, d)
                    } else {
                        overlap_from_shared(a, b, c)
                    }
                } else {
                    segments_intersect(a, b, c, d)
                };
                if bad {
                    simple = false;
                }
            }
        }
        if !simple {
            out.push(Violation::new(
                "face_simple",
                vec![f],
                format!("boundary of face {f} self-intersects"),
            ));
            continue;
        }
        match signed_area2(&poly).cmp(&Zero::zero()) {
            Ordering::Greater => {}
            Ordering::Equal => out.push(Violation::new(
                "face_area",
                vec![f],
                format!("face {f} has zero area"),
            )),
            Ordering::Less => out.push(Violation::new(
                "orientation",
                vec![f],
                format!("face {f} is not counterclockwise"),
            )),
        }
    }

    // undirected edges with the faces using them
    let mut directed: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    let mut undirected: BTreeMap<(usize, usize), Vec<usize>> = BTreeMap::new();
    for (f, lp) in faces.iter().enumerate() {
        for k in 0..lp.len() {
            let (u, v) = (lp[k], lp[(k + 1) % lp.len()]);
            directed.entry((u, v)).or_default().push(f);
            undirected.entry((u.min(v), u.max(v))).or_default().push(f);
        }
    }
    for ((u, v), fs) in &directed {
        if fs.len() > 1 {
            out.push(Violation::new(
                "face_overlap",
                fs.clone(),
                format!("edge {u}->{v} traversed in the same direction by several faces"),
            ));
        }
    }
    for ((u, v), fs) in &undirected {
        if fs.len() > 2 {
            out.push(Violation::new(
                "edge_multiplicity",
                vec![*u, *v],
                format!("edge {u}-{v} borders {} faces", fs.len()),
            ));
        }
    }

    // distinct edges may meet only in a shared endpoint
    let edges: Vec<(usize, usize)> = undirected.keys().copied().collect();
    for i in 0..edges.len() {
        for j in i + 1..edges.len() {
            let (a, b) = edges[i];
            let (c, d) = edges[j];
            let shared = [a, b].iter().copied().find(|x| *x == c || *x == d);
            let (pa, pb, pc, pd) = (&vertices[a], &vertices[b], &vertices[c], &vertices[d]);
            let bad = match shared {
                Some(s) => {
                    let o1 = if s == a { b } else { a };
                    let o2 = if s == c { d } else { c };
                    overlap_from_shared(&vertices[s], &vertices[o1], &vertices[o2])
                }
                None => segments_intersect(pa, pb, pc, pd),
            };
            if bad {
                out.push(Violation::new(
                    "edge_intersection",
                    vec![a, b, c, d],
                    format!("edges {a}-{b} and {c}-{d} meet away from a common vertex"),
                ));
            }
        }
    }

    // hanging vertices on an edge not listed in the adjacent loops
    for &(a, b) in &edges {
        for (v, p) in vertices.iter().enumerate() {
            if v != a && v != b && on_segment(&vertices[a], &vertices[b], p) {
                out.push(Violation::new(
                    "edge_intersection",
                    vec![a, b, v],
                    format!("vertex {v} lies inside edge {a}-{b}"),
                ));
            }
        }
    }

    // no face closure may reach into another face
    for (f, lp) in faces.iter().enumerate() {
        let poly = pts(lp);
        for (v, p) in vertices.iter().enumerate() {
            if locate(&poly, p) == Location::Inside {
                out.push(Violation::new(
                    "face_overlap",
                    vec![f],
                    format!("vertex {v} lies inside face {f}"),
                ));
            }
        }
        for &(a, b) in &edges {
            let mid = vertices[a].midpoint(&vertices[b]);
            if locate(&poly, &mid) == Location::Inside {
                out.push(Violation::new(
                    "face_overlap",
                    vec![f],
                    format!("edge {a}-{b} passes through face {f}"),
                ));
            }
        }
    }

    if !connected(faces, vertices.len()) {
        out.push(Violation::new(
            "connectivity",
            vec![],
            "domain is not connected",
        ));
    }
    out
}

fn connected(faces: &[Vec<usize>], nv: usize) -> bool {
    let mut parent: Vec<usize> = (0..faces.len()).collect();
    fn find(p: &mut [usize], x: usize) -> usize {
        let mut r = x;
        while p[r] != r {
            r = p[r];
        }
        let mut y = x;
        while p[y] != r {
            let next = p[y];
            p[y] = r;
            y = next;
        }
        r
    }
    let mut owner: Vec<Option<usize>> = vec![None; nv];
    for (f, lp) in faces.iter().enumerate() {
        for &v in lp {
            match owner[v] {
                Some(g) => {
                    let (a, b) = (find(&mut parent, f), find(&mut parent, g));
                    parent[a] = b;
                }
                None => owner[v] = Some(f),
            }
        }
    }
    let root = find(&mut parent, 0);
    (0..faces.len()).all(|f| find(&mut parent, f) == root)
}
