//! Sums of shifted univariate ideals `V = Σ (x - a_i)^{d_i} · P̄_{m - d_i - e_i}`.

use std::collections::BTreeMap;

use num_traits::{One, Zero};

use crate::exactla::{rank, Rational, RationalMatrix};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ShiftedPoint {
    pub a: Rational,
    /// Exponent, at least -1.
    pub d: i64,
    /// Degree shift, at least 0.
    pub e: i64,
}

impl ShiftedPoint {
    pub fn new(a: Rational, d: i64, e: i64) -> Self {
        assert!(d >= -1 && e >= 0, "shifted point needs d >= -1 and e >= 0");
        ShiftedPoint { a, d, e }
    }
}

/// Indices in `subset` keeping one per distinct root: the one of minimal `d`,
/// then smallest index. Returned in increasing order.
pub fn min_index_set(points: &[ShiftedPoint], subset: &[usize]) -> Vec<usize> {
    let mut best: BTreeMap<&Rational, usize> = BTreeMap::new();
    let mut sorted = subset.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    for i in sorted {
        let p = &points[i];
        match best.get(&p.a) {
            Some(&j) if points[j].d <= p.d => {}
            _ => {
                best.insert(&p.a, i);
            }
        }
    }
    let mut out: Vec<usize> = best.into_values().collect();
    out.sort_unstable();
    out
}

fn clamped_sum(n: i64, points: &[ShiftedPoint], idx: &[usize]) -> i64 {
    let s: i64 = idx.iter().map(|&i| (n - points[i].d + 1).max(0)).sum();
    s.min(n + 1)
}

/// `dim Σ (x - a_i)^{d_i} P̄_{m - d_i}` for unshifted points.
pub fn uniform_sum_dim(m: u32, points: &[ShiftedPoint]) -> usize {
    let all: Vec<usize> = (0..points.len()).collect();
    clamped_sum(m as i64, points, &min_index_set(points, &all)).max(0) as usize
}

/// Closed-form dimension of `V` inside `P̄_m`.
///
/// Points with `e_i > m` contribute nothing and are skipped.
pub fn univ_sum_dim(m: u32, points: &[ShiftedPoint]) -> usize {
    let m = m as i64;
    let live: Vec<usize> = (0..points.len()).filter(|&i| points[i].e <= m).collect();
    if live.is_empty() {
        return 0;
    }
    let mut es: Vec<i64> = live.iter().map(|&i| points[i].e).collect();
    es.sort_unstable_by(|a, b| b.cmp(a));
    es.dedup();
    let mut thresholds = vec![m + 1];
    thresholds.extend(es);

    let mut total = 0i64;
    for j in 0..thresholds.len() - 1 {
        let (hi, lo) = (thresholds[j], thresholds[j + 1]);
        let subset: Vec<usize> = live.iter().copied().filter(|&i| points[i].e < hi).collect();
        let mins = min_index_set(points, &subset);
        total += clamped_sum(m - lo, points, &mins) - clamped_sum(m - hi, points, &mins);
    }
    total as usize
}

fn binomial_poly(a: &Rational, d: u32) -> Vec<Rational> {
    // coefficients of (x - a)^d, lowest degree first
    let mut p = vec![Rational::one()];
    for _ in 0..d {
        let mut next = vec![Rational::zero(); p.len() + 1];
        for (k, c) in p.iter().enumerate() {
            next[k + 1] += c;
            next[k] -= c * a;
        }
        p = next;
    }
    p
}

/// Rank of the generators `(x - a_i)^{d_i} x^k`, `k ≤ m - d_i - e_i`, in `P̄_m`.
///
/// `d_i = -1` is read as the full space `P̄_{m - e_i}`.
pub fn univ_sum_dim_oracle(m: u32, points: &[ShiftedPoint]) -> usize {
    let m = m as i64;
    let mut rows = Vec::new();
    for p in points {
        let d = p.d.max(0);
        let top = m - d - p.e;
        if top < 0 {
            continue;
        }
        let base = binomial_poly(&p.a, d as u32);
        for k in 0..=top as usize {
            let mut row = vec![Rational::zero(); m as usize + 1];
            for (t, c) in base.iter().enumerate() {
                row[t + k] = c.clone();
            }
            rows.push(row);
        }
    }
    if rows.is_empty() {
        return 0;
    }
    rank(&RationalMatrix::from_rows(rows))
}

pub fn is_full(m: u32, points: &[ShiftedPoint]) -> bool {
    univ_sum_dim(m, points) == m as usize + 1
}
