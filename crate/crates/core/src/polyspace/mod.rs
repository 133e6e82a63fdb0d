//! Polynomial spaces attached to mesh cells and their principal-ideal slices.
//!
//! Bivariate polynomials are kept as sparse exponent maps; a
//! [`MonomialBasis`] fixes coordinates for a [`PolySpaceSpec`]. The
//! univariate sums of shifted ideals used for T-mesh segment weights live in
//! [`univariate`].

pub mod univariate;

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::exactla::{rank, Rational, RationalMatrix};

pub use univariate::{
    is_full, min_index_set, uniform_sum_dim, univ_sum_dim, univ_sum_dim_oracle, ShiftedPoint,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PolyKind {
    /// Total degree at most `m`.
    TotalDegree,
    /// Degree at most `m` in each variable separately.
    Bidegree,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PolySpaceSpec {
    pub kind: PolyKind,
    pub m: u32,
}

impl PolySpaceSpec {
    pub fn total(m: u32) -> Self {
        PolySpaceSpec {
            kind: PolyKind::TotalDegree,
            m,
        }
    }

    pub fn bidegree(m: u32) -> Self {
        PolySpaceSpec {
            kind: PolyKind::Bidegree,
            m,
        }
    }

    pub fn contains_monomial(&self, i: u32, j: u32) -> bool {
        match self.kind {
            PolyKind::TotalDegree => i + j <= self.m,
            PolyKind::Bidegree => i <= self.m && j <= self.m,
        }
    }

    /// `self ⊆ other` as polynomial spaces.
    pub fn is_subspace_of(&self, other: &PolySpaceSpec) -> bool {
        self.kind == other.kind && self.m <= other.m
    }
}

impl fmt::Display for PolySpaceSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.kind {
            PolyKind::TotalDegree => write!(f, "P_{}", self.m),
            PolyKind::Bidegree => write!(f, "P_({},{})", self.m, self.m),
        }
    }
}

pub fn space_dim(spec: PolySpaceSpec) -> usize {
    let m = spec.m as usize;
    match spec.kind {
        PolyKind::TotalDegree => (m + 1) * (m + 2) / 2,
        PolyKind::Bidegree => (m + 1) * (m + 1),
    }
}

/// Sparse bivariate polynomial: exponent pair `(i, j)` of `x^i y^j` to coefficient.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Poly2 {
    terms: BTreeMap<(u32, u32), Rational>,
}

impl Poly2 {
    pub fn zero() -> Self {
        Poly2::default()
    }

    pub fn one() -> Self {
        Poly2::monomial(0, 0, Rational::one())
    }

    pub fn monomial(i: u32, j: u32, c: Rational) -> Self {
        let mut p = Poly2::zero();
        if !c.is_zero() {
            p.terms.insert((i, j), c);
        }
        p
    }

    /// `a x + b y + c`.
    pub fn linear(a: &Rational, b: &Rational, c: &Rational) -> Self {
        let mut p = Poly2::zero();
        for (e, v) in [((1, 0), a), ((0, 1), b), ((0, 0), c)] {
            if !v.is_zero() {
                p.terms.insert(e, v.clone());
            }
        }
        p
    }

    pub fn terms(&self) -> impl Iterator<Item = (&(u32, u32), &Rational)> {
        self.terms.iter()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn mul(&self, rhs: &Poly2) -> Poly2 {
        let mut out: BTreeMap<(u32, u32), Rational> = BTreeMap::new();
        for (&(i1, j1), c1) in &self.terms {
            for (&(i2, j2), c2) in &rhs.terms {
                *out.entry((i1 + i2, j1 + j2)).or_insert_with(Rational::zero) += c1 * c2;
            }
        }
        out.retain(|_, v| !v.is_zero());
        Poly2 { terms: out }
    }

    pub fn pow(&self, e: u32) -> Poly2 {
        (0..e).fold(Poly2::one(), |acc, _| acc.mul(self))
    }

    /// Multiplication by the monomial `x^i y^j`.
    pub fn shift_exponents(&self, i: u32, j: u32) -> Poly2 {
        Poly2 {
            terms: self
                .terms
                .iter()
                .map(|(&(a, b), c)| ((a + i, b + j), c.clone()))
                .collect(),
        }
    }

    pub fn degree_x(&self) -> Option<u32> {
        self.terms.keys().map(|&(i, _)| i).max()
    }

    pub fn degree_y(&self) -> Option<u32> {
        self.terms.keys().map(|&(_, j)| j).max()
    }
}

/// Ordered monomial basis of a polynomial space.
#[derive(Clone, Debug)]
pub struct MonomialBasis {
    spec: PolySpaceSpec,
    exps: Vec<(u32, u32)>,
    index: HashMap<(u32, u32), usize>,
}

impl MonomialBasis {
    pub fn new(spec: PolySpaceSpec) -> Self {
        let mut exps = Vec::with_capacity(space_dim(spec));
        for i in 0..=spec.m {
            for j in 0..=spec.m {
                if spec.contains_monomial(i, j) {
                    exps.push((i, j));
                }
            }
        }
        let index = exps.iter().enumerate().map(|(k, &e)| (e, k)).collect();
        MonomialBasis { spec, exps, index }
    }

    pub fn spec(&self) -> PolySpaceSpec {
        self.spec
    }

    pub fn len(&self) -> usize {
        self.exps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.exps.is_empty()
    }

    pub fn exponents(&self) -> &[(u32, u32)] {
        &self.exps
    }

    pub fn index_of(&self, i: u32, j: u32) -> Option<usize> {
        self.index.get(&(i, j)).copied()
    }

    /// Coefficient vector of `p`, or `None` if `p` leaves the space.
    pub fn coordinates(&self, p: &Poly2) -> Option<Vec<Rational>> {
        let mut v = vec![Rational::zero(); self.len()];
        for (&(i, j), c) in p.terms() {
            v[self.index_of(i, j)?] = c.clone();
        }
        Some(v)
    }

    /// Index in `target` of each monomial of `self`; requires `self ⊆ target`.
    pub fn embedding_into(&self, target: &MonomialBasis) -> Vec<usize> {
        self.exps
            .iter()
            .map(|&(i, j)| {
                target
                    .index_of(i, j)
                    .expect("embedding into a space that does not contain the source")
            })
            .collect()
    }

    /// Matrix of the inclusion `self → target` in monomial coordinates.
    pub fn embedding_matrix(&self, target: &MonomialBasis) -> RationalMatrix {
        let mut m = RationalMatrix::zeros(target.len(), self.len());
        for (col, row) in self.embedding_into(target).into_iter().enumerate() {
            m.set(row, col, Rational::one());
        }
        m
    }

    /// Matrix taking coefficients of `p(u)` to coefficients of `p(v + delta)`.
    ///
    /// Used to move a polynomial between local coordinate frames: if
    /// `u = X - O1` and `v = X - O2` then `delta = O2 - O1`.
    pub fn shift_matrix(&self, delta: (&Rational, &Rational)) -> RationalMatrix {
        let n = self.len();
        let mut m = RationalMatrix::zeros(n, n);
        let maxdeg = self.spec.m as usize;
        let binom = binomial_table(maxdeg);
        let powers = |d: &Rational| -> Vec<Rational> {
            let mut out = vec![Rational::one()];
            for k in 1..=maxdeg {
                let next = &out[k - 1] * d;
                out.push(next);
            }
            out
        };
        let (px, py) = (powers(delta.0), powers(delta.1));
        for (col, &(i, j)) in self.exps.iter().enumerate() {
            for k in 0..=i {
                let cx = &px[(i - k) as usize]
                    * Rational::from_integer(binom[i as usize][k as usize].into());
                if cx.is_zero() {
                    continue;
                }
                for l in 0..=j {
                    let cy = &py[(j - l) as usize]
                        * Rational::from_integer(binom[j as usize][l as usize].into());
                    if cy.is_zero() {
                        continue;
                    }
                    let row = self
                        .index_of(k, l)
                        .expect("lower monomials stay in the space");
                    m.set(row, col, &cx * &cy);
                }
            }
        }
        m
    }
}

fn binomial_table(n: usize) -> Vec<Vec<u64>> {
    let mut t = vec![vec![0u64; n + 1]; n + 1];
    for i in 0..=n {
        t[i][0] = 1;
        for k in 1..=i {
            t[i][k] = t[i - 1][k - 1] + if k < i { t[i - 1][k] } else { 0 };
        }
    }
    t
}

/// A line `a x + b y + c = 0` with `(a, b)` normalized so its first nonzero
/// entry is 1.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LinearForm {
    pub a: Rational,
    pub b: Rational,
    pub c: Rational,
}

impl LinearForm {
    /// Normalized form; `None` if `(a, b) = (0, 0)`.
    pub fn new(a: Rational, b: Rational, c: Rational) -> Option<Self> {
        let lead = if !a.is_zero() {
            a.clone()
        } else if !b.is_zero() {
            b.clone()
        } else {
            return None;
        };
        Some(LinearForm {
            a: a / &lead,
            b: b / &lead,
            c: c / &lead,
        })
    }

    /// The line through two distinct points.
    pub fn through(p: (&Rational, &Rational), q: (&Rational, &Rational)) -> Option<Self> {
        let a = q.1 - p.1;
        let b = p.0 - q.0;
        let c = -(&a * p.0 + &b * p.1);
        Self::new(a, b, c)
    }

    pub fn eval(&self, x: &Rational, y: &Rational) -> Rational {
        &self.a * x + &self.b * y + &self.c
    }

    /// Direction class of the line, shared by all parallel lines.
    pub fn slope_key(&self) -> (Rational, Rational) {
        (self.a.clone(), self.b.clone())
    }

    pub fn is_axis_parallel(&self) -> bool {
        self.a.is_zero() || self.b.is_zero()
    }

    pub fn to_poly(&self) -> Poly2 {
        Poly2::linear(&self.a, &self.b, &self.c)
    }

    /// The form in coordinates centred at `(x0, y0)`.
    pub fn translated(&self, x0: &Rational, y0: &Rational) -> LinearForm {
        LinearForm {
            a: self.a.clone(),
            b: self.b.clone(),
            c: self.eval(x0, y0),
        }
    }
}

impl fmt::Display for LinearForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use crate::exactla::format_rational as fr;
        write!(
            f,
            "({})x + ({})y + ({})",
            fr(&self.a),
            fr(&self.b),
            fr(&self.c)
        )
    }
}

/// Generators of the multiples of `form^exponent` inside the space `spec`.
///
/// Bidegree is multiplicative in each variable, so a multiple `form^e * q`
/// stays in `P_(m,m)` exactly when `q` has degree at most `m - e·deg_x(form)`
/// in `x` and `m - e·deg_y(form)` in `y`.
pub fn principal_ideal_generators(
    spec: PolySpaceSpec,
    form: &LinearForm,
    exponent: u32,
) -> Vec<Poly2> {
    let power = form.to_poly().pow(exponent);
    let (bx, by) = match spec.kind {
        PolyKind::TotalDegree => {
            let Some(rest) = spec.m.checked_sub(exponent) else {
                return Vec::new();
            };
            (rest, rest)
        }
        PolyKind::Bidegree => {
            let dx = if form.a.is_zero() { 0 } else { exponent };
            let dy = if form.b.is_zero() { 0 } else { exponent };
            match (spec.m.checked_sub(dx), spec.m.checked_sub(dy)) {
                (Some(bx), Some(by)) => (bx, by),
                _ => return Vec::new(),
            }
        }
    };
    let mut gens = Vec::new();
    for i in 0..=bx {
        for j in 0..=by {
            let fits = match spec.kind {
                PolyKind::TotalDegree => i + j + exponent <= spec.m,
                PolyKind::Bidegree => true,
            };
            if fits {
                gens.push(power.shift_exponents(i, j));
            }
        }
    }
    gens
}

/// Matrix whose rows are the coefficient vectors of `gens` in `basis`.
pub fn generator_matrix(basis: &MonomialBasis, gens: &[Poly2]) -> RationalMatrix {
    if gens.is_empty() {
        return RationalMatrix::zeros(0, basis.len());
    }
    RationalMatrix::from_rows(
        gens.iter()
            .map(|g| {
                basis
                    .coordinates(g)
                    .expect("generator leaves its ambient space")
            })
            .collect(),
    )
}

/// Dimension of the multiples of `form^exponent` inside `spec`.
pub fn principal_ideal_dim(spec: PolySpaceSpec, form: &LinearForm, exponent: u32) -> usize {
    match spec.kind {
        PolyKind::TotalDegree => spec
            .m
            .checked_sub(exponent)
            .map_or(0, |rest| space_dim(PolySpaceSpec::total(rest))),
        PolyKind::Bidegree if form.is_axis_parallel() => {
            let m = spec.m as usize;
            (m + 1).saturating_sub(exponent as usize) * (m + 1)
        }
        PolyKind::Bidegree => {
            let basis = MonomialBasis::new(spec);
            rank(&generator_matrix(
                &basis,
                &principal_ideal_generators(spec, form, exponent),
            ))
        }
    }
}
