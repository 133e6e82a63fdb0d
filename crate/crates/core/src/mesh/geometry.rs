//! Exact planar predicates.

use std::cmp::Ordering;

use num_traits::{Signed, Zero};

use crate::exactla::Rational;

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Point {
    pub x: Rational,
    pub y: Rational,
}

impl Point {
    pub fn new(x: Rational, y: Rational) -> Self {
        Point { x, y }
    }

    pub fn midpoint(&self, other: &Point) -> Point {
        let two = Rational::from_integer(2.into());
        Point::new((&self.x + &other.x) / &two, (&self.y + &other.y) / &two)
    }
}

/// Sign of the cross product `(q - p) × (r - p)`: positive for a left turn.
pub fn orient(p: &Point, q: &Point, r: &Point) -> Ordering {
    let v = (&q.x - &p.x) * (&r.y - &p.y) - (&q.y - &p.y) * (&r.x - &p.x);
    v.cmp(&Rational::zero())
}

/// `r` lies on the closed segment `pq`, given the three are collinear.
fn within_box(p: &Point, q: &Point, r: &Point) -> bool {
    let between =
        |a: &Rational, b: &Rational, c: &Rational| (a <= c && c <= b) || (b <= c && c <= a);
    between(&p.x, &q.x, &r.x) && between(&p.y, &q.y, &r.y)
}

pub fn on_segment(p: &Point, q: &Point, r: &Point) -> bool {
    orient(p, q, r) == Ordering::Equal && within_box(p, q, r)
}

/// Closed segments `ab` and `cd` share at least one point.
pub fn segments_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> bool {
    let (o1, o2) = (orient(a, b, c), orient(a, b, d));
    let (o3, o4) = (orient(c, d, a), orient(c, d, b));
    if o1 != o2
        && o3 != o4
        && o1 != Ordering::Equal
        && o2 != Ordering::Equal
        && o3 != Ordering::Equal
        && o4 != Ordering::Equal
    {
        return true;
    }
    on_segment(a, b, c) || on_segment(a, b, d) || on_segment(c, d, a) || on_segment(c, d, b)
}

/// Two segments sharing the endpoint `a` (`ab` and `ad`) overlap beyond it.
pub fn overlap_from_shared(a: &Point, b: &Point, d: &Point) -> bool {
    if orient(a, b, d) != Ordering::Equal {
        return false;
    }
    let dot = (&b.x - &a.x) * (&d.x - &a.x) + (&b.y - &a.y) * (&d.y - &a.y);
    dot.is_positive()
}

/// Twice the signed area of a polygon.
pub fn signed_area2(poly: &[&Point]) -> Rational {
    let n = poly.len();
    let mut s = Rational::zero();
    for k in 0..n {
        let (p, q) = (poly[k], poly[(k + 1) % n]);
        s += &p.x * &q.y - &q.x * &p.y;
    }
    s
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Location {
    Inside,
    Boundary,
    Outside,
}

/// Locate `p` relative to a simple polygon.
pub fn locate(poly: &[&Point], p: &Point) -> Location {
    let n = poly.len();
    let mut inside = false;
    for k in 0..n {
        let (a, b) = (poly[k], poly[(k + 1) % n]);
        if on_segment(a, b, p) {
            return Location::Boundary;
        }
        // half-open crossing rule on a rightward ray
        if (a.y > p.y) != (b.y > p.y) {
            let t = (&p.y - &a.y) / (&b.y - &a.y);
            let x = &a.x + t * (&b.x - &a.x);
            if x > p.x {
                inside = !inside;
            }
        }
    }
    if inside {
        Location::Inside
    } else {
        Location::Outside
    }
}

/// Every turn of the counterclockwise loop is a left turn or straight.
pub fn is_convex(poly: &[&Point]) -> bool {
    let n = poly.len();
    (0..n).all(|k| orient(poly[k], poly[(k + 1) % n], poly[(k + 2) % n]) != Ordering::Less)
}
