//! Exact integer geometric predicates.
//!
//! Coordinates are `i64` restricted to `|c| <= COORD_LIMIT`, so every
//! difference fits in 33 bits and every cross product in 67 bits; all
//! arithmetic below is carried out in `i128` and is exact.

use std::cmp::Ordering;
use std::ops::{Add, Neg, Sub};

use serde::{Deserialize, Serialize};

/// Largest admissible absolute coordinate value.
pub const COORD_LIMIT: i64 = 1 << 31;

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: i64,
    pub y: i64,
}

impl Point {
    pub const fn new(x: i64, y: i64) -> Self {
        Point { x, y }
    }

    pub fn in_range(self) -> bool {
        self.x.abs() <= COORD_LIMIT && self.y.abs() <= COORD_LIMIT
    }
}

/// A direction or displacement. Components may exceed `COORD_LIMIT` by a
/// small factor (sums of two displacements) but always fit in 36 bits.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub struct Vector {
    pub dx: i64,
    pub dy: i64,
}

impl Vector {
    pub const fn new(dx: i64, dy: i64) -> Self {
        Vector { dx, dy }
    }

    pub fn is_zero(self) -> bool {
        self.dx == 0 && self.dy == 0
    }

    /// Counterclockwise rotation by a quarter turn.
    pub fn perp(self) -> Vector {
        Vector::new(-self.dy, self.dx)
    }
}

impl Sub for Point {
    type Output = Vector;
    fn sub(self, rhs: Point) -> Vector {
        Vector::new(self.x - rhs.x, self.y - rhs.y)
    }
}

impl Add for Vector {
    type Output = Vector;
    fn add(self, rhs: Vector) -> Vector {
        Vector::new(self.dx + rhs.dx, self.dy + rhs.dy)
    }
}

impl Neg for Vector {
    type Output = Vector;
    fn neg(self) -> Vector {
        Vector::new(-self.dx, -self.dy)
    }
}

pub fn cross(u: Vector, v: Vector) -> i128 {
    u.dx as i128 * v.dy as i128 - u.dy as i128 * v.dx as i128
}

pub fn dot(u: Vector, v: Vector) -> i128 {
    u.dx as i128 * v.dx as i128 + u.dy as i128 * v.dy as i128
}

/// Twice the signed area of `abc`: positive iff `a, b, c` turn counterclockwise.
pub fn orient(a: Point, b: Point, c: Point) -> i128 {
    cross(b - a, c - a)
}

/// Sign of [`orient`] as an ordering (`Greater` = counterclockwise).
pub fn orientation(a: Point, b: Point, c: Point) -> Ordering {
    orient(a, b, c).cmp(&0)
}

/// `p` lies on the closed segment `ab`.
pub fn on_segment(a: Point, b: Point, p: Point) -> bool {
    orient(a, b, p) == 0
        && p.x >= a.x.min(b.x)
        && p.x <= a.x.max(b.x)
        && p.y >= a.y.min(b.y)
        && p.y <= a.y.max(b.y)
}

/// How two closed segments meet.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Contact {
    Disjoint,
    /// The relative interiors cross transversally at a single point.
    Proper,
    /// Any other contact: an endpoint on the other segment, or collinear overlap.
    Touch,
}

pub fn segment_contact(a: Point, b: Point, c: Point, d: Point) -> Contact {
    if a.x.max(b.x) < c.x.min(d.x)
        || c.x.max(d.x) < a.x.min(b.x)
        || a.y.max(b.y) < c.y.min(d.y)
        || c.y.max(d.y) < a.y.min(b.y)
    {
        return Contact::Disjoint;
    }
    let o1 = orient(a, b, c).signum();
    let o2 = orient(a, b, d).signum();
    let o3 = orient(c, d, a).signum();
    let o4 = orient(c, d, b).signum();
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Contact::Proper;
    }
    if (o1 == 0 && on_segment(a, b, c))
        || (o2 == 0 && on_segment(a, b, d))
        || (o3 == 0 && on_segment(c, d, a))
        || (o4 == 0 && on_segment(c, d, b))
    {
        return Contact::Touch;
    }
    Contact::Disjoint
}

/// `u` and `v` point the same way (parallel, same orientation).
pub fn same_direction(u: Vector, v: Vector) -> bool {
    cross(u, v) == 0 && dot(u, v) > 0
}

fn half(reference: Vector, v: Vector) -> u8 {
    let c = cross(reference, v);
    if c > 0 || (c == 0 && dot(reference, v) > 0) {
        0
    } else {
        1
    }
}

/// Orders nonzero directions by counterclockwise angle measured from
/// `reference`; a direction equal to `reference` comes first.
pub fn ccw_cmp(reference: Vector, u: Vector, v: Vector) -> Ordering {
    let (hu, hv) = (half(reference, u), half(reference, v));
    if hu != hv {
        return hu.cmp(&hv);
    }
    0.cmp(&cross(u, v))
}

/// Result of shooting a ray `origin + t * dir`, `t > 0`, at a closed segment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RayHit {
    Miss,
    /// The ray crosses the segment's relative interior transversally.
    Cross,
    /// The ray touches an endpoint or runs along the segment.
    Degenerate,
}

pub fn ray_hit(origin: Point, dir: Vector, a: Point, b: Point) -> RayHit {
    let sa = cross(dir, a - origin).signum();
    let sb = cross(dir, b - origin).signum();
    if sa * sb > 0 {
        return RayHit::Miss;
    }
    if sa == 0 && sb == 0 {
        // Collinear with the ray's line: hit iff some point lies ahead.
        let ahead = |p: Point| dot(dir, p - origin) > 0;
        return if ahead(a) || ahead(b) {
            RayHit::Degenerate
        } else {
            RayHit::Miss
        };
    }
    if sa == 0 {
        return if dot(dir, a - origin) > 0 { RayHit::Degenerate } else { RayHit::Miss };
    }
    if sb == 0 {
        return if dot(dir, b - origin) > 0 { RayHit::Degenerate } else { RayHit::Miss };
    }
    // Strictly opposite sides: the line meets the segment interior at
    // t = cross(a - o, b - a) / cross(dir, b - a).
    let num = cross(a - origin, b - a);
    let den = cross(dir, b - a);
    match (num.signum() * den.signum()).cmp(&0) {
        Ordering::Greater => RayHit::Cross,
        Ordering::Less => RayHit::Miss,
        // The origin lies on the segment's line between the endpoints.
        Ordering::Equal => RayHit::Degenerate,
    }
}

/// Strict convex hull (extreme points only), counterclockwise, as indices into `points`.
pub fn convex_hull(points: &[Point]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by_key(|&i| points[i]);
    idx.dedup_by_key(|i| points[*i]);
    if idx.len() < 3 {
        return idx;
    }
    let mut hull: Vec<usize> = Vec::with_capacity(2 * idx.len());
    for pass in 0..2 {
        let start = hull.len();
        let iter: Box<dyn Iterator<Item = &usize>> = if pass == 0 {
            Box::new(idx.iter())
        } else {
            Box::new(idx.iter().rev())
        };
        for &i in iter {
            while hull.len() >= start + 2
                && orient(points[hull[hull.len() - 2]], points[hull[hull.len() - 1]], points[i]) <= 0
            {
                hull.pop();
            }
            hull.push(i);
        }
        hull.pop();
    }
    hull
}

/// Twice the signed area of a closed polygon given by its vertex cycle.
pub fn signed_area2(cycle: &[Point]) -> i128 {
    let k = cycle.len();
    (0..k)
        .map(|i| {
            let (p, q) = (cycle[i], cycle[(i + 1) % k]);
            p.x as i128 * q.y as i128 - q.x as i128 * p.y as i128
        })
        .sum()
}
