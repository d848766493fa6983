//! Straight-line complete drawings on generated point sets.

use std::collections::HashSet;
use std::f64::consts::PI;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::geometry::{ccw_cmp, convex_hull, orient, same_direction, Point, Vector};

use super::{Drawing, MAX_VERTICES};

/// Side length of the default sampling square `[0, DEFAULT_BBOX)^2`.
pub const DEFAULT_BBOX: i64 = 1 << 20;

const CIRCLE_RADIUS: f64 = (1u64 << 28) as f64;
const RETRIES_PER_POINT: usize = 10_000;

fn check_size(m: usize) -> Result<()> {
    if !(3..=MAX_VERTICES).contains(&m) {
        return Err(Error::range("m", m, format!("3 <= m <= {MAX_VERTICES}")));
    }
    Ok(())
}

/// `m` points on a rounded circle, listed counterclockwise.
pub fn convex_complete(m: usize) -> Result<Drawing> {
    check_size(m)?;
    let points: Vec<Point> = (0..m)
        .map(|k| {
            let t = 2.0 * PI * k as f64 / m as f64;
            Point::new((CIRCLE_RADIUS * t.cos()).round() as i64, (CIRCLE_RADIUS * t.sin()).round() as i64)
        })
        .collect();
    if convex_hull(&points).len() != m {
        return Err(Error::Generation(format!("rounded circle with {m} points is not strictly convex")));
    }
    Drawing::straight_line(&points)
}

/// Vertex 0 at the origin facing `m - 1` points on a circular arc that bulges
/// towards it, so the arc points seen from vertex 0 nest: the triangle on
/// vertex 0 and two arc points contains exactly the arc points between them.
pub fn bowl_complete(m: usize) -> Result<Drawing> {
    check_size(m)?;
    let r = (1u64 << 24) as f64;
    let arc = m - 1;
    let mut points = vec![Point::new(0, 0)];
    for k in 0..arc {
        let t = if arc == 1 { 0.0 } else { (-60.0 + 120.0 * k as f64 / (arc - 1) as f64).to_radians() };
        points.push(Point::new((r * t.sin()).round() as i64, (3.0 * r - r * t.cos()).round() as i64));
    }
    if arc >= 3 && convex_hull(&points[1..]).len() != arc {
        return Err(Error::Generation(format!("rounded arc with {arc} points is not strictly convex")));
    }
    let mut dirs: Vec<Vector> = points[1..].iter().map(|&p| p - points[0]).collect();
    dirs.sort_by(|a, b| ccw_cmp(Vector::new(1, 0), *a, *b));
    if dirs.windows(2).any(|w| same_direction(w[0], w[1])) {
        return Err(Error::Generation("two arc points are collinear with the apex".into()));
    }
    Drawing::straight_line(&points)
}

/// `m` uniform integer points in `[0, bbox)^2`, rejecting duplicates and any
/// point collinear with two earlier ones.
pub fn random_geometric_complete(m: usize, seed: u64, bbox: i64) -> Result<Drawing> {
    check_size(m)?;
    if !(2..=crate::geometry::COORD_LIMIT).contains(&bbox) {
        return Err(Error::range("bbox", bbox, "2 <= bbox <= 2^31"));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<Point> = Vec::with_capacity(m);
    let mut seen = HashSet::with_capacity(m);
    while points.len() < m {
        let mut placed = false;
        for _ in 0..RETRIES_PER_POINT {
            let p = Point::new(rng.gen_range(0..bbox), rng.gen_range(0..bbox));
            if seen.contains(&p) {
                continue;
            }
            let collinear = (0..points.len())
                .any(|a| (a + 1..points.len()).any(|b| orient(points[a], points[b], p) == 0));
            if !collinear {
                seen.insert(p);
                points.push(p);
                placed = true;
                break;
            }
        }
        if !placed {
            return Err(Error::Generation(format!(
                "no general-position point after {RETRIES_PER_POINT} tries ({} of {m} placed, bbox {bbox})",
                points.len()
            )));
        }
    }
    Drawing::straight_line(&points)
}

/// Named point-set generators, as selected on the command line.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Generator {
    Convex,
    Bowl,
    RandomGeometric,
}

impl Generator {
    pub const ALL: [Generator; 3] = [Generator::Convex, Generator::Bowl, Generator::RandomGeometric];

    pub fn name(self) -> &'static str {
        match self {
            Generator::Convex => "convex",
            Generator::Bowl => "bowl",
            Generator::RandomGeometric => "random-geometric",
        }
    }

    /// Whether the output depends on the seed.
    pub fn is_seeded(self) -> bool {
        self == Generator::RandomGeometric
    }

    /// A complete drawing on `m` vertices.
    pub fn generate(self, m: usize, seed: u64) -> Result<Drawing> {
        match self {
            Generator::Convex => convex_complete(m),
            Generator::Bowl => bowl_complete(m),
            Generator::RandomGeometric => random_geometric_complete(m, seed, DEFAULT_BBOX),
        }
    }
}

impl std::fmt::Display for Generator {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Generator {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Generator::ALL
            .into_iter()
            .find(|g| g.name() == s)
            .ok_or_else(|| Error::range("generator", s, "convex, bowl or random-geometric"))
    }
}
