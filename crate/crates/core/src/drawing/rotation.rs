//! Root selection, rotation labeling and triangle regions.

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::geometry::{ccw_cmp, convex_hull, cross, on_segment, ray_hit, same_direction, Point, RayHit, Vector};
use crate::set_system::{GroundSet, Member, MemberKey, SetFamily};

use super::Drawing;

/// Counterclockwise order of the root's neighbours.
///
/// Labels are 0-based: label `k` is `v_{k+1}` in 1-based notation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RotationLabeling {
    /// Vertex position of the root.
    pub v0: usize,
    /// `order[k]` is the vertex position carrying label `k`.
    pub order: Vec<usize>,
    /// Direction the counterclockwise sweep starts from.
    pub reference: Vector,
    label_of: Vec<Option<usize>>,
}

impl RotationLabeling {
    pub fn n(&self) -> usize {
        self.order.len()
    }

    /// Label of a vertex position (`None` for the root).
    pub fn label_of(&self, position: usize) -> Option<usize> {
        self.label_of.get(position).copied().flatten()
    }

    pub fn position(&self, label: usize) -> usize {
        self.order[label]
    }
}

/// A vertex on the boundary of the unbounded cell.
///
/// Straight-line drawings: the extreme hull vertex with the smallest id.
/// Otherwise the hint, certified by a ray from it that meets no edge.
pub fn outer_face_vertex(d: &Drawing, hint: Option<u32>) -> Result<u32> {
    if d.vertex_count() == 0 {
        return Err(Error::NoOuterVertex("empty drawing".into()));
    }
    if d.is_straight_line() {
        let points: Vec<Point> = d.vertices().iter().map(|v| v.point).collect();
        return convex_hull(&points)
            .into_iter()
            .map(|i| d.id(i))
            .min()
            .ok_or_else(|| Error::NoOuterVertex("no hull".into()));
    }
    let id = hint.ok_or_else(|| Error::NoOuterVertex("curved drawing needs a root hint".into()))?;
    let pos = d
        .position(id)
        .ok_or_else(|| Error::NoOuterVertex(format!("unknown hint vertex {id}")))?;
    match escape_direction(d, pos) {
        Some(_) => Ok(id),
        None => Err(Error::NoOuterVertex(format!("no escaping ray from vertex {id}"))),
    }
}

/// A direction in which the ray from vertex `position` meets no edge except
/// at its origin, if one is found among the angular-gap candidates.
pub fn escape_direction(d: &Drawing, position: usize) -> Option<Vector> {
    let p = d.point(position);
    let mut dirs: Vec<Vector> = d
        .edges()
        .iter()
        .flat_map(|e| e.polyline.iter())
        .filter(|&&q| q != p)
        .map(|&q| q - p)
        .collect();
    let reference = Vector::new(1, 0);
    dirs.sort_by(|a, b| ccw_cmp(reference, *a, *b));
    dirs.dedup_by(|a, b| same_direction(*a, *b));

    let candidates: Vec<Vector> = match dirs.len() {
        0 => vec![reference],
        1 => vec![-dirs[0]],
        k => (0..k)
            .map(|i| gap_direction(dirs[i], dirs[(i + 1) % k]))
            .collect(),
    };
    candidates.into_iter().find(|&dir| {
        d.edges().iter().all(|e| {
            e.segments().all(|(a, b)| {
                if a == p || b == p {
                    // Segments leaving the origin cannot be hit: their
                    // directions bound the gaps.
                    let other = if a == p { b } else { a };
                    !same_direction(other - p, dir)
                } else {
                    ray_hit(p, dir, a, b) == RayHit::Miss
                }
            })
        })
    })
}

/// An integer direction strictly inside the counterclockwise gap from `a` to `b`.
fn gap_direction(a: Vector, b: Vector) -> Vector {
    let c = cross(a, b);
    if c > 0 {
        a + b
    } else if c < 0 {
        -(a + b)
    } else {
        // Opposite directions: the gap is a half-turn.
        a.perp()
    }
}

/// Labels the root's neighbours by the counterclockwise angle of each edge's
/// first segment, starting from a direction into the unbounded cell (positive
/// x when no escaping ray exists).
pub fn relabel_ccw(d: &Drawing, v0: u32) -> Result<RotationLabeling> {
    let root = d
        .position(v0)
        .ok_or_else(|| Error::range("v0", v0, "a vertex id of the drawing"))?;
    let reference = escape_direction(d, root).unwrap_or(Vector::new(1, 0));
    let p = d.point(root);
    let mut spokes: Vec<(Vector, usize)> = Vec::with_capacity(d.vertex_count());
    for w in 0..d.vertex_count() {
        if w == root {
            continue;
        }
        let e = d
            .edge_between(root, w)
            .ok_or_else(|| Error::range("edge", format!("{v0}-{}", d.id(w)), "present"))?;
        let line = d.edges()[e].polyline_from(root);
        if line.len() < 2 {
            return Err(Error::range("polyline length", line.len(), ">= 2"));
        }
        spokes.push((line[1] - p, w));
    }
    spokes.sort_by(|a, b| ccw_cmp(reference, a.0, b.0).then(a.1.cmp(&b.1)));
    for w in spokes.windows(2) {
        if same_direction(w[0].0, w[1].0) {
            return Err(Error::DegenerateRotation(d.id(w[0].1), d.id(w[1].1)));
        }
    }
    let order: Vec<usize> = spokes.iter().map(|&(_, w)| w).collect();
    let mut label_of = vec![None; d.vertex_count()];
    for (k, &w) in order.iter().enumerate() {
        label_of[w] = Some(k);
    }
    Ok(RotationLabeling {
        v0: root,
        order,
        reference,
        label_of,
    })
}

/// The closed curve `v0 -> v_i -> v_j -> v0` as a vertex cycle (last point
/// not repeated).
pub fn triangle_curve(d: &Drawing, l: &RotationLabeling, i: usize, j: usize) -> Result<Vec<Point>> {
    let (a, b) = (l.position(i), l.position(j));
    let mut cycle = Vec::new();
    for (from, to) in [(l.v0, a), (a, b), (b, l.v0)] {
        let e = d
            .edge_between(from, to)
            .ok_or_else(|| Error::range("edge", format!("{}-{}", d.id(from), d.id(to)), "present"))?;
        let line = d.edges()[e].polyline_from(from);
        cycle.extend_from_slice(&line[..line.len() - 1]);
    }
    Ok(cycle)
}

/// Ray-parity containment of `p` in the region bounded by `cycle`.
///
/// With `dir = None` a direction is picked from `(1, 0), (1, 1), (1, -1),
/// (1, 2), ...`, the first that passes through no curve vertex and is
/// parallel to no curve segment. An explicit `dir` violating those
/// conditions yields `Ok(None)`.
pub fn point_in_closed_curve(cycle: &[Point], p: Point, dir: Option<Vector>) -> Result<Option<bool>> {
    let k = cycle.len();
    let segs = || (0..k).map(|s| (cycle[s], cycle[(s + 1) % k]));
    if segs().any(|(a, b)| on_segment(a, b, p)) {
        return Err(Error::OnBoundary);
    }
    let admissible = |d: Vector| {
        !d.is_zero()
            && cycle.iter().all(|&q| cross(d, q - p) != 0)
            && segs().all(|(a, b)| cross(d, b - a) != 0)
    };
    let dir = match dir {
        Some(d) if admissible(d) => d,
        Some(_) => return Ok(None),
        None => (0i64..)
            .map(|t| Vector::new(1, if t % 2 == 1 { (t + 1) / 2 } else { -(t / 2) }))
            .find(|&d| admissible(d))
            .expect("finitely many directions are excluded"),
    };
    let crossings = segs().filter(|&(a, b)| ray_hit(p, dir, a, b) == RayHit::Cross).count();
    Ok(Some(crossings % 2 == 1))
}

/// Whether `p` lies in the bounded region of the triangle `G[v0, v_i, v_j]`.
pub fn point_in_triangle_region(d: &Drawing, l: &RotationLabeling, i: usize, j: usize, p: Point) -> Result<bool> {
    if i >= j || j >= l.n() {
        return Err(Error::range("(i, j)", format!("({i}, {j})"), format!("i < j < {}", l.n())));
    }
    let cycle = triangle_curve(d, l, i, j)?;
    Ok(point_in_closed_curve(&cycle, p, None)?.expect("automatic direction is admissible"))
}

/// `F = { T_{i,j} : i < j }` over the labeled ground set, one unweighted member per pair, keys `(i, j)`.
pub fn triangle_family(d: &Drawing, l: &RotationLabeling) -> Result<SetFamily> {
    let n = l.n();
    let ground = GroundSet::new(l.order.iter().map(|&w| d.id(w)).collect())?;
    let points: Vec<Point> = l.order.iter().map(|&w| d.point(w)).collect();
    let mut members = Vec::with_capacity(n * n.saturating_sub(1) / 2);
    for i in 0..n {
        for j in i + 1..n {
            let cycle = triangle_curve(d, l, i, j)?;
            let (x0, y0, x1, y1) = cycle.iter().fold(
                (i64::MAX, i64::MAX, i64::MIN, i64::MIN),
                |(a, b, c, e), q| (a.min(q.x), b.min(q.y), c.max(q.x), e.max(q.y)),
            );
            let mut set = BitSet::new(n);
            for (k, &q) in points.iter().enumerate() {
                if k == i || k == j || q.x < x0 || q.x > x1 || q.y < y0 || q.y > y1 {
                    continue;
                }
                if point_in_closed_curve(&cycle, q, None)?.expect("automatic direction is admissible") {
                    set.insert(k);
                }
            }
            members.push(Member {
                key: MemberKey(i as u32, j as u32),
                set,
                log_weight: 0,
            });
        }
    }
    SetFamily::new(ground, members)
}
