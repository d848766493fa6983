//! Complete simple topological graphs drawn with integer polylines.

mod generate;
mod rotation;

use std::collections::HashMap;
use std::fmt;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::geometry::{on_segment, same_direction, segment_contact, Contact, Point};

pub use generate::{bowl_complete, convex_complete, random_geometric_complete, Generator, DEFAULT_BBOX};
pub use rotation::{
    escape_direction, outer_face_vertex, point_in_closed_curve, point_in_triangle_region, relabel_ccw,
    triangle_curve, triangle_family, RotationLabeling,
};

/// Largest vertex count accepted from external input.
pub const MAX_VERTICES: usize = 1 << 12;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Vertex {
    pub id: u32,
    pub point: Point,
}

/// An edge between vertex positions `u` and `v`; the polyline runs from `u` to `v`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub polyline: Vec<Point>,
}

impl Edge {
    pub fn is_straight(&self) -> bool {
        self.polyline.len() == 2
    }

    pub fn segments(&self) -> impl Iterator<Item = (Point, Point)> + '_ {
        self.polyline.windows(2).map(|w| (w[0], w[1]))
    }

    pub fn has_endpoint(&self, w: usize) -> bool {
        self.u == w || self.v == w
    }

    /// Polyline oriented so that it starts at vertex position `from`.
    pub fn polyline_from(&self, from: usize) -> Vec<Point> {
        let mut p = self.polyline.clone();
        if from == self.v {
            p.reverse();
        }
        p
    }

    fn bbox(&self) -> (i64, i64, i64, i64) {
        self.polyline.iter().fold(
            (i64::MAX, i64::MAX, i64::MIN, i64::MIN),
            |(x0, y0, x1, y1), p| (x0.min(p.x), y0.min(p.y), x1.max(p.x), y1.max(p.y)),
        )
    }
}

/// A violated drawing invariant. Edges are named by their endpoint ids.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "kebab-case")]
pub enum Violation {
    TooFewVertices { count: usize },
    DuplicatePoint { a: u32, b: u32 },
    MissingEdge { u: u32, v: u32 },
    PolylineEndpoints { edge: (u32, u32) },
    DegenerateSegment { edge: (u32, u32) },
    SelfIntersection { edge: (u32, u32) },
    EdgeThroughVertex { edge: (u32, u32), vertex: u32 },
    AdjacentEdgesCross { e: (u32, u32), f: (u32, u32) },
    DoubleIntersection { e: (u32, u32), f: (u32, u32), crossings: usize },
    Tangency { e: (u32, u32), f: (u32, u32) },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::TooFewVertices { count } => write!(f, "only {count} vertices"),
            Violation::DuplicatePoint { a, b } => write!(f, "vertices {a} and {b} coincide"),
            Violation::MissingEdge { u, v } => write!(f, "missing edge {u}-{v}"),
            Violation::PolylineEndpoints { edge } => {
                write!(f, "edge {}-{}: polyline does not run between its endpoints", edge.0, edge.1)
            }
            Violation::DegenerateSegment { edge } => {
                write!(f, "edge {}-{}: zero-length segment", edge.0, edge.1)
            }
            Violation::SelfIntersection { edge } => write!(f, "edge {}-{} intersects itself", edge.0, edge.1),
            Violation::EdgeThroughVertex { edge, vertex } => {
                write!(f, "edge {}-{} passes through vertex {vertex}", edge.0, edge.1)
            }
            Violation::AdjacentEdgesCross { e, f: g } => {
                write!(f, "adjacent edges {}-{} and {}-{} cross", e.0, e.1, g.0, g.1)
            }
            Violation::DoubleIntersection { e, f: g, crossings } => write!(
                f,
                "double intersection: edges {}-{} and {}-{} cross {crossings} times",
                e.0, e.1, g.0, g.1
            ),
            Violation::Tangency { e, f: g } => {
                write!(f, "edges {}-{} and {}-{} touch without crossing", e.0, e.1, g.0, g.1)
            }
        }
    }
}

#[derive(Clone, Debug)]
pub struct Drawing {
    vertices: Vec<Vertex>,
    edges: Vec<Edge>,
    position_of: HashMap<u32, usize>,
    edge_of: HashMap<(usize, usize), usize>,
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

impl Drawing {
    /// Builds a drawing from positioned vertices and edges given by vertex ids.
    /// Only structural problems are errors; geometric ones are reported by
    /// [`validate_simple`].
    pub fn new(vertices: Vec<Vertex>, edges: Vec<(u32, u32, Vec<Point>)>) -> Result<Self> {
        if vertices.len() > MAX_VERTICES {
            return Err(Error::range("vertex count", vertices.len(), format!("<= {MAX_VERTICES}")));
        }
        let mut position_of = HashMap::with_capacity(vertices.len());
        for (i, v) in vertices.iter().enumerate() {
            if !v.point.in_range() {
                return Err(Error::Parse(format!("vertex {} has out-of-range coordinates", v.id)));
            }
            if position_of.insert(v.id, i).is_some() {
                return Err(Error::Parse(format!("duplicate vertex id {}", v.id)));
            }
        }
        let mut edge_of = HashMap::with_capacity(edges.len());
        let mut out = Vec::with_capacity(edges.len());
        for (a, b, polyline) in edges {
            let pos = |id: u32| {
                position_of
                    .get(&id)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("edge {a}-{b} references unknown vertex {id}")))
            };
            let (u, v) = (pos(a)?, pos(b)?);
            if u == v {
                return Err(Error::Parse(format!("loop at vertex {a}")));
            }
            if polyline.iter().any(|p| !p.in_range()) {
                return Err(Error::Parse(format!("edge {a}-{b} has out-of-range coordinates")));
            }
            if edge_of.insert(key(u, v), out.len()).is_some() {
                return Err(Error::Parse(format!("duplicate edge {a}-{b}")));
            }
            out.push(Edge { u, v, polyline });
        }
        Ok(Drawing {
            vertices,
            edges: out,
            position_of,
            edge_of,
        })
    }

    /// Complete straight-line drawing on the given points; ids are positions.
    pub fn straight_line(points: &[Point]) -> Result<Self> {
        let vertices = points
            .iter()
            .enumerate()
            .map(|(i, &point)| Vertex { id: i as u32, point })
            .collect();
        let mut edges = Vec::new();
        for a in 0..points.len() {
            for b in a + 1..points.len() {
                edges.push((a as u32, b as u32, vec![points[a], points[b]]));
            }
        }
        Drawing::new(vertices, edges)
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn point(&self, position: usize) -> Point {
        self.vertices[position].point
    }

    pub fn id(&self, position: usize) -> u32 {
        self.vertices[position].id
    }

    pub fn position(&self, id: u32) -> Option<usize> {
        self.position_of.get(&id).copied()
    }

    /// Index of the edge between two vertex positions.
    pub fn edge_between(&self, a: usize, b: usize) -> Option<usize> {
        self.edge_of.get(&key(a, b)).copied()
    }

    pub fn edge_ids(&self, e: usize) -> (u32, u32) {
        let edge = &self.edges[e];
        let (a, b) = (self.id(edge.u), self.id(edge.v));
        (a.min(b), a.max(b))
    }

    pub fn is_straight_line(&self) -> bool {
        self.edges.iter().all(Edge::is_straight)
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: DrawingJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn from_json_slice(bytes: &[u8]) -> Result<Self> {
        let raw: DrawingJson = serde_json::from_slice(bytes)?;
        raw.try_into()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&DrawingJson::from(self)).expect("drawing serializes")
    }

    /// Validates simplicity in one pass and returns the crossing relation.
    pub fn check(&self) -> std::result::Result<CrossingMatrix, Vec<Violation>> {
        let (violations, matrix) = analyze(self);
        if violations.is_empty() {
            Ok(matrix)
        } else {
            Err(violations)
        }
    }
}

/// Reads a drawing file and validates it.
pub fn load_drawing(path: impl AsRef<Path>) -> Result<Drawing> {
    let text = std::fs::read_to_string(path)?;
    let d = Drawing::from_json_str(&text)?;
    let violations = validate_simple(&d);
    if !violations.is_empty() {
        return Err(Error::InvalidDrawing(violations));
    }
    Ok(d)
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingJson {
    vertices: Vec<VertexJson>,
    edges: Vec<EdgeJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct VertexJson {
    id: u32,
    x: i64,
    y: i64,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct EdgeJson {
    u: u32,
    v: u32,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    polyline: Option<Vec<[i64; 2]>>,
}

impl From<&Drawing> for DrawingJson {
    fn from(d: &Drawing) -> Self {
        DrawingJson {
            vertices: d
                .vertices
                .iter()
                .map(|v| VertexJson {
                    id: v.id,
                    x: v.point.x,
                    y: v.point.y,
                })
                .collect(),
            edges: d
                .edges
                .iter()
                .map(|e| EdgeJson {
                    u: d.id(e.u),
                    v: d.id(e.v),
                    polyline: (!e.is_straight() || e.polyline[0] != d.point(e.u) || e.polyline[1] != d.point(e.v))
                        .then(|| e.polyline.iter().map(|p| [p.x, p.y]).collect()),
                })
                .collect(),
        }
    }
}

impl TryFrom<DrawingJson> for Drawing {
    type Error = Error;

    fn try_from(raw: DrawingJson) -> Result<Self> {
        let vertices: Vec<Vertex> = raw
            .vertices
            .iter()
            .map(|v| Vertex {
                id: v.id,
                point: Point::new(v.x, v.y),
            })
            .collect();
        let lookup: HashMap<u32, Point> = vertices.iter().map(|v| (v.id, v.point)).collect();
        let edges = raw
            .edges
            .into_iter()
            .map(|e| {
                let polyline = match e.polyline {
                    Some(p) => p.into_iter().map(|[x, y]| Point::new(x, y)).collect(),
                    None => match (lookup.get(&e.u), lookup.get(&e.v)) {
                        (Some(&a), Some(&b)) => vec![a, b],
                        _ => Vec::new(),
                    },
                };
                (e.u, e.v, polyline)
            })
            .collect();
        Drawing::new(vertices, edges)
    }
}

/// Symmetric crossing relation over edge indices.
#[derive(Clone, Debug)]
pub struct CrossingMatrix {
    edges: usize,
    words: usize,
    rows: Vec<u64>,
    totals: Vec<u32>,
}

impl CrossingMatrix {
    fn new(edges: usize) -> Self {
        let words = edges.div_ceil(64);
        CrossingMatrix {
            edges,
            words,
            rows: vec![0; edges * words],
            totals: vec![0; edges],
        }
    }

    fn set(&mut self, e: usize, f: usize) {
        self.rows[e * self.words + f / 64] |= 1 << (f % 64);
        self.rows[f * self.words + e / 64] |= 1 << (e % 64);
        self.totals[e] += 1;
        self.totals[f] += 1;
    }

    pub fn edge_count(&self) -> usize {
        self.edges
    }

    pub fn crosses(&self, e: usize, f: usize) -> bool {
        self.rows[e * self.words + f / 64] >> (f % 64) & 1 == 1
    }

    /// Number of edges crossing edge `e`.
    pub fn total(&self, e: usize) -> u32 {
        self.totals[e]
    }

    pub fn totals(&self) -> &[u32] {
        &self.totals
    }

    /// Edges crossing `e`, ascending.
    pub fn crossing(&self, e: usize) -> impl Iterator<Item = usize> + '_ {
        let row = &self.rows[e * self.words..(e + 1) * self.words];
        row.iter().enumerate().flat_map(|(wi, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| wi * 64 + b)
        })
    }

    /// Number of unordered crossing pairs.
    pub fn crossing_pairs(&self) -> u64 {
        self.totals.iter().map(|&t| t as u64).sum::<u64>() / 2
    }
}

/// Every violated invariant; empty iff the drawing is a complete simple
/// topological graph in general position.
///
/// Beyond the topological rules, contacts that are not transversal crossings
/// of two segment interiors (a bend or endpoint lying on another edge,
/// collinear overlaps) are reported as tangencies, so every crossing is
/// witnessed by exactly one proper segment intersection.
pub fn validate_simple(d: &Drawing) -> Vec<Violation> {
    analyze(d).0
}

/// The crossing relation of a valid drawing.
pub fn crossing_matrix(d: &Drawing) -> Result<CrossingMatrix> {
    d.check().map_err(Error::InvalidDrawing)
}

fn analyze(d: &Drawing) -> (Vec<Violation>, CrossingMatrix) {
    let mut out = Vec::new();
    let n = d.vertices.len();
    if n < 2 {
        out.push(Violation::TooFewVertices { count: n });
    }

    let mut by_point: HashMap<Point, u32> = HashMap::with_capacity(n);
    for v in &d.vertices {
        if let Some(&other) = by_point.get(&v.point) {
            out.push(Violation::DuplicatePoint { a: other, b: v.id });
        } else {
            by_point.insert(v.point, v.id);
        }
    }

    for a in 0..n {
        for b in a + 1..n {
            if d.edge_between(a, b).is_none() {
                let (x, y) = (d.id(a), d.id(b));
                out.push(Violation::MissingEdge { u: x.min(y), v: x.max(y) });
            }
        }
    }

    // Edges whose own geometry is broken are excluded from pairwise tests.
    let mut sound = vec![true; d.edges.len()];
    for (ei, e) in d.edges.iter().enumerate() {
        let name = d.edge_ids(ei);
        let p = &e.polyline;
        if p.len() < 2 || p[0] != d.point(e.u) || p[p.len() - 1] != d.point(e.v) {
            out.push(Violation::PolylineEndpoints { edge: name });
            sound[ei] = false;
            continue;
        }
        if p.windows(2).any(|w| w[0] == w[1]) {
            out.push(Violation::DegenerateSegment { edge: name });
            sound[ei] = false;
            continue;
        }
        if self_intersects(p) {
            out.push(Violation::SelfIntersection { edge: name });
            sound[ei] = false;
        }
        for (wi, w) in d.vertices.iter().enumerate() {
            if e.has_endpoint(wi) {
                continue;
            }
            if e.segments().any(|(a, b)| on_segment(a, b, w.point)) {
                out.push(Violation::EdgeThroughVertex { edge: name, vertex: w.id });
                sound[ei] = false;
            }
        }
    }

    let mut matrix = CrossingMatrix::new(d.edges.len());
    let boxes: Vec<_> = d.edges.iter().map(Edge::bbox).collect();
    for ei in 0..d.edges.len() {
        if !sound[ei] {
            continue;
        }
        let e = &d.edges[ei];
        let be = boxes[ei];
        for fi in ei + 1..d.edges.len() {
            if !sound[fi] {
                continue;
            }
            let bf = boxes[fi];
            if be.2 < bf.0 || bf.2 < be.0 || be.3 < bf.1 || bf.3 < be.1 {
                continue;
            }
            let f = &d.edges[fi];
            let shared = [e.u, e.v].into_iter().find(|&w| f.has_endpoint(w));
            let (crossings, tangent) = edge_pair_contacts(d, e, f, shared);
            if tangent {
                out.push(Violation::Tangency {
                    e: d.edge_ids(ei),
                    f: d.edge_ids(fi),
                });
            }
            if crossings > 0 && shared.is_some() {
                out.push(Violation::AdjacentEdgesCross {
                    e: d.edge_ids(ei),
                    f: d.edge_ids(fi),
                });
            } else if crossings > 1 {
                out.push(Violation::DoubleIntersection {
                    e: d.edge_ids(ei),
                    f: d.edge_ids(fi),
                    crossings,
                });
            } else if crossings == 1 {
                matrix.set(ei, fi);
            }
        }
    }
    (out, matrix)
}

/// Proper crossings between two polylines, and whether any non-transversal
/// contact occurs away from a shared endpoint.
fn edge_pair_contacts(d: &Drawing, e: &Edge, f: &Edge, shared: Option<usize>) -> (usize, bool) {
    let mut crossings = 0;
    let mut tangent = false;
    let last_e = e.polyline.len() - 2;
    let last_f = f.polyline.len() - 2;
    for (si, (a, b)) in e.segments().enumerate() {
        for (sj, (c, dd)) in f.segments().enumerate() {
            match segment_contact(a, b, c, dd) {
                Contact::Disjoint => {}
                Contact::Proper => crossings += 1,
                Contact::Touch => {
                    let at_shared = shared.is_some_and(|s| {
                        let sp = d.point(s);
                        let e_end = (si == 0 && a == sp) || (si == last_e && b == sp);
                        let f_end = (sj == 0 && c == sp) || (sj == last_f && dd == sp);
                        if !(e_end && f_end) {
                            return false;
                        }
                        let de = if a == sp { b - a } else { a - b };
                        let df = if c == sp { dd - c } else { c - dd };
                        !same_direction(de, df)
                    });
                    if !at_shared {
                        tangent = true;
                    }
                }
            }
        }
    }
    (crossings, tangent)
}

fn self_intersects(p: &[Point]) -> bool {
    let segs: Vec<(Point, Point)> = p.windows(2).map(|w| (w[0], w[1])).collect();
    for i in 0..segs.len() {
        for j in i + 1..segs.len() {
            let (a, b) = segs[i];
            let (c, dd) = segs[j];
            if j == i + 1 {
                // Consecutive segments share `b == c`; they may only meet there.
                if same_direction(a - b, dd - c) || on_segment(c, dd, a) || on_segment(a, b, dd) {
                    return true;
                }
                continue;
            }
            if segment_contact(a, b, c, dd) != Contact::Disjoint {
                return true;
            }
        }
    }
    false
}
