//! Definition-level recomputation for small instances.
//!
//! Nothing here calls into the set-system, matching or drawing algorithms;
//! only the integer predicates `orient` and `on_segment` are shared.
//! Containment uses winding numbers rather than the ray parity of the main
//! code, and crossings are recounted from raw segment pairs.

use std::collections::{BTreeMap, HashSet};

use serde::{Deserialize, Serialize};

use crate::drawing::{Drawing, RotationLabeling};
use crate::error::{Error, Result};
use crate::geometry::{on_segment, orient, Point};
use crate::set_system::{MemberKey, SetFamily};

pub const STAB_GUARD: usize = 200;
pub const PHI_GUARD: usize = 64;

fn guard(n: usize, limit: usize) -> Result<()> {
    if n > limit {
        return Err(Error::Guard { n, limit });
    }
    Ok(())
}

/// Strictly opposite sides on both segments.
fn segments_cross(a: Point, b: Point, c: Point, d: Point) -> bool {
    let s = |x: i128| x.signum();
    s(orient(a, b, c)) * s(orient(a, b, d)) < 0 && s(orient(c, d, a)) * s(orient(c, d, b)) < 0
}

fn polylines_cross(p: &[Point], q: &[Point]) -> bool {
    p.windows(2)
        .any(|s| q.windows(2).any(|t| segments_cross(s[0], s[1], t[0], t[1])))
}

struct RawEdge {
    ids: (u32, u32),
    line: Vec<Point>,
}

fn raw_edges(d: &Drawing) -> Vec<RawEdge> {
    d.edges()
        .iter()
        .map(|e| {
            let (a, b) = (d.id(e.u), d.id(e.v));
            let mut line = e.polyline.clone();
            if a > b {
                line.reverse();
            }
            RawEdge {
                ids: (a.min(b), a.max(b)),
                line,
            }
        })
        .collect()
}

fn share_endpoint(a: (u32, u32), b: (u32, u32)) -> bool {
    a.0 == b.0 || a.0 == b.1 || a.1 == b.0 || a.1 == b.1
}

/// Crossing count of every edge, keyed by `(smaller id, larger id)`.
pub fn per_edge_crossings(d: &Drawing) -> BTreeMap<(u32, u32), u32> {
    let edges = raw_edges(d);
    let mut out: BTreeMap<(u32, u32), u32> = edges.iter().map(|e| (e.ids, 0)).collect();
    for (i, e) in edges.iter().enumerate() {
        for f in &edges[i + 1..] {
            if !share_endpoint(e.ids, f.ids) && polylines_cross(&e.line, &f.line) {
                *out.get_mut(&e.ids).unwrap() += 1;
                *out.get_mut(&f.ids).unwrap() += 1;
            }
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MinEdge {
    pub edge: (u32, u32),
    pub crossings: u32,
}

/// The edge crossing the fewest others; ties go to the smallest id pair.
pub fn brute_min_crossing_edge(d: &Drawing) -> Result<MinEdge> {
    per_edge_crossings(d)
        .into_iter()
        .min_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)))
        .map(|(edge, crossings)| MinEdge { edge, crossings })
        .ok_or_else(|| Error::range("edges", 0, ">= 1"))
}

/// `table[u][v]` = total weight of members containing exactly one of `u, v`.
pub fn brute_stab_counts(f: &SetFamily) -> Result<Vec<Vec<f64>>> {
    let n = f.n();
    guard(n, STAB_GUARD)?;
    let mut table = vec![vec![0.0; n]; n];
    for (u, row) in table.iter_mut().enumerate() {
        for (v, cell) in row.iter_mut().enumerate() {
            for m in f.members() {
                if m.set.contains(u) != m.set.contains(v) {
                    *cell += 2f64.powi(m.log_weight as i32);
                }
            }
        }
    }
    Ok(table)
}

/// Number of `pairs` each member stabs.
pub fn brute_kappa(f: &SetFamily, pairs: &[(usize, usize)]) -> BTreeMap<MemberKey, u32> {
    f.members()
        .iter()
        .map(|m| {
            let c = pairs.iter().filter(|&&(u, v)| m.set.contains(u) != m.set.contains(v)).count();
            (m.key, c as u32)
        })
        .collect()
}

/// Largest number of distinct membership signatures over all `m`-subsets of members.
pub fn brute_max_cells(f: &SetFamily, m: usize) -> usize {
    fn rec(f: &SetFamily, m: usize, start: usize, chosen: &mut Vec<usize>, best: &mut usize) {
        if chosen.len() == m {
            let cells: HashSet<Vec<bool>> = (0..f.n())
                .map(|v| chosen.iter().map(|&a| f.members()[a].set.contains(v)).collect())
                .collect();
            *best = (*best).max(cells.len());
            return;
        }
        for a in start..f.len() {
            chosen.push(a);
            rec(f, m, a + 1, chosen, best);
            chosen.pop();
        }
    }
    let mut best = 0;
    if (1..=f.len()).contains(&m) {
        rec(f, m, 0, &mut Vec::new(), &mut best);
    }
    best
}

/// Winding number of the closed polygon `cycle` around `p`.
pub fn winding_number(cycle: &[Point], p: Point) -> Result<i64> {
    let k = cycle.len();
    let mut wn = 0;
    for s in 0..k {
        let (a, b) = (cycle[s], cycle[(s + 1) % k]);
        if on_segment(a, b, p) {
            return Err(Error::OnBoundary);
        }
        if a.y <= p.y {
            if b.y > p.y && orient(a, b, p) > 0 {
                wn += 1;
            }
        } else if b.y <= p.y && orient(a, b, p) < 0 {
            wn -= 1;
        }
    }
    Ok(wn)
}

fn line_from(d: &Drawing, from: usize, to: usize) -> Vec<Point> {
    let (pf, pt) = (d.point(from), d.point(to));
    let e = d
        .edges()
        .iter()
        .find(|e| (e.u == from && e.v == to) || (e.u == to && e.v == from))
        .expect("complete drawing");
    let mut line = e.polyline.clone();
    if line.first() != Some(&pf) || line.last() != Some(&pt) {
        line.reverse();
    }
    line
}

/// Labels of vertices strictly inside `G[v0, v_i, v_j]`, by winding number.
pub fn brute_triangle_set(d: &Drawing, l: &RotationLabeling, i: usize, j: usize) -> Result<Vec<usize>> {
    let (a, b) = (l.order[i], l.order[j]);
    let mut cycle = Vec::new();
    for (from, to) in [(l.v0, a), (a, b), (b, l.v0)] {
        let line = line_from(d, from, to);
        cycle.extend_from_slice(&line[..line.len() - 1]);
    }
    let mut inside = Vec::new();
    for (k, &w) in l.order.iter().enumerate() {
        if k != i && k != j && winding_number(&cycle, d.point(w))? != 0 {
            inside.push(k);
        }
    }
    Ok(inside)
}

/// Every triangle set, keyed by `(i, j)` with `i < j`.
pub fn brute_triangle_sets(d: &Drawing, l: &RotationLabeling) -> Result<BTreeMap<(usize, usize), Vec<usize>>> {
    let n = l.order.len();
    let mut out = BTreeMap::new();
    for i in 0..n {
        for j in i + 1..n {
            out.insert((i, j), brute_triangle_set(d, l, i, j)?);
        }
    }
    Ok(out)
}

/// `phi` of every pair of `m2` against `m2`.
pub fn brute_phi(d: &Drawing, l: &RotationLabeling, m2: &[(usize, usize)]) -> Result<BTreeMap<(usize, usize), u32>> {
    guard(l.order.len(), PHI_GUARD)?;
    let mut out = BTreeMap::new();
    for &(i, j) in m2 {
        let (i, j) = (i.min(j), i.max(j));
        let inside = brute_triangle_set(d, l, i, j)?;
        let c = m2
            .iter()
            .filter(|&&(k, m)| inside.contains(&k) && inside.contains(&m))
            .count();
        out.insert((i, j), c as u32);
    }
    Ok(out)
}

/// Arcs `(a, b)` between indices of `pairs` with `T_{pairs[a]}` stabbing `pairs[b]`.
pub fn brute_gamma1_arcs(d: &Drawing, l: &RotationLabeling, pairs: &[(usize, usize)]) -> Result<Vec<(usize, usize)>> {
    let mut arcs = Vec::new();
    for (a, &(i, j)) in pairs.iter().enumerate() {
        let t = brute_triangle_set(d, l, i.min(j), i.max(j))?;
        for (b, &(k, m)) in pairs.iter().enumerate() {
            if a != b && t.contains(&k) != t.contains(&m) {
                arcs.push((a, b));
            }
        }
    }
    Ok(arcs)
}

/// Sizes of `E0..E4` for the edge `v_x v_y`, recomputed from raw crossings
/// and winding-number triangle sets.
pub fn brute_classification(
    d: &Drawing,
    l: &RotationLabeling,
    (x, y): (usize, usize),
    leftover: &[usize],
) -> Result<[usize; 5]> {
    let (x, y) = (x.min(y), x.max(y));
    let label: BTreeMap<usize, usize> = l.order.iter().enumerate().map(|(k, &w)| (w, k)).collect();
    let chosen = line_from(d, l.order[x], l.order[y]);
    let mut sizes = [0; 5];
    for e in d.edges() {
        if [e.u, e.v].iter().any(|w| *w == l.order[x] || *w == l.order[y]) {
            continue;
        }
        if !polylines_cross(&e.polyline, &chosen) {
            continue;
        }
        let class = match (label.get(&e.u), label.get(&e.v)) {
            (Some(&a), Some(&b)) => {
                let (i, j) = (a.min(b), a.max(b));
                if leftover.contains(&i) || leftover.contains(&j) {
                    1
                } else if (x < i && i < y) || (x < j && j < y) {
                    2
                } else {
                    let t = brute_triangle_set(d, l, i, j)?;
                    if t.contains(&x) != t.contains(&y) {
                        3
                    } else {
                        4
                    }
                }
            }
            _ => 0,
        };
        sizes[class] += 1;
    }
    Ok(sizes)
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct OracleReport {
    pub min_crossing_edge: MinEdge,
    /// `(u, v, crossings)` for every edge, sorted by ids.
    pub per_edge_crossings: Vec<(u32, u32, u32)>,
    /// `(i, j, stab)` for every labeled pair `i < j`.
    pub stab_table: Vec<(usize, usize, f64)>,
    /// `cell_counts[m - 1]` = exact maximum Venn cells over `m`-subsets.
    pub cell_counts: Vec<usize>,
    /// `(i, j, phi)` for the supplied pairs.
    pub phi_table: Vec<(usize, usize, u32)>,
}

impl OracleReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("oracle report serializes")
    }
}

/// Full recomputation on a rooted drawing: crossings, stab table and cell
/// counts of the winding-number triangle family, and `phi` for `pairs`.
pub fn oracle_report(
    d: &Drawing,
    l: &RotationLabeling,
    pairs: &[(usize, usize)],
    max_m: usize,
) -> Result<OracleReport> {
    let n = l.order.len();
    guard(n, PHI_GUARD)?;
    let per_edge = per_edge_crossings(d);
    let sets = brute_triangle_sets(d, l)?;
    let refs: Vec<Vec<usize>> = sets.values().cloned().collect();
    let slices: Vec<&[usize]> = refs.iter().map(Vec::as_slice).collect();
    let family = SetFamily::from_sets(n, &slices)?;
    let stab = brute_stab_counts(&family)?;
    let stab_table = stab
        .iter()
        .enumerate()
        .flat_map(|(i, row)| row.iter().enumerate().skip(i + 1).map(move |(j, &s)| (i, j, s)))
        .collect();
    Ok(OracleReport {
        min_crossing_edge: brute_min_crossing_edge(d)?,
        per_edge_crossings: per_edge.into_iter().map(|((u, v), c)| (u, v, c)).collect(),
        stab_table,
        cell_counts: (1..=max_m).map(|m| brute_max_cells(&family, m)).collect(),
        phi_table: brute_phi(d, l, pairs)?.into_iter().map(|((i, j), c)| (i, j, c)).collect(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::drawing::convex_complete;

    #[test]
    fn convex_min_edge_is_a_hull_edge() {
        let d = convex_complete(7).unwrap();
        let best = brute_min_crossing_edge(&d).unwrap();
        assert_eq!(best, MinEdge { edge: (0, 1), crossings: 0 });
        let k4 = per_edge_crossings(&convex_complete(4).unwrap());
        assert_eq!(k4[&(0, 2)], 1);
        assert_eq!(k4[&(0, 1)], 0);
    }

    #[test]
    fn winding_number_square() {
        let sq = [Point::new(0, 0), Point::new(4, 0), Point::new(4, 4), Point::new(0, 4)];
        assert_eq!(winding_number(&sq, Point::new(2, 2)).unwrap(), 1);
        assert_eq!(winding_number(&sq, Point::new(5, 2)).unwrap(), 0);
        assert!(matches!(winding_number(&sq, Point::new(2, 4)), Err(Error::OnBoundary)));
    }

    #[test]
    fn guards_trip() {
        let f = SetFamily::from_sets(201, &[&[0]]).unwrap();
        assert!(matches!(brute_stab_counts(&f), Err(Error::Guard { n: 201, limit: 200 })));
    }
}
