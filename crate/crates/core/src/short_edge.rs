//! Selecting a low-crossing edge from the triangle set system of a drawing.
//!
//! Root the drawing at an outer vertex, match its neighbours with the
//! low-stabbing matching `M1`, discard pairs stabbed by many triangles of
//! other pairs (`M2`), and return the pair of `M2` whose triangle swallows the
//! fewest other `M2` pairs. Its crossings are split into the classes
//! `E0..E4` of the counting argument and checked against `c4 * n^(7/4)`.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::constants::{self, Constants};
use crate::drawing::{
    outer_face_vertex, point_in_triangle_region, relabel_ccw, triangle_family, CrossingMatrix, Drawing,
    RotationLabeling,
};
use crate::error::{Error, Result, Stage};
use crate::oracle::brute_min_crossing_edge;
use crate::packing::{key_matching, verify_matching, LowStabMatching, MatchConfig, MatchingReport};
use crate::powers::cmp_pow;
use crate::report::Check;
use crate::set_system::{MemberKey, SetFamily};

/// Auxiliary digraph on the pairs of `M1`: an arc from `{i, j}` to
/// `{k, l}` iff `T_{i,j}` stabs `{k, l}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gamma1 {
    pub nodes: Vec<(usize, usize)>,
    /// Arcs as `(from, to)` node indices, sorted.
    pub arcs: Vec<(usize, usize)>,
    pub in_degree: Vec<u32>,
}

pub fn build_gamma1(family: &SetFamily, m1: &LowStabMatching) -> Result<Gamma1> {
    let n = family.n();
    let mut sets = Vec::with_capacity(m1.pairs.len());
    for &(i, j) in &m1.pairs {
        if i >= n || j >= n {
            return Err(Error::VertexOutOfRange { index: i.max(j), n });
        }
        sets.push(&family.member(MemberKey(i.min(j) as u32, i.max(j) as u32))?.set);
    }
    let mut arcs = Vec::new();
    let mut in_degree = vec![0u32; m1.pairs.len()];
    for (a, set) in sets.iter().enumerate() {
        for (b, &(k, l)) in m1.pairs.iter().enumerate() {
            if a != b && set.contains(k) != set.contains(l) {
                arcs.push((a, b));
                in_degree[b] += 1;
            }
        }
    }
    Ok(Gamma1 {
        nodes: m1.pairs.clone(),
        arcs,
        in_degree,
    })
}

/// Pairs of `M1` with in-degree `< n^(3/4)` in `Gamma1`, in node order.
pub fn filter_m2(g1: &Gamma1, n: usize) -> Result<Vec<(usize, usize)>> {
    let m2: Vec<(usize, usize)> = g1
        .nodes
        .iter()
        .zip(&g1.in_degree)
        .filter(|(_, &deg)| cmp_pow(1, deg as u64, 4, 1, n as u64, 3).is_lt())
        .map(|(&p, _)| p)
        .collect();
    if m2.is_empty() {
        return Err(Error::EmptyM2);
    }
    Ok(m2)
}

/// Number of pairs of `m2` with both endpoints strictly inside the triangle
/// `G[v0, v_i, v_j]`. Endpoints on the triangle (`v_i`, `v_j`) are not inside.
pub fn phi(d: &Drawing, l: &RotationLabeling, m2: &[(usize, usize)], i: usize, j: usize) -> Result<u32> {
    let inside = |k: usize| -> Result<bool> {
        if k == i || k == j {
            return Ok(false);
        }
        point_in_triangle_region(d, l, i, j, d.point(l.position(k)))
    };
    let mut count = 0;
    for &(k, m) in m2 {
        if inside(k)? && inside(m)? {
            count += 1;
        }
    }
    Ok(count)
}

/// Crossings of the chosen edge `v_x v_y`, split by first matching class.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    /// `classes[c]` lists the drawing edge indices in `E_c`, ascending.
    pub classes: [Vec<usize>; 5],
}

impl Classification {
    pub fn sizes(&self) -> [usize; 5] {
        std::array::from_fn(|c| self.classes[c].len())
    }

    pub fn total(&self) -> usize {
        self.classes.iter().map(Vec::len).sum()
    }
}

/// Assigns every edge crossing `v_x v_y` to the first class it belongs to:
/// `E0` incident to the root, `E1` an endpoint in `leftover`, `E2` an
/// endpoint strictly between `x` and `y`, `E3` its triangle stabs
/// `{v_x, v_y}`, `E4` the rest.
pub fn classify_crossings(
    d: &Drawing,
    l: &RotationLabeling,
    family: &SetFamily,
    matrix: &CrossingMatrix,
    (x, y): (usize, usize),
    leftover: &[usize],
) -> Result<Classification> {
    let (x, y) = (x.min(y), x.max(y));
    let chosen = edge_of_labels(d, l, x, y)?;
    let in_leftover = BitSet::from_indices(l.n(), leftover.iter().copied().filter(|&v| v < l.n()));
    let mut out = Classification::default();
    for e in matrix.crossing(chosen) {
        let edge = &d.edges()[e];
        let class = match (l.label_of(edge.u), l.label_of(edge.v)) {
            (None, _) | (_, None) => 0,
            (Some(a), Some(b)) => {
                let (i, j) = (a.min(b), a.max(b));
                let between = |k: usize| x < k && k < y;
                if in_leftover.contains(i) || in_leftover.contains(j) {
                    1
                } else if between(i) || between(j) {
                    2
                } else {
                    let t = &family.member(MemberKey(i as u32, j as u32))?.set;
                    if t.contains(x) != t.contains(y) {
                        3
                    } else {
                        4
                    }
                }
            }
        };
        out.classes[class].push(e);
    }
    Ok(out)
}

/// Labels outside `I_{x,y} = {k : x < k < y}` and other than `x, y`, split by
/// whether the root edge `v0 v_k` crosses `v_x v_y` (`u1`) or not (`u2`).
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct USplit {
    pub u1: Vec<usize>,
    pub u2: Vec<usize>,
}

pub fn u1_u2_split(
    d: &Drawing,
    l: &RotationLabeling,
    matrix: &CrossingMatrix,
    (x, y): (usize, usize),
) -> Result<USplit> {
    let (x, y) = (x.min(y), x.max(y));
    let chosen = edge_of_labels(d, l, x, y)?;
    let mut split = USplit::default();
    for k in (0..l.n()).filter(|&k| k < x || k > y) {
        let spoke = d
            .edge_between(l.v0, l.position(k))
            .ok_or_else(|| Error::range("root edge", k, "present"))?;
        if matrix.crosses(spoke, chosen) {
            split.u1.push(k);
        } else {
            split.u2.push(k);
        }
    }
    Ok(split)
}

/// Every `E4` edge has one endpoint in `U1` and the other in `U2`.
pub fn verify_e4_straddles_split(d: &Drawing, l: &RotationLabeling, split: &USplit, e4: &[usize]) -> bool {
    let n = l.n();
    let u1 = BitSet::from_indices(n, split.u1.iter().copied().filter(|&k| k < n));
    let u2 = BitSet::from_indices(n, split.u2.iter().copied().filter(|&k| k < n));
    e4.iter().all(|&e| {
        let Some(edge) = d.edges().get(e) else { return false };
        match (l.label_of(edge.u), l.label_of(edge.v)) {
            (Some(a), Some(b)) => (u1.contains(a) && u2.contains(b)) || (u1.contains(b) && u2.contains(a)),
            _ => false,
        }
    })
}

fn edge_of_labels(d: &Drawing, l: &RotationLabeling, x: usize, y: usize) -> Result<usize> {
    if x >= l.n() || y >= l.n() || x == y {
        return Err(Error::range("(x, y)", format!("({x}, {y})"), format!("distinct labels < {}", l.n())));
    }
    d.edge_between(l.position(x), l.position(y))
        .ok_or_else(|| Error::range("edge", format!("{x}-{y}"), "present"))
}

/// `phi` of every pair of `m2`, in `m2` order, split over up to `jobs` threads.
pub fn phi_table(d: &Drawing, l: &RotationLabeling, m2: &[(usize, usize)], jobs: usize) -> Result<Vec<PhiEntry>> {
    let entry = |&(i, j): &(usize, usize)| -> Result<PhiEntry> {
        Ok(PhiEntry {
            pair: (i, j),
            phi: phi(d, l, m2, i, j)?,
        })
    };
    let jobs = jobs.clamp(1, m2.len().max(1));
    if jobs == 1 {
        return m2.iter().map(entry).collect();
    }
    let chunk = m2.len().div_ceil(jobs);
    std::thread::scope(|s| {
        let handles: Vec<_> = m2
            .chunks(chunk)
            .map(|part| s.spawn(move || part.iter().map(entry).collect::<Result<Vec<_>>>()))
            .collect();
        let mut out = Vec::with_capacity(m2.len());
        for h in handles {
            out.extend(h.join().expect("phi worker panicked")?);
        }
        Ok(out)
    })
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct PipelineConfig {
    pub matching: MatchConfig,
    pub c4: f64,
    /// Root for curved drawings; ignored for straight-line ones.
    pub root_hint: Option<u32>,
    /// Worker threads for the `phi` evaluation; 1 runs inline.
    pub jobs: usize,
}

impl Default for PipelineConfig {
    fn default() -> Self {
        PipelineConfig {
            matching: MatchConfig::default(),
            c4: constants::C4,
            root_hint: None,
            jobs: 1,
        }
    }
}

impl From<&Constants> for PipelineConfig {
    fn from(c: &Constants) -> Self {
        PipelineConfig {
            matching: MatchConfig::from(c),
            c4: c.c4,
            root_hint: None,
            jobs: 1,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhiEntry {
    pub pair: (usize, usize),
    pub phi: u32,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PipelineReport {
    /// Labeled vertices (all but the root).
    pub n: usize,
    pub root: Option<u32>,
    /// Chosen edge as vertex ids, smaller first.
    pub chosen_ids: (u32, u32),
    /// Chosen edge as labels `x < y`; absent on the fallback path.
    pub chosen: Option<(usize, usize)>,
    pub crossing_count: u32,
    pub bound: f64,
    pub passed: bool,
    /// Why the oracle edge was returned instead, if it was.
    pub fallback: Option<String>,
    pub m1_size: usize,
    pub m2_size: usize,
    pub max_kappa: u32,
    pub gamma1_arcs: usize,
    pub phi: Vec<PhiEntry>,
    pub e_sizes: Option<[usize; 5]>,
    pub u_sizes: Option<(usize, usize)>,
    pub e4_straddles: Option<bool>,
    pub matching_report: Option<MatchingReport>,
    /// Diagnostic inequalities of the counting argument; informational.
    pub checks: Vec<Check>,
    pub runtime_ms: u64,
}

/// Frozen CSV layout; bump the schema tag when columns change.
pub const CSV_SCHEMA: &str = "v1";
pub const CSV_HEADER: &str =
    "schema,n,seed,generator,chosen_i,chosen_j,crossings,bound,e0,e1,e2,e3,e4,m1,m2,max_kappa,runtime_ms";

impl PipelineReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    /// One row under [`CSV_HEADER`]. The chosen edge is given by labels, or
    /// by vertex ids on the fallback path; missing classes are left empty.
    pub fn csv_row(&self, seed: u64, generator: &str) -> String {
        let (i, j) = self
            .chosen
            .map(|(x, y)| (x as u64, y as u64))
            .unwrap_or((self.chosen_ids.0 as u64, self.chosen_ids.1 as u64));
        let e = self
            .e_sizes
            .map(|s| s.map(|v| v.to_string()))
            .unwrap_or_else(|| std::array::from_fn(|_| String::new()));
        format!(
            "{CSV_SCHEMA},{},{seed},{},{i},{j},{},{:.3},{},{},{},{},{},{},{},{},{}",
            self.n,
            generator.replace(',', ";"),
            self.crossing_count,
            self.bound,
            e[0],
            e[1],
            e[2],
            e[3],
            e[4],
            self.m1_size,
            self.m2_size,
            self.max_kappa,
            self.runtime_ms
        )
    }
}

/// `c4 * n^(7/4)`.
pub fn crossing_bound(c4: f64, n: usize) -> f64 {
    c4 * (n as f64).powf(1.75)
}

/// Runs the whole selection on a drawing. Small instances and empty `M2`
/// fall back to the brute-force minimum edge, flagged in the report.
pub fn select_short_edge(d: &Drawing, cfg: &PipelineConfig) -> Result<PipelineReport> {
    let start = Instant::now();
    let matrix = d.check().map_err(|v| Error::InvalidDrawing(v).at(Stage::Validate))?;
    let n = d.vertex_count().saturating_sub(1);
    let bound = crossing_bound(cfg.c4, n);

    let fallback = |reason: String, root: Option<u32>| -> Result<PipelineReport> {
        let best = brute_min_crossing_edge(d).map_err(|e| e.at(Stage::Oracle))?;
        Ok(PipelineReport {
            n,
            root,
            chosen_ids: best.edge,
            chosen: None,
            crossing_count: best.crossings,
            bound,
            passed: best.crossings as f64 <= bound,
            fallback: Some(reason),
            m1_size: 0,
            m2_size: 0,
            max_kappa: 0,
            gamma1_arcs: 0,
            phi: Vec::new(),
            e_sizes: None,
            u_sizes: None,
            e4_straddles: None,
            matching_report: None,
            checks: Vec::new(),
            runtime_ms: start.elapsed().as_millis() as u64,
        })
    };

    if n < cfg.matching.min_n {
        return fallback(format!("n = {n} < min_n = {}", cfg.matching.min_n), None);
    }
    let root = outer_face_vertex(d, cfg.root_hint).map_err(|e| e.at(Stage::OuterFace))?;
    let l = relabel_ccw(d, root).map_err(|e| e.at(Stage::Rotation))?;
    let family = triangle_family(d, &l).map_err(|e| e.at(Stage::TriangleFamily))?;
    let m1 = key_matching(&family, &cfg.matching).map_err(|e| e.at(Stage::Matching))?;
    let g1 = build_gamma1(&family, &m1).map_err(|e| e.at(Stage::Gamma1))?;
    let m2 = match filter_m2(&g1, n) {
        Ok(m2) => m2,
        Err(Error::EmptyM2) => return fallback("M2 is empty".into(), Some(root)),
        Err(e) => return Err(e.at(Stage::FilterM2)),
    };

    let phis = phi_table(d, &l, &m2, cfg.jobs).map_err(|e| e.at(Stage::Phi))?;
    let (x, y) = phis
        .iter()
        .min_by(|a, b| a.phi.cmp(&b.phi).then(a.pair.cmp(&b.pair)))
        .map(|p| p.pair)
        .expect("M2 is non-empty");

    let chosen = edge_of_labels(d, &l, x, y)?;
    let crossing_count = matrix.total(chosen);
    let classes = classify_crossings(d, &l, &family, &matrix, (x, y), &m1.leftover)?;
    let split = u1_u2_split(d, &l, &matrix, (x, y))?;
    let e4_straddles = verify_e4_straddles_split(d, &l, &split, &classes.classes[4]);
    let matching_report = verify_matching(&family, &m1, &cfg.matching);

    let nf = n as f64;
    let n74 = nf.powf(1.75);
    let sizes = classes.sizes();
    let removed = m1.pairs.len() - m2.len();
    let checks = vec![
        Check::at_most("chosen-edge-crossings", crossing_count as f64, bound),
        Check::at_most("e0-size", sizes[0] as f64, nf),
        Check::at_most("e1-size", sizes[1] as f64, 2.0 * n74),
        Check::at_most("e2-size", sizes[2] as f64, n74),
        Check::at_most("e3-size", sizes[3] as f64, cfg.matching.c3 * n74),
        Check::decided(
            "classes-partition-crossings",
            classes.total() as f64,
            crossing_count as f64,
            classes.total() == crossing_count as usize,
        ),
        Check::at_most(
            "gamma1-arcs",
            g1.arcs.len() as f64,
            m1.pairs.len() as f64 * cfg.matching.c3 * nf.sqrt(),
        ),
        Check::at_most("m1-minus-m2", removed as f64, g1.arcs.len() as f64 / nf.powf(0.75)),
        Check::decided("e4-straddles-split", e4_straddles as u8 as f64, 1.0, e4_straddles),
    ];

    Ok(PipelineReport {
        n,
        root: Some(root),
        chosen_ids: d.edge_ids(chosen),
        chosen: Some((x, y)),
        crossing_count,
        bound,
        passed: crossing_count as f64 <= bound,
        fallback: None,
        m1_size: m1.pairs.len(),
        m2_size: m2.len(),
        max_kappa: m1.max_kappa(),
        gamma1_arcs: g1.arcs.len(),
        phi: phis,
        e_sizes: Some(sizes),
        u_sizes: Some((split.u1.len(), split.u2.len())),
        e4_straddles: Some(e4_straddles),
        matching_report: Some(matching_report),
        checks,
        runtime_ms: start.elapsed().as_millis() as u64,
    })
}
