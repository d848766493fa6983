//! Packings, low-stabbing partitions and the index-local low-stabbing matching.
//!
//! The matching is built greedily under multiplicative reweighting: every
//! member starts with weight 1 and doubles each time it stabs a newly chosen
//! pair, so members that already stab many pairs become expensive to stab
//! again. Candidate pairs are restricted to the parts of a fixed partition
//! whose parts are stab-compact (every same-part pair is stabbed by at most
//! `2 * delta_0` members) and index-local (index span at most
//! `n^(1 - 1/(2d))`).

use std::cmp::Ordering;
use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::constants;
use crate::error::{Error, Result};
use crate::powers::{cmp_pow, floor_pow_frac};
use crate::report::Check;
use crate::set_system::{stab_count, Incidence, MemberKey, SetFamily, StabDistance};

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchConfig {
    pub d: u32,
    pub c2: f64,
    pub c3: f64,
    pub min_n: usize,
    pub seed: u64,
}

impl Default for MatchConfig {
    fn default() -> Self {
        MatchConfig {
            d: 2,
            c2: constants::C2,
            c3: constants::C3,
            min_n: constants::MIN_N,
            seed: 0,
        }
    }
}

impl From<&constants::Constants> for MatchConfig {
    fn from(c: &constants::Constants) -> Self {
        MatchConfig {
            c2: c.c2,
            c3: c.c3,
            min_n: c.min_n,
            ..MatchConfig::default()
        }
    }
}

impl MatchConfig {
    pub fn validate(&self) -> Result<()> {
        if self.d < 2 {
            return Err(Error::range("d", self.d, ">= 2"));
        }
        if !(self.c2.is_finite() && self.c2 >= 1.0) {
            return Err(Error::range("c2", self.c2, ">= 1"));
        }
        if !(self.c3.is_finite() && self.c3 >= 2.0 * self.c2) {
            return Err(Error::range("c3", self.c3, format!(">= 2 * c2 = {}", 2.0 * self.c2)));
        }
        Ok(())
    }

    /// `delta_0 = c2 * W / n^(1/(2d))`.
    pub fn initial_delta(&self, total_weight: f64, n: usize) -> f64 {
        self.c2 * total_weight / (n as f64).powf(1.0 / (2.0 * self.d as f64))
    }

    /// `floor(n^(1 - 1/(2d)))`, the largest admissible index span of a pair.
    pub fn index_width(&self, n: usize) -> u64 {
        floor_pow_frac(n as u64, 2 * self.d - 1, 2 * self.d)
    }

    /// Number of pairs to match: the least `w` with `n - 2w <= 2 n^(1/2 + 1/(2d))`.
    pub fn target_pairs(&self, n: usize) -> usize {
        (0..=n / 2)
            .find(|&w| leftover_within_bound(n - 2 * w, n, self.d))
            .unwrap_or(n / 2)
    }

    /// `c3 * W / n^(1/(2d))`.
    pub fn pair_stab_bound(&self, total_weight: f64, n: usize) -> f64 {
        self.c3 * total_weight / (n as f64).powf(1.0 / (2.0 * self.d as f64))
    }

    /// `c3 * n^(1 - 1/d)`.
    pub fn kappa_bound(&self, n: usize) -> f64 {
        self.c3 * (n as f64).powf(1.0 - 1.0 / self.d as f64)
    }

    pub fn leftover_bound(&self, n: usize) -> f64 {
        2.0 * (n as f64).powf(0.5 + 1.0 / (2.0 * self.d as f64))
    }
}

/// `x <= 2 n^((d+1)/(2d))`, i.e. `x^(2d) <= 4^d n^(d+1)`, exactly.
fn leftover_within_bound(x: usize, n: usize, d: u32) -> bool {
    let four_d = 4u64.checked_pow(d).unwrap_or(u64::MAX);
    cmp_pow(1, x as u64, 2 * d, four_d, n as u64, d + 1) != Ordering::Greater
}

/// Stab distances under the family's own weights.
struct Metric {
    incidence: Incidence,
    log_weights: Vec<u32>,
    unweighted: bool,
}

impl Metric {
    fn new(family: &SetFamily) -> Self {
        Metric {
            incidence: Incidence::new(family),
            log_weights: family.members().iter().map(|m| m.log_weight).collect(),
            unweighted: family.is_unweighted(),
        }
    }

    fn dist(&self, u: usize, v: usize) -> f64 {
        if self.unweighted {
            self.incidence.unweighted_stab(u, v) as f64
        } else {
            self.incidence.weighted_stab(u, v, &self.log_weights).value()
        }
    }
}

/// Greedy maximal packing in index order: pairwise stab distance `> delta`,
/// and every other vertex within `delta` of some net vertex.
pub fn greedy_net(family: &SetFamily, delta: f64) -> Result<Vec<usize>> {
    check_delta(delta)?;
    let metric = Metric::new(family);
    let mut net: Vec<usize> = Vec::new();
    for v in 0..family.n() {
        if net.iter().all(|&u| metric.dist(u, v) > delta) {
            net.push(v);
        }
    }
    Ok(net)
}

fn check_delta(delta: f64) -> Result<()> {
    if delta.is_nan() || delta <= 0.0 {
        return Err(Error::range("delta", delta, "> 0"));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct StabPartition {
    /// Disjoint parts covering the ground set, each sorted by index.
    pub parts: Vec<Vec<usize>>,
    pub delta: f64,
}

impl StabPartition {
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Largest stab count (under the family's weights) of a same-part pair.
    pub fn max_same_part_stab(&self, family: &SetFamily) -> f64 {
        let metric = Metric::new(family);
        self.parts
            .iter()
            .flat_map(|p| {
                let metric = &metric;
                p.iter()
                    .enumerate()
                    .flat_map(move |(a, &u)| p[a + 1..].iter().map(move |&v| metric.dist(u, v)))
            })
            .fold(0.0, f64::max)
    }

    /// The part containing each vertex.
    pub fn part_of(&self, n: usize) -> Vec<usize> {
        let mut of = vec![usize::MAX; n];
        for (k, p) in self.parts.iter().enumerate() {
            for &v in p {
                of[v] = k;
            }
        }
        of
    }
}

/// Assigns every vertex to the first net vertex within stab distance `delta`.
/// Same-part pairs are then within `2 * delta` by the triangle inequality.
pub fn partition_low_stab(family: &SetFamily, delta: f64) -> Result<StabPartition> {
    let net = greedy_net(family, delta)?;
    let metric = Metric::new(family);
    let mut parts: Vec<Vec<usize>> = vec![Vec::new(); net.len()];
    for v in 0..family.n() {
        let k = net
            .iter()
            .position(|&u| u == v || metric.dist(u, v) <= delta)
            .expect("greedy net is maximal");
        parts[k].push(v);
    }
    Ok(StabPartition { parts, delta })
}

/// The largest part of [`partition_low_stab`] (ties: lowest minimum index).
pub fn pigeon_subset(family: &SetFamily, delta: f64) -> Result<Vec<usize>> {
    let p = partition_low_stab(family, delta)?;
    // Parts are ordered by their net vertex, which is each part's minimum.
    let mut best: Option<&Vec<usize>> = None;
    for part in &p.parts {
        if best.is_none_or(|b| part.len() > b.len()) {
            best = Some(part);
        }
    }
    Ok(best.cloned().unwrap_or_default())
}

/// Splits every part into maximal runs of index span at most `width`, cutting
/// the sorted indices greedily.
pub fn refine_by_index(partition: &StabPartition, width: f64) -> Result<StabPartition> {
    if width.is_nan() || width < 1.0 {
        return Err(Error::range("width", width, ">= 1"));
    }
    let mut parts = Vec::new();
    for part in &partition.parts {
        let mut sorted = part.clone();
        sorted.sort_unstable();
        let mut chunk: Vec<usize> = Vec::new();
        for v in sorted {
            if let Some(&start) = chunk.first() {
                if (v - start) as f64 > width {
                    parts.push(std::mem::take(&mut chunk));
                }
            }
            chunk.push(v);
        }
        if !chunk.is_empty() {
            parts.push(chunk);
        }
    }
    Ok(StabPartition {
        parts,
        delta: partition.delta,
    })
}

/// One greedy step of [`key_matching`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchStep {
    pub pair: (usize, usize),
    /// Weighted stab count of the chosen pair under the current weights.
    pub weighted_stab: f64,
    /// `log2` of the total weight before the step.
    pub log2_total_weight: f64,
    /// `2 c2 W_i / (n - 2i)^(1/d)`; the step is expected, not required, to stay below it.
    pub step_bound: f64,
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct MatchDiagnostics {
    pub delta0: f64,
    pub index_width: u64,
    pub coarse_parts: usize,
    pub fine_parts: usize,
    pub target_pairs: usize,
    pub steps: Vec<MatchStep>,
    pub log2_final_weight: f64,
}

impl MatchDiagnostics {
    pub fn steps_within_bound(&self) -> usize {
        self.steps.iter().filter(|s| s.weighted_stab <= s.step_bound).count()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "MatchingJson", into = "MatchingJson")]
pub struct LowStabMatching {
    /// Matched pairs `(i, j)` with `i < j`, in the order they were chosen.
    pub pairs: Vec<(usize, usize)>,
    /// Unmatched vertices, sorted.
    pub leftover: Vec<usize>,
    /// Final `kappa(A)`: the number of pairs each member stabs.
    pub kappa: BTreeMap<MemberKey, u32>,
    pub config: MatchConfig,
    pub diagnostics: MatchDiagnostics,
}

impl LowStabMatching {
    pub fn max_kappa(&self) -> u32 {
        self.kappa.values().copied().max().unwrap_or(0)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("matching serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }

    pub fn from_json_slice(bytes: &[u8]) -> Result<Self> {
        Ok(serde_json::from_slice(bytes)?)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MatchingJson {
    pairs: Vec<[usize; 2]>,
    #[serde(rename = "X")]
    leftover: Vec<usize>,
    kappa: BTreeMap<String, u32>,
    config: MatchConfig,
}

impl From<LowStabMatching> for MatchingJson {
    fn from(m: LowStabMatching) -> Self {
        MatchingJson {
            pairs: m.pairs.iter().map(|&(i, j)| [i, j]).collect(),
            leftover: m.leftover,
            kappa: m.kappa.iter().map(|(k, &v)| (format!("{},{}", k.0, k.1), v)).collect(),
            config: m.config,
        }
    }
}

impl TryFrom<MatchingJson> for LowStabMatching {
    type Error = String;

    fn try_from(raw: MatchingJson) -> Result<Self, String> {
        let mut kappa = BTreeMap::new();
        for (k, v) in raw.kappa {
            let (a, b) = k.split_once(',').ok_or_else(|| format!("kappa key {k:?} is not \"i,j\""))?;
            let parse = |s: &str| s.trim().parse::<u32>().map_err(|e| format!("kappa key {k:?}: {e}"));
            kappa.insert(MemberKey(parse(a)?, parse(b)?), v);
        }
        Ok(LowStabMatching {
            pairs: raw
                .pairs
                .into_iter()
                .map(|[i, j]| (i.min(j), i.max(j)))
                .collect(),
            leftover: raw.leftover,
            kappa,
            config: raw.config,
            diagnostics: MatchDiagnostics::default(),
        })
    }
}

/// Builds the index-local low-stabbing matching of an unweighted family.
///
/// 1. Partition with `delta_0 = c2 W / n^(1/(2d))`, then refine by index span
///    `floor(n^(1 - 1/(2d)))`. The refined partition is fixed for the run.
/// 2. Repeat `target_pairs` times: among unmatched same-part pairs pick the
///    one with the least weighted stab count (ties: lexicographic), then
///    double the weight of every member stabbing it.
pub fn key_matching(family: &SetFamily, cfg: &MatchConfig) -> Result<LowStabMatching> {
    cfg.validate()?;
    let n = family.n();
    if n < cfg.min_n.max(2) {
        return Err(Error::TooSmall { n, min_n: cfg.min_n.max(2) });
    }
    if !family.is_unweighted() {
        return Err(Error::range("input log-weights", "nonzero", "all zero"));
    }
    let total = family.len() as f64;
    let delta0 = cfg.initial_delta(total, n);
    let width = cfg.index_width(n);
    let target = cfg.target_pairs(n);

    let coarse = if delta0 > 0.0 {
        partition_low_stab(family, delta0)?
    } else {
        // Empty family: every pair has stab count 0.
        StabPartition {
            parts: vec![(0..n).collect()],
            delta: 0.0,
        }
    };
    let fine = refine_by_index(&coarse, width.max(1) as f64)?;

    let mut candidates: Vec<(usize, usize)> = fine
        .parts
        .iter()
        .flat_map(|p| {
            p.iter()
                .enumerate()
                .flat_map(move |(a, &u)| p[a + 1..].iter().map(move |&v| (u.min(v), u.max(v))))
        })
        .collect();
    candidates.sort_unstable();

    let incidence = Incidence::new(family);
    let k = family.len();
    let mut kappa = vec![0u32; k];
    // levels[e] = members whose current kappa is e.
    let mut levels: Vec<BitSet> = vec![BitSet::full(k)];
    let mut level_sizes: Vec<u64> = vec![k as u64];
    let mut matched = vec![false; n];
    let mut pairs = Vec::with_capacity(target);
    let mut steps = Vec::with_capacity(target);

    for i in 0..target {
        let weight_now = StabDistance::from_exponent_counts(
            level_sizes.iter().enumerate().map(|(e, &c)| (e as u32, c)),
        );
        let mut best: Option<((usize, usize), StabDistance)> = None;
        for &(u, v) in &candidates {
            if matched[u] || matched[v] {
                continue;
            }
            let s = StabDistance::from_exponent_counts(
                levels
                    .iter()
                    .enumerate()
                    .filter(|(e, _)| level_sizes[*e] > 0)
                    .map(|(e, lvl)| (e as u32, incidence.stab_within(u, v, lvl) as u64)),
            );
            if best.as_ref().is_none_or(|(_, b)| s < *b) {
                best = Some(((u, v), s));
            }
        }
        let Some(((u, v), s)) = best else {
            return Err(Error::InfeasiblePartition { found: i, wanted: target });
        };
        let remaining = (n - 2 * i) as f64;
        steps.push(MatchStep {
            pair: (u, v),
            weighted_stab: s.value(),
            log2_total_weight: weight_now.log2(),
            step_bound: 2.0 * cfg.c2 * weight_now.value() / remaining.powf(1.0 / cfg.d as f64),
        });
        matched[u] = true;
        matched[v] = true;
        pairs.push((u, v));

        let stabbing: Vec<usize> = {
            let (cu, cv) = (incidence.column(u), incidence.column(v));
            cu.words()
                .iter()
                .zip(cv.words())
                .enumerate()
                .flat_map(|(wi, (a, b))| {
                    let x = a ^ b;
                    (0..64).filter(move |bit| x >> bit & 1 == 1).map(move |bit| wi * 64 + bit)
                })
                .collect()
        };
        for a in stabbing {
            let e = kappa[a] as usize;
            levels[e].remove(a);
            level_sizes[e] -= 1;
            if levels.len() == e + 1 {
                levels.push(BitSet::new(k));
                level_sizes.push(0);
            }
            levels[e + 1].insert(a);
            level_sizes[e + 1] += 1;
            kappa[a] += 1;
        }
    }

    let final_weight =
        StabDistance::from_exponent_counts(level_sizes.iter().enumerate().map(|(e, &c)| (e as u32, c)));
    let leftover = (0..n).filter(|&v| !matched[v]).collect();
    Ok(LowStabMatching {
        pairs,
        leftover,
        kappa: family
            .members()
            .iter()
            .zip(&kappa)
            .map(|(m, &c)| (m.key, c))
            .collect(),
        config: *cfg,
        diagnostics: MatchDiagnostics {
            delta0,
            index_width: width,
            coarse_parts: coarse.len(),
            fine_parts: fine.len(),
            target_pairs: target,
            steps,
            log2_final_weight: final_weight.log2(),
        },
    })
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MatchingReport {
    pub checks: Vec<Check>,
    pub passed: bool,
}

impl MatchingReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }
}

pub const CHECK_PARTITION: &str = "pairs-and-leftover-partition-ground";
pub const CHECK_SPAN: &str = "index-span";
pub const CHECK_PAIR_STAB: &str = "pair-stab";
pub const CHECK_KAPPA: &str = "max-kappa";
pub const CHECK_LEFTOVER: &str = "leftover-size";
pub const CHECK_KAPPA_CONSISTENT: &str = "kappa-consistency";

/// Recomputes the matching's guarantees from scratch.
pub fn verify_matching(family: &SetFamily, m: &LowStabMatching, cfg: &MatchConfig) -> MatchingReport {
    let n = family.n();
    let mut checks = Vec::new();

    let mut seen = vec![0u32; n];
    let mut out_of_range = 0usize;
    for &v in m.pairs.iter().flat_map(|(a, b)| [a, b]).chain(&m.leftover) {
        match seen.get_mut(v) {
            Some(c) => *c += 1,
            None => out_of_range += 1,
        }
    }
    let bad_cover = seen.iter().filter(|&&c| c != 1).count() + out_of_range;
    let self_pairs = m.pairs.iter().filter(|(a, b)| a == b).count();
    checks.push(Check::at_most(CHECK_PARTITION, (bad_cover + self_pairs) as f64, 0.0));

    let valid_pair = |&&(a, b): &&(usize, usize)| a < n && b < n && a != b;
    let width = cfg.index_width(n);
    let span = m.pairs.iter().filter(valid_pair).map(|&(a, b)| a.abs_diff(b)).max().unwrap_or(0);
    checks.push(Check::at_most(CHECK_SPAN, span as f64, width as f64));

    let pair_stab = m
        .pairs
        .iter()
        .filter(valid_pair)
        .map(|&(a, b)| stab_count(family, a, b).map(|s| s.value()).unwrap_or(f64::INFINITY))
        .fold(0.0, f64::max);
    checks.push(Check::at_most(
        CHECK_PAIR_STAB,
        pair_stab,
        cfg.pair_stab_bound(family.total_weight().value(), n),
    ));

    let recount: Vec<u32> = family
        .members()
        .iter()
        .map(|mem| {
            m.pairs
                .iter()
                .filter(valid_pair)
                .filter(|&&(a, b)| mem.set.contains(a) != mem.set.contains(b))
                .count() as u32
        })
        .collect();
    let max_kappa = recount.iter().copied().max().unwrap_or(0);
    checks.push(Check::at_most(CHECK_KAPPA, max_kappa as f64, cfg.kappa_bound(n)));

    let x = m.leftover.len();
    checks.push(Check::decided(
        CHECK_LEFTOVER,
        x as f64,
        cfg.leftover_bound(n),
        leftover_within_bound(x, n, cfg.d),
    ));

    let mut mismatched = family
        .members()
        .iter()
        .zip(&recount)
        .filter(|(mem, &c)| m.kappa.get(&mem.key) != Some(&c))
        .count();
    mismatched += m.kappa.keys().filter(|k| family.position(**k).is_err()).count();
    checks.push(Check::at_most(CHECK_KAPPA_CONSISTENT, mismatched as f64, 0.0));

    let passed = checks.iter().all(|c| c.passed);
    MatchingReport { checks, passed }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    #[test]
    fn net_examples() {
        let f = fam(4, &[&[0], &[1], &[2]]);
        assert_eq!(greedy_net(&f, 0.5).unwrap(), vec![0, 1, 2, 3]);
        let w = f.total_weight().value();
        assert_eq!(greedy_net(&f, 2.0 * w).unwrap(), vec![0]);
        assert!(greedy_net(&f, 0.0).is_err());
    }

    #[test]
    fn partition_examples() {
        let f = fam(3, &[&[0]]);
        let p = partition_low_stab(&f, 0.4).unwrap();
        assert_eq!(p.parts, vec![vec![0], vec![1, 2]]);
        assert_eq!(pigeon_subset(&f, 0.4).unwrap(), vec![1, 2]);
        let all = partition_low_stab(&f, 2.0).unwrap();
        assert_eq!(all.parts, vec![vec![0, 1, 2]]);
        assert_eq!(pigeon_subset(&f, 2.0).unwrap(), vec![0, 1, 2]);
    }

    #[test]
    fn pigeon_ties_prefer_lowest_index() {
        let f = fam(4, &[&[0, 1]]);
        let p = partition_low_stab(&f, 0.5).unwrap();
        assert_eq!(p.parts, vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(pigeon_subset(&f, 0.5).unwrap(), vec![0, 1]);
    }

    #[test]
    fn refine_examples() {
        let p = StabPartition {
            parts: vec![vec![1, 2, 9], vec![0, 3]],
            delta: 1.0,
        };
        let r = refine_by_index(&p, 5.0).unwrap();
        assert_eq!(r.parts, vec![vec![1, 2], vec![9], vec![0, 3]]);
        assert_eq!(refine_by_index(&p, 10.0).unwrap().parts, p.parts);
        assert!(refine_by_index(&p, 0.5).is_err());
    }

    #[test]
    fn config_quantities() {
        let cfg = MatchConfig::default();
        assert_eq!(cfg.index_width(32), 13);
        assert_eq!(cfg.index_width(128), 38);
        // 32 - 2w <= 2 * 32^(3/4) = 26.9 requires w >= 3.
        assert_eq!(cfg.target_pairs(32), 3);
        assert_eq!(cfg.target_pairs(64), 10);
        assert_eq!(cfg.target_pairs(128), 26);
        assert!(MatchConfig { c3: 1.0, ..cfg }.validate().is_err());
        assert!(MatchConfig { d: 1, ..cfg }.validate().is_err());
    }

    #[test]
    fn empty_members_match_trivially() {
        let sets: Vec<&[usize]> = vec![&[]; 10];
        let f = fam(40, &sets);
        let cfg = MatchConfig::default();
        let m = key_matching(&f, &cfg).unwrap();
        assert_eq!(m.pairs.len(), cfg.target_pairs(40));
        assert!(m.kappa.values().all(|&k| k == 0));
        let r = verify_matching(&f, &m, &cfg);
        assert!(r.passed, "{:?}", r.checks);
    }

    #[test]
    fn too_small_and_weighted_inputs_are_rejected() {
        let f = fam(10, &[&[1]]);
        assert!(matches!(
            key_matching(&f, &MatchConfig::default()),
            Err(Error::TooSmall { n: 10, min_n: 32 })
        ));
        let g = fam(40, &[&[1]]).reweighted(&[1]);
        assert!(key_matching(&g, &MatchConfig::default()).is_err());
    }

    #[test]
    fn verify_flags_long_pairs_and_bad_kappa() {
        let f = fam(40, &[&[0, 1, 2], &[5]]);
        let cfg = MatchConfig::default();
        let mut m = key_matching(&f, &cfg).unwrap();
        assert!(verify_matching(&f, &m, &cfg).passed);

        let mut long = m.clone();
        long.pairs[0] = (0, 39);
        let r = verify_matching(&f, &long, &cfg);
        assert!(!r.check(CHECK_SPAN).unwrap().passed);

        *m.kappa.values_mut().next().unwrap() += 1;
        let r = verify_matching(&f, &m, &cfg);
        assert!(!r.check(CHECK_KAPPA_CONSISTENT).unwrap().passed);
        assert!(!r.passed);
    }

    #[test]
    fn matching_json_shape() {
        let f = fam(40, &[&[0, 1, 2], &[5]]);
        let m = key_matching(&f, &MatchConfig::default()).unwrap();
        let v: serde_json::Value = serde_json::from_str(&m.to_json()).unwrap();
        assert!(v["pairs"].is_array());
        assert!(v["X"].is_array());
        assert_eq!(v["kappa"]["0,0"], serde_json::json!(m.kappa[&MemberKey(0, 0)]));
        assert_eq!(v["config"]["d"], 2);
        let back = LowStabMatching::from_json_str(&m.to_json()).unwrap();
        assert_eq!(back.pairs, m.pairs);
        assert_eq!(back.kappa, m.kappa);
        assert!(LowStabMatching::from_json_str(
            r#"{"pairs":[],"X":[],"kappa":{"nope":1},"config":{"d":2,"c2":1,"c3":2,"min_n":32,"seed":0}}"#
        )
        .is_err());
    }
}
