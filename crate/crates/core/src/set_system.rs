//! Weighted set systems over an indexed ground set.
//!
//! A member `A` with log-weight `k` counts as `2^k` copies of `A`. The
//! weighted number of members stabbing a pair `{u, v}` (containing exactly
//! one of the two) is a pseudometric on the ground set, and the number of
//! Venn cells cut out by `m` members bounds the dual shatter function.

use std::cmp::Ordering;
use std::collections::{HashMap, HashSet};
use std::fmt;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};

/// Largest ground set accepted from external input.
pub const MAX_GROUND: usize = 1 << 20;
/// Largest log-weight accepted from external input.
pub const MAX_LOG_WEIGHT: u32 = 1 << 20;

pub type VertexSet = BitSet;

/// Ordered ground set `v_1, ..., v_n`; position `i` (0-based) is the index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroundSet {
    labels: Vec<u32>,
}

impl GroundSet {
    pub fn new(labels: Vec<u32>) -> Result<Self> {
        let mut seen = HashSet::with_capacity(labels.len());
        for &l in &labels {
            if !seen.insert(l) {
                return Err(Error::Parse(format!("duplicate ground label {l}")));
            }
        }
        Ok(GroundSet { labels })
    }

    /// Ground set whose labels are its indices.
    pub fn indexed(n: usize) -> Self {
        GroundSet {
            labels: (0..n as u32).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }
}

/// Identity of a member; for triangle families the index pair `(i, j)`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct MemberKey(pub u32, pub u32);

impl fmt::Display for MemberKey {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.0, self.1)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Member {
    pub key: MemberKey,
    pub set: VertexSet,
    pub log_weight: u32,
}

#[derive(Clone, Debug)]
pub struct SetFamily {
    ground: GroundSet,
    members: Vec<Member>,
    by_key: HashMap<MemberKey, usize>,
}

// `by_key` is derived from `members`.
impl PartialEq for SetFamily {
    fn eq(&self, other: &Self) -> bool {
        self.ground == other.ground && self.members == other.members
    }
}

impl Eq for SetFamily {}

impl SetFamily {
    pub fn new(ground: GroundSet, members: Vec<Member>) -> Result<Self> {
        let n = ground.len();
        let mut by_key = HashMap::with_capacity(members.len());
        for (idx, m) in members.iter().enumerate() {
            if m.set.universe() != n {
                return Err(Error::range("member universe", m.set.universe(), format!("= {n}")));
            }
            if by_key.insert(m.key, idx).is_some() {
                return Err(Error::DuplicateKey(m.key));
            }
        }
        Ok(SetFamily { ground, members, by_key })
    }

    /// Unweighted family from explicit index lists; keys are `(k, 0)` for the k-th set.
    pub fn from_sets(n: usize, sets: &[&[usize]]) -> Result<Self> {
        let members = sets
            .iter()
            .enumerate()
            .map(|(k, s)| {
                for &i in s.iter() {
                    if i >= n {
                        return Err(Error::VertexOutOfRange { index: i, n });
                    }
                }
                Ok(Member {
                    key: MemberKey(k as u32, 0),
                    set: BitSet::from_indices(n, s.iter().copied()),
                    log_weight: 0,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(GroundSet::indexed(n), members)
    }

    pub fn ground(&self) -> &GroundSet {
        &self.ground
    }

    pub fn n(&self) -> usize {
        self.ground.len()
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn members(&self) -> &[Member] {
        &self.members
    }

    pub fn position(&self, key: MemberKey) -> Result<usize> {
        self.by_key.get(&key).copied().ok_or(Error::UnknownKey(key))
    }

    pub fn member(&self, key: MemberKey) -> Result<&Member> {
        Ok(&self.members[self.position(key)?])
    }

    pub fn is_unweighted(&self) -> bool {
        self.members.iter().all(|m| m.log_weight == 0)
    }

    /// Total weight `W = sum 2^logw`.
    pub fn total_weight(&self) -> StabDistance {
        StabDistance::from_exponents(self.members.iter().map(|m| m.log_weight))
    }

    /// Same sets with the given log-weights (indexed like `members()`).
    pub fn reweighted(&self, log_weights: &[u32]) -> SetFamily {
        assert_eq!(log_weights.len(), self.members.len());
        let members = self
            .members
            .iter()
            .zip(log_weights)
            .map(|(m, &k)| Member {
                log_weight: k,
                ..m.clone()
            })
            .collect();
        SetFamily {
            ground: self.ground.clone(),
            members,
            by_key: self.by_key.clone(),
        }
    }

    pub(crate) fn check_vertex(&self, v: usize) -> Result<()> {
        if v >= self.n() {
            return Err(Error::VertexOutOfRange { index: v, n: self.n() });
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&FamilyJson::from(self)).expect("family serializes")
    }

    pub fn from_json_str(s: &str) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_str(s)?;
        raw.try_into()
    }

    pub fn from_json_slice(bytes: &[u8]) -> Result<Self> {
        let raw: FamilyJson = serde_json::from_slice(bytes)?;
        raw.try_into()
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FamilyJson {
    n: usize,
    members: Vec<MemberJson>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct MemberJson {
    key: MemberKey,
    set: Vec<usize>,
    #[serde(default)]
    logw: u32,
}

impl From<&SetFamily> for FamilyJson {
    fn from(f: &SetFamily) -> Self {
        FamilyJson {
            n: f.n(),
            members: f
                .members
                .iter()
                .map(|m| MemberJson {
                    key: m.key,
                    set: m.set.iter().collect(),
                    logw: m.log_weight,
                })
                .collect(),
        }
    }
}

impl TryFrom<FamilyJson> for SetFamily {
    type Error = Error;

    fn try_from(raw: FamilyJson) -> Result<Self> {
        if raw.n > MAX_GROUND {
            return Err(Error::range("n", raw.n, format!("<= {MAX_GROUND}")));
        }
        let members = raw
            .members
            .into_iter()
            .map(|m| {
                if m.logw > MAX_LOG_WEIGHT {
                    return Err(Error::range("logw", m.logw, format!("<= {MAX_LOG_WEIGHT}")));
                }
                if let Some(&bad) = m.set.iter().find(|&&i| i >= raw.n) {
                    return Err(Error::VertexOutOfRange { index: bad, n: raw.n });
                }
                Ok(Member {
                    key: m.key,
                    set: BitSet::from_indices(raw.n, m.set),
                    log_weight: m.logw,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        SetFamily::new(GroundSet::indexed(raw.n), members)
    }
}

/// A weighted stab count `scaled * 2^shift`.
///
/// `shift` is the largest exponent that contributed, so sums of unweighted
/// members have `shift == 0` and `scaled` holds the exact integer count.
#[derive(Clone, Copy, Debug, Default)]
pub struct StabDistance {
    scaled: f64,
    shift: u32,
}

impl StabDistance {
    pub const ZERO: StabDistance = StabDistance { scaled: 0.0, shift: 0 };

    /// Sum of `count * 2^exponent` over the given terms.
    pub fn from_exponent_counts(terms: impl IntoIterator<Item = (u32, u64)> + Clone) -> Self {
        let shift = terms
            .clone()
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .map(|(e, _)| e)
            .max();
        let Some(shift) = shift else {
            return StabDistance::ZERO;
        };
        let scaled = terms
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .map(|(e, c)| c as f64 * exp2i(e as i64 - shift as i64))
            .sum();
        StabDistance { scaled, shift }
    }

    /// Sum of `2^e` over the given exponents.
    pub fn from_exponents(exponents: impl IntoIterator<Item = u32>) -> Self {
        let mut counts: HashMap<u32, u64> = HashMap::new();
        for e in exponents {
            *counts.entry(e).or_default() += 1;
        }
        let mut terms: Vec<(u32, u64)> = counts.into_iter().collect();
        terms.sort_unstable();
        StabDistance::from_exponent_counts(terms)
    }

    pub fn from_count(count: u64) -> Self {
        StabDistance {
            scaled: count as f64,
            shift: 0,
        }
    }

    /// The value as `f64` (infinite if it exceeds the `f64` range).
    pub fn value(self) -> f64 {
        self.scaled * exp2i(self.shift as i64)
    }

    pub fn log2(self) -> f64 {
        self.scaled.log2() + self.shift as f64
    }

    /// The exact integer value when every contributing exponent was zero.
    pub fn exact(self) -> Option<u64> {
        (self.shift == 0).then_some(self.scaled as u64)
    }

    pub fn is_zero(self) -> bool {
        self.scaled == 0.0
    }

    fn cmp_value(self, other: StabDistance) -> Ordering {
        let m = self.shift.max(other.shift) as i64;
        let a = self.scaled * exp2i(self.shift as i64 - m);
        let b = other.scaled * exp2i(other.shift as i64 - m);
        a.total_cmp(&b)
    }

    /// `self >= delta` for a real threshold.
    pub fn at_least(self, delta: f64) -> bool {
        self.value() >= delta
    }
}

impl PartialEq for StabDistance {
    fn eq(&self, other: &Self) -> bool {
        self.cmp_value(*other) == Ordering::Equal
    }
}

impl PartialOrd for StabDistance {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp_value(*other))
    }
}

impl fmt::Display for StabDistance {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.exact() {
            Some(c) => write!(f, "{c}"),
            None => write!(f, "{}", self.value()),
        }
    }
}

/// `2^e` for any integer exponent, saturating to 0 or infinity.
pub(crate) fn exp2i(e: i64) -> f64 {
    if e > 1023 {
        f64::INFINITY
    } else if e < -1074 {
        0.0
    } else {
        2f64.powi(e as i32)
    }
}

/// `A` stabs `{u, v}` iff it contains exactly one of them.
pub fn stabs(set: &VertexSet, u: usize, v: usize) -> Result<bool> {
    if u == v {
        return Err(Error::InvalidPair(u));
    }
    let n = set.universe();
    for w in [u, v] {
        if w >= n {
            return Err(Error::VertexOutOfRange { index: w, n });
        }
    }
    Ok(set.contains(u) != set.contains(v))
}

/// Weighted number of members stabbing `{u, v}`.
pub fn stab_count(family: &SetFamily, u: usize, v: usize) -> Result<StabDistance> {
    if u == v {
        return Err(Error::InvalidPair(u));
    }
    family.check_vertex(u)?;
    family.check_vertex(v)?;
    Ok(StabDistance::from_exponents(
        family
            .members
            .iter()
            .filter(|m| m.set.contains(u) != m.set.contains(v))
            .map(|m| m.log_weight),
    ))
}

/// Per-vertex membership columns: bit `a` of column `v` is set iff member
/// `a` contains `v`. Unweighted stab counts become popcounts.
#[derive(Clone, Debug)]
pub struct Incidence {
    columns: Vec<BitSet>,
    members: usize,
}

impl Incidence {
    pub fn new(family: &SetFamily) -> Self {
        let k = family.len();
        let mut columns = vec![BitSet::new(k); family.n()];
        for (a, m) in family.members.iter().enumerate() {
            for v in m.set.iter() {
                columns[v].insert(a);
            }
        }
        Incidence { columns, members: k }
    }

    pub fn members(&self) -> usize {
        self.members
    }

    pub fn column(&self, v: usize) -> &BitSet {
        &self.columns[v]
    }

    /// Number of members stabbing `{u, v}`, ignoring weights.
    pub fn unweighted_stab(&self, u: usize, v: usize) -> usize {
        self.columns[u].xor_count(&self.columns[v])
    }

    /// Members stabbing `{u, v}` among those in `mask`.
    pub fn stab_within(&self, u: usize, v: usize, mask: &BitSet) -> usize {
        self.columns[u].xor_count_masked(&self.columns[v], mask)
    }

    /// Weighted stab count for a family whose member `a` has log-weight `log_weights[a]`.
    pub fn weighted_stab(&self, u: usize, v: usize, log_weights: &[u32]) -> StabDistance {
        let (cu, cv) = (&self.columns[u], &self.columns[v]);
        let mut exps = Vec::new();
        for (wi, (a, b)) in cu.words().iter().zip(cv.words()).enumerate() {
            let mut w = a ^ b;
            while w != 0 {
                let bit = w.trailing_zeros() as usize;
                w &= w - 1;
                exps.push(log_weights[wi * 64 + bit]);
            }
        }
        StabDistance::from_exponents(exps)
    }
}

/// Number of distinct membership signatures of ground vertices with respect to the chosen members.
pub fn venn_cells(family: &SetFamily, keys: &[MemberKey]) -> Result<usize> {
    if keys.is_empty() {
        return Err(Error::range("m", 0, ">= 1"));
    }
    let sets = keys
        .iter()
        .map(|&k| family.member(k).map(|m| &m.set))
        .collect::<Result<Vec<_>>>()?;
    Ok(count_cells(family.n(), &sets))
}

/// Cells of the Venn diagram of `sets` restricted to `0..n`, by successive refinement.
pub(crate) fn count_cells(n: usize, sets: &[&BitSet]) -> usize {
    if n == 0 {
        return 0;
    }
    let mut cells = vec![BitSet::full(n)];
    for s in sets {
        let mut next = Vec::with_capacity(cells.len() * 2);
        for c in &cells {
            let inside = c.and(s, false);
            let outside = c.and(s, true);
            if !inside.is_empty() {
                next.push(inside);
            }
            if !outside.is_empty() {
                next.push(outside);
            }
        }
        cells = next;
    }
    cells.len()
}

/// Result of [`dual_shatter_estimate`].
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ShatterEstimate {
    pub m: usize,
    /// Largest number of cells found.
    pub cells: usize,
    /// `true` if every m-subfamily was examined (the value is the exact
    /// maximum); `false` if subfamilies were sampled (a lower bound).
    pub exhaustive: bool,
    pub subfamilies_examined: u64,
    /// Keys of a subfamily attaining `cells`.
    pub witness: Vec<MemberKey>,
}

/// Maximum Venn cell count over m-subfamilies: exact when the number of
/// m-subsets of distinct member sets is within `budget`, else a seeded sample
/// of `budget` random m-subfamilies.
///
/// Duplicated sets never add cells and adding a set never merges cells, so
/// the maximum over m-subsets of the multiset equals the maximum over
/// m-subsets of its distinct sets.
pub fn dual_shatter_estimate(family: &SetFamily, m: usize, budget: u64, seed: u64) -> Result<ShatterEstimate> {
    let k = family.len();
    if m == 0 || m > k {
        return Err(Error::range("m", m, format!("1..={k}")));
    }
    let n = family.n();
    let mut first_of: HashMap<&BitSet, usize> = HashMap::new();
    let mut distinct: Vec<usize> = Vec::new();
    for (a, mem) in family.members.iter().enumerate() {
        first_of.entry(&mem.set).or_insert_with(|| {
            distinct.push(a);
            a
        });
    }
    let key_of = |a: usize| family.members[a].key;

    if distinct.len() <= m {
        let sets: Vec<&BitSet> = distinct.iter().map(|&a| &family.members[a].set).collect();
        // Pad the witness with arbitrary extra members to reach m keys.
        let mut witness: Vec<MemberKey> = distinct.iter().map(|&a| key_of(a)).collect();
        witness.extend((0..k).filter(|a| !distinct.contains(a)).take(m - distinct.len()).map(key_of));
        return Ok(ShatterEstimate {
            m,
            cells: count_cells(n, &sets),
            exhaustive: true,
            subfamilies_examined: 1,
            witness,
        });
    }

    let total = binomial(distinct.len() as u64, m as u64);
    if total.is_some_and(|t| t <= budget as u128) {
        let sets: Vec<&BitSet> = distinct.iter().map(|&a| &family.members[a].set).collect();
        let (cells, examined, best) = exhaustive_max_cells(n, &sets, m);
        return Ok(ShatterEstimate {
            m,
            cells,
            exhaustive: true,
            subfamilies_examined: examined,
            witness: best.into_iter().map(|i| key_of(distinct[i])).collect(),
        });
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut best_cells = 0;
    let mut best = Vec::new();
    for _ in 0..budget {
        let pick: Vec<usize> = sample(&mut rng, k, m).into_vec();
        let sets: Vec<&BitSet> = pick.iter().map(|&a| &family.members[a].set).collect();
        let c = count_cells(n, &sets);
        if c > best_cells {
            best_cells = c;
            best = pick;
        }
    }
    Ok(ShatterEstimate {
        m,
        cells: best_cells,
        exhaustive: false,
        subfamilies_examined: budget,
        witness: best.into_iter().map(key_of).collect(),
    })
}

/// Depth-first enumeration of all m-subsets with incremental refinement.
/// Cells are stored as flat word vectors per depth to avoid allocation.
fn exhaustive_max_cells(n: usize, sets: &[&BitSet], m: usize) -> (usize, u64, Vec<usize>) {
    let words = n.div_ceil(64);
    let full = BitSet::full(n);
    // levels[d] holds the cells after choosing d sets, `words` u64s per cell.
    let mut levels: Vec<Vec<u64>> = vec![Vec::new(); m + 1];
    levels[0] = full.words().to_vec();
    let mut chosen = vec![0usize; m];
    let mut best = (0usize, Vec::new());
    let mut examined = 0u64;

    fn refine(src: &[u64], set: &[u64], words: usize, dst: &mut Vec<u64>) {
        dst.clear();
        for cell in src.chunks_exact(words) {
            let mut any_in = false;
            let mut any_out = false;
            for (c, s) in cell.iter().zip(set) {
                any_in |= c & s != 0;
                any_out |= c & !s != 0;
            }
            if any_in {
                dst.extend(cell.iter().zip(set).map(|(c, s)| c & s));
            }
            if any_out {
                dst.extend(cell.iter().zip(set).map(|(c, s)| c & !s));
            }
        }
    }

    fn count_split(src: &[u64], set: &[u64], words: usize) -> usize {
        src.chunks_exact(words)
            .map(|cell| {
                let mut any_in = false;
                let mut any_out = false;
                for (c, s) in cell.iter().zip(set) {
                    any_in |= c & s != 0;
                    any_out |= c & !s != 0;
                }
                any_in as usize + any_out as usize
            })
            .sum()
    }

    // Iterative combination enumeration.
    let k = sets.len();
    let mut depth = 0usize;
    let mut next = 0usize;
    loop {
        if depth == m - 1 {
            let src = &levels[depth];
            for (last, set) in sets.iter().enumerate().skip(next) {
                let c = count_split(src, set.words(), words);
                examined += 1;
                if c > best.0 {
                    chosen[depth] = last;
                    best = (c, chosen.clone());
                }
            }
            // Backtrack.
            if depth == 0 {
                break;
            }
            depth -= 1;
            next = chosen[depth] + 1;
            continue;
        }
        if next + (m - depth) > k {
            if depth == 0 {
                break;
            }
            depth -= 1;
            next = chosen[depth] + 1;
            continue;
        }
        chosen[depth] = next;
        let (lo, hi) = levels.split_at_mut(depth + 1);
        refine(&lo[depth], sets[next].words(), words, &mut hi[0]);
        depth += 1;
        next = chosen[depth - 1] + 1;
    }
    (best.0, examined, best.1)
}

/// `C(n, k)` or `None` on overflow.
fn binomial(n: u64, k: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc.checked_mul((n - i) as u128)? / (i as u128 + 1);
    }
    Some(acc)
}

/// `sum_{i=0}^{d*} C(m, i)`, saturating at `u128::MAX`.
pub fn sauer_shelah_bound(d_star: u64, m: u64) -> u128 {
    let top = d_star.min(m);
    let mut sum: u128 = 0;
    let mut term: u128 = 1;
    for i in 0..=top {
        sum = sum.saturating_add(term);
        if i < top {
            term = match term.checked_mul((m - i) as u128) {
                Some(t) => t / (i as u128 + 1),
                None => return u128::MAX,
            };
        }
    }
    sum
}

/// Every distinct pair of `xs` is stabbed by weight at least `delta`.
pub fn is_delta_separated(family: &SetFamily, xs: &[usize], delta: f64) -> Result<bool> {
    for &x in xs {
        family.check_vertex(x)?;
    }
    for (a, &u) in xs.iter().enumerate() {
        for &v in &xs[a + 1..] {
            if u == v {
                continue;
            }
            if !stab_count(family, u, v)?.at_least(delta) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fam(n: usize, sets: &[&[usize]]) -> SetFamily {
        SetFamily::from_sets(n, sets).unwrap()
    }

    fn keys(f: &SetFamily) -> Vec<MemberKey> {
        f.members().iter().map(|m| m.key).collect()
    }

    #[test]
    fn stabs_definition() {
        let n = 4;
        assert!(stabs(&BitSet::from_indices(n, [0]), 0, 1).unwrap());
        assert!(!stabs(&BitSet::from_indices(n, [0, 1]), 0, 1).unwrap());
        assert!(stabs(&BitSet::from_indices(n, [0, 3]), 2, 3).unwrap());
        assert!(matches!(stabs(&BitSet::new(n), 2, 2), Err(Error::InvalidPair(2))));
    }

    #[test]
    fn stab_counts_weighted_and_unweighted() {
        let f = fam(2, &[&[0], &[1]]);
        assert_eq!(stab_count(&f, 0, 1).unwrap().exact(), Some(2));
        let w = fam(2, &[&[0]]).reweighted(&[3]);
        assert_eq!(stab_count(&w, 0, 1).unwrap().value(), 8.0);
        assert!(matches!(stab_count(&f, 1, 1), Err(Error::InvalidPair(1))));
    }

    #[test]
    fn huge_exponents_do_not_overflow() {
        let f = fam(2, &[&[0], &[0], &[1]]).reweighted(&[5000, 4999, 0]);
        let s = stab_count(&f, 0, 1).unwrap();
        assert!((s.log2() - (5000f64 + 1.5f64.log2())).abs() < 1e-9);
        assert!(s > StabDistance::from_count(u64::MAX));
    }

    #[test]
    fn venn_cell_examples() {
        let f = fam(3, &[&[0], &[1]]);
        assert_eq!(venn_cells(&f, &keys(&f)).unwrap(), 3);
        let e = fam(5, &[&[]]);
        assert_eq!(venn_cells(&e, &keys(&e)).unwrap(), 1);
        let dup = fam(4, &[&[1, 2], &[1, 2], &[1, 2]]);
        assert_eq!(venn_cells(&dup, &keys(&dup)).unwrap(), 2);
        let full = fam(3, &[&[0, 1, 2], &[0, 1, 2]]);
        assert_eq!(venn_cells(&full, &keys(&full)).unwrap(), 1);
        assert!(matches!(
            venn_cells(&f, &[MemberKey(9, 9)]),
            Err(Error::UnknownKey(MemberKey(9, 9)))
        ));
    }

    #[test]
    fn shatter_examples() {
        let f = fam(3, &[&[0], &[1]]);
        let est = dual_shatter_estimate(&f, 2, 1000, 0).unwrap();
        assert_eq!(est.cells, 3);
        assert!(est.exhaustive);
        let g = fam(4, &[&[], &[0, 1], &[0, 1, 2, 3]]);
        assert_eq!(dual_shatter_estimate(&g, 1, 1000, 0).unwrap().cells, 2);
        assert!(dual_shatter_estimate(&g, 4, 1000, 0).is_err());
        assert!(dual_shatter_estimate(&g, 0, 1000, 0).is_err());
    }

    #[test]
    fn shatter_sampling_is_flagged_and_seeded() {
        let sets: Vec<Vec<usize>> = (0..30).map(|i| vec![i % 10, (i * 7) % 10]).collect();
        let refs: Vec<&[usize]> = sets.iter().map(|s| s.as_slice()).collect();
        let f = fam(10, &refs);
        let a = dual_shatter_estimate(&f, 3, 5, 11).unwrap();
        let b = dual_shatter_estimate(&f, 3, 5, 11).unwrap();
        assert!(!a.exhaustive);
        assert_eq!(a, b);
    }

    #[test]
    fn sauer_shelah_examples() {
        assert_eq!(sauer_shelah_bound(0, 5), 1);
        assert_eq!(sauer_shelah_bound(2, 4), 11);
        assert_eq!(sauer_shelah_bound(3, 3), 8);
        assert_eq!(sauer_shelah_bound(7, 3), 8);
        assert_eq!(sauer_shelah_bound(1, 0), 1);
    }

    #[test]
    fn delta_separation_examples() {
        let f = fam(2, &[&[0]]);
        assert!(is_delta_separated(&f, &[0], 100.0).unwrap());
        assert!(is_delta_separated(&f, &[0, 1], 1.0).unwrap());
        assert!(!is_delta_separated(&f, &[0, 1], 2.0).unwrap());
        assert!(is_delta_separated(&f, &[0, 1], 0.0).unwrap());
    }

    #[test]
    fn json_round_trip_and_rejections() {
        let f = fam(4, &[&[0, 2], &[]]).reweighted(&[2, 0]);
        let g = SetFamily::from_json_str(&f.to_json()).unwrap();
        assert_eq!(g.members(), f.members());
        assert!(SetFamily::from_json_str(r#"{"n":2,"members":[{"key":[0,0],"set":[5]}]}"#).is_err());
        assert!(SetFamily::from_json_str(
            r#"{"n":2,"members":[{"key":[0,0],"set":[]},{"key":[0,0],"set":[1]}]}"#
        )
        .is_err());
        assert!(SetFamily::from_json_str(r#"{"n":2,"members":[],"extra":1}"#).is_err());
    }

    #[test]
    fn exhaustive_enumeration_matches_naive_maximum() {
        let sets: Vec<Vec<usize>> = (0..9).map(|i| (0..12).filter(|v| (v * (i + 3)) % 5 < 2).collect()).collect();
        let refs: Vec<&[usize]> = sets.iter().map(|s| s.as_slice()).collect();
        let f = fam(12, &refs);
        let ks = keys(&f);
        let mut naive = 0;
        for a in 0..ks.len() {
            for b in a + 1..ks.len() {
                for c in b + 1..ks.len() {
                    naive = naive.max(venn_cells(&f, &[ks[a], ks[b], ks[c]]).unwrap());
                }
            }
        }
        let est = dual_shatter_estimate(&f, 3, 1 << 20, 0).unwrap();
        assert!(est.exhaustive);
        assert_eq!(est.cells, naive);
        assert_eq!(venn_cells(&f, &est.witness).unwrap(), naive);
    }
}
