//! The invariant suite behind `verify`.

use std::collections::BTreeMap;
use std::path::Path;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use shortedge::drawing::{crossing_matrix, outer_face_vertex, relabel_ccw, triangle_family};
use shortedge::oracle::{
    brute_classification, brute_gamma1_arcs, brute_kappa, brute_min_crossing_edge, brute_phi, brute_stab_counts,
    brute_triangle_sets, PHI_GUARD,
};
use shortedge::packing::greedy_net;
use shortedge::report::Check;
use shortedge::set_system::{dual_shatter_estimate, stab_count};
use shortedge::short_edge::{build_gamma1, classify_crossings, filter_m2, phi_table};
use shortedge::{key_matching, verify_matching, Drawing, Error, LowStabMatching, MatchConfig, SetFamily};

use crate::{load_valid_drawing, read, Env, Failure};

const SHATTER_SAMPLES: u64 = 1000;
const MAX_SHATTER_M: usize = 6;
const TRIPLES: usize = 10_000;

#[derive(Default, Serialize)]
struct Outcome {
    input: String,
    checks: Vec<Check>,
    skipped: Vec<Skip>,
}

#[derive(Serialize)]
struct Skip {
    name: String,
    reason: String,
}

impl Outcome {
    fn skip(&mut self, name: &str, reason: impl Into<String>) {
        self.skipped.push(Skip {
            name: name.into(),
            reason: reason.into(),
        });
    }

    /// A check that `mismatches` recomputed values disagree: passes at 0.
    fn agree(&mut self, name: &str, mismatches: usize) {
        self.checks.push(Check::at_most(name, mismatches as f64, 0.0));
    }
}

enum Input {
    Drawing(Drawing),
    Family(SetFamily),
    Matching(LowStabMatching),
}

fn detect(path: &Path) -> Result<Input, Failure> {
    let text = read(path)?;
    let value: serde_json::Value =
        serde_json::from_str(&text).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let has = |k: &str| value.get(k).is_some();
    let wrap = |e: Error| Failure::Invalid(format!("{}: {e}", path.display()));
    if has("vertices") {
        load_valid_drawing(path).map(Input::Drawing)
    } else if has("members") {
        SetFamily::from_json_str(&text).map(Input::Family).map_err(wrap)
    } else if has("pairs") {
        LowStabMatching::from_json_str(&text).map(Input::Matching).map_err(wrap)
    } else {
        Err(Failure::Invalid(format!(
            "{}: expected a drawing, set family or matching object",
            path.display()
        )))
    }
}

pub(crate) fn run(
    env: &Env,
    input: &Path,
    family: Option<&Path>,
    drawing: Option<&Path>,
    root: Option<u32>,
) -> Result<(), Failure> {
    let mut out = Outcome {
        input: input.display().to_string(),
        ..Outcome::default()
    };
    match detect(input)? {
        Input::Drawing(d) => drawing_suite(env, &d, root, &mut out)?,
        Input::Family(f) => {
            family_suite(env, &f, false, &mut out);
        }
        Input::Matching(m) => {
            let f = match (family, drawing) {
                (Some(path), _) => SetFamily::from_json_str(&read(path)?)
                    .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
                (None, Some(path)) => {
                    let d = load_valid_drawing(path)?;
                    let l = relabel_ccw(&d, outer_face_vertex(&d, root)?)?;
                    triangle_family(&d, &l)?
                }
                (None, None) => {
                    return Err(Failure::Invalid(
                        "verifying a matching needs --family or --drawing".into(),
                    ))
                }
            };
            let cfg = MatchConfig::from(&env.constants);
            out.checks.extend(verify_matching(&f, &m, &cfg).checks);
        }
    }
    report(env, &out)
}

fn report(env: &Env, out: &Outcome) -> Result<(), Failure> {
    if env.json {
        println!("{}", serde_json::to_string_pretty(out).expect("outcome serializes"));
    } else {
        for c in &out.checks {
            println!("{c}");
        }
        for s in &out.skipped {
            println!("SKIP {}: {}", s.name, s.reason);
        }
    }
    let failed: Vec<&str> = out.checks.iter().filter(|c| !c.passed).map(|c| c.name.as_str()).collect();
    if failed.is_empty() {
        Ok(())
    } else {
        Err(Failure::Failed(format!("failed check(s): {}", failed.join(", "))))
    }
}

/// Shatter, packing, pseudometric and matching checks; returns the matching
/// if one was built. The packing check applies to triangle families only.
fn family_suite(env: &Env, f: &SetFamily, triangles: bool, out: &mut Outcome) -> Option<LowStabMatching> {
    if f.is_empty() {
        out.skip("shatter", "family has no members");
    }
    for m in 1..=MAX_SHATTER_M.min(f.len()) {
        let budget = if m <= 3 { u64::MAX } else { SHATTER_SAMPLES };
        match dual_shatter_estimate(f, m, budget, env.seed) {
            Ok(est) => {
                let name = format!("shatter-m{m}-{}", if est.exhaustive { "exact" } else { "sampled" });
                out.checks.push(Check::at_most(name, est.cells as f64, (5 * m * m) as f64));
            }
            Err(e) => out.skip(&format!("shatter-m{m}"), e.to_string()),
        }
    }

    let w = f.total_weight().value();
    if !triangles {
        out.skip("net-size-ratio", "c1 is fitted on triangle families only");
    } else if w > 0.0 && f.n() > 0 {
        let worst = (0..=8)
            .map(|t| {
                let delta = w / 2.0 * 10f64.powf(-(t as f64) / 4.0);
                let net = greedy_net(f, delta).map(|n| n.len()).unwrap_or(usize::MAX);
                net as f64 / (w / delta).powi(2)
            })
            .fold(0.0, f64::max);
        out.checks.push(Check::at_most("net-size-ratio", worst, env.constants.c1));
    }

    let n = f.n();
    if f.is_unweighted() && n >= 2 {
        let mut rng = ChaCha8Rng::seed_from_u64(env.seed);
        let d = |u: usize, v: usize| if u == v { 0 } else { stab_count(f, u, v).ok().and_then(|s| s.exact()).unwrap_or(0) };
        let bad = (0..TRIPLES)
            .filter(|_| {
                let (a, b, c) = (rng.gen_range(0..n), rng.gen_range(0..n), rng.gen_range(0..n));
                d(a, c) > d(a, b) + d(b, c)
            })
            .count();
        out.agree("stab-triangle-inequality", bad);
    }

    let cfg = MatchConfig::from(&env.constants);
    match key_matching(f, &cfg) {
        Ok(m) => {
            out.checks.extend(verify_matching(f, &m, &cfg).checks);
            Some(m)
        }
        Err(e) => {
            out.skip("matching", e.to_string());
            None
        }
    }
}

fn drawing_suite(env: &Env, d: &Drawing, root: Option<u32>, out: &mut Outcome) -> Result<(), Failure> {
    out.checks.push(Check::at_most("simple", 0.0, 0.0));
    let root = outer_face_vertex(d, root)?;
    let l = relabel_ccw(d, root)?;
    let f = triangle_family(d, &l)?;
    let m1 = family_suite(env, &f, true, out);

    let report = shortedge::select_short_edge(d, &env.pipeline(Some(root)))?;
    out.checks.push(Check::decided(
        "chosen-edge-crossings",
        report.crossing_count as f64,
        report.bound,
        report.passed,
    ));
    match report.e4_straddles {
        Some(ok) => out.checks.push(Check::decided("e4-straddles-split", ok as u8 as f64, 1.0, ok)),
        None => out.skip("e4-straddles-split", report.fallback.clone().unwrap_or_default()),
    }

    let n = l.n();
    if n > PHI_GUARD {
        out.skip("oracle", format!("n = {n} exceeds the oracle guard {PHI_GUARD}"));
        return Ok(());
    }
    let brute_sets = brute_triangle_sets(d, &l)?;
    let set_mismatches = f
        .members()
        .iter()
        .filter(|m| brute_sets.get(&(m.key.0 as usize, m.key.1 as usize)) != Some(&m.set.iter().collect()))
        .count();
    out.agree("oracle-triangle-sets", set_mismatches);

    let stabs = brute_stab_counts(&f)?;
    let stab_mismatches = (0..n)
        .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
        .filter(|&(i, j)| stab_count(&f, i, j).map(|s| s.value()).ok() != Some(stabs[i][j]))
        .count();
    out.agree("oracle-stab-table", stab_mismatches);

    let best = brute_min_crossing_edge(d)?;
    out.checks.push(Check::at_most(
        "oracle-min-le-chosen",
        best.crossings as f64,
        report.crossing_count as f64,
    ));

    let Some(m1) = m1 else {
        out.skip("oracle-matching", "no matching was built");
        return Ok(());
    };
    let kappa = brute_kappa(&f, &m1.pairs);
    out.agree(
        "oracle-kappa",
        f.members().iter().filter(|m| kappa.get(&m.key) != m1.kappa.get(&m.key)).count(),
    );
    let g1 = build_gamma1(&f, &m1)?;
    let arcs = brute_gamma1_arcs(d, &l, &m1.pairs)?;
    out.agree("oracle-gamma1-arcs", symmetric_difference(&arcs, &g1.arcs));
    match filter_m2(&g1, n) {
        Ok(m2) => {
            let fast: BTreeMap<(usize, usize), u32> =
                phi_table(d, &l, &m2, env.jobs)?.into_iter().map(|e| (e.pair, e.phi)).collect();
            let brute = brute_phi(d, &l, &m2)?;
            out.agree("oracle-phi", fast.iter().filter(|(k, v)| brute.get(k) != Some(v)).count());
        }
        Err(e) => out.skip("oracle-phi", e.to_string()),
    }
    if let Some(chosen) = report.chosen {
        let matrix = crossing_matrix(d)?;
        let fast = classify_crossings(d, &l, &f, &matrix, chosen, &m1.leftover)?.sizes();
        let brute = brute_classification(d, &l, chosen, &m1.leftover)?;
        out.agree("oracle-classification", (0..5).filter(|&c| fast[c] != brute[c]).count());
    }
    Ok(())
}

fn symmetric_difference(a: &[(usize, usize)], b: &[(usize, usize)]) -> usize {
    a.iter().filter(|x| !b.contains(x)).count() + b.iter().filter(|x| !a.contains(x)).count()
}
