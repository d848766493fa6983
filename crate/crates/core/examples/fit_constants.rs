//! Fits the unspecified constants over the fixed acceptance grid.
//!
//! Grid: convex, bowl and random geometric drawings on n + 1 vertices for
//! n in {32, 64, 128}, seeds 0..20, and for packings a delta grid from W/2
//! down to W/200. Each constant is the observed maximum rounded up to two
//! decimals (c3 additionally at least 2 * c2). Run with `--release`.

use std::time::Instant;

use shortedge::constants::C2;
use shortedge::drawing::{outer_face_vertex, relabel_ccw, triangle_family, Generator};
use shortedge::packing::{greedy_net, key_matching, MatchConfig};
use shortedge::set_system::{stab_count, SetFamily};
use shortedge::short_edge::{select_short_edge, PipelineConfig};

const NS: [usize; 3] = [32, 64, 128];
const SEEDS: u64 = 20;

fn delta_grid(w: f64) -> Vec<f64> {
    (0..=8).map(|t| w / 2.0 * 10f64.powf(-(t as f64) / 4.0)).collect()
}

fn ceil2(x: f64) -> f64 {
    (x * 100.0).ceil() / 100.0
}

fn family_of(g: Generator, n: usize, seed: u64) -> (shortedge::Drawing, SetFamily) {
    let d = g.generate(n + 1, seed).expect("generator");
    let root = outer_face_vertex(&d, None).expect("root");
    let l = relabel_ccw(&d, root).expect("labeling");
    let f = triangle_family(&d, &l).expect("family");
    (d, f)
}

fn main() {
    let cfg = MatchConfig {
        c3: f64::MAX / 4.0,
        ..MatchConfig::default()
    };
    let pipeline = PipelineConfig {
        matching: cfg,
        c4: 1.0,
        ..PipelineConfig::default()
    };
    let (mut c1, mut c3_pair, mut c3_kappa, mut c4) = (0f64, 0f64, 0f64, 0f64);
    println!("generator,n,seed,net_ratio,pair_ratio,kappa_ratio,crossings,crossing_ratio,ms");
    for g in Generator::ALL {
        for &n in &NS {
            for seed in 0..if g.is_seeded() { SEEDS } else { 1 } {
                let start = Instant::now();
                let (d, f) = family_of(g, n, seed);
                let w = f.len() as f64;
                let net_ratio = delta_grid(w)
                    .into_iter()
                    .map(|delta| greedy_net(&f, delta).expect("net").len() as f64 / (w / delta).powi(2))
                    .fold(0.0, f64::max);
                let m = key_matching(&f, &cfg).expect("matching");
                let scale = w / (n as f64).powf(0.25);
                let pair_ratio = m
                    .pairs
                    .iter()
                    .map(|&(a, b)| stab_count(&f, a, b).expect("stab").value() / scale)
                    .fold(0.0, f64::max);
                let kappa_ratio = m.max_kappa() as f64 / (n as f64).sqrt();
                let r = select_short_edge(&d, &pipeline).expect("pipeline");
                let crossing_ratio = r.crossing_count as f64 / (n as f64).powf(1.75);
                println!(
                    "{g},{n},{seed},{net_ratio:.4},{pair_ratio:.4},{kappa_ratio:.4},{},{crossing_ratio:.4},{}",
                    r.crossing_count,
                    start.elapsed().as_millis()
                );
                c1 = c1.max(net_ratio);
                c3_pair = c3_pair.max(pair_ratio);
                c3_kappa = c3_kappa.max(kappa_ratio);
                c4 = c4.max(crossing_ratio);
            }
        }
    }
    let c3 = ceil2(c3_pair.max(c3_kappa)).max(2.0 * C2);
    println!();
    println!("observed: c1 {c1:.4}, c3 (pairs) {c3_pair:.4}, c3 (kappa) {c3_kappa:.4}, c4 {c4:.4}");
    println!("frozen:   C1 = {:.2}, C2 = {C2:.2}, C3 = {c3:.2}, C4 = {:.2}", ceil2(c1), ceil2(c4));
}
