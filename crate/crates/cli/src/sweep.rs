//! `sweep`: analyze a generated grid concurrently and aggregate per n.

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::Path;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;

use shortedge::drawing::Generator;
use shortedge::oracle::{brute_min_crossing_edge, PHI_GUARD};
use shortedge::short_edge::{crossing_bound, CSV_HEADER, CSV_SCHEMA};
use shortedge::PipelineReport;

use crate::{Env, Failure};

/// Per-instance columns of the analyze CSV, then the sweep extras.
fn header() -> String {
    format!("{CSV_HEADER},oracle_min,kind,error")
}

struct Row {
    n: usize,
    seed: u64,
    result: Result<(PipelineReport, Option<u32>), String>,
}

fn analyze_one(env: &Env, generator: Generator, n: usize, seed: u64) -> Row {
    let result = (|| {
        let d = generator.generate(n + 1, seed).map_err(|e| e.to_string())?;
        let cfg = shortedge::PipelineConfig {
            jobs: 1,
            ..env.pipeline(None)
        };
        let report = shortedge::select_short_edge(&d, &cfg).map_err(|e| e.to_string())?;
        let oracle = if n <= PHI_GUARD {
            Some(brute_min_crossing_edge(&d).map_err(|e| e.to_string())?.crossings)
        } else {
            None
        };
        Ok((report, oracle))
    })();
    Row { n, seed, result }
}

fn max(sorted: &[u32]) -> f64 {
    sorted[sorted.len() - 1] as f64
}

fn median(sorted: &[u32]) -> f64 {
    let k = sorted.len();
    if k % 2 == 1 {
        sorted[k / 2] as f64
    } else {
        (sorted[k / 2 - 1] as f64 + sorted[k / 2] as f64) / 2.0
    }
}

pub(crate) fn run(env: &Env, ns: &[usize], seeds: u64, generator: Generator, output: Option<&Path>) -> Result<(), Failure> {
    let mut ns = ns.to_vec();
    ns.sort_unstable();
    ns.dedup();
    let tasks: Vec<(usize, u64)> = ns
        .iter()
        .flat_map(|&n| (0..seeds).map(move |s| (n, env.seed + s)))
        .collect();

    let next = AtomicUsize::new(0);
    let slots: Mutex<Vec<Option<Row>>> = Mutex::new((0..tasks.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..env.jobs.min(tasks.len()).max(1) {
            s.spawn(|| loop {
                let k = next.fetch_add(1, Ordering::Relaxed);
                let Some(&(n, seed)) = tasks.get(k) else { break };
                let row = analyze_one(env, generator, n, seed);
                slots.lock().expect("no worker panicked")[k] = Some(row);
            });
        }
    });
    let rows: Vec<Row> = slots
        .into_inner()
        .expect("no worker panicked")
        .into_iter()
        .map(|r| r.expect("every task ran"))
        .collect();

    let mut sink: Box<dyn Write> = match output {
        Some(path) => Box::new(BufWriter::new(File::create(path)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    };
    let g = generator.name();
    writeln!(sink, "{}", header())?;
    let mut errors = 0;
    let mut over_bound = 0;
    for row in &rows {
        match &row.result {
            Ok((report, oracle)) => {
                over_bound += usize::from(!report.passed);
                let oracle = oracle.map(|c| c.to_string()).unwrap_or_default();
                writeln!(sink, "{},{oracle},instance,", report.csv_row(row.seed, g))?;
            }
            Err(msg) => {
                errors += 1;
                let blanks = ",".repeat(13);
                writeln!(sink, "{CSV_SCHEMA},{},{},{g}{blanks},,instance,{}", row.n, row.seed, msg.replace(',', ";"))?;
            }
        }
    }
    for &n in &ns {
        let ok: Vec<&(PipelineReport, Option<u32>)> =
            rows.iter().filter(|r| r.n == n).filter_map(|r| r.result.as_ref().ok()).collect();
        if ok.is_empty() {
            continue;
        }
        let mut chosen: Vec<u32> = ok.iter().map(|(r, _)| r.crossing_count).collect();
        let mut oracle: Vec<u32> = ok.iter().filter_map(|(_, o)| *o).collect();
        chosen.sort_unstable();
        oracle.sort_unstable();
        let bound = crossing_bound(env.constants.c4, n);
        for (kind, f) in [("max", max as fn(&[u32]) -> f64), ("median", median)] {
            let o = if oracle.is_empty() { String::new() } else { f(&oracle).to_string() };
            let blanks = ",".repeat(9);
            writeln!(sink, "{CSV_SCHEMA},{n},,{g},,,{},{bound:.3}{blanks},{o},{kind},", f(&chosen))?;
        }
    }
    sink.flush()?;
    drop(sink);

    if env.json {
        println!(
            "{}",
            serde_json::json!({ "rows": rows.len(), "errors": errors, "over_bound": over_bound })
        );
    }
    if errors + over_bound > 0 {
        return Err(Failure::Failed(format!("{errors} instance(s) failed, {over_bound} above the bound")));
    }
    Ok(())
}
