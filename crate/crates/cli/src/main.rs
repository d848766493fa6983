//! Command-line front end: generate drawings, analyze them, verify
//! invariants and sweep parameter grids.

mod sweep;
mod verify;

use std::fs::OpenOptions;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use shortedge::drawing::{crossing_matrix, Generator};
use shortedge::short_edge::CSV_HEADER;
use shortedge::{Constants, Drawing, Error, PipelineConfig, PipelineReport};

#[derive(Parser)]
#[command(name = "shortedge", version, about = "Low-crossing edges in complete simple topological graphs")]
struct Cli {
    /// Seed for the random generator and for sampled checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,
    /// Print machine-readable JSON on stdout.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads.
    #[arg(long, global = true, default_value_t = 1, value_parser = clap::value_parser!(u16).range(1..))]
    jobs: u16,
    /// JSON file overriding {"c1", "c2", "c3", "c4", "min_n"}.
    #[arg(long, global = true)]
    constants: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Write a complete straight-line drawing as JSON.
    Gen {
        #[arg(long, value_parser = parse_generator)]
        generator: Generator,
        /// Number of vertices.
        #[arg(long)]
        n: usize,
        /// Output file (default: stdout, with the summary on stderr).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Select a low-crossing edge and report the counting argument.
    Analyze {
        input: PathBuf,
        /// Root vertex id; required for curved drawings.
        #[arg(long)]
        root: Option<u32>,
        #[arg(long, value_enum, default_value_t = Emit::Json)]
        emit: Emit,
        /// Report file; CSV rows are appended.
        #[arg(short, long)]
        output: Option<PathBuf>,
        /// Generator column of the CSV row (default: the input file name).
        #[arg(long)]
        label: Option<String>,
    },
    /// Run the invariant suite on a drawing, set family or matching file.
    Verify {
        input: PathBuf,
        /// Set family the matching was built over.
        #[arg(long, conflicts_with = "drawing")]
        family: Option<PathBuf>,
        /// Drawing whose triangle family the matching was built over.
        #[arg(long)]
        drawing: Option<PathBuf>,
        #[arg(long)]
        root: Option<u32>,
    },
    /// Analyze a grid of generated drawings and aggregate per n.
    Sweep {
        /// Labeled vertex counts; drawings get one extra vertex for the root.
        #[arg(long, value_delimiter = ',', default_values_t = [16usize, 32, 64])]
        n: Vec<usize>,
        /// Seeds per n, starting at --seed.
        #[arg(long, default_value_t = 5)]
        seeds: u64,
        #[arg(long, value_parser = parse_generator, default_value = "random-geometric")]
        generator: Generator,
        /// CSV file (default: stdout).
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Emit {
    Json,
    Csv,
}

fn parse_generator(s: &str) -> Result<Generator, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Why a command did not succeed; maps to the exit status.
enum Failure {
    /// Input could not be read, parsed or validated.
    Invalid(String),
    /// A check or bound failed.
    Failed(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Invalid(e.to_string())
    }
}

struct Env {
    seed: u64,
    json: bool,
    jobs: usize,
    constants: Constants,
}

impl Env {
    fn pipeline(&self, root_hint: Option<u32>) -> PipelineConfig {
        PipelineConfig {
            root_hint,
            jobs: self.jobs,
            ..PipelineConfig::from(&self.constants)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Failed(msg)) => {
            eprintln!("shortedge: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Invalid(msg)) => {
            eprintln!("shortedge: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<(), Failure> {
    let constants = match &cli.constants {
        Some(path) => Constants::from_json_str(&read(path)?)
            .map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?,
        None => Constants::default(),
    };
    let env = Env {
        seed: cli.seed,
        json: cli.json,
        jobs: cli.jobs as usize,
        constants,
    };
    match cli.command {
        Command::Gen { generator, n, output } => gen(&env, generator, n, output.as_deref()),
        Command::Analyze {
            input,
            root,
            emit,
            output,
            label,
        } => analyze(&env, &input, root, emit, output.as_deref(), label),
        Command::Verify {
            input,
            family,
            drawing,
            root,
        } => verify::run(&env, &input, family.as_deref(), drawing.as_deref(), root),
        Command::Sweep {
            n,
            seeds,
            generator,
            output,
        } => sweep::run(&env, &n, seeds, generator, output.as_deref()),
    }
}

fn read(path: &Path) -> Result<String, Failure> {
    std::fs::read_to_string(path).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))
}

/// Parses and validates a drawing; violations are listed on stderr.
fn load_valid_drawing(path: &Path) -> Result<Drawing, Failure> {
    let d = Drawing::from_json_str(&read(path)?).map_err(|e| Failure::Invalid(format!("{}: {e}", path.display())))?;
    let violations = shortedge::drawing::validate_simple(&d);
    if !violations.is_empty() {
        for v in &violations {
            eprintln!("violation: {v}");
        }
        return Err(Failure::Invalid(format!(
            "{}: not a simple complete drawing ({} violation(s))",
            path.display(),
            violations.len()
        )));
    }
    Ok(d)
}

fn gen(env: &Env, generator: Generator, n: usize, output: Option<&Path>) -> Result<(), Failure> {
    let d = generator.generate(n, env.seed)?;
    let crossings = crossing_matrix(&d)?.crossing_pairs();
    let text = d.to_json();
    let summary = if env.json {
        json!({
            "generator": generator.name(),
            "seed": env.seed,
            "vertices": d.vertex_count(),
            "edges": d.edges().len(),
            "crossings": crossings,
        })
        .to_string()
    } else {
        format!(
            "{generator}: {} vertices, {} edges, {crossings} crossings",
            d.vertex_count(),
            d.edges().len()
        )
    };
    match output {
        Some(path) => {
            std::fs::write(path, text)?;
            println!("{summary}");
        }
        None => {
            println!("{text}");
            eprintln!("{summary}");
        }
    }
    Ok(())
}

fn analyze(
    env: &Env,
    input: &Path,
    root: Option<u32>,
    emit: Emit,
    output: Option<&Path>,
    label: Option<String>,
) -> Result<(), Failure> {
    let d = load_valid_drawing(input)?;
    let report = shortedge::select_short_edge(&d, &env.pipeline(root))?;
    let label = label.unwrap_or_else(|| {
        input
            .file_name()
            .map(|s| s.to_string_lossy().into_owned())
            .unwrap_or_default()
    });

    let mut stdout_taken = false;
    match (emit, output) {
        (Emit::Json, Some(path)) => std::fs::write(path, report.to_json())?,
        (Emit::Json, None) => {
            println!("{}", report.to_json());
            stdout_taken = true;
        }
        (Emit::Csv, Some(path)) => append_csv(path, &report.csv_row(env.seed, &label))?,
        (Emit::Csv, None) => {
            println!("{CSV_HEADER}\n{}", report.csv_row(env.seed, &label));
            stdout_taken = true;
        }
    }
    if !stdout_taken {
        if env.json {
            println!("{}", report.to_json());
        } else {
            println!("{}", summary(&report));
        }
    }
    if report.passed || report.fallback.is_some() {
        Ok(())
    } else {
        Err(Failure::Failed(format!(
            "chosen edge has {} crossings, above the bound {:.3}",
            report.crossing_count, report.bound
        )))
    }
}

fn summary(r: &PipelineReport) -> String {
    let (u, v) = r.chosen_ids;
    let mut s = format!(
        "edge {u}-{v}: {} crossings (bound {:.3}) {}",
        r.crossing_count,
        r.bound,
        if r.passed { "PASS" } else { "FAIL" }
    );
    if let Some(reason) = &r.fallback {
        s.push_str(&format!(" [oracle fallback: {reason}]"));
    }
    s
}

/// Appends a row, writing the header first if the file is new or empty.
fn append_csv(path: &Path, row: &str) -> Result<(), Failure> {
    let mut file = OpenOptions::new().create(true).append(true).open(path)?;
    if file.metadata()?.len() == 0 {
        writeln!(file, "{CSV_HEADER}")?;
    }
    writeln!(file, "{row}")?;
    Ok(())
}
