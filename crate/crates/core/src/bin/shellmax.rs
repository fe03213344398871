use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use shellmax::harmonic::NormMethod;
use shellmax::run::{run_suite, RunConfig, SuiteReport};
use shellmax::Result;

#[derive(Parser)]
#[command(name = "shellmax", version, about = "Exact experiments on Cayley graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    #[command(flatten)]
    flags: Flags,
}

#[derive(Subcommand)]
enum Command {
    /// Sphere sizes and the fitted growth model.
    Growth,
    /// Truncated operator norm of a sphere or ball average.
    Norm,
    /// Median candidates of three elements.
    Median,
    /// Spherical coarse median inequality over subset families.
    CoarseMedian,
    /// Shell correlation counts for seeded subset pairs.
    Correlation,
    /// Exact maximal function and its weak-type ratio.
    Maximal,
    /// Distributional inequality for sphere sums over a seeded corpus.
    DistCheck,
    /// Runs one named suite, or all of them.
    Suite { name: Option<String> },
}

/// Every flag overrides the same key of the `--config` file.
#[derive(Args)]
struct Flags {
    /// Flat JSON config whose keys mirror these flags.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Group spec, e.g. "free rank=2" or "raag vertices=a,b,c edges=a-b,b-c".
    #[arg(long, global = true)]
    group: Option<String>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<String>,
    /// Element budget for enumerations.
    #[arg(long, global = true)]
    budget: Option<usize>,
    /// Enumeration or truncation radius.
    #[arg(long, visible_alias = "R", global = true)]
    radius: Option<usize>,
    /// Measure radius (norm) or largest radius (dist-check).
    #[arg(long, global = true)]
    r: Option<usize>,
    /// Average over the closed ball instead of the sphere.
    #[arg(long, global = true)]
    ball: bool,
    /// auto, ball or radial_tree.
    #[arg(long, global = true)]
    method: Option<String>,
    #[arg(long, global = true)]
    tol: Option<f64>,
    #[arg(long, global = true)]
    max_iters: Option<usize>,
    #[arg(long, global = true)]
    rmax: Option<usize>,
    #[arg(long, global = true)]
    d2: Option<f64>,
    #[arg(long, global = true)]
    b: Option<f64>,
    #[arg(long, global = true)]
    width: Option<usize>,
    #[arg(long, global = true)]
    pairs: Option<usize>,
    #[arg(long, global = true)]
    max_subset: Option<usize>,
    #[arg(long, global = true)]
    corpus_seed: Option<u64>,
    #[arg(long, global = true)]
    corpus_size: Option<usize>,
    #[arg(long, global = true)]
    corpus_radius: Option<usize>,
    #[arg(long, global = true)]
    max_exponent: Option<u32>,
    /// Function file, one `<word> <rational>` per line.
    #[arg(long, global = true)]
    function: Option<String>,
    #[arg(long, global = true)]
    n_max: Option<usize>,
    /// Write the maximal function point by point.
    #[arg(long, global = true)]
    values: bool,
    #[arg(long, global = true)]
    x: Option<String>,
    #[arg(long, global = true)]
    y: Option<String>,
    #[arg(long, global = true)]
    z: Option<String>,
}

fn config(cli: Cli) -> Result<RunConfig> {
    let f = cli.flags;
    let mut c = match &f.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::default(),
    };
    c.suite = match cli.command {
        Command::Growth => "growth".into(),
        Command::Norm => "norm".into(),
        Command::Median => "median".into(),
        Command::CoarseMedian => "coarse-median".into(),
        Command::Correlation => "correlation".into(),
        Command::Maximal => "maximal".into(),
        Command::DistCheck => "dist-check".into(),
        Command::Suite { name } => name.unwrap_or(c.suite),
    };
    macro_rules! set {
        ($($field:ident),*) => {$(if let Some(v) = f.$field { c.$field = v; })*};
    }
    macro_rules! set_opt {
        ($($field:ident),*) => {$(if f.$field.is_some() { c.$field = f.$field; })*};
    }
    set!(group, seed, out, budget, radius, tol, max_iters, rmax, d2, b, width, pairs, max_subset);
    set!(corpus_size, corpus_radius, max_exponent);
    set_opt!(r, corpus_seed, function, n_max, x, y, z);
    c.ball |= f.ball;
    c.values |= f.values;
    if let Some(m) = f.method {
        c.method = serde_json::from_value::<NormMethod>(serde_json::Value::String(m))?;
    }
    Ok(c)
}

fn print(report: &SuiteReport) {
    for s in &report.suites {
        let argmax = s.argmax.as_deref().unwrap_or("-");
        println!(
            "{}: {} cells, max ratio {} at {argmax}, wrote {}",
            s.suite,
            s.cells,
            shellmax::output::fmt_real(s.max_ratio),
            s.files.join(" ")
        );
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match config(cli).and_then(|c| run_suite(&c)) {
        Ok(report) => {
            print(&report);
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("shellmax: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
