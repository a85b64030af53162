mod body_spec;
mod commands;
mod output;
mod render;

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use widthbench::GeomError;

/// Wide inscribed and small circumscribed polytopes of convex bodies.
#[derive(Debug, Parser)]
#[command(name = "widthbench", version)]
pub struct Cli {
    /// Sampling resolution for curved bodies, completions and covering-radius
    /// certification.
    #[arg(long, global = true)]
    pub resolution: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, clap::Args)]
pub struct Out {
    /// Output file, written atomically; stdout when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Minimal width and a direction attaining it.
    Width {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Diameter and a pair of points attaining it.
    Diameter {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Longest chord parallel to a direction.
    Chord {
        #[arg(long)]
        body: PathBuf,
        /// Comma-separated direction, e.g. `1,0` or `0,0,1`.
        #[arg(long, allow_hyphen_values = true)]
        dir: String,
        #[command(flatten)]
        out: Out,
    },
    /// A family of k lines in E^d with its certified covering radius.
    Lines {
        #[arg(long)]
        d: usize,
        #[arg(long)]
        k: usize,
        /// Search for a family with a smaller covering radius.
        #[arg(long)]
        optimize: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 300)]
        iters: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Polytope with at most n vertices and large minimal width inside the
    /// body, which is first scaled to minimal width 1.
    Inscribe {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        n: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Regular triangle inside a planar body scaled to minimal width 1.
    Triangle {
        #[arg(long)]
        body: PathBuf,
        #[command(flatten)]
        out: Out,
    },
    /// Polytope with at most n facets and small diameter around the body,
    /// which is first scaled to diameter 1.
    Circumscribe {
        #[arg(long)]
        body: PathBuf,
        #[arg(long)]
        n: usize,
        /// Tolerance of the constant-width completion.
        #[arg(long, default_value_t = widthbench::circumscribe::DEFAULT_COMPLETION_EPS)]
        eps: f64,
        #[command(flatten)]
        out: Out,
    },
    /// An n-gon inscribed in the disk of width 1 with large minimal width.
    Ngon {
        #[arg(long)]
        n: usize,
        /// Run the numeric search instead of the explicit construction.
        #[arg(long)]
        search: bool,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = widthbench::ngon::DEFAULT_SEARCH_ITERS)]
        iters: usize,
        #[command(flatten)]
        out: Out,
    },
    /// Bound table as CSV with columns d,n,value,source.
    Tables {
        #[arg(long, value_enum)]
        which: Table,
        #[arg(long)]
        d: usize,
        #[arg(long)]
        nmax: usize,
        #[command(flatten)]
        out: Out,
    },
    /// SVG drawing of a planar result written by another subcommand.
    Render {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum Table {
    /// Lower bounds on the minimal width of inscribed n-vertex polytopes.
    Lambda,
    /// Upper bounds on the diameter of circumscribed n-facet polytopes.
    Delta,
}

/// A constructed result that failed its own verification.
#[derive(Debug)]
pub struct NumericFailure(pub String);

impl std::fmt::Display for NumericFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "verification failed: {}", self.0)
    }
}

impl std::error::Error for NumericFailure {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.chain().any(|e| e.is::<NumericFailure>()) {
        return 1;
    }
    match err.chain().find_map(|e| e.downcast_ref::<GeomError>()) {
        Some(g) if !g.is_precondition() => 1,
        _ => 2,
    }
}

fn configure_threads() -> Result<()> {
    let Ok(raw) = std::env::var("WIDTHBENCH_THREADS") else { return Ok(()) };
    let n: usize = raw.trim().parse().with_context(|| format!("WIDTHBENCH_THREADS must be a positive integer, got {raw:?}"))?;
    anyhow::ensure!(n > 0, "WIDTHBENCH_THREADS must be a positive integer, got {raw:?}");
    rayon::ThreadPoolBuilder::new().num_threads(n).build_global()?;
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match configure_threads().and_then(|()| commands::run(&cli)) {
        Ok(()) => ExitCode::SUCCESS,
        Err(err) => {
            let msg = format!("{err:#}").replace('\n', " ");
            eprintln!("error: {msg}");
            ExitCode::from(exit_code(&err))
        }
    }
}
