//! Command-line front end. Every run writes a JSON report holding the
//! resolved [`RunConfig`]; passing that report back through `--config`
//! repeats the run.

mod commands;

pub use commands::{execute, Outcome as RunOutcome};

use crate::error::{Error, Result};
use crate::numeric::ToleranceConfig;
use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};
use std::path::{Path, PathBuf};

pub const DEFAULT_SEED: u64 = 0x5eed;
pub const DEFAULT_RESOLUTION: usize = 512;
pub const OUT_DIR_ENV: &str = "UNMATING_OUT_DIR";

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Parser, Debug)]
#[command(name = "unmating", version, about = "Orbits, equator verdicts and fold reports for postcritically finite rational maps")]
struct Cli {
    #[command(flatten)]
    global: GlobalArgs,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Args, Debug, Default)]
struct GlobalArgs {
    /// JSON config (or an earlier report) supplying defaults for every flag.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Worker threads; defaults to the available parallelism.
    #[arg(long, global = true)]
    workers: Option<usize>,
    #[arg(long, global = true)]
    seed: Option<u64>,
    /// Report directory; overrides the UNMATING_OUT_DIR variable.
    #[arg(long, global = true)]
    out_dir: Option<PathBuf>,
    /// Samples per source curve.
    #[arg(long, global = true)]
    resolution: Option<usize>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eps_root: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eps_orbit: Option<f64>,
    #[arg(long, global = true, allow_negative_numbers = true)]
    eps_curve: Option<f64>,
    #[arg(long, global = true)]
    max_iter: Option<usize>,
    #[arg(long, global = true)]
    max_refine_depth: Option<u32>,
}

/// Map selectors are catalog ids (`omega+2`, `capture:3/2`, `realize:C`)
/// or inline JSON `{"num": [...], "den": [...]}`; curve selectors are
/// figure ids (`fig9`) or inline curve-spec JSON.
#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "name", rename_all = "kebab-case")]
pub enum Command {
    /// Postcritical set and orbit graph, checked against the catalog.
    Orbits {
        #[arg(long)]
        map: String,
    },
    /// Bipartitions of the postcritical set and their status under iterates.
    Partitions {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Iterated preimages of a curve.
    Lift {
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1)]
        depth: u32,
    },
    /// Equator verdict of a curve at one level.
    Classify {
        #[arg(long)]
        map: Option<String>,
        #[arg(long)]
        curve: String,
        #[arg(long, default_value_t = 1)]
        level: u32,
    },
    /// Searches levels up to `depth` for equators.
    Fold {
        #[arg(long)]
        map: String,
        #[arg(long, default_value_t = 4)]
        depth: u32,
    },
    /// Capture parameters of one generation.
    Captures {
        #[arg(long)]
        generation: u32,
    },
    /// Self-maps of a four-point set.
    Semigroup {
        #[command(subcommand)]
        action: SemigroupCommand,
    },
    /// Orbit graphs of the whole catalog and composition checks on seeded
    /// random pairs.
    RealizeCheck {
        #[arg(long, default_value_t = 20)]
        pairs: usize,
    },
    /// Renders a figure: `fig4` .. `fig20` (curve and lifts) or `fig21`.
    Figure {
        tag: String,
        /// Pixels per side.
        #[arg(long, default_value_t = 400)]
        pixels: usize,
    },
}

#[derive(Subcommand, Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "action", rename_all = "kebab-case")]
pub enum SemigroupCommand {
    Census,
    Closure {
        /// Comma-separated names (`P|1`) or one-based digit strings (`2341`).
        #[arg(long)]
        gens: String,
    },
    VerifyTheorems {
        #[arg(long, default_value_t = 4)]
        k: usize,
    },
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunConfig {
    pub command: Command,
    pub tolerance: ToleranceConfig,
    pub resolution: usize,
    pub out_dir: PathBuf,
    pub seed: u64,
    /// `None` uses the available parallelism; results do not depend on it.
    pub workers: Option<usize>,
}

/// Everything a config file may set. A full report is accepted too, in
/// which case its `run_config` is used.
#[derive(Debug, Default, Deserialize)]
#[serde(default)]
struct ConfigFile {
    command: Option<Command>,
    tolerance: Option<ToleranceConfig>,
    resolution: Option<usize>,
    out_dir: Option<PathBuf>,
    seed: Option<u64>,
    workers: Option<usize>,
}

fn read_config(path: &Path) -> Result<ConfigFile> {
    let text = std::fs::read_to_string(path)?;
    let mut value: serde_json::Value = serde_json::from_str(&text)?;
    if let Some(inner) = value.get_mut("run_config") {
        value = inner.take();
    }
    Ok(serde_json::from_value(value)?)
}

/// Merges flags over the config file over the defaults.
pub fn resolve<I, T>(argv: I) -> std::result::Result<RunConfig, ResolveError>
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = Cli::try_parse_from(argv).map_err(ResolveError::Usage)?;
    let g = cli.global;
    let file = match &g.config {
        Some(p) => read_config(p).map_err(ResolveError::Config)?,
        None => ConfigFile::default(),
    };
    let command = cli.command.or(file.command).ok_or_else(|| {
        ResolveError::Config(Error::Invalid("no subcommand given; pass one or a --config file that names it (see --help)".into()))
    })?;
    let mut tolerance = file.tolerance.unwrap_or_default();
    if let Some(v) = g.eps_root {
        tolerance.eps_root = v;
    }
    if let Some(v) = g.eps_orbit {
        tolerance.eps_orbit = v;
    }
    if let Some(v) = g.eps_curve {
        tolerance.eps_curve = v;
    }
    if let Some(v) = g.max_iter {
        tolerance.max_iter = v;
    }
    if let Some(v) = g.max_refine_depth {
        tolerance.max_refine_depth = v;
    }
    tolerance.validate().map_err(ResolveError::Config)?;
    let out_dir = g
        .out_dir
        .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
        .or(file.out_dir)
        .unwrap_or_else(|| PathBuf::from("out"));
    let resolution = g.resolution.or(file.resolution).unwrap_or(DEFAULT_RESOLUTION);
    if resolution < 64 {
        return Err(ResolveError::Config(Error::Invalid(format!("--resolution must be at least 64, got {resolution}"))));
    }
    let workers = g.workers.or(file.workers);
    if workers == Some(0) {
        return Err(ResolveError::Config(Error::Invalid("--workers must be positive".into())));
    }
    Ok(RunConfig { command, tolerance, resolution, out_dir, seed: g.seed.or(file.seed).unwrap_or(DEFAULT_SEED), workers })
}

#[derive(Debug)]
pub enum ResolveError {
    /// Bad arguments, or `--help` / `--version`.
    Usage(clap::Error),
    Config(Error),
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct Report {
    pub tool: String,
    pub version: String,
    pub run_config: RunConfig,
    /// `ok`, `negative` or `error`.
    pub status: String,
    pub result: serde_json::Value,
}

/// Keeps ids usable as file names: `capture:3/2` becomes `capture_3_2`.
pub fn sanitize(id: &str) -> String {
    id.chars().map(|c| if c.is_ascii_alphanumeric() || "+-_.".contains(c) { c } else { '_' }).collect()
}

fn selector_tag(s: &str) -> String {
    if s.trim_start().starts_with('{') {
        "inline".into()
    } else {
        sanitize(s)
    }
}

/// File stem of the report for a command.
pub fn report_stem(cmd: &Command) -> String {
    let opt = |m: &Option<String>| m.as_deref().map(selector_tag).map(|t| format!("{t}_")).unwrap_or_default();
    match cmd {
        Command::Orbits { map } => format!("orbits_{}", selector_tag(map)),
        Command::Partitions { map, depth } => format!("partitions_{}_{depth}", selector_tag(map)),
        Command::Lift { map, curve, depth } => format!("lift_{}{}_{depth}", opt(map), selector_tag(curve)),
        Command::Classify { map, curve, level } => format!("classify_{}{}_{level}", opt(map), selector_tag(curve)),
        Command::Fold { map, depth } => format!("fold_{}_{depth}", selector_tag(map)),
        Command::Captures { generation } => format!("captures_{generation}"),
        Command::Semigroup { action } => match action {
            SemigroupCommand::Census => "semigroup_census".into(),
            SemigroupCommand::Closure { .. } => "semigroup_closure".into(),
            SemigroupCommand::VerifyTheorems { k } => format!("semigroup_verify_{k}"),
        },
        Command::RealizeCheck { .. } => "realize-check".into(),
        Command::Figure { tag, .. } => format!("figure_{}", sanitize(tag)),
    }
}

/// Runs the command in a pool of the configured size and writes the report.
pub fn run_config(cfg: &RunConfig) -> (i32, Report) {
    let mut builder = rayon::ThreadPoolBuilder::new();
    if let Some(n) = cfg.workers {
        builder = builder.num_threads(n);
    }
    let outcome = match builder.build() {
        Ok(pool) => pool.install(|| execute(cfg)),
        Err(e) => Err(Error::Invalid(format!("thread pool: {e}"))),
    };
    let (code, status, result) = match outcome {
        Ok(RunOutcome { positive: true, result }) => (EXIT_OK, "ok", result),
        Ok(RunOutcome { positive: false, result }) => (EXIT_NEGATIVE, "negative", result),
        Err(e) => (EXIT_ERROR, "error", serde_json::json!({ "error": e.to_string() })),
    };
    let report = Report {
        tool: "unmating".into(),
        version: env!("CARGO_PKG_VERSION").into(),
        run_config: cfg.clone(),
        status: status.into(),
        result,
    };
    (code, report)
}

pub fn write_report(cfg: &RunConfig, report: &Report) -> Result<PathBuf> {
    std::fs::create_dir_all(&cfg.out_dir)?;
    let path = cfg.out_dir.join(format!("{}.json", report_stem(&cfg.command)));
    std::fs::write(&path, serde_json::to_string_pretty(report)? + "\n")?;
    Ok(path)
}

/// Entry point of the binary; `argv` includes the program name.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cfg = match resolve(argv) {
        Ok(c) => c,
        Err(ResolveError::Usage(e)) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
        }
        Err(ResolveError::Config(e)) => {
            eprintln!("error: {e}");
            return EXIT_ERROR;
        }
    };
    let (code, report) = run_config(&cfg);
    match serde_json::to_string_pretty(&report) {
        Ok(text) => println!("{text}"),
        Err(e) => eprintln!("error: {e}"),
    }
    if let Err(e) = write_report(&cfg, &report) {
        eprintln!("error: could not write report to {}: {e}", cfg.out_dir.display());
        return EXIT_ERROR;
    }
    if code == EXIT_ERROR {
        if let Some(msg) = report.result.get("error").and_then(|v| v.as_str()) {
            eprintln!("error: {msg}");
        }
    }
    code
}
