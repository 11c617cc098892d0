//! Command-line front end: `run` verifies manifests, `cache` administers the
//! Groebner basis cache.

pub mod manifest;
pub mod report;

use std::io::Write;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::{Arc, Mutex};

use clap::{Args, Parser, Subcommand};

use crate::gb::{GbCache, GbConfig};
use crate::geom::pipeline::{example_pipeline, germ_pipeline, PipelineOptions, Report};
use manifest::VerificationManifest;
use report::{human_report, machine_report, ManifestOutcome, Verdict};

/// Environment variable naming the cache directory.
pub const CACHE_ENV: &str = "QSMOOTH_CACHE_DIR";

/// Default for `--max-degree`.
pub const DEFAULT_MAX_DEGREE: u32 = 200;

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_MANIFEST: i32 = 2;
pub const EXIT_INTERNAL: i32 = 3;

#[derive(Debug, Parser)]
#[command(name = "qsmooth", version, about = "Exact deformation checks for singular hypersurfaces and germs")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Verify one or more manifests.
    Run(RunArgs),
    /// Inspect or maintain the Groebner basis cache.
    Cache(CacheArgs),
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// Manifest files (TOML).
    #[arg(required = true)]
    pub manifests: Vec<PathBuf>,
    /// Only run the standalone germ entries.
    #[arg(long)]
    pub germ_only: bool,
    /// Skip the smoothing-family step.
    #[arg(long)]
    pub skip_family: bool,
    /// Write the line-delimited machine report here.
    #[arg(long, value_name = "PATH")]
    pub report: Option<PathBuf>,
    #[arg(long, value_name = "PATH")]
    pub cache_dir: Option<PathBuf>,
    #[arg(long, conflicts_with = "cache_dir")]
    pub no_cache: bool,
    /// Abort any Groebner basis computation whose elements exceed this degree.
    #[arg(long, value_name = "N", default_value_t = DEFAULT_MAX_DEGREE)]
    pub max_degree: u32,
    /// Manifests processed concurrently.
    #[arg(long, value_name = "N", default_value_t = 1)]
    pub jobs: usize,
}

#[derive(Debug, Args)]
pub struct CacheArgs {
    #[command(subcommand)]
    pub action: CacheAction,
    #[arg(long, value_name = "PATH", global = true)]
    pub cache_dir: Option<PathBuf>,
}

#[derive(Debug, Clone, Copy, Subcommand)]
pub enum CacheAction {
    /// List entries with their sizes.
    List,
    /// Remove every entry.
    Clear,
    /// Recompute checksums; corrupt entries are moved to `quarantine/`.
    Verify,
}

/// `--cache-dir`, then the environment, then `~/.cache/qsmooth`.
pub fn resolve_cache_dir(flag: Option<&Path>) -> Option<PathBuf> {
    if let Some(p) = flag {
        return Some(p.to_path_buf());
    }
    if let Some(p) = std::env::var_os(CACHE_ENV).filter(|p| !p.is_empty()) {
        return Some(PathBuf::from(p));
    }
    std::env::var_os("HOME").map(|h| PathBuf::from(h).join(".cache").join("qsmooth"))
}

/// Parses arguments and runs; returns the process exit code.
pub fn main_with_args<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_MANIFEST } else { EXIT_PASS };
            let _ = if e.use_stderr() {
                write!(err, "{}", e.render())
            } else {
                write!(out, "{}", e.render())
            };
            return code;
        }
    };
    match cli.command {
        Command::Run(args) => run_command(&args, out, err),
        Command::Cache(args) => cache_command(&args, out, err),
    }
}

fn run_one(path: &Path, args: &RunArgs, cfg: &GbConfig) -> ManifestOutcome {
    let label = path.display().to_string();
    let m = match VerificationManifest::load(path) {
        Ok(m) => m,
        Err(e) => {
            return ManifestOutcome {
                manifest: label,
                reports: Vec::new(),
                load_error: Some(e.to_string()),
            }
        }
    };
    if args.germ_only && m.germs.is_empty() {
        return ManifestOutcome {
            manifest: m.name,
            reports: Vec::new(),
            load_error: Some("--germ-only given but the manifest has no germs".into()),
        };
    }
    let opts = PipelineOptions {
        skip_family: args.skip_family,
    };
    let mut reports = Vec::new();
    if let (Some(ex), false) = (&m.example, args.germ_only) {
        reports.push(guarded(&ex.name, || example_pipeline(ex, opts, cfg)));
    }
    for g in &m.germs {
        reports.push(guarded(&g.name, || germ_pipeline(g, cfg)));
    }
    ManifestOutcome {
        manifest: m.name,
        reports,
        load_error: None,
    }
}

/// A panic inside a pipeline becomes an `error` step instead of taking the
/// other manifests down.
fn guarded(name: &str, f: impl FnOnce() -> Report) -> Report {
    match catch_unwind(AssertUnwindSafe(f)) {
        Ok(r) => r,
        Err(payload) => {
            let msg = payload
                .downcast_ref::<String>()
                .cloned()
                .or_else(|| payload.downcast_ref::<&str>().map(|s| s.to_string()))
                .unwrap_or_else(|| "unknown panic".into());
            Report {
                name: name.to_string(),
                steps: vec![crate::geom::pipeline::StepRecord {
                    step: "internal".into(),
                    status: crate::geom::pipeline::StepStatus::Error,
                    certificate: serde_json::json!({ "panic": msg }),
                    wall_ms: 0,
                }],
            }
        }
    }
}

/// Runs every manifest, `jobs` at a time, keeping the input order in the output.
pub fn run_manifests(args: &RunArgs, cfg: &GbConfig) -> Vec<ManifestOutcome> {
    let n = args.manifests.len();
    let slots: Vec<Mutex<Option<ManifestOutcome>>> = (0..n).map(|_| Mutex::new(None)).collect();
    let next = AtomicUsize::new(0);
    let workers = args.jobs.clamp(1, n.max(1));
    std::thread::scope(|scope| {
        for _ in 0..workers {
            scope.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::SeqCst);
                if i >= n {
                    break;
                }
                let outcome = run_one(&args.manifests[i], args, cfg);
                *slots[i].lock().expect("slot lock") = Some(outcome);
            });
        }
    });
    slots
        .into_iter()
        .map(|s| s.into_inner().expect("slot lock").expect("every manifest ran"))
        .collect()
}

/// 2 if any manifest failed to load, else 3 on any internal error, else 1 on
/// any failed step, else 0.
pub fn exit_code(outcomes: &[ManifestOutcome]) -> i32 {
    if outcomes.iter().any(|o| o.load_error.is_some()) {
        return EXIT_MANIFEST;
    }
    match outcomes.iter().map(ManifestOutcome::verdict).max() {
        Some(Verdict::Error) => EXIT_INTERNAL,
        Some(Verdict::Fail) => EXIT_FAIL,
        _ => EXIT_PASS,
    }
}

fn run_command(args: &RunArgs, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let cache = if args.no_cache {
        None
    } else {
        match resolve_cache_dir(args.cache_dir.as_deref()) {
            Some(dir) => match GbCache::open(&dir) {
                Ok(c) => Some(Arc::new(c)),
                Err(e) => {
                    let _ = writeln!(err, "cannot open cache {}: {e}", dir.display());
                    return EXIT_INTERNAL;
                }
            },
            None => {
                log::warn!("no cache directory could be determined; running without a cache");
                None
            }
        }
    };
    let cfg = GbConfig {
        max_degree: Some(args.max_degree),
        cache,
    };
    let outcomes = run_manifests(args, &cfg);
    let _ = write!(out, "{}", human_report(&outcomes));
    if let Some(path) = &args.report {
        if let Err(e) = std::fs::write(path, machine_report(&outcomes)) {
            let _ = writeln!(err, "cannot write report {}: {e}", path.display());
            return EXIT_INTERNAL;
        }
    }
    exit_code(&outcomes)
}

fn cache_command(args: &CacheArgs, out: &mut impl Write, err: &mut impl Write) -> i32 {
    let Some(dir) = resolve_cache_dir(args.cache_dir.as_deref()) else {
        let _ = writeln!(err, "no cache directory: pass --cache-dir or set {CACHE_ENV}");
        return EXIT_MANIFEST;
    };
    let cache = match GbCache::open(&dir) {
        Ok(c) => c,
        Err(e) => {
            let _ = writeln!(err, "cannot open cache {}: {e}", dir.display());
            return EXIT_INTERNAL;
        }
    };
    let result = match args.action {
        CacheAction::List => cache.list().map(|entries| {
            for e in &entries {
                let _ = writeln!(out, "{} {}", e.key, e.bytes);
            }
            let _ = writeln!(out, "{} entries", entries.len());
            EXIT_PASS
        }),
        CacheAction::Clear => cache.clear().map(|n| {
            let _ = writeln!(out, "removed {n} entries");
            EXIT_PASS
        }),
        CacheAction::Verify => cache.verify().map(|v| {
            let _ = writeln!(out, "{} consistent", v.consistent.len());
            for (name, reason) in &v.quarantined {
                let _ = writeln!(out, "quarantined {name}: {reason}");
            }
            if v.quarantined.is_empty() {
                EXIT_PASS
            } else {
                EXIT_FAIL
            }
        }),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "cache error: {e}");
        EXIT_INTERNAL
    })
}
