//! `ringlab`: explore integrals of derivations on finite rings.
//!
//! Exit codes: 0 on success (or all checkers pass), 1 when a checker fails
//! or a search finds nothing, 2 on usage and input errors.

mod render;
mod search;

use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use ringlab::maps::{enumerate_maps, Law, Progress};
use ringlab::theorems::{Checker, SuiteConfig, DEFAULT_MAX_SUITE_SIZE};
use ringlab::{FiniteRing, Integrator, MapDescriptor, RingSpec};
use serde_json::json;

#[derive(Parser)]
#[command(name = "ringlab", version, about = "Integrals of derivations on finite rings")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Write output to a file instead of stdout.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Subcommand)]
enum Command {
    /// Summarize a ring: size, unity, commutativity, primality, labels.
    RingInfo {
        #[command(flatten)]
        ring: RingArg,
        /// Include the addition and multiplication tables.
        #[arg(long)]
        tables: bool,
    },
    /// Enumerate all derivations (or Jordan derivations).
    Derivations {
        #[command(flatten)]
        ring: RingArg,
        #[arg(long)]
        jordan: bool,
    },
    /// Compute i_d(x), or j_δ(x) with --jordan.
    Integrate {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        map: MapArg,
        /// Element label, or #k for the element with index k.
        #[arg(long)]
        element: String,
        #[arg(long)]
        jordan: bool,
    },
    /// Run theorem checkers against a map.
    Verify {
        #[command(flatten)]
        ring: RingArg,
        #[command(flatten)]
        map: MapArg,
        /// Comma-separated checker ids, or `all`.
        #[arg(long, default_value = "all")]
        checkers: String,
        /// Seed for sampled quantifiers.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Cap for integer constants and exponents.
        #[arg(long)]
        max_n: Option<u32>,
    },
    /// Hunt for witnesses across rings.
    Search(search::SearchArgs),
}

#[derive(Args)]
struct RingArg {
    /// Ring spec: a JSON file, or inline JSON such as '{"kind":"zn","n":4}'.
    #[arg(long)]
    ring: String,
}

#[derive(Args)]
struct MapArg {
    /// trivial | inner:<element> | formal | table:<path> | enumerate[:jordan]
    #[arg(long, default_value = "trivial")]
    map: String,
}

impl MapArg {
    fn descriptor(&self) -> Result<MapDescriptor> {
        Ok(self.map.parse()?)
    }
}

/// Load a ring from a spec file or inline JSON.
pub(crate) fn load_ring(source: &str) -> Result<FiniteRing> {
    let spec = parse_spec(source)?;
    FiniteRing::build(&spec).with_context(|| format!("cannot build ring {}", spec.name()))
}

pub(crate) fn parse_spec(source: &str) -> Result<RingSpec> {
    let raw = if source.trim_start().starts_with('{') {
        source.to_string()
    } else {
        std::fs::read_to_string(source).with_context(|| format!("cannot read ring spec {source}"))?
    };
    serde_json::from_str(&raw).with_context(|| format!("invalid ring spec {source}"))
}

fn max_suite_size() -> Result<usize> {
    match std::env::var("RINGLAB_MAX_SIZE") {
        Ok(v) => v
            .parse()
            .with_context(|| format!("RINGLAB_MAX_SIZE must be a positive integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_MAX_SUITE_SIZE),
    }
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(path) => std::fs::write(path, text).with_context(|| format!("cannot write {}", path.display())),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout.write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn to_json(value: &impl serde::Serialize) -> Result<String> {
    Ok(serde_json::to_string_pretty(value)? + "\n")
}

fn run(cli: Cli) -> Result<ExitCode> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be at least 1");
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .context("cannot configure worker pool")?;
    }
    let out = cli.out.as_deref();
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::RingInfo { ring, tables } => {
            let r = load_ring(&ring.ring)?;
            let text = if json {
                to_json(&render::ring_info_json(&r, *tables))?
            } else {
                render::ring_info_text(&r, *tables)
            };
            emit(out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Derivations { ring, jordan } => {
            let r = load_ring(&ring.ring)?;
            let law = if *jordan { Law::Jordan } else { Law::Leibniz };
            let maps = enumerate_maps(&r, law, None);
            let text = if json {
                to_json(&render::maps_json(&r, &maps, *jordan))?
            } else {
                render::maps_text(&r, &maps, *jordan)
            };
            emit(out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Integrate {
            ring,
            map,
            element,
            jordan,
        } => {
            let r = load_ring(&ring.ring)?;
            let x = r.parse_element(element)?;
            let maps = map.descriptor()?.resolve(&r, None)?;
            let mut results = Vec::new();
            for m in &maps {
                let integ = if *jordan {
                    Integrator::jordan(&r, &m.map)
                } else {
                    Integrator::derivation(&r, &m.map)
                }
                .with_context(|| {
                    format!(
                        "{}: cannot integrate{}",
                        m.name,
                        if *jordan { "" } else { " (try --jordan)" }
                    )
                })?;
                let integral = integ.integrate(x);
                let mut value = integral.to_json(&r, true);
                if let Some(obj) = value.as_object_mut() {
                    let labels = integral.as_set(&r)?.labels(&r);
                    obj.insert("labels".into(), json!(labels));
                }
                results.push(json!({ "map": m.name, "integral": value }));
            }
            let report = json!({
                "ring": r.spec().name(),
                "element": r.label(x),
                "flavor": if *jordan { "jordan" } else { "derivation" },
                "results": results,
            });
            let text = if json {
                to_json(&report)?
            } else {
                render::integrals_text(&report)
            };
            emit(out, &text)?;
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify {
            ring,
            map,
            checkers,
            seed,
            max_n,
        } => {
            let r = load_ring(&ring.ring)?;
            let selection = Checker::parse_selection(checkers)?;
            let mut cfg = SuiteConfig {
                seed: *seed,
                max_size: max_suite_size()?,
                ..SuiteConfig::default()
            };
            if let Some(n) = max_n {
                cfg.max_n = i64::from(*n);
                cfg.max_exponent = *n;
            }
            let progress = Progress::new();
            let suite = ringlab::run_suite(&r, &map.descriptor()?, &selection, &cfg, Some(&progress))?;
            let text = if json {
                to_json(&suite)?
            } else {
                render::suite_text(&suite)
            };
            emit(out, &text)?;
            Ok(if suite.failed() {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            })
        }
        Command::Search(args) => search::run(args, json, out),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
