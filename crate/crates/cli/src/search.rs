//! `ringlab search`: scan rings for notable witnesses.

use std::path::Path;
use std::process::ExitCode;
use std::sync::atomic::{AtomicBool, AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use anyhow::Result;
use clap::{Args, ValueEnum};
use ringlab::integral::is_proper;
use ringlab::maps::{enumerate_maps, Law, Progress};
use ringlab::{AdditiveMap, FiniteRing, Integrator, RingSpec};
use serde_json::{json, Value};

#[derive(Args)]
pub struct SearchArgs {
    /// What to look for.
    #[arg(long, value_enum)]
    target: Target,
    /// Ring spec (file or inline JSON); repeatable. Defaults to the standard corpus.
    #[arg(long = "ring")]
    rings: Vec<String>,
    /// Seconds between progress lines on stderr.
    #[arg(long, default_value_t = 2.0)]
    progress_interval: f64,
}

#[derive(Clone, Copy, ValueEnum)]
enum Target {
    /// A Jordan derivation that is not a derivation.
    JordanNotDerivation,
    /// A derivation whose image is not closed under multiplication.
    NonProper,
    /// A derivation and (x, y) with i(d(x)y) and i(x d(y)) both empty.
    EmptyPartsWitness,
}

fn labels(r: &FiniteRing, m: &AdditiveMap) -> Vec<String> {
    m.table().iter().map(|&y| r.label(y).to_string()).collect()
}

/// Witness fields shared by all targets: the map and its enumeration index.
fn map_fields(r: &FiniteRing, index: usize, m: &AdditiveMap) -> Value {
    json!({ "map_index": index, "map": labels(r, m) })
}

fn search_ring(r: &FiniteRing, target: Target, progress: &Progress) -> Option<Value> {
    match target {
        Target::JordanNotDerivation => enumerate_maps(r, Law::Jordan, Some(progress))
            .iter()
            .enumerate()
            .find(|(_, m)| !m.is_derivation())
            .map(|(i, m)| map_fields(r, i, m)),
        Target::NonProper => enumerate_maps(r, Law::Leibniz, Some(progress))
            .iter()
            .enumerate()
            .find_map(|(i, d)| {
                let w = is_proper(r, d).ok().flatten()?;
                let mut v = map_fields(r, i, d);
                v["u"] = json!(r.label(w.u));
                v["v"] = json!(r.label(w.v));
                v["product"] = json!(r.label(w.product));
                Some(v)
            }),
        Target::EmptyPartsWitness => enumerate_maps(r, Law::Leibniz, Some(progress))
            .iter()
            .enumerate()
            .find_map(|(i, d)| {
                let integ = Integrator::derivation(r, d).ok()?;
                let (x, y) = r
                    .elements()
                    .flat_map(|x| r.elements().map(move |y| (x, y)))
                    .find(|&(x, y)| {
                        !integ.is_nonempty(r.mul(d.apply(x), y)) && !integ.is_nonempty(r.mul(x, d.apply(y)))
                    })?;
                let mut v = map_fields(r, i, d);
                v["x"] = json!(r.label(x));
                v["y"] = json!(r.label(y));
                v["d(x)y"] = json!(r.label(r.mul(d.apply(x), y)));
                v["x d(y)"] = json!(r.label(r.mul(x, d.apply(y))));
                Some(v)
            }),
    }
}

pub fn run(args: &SearchArgs, json_out: bool, out: Option<&Path>) -> Result<ExitCode> {
    let specs: Vec<RingSpec> = if args.rings.is_empty() {
        RingSpec::standard_corpus()
    } else {
        args.rings.iter().map(|s| crate::parse_spec(s)).collect::<Result<_>>()?
    };
    let rings: Vec<FiniteRing> = specs
        .iter()
        .map(|s| crate::load_ring(&serde_json::to_string(s)?))
        .collect::<Result<_>>()?;

    let progress = Progress::new();
    let tried = AtomicUsize::new(0);
    let done = AtomicBool::new(false);
    let interval = Duration::from_secs_f64(args.progress_interval.max(0.05));
    let found: Vec<Value> = std::thread::scope(|scope| {
        scope.spawn(|| {
            let mut last = Instant::now();
            while !done.load(Ordering::Relaxed) {
                std::thread::sleep(Duration::from_millis(20));
                if last.elapsed() >= interval {
                    last = Instant::now();
                    let (nodes, pruned, maps) = progress.snapshot();
                    eprintln!(
                        "progress: {}/{} rings, {nodes} nodes, {pruned} pruned, {maps} maps",
                        tried.load(Ordering::Relaxed),
                        rings.len()
                    );
                }
            }
        });
        let found = rings
            .iter()
            .filter_map(|r| {
                let hit = search_ring(r, args.target, &progress);
                tried.fetch_add(1, Ordering::Relaxed);
                hit.map(|mut w| {
                    w["ring"] = json!(r.spec().name());
                    w
                })
            })
            .collect();
        done.store(true, Ordering::Relaxed);
        found
    });

    let target = args.target.to_possible_value().expect("no skipped variants");
    let text = if json_out {
        serde_json::to_string_pretty(&json!({
            "target": target.get_name(),
            "rings_searched": rings.len(),
            "found": found,
        }))? + "\n"
    } else {
        let mut s = format!("{}: {} of {} rings\n", target.get_name(), found.len(), rings.len());
        for w in &found {
            let obj = w.as_object().expect("witness object");
            let fields: Vec<String> = obj
                .iter()
                .filter(|(k, _)| !matches!(k.as_str(), "ring" | "map"))
                .map(|(k, v)| format!("{k} = {}", v.as_str().map_or_else(|| v.to_string(), str::to_string)))
                .collect();
            s.push_str(&format!(
                "  {}: {}\n",
                obj["ring"].as_str().unwrap_or("?"),
                fields.join(", ")
            ));
        }
        s
    };
    crate::emit(out, &text)?;
    Ok(if found.is_empty() {
        ExitCode::from(1)
    } else {
        ExitCode::SUCCESS
    })
}
