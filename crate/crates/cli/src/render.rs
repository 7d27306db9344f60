//! Text and JSON rendering for CLI output.

use std::fmt::Write;

use ringlab::theorems::{Status, SuiteReport};
use ringlab::{AdditiveMap, FiniteRing};
use serde_json::{json, Value};

fn yes_no(b: bool) -> &'static str {
    if b {
        "yes"
    } else {
        "no"
    }
}

pub fn ring_info_json(r: &FiniteRing, tables: bool) -> Value {
    let mut v = json!({
        "name": r.spec().name(),
        "spec": r.spec(),
        "size": r.size(),
        "unity": r.unity().map(|u| r.label(u)),
        "commutative": r.is_commutative(),
        "prime": r.is_prime(),
        "two_torsion_free": r.is_n_torsion_free(2),
        "labels": r.labels(),
    });
    if tables {
        let table = |f: &dyn Fn(_, _) -> ringlab::Elem| -> Vec<Vec<usize>> {
            r.elements()
                .map(|x| r.elements().map(|y| f(x, y).index()).collect())
                .collect()
        };
        v["add"] = json!(table(&|x, y| r.add(x, y)));
        v["mul"] = json!(table(&|x, y| r.mul(x, y)));
    }
    v
}

pub fn ring_info_text(r: &FiniteRing, tables: bool) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "ring           {}", r.spec().name());
    let _ = writeln!(s, "size           {}", r.size());
    let _ = writeln!(s, "unity          {}", r.unity().map_or("none", |u| r.label(u)));
    let _ = writeln!(s, "commutative    {}", yes_no(r.is_commutative()));
    let _ = writeln!(s, "prime          {}", yes_no(r.is_prime()));
    let _ = writeln!(s, "2-torsion-free {}", yes_no(r.is_n_torsion_free(2)));
    let _ = writeln!(s, "elements");
    for x in r.elements() {
        let _ = writeln!(s, "  #{:<4} {}", x.index(), r.label(x));
    }
    if tables {
        for (name, op) in [("+", 0), ("*", 1)] {
            let _ = writeln!(s, "table {name}");
            for x in r.elements() {
                let row: Vec<String> = r
                    .elements()
                    .map(|y| if op == 0 { r.add(x, y) } else { r.mul(x, y) }.index().to_string())
                    .collect();
                let _ = writeln!(s, "  {}", row.join(" "));
            }
        }
    }
    s
}

fn map_json(r: &FiniteRing, m: &AdditiveMap) -> Value {
    json!({
        "table": m.indices(),
        "labels": m.table().iter().map(|&y| r.label(y)).collect::<Vec<_>>(),
        "derivation": m.is_derivation(),
        "jordan_derivation": m.is_jordan_derivation(),
    })
}

pub fn maps_json(r: &FiniteRing, maps: &[AdditiveMap], jordan: bool) -> Value {
    json!({
        "ring": r.spec().name(),
        "law": if jordan { "jordan" } else { "leibniz" },
        "count": maps.len(),
        "maps": maps.iter().map(|m| map_json(r, m)).collect::<Vec<_>>(),
    })
}

pub fn maps_text(r: &FiniteRing, maps: &[AdditiveMap], jordan: bool) -> String {
    let kind = if jordan { "Jordan derivations" } else { "derivations" };
    let mut s = format!("{} {kind} of {}\n", maps.len(), r.spec().name());
    for (i, m) in maps.iter().enumerate() {
        let images: Vec<&str> = m.table().iter().map(|&y| r.label(y)).collect();
        let tag = if jordan && !m.is_derivation() {
            "  (not a derivation)"
        } else {
            ""
        };
        let _ = writeln!(s, "#{i:<3} [{}]{tag}", images.join(", "));
    }
    s
}

pub fn integrals_text(report: &Value) -> String {
    let mut s = String::new();
    let flavor = if report["flavor"] == "jordan" { "j" } else { "i" };
    for r in report["results"].as_array().into_iter().flatten() {
        let integral = &r["integral"];
        let body = if integral["status"] == "empty" {
            "∅".to_string()
        } else {
            let labels: Vec<&str> = integral["labels"]
                .as_array()
                .into_iter()
                .flatten()
                .filter_map(Value::as_str)
                .collect();
            format!("{{{}}}", labels.join(", "))
        };
        let _ = writeln!(
            s,
            "{}: {flavor}({}) = {body}",
            r["map"].as_str().unwrap_or("?"),
            report["element"].as_str().unwrap_or("?")
        );
    }
    s
}

pub fn suite_text(suite: &SuiteReport) -> String {
    let mut s = format!("{} with {}\n", suite.ring_name, suite.map);
    for rep in &suite.reports {
        let _ = writeln!(s, "{}", rep.summary_line());
        for w in &rep.witnesses {
            let values: Vec<String> = w.values.iter().map(|(k, v)| format!("{k} = {v}")).collect();
            let _ = writeln!(s, "    {}: {} [{}]", w.kind, w.statement, values.join(", "));
        }
        for note in &rep.notes {
            let _ = writeln!(s, "    note: {note}");
        }
    }
    let overall = match suite.status {
        Status::Pass => "PASS",
        Status::Fail => "FAIL",
        Status::Skipped => "SKIPPED",
    };
    let _ = writeln!(s, "overall: {overall}");
    s
}
