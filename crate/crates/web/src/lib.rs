//! Browser bindings: ring tables, integrals and theorem checks as JSON strings.

use ringlab::theorems::{Checker, SuiteConfig};
use ringlab::{FiniteRing, Integrator, MapDescriptor, RingSpec};
use serde_json::json;
use wasm_bindgen::prelude::*;

/// Rings larger than this are refused so the page stays responsive.
pub const MAX_WEB_SIZE: usize = 256;

fn build(spec: &str) -> Result<FiniteRing, String> {
    let spec: RingSpec = serde_json::from_str(spec).map_err(|e| format!("invalid ring spec: {e}"))?;
    let ring = FiniteRing::build(&spec).map_err(|e| e.to_string())?;
    if ring.size() > MAX_WEB_SIZE {
        return Err(format!(
            "ring has {} elements; the demo allows at most {MAX_WEB_SIZE}",
            ring.size()
        ));
    }
    Ok(ring)
}

fn descriptor(map: &str) -> Result<MapDescriptor, String> {
    let d: MapDescriptor = map.parse().map_err(|e: ringlab::Error| e.to_string())?;
    if matches!(d, MapDescriptor::Table(_)) {
        return Err("table: maps need a file system; use inner:, formal, trivial or enumerate".into());
    }
    Ok(d)
}

/// Labels, Cayley tables and structural flags.
pub fn ring_info_json(spec: &str) -> Result<String, String> {
    let r = build(spec)?;
    let table = |mul: bool| -> Vec<Vec<usize>> {
        r.elements()
            .map(|x| {
                r.elements()
                    .map(|y| if mul { r.mul(x, y) } else { r.add(x, y) }.index())
                    .collect()
            })
            .collect()
    };
    Ok(json!({
        "name": r.spec().name(),
        "size": r.size(),
        "labels": r.labels(),
        "unity": r.unity().map(|u| u.index()),
        "commutative": r.is_commutative(),
        "prime": r.is_prime(),
        "two_torsion_free": r.is_n_torsion_free(2),
        "add": table(false),
        "mul": table(true),
    })
    .to_string())
}

/// `i_d(x)` (or `j_δ(x)`) for every map the descriptor resolves to.
pub fn integrate_json(spec: &str, map: &str, element: &str, jordan: bool) -> Result<String, String> {
    let r = build(spec)?;
    let x = r.parse_element(element).map_err(|e| e.to_string())?;
    let maps = descriptor(map)?.resolve(&r, None).map_err(|e| e.to_string())?;
    let mut results = Vec::new();
    for m in &maps {
        let integ = if jordan {
            Integrator::jordan(&r, &m.map)
        } else {
            Integrator::derivation(&r, &m.map)
        };
        let entry = match integ {
            Ok(integ) => {
                let integral = integ.integrate(x);
                let mut v = integral.to_json(&r, true);
                v["labels"] = json!(integral.as_set(&r).map_err(|e| e.to_string())?.labels(&r));
                v["image"] = json!(m.map.indices());
                json!({ "map": m.name, "integral": v })
            }
            Err(e) => json!({ "map": m.name, "error": e.to_string() }),
        };
        results.push(entry);
    }
    Ok(json!({ "element": x.index(), "jordan": jordan, "results": results }).to_string())
}

/// Run the selected checkers (`all` or a comma-separated list).
pub fn verify_json(spec: &str, map: &str, checkers: &str) -> Result<String, String> {
    let r = build(spec)?;
    let selection = Checker::parse_selection(checkers).map_err(|e| e.to_string())?;
    let suite = ringlab::run_suite(&r, &descriptor(map)?, &selection, &SuiteConfig::default(), None)
        .map_err(|e| e.to_string())?;
    serde_json::to_string(&suite).map_err(|e| e.to_string())
}

#[wasm_bindgen]
pub fn ring_info(spec: &str) -> Result<String, JsError> {
    ring_info_json(spec).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn integrate(spec: &str, map: &str, element: &str, jordan: bool) -> Result<String, JsError> {
    integrate_json(spec, map, element, jordan).map_err(|e| JsError::new(&e))
}

#[wasm_bindgen]
pub fn verify(spec: &str, map: &str, checkers: &str) -> Result<String, JsError> {
    verify_json(spec, map, checkers).map_err(|e| JsError::new(&e))
}
