//! wasm-bindgen surface for the browser demo: three interactive operations
//! returning JSON strings the page renders onto a canvas.
//!
//! Build with `wasm-pack build crates/mu-web --target web --out-dir ../../www/pkg`
//! and serve `www/`.

use serde::Serialize;
use wasm_bindgen::prelude::*;

use mu_lab::certificates::{parse_certificate, verify_certificate};
use mu_lab::engine::{mu_bounds, EngineConfig};
use mu_lab::graph::Graph;
use mu_lab::graph6;
use mu_lab::harness::{check_conjecture, edge_bound, parse_graph_arg, Outcome};

#[derive(Serialize)]
struct TraceLine {
    rule: &'static str,
    direction: &'static str,
    bound: usize,
    note: String,
}

#[derive(Serialize)]
struct Analysis {
    ok: bool,
    error: Option<String>,
    graph6: String,
    n: usize,
    m: usize,
    edges: Vec<(usize, usize)>,
    lo: usize,
    hi: usize,
    resolved: bool,
    trace: Vec<TraceLine>,
    tags: Vec<String>,
    outcome: String,
    lo_threshold: u64,
    hi_threshold: u64,
}

fn fail(error: String) -> String {
    serde_json::to_string(&serde_json::json!({ "ok": false, "error": error }))
        .expect("error payload serializes")
}

fn analyze(g: &Graph, convention: &str) -> Result<Analysis, String> {
    let cfg = EngineConfig {
        edgeless_convention: convention.parse().unwrap_or_default(),
        ..EngineConfig::default()
    };
    let bounds = mu_bounds(g, &cfg).map_err(|e| e.to_string())?;
    let verdict = check_conjecture(g, &bounds);
    Ok(Analysis {
        ok: true,
        error: None,
        graph6: graph6::encode(g),
        n: g.n(),
        m: g.edge_count(),
        edges: g.edges(),
        lo: bounds.lo,
        hi: bounds.hi,
        resolved: bounds.resolved(),
        trace: bounds
            .trace
            .iter()
            .map(|t| TraceLine {
                rule: t.rule.id(),
                direction: match t.direction {
                    mu_lab::engine::Direction::Lower => "lower",
                    mu_lab::engine::Direction::Upper => "upper",
                    mu_lab::engine::Direction::Exact => "exact",
                },
                bound: t.bound,
                note: t.note.clone(),
            })
            .collect(),
        tags: verdict.tags.names().iter().map(|s| s.to_string()).collect(),
        outcome: match verdict.outcome {
            Outcome::Holds => "Holds".to_string(),
            Outcome::Violates => "Violates".to_string(),
            Outcome::Inconclusive => "Inconclusive".to_string(),
        },
        lo_threshold: verdict.lo_threshold,
        hi_threshold: verdict.hi_threshold,
    })
}

/// Bounds, rule trace and edge-bound verdict for a graph6 string or a named
/// graph (petersen, k6, c7, k2,2,3, ...). Returns JSON.
#[wasm_bindgen]
pub fn analyze_graph(input: &str, convention: &str) -> String {
    let g = match parse_graph_arg(input) {
        Ok(g) => g,
        Err(e) => return fail(e),
    };
    match analyze(&g, convention) {
        Ok(a) => serde_json::to_string(&a).expect("analysis serializes"),
        Err(e) => fail(e),
    }
}

/// Exact verification of a certificate in the text format. Returns JSON
/// with the verdict and, when valid, the certified lower bound.
#[wasm_bindgen]
pub fn verify_certificate_text(text: &str) -> String {
    let cert = match parse_certificate(text, "input") {
        Ok(c) => c,
        Err(e) => return fail(e.to_string()),
    };
    let verdict = verify_certificate(&cert);
    serde_json::to_string(&serde_json::json!({
        "ok": true,
        "graph6": graph6::encode(&cert.graph),
        "n": cert.graph.n(),
        "claimedCorank": cert.claimed_corank,
        "valid": verdict.valid,
        "corank": verdict.corank,
        "failure": verdict.failure.as_ref().map(|f| f.code()),
        "detail": verdict.failure.as_ref().map(|f| f.describe()),
    }))
    .expect("verdict serializes")
}

/// Builds join(stacked triangulation of `base_size` with `seed`, K_{t-3}),
/// analyzes it, and reports the tightness check |E| = t n - C(t+1, 2).
#[wasm_bindgen]
pub fn construct_tight(t: usize, base_size: usize, seed: u32) -> String {
    if t < 3 {
        return fail("t must be at least 3".into());
    }
    let base = match Graph::stacked_triangulation(base_size, seed as u64) {
        Ok(b) => b,
        Err(e) => return fail(e.to_string()),
    };
    let apex = match Graph::complete(t - 3) {
        Ok(a) => a,
        Err(e) => return fail(e.to_string()),
    };
    let g = match base.join(&apex) {
        Ok(g) => g,
        Err(e) => return fail(e.to_string()),
    };
    match analyze(&g, "paper") {
        Ok(a) => {
            let expected = edge_bound(t, g.n());
            serde_json::to_string(&serde_json::json!({
                "analysis": a,
                "t": t,
                "baseSize": base_size,
                "expectedEdges": expected,
                "tight": a.m as u64 == expected && a.resolved && a.lo == t,
            }))
            .expect("payload serializes")
        }
        Err(e) => fail(e),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn analyze_returns_resolved_petersen() {
        let json = analyze_graph("petersen", "paper");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["ok"], true);
        assert_eq!(v["lo"], 5);
        assert_eq!(v["hi"], 5);
        assert_eq!(v["outcome"], "Holds");
    }

    #[test]
    fn analyze_reports_errors() {
        let json = analyze_graph("##notagraph", "paper");
        let v: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(v["ok"], false);
    }

    #[test]
    fn certificate_text_verifies() {
        let cert = mu_lab::certificates::canonical_complete_certificate(4).unwrap();
        let text = mu_lab::certificates::format_certificate(&cert);
        let v: serde_json::Value = serde_json::from_str(&verify_certificate_text(&text)).unwrap();
        assert_eq!(v["valid"], true);
        assert_eq!(v["corank"], 3);
    }

    #[test]
    fn tight_construction_is_tight() {
        let v: serde_json::Value = serde_json::from_str(&construct_tight(6, 8, 3)).unwrap();
        assert_eq!(v["tight"], true);
        assert_eq!(v["analysis"]["lo"], 6);
    }
}
