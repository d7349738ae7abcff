//! WebAssembly bindings for the browser demo in `www/`. Every export takes
//! and returns plain strings; structured results are JSON.

use pvkit::catalog::{catalog, find_entry, run, RunOptions};
use pvkit::grading::{compute_grading, summarize_diagram, DiagramSummary, WeightedDiagram};
use pvkit::roots::CartanType;
use serde::Serialize;
use wasm_bindgen::prelude::*;

fn parse_diagram(ty: &str, rank: usize, circle: &str) -> Result<WeightedDiagram, String> {
    let letter = ty.trim().to_ascii_uppercase();
    let mut chars = letter.chars();
    let ty = match (chars.next(), chars.next()) {
        (Some(c), None) => CartanType::from_letter(c).ok_or_else(|| format!("unknown type `{letter}`"))?,
        _ => return Err(format!("expected one letter A-G, got `{letter}`")),
    };
    let circled = circle
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| s.parse::<usize>().map_err(|_| format!("bad root index `{s}`")))
        .collect::<Result<Vec<_>, _>>()?;
    WeightedDiagram::from_labels(ty, rank, &circled).map_err(|e| e.to_string())
}

/// Text view of a weighted diagram: picture, Levi type and components.
#[wasm_bindgen]
pub fn render_diagram(ty: &str, rank: usize, circle: &str) -> Result<String, String> {
    Ok(summarize_diagram(&parse_diagram(ty, rank, circle)?).to_text())
}

#[derive(Serialize)]
struct Piece {
    degree: i64,
    dim: usize,
    roots: Vec<String>,
}

#[derive(Serialize)]
struct GradingView {
    summary: DiagramSummary,
    pieces: Vec<Piece>,
}

/// Summary plus the positive roots in each nonnegative degree, as JSON.
#[wasm_bindgen]
pub fn explore_grading(ty: &str, rank: usize, circle: &str) -> Result<String, String> {
    let d = parse_diagram(ty, rank, circle)?;
    let grading = compute_grading(&d);
    let pieces = grading
        .pieces
        .iter()
        .filter(|(p, _)| **p >= 0)
        .map(|(p, roots)| {
            let shown: Vec<String> = roots
                .iter()
                .filter(|r| r.iter().all(|&c| c >= 0))
                .map(|r| r.iter().map(i64::to_string).collect::<Vec<_>>().join(""))
                .collect();
            Piece {
                degree: *p,
                dim: if *p == 0 { roots.len() + d.root_system.rank() } else { roots.len() },
                roots: shown,
            }
        })
        .collect();
    let view = GradingView {
        summary: summarize_diagram(&d),
        pieces,
    };
    serde_json::to_string(&view).map_err(|e| e.to_string())
}

/// Catalog entries as a JSON array of `{entry, group, title, params, defaults}`.
#[wasm_bindgen]
pub fn list_entries() -> String {
    let entries: Vec<_> = catalog()
        .iter()
        .map(|e| {
            serde_json::json!({
                "entry": e.id,
                "group": e.group,
                "title": e.title,
                "params": e.params,
                "defaults": e.defaults,
            })
        })
        .collect();
    serde_json::Value::Array(entries).to_string()
}

/// Verifies one catalog entry. `params` is `name=value` pairs separated by
/// commas or spaces; empty means the first default instance.
#[wasm_bindgen]
pub fn run_entry(id: &str, params: &str, seed: u32) -> Result<String, String> {
    let entry = find_entry(id).map_err(|e| e.to_string())?;
    let named = params
        .split(|c: char| c == ',' || c.is_whitespace())
        .filter(|s| !s.is_empty())
        .map(|s| {
            let (k, v) = s.split_once('=').ok_or_else(|| format!("expected name=value, got `{s}`"))?;
            let v = v.parse::<usize>().map_err(|_| format!("bad value `{v}`"))?;
            Ok((k.to_string(), v))
        })
        .collect::<Result<Vec<_>, String>>()?;
    let values = entry.resolve_params(&named).map_err(|e| e.to_string())?;
    let options = RunOptions {
        seed: u64::from(seed),
        ..RunOptions::default()
    };
    Ok(run(entry.id, &values, &options).map_err(|e| e.to_string())?.to_json())
}
