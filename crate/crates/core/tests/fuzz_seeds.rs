//! The fuzz corpus seeds stay well-formed inputs for the library.

use std::fs;
use std::path::PathBuf;

use layerbound::drawing::TwoLayerDrawing;
use layerbound::minors::{verify_minor, MinorModel};
use layerbound::nodesearch::{verify_strategy, SearchStrategy};
use layerbound::pathwidth::{verify_decomposition, PathDecomposition};
use layerbound::Graph;

fn seeds(target: &str) -> Vec<(String, Vec<String>)> {
    let dir = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fuzz/corpus")
        .join(target);
    let mut out: Vec<_> = fs::read_dir(&dir)
        .unwrap_or_else(|e| panic!("{}: {e}", dir.display()))
        .map(|entry| {
            let path = entry.unwrap().path();
            let text = fs::read_to_string(&path).unwrap();
            (
                path.display().to_string(),
                text.lines().map(str::to_owned).collect(),
            )
        })
        .collect();
    out.sort();
    assert!(!out.is_empty(), "no seeds for {target}");
    out
}

#[test]
fn graph_seeds_parse() {
    for (name, lines) in seeds("graph_json") {
        Graph::from_json(&lines.concat()).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn drawing_seeds_parse() {
    for (name, lines) in seeds("drawing_json") {
        let g = Graph::from_json(&lines[0]).unwrap();
        TwoLayerDrawing::from_json(&lines[1], &g).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn decomposition_seeds_are_valid() {
    for (name, lines) in seeds("decomposition_json") {
        let g = Graph::from_json(&lines[0]).unwrap();
        let pd = PathDecomposition::from_json(&lines[1]).unwrap();
        verify_decomposition(&g, &pd).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn strategy_seeds_are_winning() {
    for (name, lines) in seeds("strategy_json") {
        let g = Graph::from_json(&lines[0]).unwrap();
        let s = SearchStrategy::from_json(&lines[1]).unwrap();
        verify_strategy(&g, &s).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}

#[test]
fn minor_seeds_are_valid() {
    for (name, lines) in seeds("minor_model_json") {
        let p = Graph::from_json(&lines[0]).unwrap();
        let h = Graph::from_json(&lines[1]).unwrap();
        let m = MinorModel::from_json(&lines[2]).unwrap();
        verify_minor(&p, &h, &m).unwrap_or_else(|e| panic!("{name}: {e}"));
    }
}
