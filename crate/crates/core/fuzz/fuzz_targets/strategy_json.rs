#![no_main]

use layerbound::nodesearch::{strategy_to_decomposition, verify_strategy, SearchStrategy};
use layerbound::pathwidth::verify_decomposition;
use layerbound::Graph;
use libfuzzer_sys::fuzz_target;

// Input: a graph JSON line, then a strategy JSON line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((graph, strategy)) = text.split_once('\n') else { return };
    let (Ok(g), Ok(s)) = (Graph::from_json(graph), SearchStrategy::from_json(strategy)) else { return };
    if g.n() > 200 || s.moves.len() > 2000 {
        return;
    }
    if let Ok(report) = verify_strategy(&g, &s) {
        if report.monotone {
            let pd = strategy_to_decomposition(&g, &s).expect("monotone strategies convert");
            verify_decomposition(&g, &pd).expect("converted decomposition is valid");
        }
    }
});
