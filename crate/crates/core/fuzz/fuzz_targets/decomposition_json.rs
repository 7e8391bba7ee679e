#![no_main]

use layerbound::pathwidth::{verify_decomposition, PathDecomposition};
use layerbound::Graph;
use libfuzzer_sys::fuzz_target;

// Input: a graph JSON line, then a decomposition JSON line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((graph, pd)) = text.split_once('\n') else { return };
    let (Ok(g), Ok(pd)) = (Graph::from_json(graph), PathDecomposition::from_json(pd)) else { return };
    if let Ok(width) = verify_decomposition(&g, &pd) {
        assert_eq!(width, pd.width());
    }
});
