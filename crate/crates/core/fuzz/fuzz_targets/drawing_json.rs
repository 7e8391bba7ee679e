#![no_main]

use layerbound::drawing::{crossing_profile, TwoLayerDrawing};
use layerbound::Graph;
use libfuzzer_sys::fuzz_target;

// Input: a graph JSON line, then a drawing JSON line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let Some((graph, drawing)) = text.split_once('\n') else { return };
    let Ok(g) = Graph::from_json(graph) else { return };
    if g.m() > 2000 {
        return;
    }
    if let Ok(d) = TwoLayerDrawing::from_json(drawing, &g) {
        let p = crossing_profile(&g, &d);
        assert_eq!(p.per_edge.iter().sum::<usize>(), 2 * p.crossing_pairs.len());
        let again = TwoLayerDrawing::from_json(&d.to_json(), &g).expect("own output parses");
        assert_eq!(again.order_x(), d.order_x());
    }
});
