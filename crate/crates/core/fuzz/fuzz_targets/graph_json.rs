#![no_main]

use layerbound::Graph;
use libfuzzer_sys::fuzz_target;

fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    if let Ok(g) = Graph::from_json(text) {
        let back = Graph::from_json(&g.to_json()).expect("own output parses");
        assert_eq!(back.edges(), g.edges());
        assert_eq!(back.labels(), g.labels());
    }
});
