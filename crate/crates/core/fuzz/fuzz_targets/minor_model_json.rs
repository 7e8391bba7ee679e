#![no_main]

use layerbound::minors::{verify_minor, MinorModel};
use layerbound::Graph;
use libfuzzer_sys::fuzz_target;

// Input: pattern graph, host graph and model, one JSON document per line.
fuzz_target!(|data: &[u8]| {
    let Ok(text) = std::str::from_utf8(data) else { return };
    let mut lines = text.splitn(3, '\n');
    let (Some(p), Some(h), Some(m)) = (lines.next(), lines.next(), lines.next()) else { return };
    let (Ok(p), Ok(h), Ok(m)) = (Graph::from_json(p), Graph::from_json(h), MinorModel::from_json(m)) else {
        return;
    };
    if let Ok(cert) = verify_minor(&p, &h, &m) {
        assert_eq!(cert.realised_by.len(), p.m());
    }
});
