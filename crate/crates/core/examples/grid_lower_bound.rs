//! Times the exact lower-bound decision `pw(G_k) <= k` for the given `k`.

use std::time::Instant;

use layerbound::families::gen_grid;
use layerbound::pathwidth::{decide_pathwidth_le, Budget, Decision};

fn main() {
    let k: u32 = std::env::args()
        .nth(1)
        .and_then(|a| a.parse().ok())
        .unwrap_or(2);
    let grid = gen_grid(k).expect("k >= 1");
    for w in [k as usize, k as usize + 1] {
        let start = Instant::now();
        let answer = match decide_pathwidth_le(&grid.graph, w, &Budget::unlimited()) {
            Decision::Yes(_) => "yes",
            Decision::No => "no",
            Decision::Unknown => "unknown",
        };
        println!("pw(G_{k}) <= {w}: {answer} ({:.2?})", start.elapsed());
    }
}
