//! Independent oracles shared by the integration tests. Nothing here calls the
//! pathwidth solver or the game engine.

#![allow(dead_code)]

use std::collections::{BTreeSet, HashSet, VecDeque};

use layerbound::graph::{Graph, VertexId};
use rand::Rng;

/// All trees on `n` vertices up to isomorphism (Prüfer sequences, deduplicated by
/// a canonical encoding rooted at the centre).
pub fn nonisomorphic_trees(n: usize) -> Vec<Graph> {
    match n {
        0 => return vec![],
        1 => return vec![Graph::new(1, []).unwrap()],
        2 => return vec![Graph::new(2, [(0, 1)]).unwrap()],
        _ => {}
    }
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    let mut seq = vec![0usize; n - 2];
    loop {
        let g = from_prufer(n, &seq);
        if seen.insert(tree_canonical(&g)) {
            out.push(g);
        }
        // next sequence in base-n counting
        let mut i = 0;
        while i < seq.len() && seq[i] == n - 1 {
            seq[i] = 0;
            i += 1;
        }
        if i == seq.len() {
            break;
        }
        seq[i] += 1;
    }
    out
}

fn from_prufer(n: usize, seq: &[usize]) -> Graph {
    let mut degree = vec![1; n];
    for &s in seq {
        degree[s] += 1;
    }
    let mut edges = Vec::new();
    for &s in seq {
        let leaf = (0..n).find(|&v| degree[v] == 1).unwrap();
        edges.push((leaf, s));
        degree[leaf] -= 1;
        degree[s] -= 1;
    }
    let rest: Vec<_> = (0..n).filter(|&v| degree[v] == 1).collect();
    edges.push((rest[0], rest[1]));
    Graph::new(n, edges).unwrap()
}

fn tree_canonical(g: &Graph) -> String {
    // Centres by repeated leaf stripping.
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let mut layer: Vec<usize> = (0..n).filter(|&v| degree[v] <= 1).collect();
    let mut remaining = n;
    while remaining > 2 {
        remaining -= layer.len();
        let mut next = Vec::new();
        for &v in &layer {
            for &u in g.neighbors(v) {
                degree[u] -= 1;
                if degree[u] == 1 {
                    next.push(u);
                }
            }
        }
        layer = next;
    }
    fn encode(g: &Graph, v: VertexId, parent: Option<VertexId>) -> String {
        let mut kids: Vec<String> = g
            .neighbors(v)
            .iter()
            .filter(|&&u| Some(u) != parent)
            .map(|&u| encode(g, u, Some(v)))
            .collect();
        kids.sort();
        format!("({})", kids.concat())
    }
    layer.iter().map(|&c| encode(g, c, None)).min().unwrap()
}

/// A tree is a caterpillar iff removing its leaves leaves a path (or nothing).
pub fn is_caterpillar(tree: &Graph) -> bool {
    let spine: Vec<VertexId> = (0..tree.n()).filter(|&v| tree.degree(v) >= 2).collect();
    let on_spine: BTreeSet<_> = spine.iter().copied().collect();
    spine.iter().all(|&v| {
        tree.neighbors(v)
            .iter()
            .filter(|u| on_spine.contains(u))
            .count()
            <= 2
    })
}

pub fn is_tree(g: &Graph) -> bool {
    g.n() > 0 && g.m() == g.n() - 1 && g.components().len() == 1
}

/// Random spanning tree plus each remaining pair with probability `p`.
pub fn random_connected_graph(rng: &mut impl Rng, n: usize, p: f64) -> Graph {
    let mut edges = BTreeSet::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.insert((u, v));
    }
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.insert((u, v));
            }
        }
    }
    Graph::new(n, edges).unwrap()
}

/// Every connected labelled graph on `n` vertices.
pub fn all_connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    (0u64..1 << pairs.len())
        .map(|mask| {
            let edges = pairs
                .iter()
                .enumerate()
                .filter(|(i, _)| mask >> i & 1 == 1)
                .map(|(_, &e)| e);
            Graph::new(n, edges).unwrap()
        })
        .filter(|g| g.components().len() <= 1)
        .collect()
}

/// Minimum over all `n!` layouts of `max_i |N(S_i) \ S_i|`, evaluated from scratch.
pub fn brute_force_separation(g: &Graph) -> usize {
    let n = g.n();
    let adj: Vec<u64> = (0..n)
        .map(|v| g.neighbors(v).iter().fold(0u64, |m, &u| m | 1 << u))
        .collect();
    let cost = |perm: &[usize]| {
        let mut prefix = 0u64;
        let mut worst = 0;
        for &v in perm {
            prefix |= 1 << v;
            let nb = (0..n)
                .filter(|&u| prefix >> u & 1 == 1)
                .fold(0u64, |m, u| m | adj[u]);
            worst = worst.max((nb & !prefix).count_ones() as usize);
        }
        worst
    };
    let mut perm: Vec<usize> = (0..n).collect();
    let mut best = cost(&perm);
    // Heap's algorithm.
    let mut c = vec![0; n];
    let mut i = 0;
    while i < n {
        if c[i] < i {
            if i % 2 == 0 {
                perm.swap(0, i);
            } else {
                perm.swap(c[i], i);
            }
            best = best.min(cost(&perm));
            c[i] += 1;
            i = 0;
        } else {
            c[i] = 0;
            i += 1;
        }
    }
    best
}

/// Cheapest monotone node search found by breadth-first search over game states.
///
/// Moves: place a guard anywhere (cleaning edges to guarded neighbours), or lift a
/// guard whose incident edges are all clean. Lifting a guard whose incident edges
/// are all dirty would only undo a wasted placement, and lifting one with mixed
/// edges recontaminates, so both are left out.
pub fn game_tree_search_number(g: &Graph) -> usize {
    let n = g.n();
    assert!(n <= 16 && g.m() <= 64);
    let incident: Vec<u64> = (0..n)
        .map(|v| {
            g.edges()
                .iter()
                .enumerate()
                .filter(|(_, e)| e.0 == v || e.1 == v)
                .fold(0u64, |m, (i, _)| m | 1 << i)
        })
        .collect();
    let all: u64 = if g.m() == 64 {
        u64::MAX
    } else {
        (1u64 << g.m()) - 1
    };
    if all == 0 {
        return usize::from(n > 0);
    }
    for budget in 1..=n {
        let mut seen: HashSet<(u16, u64)> = HashSet::new();
        let mut queue = VecDeque::from([(0u16, 0u64)]);
        seen.insert((0, 0));
        while let Some((guards, clean)) = queue.pop_front() {
            if clean == all {
                return budget;
            }
            for v in 0..n {
                let bit = 1u16 << v;
                let next = if guards & bit == 0 {
                    if guards.count_ones() as usize >= budget {
                        continue;
                    }
                    let mut newly = 0u64;
                    for &u in g.neighbors(v) {
                        if guards >> u & 1 == 1 {
                            newly |= 1 << g.edge_index(u, v).unwrap();
                        }
                    }
                    (guards | bit, clean | newly)
                } else {
                    if incident[v] & !clean != 0 {
                        continue;
                    }
                    (guards & !bit, clean)
                };
                if seen.insert(next) {
                    queue.push_back(next);
                }
            }
        }
    }
    unreachable!("n guards always suffice")
}
