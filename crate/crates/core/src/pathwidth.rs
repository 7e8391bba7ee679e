//! Path decompositions, vertex separation layouts and an exact pathwidth solver.
//!
//! For a layout `v_1, ..., v_n` with prefixes `S_i`, the separation is
//! `max_i |N(S_i) \ S_i|`, and the minimum over layouts is the pathwidth. The
//! solver searches layouts prefix by prefix with that bound as the pruning rule.

use std::num::NonZeroUsize;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use lru::LruCache;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Graph, VertexId, VertexSet};

#[derive(Clone, Debug, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PathDecomposition {
    pub bags: Vec<VertexSet>,
}

impl PathDecomposition {
    /// `max |bag| - 1`, saturating at zero.
    pub fn width(&self) -> usize {
        self.bags
            .iter()
            .map(|b| b.len())
            .max()
            .unwrap_or(0)
            .saturating_sub(1)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("decomposition serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

/// The first axiom a candidate decomposition breaks.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecompositionViolation {
    #[error("bag {bag} contains unknown vertex {vertex}")]
    UnknownVertex { bag: usize, vertex: VertexId },
    #[error("vertex {0} is in no bag")]
    UncoveredVertex(VertexId),
    #[error("edge ({0}, {1}) is in no bag")]
    UncoveredEdge(VertexId, VertexId),
    #[error("vertex {vertex} appears in bags {first} and {resumed} but not in bag {gap}")]
    BrokenTrace {
        vertex: VertexId,
        first: usize,
        gap: usize,
        resumed: usize,
    },
}

/// Returns the width when all three axioms hold.
pub fn verify_decomposition(
    g: &Graph,
    pd: &PathDecomposition,
) -> Result<usize, DecompositionViolation> {
    let mut first = vec![usize::MAX; g.n()];
    let mut last = vec![0; g.n()];
    let mut count = vec![0usize; g.n()];
    for (i, bag) in pd.bags.iter().enumerate() {
        for &v in bag {
            if v >= g.n() {
                return Err(DecompositionViolation::UnknownVertex { bag: i, vertex: v });
            }
            first[v] = first[v].min(i);
            last[v] = i;
            count[v] += 1;
        }
    }
    if let Some(v) = (0..g.n()).find(|&v| count[v] == 0) {
        return Err(DecompositionViolation::UncoveredVertex(v));
    }
    for &(u, v) in g.edges() {
        if !pd.bags.iter().any(|b| b.contains(&u) && b.contains(&v)) {
            return Err(DecompositionViolation::UncoveredEdge(u, v));
        }
    }
    for v in 0..g.n() {
        if count[v] != last[v] - first[v] + 1 {
            let gap = (first[v]..=last[v])
                .find(|&i| !pd.bags[i].contains(&v))
                .unwrap();
            let resumed = (gap..=last[v]).find(|&i| pd.bags[i].contains(&v)).unwrap();
            return Err(DecompositionViolation::BrokenTrace {
                vertex: v,
                first: first[v],
                gap,
                resumed,
            });
        }
    }
    Ok(pd.width())
}

/// A linear order of all vertices.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Layout {
    order: Vec<VertexId>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("layout is not a permutation of 0..{0}")]
pub struct NotAPermutation(pub usize);

impl Layout {
    pub fn new(n: usize, order: Vec<VertexId>) -> Result<Self, NotAPermutation> {
        let mut seen = FixedBitSet::with_capacity(n);
        if order.len() != n || order.iter().any(|&v| v >= n || seen.put(v)) {
            return Err(NotAPermutation(n));
        }
        Ok(Layout { order })
    }

    pub fn order(&self) -> &[VertexId] {
        &self.order
    }
}

/// Outer boundaries `|N(S_i) \ S_i|` of every prefix, in layout order.
fn prefix_boundaries(g: &Graph, order: &[VertexId]) -> Vec<Vec<VertexId>> {
    let mut pos = vec![usize::MAX; g.n()];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    // u is in the boundary of prefix i while its earliest neighbour is <= i < pos[u].
    let mut out = vec![Vec::new(); order.len()];
    for u in 0..g.n() {
        let earliest = g.neighbors(u).iter().map(|&w| pos[w]).min();
        if let Some(e) = earliest {
            for slot in out.iter_mut().take(pos[u]).skip(e) {
                slot.push(u);
            }
        }
    }
    out
}

/// Vertex separation of a layout.
pub fn separation(g: &Graph, l: &Layout) -> usize {
    prefix_boundaries(g, &l.order)
        .iter()
        .map(Vec::len)
        .max()
        .unwrap_or(0)
}

/// Bag `i` holds `v_i` and every later vertex adjacent to the prefix ending at `v_i`.
pub fn layout_to_decomposition(g: &Graph, l: &Layout) -> PathDecomposition {
    let bags = prefix_boundaries(g, &l.order)
        .into_iter()
        .zip(&l.order)
        .map(|(boundary, &v)| boundary.into_iter().chain([v]).collect())
        .collect();
    PathDecomposition { bags }
}

/// Limits for the exact solver. The node limit is reproducible; wall time is a
/// safety valve.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_nodes: Option<u64>,
    pub max_time: Option<Duration>,
    /// Failed prefixes remembered at once; least recently used entries are evicted.
    pub memo_capacity: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_nodes: Some(200_000_000),
            max_time: Some(Duration::from_secs(600)),
            memo_capacity: 4_000_000,
        }
    }
}

impl Budget {
    pub fn unlimited() -> Self {
        Budget {
            max_nodes: None,
            max_time: None,
            ..Budget::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Decision {
    /// A layout with separation at most the target.
    Yes(Layout),
    No,
    Unknown,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PathwidthResult {
    Exact {
        width: usize,
        witness: Layout,
    },
    /// The budget ran out; pathwidth lies in `lower..=upper`.
    Unknown {
        lower: usize,
        upper: usize,
    },
}

impl PathwidthResult {
    pub fn width(&self) -> Option<usize> {
        match self {
            PathwidthResult::Exact { width, .. } => Some(*width),
            PathwidthResult::Unknown { .. } => None,
        }
    }
}

/// Shared budget accounting across the solver calls of one request.
struct Meter {
    nodes_left: Option<u64>,
    deadline: Option<Instant>,
    memo_capacity: NonZeroUsize,
    ticks: u32,
}

impl Meter {
    fn new(b: &Budget) -> Self {
        Meter {
            nodes_left: b.max_nodes,
            deadline: b.max_time.map(|t| Instant::now() + t),
            memo_capacity: NonZeroUsize::new(b.memo_capacity.max(1)).unwrap(),
            ticks: 0,
        }
    }

    fn tick(&mut self) -> bool {
        if let Some(left) = &mut self.nodes_left {
            if *left == 0 {
                return false;
            }
            *left -= 1;
        }
        self.ticks = self.ticks.wrapping_add(1);
        if self.ticks.is_multiple_of(4096) {
            if let Some(d) = self.deadline {
                if Instant::now() >= d {
                    self.nodes_left = Some(0);
                    return false;
                }
            }
        }
        true
    }
}

enum Outcome {
    Found,
    Fail,
    Abort,
}

/// Branch and bound over layout prefixes of one connected graph.
struct Solver<'a> {
    g: &'a Graph,
    target: usize,
    placed: FixedBitSet,
    /// Number of placed neighbours per vertex.
    touch: Vec<u32>,
    /// `|N(S) \ S|` for the current prefix `S`.
    boundary: usize,
    layout: Vec<VertexId>,
    failed: LruCache<FixedBitSet, ()>,
}

impl<'a> Solver<'a> {
    fn new(g: &'a Graph, target: usize, memo: NonZeroUsize) -> Self {
        Solver {
            g,
            target,
            placed: FixedBitSet::with_capacity(g.n()),
            touch: vec![0; g.n()],
            boundary: 0,
            layout: Vec::with_capacity(g.n()),
            failed: LruCache::new(memo),
        }
    }

    /// Boundary after adding `v`.
    fn boundary_with(&self, v: VertexId) -> usize {
        let mut b = self.boundary - usize::from(self.touch[v] > 0);
        for &u in self.g.neighbors(v) {
            if !self.placed[u] && self.touch[u] == 0 {
                b += 1;
            }
        }
        b
    }

    fn place(&mut self, v: VertexId) {
        self.placed.insert(v);
        if self.touch[v] > 0 {
            self.boundary -= 1;
        }
        for &u in self.g.neighbors(v) {
            self.touch[u] += 1;
            if !self.placed[u] && self.touch[u] == 1 {
                self.boundary += 1;
            }
        }
        self.layout.push(v);
    }

    fn unplace(&mut self) {
        let v = self.layout.pop().expect("non-empty layout");
        for &u in self.g.neighbors(v) {
            if !self.placed[u] && self.touch[u] == 1 {
                self.boundary -= 1;
            }
            self.touch[u] -= 1;
        }
        self.placed.set(v, false);
        if self.touch[v] > 0 {
            self.boundary += 1;
        }
    }

    fn rewind(&mut self, len: usize) {
        while self.layout.len() > len {
            self.unplace();
        }
    }

    fn search(&mut self, meter: &mut Meter) -> Outcome {
        if !meter.tick() {
            return Outcome::Abort;
        }
        let mark = self.layout.len();
        let n = self.g.n();
        // The boundary function is submodular, so a vertex whose addition does not
        // grow the boundary can be taken next without losing any solution.
        'closure: loop {
            for v in 0..n {
                if !self.placed[v] && self.boundary_with(v) <= self.boundary {
                    self.place(v);
                    continue 'closure;
                }
            }
            break;
        }
        if self.layout.len() == n {
            return Outcome::Found;
        }
        if self.failed.get(&self.placed).is_some() {
            self.rewind(mark);
            return Outcome::Fail;
        }
        for v in 0..n {
            if self.placed[v] || self.boundary_with(v) > self.target {
                continue;
            }
            let before = self.layout.len();
            self.place(v);
            match self.search(meter) {
                Outcome::Found => return Outcome::Found,
                Outcome::Abort => {
                    self.rewind(mark);
                    return Outcome::Abort;
                }
                Outcome::Fail => self.rewind(before),
            }
        }
        self.failed.put(self.placed.clone(), ());
        self.rewind(mark);
        Outcome::Fail
    }
}

/// Induced subgraph on `vertices` (sorted), renumbered `0..len`.
fn induced(g: &Graph, vertices: &[VertexId]) -> Graph {
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in vertices.iter().enumerate() {
        local[v] = i;
    }
    let edges = g
        .edges()
        .iter()
        .filter(|&&(u, v)| local[u] != usize::MAX && local[v] != usize::MAX)
        .map(|&(u, v)| (local[u], local[v]));
    Graph::new(vertices.len(), edges).expect("induced subgraph is simple")
}

fn decide_connected(g: &Graph, w: usize, meter: &mut Meter) -> Decision {
    let mut solver = Solver::new(g, w, meter.memo_capacity);
    match solver.search(meter) {
        Outcome::Found => Decision::Yes(Layout {
            order: solver.layout,
        }),
        Outcome::Fail => Decision::No,
        Outcome::Abort => Decision::Unknown,
    }
}

fn decide_with(g: &Graph, w: usize, meter: &mut Meter) -> Decision {
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        match decide_connected(&induced(g, &comp), w, meter) {
            Decision::Yes(l) => order.extend(l.order.iter().map(|&i| comp[i])),
            other => return other,
        }
    }
    Decision::Yes(Layout { order })
}

/// Exact decision `pw(g) <= w`; components are solved independently.
pub fn decide_pathwidth_le(g: &Graph, w: usize, budget: &Budget) -> Decision {
    decide_with(g, w, &mut Meter::new(budget))
}

/// Layout built by repeatedly taking the vertex with the smallest resulting boundary.
pub fn greedy_layout(g: &Graph) -> Layout {
    let capacity = NonZeroUsize::new(1).unwrap();
    let mut s = Solver::new(g, usize::MAX, capacity);
    while s.layout.len() < g.n() {
        let v = (0..g.n())
            .filter(|&v| !s.placed[v])
            .min_by_key(|&v| (s.boundary_with(v), v))
            .unwrap();
        s.place(v);
    }
    Layout { order: s.layout }
}

/// Smallest `w` with `decide_pathwidth_le(g, w)`, searched upward from zero and
/// capped by the separation of the greedy layout.
pub fn exact_pathwidth(g: &Graph, budget: &Budget) -> PathwidthResult {
    let mut meter = Meter::new(budget);
    let mut width = 0;
    let mut order = Vec::with_capacity(g.n());
    for comp in g.components() {
        let sub = induced(g, &comp);
        let greedy = greedy_layout(&sub);
        let upper = separation(&sub, &greedy);
        // Components never lower the running maximum, so start from it.
        let mut found = None;
        for w in width..upper {
            match decide_connected(&sub, w, &mut meter) {
                Decision::Yes(l) => {
                    found = Some((w, l));
                    break;
                }
                Decision::No => {}
                Decision::Unknown => {
                    return PathwidthResult::Unknown {
                        lower: w.max(width),
                        upper: upper.max(width),
                    }
                }
            }
        }
        let (w, l) = found.unwrap_or((upper.max(width), greedy));
        width = width.max(w);
        order.extend(l.order.iter().map(|&i| comp[i]));
    }
    PathwidthResult::Exact {
        width,
        witness: Layout { order },
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_grid;

    fn bags(list: &[&[VertexId]]) -> PathDecomposition {
        PathDecomposition {
            bags: list.iter().map(|b| b.iter().copied().collect()).collect(),
        }
    }

    fn p3() -> Graph {
        Graph::new(3, [(0, 1), (1, 2)]).unwrap()
    }

    fn star() -> Graph {
        Graph::new(4, [(0, 1), (0, 2), (0, 3)]).unwrap()
    }

    fn c4() -> Graph {
        Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap()
    }

    #[test]
    fn verify_small_decompositions() {
        let k2 = Graph::new(2, [(0, 1)]).unwrap();
        assert_eq!(verify_decomposition(&k2, &bags(&[&[0, 1]])), Ok(1));
        assert_eq!(
            verify_decomposition(&p3(), &bags(&[&[0, 1], &[1, 2]])),
            Ok(1)
        );
        assert_eq!(
            verify_decomposition(&p3(), &bags(&[&[0, 1], &[2]])),
            Err(DecompositionViolation::UncoveredEdge(1, 2))
        );
        assert_eq!(
            verify_decomposition(&p3(), &bags(&[&[0, 1]])),
            Err(DecompositionViolation::UncoveredVertex(2))
        );
        assert_eq!(
            verify_decomposition(&p3(), &bags(&[&[0, 1], &[1, 2], &[0]])),
            Err(DecompositionViolation::BrokenTrace {
                vertex: 0,
                first: 0,
                gap: 1,
                resumed: 2
            })
        );
        assert!(matches!(
            verify_decomposition(&p3(), &bags(&[&[0, 1, 7]])),
            Err(DecompositionViolation::UnknownVertex { vertex: 7, .. })
        ));
    }

    #[test]
    fn layout_widths() {
        let g = p3();
        let l = Layout::new(3, vec![0, 1, 2]).unwrap();
        assert_eq!(
            verify_decomposition(&g, &layout_to_decomposition(&g, &l)),
            Ok(1)
        );
        let s = star();
        let center_last = Layout::new(4, vec![1, 2, 3, 0]).unwrap();
        let center_first = Layout::new(4, vec![0, 1, 2, 3]).unwrap();
        assert_eq!(separation(&s, &center_last), 1);
        assert_eq!(separation(&s, &center_first), 3);
        assert_eq!(
            verify_decomposition(&s, &layout_to_decomposition(&s, &center_last)),
            Ok(1)
        );
        assert_eq!(
            verify_decomposition(&s, &layout_to_decomposition(&s, &center_first)),
            Ok(3)
        );
    }

    #[test]
    fn column_sweep_of_grid_one() {
        let g = gen_grid(1).unwrap().graph;
        let labels = g.labels().unwrap();
        let mut order: Vec<VertexId> = (0..g.n()).collect();
        order.sort_by_key(|&v| (labels[v].col, labels[v].row));
        let l = Layout::new(g.n(), order).unwrap();
        let w = verify_decomposition(&g, &layout_to_decomposition(&g, &l)).unwrap();
        assert!(w <= 3);
        assert_eq!(w, separation(&g, &l));
    }

    #[test]
    fn layout_rejects_non_permutations() {
        assert!(Layout::new(3, vec![0, 1]).is_err());
        assert!(Layout::new(3, vec![0, 1, 1]).is_err());
        assert!(Layout::new(3, vec![0, 1, 3]).is_err());
    }

    #[test]
    fn decide_cycle() {
        let b = Budget::default();
        assert_eq!(decide_pathwidth_le(&c4(), 1, &b), Decision::No);
        let Decision::Yes(l) = decide_pathwidth_le(&c4(), 2, &b) else {
            panic!("C4 has pw 2")
        };
        assert!(separation(&c4(), &l) <= 2);
    }

    #[test]
    fn decide_grid_one() {
        let g = gen_grid(1).unwrap().graph;
        let b = Budget::default();
        assert_eq!(decide_pathwidth_le(&g, 1, &b), Decision::No);
        assert!(matches!(decide_pathwidth_le(&g, 2, &b), Decision::Yes(_)));
    }

    #[test]
    fn trivial_exact_values() {
        let b = Budget::default();
        assert_eq!(
            exact_pathwidth(&Graph::new(1, []).unwrap(), &b).width(),
            Some(0)
        );
        assert_eq!(
            exact_pathwidth(&Graph::new(2, [(0, 1)]).unwrap(), &b).width(),
            Some(1)
        );
        assert_eq!(
            exact_pathwidth(&Graph::new(0, []).unwrap(), &b).width(),
            Some(0)
        );
    }

    #[test]
    fn exhausted_budget_is_unknown() {
        let g = gen_grid(1).unwrap().graph;
        let tiny = Budget {
            max_nodes: Some(1),
            ..Budget::default()
        };
        assert_eq!(decide_pathwidth_le(&g, 1, &tiny), Decision::Unknown);
        assert!(matches!(
            exact_pathwidth(&g, &tiny),
            PathwidthResult::Unknown { .. }
        ));
    }

    #[test]
    fn witness_is_valid_for_disconnected_graph() {
        // C4 plus a disjoint P3.
        let g = Graph::new(7, [(0, 1), (1, 2), (2, 3), (0, 3), (4, 5), (5, 6)]).unwrap();
        let PathwidthResult::Exact { width, witness } = exact_pathwidth(&g, &Budget::default())
        else {
            panic!("small graph must be solved")
        };
        assert_eq!(width, 2);
        assert_eq!(separation(&g, &witness), 2);
    }

    #[test]
    fn json_round_trip() {
        let pd = bags(&[&[0, 1], &[1, 2]]);
        assert_eq!(pd.to_json(), r#"{"bags":[[0,1],[1,2]]}"#);
        assert_eq!(PathDecomposition::from_json(&pd.to_json()).unwrap(), pd);
    }
}
