//! The node searching game.
//!
//! All edges start contaminated. An edge is cleaned when both endpoints carry a
//! guard, and a clean edge is recontaminated when it shares an unguarded
//! endpoint with a contaminated edge. States are kept closed under that rule:
//! recontamination is propagated to a fixed point inside every move.

use std::collections::BTreeMap;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::{classify_edge, EdgeKind, GridFamilyInstance, GridLike, WallFamilyInstance};
use crate::graph::{Coord, Edge, Graph, VertexId, VertexSet};
use crate::pathwidth::{exact_pathwidth, Budget, Layout, PathDecomposition};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MoveKind {
    Place,
    Remove,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Move {
    #[serde(rename = "op")]
    pub kind: MoveKind,
    #[serde(rename = "v")]
    pub vertex: VertexId,
}

impl Move {
    pub fn place(vertex: VertexId) -> Self {
        Move {
            kind: MoveKind::Place,
            vertex,
        }
    }

    pub fn remove(vertex: VertexId) -> Self {
        Move {
            kind: MoveKind::Remove,
            vertex,
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SearchStrategy {
    pub moves: Vec<Move>,
}

impl SearchStrategy {
    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("strategy serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GameError {
    #[error("move {step}: cannot {kind:?} a guard on vertex {vertex}")]
    IllegalMove {
        step: usize,
        kind: MoveKind,
        vertex: VertexId,
    },
    #[error("strategy ends with edge ({0}, {1}) contaminated")]
    NotAllClean(VertexId, VertexId),
    #[error("strategy recontaminates an edge at move {0}")]
    NotMonotone(usize),
}

/// Guards and clean edges; clean edges are indexed like `Graph::edges`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GameState {
    guards: FixedBitSet,
    clean: FixedBitSet,
}

impl GameState {
    /// No guards, every edge contaminated.
    pub fn initial(g: &Graph) -> Self {
        GameState {
            guards: FixedBitSet::with_capacity(g.n()),
            clean: FixedBitSet::with_capacity(g.m()),
        }
    }

    pub fn guards(&self) -> VertexSet {
        self.guards.ones().collect()
    }

    pub fn guard_count(&self) -> usize {
        self.guards.count_ones(..)
    }

    pub fn is_guarded(&self, v: VertexId) -> bool {
        self.guards[v]
    }

    pub fn is_clean(&self, edge_index: usize) -> bool {
        self.clean[edge_index]
    }

    pub fn clean_count(&self) -> usize {
        self.clean.count_ones(..)
    }

    pub fn all_clean(&self) -> bool {
        self.clean.is_full()
    }
}

fn incident(g: &Graph, v: VertexId) -> impl Iterator<Item = (usize, VertexId)> + '_ {
    g.neighbors(v)
        .iter()
        .map(move |&u| (g.edge_index(u, v).expect("adjacent"), u))
}

/// Applies one move; `step` is only used to label errors.
pub fn apply_move(g: &Graph, s: &GameState, m: Move, step: usize) -> Result<GameState, GameError> {
    let v = m.vertex;
    let illegal = GameError::IllegalMove {
        step,
        kind: m.kind,
        vertex: v,
    };
    if v >= g.n() {
        return Err(illegal);
    }
    let mut next = s.clone();
    match m.kind {
        MoveKind::Place => {
            if next.guards.put(v) {
                return Err(illegal);
            }
            for (e, u) in incident(g, v) {
                if next.guards[u] {
                    next.clean.insert(e);
                }
            }
        }
        MoveKind::Remove => {
            if !next.guards[v] {
                return Err(illegal);
            }
            next.guards.set(v, false);
            // The state was closed, so only v can start a recontamination wave.
            let mut stack = vec![v];
            while let Some(u) = stack.pop() {
                let touches_dirty = incident(g, u).any(|(e, _)| !next.clean[e]);
                if !touches_dirty {
                    continue;
                }
                for (e, w) in incident(g, u) {
                    if next.clean[e] {
                        next.clean.set(e, false);
                        if !next.guards[w] {
                            stack.push(w);
                        }
                    }
                }
            }
        }
    }
    Ok(next)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct StrategyReport {
    /// Largest number of guards present at once.
    pub cost: usize,
    /// No edge ever went from clean to contaminated.
    pub monotone: bool,
}

/// Replays `s` from the initial state, calling `visit` after every move.
pub fn simulate(
    g: &Graph,
    s: &SearchStrategy,
    mut visit: impl FnMut(usize, &GameState),
) -> Result<StrategyReport, GameError> {
    let mut state = GameState::initial(g);
    let mut cost = 0;
    let mut monotone = true;
    for (step, &m) in s.moves.iter().enumerate() {
        let next = apply_move(g, &state, m, step)?;
        if next.clean_count() < state.clean_count() || !state.clean.is_subset(&next.clean) {
            monotone = false;
        }
        state = next;
        cost = cost.max(state.guard_count());
        visit(step, &state);
    }
    if let Some(e) = (0..g.m()).find(|&e| !state.clean[e]) {
        let (u, v) = g.edges()[e];
        return Err(GameError::NotAllClean(u, v));
    }
    Ok(StrategyReport { cost, monotone })
}

pub fn verify_strategy(g: &Graph, s: &SearchStrategy) -> Result<StrategyReport, GameError> {
    simulate(g, s, |_, _| {})
}

/// Checks that every coordinate row or column whose edges are partly clean holds a guard.
///
/// Rows are checked over their row edges and columns over their column edges.
pub struct ObservationChecker {
    lines: Vec<(EdgeKind, u32, Vec<usize>, Vec<VertexId>)>,
}

impl ObservationChecker {
    /// `None` when the graph carries no coordinates.
    pub fn new(g: &Graph) -> Option<Self> {
        let labels = g.labels()?;
        let mut groups: BTreeMap<(u8, u32), (Vec<usize>, Vec<VertexId>)> = BTreeMap::new();
        for (i, &e) in g.edges().iter().enumerate() {
            let key = match classify_edge(g, e) {
                EdgeKind::Row => (0, labels[e.0].row),
                EdgeKind::Column => (1, labels[e.0].col),
                EdgeKind::NonRow => continue,
            };
            groups.entry(key).or_default().0.push(i);
        }
        for (v, c) in labels.iter().enumerate() {
            for key in [(0, c.row), (1, c.col)] {
                if let Some(group) = groups.get_mut(&key) {
                    group.1.push(v);
                }
            }
        }
        let lines = groups
            .into_iter()
            .map(|((kind, index), (edges, vertices))| {
                let kind = if kind == 0 {
                    EdgeKind::Row
                } else {
                    EdgeKind::Column
                };
                (kind, index, edges, vertices)
            })
            .collect();
        Some(ObservationChecker { lines })
    }

    /// First row or column that is partly clean yet unguarded.
    pub fn violation(&self, state: &GameState) -> Option<(EdgeKind, u32)> {
        self.lines
            .iter()
            .find_map(|(kind, index, edges, vertices)| {
                let clean = edges.iter().filter(|&&e| state.is_clean(e)).count();
                let mixed = clean > 0 && clean < edges.len();
                (mixed && !vertices.iter().any(|&v| state.is_guarded(v))).then_some((*kind, *index))
            })
    }
}

/// Columns in the order their column edges become entirely clean.
pub fn column_clean_order(g: &Graph, s: &SearchStrategy) -> Result<Vec<u32>, GameError> {
    let labels = g.labels().unwrap_or(&[]);
    let mut columns: BTreeMap<u32, Vec<usize>> = BTreeMap::new();
    for (i, &e) in g.edges().iter().enumerate() {
        if !labels.is_empty() && classify_edge(g, e) == EdgeKind::Column {
            columns.entry(labels[e.0].col).or_default().push(i);
        }
    }
    let mut order = Vec::new();
    simulate(g, s, |_, state| {
        for (&c, edges) in &columns {
            if !order.contains(&c) && edges.iter().all(|&e| state.is_clean(e)) {
                order.push(c);
            }
        }
    })?;
    Ok(order)
}

/// The `k + 2` guard column sweep of `G_k`.
///
/// Column 1 is guarded top to bottom. Then, for each column `c`, the guards on
/// rows `k + 1` and `k + 2` are lifted, rows `1..=k` advance to `c + 1` one at a
/// time (guard the new vertex, then lift the old one) and the two bottom rows of
/// `c + 1` are guarded.
pub fn grid_sweep_strategy(inst: &GridFamilyInstance) -> SearchStrategy {
    let k = inst.k;
    let id = |x: u32, y: u32| inst.vertex(Coord::new(x, y)).expect("grid coordinate");
    let mut moves: Vec<Move> = (1..=k + 2).map(|x| Move::place(id(x, 1))).collect();
    for c in 1..inst.num_cols() {
        moves.push(Move::remove(id(k + 1, c)));
        moves.push(Move::remove(id(k + 2, c)));
        for x in 1..=k {
            moves.push(Move::place(id(x, c + 1)));
            moves.push(Move::remove(id(x, c)));
        }
        moves.push(Move::place(id(k + 1, c + 1)));
        moves.push(Move::place(id(k + 2, c + 1)));
    }
    SearchStrategy { moves }
}

/// Guards vertices in layout order and lifts every guard whose neighbours are all
/// guarded or already passed, in ascending id order. The result is monotone and
/// its cost is one more than the largest inner boundary of a layout prefix.
pub fn layout_to_strategy(g: &Graph, l: &Layout) -> SearchStrategy {
    let mut seen = vec![false; g.n()];
    let mut pending: Vec<usize> = (0..g.n()).map(|v| g.degree(v)).collect();
    let mut guarded = VertexSet::new();
    let mut moves = Vec::with_capacity(2 * g.n());
    for &v in l.order() {
        seen[v] = true;
        moves.push(Move::place(v));
        guarded.insert(v);
        for &u in g.neighbors(v) {
            pending[u] -= 1;
        }
        let done: Vec<VertexId> = guarded
            .iter()
            .copied()
            .filter(|&u| pending[u] == 0)
            .collect();
        for u in done {
            guarded.remove(&u);
            moves.push(Move::remove(u));
        }
    }
    debug_assert!(seen.iter().all(|&s| s));
    SearchStrategy { moves }
}

/// Column sweep of `W_k` with `k + 2` guards: vertices of the long rows are taken
/// column by column, and each hair is guarded and released right after its
/// attachment vertex.
pub fn wall_sweep_strategy(inst: &WallFamilyInstance) -> SearchStrategy {
    let g = &inst.graph;
    let labels = g.labels().expect("wall is labelled");
    let mut long: Vec<VertexId> = (0..g.n()).filter(|&v| labels[v].row <= inst.k).collect();
    long.sort_by_key(|&v| (labels[v].col, labels[v].row));
    let hair_of: BTreeMap<Coord, (Coord, Coord)> = inst
        .hairs
        .iter()
        .map(|h| (h.attach, (h.mid, h.tip)))
        .collect();
    let mut order = Vec::with_capacity(g.n());
    for v in long {
        order.push(v);
        if let Some(&(mid, tip)) = hair_of.get(&labels[v]) {
            order.push(inst.vertex(mid).expect("hair mid"));
            order.push(inst.vertex(tip).expect("hair tip"));
        }
    }
    let layout = Layout::new(g.n(), order).expect("every wall vertex listed once");
    layout_to_strategy(g, &layout)
}

/// Path decomposition from a monotone, successful strategy: one bag per placement,
/// holding the guards present right after it.
///
/// A vertex guarded more than once keeps only the stretch in which its edges were
/// cleaned (monotonicity allows exactly one); never-guarded vertices, which can
/// only be isolated, get a bag of their own at the end.
pub fn strategy_to_decomposition(
    g: &Graph,
    s: &SearchStrategy,
) -> Result<PathDecomposition, GameError> {
    let mut bags: Vec<VertexSet> = Vec::new();
    // Per vertex: (bag index where the current stretch began, cleaned anything).
    let mut stretch: Vec<Option<(usize, bool)>> = vec![None; g.n()];
    let mut keep: Vec<Option<(usize, usize)>> = vec![None; g.n()];
    let mut state = GameState::initial(g);
    let mut monotone = true;
    for (step, &m) in s.moves.iter().enumerate() {
        let next = apply_move(g, &state, m, step)?;
        if !state.clean.is_subset(&next.clean) {
            monotone = false;
        }
        match m.kind {
            MoveKind::Place => {
                bags.push(next.guards());
                let here = bags.len() - 1;
                stretch[m.vertex] = Some((here, false));
                for (e, u) in incident(g, m.vertex) {
                    if next.clean[e] && !state.clean[e] {
                        for w in [m.vertex, u] {
                            if let Some((_, cleaned)) = stretch[w].as_mut() {
                                *cleaned = true;
                            }
                        }
                    }
                }
            }
            MoveKind::Remove => {
                if let Some((begin, cleaned)) = stretch[m.vertex].take() {
                    if keep[m.vertex].is_none() && (cleaned || g.degree(m.vertex) == 0) {
                        keep[m.vertex] = Some((begin, bags.len() - 1));
                    }
                }
            }
        }
        state = next;
    }
    if !monotone {
        return Err(GameError::NotMonotone(first_recontamination(g, s)));
    }
    if let Some(e) = (0..g.m()).find(|&e| !state.clean[e]) {
        let (u, v) = g.edges()[e];
        return Err(GameError::NotAllClean(u, v));
    }
    let end = bags.len().saturating_sub(1);
    for v in 0..g.n() {
        if let Some((begin, cleaned)) = stretch[v] {
            if keep[v].is_none() && (cleaned || g.degree(v) == 0) {
                keep[v] = Some((begin, end));
            }
        }
    }
    for (i, bag) in bags.iter_mut().enumerate() {
        bag.retain(|&v| keep[v].is_some_and(|(a, b)| a <= i && i <= b));
    }
    for v in 0..g.n() {
        if keep[v].is_none() {
            bags.push(VertexSet::from([v]));
        }
    }
    Ok(PathDecomposition { bags })
}

fn first_recontamination(g: &Graph, s: &SearchStrategy) -> usize {
    let mut state = GameState::initial(g);
    for (step, &m) in s.moves.iter().enumerate() {
        let next = apply_move(g, &state, m, step).expect("already replayed");
        if !state.clean.is_subset(&next.clean) {
            return step;
        }
        state = next;
    }
    unreachable!("called only for non-monotone strategies")
}

/// `ns(g) = pw(g) + 1`, with monotone strategies sufficing for the optimum.
/// `None` when the pathwidth solver runs out of budget.
pub fn exact_search_number(g: &Graph, budget: &Budget) -> Option<usize> {
    exact_pathwidth(g, budget).width().map(|w| w + 1)
}

/// Edges of `g` that are clean in `state`.
pub fn clean_edges(g: &Graph, state: &GameState) -> Vec<Edge> {
    g.edges()
        .iter()
        .enumerate()
        .filter(|(i, _)| state.is_clean(*i))
        .map(|(_, &e)| e)
        .collect()
}
