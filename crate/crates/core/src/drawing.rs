//! Two-layer drawings, the crossing predicate and per-edge crossing counts.
//!
//! A drawing is purely combinatorial: an order on each side of a bipartition.
//! Edges `{x1, y1}` and `{x2, y2}` cross iff the orders disagree on the two
//! sides. Edges that share an endpoint never cross.

use std::collections::BTreeMap;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::families::WallFamilyInstance;
use crate::graph::{Edge, Graph, GraphError, VertexId, VertexSet};

/// Largest layer the exhaustive optimum search accepts.
pub const BRUTE_FORCE_LAYER_LIMIT: usize = 8;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DrawingError {
    #[error("vertex {0} appears more than once in the layer orders")]
    Repeated(VertexId),
    #[error("vertex {0} is not a vertex of the graph")]
    UnknownVertex(VertexId),
    #[error("vertex {0} is missing from both layers")]
    Missing(VertexId),
    #[error("edge ({0}, {1}) has both endpoints on one layer")]
    SameLayer(VertexId, VertexId),
    #[error("layer set and layer order disagree")]
    PartMismatch,
    #[error("({0}, {1}) is not an edge of the graph")]
    EdgeNotInGraph(VertexId, VertexId),
    #[error("graph is not bipartite; odd cycle {0:?}")]
    NotBipartite(Vec<VertexId>),
    #[error("layers of size {0} and {1} exceed the exhaustive search limit")]
    TooLarge(usize, usize),
    #[error("malformed drawing JSON: {0}")]
    Json(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Layer {
    X,
    Y,
}

/// A pair of layer orders over a bipartition of a graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TwoLayerDrawing {
    order_x: Vec<VertexId>,
    order_y: Vec<VertexId>,
    slot: Vec<(Layer, usize)>,
}

impl TwoLayerDrawing {
    /// Validates that the orders partition `V(g)` and that every edge runs between layers.
    pub fn new(
        g: &Graph,
        order_x: Vec<VertexId>,
        order_y: Vec<VertexId>,
    ) -> Result<Self, DrawingError> {
        let mut slot: Vec<Option<(Layer, usize)>> = vec![None; g.n()];
        for (layer, order) in [(Layer::X, &order_x), (Layer::Y, &order_y)] {
            for (i, &v) in order.iter().enumerate() {
                let s = slot.get_mut(v).ok_or(DrawingError::UnknownVertex(v))?;
                if s.is_some() {
                    return Err(DrawingError::Repeated(v));
                }
                *s = Some((layer, i + 1));
            }
        }
        let slot = slot
            .into_iter()
            .enumerate()
            .map(|(v, s)| s.ok_or(DrawingError::Missing(v)))
            .collect::<Result<Vec<_>, _>>()?;
        if let Some(&(u, v)) = g.edges().iter().find(|&&(u, v)| slot[u].0 == slot[v].0) {
            return Err(DrawingError::SameLayer(u, v));
        }
        Ok(TwoLayerDrawing {
            order_x,
            order_y,
            slot,
        })
    }

    pub fn order_x(&self) -> &[VertexId] {
        &self.order_x
    }

    pub fn order_y(&self) -> &[VertexId] {
        &self.order_y
    }

    pub fn part_x(&self) -> VertexSet {
        self.order_x.iter().copied().collect()
    }

    pub fn part_y(&self) -> VertexSet {
        self.order_y.iter().copied().collect()
    }

    /// Layer and 1-based position of `v`.
    pub fn slot(&self, v: VertexId) -> (Layer, usize) {
        self.slot[v]
    }

    /// Orients an edge as `(position on X, position on Y)`.
    fn ends(&self, (u, v): Edge) -> (usize, usize) {
        match (self.slot[u], self.slot[v]) {
            ((Layer::X, a), (Layer::Y, b)) | ((Layer::Y, b), (Layer::X, a)) => (a, b),
            _ => unreachable!("validated drawing has no same-layer edge"),
        }
    }

    pub fn to_json(&self) -> String {
        let doc = DrawingDoc {
            part_x: self.part_x().into_iter().collect(),
            part_y: self.part_y().into_iter().collect(),
            pos_x: self.order_x.clone(),
            pos_y: self.order_y.clone(),
        };
        serde_json::to_string(&doc).expect("drawing serializes")
    }

    pub fn from_json(text: &str, g: &Graph) -> Result<Self, DrawingError> {
        let doc: DrawingDoc =
            serde_json::from_str(text).map_err(|e| DrawingError::Json(e.to_string()))?;
        let as_set = |v: &[VertexId]| v.iter().copied().collect::<VertexSet>();
        if as_set(&doc.part_x) != as_set(&doc.pos_x)
            || as_set(&doc.part_y) != as_set(&doc.pos_y)
            || doc.part_x.len() != doc.pos_x.len()
            || doc.part_y.len() != doc.pos_y.len()
        {
            return Err(DrawingError::PartMismatch);
        }
        TwoLayerDrawing::new(g, doc.pos_x, doc.pos_y)
    }
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct DrawingDoc {
    #[serde(rename = "partX")]
    part_x: Vec<VertexId>,
    #[serde(rename = "partY")]
    part_y: Vec<VertexId>,
    #[serde(rename = "posX")]
    pos_x: Vec<VertexId>,
    #[serde(rename = "posY")]
    pos_y: Vec<VertexId>,
}

fn ends_cross((ax, ay): (usize, usize), (bx, by): (usize, usize)) -> bool {
    (ax < bx && ay > by) || (ax > bx && ay < by)
}

/// The crossing predicate for two edges of `g` drawn by `d`.
pub fn crosses(g: &Graph, d: &TwoLayerDrawing, e1: Edge, e2: Edge) -> Result<bool, DrawingError> {
    for (u, v) in [e1, e2] {
        if !g.has_edge(u, v) {
            return Err(DrawingError::EdgeNotInGraph(u, v));
        }
    }
    Ok(ends_cross(d.ends(e1), d.ends(e2)))
}

/// Crossing counts of every edge; `per_edge[i]` belongs to `g.edges()[i]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CrossingProfile {
    pub per_edge: Vec<usize>,
    pub max_count: usize,
    /// Pairs of edge indices `(i, j)` with `i < j`, in lexicographic order.
    pub crossing_pairs: Vec<(usize, usize)>,
}

impl CrossingProfile {
    pub fn by_edge(&self, g: &Graph) -> BTreeMap<Edge, usize> {
        g.edges()
            .iter()
            .copied()
            .zip(self.per_edge.iter().copied())
            .collect()
    }
}

/// Evaluates the crossing predicate on every pair of edges.
pub fn crossing_profile(g: &Graph, d: &TwoLayerDrawing) -> CrossingProfile {
    let ends: Vec<_> = g.edges().iter().map(|&e| d.ends(e)).collect();
    let mut per_edge = vec![0; ends.len()];
    let mut crossing_pairs = Vec::new();
    for i in 0..ends.len() {
        for j in i + 1..ends.len() {
            if ends_cross(ends[i], ends[j]) {
                per_edge[i] += 1;
                per_edge[j] += 1;
                crossing_pairs.push((i, j));
            }
        }
    }
    let max_count = per_edge.iter().copied().max().unwrap_or(0);
    CrossingProfile {
        per_edge,
        max_count,
        crossing_pairs,
    }
}

pub fn is_k_planar(g: &Graph, d: &TwoLayerDrawing, k: usize) -> bool {
    crossing_profile(g, d).max_count <= k
}

/// Odd columns on one layer, even columns on the other, each sorted by `(col, row)`.
pub fn lexicographic_drawing(g: &Graph) -> Result<TwoLayerDrawing, DrawingError> {
    let labels = g
        .labels()
        .ok_or(DrawingError::Json("graph has no coordinates".into()))?;
    let mut by_key: Vec<VertexId> = (0..g.n()).collect();
    by_key.sort_by_key(|&v| (labels[v].col, labels[v].row));
    let (odd, even) = by_key.into_iter().partition(|&v| labels[v].col % 2 == 1);
    TwoLayerDrawing::new(g, odd, even)
}

/// The drawing of `W_k` with at most `k` crossings per edge.
pub fn canonical_wall_drawing(w: &WallFamilyInstance) -> TwoLayerDrawing {
    lexicographic_drawing(&w.graph).expect("wall columns alternate parity along every edge")
}

/// Exact two-layer local crossing number by exhaustive search over layer orders.
///
/// Every orientation of every component is tried. X orders whose first vertex id
/// exceeds the last are skipped, since reversing both layers preserves crossings.
/// The witness is the first optimum in (orientation, X order, Y order) lexicographic
/// order within that reduced space.
pub fn min_local_crossings_bruteforce(g: &Graph) -> Result<(usize, TwoLayerDrawing), DrawingError> {
    let (first, _) = g.bipartition().map_err(|e| match e {
        GraphError::NotBipartite { cycle } => DrawingError::NotBipartite(cycle),
        other => DrawingError::Json(other.to_string()),
    })?;
    let flippable: Vec<Vec<VertexId>> = g
        .components()
        .into_iter()
        .skip(1)
        .filter(|c| c.len() > 1)
        .collect();
    let mut orientations = Vec::new();
    for mask in 0u64..(1 << flippable.len()) {
        let mut on_x = first.clone();
        for (i, comp) in flippable.iter().enumerate() {
            if mask >> i & 1 == 1 {
                for v in comp {
                    if !on_x.remove(v) {
                        on_x.insert(*v);
                    }
                }
            }
        }
        let xs: Vec<VertexId> = on_x.iter().copied().collect();
        let ys: Vec<VertexId> = (0..g.n()).filter(|v| !on_x.contains(v)).collect();
        if xs.len() > BRUTE_FORCE_LAYER_LIMIT || ys.len() > BRUTE_FORCE_LAYER_LIMIT {
            return Err(DrawingError::TooLarge(xs.len(), ys.len()));
        }
        orientations.push((xs, ys));
    }

    let bound = AtomicUsize::new(usize::MAX);
    let mut best: Option<(usize, Vec<VertexId>, Vec<VertexId>)> = None;
    for (xs, ys) in orientations {
        let x_orders: Vec<Vec<VertexId>> = permutations(&xs)
            .into_iter()
            .filter(|p| p.len() < 2 || p[0] < p[p.len() - 1])
            .collect();
        let results: Vec<Option<(usize, Vec<VertexId>)>> = x_orders
            .par_iter()
            .map(|xo| best_y_order(g, xo, &ys, &bound))
            .collect();
        for (xo, res) in x_orders.into_iter().zip(results) {
            if let Some((count, yo)) = res {
                if best.as_ref().is_none_or(|b| count < b.0) {
                    best = Some((count, xo, yo));
                }
            }
        }
    }
    let (count, xo, yo) = best.expect("at least one order pair is searched");
    Ok((count, TwoLayerDrawing::new(g, xo, yo)?))
}

/// Lexicographic permutations of a sorted slice.
fn permutations(items: &[VertexId]) -> Vec<Vec<VertexId>> {
    fn rec(rest: &mut Vec<VertexId>, cur: &mut Vec<VertexId>, out: &mut Vec<Vec<VertexId>>) {
        if rest.is_empty() {
            out.push(cur.clone());
            return;
        }
        for i in 0..rest.len() {
            let v = rest.remove(i);
            cur.push(v);
            rec(rest, cur, out);
            cur.pop();
            rest.insert(i, v);
        }
    }
    let mut out = Vec::new();
    rec(&mut items.to_vec(), &mut Vec::new(), &mut out);
    out
}

/// Depth-first search over Y orders for a fixed X order. Counts only grow as Y
/// vertices are appended, so partial orders at or above the best so far are cut.
/// The shared bound only cuts strictly worse branches so ties stay deterministic.
fn best_y_order(
    g: &Graph,
    x_order: &[VertexId],
    ys: &[VertexId],
    shared: &AtomicUsize,
) -> Option<(usize, Vec<VertexId>)> {
    let mut x_pos = vec![usize::MAX; g.n()];
    for (i, &x) in x_order.iter().enumerate() {
        x_pos[x] = i;
    }
    struct Search<'a> {
        g: &'a Graph,
        x_pos: Vec<usize>,
        ys: &'a [VertexId],
        used: Vec<bool>,
        order: Vec<VertexId>,
        // Crossing count per edge, keyed by (y, x).
        count: BTreeMap<Edge, usize>,
        best: Option<(usize, Vec<VertexId>)>,
        shared: &'a AtomicUsize,
    }
    impl Search<'_> {
        fn limit(&self) -> usize {
            let local = self.best.as_ref().map_or(usize::MAX, |b| b.0);
            let shared = self.shared.load(Ordering::Relaxed);
            local.min(shared.saturating_add(1))
        }
        fn run(&mut self, current_max: usize) {
            if current_max >= self.limit() {
                return;
            }
            if self.order.len() == self.ys.len() {
                self.best = Some((current_max, self.order.clone()));
                self.shared.fetch_min(current_max, Ordering::Relaxed);
                return;
            }
            for i in 0..self.ys.len() {
                if self.used[i] {
                    continue;
                }
                let y = self.ys[i];
                // Every placed y' sits left of y: (x, y) crosses (x', y') iff x is left of x'.
                let mut bumps = Vec::new();
                for &x in self.g.neighbors(y) {
                    for &yp in &self.order {
                        for &xp in self.g.neighbors(yp) {
                            if self.x_pos[x] < self.x_pos[xp] {
                                bumps.push((y, x));
                                bumps.push((yp, xp));
                            }
                        }
                    }
                }
                let mut new_max = current_max;
                for &e in &bumps {
                    let c = self.count.entry(e).or_insert(0);
                    *c += 1;
                    new_max = new_max.max(*c);
                }
                self.used[i] = true;
                self.order.push(y);
                self.run(new_max);
                self.order.pop();
                self.used[i] = false;
                for e in &bumps {
                    *self.count.get_mut(e).unwrap() -= 1;
                }
            }
        }
    }
    let mut s = Search {
        g,
        x_pos,
        ys,
        used: vec![false; ys.len()],
        order: Vec::new(),
        count: BTreeMap::new(),
        best: None,
        shared,
    };
    s.run(0);
    s.best
}
