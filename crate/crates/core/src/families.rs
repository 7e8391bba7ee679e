//! The grid family `G_k`, the wall family `W_k` and the two-vertex path for `k = 0`.
//!
//! `G_k` has `k + 2` rows and `3k + 6` columns. Column edges join consecutive
//! rows in every column; row edges exist only in rows `1..=k`.
//!
//! `W_k` starts from `k` rows of `ell = 4k(3k + 6)` vertices joined into paths.
//! Every block of `4k` columns receives one diagonal edge between each pair of
//! consecutive rows and a two-edge hair hanging below row `k`. Contracting the
//! blocks of each row recovers `G_k`.

use std::collections::BTreeMap;

use thiserror::Error;

use crate::graph::{Coord, Edge, Graph, VertexId, VertexSet};
use crate::minors::MinorModel;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FamilyError {
    #[error("family parameter k must be at least 1, got {0}")]
    InvalidK(u32),
    #[error("row {0} is outside 1..={1}")]
    RowOutOfRange(u32, u32),
    #[error("column {0} is outside 1..={1}")]
    ColumnOutOfRange(u32, u32),
}

/// How an edge sits relative to the coordinate grid.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum EdgeKind {
    /// Both endpoints in the same row.
    Row,
    /// Both endpoints in the same column.
    Column,
    /// Diagonal connectors and hair edges of the wall.
    NonRow,
}

/// Number of columns of `G_k`.
pub fn grid_columns(k: u32) -> u32 {
    3 * k + 6
}

/// Row length of `W_k`.
pub fn wall_row_length(k: u32) -> u32 {
    4 * k * grid_columns(k)
}

/// Row-major id of `(row, col)` in `G_k`.
pub fn grid_id(k: u32, c: Coord) -> VertexId {
    ((c.row - 1) * grid_columns(k) + (c.col - 1)) as VertexId
}

/// Shared accessors for coordinate-labelled family instances.
pub trait GridLike {
    fn k(&self) -> u32;
    fn graph(&self) -> &Graph;
    fn num_rows(&self) -> u32;
    fn num_cols(&self) -> u32;
    fn vertex(&self, c: Coord) -> Option<VertexId>;

    fn row(&self, x: u32) -> Result<VertexSet, FamilyError> {
        if x == 0 || x > self.num_rows() {
            return Err(FamilyError::RowOutOfRange(x, self.num_rows()));
        }
        Ok(labelled(self.graph())
            .filter(|(_, c)| c.row == x)
            .map(|(v, _)| v)
            .collect())
    }

    fn column(&self, y: u32) -> Result<VertexSet, FamilyError> {
        if y == 0 || y > self.num_cols() {
            return Err(FamilyError::ColumnOutOfRange(y, self.num_cols()));
        }
        Ok(labelled(self.graph())
            .filter(|(_, c)| c.col == y)
            .map(|(v, _)| v)
            .collect())
    }

    fn edge_kind(&self, (u, v): Edge) -> EdgeKind {
        classify_edge(self.graph(), (u, v))
    }
}

/// Classifies an edge of a labelled graph by its endpoint coordinates.
pub fn classify_edge(g: &Graph, (u, v): Edge) -> EdgeKind {
    let (a, b) = (
        g.label(u).expect("labelled graph"),
        g.label(v).expect("labelled graph"),
    );
    if a.row == b.row {
        EdgeKind::Row
    } else if a.col == b.col {
        EdgeKind::Column
    } else {
        EdgeKind::NonRow
    }
}

fn labelled(g: &Graph) -> impl Iterator<Item = (VertexId, Coord)> + '_ {
    g.labels().into_iter().flatten().copied().enumerate()
}

#[derive(Clone, Debug)]
pub struct GridFamilyInstance {
    pub k: u32,
    pub graph: Graph,
}

/// Builds `G_k` with row-major vertex numbering.
pub fn gen_grid(k: u32) -> Result<GridFamilyInstance, FamilyError> {
    if k < 1 {
        return Err(FamilyError::InvalidK(k));
    }
    let (rows, cols) = (k + 2, grid_columns(k));
    let id = |x: u32, y: u32| grid_id(k, Coord::new(x, y));
    let mut edges = Vec::new();
    for x in 1..=k + 1 {
        for y in 1..=cols {
            edges.push((id(x, y), id(x + 1, y)));
        }
    }
    for x in 1..=k {
        for y in 1..cols {
            edges.push((id(x, y), id(x, y + 1)));
        }
    }
    let labels = (1..=rows)
        .flat_map(|x| (1..=cols).map(move |y| Coord::new(x, y)))
        .collect();
    let graph = Graph::new((rows * cols) as usize, edges)
        .and_then(|g| g.with_labels(labels))
        .expect("grid construction is well formed");
    Ok(GridFamilyInstance { k, graph })
}

impl GridLike for GridFamilyInstance {
    fn k(&self) -> u32 {
        self.k
    }
    fn graph(&self) -> &Graph {
        &self.graph
    }
    fn num_rows(&self) -> u32 {
        self.k + 2
    }
    fn num_cols(&self) -> u32 {
        grid_columns(self.k)
    }
    fn vertex(&self, c: Coord) -> Option<VertexId> {
        (c.row >= 1 && c.row <= self.num_rows() && c.col >= 1 && c.col <= self.num_cols())
            .then(|| grid_id(self.k, c))
    }
}

/// The pendant path `attach - mid - tip` added below row `k` once per column block.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Hair {
    pub attach: Coord,
    pub mid: Coord,
    pub tip: Coord,
}

#[derive(Clone, Debug)]
pub struct WallFamilyInstance {
    pub k: u32,
    pub ell: u32,
    pub graph: Graph,
    /// Hair `y - 1` belongs to column block `y`.
    pub hairs: Vec<Hair>,
    index: BTreeMap<Coord, VertexId>,
}

/// Builds `W_k`: `k` long rows, then per block the diagonal connectors and a hair.
pub fn gen_wall(k: u32) -> Result<WallFamilyInstance, FamilyError> {
    if k < 1 {
        return Err(FamilyError::InvalidK(k));
    }
    let ell = wall_row_length(k);
    let blocks = grid_columns(k);
    let mut labels: Vec<Coord> = (1..=k)
        .flat_map(|x| (1..=ell).map(move |y| Coord::new(x, y)))
        .collect();
    let row_id = |c: Coord| ((c.row - 1) * ell + (c.col - 1)) as VertexId;
    let mut edges: Vec<Edge> = Vec::new();
    for x in 1..=k {
        for y in 1..ell {
            edges.push((row_id(Coord::new(x, y)), row_id(Coord::new(x, y + 1))));
        }
    }
    let mut hairs = Vec::with_capacity(blocks as usize);
    for y in 1..=blocks {
        let base = 4 * k * (y - 1);
        for x in 1..k {
            let from = Coord::new(x, base + 4 * x - 3);
            let to = Coord::new(x + 1, base + 4 * x - 2);
            edges.push((row_id(from), row_id(to)));
        }
        hairs.push(Hair {
            attach: Coord::new(k, 4 * k * y - 3),
            mid: Coord::new(k + 1, 4 * k * y - 2),
            tip: Coord::new(k + 2, 4 * k * y - 1),
        });
    }
    // Hair vertices follow the long rows: all mids, then all tips.
    let mid_base = labels.len();
    let tip_base = mid_base + hairs.len();
    labels.extend(hairs.iter().map(|h| h.mid));
    labels.extend(hairs.iter().map(|h| h.tip));
    for (i, h) in hairs.iter().enumerate() {
        edges.push((row_id(h.attach), mid_base + i));
        edges.push((mid_base + i, tip_base + i));
    }
    let graph = Graph::new(labels.len(), edges)
        .and_then(|g| g.with_labels(labels))
        .expect("wall construction is well formed");
    let index = graph.coord_index();
    Ok(WallFamilyInstance {
        k,
        ell,
        graph,
        hairs,
        index,
    })
}

impl WallFamilyInstance {
    /// Branch sets realising `G_k` as a minor: block `y` of row `x` maps to `(x, y)`,
    /// and the hair vertices of block `y` map to `(k + 1, y)` and `(k + 2, y)`.
    pub fn branch_sets(&self) -> MinorModel {
        let k = self.k;
        let mut sets = BTreeMap::new();
        for y in 1..=grid_columns(k) {
            for x in 1..=k {
                let block = (4 * k * (y - 1) + 1..=4 * k * y)
                    .map(|c| self.index[&Coord::new(x, c)])
                    .collect();
                sets.insert(grid_id(k, Coord::new(x, y)), block);
            }
            let hair = self.hairs[(y - 1) as usize];
            sets.insert(
                grid_id(k, Coord::new(k + 1, y)),
                VertexSet::from([self.index[&hair.mid]]),
            );
            sets.insert(
                grid_id(k, Coord::new(k + 2, y)),
                VertexSet::from([self.index[&hair.tip]]),
            );
        }
        MinorModel::new(sets)
    }
}

impl GridLike for WallFamilyInstance {
    fn k(&self) -> u32 {
        self.k
    }
    fn graph(&self) -> &Graph {
        &self.graph
    }
    fn num_rows(&self) -> u32 {
        self.k + 2
    }
    fn num_cols(&self) -> u32 {
        self.ell
    }
    fn vertex(&self, c: Coord) -> Option<VertexId> {
        self.index.get(&c).copied()
    }
}

/// The answer for `k = 0`: a single edge.
pub fn gen_k0() -> Graph {
    Graph::new(2, [(0, 1)])
        .and_then(|g| g.with_labels(vec![Coord::new(1, 1), Coord::new(2, 1)]))
        .expect("K2")
}

#[cfg(test)]
mod tests {
    use super::*;

    fn grid_edge_count(k: u32) -> usize {
        ((k + 1) * (3 * k + 6) + k * (3 * k + 5)) as usize
    }

    fn wall_vertex_count(k: u32) -> usize {
        ((3 * k + 6) * (4 * k * k + 2)) as usize
    }

    fn wall_edge_count(k: u32) -> usize {
        (k * (wall_row_length(k) - 1) + (3 * k + 6) * (k + 1)) as usize
    }

    #[test]
    fn zero_is_rejected() {
        assert_eq!(gen_grid(0).unwrap_err(), FamilyError::InvalidK(0));
        assert_eq!(gen_wall(0).unwrap_err(), FamilyError::InvalidK(0));
    }

    #[test]
    fn grid_one_is_a_tree() {
        let g = gen_grid(1).unwrap();
        assert_eq!((g.graph.n(), g.graph.m()), (27, 26));
        let kinds: Vec<_> = g.graph.edges().iter().map(|&e| g.edge_kind(e)).collect();
        assert_eq!(kinds.iter().filter(|&&k| k == EdgeKind::Column).count(), 18);
        assert_eq!(kinds.iter().filter(|&&k| k == EdgeKind::Row).count(), 8);
        assert_eq!(g.graph.components().len(), 1);
    }

    #[test]
    fn grid_two_counts() {
        let g = gen_grid(2).unwrap();
        assert_eq!((g.graph.n(), g.graph.m()), (48, 58));
    }

    // Enumerates the two edge comprehensions directly on coordinates.
    #[test]
    fn grid_edges_match_comprehensions() {
        for k in 1..=4 {
            let g = gen_grid(k).unwrap();
            let mut expected = Vec::new();
            for x in 1..=k + 1 {
                for y in 1..=3 * k + 6 {
                    expected.push((Coord::new(x, y), Coord::new(x + 1, y)));
                }
            }
            for x in 1..=k {
                for y in 1..=3 * k + 5 {
                    expected.push((Coord::new(x, y), Coord::new(x, y + 1)));
                }
            }
            assert_eq!(expected.len(), grid_edge_count(k));
            for (a, b) in expected {
                let (u, v) = (g.vertex(a).unwrap(), g.vertex(b).unwrap());
                assert!(g.graph.has_edge(u, v), "missing {a}-{b}");
            }
            assert_eq!(g.graph.m(), grid_edge_count(k));
        }
    }

    #[test]
    fn cardinalities_for_small_k() {
        for k in 1..=6 {
            let g = gen_grid(k).unwrap();
            assert_eq!(g.graph.n(), ((k + 2) * (3 * k + 6)) as usize);
            assert_eq!(g.graph.m(), grid_edge_count(k));
            assert!(g.graph.max_degree() <= 4);
            let w = gen_wall(k).unwrap();
            assert_eq!(w.graph.n(), wall_vertex_count(k));
            assert_eq!(w.graph.m(), wall_edge_count(k));
            assert_eq!(w.hairs.len(), (3 * k + 6) as usize);
            assert!(w.graph.max_degree() <= 4);
        }
    }

    #[test]
    fn wall_small_counts() {
        let w1 = gen_wall(1).unwrap();
        assert_eq!((w1.graph.n(), w1.graph.m(), w1.hairs.len()), (54, 53, 9));
        let w2 = gen_wall(2).unwrap();
        assert_eq!((w2.graph.n(), w2.graph.m()), (216, 226));
    }

    #[test]
    fn hair_positions() {
        for k in 1..=6 {
            let w = gen_wall(k).unwrap();
            for (i, h) in w.hairs.iter().enumerate() {
                let y = i as u32 + 1;
                assert_eq!(h.attach, Coord::new(k, 4 * k * y - 3));
                assert_eq!(h.mid, Coord::new(k + 1, 4 * k * y - 2));
                assert_eq!(h.tip, Coord::new(k + 2, 4 * k * y - 1));
                assert!(h.attach.col >= 1 && h.tip.col <= w.ell);
            }
        }
    }

    #[test]
    fn connector_indices_stay_in_range() {
        for k in 1..=6u32 {
            let ell = wall_row_length(k);
            for y in 1..=3 * k + 6 {
                for x in 1..k {
                    assert!(4 * k * (y - 1) + 4 * x - 2 <= ell);
                }
                assert!(4 * k * y >= 3);
            }
        }
    }

    #[test]
    fn wall_parts_are_column_parity() {
        for k in 1..=6 {
            let w = gen_wall(k).unwrap();
            let (a, b) = w.graph.bipartition().unwrap();
            let labels = w.graph.labels().unwrap();
            assert!(a.iter().all(|&v| labels[v].col % 2 == 1));
            assert!(b.iter().all(|&v| labels[v].col.is_multiple_of(2)));
            assert_eq!(a.len() + b.len(), w.graph.n());
        }
    }

    #[test]
    fn rows_and_columns() {
        let g = gen_grid(1).unwrap();
        assert_eq!(g.row(1).unwrap().len(), 9);
        assert_eq!(g.column(1).unwrap().len(), 3);
        assert_eq!(g.row(4).unwrap_err(), FamilyError::RowOutOfRange(4, 3));
        assert_eq!(
            g.column(10).unwrap_err(),
            FamilyError::ColumnOutOfRange(10, 9)
        );
        let w = gen_wall(1).unwrap();
        let non_row = w
            .graph
            .edges()
            .iter()
            .filter(|&&e| w.edge_kind(e) == EdgeKind::NonRow);
        assert_eq!(non_row.count(), 18);
        assert_eq!(w.row(1).unwrap().len(), 36);
        assert_eq!(w.row(3).unwrap().len(), 9);
    }

    #[test]
    fn branch_sets_at_k1() {
        let w = gen_wall(1).unwrap();
        let model = w.branch_sets();
        let ids = |cs: &[(u32, u32)]| -> VertexSet {
            cs.iter()
                .map(|&(r, c)| w.vertex(Coord::new(r, c)).unwrap())
                .collect()
        };
        assert_eq!(
            model.sets[&grid_id(1, Coord::new(1, 1))],
            ids(&[(1, 1), (1, 2), (1, 3), (1, 4)])
        );
        assert_eq!(model.sets[&grid_id(1, Coord::new(2, 1))], ids(&[(2, 2)]));
        assert_eq!(model.sets[&grid_id(1, Coord::new(3, 1))], ids(&[(3, 3)]));
        let covered: usize = model.sets.values().map(|s| s.len()).sum();
        assert_eq!(covered, w.graph.n());
    }

    #[test]
    fn k0_is_single_edge() {
        let g = gen_k0();
        assert_eq!((g.n(), g.edges()), (2, &[(0, 1)][..]));
    }
}
