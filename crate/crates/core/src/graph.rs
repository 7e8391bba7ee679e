//! Undirected simple graphs with dense vertex ids and optional grid coordinates.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt::{self, Write as _};

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Dense vertex index in `0..n`.
pub type VertexId = usize;

/// Ordered vertex set; ordering keeps every output deterministic.
pub type VertexSet = BTreeSet<VertexId>;

/// Undirected edge stored with `u < v`.
pub type Edge = (VertexId, VertexId);

/// Grid coordinate of a vertex. Both components are 1-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Coord {
    pub row: u32,
    pub col: u32,
}

impl Coord {
    pub const fn new(row: u32, col: u32) -> Self {
        Coord { row, col }
    }
}

impl fmt::Display for Coord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("edge ({0}, {1}) references a vertex outside 0..{2}")]
    EndpointOutOfRange(VertexId, VertexId, usize),
    #[error("self-loop on vertex {0}")]
    SelfLoop(VertexId),
    #[error("edge ({0}, {1}) listed more than once")]
    ParallelEdge(VertexId, VertexId),
    #[error("label table has {got} entries for {n} vertices")]
    LabelCount { n: usize, got: usize },
    #[error("label for vertex {0} given more than once")]
    DuplicateLabelId(VertexId),
    #[error("coordinate {0} is used by more than one vertex")]
    DuplicateCoord(Coord),
    #[error("coordinate {0} has a zero component")]
    ZeroCoord(Coord),
    #[error("graph is not bipartite; odd cycle {cycle:?}")]
    NotBipartite { cycle: Vec<VertexId> },
    #[error("invalid partition: {0}")]
    PartInvalid(PartError),
    #[error("malformed graph JSON: {0}")]
    Json(String),
}

/// Witness for a partition that cannot be contracted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PartError {
    Empty {
        part: usize,
    },
    OutOfRange {
        part: usize,
        vertex: VertexId,
    },
    Overlap {
        vertex: VertexId,
        first: usize,
        second: usize,
    },
    Uncovered {
        vertex: VertexId,
    },
    Disconnected {
        part: usize,
    },
}

impl fmt::Display for PartError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PartError::Empty { part } => write!(f, "part {part} is empty"),
            PartError::OutOfRange { part, vertex } => {
                write!(f, "part {part} contains unknown vertex {vertex}")
            }
            PartError::Overlap {
                vertex,
                first,
                second,
            } => {
                write!(f, "vertex {vertex} lies in parts {first} and {second}")
            }
            PartError::Uncovered { vertex } => write!(f, "vertex {vertex} is in no part"),
            PartError::Disconnected { part } => write!(f, "part {part} is not connected"),
        }
    }
}

/// An immutable undirected simple graph.
///
/// Edges are kept normalized (`u < v`) and sorted, adjacency lists are sorted.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<Edge>,
    adj: Vec<Vec<VertexId>>,
    labels: Option<Vec<Coord>>,
}

impl Graph {
    /// Builds a graph, rejecting self-loops, parallel edges and bad endpoints.
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self, GraphError> {
        let mut norm = Vec::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(GraphError::EndpointOutOfRange(u, v, n));
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            norm.push((u.min(v), u.max(v)));
        }
        norm.sort_unstable();
        if let Some(w) = norm.windows(2).find(|w| w[0] == w[1]) {
            return Err(GraphError::ParallelEdge(w[0].0, w[0].1));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in &norm {
            adj[u].push(v);
            adj[v].push(u);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(Graph {
            n,
            edges: norm,
            adj,
            labels: None,
        })
    }

    /// Returns a copy carrying the given coordinate labels (one per vertex, injective).
    pub fn with_labels(mut self, labels: Vec<Coord>) -> Result<Self, GraphError> {
        if labels.len() != self.n {
            return Err(GraphError::LabelCount {
                n: self.n,
                got: labels.len(),
            });
        }
        let mut seen = BTreeSet::new();
        for &c in &labels {
            if c.row == 0 || c.col == 0 {
                return Err(GraphError::ZeroCoord(c));
            }
            if !seen.insert(c) {
                return Err(GraphError::DuplicateCoord(c));
            }
        }
        self.labels = Some(labels);
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    /// Edges in lexicographic order, each with `u < v`.
    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: VertexId) -> &[VertexId] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: VertexId, v: VertexId) -> bool {
        u < self.n && v < self.n && self.adj[u].binary_search(&v).is_ok()
    }

    /// Position of `{u, v}` in [`Graph::edges`].
    pub fn edge_index(&self, u: VertexId, v: VertexId) -> Option<usize> {
        self.edges.binary_search(&(u.min(v), u.max(v))).ok()
    }

    pub fn labels(&self) -> Option<&[Coord]> {
        self.labels.as_deref()
    }

    pub fn label(&self, v: VertexId) -> Option<Coord> {
        self.labels.as_ref().map(|l| l[v])
    }

    /// Reverse lookup from coordinate to vertex id.
    pub fn coord_index(&self) -> BTreeMap<Coord, VertexId> {
        self.labels
            .iter()
            .flatten()
            .enumerate()
            .map(|(v, &c)| (c, v))
            .collect()
    }

    /// True iff the subgraph induced by `s` is connected. The empty set counts as connected.
    pub fn is_connected(&self, s: &VertexSet) -> bool {
        let Some(&start) = s.iter().next() else {
            return true;
        };
        if start >= self.n || s.iter().any(|&v| v >= self.n) {
            return false;
        }
        let mut seen = BTreeSet::from([start]);
        let mut queue = VecDeque::from([start]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if s.contains(&w) && seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
        seen.len() == s.len()
    }

    /// Connected components, each sorted, ordered by smallest member.
    pub fn components(&self) -> Vec<Vec<VertexId>> {
        let mut comp = vec![usize::MAX; self.n];
        let mut out = Vec::new();
        for s in 0..self.n {
            if comp[s] != usize::MAX {
                continue;
            }
            let id = out.len();
            comp[s] = id;
            let mut members = vec![s];
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        queue.push_back(w);
                    }
                }
            }
            members.sort_unstable();
            out.push(members);
        }
        out
    }

    /// Proper 2-colouring. In every component the smallest id lands in the first set.
    pub fn bipartition(&self) -> Result<(VertexSet, VertexSet), GraphError> {
        let mut color = vec![u8::MAX; self.n];
        let mut parent = vec![usize::MAX; self.n];
        for s in 0..self.n {
            if color[s] != u8::MAX {
                continue;
            }
            color[s] = 0;
            let mut queue = VecDeque::from([s]);
            while let Some(u) = queue.pop_front() {
                for &w in &self.adj[u] {
                    if color[w] == u8::MAX {
                        color[w] = 1 - color[u];
                        parent[w] = u;
                        queue.push_back(w);
                    } else if color[w] == color[u] {
                        return Err(GraphError::NotBipartite {
                            cycle: odd_cycle(&parent, u, w),
                        });
                    }
                }
            }
        }
        let first = (0..self.n).filter(|&v| color[v] == 0).collect();
        let second = (0..self.n).filter(|&v| color[v] == 1).collect();
        Ok((first, second))
    }

    /// Quotient graph of a partition into connected parts; part `i` becomes vertex `i`.
    pub fn contract(&self, parts: &[VertexSet]) -> Result<Graph, GraphError> {
        let owner = self.part_owner(parts).map_err(GraphError::PartInvalid)?;
        let mut quotient = BTreeSet::new();
        for &(u, v) in &self.edges {
            let (a, b) = (owner[u], owner[v]);
            if a != b {
                quotient.insert((a.min(b), a.max(b)));
            }
        }
        Graph::new(parts.len(), quotient)
    }

    fn part_owner(&self, parts: &[VertexSet]) -> Result<Vec<usize>, PartError> {
        let mut owner = vec![usize::MAX; self.n];
        for (i, part) in parts.iter().enumerate() {
            if part.is_empty() {
                return Err(PartError::Empty { part: i });
            }
            for &v in part {
                if v >= self.n {
                    return Err(PartError::OutOfRange { part: i, vertex: v });
                }
                if owner[v] != usize::MAX {
                    return Err(PartError::Overlap {
                        vertex: v,
                        first: owner[v],
                        second: i,
                    });
                }
                owner[v] = i;
            }
        }
        if let Some(v) = owner.iter().position(|&o| o == usize::MAX) {
            return Err(PartError::Uncovered { vertex: v });
        }
        if let Some(i) = parts.iter().position(|p| !self.is_connected(p)) {
            return Err(PartError::Disconnected { part: i });
        }
        Ok(owner)
    }

    /// Same vertices and labels, keeping only the edges accepted by `keep`.
    pub fn edge_subgraph(&self, mut keep: impl FnMut(Edge) -> bool) -> Graph {
        let edges: Vec<Edge> = self.edges.iter().copied().filter(|&e| keep(e)).collect();
        let mut g = Graph::new(self.n, edges).expect("subset of a simple graph");
        g.labels = self.labels.clone();
        g
    }

    /// Graphviz rendering for debugging.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in 0..self.n {
            match self.label(v) {
                Some(c) => writeln!(out, "  {v} [label=\"{},{}\"];", c.row, c.col),
                None => writeln!(out, "  {v};"),
            }
            .unwrap();
        }
        for &(u, v) in &self.edges {
            writeln!(out, "  {u} -- {v};").unwrap();
        }
        out.push_str("}\n");
        out
    }

    pub fn to_json(&self) -> String {
        let doc = GraphDoc {
            edges: self.edges.iter().map(|&(u, v)| [u, v]).collect(),
            labels: self.labels.as_ref().map(|l| {
                l.iter()
                    .enumerate()
                    .map(|(id, c)| LabelDoc {
                        col: c.col,
                        id,
                        row: c.row,
                    })
                    .collect()
            }),
            n: self.n,
        };
        serde_json::to_string(&doc).expect("graph serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, GraphError> {
        let doc: GraphDoc =
            serde_json::from_str(text).map_err(|e| GraphError::Json(e.to_string()))?;
        let g = Graph::new(doc.n, doc.edges.iter().map(|e| (e[0], e[1])))?;
        match doc.labels {
            None => Ok(g),
            Some(entries) => {
                if entries.len() != doc.n {
                    return Err(GraphError::LabelCount {
                        n: doc.n,
                        got: entries.len(),
                    });
                }
                let mut table = vec![None; doc.n];
                for e in entries {
                    if e.id >= doc.n {
                        return Err(GraphError::Json(format!("label id {} out of range", e.id)));
                    }
                    if table[e.id].replace(Coord::new(e.row, e.col)).is_some() {
                        return Err(GraphError::DuplicateLabelId(e.id));
                    }
                }
                g.with_labels(table.into_iter().map(Option::unwrap).collect())
            }
        }
    }
}

fn odd_cycle(parent: &[usize], u: VertexId, w: VertexId) -> Vec<VertexId> {
    let path_to_root = |mut v: VertexId| {
        let mut path = vec![v];
        while parent[v] != usize::MAX {
            v = parent[v];
            path.push(v);
        }
        path
    };
    let pu = path_to_root(u);
    let pw = path_to_root(w);
    let on_w: BTreeSet<_> = pw.iter().copied().collect();
    let meet = *pu.iter().find(|v| on_w.contains(v)).expect("same BFS tree");
    let mut cycle: Vec<_> = pu.iter().copied().take_while(|&v| v != meet).collect();
    cycle.push(meet);
    let tail: Vec<_> = pw.iter().copied().take_while(|&v| v != meet).collect();
    cycle.extend(tail.into_iter().rev());
    cycle
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct GraphDoc {
    edges: Vec<[VertexId; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    labels: Option<Vec<LabelDoc>>,
    n: usize,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct LabelDoc {
    col: u32,
    id: VertexId,
    row: u32,
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        Graph::new(n, (1..n).map(|i| (i - 1, i))).unwrap()
    }

    fn set(v: &[VertexId]) -> VertexSet {
        v.iter().copied().collect()
    }

    #[test]
    fn rejects_bad_edges() {
        assert_eq!(Graph::new(2, [(0, 0)]), Err(GraphError::SelfLoop(0)));
        assert_eq!(
            Graph::new(2, [(0, 1), (1, 0)]),
            Err(GraphError::ParallelEdge(0, 1))
        );
        assert!(matches!(
            Graph::new(2, [(0, 2)]),
            Err(GraphError::EndpointOutOfRange(..))
        ));
    }

    #[test]
    fn labels_must_be_injective() {
        let g = path(2);
        let c = Coord::new(1, 1);
        assert_eq!(
            g.clone().with_labels(vec![c, c]),
            Err(GraphError::DuplicateCoord(c))
        );
        assert!(g.with_labels(vec![c, Coord::new(1, 2)]).is_ok());
    }

    #[test]
    fn bipartition_single_edge() {
        let (a, b) = path(2).bipartition().unwrap();
        assert_eq!((a, b), (set(&[0]), set(&[1])));
    }

    #[test]
    fn triangle_is_not_bipartite() {
        let g = Graph::new(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        match g.bipartition() {
            Err(GraphError::NotBipartite { cycle }) => {
                assert_eq!(cycle.len() % 2, 1);
                for i in 0..cycle.len() {
                    assert!(g.has_edge(cycle[i], cycle[(i + 1) % cycle.len()]));
                }
            }
            other => panic!("expected odd cycle, got {other:?}"),
        }
    }

    #[test]
    fn contract_path_pair() {
        let q = path(3).contract(&[set(&[0, 1]), set(&[2])]).unwrap();
        assert_eq!(q.n(), 2);
        assert_eq!(q.edges(), &[(0, 1)]);
    }

    #[test]
    fn contract_rejects_disconnected_part() {
        let c4 = Graph::new(4, [(0, 1), (1, 2), (2, 3), (0, 3)]).unwrap();
        let err = c4.contract(&[set(&[0, 2]), set(&[1, 3])]).unwrap_err();
        assert_eq!(
            err,
            GraphError::PartInvalid(PartError::Disconnected { part: 0 })
        );
    }

    #[test]
    fn contract_rejects_overlap_and_gaps() {
        let g = path(3);
        assert!(matches!(
            g.contract(&[set(&[0, 1]), set(&[1, 2])]),
            Err(GraphError::PartInvalid(PartError::Overlap {
                vertex: 1,
                ..
            }))
        ));
        assert!(matches!(
            g.contract(&[set(&[0, 1])]),
            Err(GraphError::PartInvalid(PartError::Uncovered { vertex: 2 }))
        ));
    }

    #[test]
    fn connectivity_conventions() {
        let g = Graph::new(3, []).unwrap();
        assert!(g.is_connected(&set(&[])));
        assert!(g.is_connected(&set(&[1])));
        assert!(!g.is_connected(&set(&[0, 1])));
    }

    #[test]
    fn json_is_sorted_and_round_trips() {
        let g = Graph::new(3, [(2, 1), (1, 0)])
            .unwrap()
            .with_labels(vec![Coord::new(1, 1), Coord::new(1, 2), Coord::new(2, 2)])
            .unwrap();
        let text = g.to_json();
        assert!(text.starts_with(r#"{"edges":[[0,1],[1,2]],"labels":[{"col":1,"id":0,"row":1}"#));
        assert_eq!(Graph::from_json(&text).unwrap(), g);
    }

    #[test]
    fn json_rejects_partial_labels() {
        let text = r#"{"n":2,"edges":[[0,1]],"labels":[{"id":0,"row":1,"col":1}]}"#;
        assert!(matches!(
            Graph::from_json(text),
            Err(GraphError::LabelCount { .. })
        ));
    }
}
