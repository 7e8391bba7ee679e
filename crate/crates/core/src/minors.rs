//! Minor models given by explicit branch sets, and coordinate-guided isomorphism.

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{Edge, Graph, GraphError, VertexId, VertexSet};

/// Maps each pattern vertex to its branch set in the host.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MinorModel {
    pub sets: BTreeMap<VertexId, VertexSet>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MinorViolation {
    #[error("pattern vertex {0} has no branch set")]
    MissingSet(VertexId),
    #[error("branch set given for unknown pattern vertex {0}")]
    UnknownPatternVertex(VertexId),
    #[error("branch set of {0} is empty")]
    EmptySet(VertexId),
    #[error("branch set of {pattern} contains unknown host vertex {host}")]
    HostOutOfRange { pattern: VertexId, host: VertexId },
    #[error("host vertex {host} lies in the branch sets of {first} and {second}")]
    OverlappingSets {
        host: VertexId,
        first: VertexId,
        second: VertexId,
    },
    #[error("branch set of {0} is not connected in the host")]
    DisconnectedSet(VertexId),
    #[error("no host edge realises pattern edge ({0}, {1})")]
    MissingEdge(VertexId, VertexId),
}

#[derive(Debug, Error)]
pub enum MinorError {
    #[error("both graphs need coordinate labels")]
    MissingLabels,
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed minor model JSON: {0}")]
    Json(String),
}

/// One realising host edge per pattern edge, in pattern edge order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MinorCertificate {
    pub realised_by: Vec<(Edge, Edge)>,
}

impl MinorModel {
    pub fn new(sets: BTreeMap<VertexId, VertexSet>) -> Self {
        MinorModel { sets }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("model serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, MinorError> {
        serde_json::from_str(text).map_err(|e| MinorError::Json(e.to_string()))
    }

    /// Contracts every branch set; quotient vertex `i` is the `i`-th pattern vertex in
    /// key order and inherits that pattern vertex's label when the pattern has labels.
    pub fn contract(&self, host: &Graph, pattern: &Graph) -> Result<Graph, MinorError> {
        let parts: Vec<VertexSet> = self.sets.values().cloned().collect();
        let quotient = host.contract(&parts)?;
        match pattern.labels() {
            Some(labels) => {
                let mut mapped = Vec::with_capacity(self.sets.len());
                for &p in self.sets.keys() {
                    mapped.push(*labels.get(p).ok_or(MinorError::MissingLabels)?);
                }
                Ok(quotient.with_labels(mapped)?)
            }
            None => Ok(quotient),
        }
    }
}

/// Checks the branch sets and returns a realising host edge for every pattern edge.
pub fn verify_minor(
    pattern: &Graph,
    host: &Graph,
    model: &MinorModel,
) -> Result<MinorCertificate, MinorViolation> {
    if let Some(p) = (0..pattern.n()).find(|p| !model.sets.contains_key(p)) {
        return Err(MinorViolation::MissingSet(p));
    }
    if let Some(&p) = model.sets.keys().find(|&&p| p >= pattern.n()) {
        return Err(MinorViolation::UnknownPatternVertex(p));
    }
    let mut owner: Vec<Option<VertexId>> = vec![None; host.n()];
    for (&p, set) in &model.sets {
        if set.is_empty() {
            return Err(MinorViolation::EmptySet(p));
        }
        for &h in set {
            let slot = owner.get_mut(h).ok_or(MinorViolation::HostOutOfRange {
                pattern: p,
                host: h,
            })?;
            if let Some(first) = *slot {
                return Err(MinorViolation::OverlappingSets {
                    host: h,
                    first,
                    second: p,
                });
            }
            *slot = Some(p);
        }
    }
    if let Some((&p, _)) = model.sets.iter().find(|(_, s)| !host.is_connected(s)) {
        return Err(MinorViolation::DisconnectedSet(p));
    }
    let mut first_edge: BTreeMap<Edge, Edge> = BTreeMap::new();
    for &(u, v) in host.edges() {
        if let (Some(a), Some(b)) = (owner[u], owner[v]) {
            if a != b {
                first_edge.entry((a.min(b), a.max(b))).or_insert((u, v));
            }
        }
    }
    let realised_by = pattern
        .edges()
        .iter()
        .map(|&e| {
            first_edge
                .get(&e)
                .map(|&h| (e, h))
                .ok_or(MinorViolation::MissingEdge(e.0, e.1))
        })
        .collect::<Result<_, _>>()?;
    Ok(MinorCertificate { realised_by })
}

/// True iff matching vertices by coordinate is an isomorphism from `a` onto `b`.
pub fn labeled_isomorphic(a: &Graph, b: &Graph) -> Result<bool, MinorError> {
    let (Some(la), Some(_)) = (a.labels(), b.labels()) else {
        return Err(MinorError::MissingLabels);
    };
    if a.n() != b.n() || a.m() != b.m() {
        return Ok(false);
    }
    let index = b.coord_index();
    let mut map = Vec::with_capacity(a.n());
    for c in la {
        match index.get(c) {
            Some(&v) => map.push(v),
            None => return Ok(false),
        }
    }
    // Injective labels plus equal sizes make `map` a bijection; equal edge counts
    // make one inclusion enough.
    Ok(a.edges().iter().all(|&(u, v)| b.has_edge(map[u], map[v])))
}
