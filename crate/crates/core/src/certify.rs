//! End-to-end certificate that a 2-layer `k`-planar graph of pathwidth `k + 1` exists.

use std::fmt;

use serde::Serialize;

use crate::drawing::{canonical_wall_drawing, crossing_profile, TwoLayerDrawing};
use crate::families::{gen_grid, gen_k0, gen_wall, EdgeKind, GridLike};
use crate::minors::{labeled_isomorphic, verify_minor};
use crate::nodesearch::{
    grid_sweep_strategy, strategy_to_decomposition, verify_strategy, wall_sweep_strategy,
};
use crate::pathwidth::{
    decide_pathwidth_le, exact_pathwidth, verify_decomposition, Budget, Decision,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Unknown,
}

impl fmt::Display for CheckStatus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            CheckStatus::Pass => "PASS",
            CheckStatus::Fail => "FAIL",
            CheckStatus::Unknown => "UNKNOWN",
        })
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub detail: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct CertificationReport {
    pub k: u32,
    pub checks: Vec<Check>,
    pub overall: CheckStatus,
}

impl CertificationReport {
    fn new(k: u32, checks: Vec<Check>) -> Self {
        let overall = if checks.iter().all(|c| c.status == CheckStatus::Pass) {
            CheckStatus::Pass
        } else if checks.iter().any(|c| c.status == CheckStatus::Fail) {
            CheckStatus::Fail
        } else {
            CheckStatus::Unknown
        };
        CertificationReport { k, checks, overall }
    }

    pub fn passed(&self) -> bool {
        self.overall == CheckStatus::Pass
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

fn check(name: &str, ok: bool, detail: String) -> Check {
    let status = if ok {
        CheckStatus::Pass
    } else {
        CheckStatus::Fail
    };
    Check {
        name: name.to_owned(),
        status,
        detail,
    }
}

pub fn certify(k: u32, budget: &Budget) -> CertificationReport {
    if k == 0 {
        return certify_k0(budget);
    }
    let grid = gen_grid(k).expect("k >= 1");
    let wall = gen_wall(k).expect("k >= 1");
    let kk = k as usize;
    let mut checks = Vec::new();

    let drawing = canonical_wall_drawing(&wall);
    let profile = crossing_profile(&wall.graph, &drawing);
    let non_row: Vec<usize> = wall
        .graph
        .edges()
        .iter()
        .zip(&profile.per_edge)
        .filter(|(&e, _)| wall.edge_kind(e) == EdgeKind::NonRow)
        .map(|(_, &c)| c)
        .collect();
    checks.push(check(
        "drawing",
        profile.max_count == kk,
        format!(
            "canonical drawing of W_{k}: {} edges, max crossings {}, non-row edges between {} and {}",
            wall.graph.m(),
            profile.max_count,
            non_row.iter().min().unwrap_or(&0),
            non_row.iter().max().unwrap_or(&0),
        ),
    ));

    let model = wall.branch_sets();
    let minor = match verify_minor(&grid.graph, &wall.graph, &model) {
        Ok(cert) => {
            let iso = model
                .contract(&wall.graph, &grid.graph)
                .ok()
                .and_then(|q| labeled_isomorphic(&q, &grid.graph).ok())
                .unwrap_or(false);
            check(
                "minor",
                iso,
                format!(
                    "{} pattern edges realised; contraction label-isomorphic: {iso}",
                    cert.realised_by.len()
                ),
            )
        }
        Err(v) => check("minor", false, v.to_string()),
    };
    checks.push(minor);

    let sweep = wall_sweep_strategy(&wall);
    let upper = match verify_strategy(&wall.graph, &sweep) {
        Ok(report) => {
            let width = strategy_to_decomposition(&wall.graph, &sweep)
                .map_err(|e| e.to_string())
                .and_then(|pd| verify_decomposition(&wall.graph, &pd).map_err(|e| e.to_string()));
            check(
                "upper-bound",
                report.monotone && report.cost == kk + 2 && width == Ok(kk + 1),
                format!(
                    "wall sweep cost {}, monotone {}, decomposition {}",
                    report.cost,
                    report.monotone,
                    match &width {
                        Ok(w) => format!("width {w}"),
                        Err(e) => format!("invalid: {e}"),
                    }
                ),
            )
        }
        Err(e) => check("upper-bound", false, e.to_string()),
    };
    checks.push(upper);

    let grid_sweep = grid_sweep_strategy(&grid);
    checks.push(match verify_strategy(&grid.graph, &grid_sweep) {
        Ok(r) => check(
            "grid-sweep",
            r.monotone && r.cost == kk + 2,
            format!("G_{k} sweep cost {}, monotone {}", r.cost, r.monotone),
        ),
        Err(e) => check("grid-sweep", false, e.to_string()),
    });

    checks.push(match decide_pathwidth_le(&grid.graph, kk, budget) {
        Decision::No => check("lower-bound", true, format!("pw(G_{k}) > {k}")),
        Decision::Yes(_) => check(
            "lower-bound",
            false,
            format!("found a layout of G_{k} with width {k}"),
        ),
        Decision::Unknown => Check {
            name: "lower-bound".into(),
            status: CheckStatus::Unknown,
            detail: format!("pw(G_{k}) <= {k} undecided within budget"),
        },
    });

    CertificationReport::new(k, checks)
}

fn certify_k0(budget: &Budget) -> CertificationReport {
    let g = gen_k0();
    let drawing = TwoLayerDrawing::new(&g, vec![0], vec![1]).expect("single edge");
    let max = crossing_profile(&g, &drawing).max_count;
    let pw = exact_pathwidth(&g, budget).width();
    CertificationReport::new(
        0,
        vec![
            check(
                "drawing",
                max == 0,
                format!("single edge, max crossings {max}"),
            ),
            check("pathwidth", pw == Some(1), format!("pw = {pw:?}")),
        ],
    )
}
