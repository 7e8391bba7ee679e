//! `layerbound` command-line tool.
//!
//! Exit codes: 0 success, 1 verified failure, 2 usage or input error, 3 undecided
//! within budget.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Args, Parser, Subcommand, ValueEnum};
use layerbound::certify::{certify, CheckStatus};
use layerbound::drawing::{
    canonical_wall_drawing, crossing_profile, lexicographic_drawing,
    min_local_crossings_bruteforce, TwoLayerDrawing,
};
use layerbound::families::{gen_grid, gen_wall};
use layerbound::graph::Graph;
use layerbound::minors::{verify_minor, MinorModel};
use layerbound::nodesearch::{
    grid_sweep_strategy, simulate, wall_sweep_strategy, ObservationChecker, SearchStrategy,
};
use layerbound::pathwidth::{
    decide_pathwidth_le, exact_pathwidth, layout_to_decomposition, verify_decomposition, Budget,
    Decision, PathDecomposition, PathwidthResult,
};
use layerbound::svg::{render_svg, SvgOptions};

#[derive(Parser)]
#[command(
    name = "layerbound",
    version,
    about = "Two-layer drawings, pathwidth and node searching"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum Family {
    Grid,
    Wall,
}

#[derive(Args)]
struct BudgetArgs {
    /// Wall-clock limit for exact search, in milliseconds.
    #[arg(long)]
    budget_ms: Option<u64>,
    /// Limit on explored search nodes (reproducible).
    #[arg(long)]
    budget_nodes: Option<u64>,
}

impl BudgetArgs {
    fn budget(&self) -> Budget {
        let mut b = Budget::default();
        if let Some(ms) = self.budget_ms {
            b.max_time = Some(Duration::from_millis(ms));
        }
        if let Some(n) = self.budget_nodes {
            b.max_nodes = Some(n);
        }
        b
    }
}

#[derive(Subcommand)]
enum Command {
    /// Write the grid graph G_k or the wall W_k as graph JSON.
    Generate {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Produce a two-layer drawing, as drawing JSON and/or SVG.
    ///
    /// With `--family wall` the canonical drawing of W_k is used. With `--graph`
    /// the drawing comes from `--drawing`, or else from the coordinate labels
    /// (odd columns on one layer, even on the other).
    Draw {
        #[arg(long, value_enum, requires = "k", conflicts_with = "graph")]
        family: Option<Family>,
        #[arg(long)]
        k: Option<u32>,
        #[arg(long, required_unless_present = "family")]
        graph: Option<PathBuf>,
        #[arg(long, requires = "graph")]
        drawing: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
        /// Drawing JSON destination; stdout when neither this nor `--svg` is given.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Write each edge's crossing count into the SVG.
        #[arg(long)]
        annotate: bool,
        /// Write coordinate labels into the SVG.
        #[arg(long)]
        labels: bool,
    },
    /// Check that no edge of a drawing has more than K crossings.
    CheckKplanar {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        drawing: PathBuf,
        #[arg(long)]
        k: usize,
    },
    /// Exact pathwidth, or decide whether it is at most W.
    Pathwidth {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, value_name = "W")]
        decide: Option<usize>,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write a witnessing path decomposition here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Validate a path decomposition and report its width.
    VerifyPd {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        pd: PathBuf,
    },
    /// Replay a node-search strategy.
    NsSimulate {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long)]
        strategy: PathBuf,
        /// Fail if some row or column has partly clean edges and no guard.
        #[arg(long)]
        assert_observation: bool,
    },
    /// Write the column sweep strategy for G_k or W_k.
    NsSweep {
        #[arg(long, value_enum)]
        family: Family,
        #[arg(long)]
        k: u32,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Check a branch-set model of PATTERN as a minor of HOST.
    VerifyMinor {
        #[arg(long)]
        pattern: PathBuf,
        #[arg(long)]
        host: PathBuf,
        #[arg(long)]
        model: PathBuf,
    },
    /// Run every check for a given k and print the report.
    Certify {
        #[arg(long)]
        k: u32,
        #[command(flatten)]
        budget: BudgetArgs,
        /// Write the JSON report here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Minimum local crossing number over all two-layer drawings (small graphs).
    OracleMinCrossings {
        #[arg(long)]
        graph: PathBuf,
        /// Write an optimal drawing here.
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

enum Verdict {
    Pass,
    Fail,
    Unknown,
}

impl From<CheckStatus> for Verdict {
    fn from(s: CheckStatus) -> Self {
        match s {
            CheckStatus::Pass => Verdict::Pass,
            CheckStatus::Fail => Verdict::Fail,
            CheckStatus::Unknown => Verdict::Unknown,
        }
    }
}

type Outcome = Result<Verdict, String>;

fn read(path: &Path) -> Result<String, String> {
    fs::read_to_string(path).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_graph(path: &Path) -> Result<Graph, String> {
    Graph::from_json(&read(path)?).map_err(|e| format!("{}: {e}", path.display()))
}

fn load_drawing(path: &Path, g: &Graph) -> Result<TwoLayerDrawing, String> {
    TwoLayerDrawing::from_json(&read(path)?, g).map_err(|e| format!("{}: {e}", path.display()))
}

/// Writes `text` plus a trailing newline to `out`, or to stdout.
fn emit(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn family_graph(family: Family, k: u32) -> Result<Graph, String> {
    match family {
        Family::Grid => gen_grid(k).map(|i| i.graph),
        Family::Wall => gen_wall(k).map(|i| i.graph),
    }
    .map_err(|e| e.to_string())
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::Generate { family, k, out } => {
            emit(out.as_deref(), &family_graph(family, k)?.to_json())?;
            Ok(Verdict::Pass)
        }
        Command::Draw {
            family,
            k,
            graph,
            drawing,
            svg,
            out,
            annotate,
            labels,
        } => {
            let (g, d) = match (family, graph) {
                (Some(Family::Wall), _) => {
                    let w = gen_wall(k.expect("clap enforces --k")).map_err(|e| e.to_string())?;
                    let d = canonical_wall_drawing(&w);
                    (w.graph, d)
                }
                (Some(Family::Grid), _) => {
                    return Err(
                        "only the wall family has a canonical drawing; pass --graph instead".into(),
                    )
                }
                (None, Some(path)) => {
                    let g = load_graph(&path)?;
                    let d = match drawing {
                        Some(dp) => load_drawing(&dp, &g)?,
                        None => lexicographic_drawing(&g).map_err(|e| e.to_string())?,
                    };
                    (g, d)
                }
                (None, None) => unreachable!("clap requires --family or --graph"),
            };
            if let Some(path) = &svg {
                let opts = SvgOptions {
                    annotate_crossings: annotate,
                    show_labels: labels,
                    ..Default::default()
                };
                fs::write(path, render_svg(&g, &d, &opts))
                    .map_err(|e| format!("{}: {e}", path.display()))?;
            }
            if out.is_some() || svg.is_none() {
                emit(out.as_deref(), &d.to_json())?;
            }
            eprintln!(
                "max crossings per edge: {}",
                crossing_profile(&g, &d).max_count
            );
            Ok(Verdict::Pass)
        }
        Command::CheckKplanar { graph, drawing, k } => {
            let g = load_graph(&graph)?;
            let d = load_drawing(&drawing, &g)?;
            let profile = crossing_profile(&g, &d);
            let ok = profile.max_count <= k;
            println!(
                "max crossings per edge: {}; {k}-planar: {}",
                profile.max_count,
                if ok { "yes" } else { "no" }
            );
            let over: Vec<_> = g
                .edges()
                .iter()
                .zip(&profile.per_edge)
                .filter(|(_, &c)| c > k)
                .collect();
            for (&(u, v), c) in over.iter().take(10) {
                println!("edge {u}-{v}: {c} crossings");
            }
            if over.len() > 10 {
                println!("... {} more edges over the limit", over.len() - 10);
            }
            Ok(if ok { Verdict::Pass } else { Verdict::Fail })
        }
        Command::Pathwidth {
            graph,
            decide,
            budget,
            out,
        } => {
            let g = load_graph(&graph)?;
            let budget = budget.budget();
            let write_pd = |pd: PathDecomposition| emit_if(out.as_deref(), &pd.to_json());
            match decide {
                Some(w) => match decide_pathwidth_le(&g, w, &budget) {
                    Decision::Yes(layout) => {
                        println!("pathwidth <= {w}: yes");
                        write_pd(layout_to_decomposition(&g, &layout))?;
                        Ok(Verdict::Pass)
                    }
                    Decision::No => {
                        println!("pathwidth <= {w}: no");
                        Ok(Verdict::Fail)
                    }
                    Decision::Unknown => {
                        println!("UNKNOWN");
                        Ok(Verdict::Unknown)
                    }
                },
                None => match exact_pathwidth(&g, &budget) {
                    PathwidthResult::Exact { width, witness } => {
                        println!("{width}");
                        write_pd(layout_to_decomposition(&g, &witness))?;
                        Ok(Verdict::Pass)
                    }
                    PathwidthResult::Unknown { lower, upper } => {
                        println!("UNKNOWN");
                        eprintln!("pathwidth lies in {lower}..={upper}");
                        Ok(Verdict::Unknown)
                    }
                },
            }
        }
        Command::VerifyPd { graph, pd } => {
            let g = load_graph(&graph)?;
            let pd = PathDecomposition::from_json(&read(&pd)?)
                .map_err(|e| format!("{}: {e}", pd.display()))?;
            match verify_decomposition(&g, &pd) {
                Ok(width) => {
                    println!("valid path decomposition of width {width}");
                    Ok(Verdict::Pass)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::NsSimulate {
            graph,
            strategy,
            assert_observation,
        } => {
            let g = load_graph(&graph)?;
            let s = SearchStrategy::from_json(&read(&strategy)?)
                .map_err(|e| format!("{}: {e}", strategy.display()))?;
            let checker = if assert_observation {
                Some(
                    ObservationChecker::new(&g)
                        .ok_or("--assert-observation needs coordinate labels")?,
                )
            } else {
                None
            };
            let mut violation = None;
            let result = simulate(&g, &s, |step, state| {
                if violation.is_none() {
                    violation = checker
                        .as_ref()
                        .and_then(|c| c.violation(state))
                        .map(|v| (step, v));
                }
            });
            match result {
                Ok(report) => {
                    println!(
                        "all edges clean; cost {}; monotone: {}",
                        report.cost, report.monotone
                    );
                    if let Some((step, (kind, index))) = violation {
                        println!(
                            "observation fails after move {step}: {kind:?} {index} has no guard"
                        );
                        return Ok(Verdict::Fail);
                    }
                    Ok(Verdict::Pass)
                }
                Err(e) => {
                    println!("strategy fails: {e}");
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::NsSweep { family, k, out } => {
            let s = match family {
                Family::Grid => grid_sweep_strategy(&gen_grid(k).map_err(|e| e.to_string())?),
                Family::Wall => wall_sweep_strategy(&gen_wall(k).map_err(|e| e.to_string())?),
            };
            emit(out.as_deref(), &s.to_json())?;
            Ok(Verdict::Pass)
        }
        Command::VerifyMinor {
            pattern,
            host,
            model,
        } => {
            let p = load_graph(&pattern)?;
            let h = load_graph(&host)?;
            let m = MinorModel::from_json(&read(&model)?)
                .map_err(|e| format!("{}: {e}", model.display()))?;
            match verify_minor(&p, &h, &m) {
                Ok(cert) => {
                    println!(
                        "minor model valid; {} pattern edges realised",
                        cert.realised_by.len()
                    );
                    Ok(Verdict::Pass)
                }
                Err(v) => {
                    println!("invalid: {v}");
                    Ok(Verdict::Fail)
                }
            }
        }
        Command::Certify { k, budget, out } => {
            let report = certify(k, &budget.budget());
            for c in &report.checks {
                println!("{}: {} ({})", c.name, c.status, c.detail);
            }
            println!("overall: {}", report.overall);
            emit_if(out.as_deref(), &report.to_json())?;
            Ok(report.overall.into())
        }
        Command::OracleMinCrossings { graph, out } => {
            let g = load_graph(&graph)?;
            let (best, d) = min_local_crossings_bruteforce(&g).map_err(|e| e.to_string())?;
            println!("{best}");
            emit_if(out.as_deref(), &d.to_json())?;
            Ok(Verdict::Pass)
        }
    }
}

fn emit_if(out: Option<&Path>, text: &str) -> Result<(), String> {
    match out {
        Some(_) => emit(out, text),
        None => Ok(()),
    }
}

fn configure_threads() -> Result<(), String> {
    let Ok(raw) = std::env::var("LAYERBOUND_THREADS") else {
        return Ok(());
    };
    let n: usize = raw
        .parse()
        .map_err(|_| format!("LAYERBOUND_THREADS must be a number, got {raw:?}"))?;
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| e.to_string())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let outcome = configure_threads().and_then(|()| run(cli.command));
    match outcome {
        Ok(Verdict::Pass) => ExitCode::SUCCESS,
        Ok(Verdict::Fail) => ExitCode::from(1),
        Ok(Verdict::Unknown) => ExitCode::from(3),
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
