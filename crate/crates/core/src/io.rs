//! File formats: the topology JSON schema, DOT export for visualization,
//! and the CSV tables experiments emit.
//!
//! Topology JSON:
//!
//! ```json
//! {
//!   "n": 4,
//!   "side": 1.0,
//!   "tr": 0.35,
//!   "nodes": [{"id": 0, "x": 0.1, "y": 0.9}, ...],
//!   "edges": [[0, 1], [2, 3]]
//! }
//! ```
//!
//! `side`, `tr`, and `nodes` are present exactly when the topology carries
//! an embedding; edges are written ascending with the smaller id first.
//! Serialization is deterministic: the same topology always produces the
//! same bytes.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::experiments::{DensityPoint, PhaseSeries, TrendSummary};
use crate::rr::RoundLog;
use crate::scalar::Scalar;
use crate::stats::TrialStats;
use crate::topology::{GraphError, NodeId, Position, Topology};

#[derive(Debug, Error)]
pub enum IoError {
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error("JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error("invalid topology file: {0}")]
    Format(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Serialize, Deserialize)]
struct NodeEntry<T> {
    id: usize,
    x: T,
    y: T,
}

#[derive(Serialize, Deserialize)]
struct TopologyFile<T> {
    n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    side: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    tr: Option<T>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<Vec<NodeEntry<T>>>,
    edges: Vec<(NodeId, NodeId)>,
}

pub fn topology_to_json<T: Scalar>(t: &Topology<T>) -> String {
    let file = TopologyFile {
        n: t.node_count(),
        side: t.embedding().map(|e| e.side),
        tr: t.embedding().map(|e| e.range),
        nodes: t.embedding().map(|e| {
            e.positions
                .iter()
                .enumerate()
                .map(|(id, p)| NodeEntry {
                    id,
                    x: p.x,
                    y: p.y,
                })
                .collect()
        }),
        edges: t.edges(),
    };
    let mut s = serde_json::to_string_pretty(&file).expect("plain data serializes");
    s.push('\n');
    s
}

pub fn topology_from_json<T: Scalar>(text: &str) -> Result<Topology<T>, IoError> {
    let file: TopologyFile<T> = serde_json::from_str(text)?;
    let mut t = match file.nodes {
        Some(entries) => {
            if entries.len() != file.n {
                return Err(IoError::Format(format!(
                    "{} node entries for n = {}",
                    entries.len(),
                    file.n
                )));
            }
            let (side, tr) = match (file.side, file.tr) {
                (Some(s), Some(r)) => (s, r),
                _ => {
                    return Err(IoError::Format(
                        "embedded topology needs side and tr".into(),
                    ))
                }
            };
            let mut positions: Vec<Option<Position<T>>> = vec![None; file.n];
            for e in entries {
                if e.id >= file.n {
                    return Err(IoError::Format(format!("node id {} out of range", e.id)));
                }
                if positions[e.id].is_some() {
                    return Err(IoError::Format(format!("duplicate node id {}", e.id)));
                }
                positions[e.id] = Some(Position::new(e.x, e.y));
            }
            Topology::with_embedding(
                positions.into_iter().map(|p| p.expect("all ids seen")).collect(),
                side,
                tr,
            )
        }
        None => Topology::new(file.n),
    };
    for (u, v) in file.edges {
        t.add_edge(u, v)?;
    }
    Ok(t)
}

pub fn write_topology<T: Scalar>(path: &Path, t: &Topology<T>) -> Result<(), IoError> {
    Ok(fs::write(path, topology_to_json(t))?)
}

pub fn read_topology<T: Scalar>(path: &Path) -> Result<Topology<T>, IoError> {
    topology_from_json(&fs::read_to_string(path)?)
}

/// Graphviz export; positions become pinned `pos` attributes when the
/// topology is embedded (render with neato or fdp).
pub fn topology_to_dot<T: Scalar>(t: &Topology<T>) -> String {
    let mut out = String::from("graph topology {\n  node [shape=point];\n");
    match t.embedding() {
        Some(e) => {
            for (v, p) in e.positions.iter().enumerate() {
                writeln!(out, "  {v} [pos=\"{},{}!\"];", p.x, p.y).expect("string write");
            }
        }
        None => {
            for v in 0..t.node_count() {
                writeln!(out, "  {v};").expect("string write");
            }
        }
    }
    for (u, v) in t.edges() {
        writeln!(out, "  {u} -- {v};").expect("string write");
    }
    out.push_str("}\n");
    out
}

fn cell<T: std::fmt::Display>(v: &Option<T>) -> String {
    v.as_ref().map(|x| x.to_string()).unwrap_or_default()
}

/// Columns: n, mu, sigma, ci95, runs.
pub fn density_csv<T: Scalar>(points: &[DensityPoint<T>]) -> String {
    let mut out = String::from("n,mu,sigma,ci95,runs\n");
    for p in points {
        writeln!(
            out,
            "{},{},{},{},{}",
            p.n, p.stats.mean, p.stats.std_dev, p.stats.ci95, p.stats.runs
        )
        .expect("string write");
    }
    out
}

/// Long format, one row per (phase, metric): k_star, phase, metric, mean,
/// ci95, runs. Metrics are the normalized values; a metric undefined in
/// too many runs is skipped.
pub fn trend_csv<T: Scalar>(summary: &TrendSummary<T>) -> String {
    let mut out = String::from("k_star,phase,metric,mean,ci95,runs\n");
    for phase in &summary.phases {
        let columns: [(&str, &Option<TrialStats<T>>); 7] = [
            ("cc", &phase.cc),
            ("cpl", &phase.cpl),
            ("asp", &phase.asp),
            ("k", &phase.k),
            ("d", &phase.d),
            ("mean_ecc", &phase.mean_ecc),
            ("ctr", &phase.ctr),
        ];
        for (name, stats) in columns {
            if let Some(s) = stats {
                writeln!(
                    out,
                    "{},{},{},{},{},{}",
                    summary.k_star, phase.phase, name, s.mean, s.ci95, s.runs
                )
                .expect("string write");
            }
        }
    }
    out
}

/// Columns: round, edge_u, edge_v, cc_before, cc_after. One row per
/// removal; a round without removals still contributes one row with empty
/// edge cells so the round remains visible.
pub fn round_log_csv<T: Scalar>(logs: &[RoundLog<T>]) -> String {
    let mut out = String::from("round,edge_u,edge_v,cc_before,cc_after\n");
    for log in logs {
        if log.removed.is_empty() {
            writeln!(out, "{},,,{},{}", log.round, log.avg_cc_before, log.avg_cc_after)
                .expect("string write");
            continue;
        }
        for (u, v) in &log.removed {
            writeln!(
                out,
                "{},{},{},{},{}",
                log.round, u, v, log.avg_cc_before, log.avg_cc_after
            )
            .expect("string write");
        }
    }
    out
}

/// Raw per-phase metrics: phase, cc, cpl, asp, k, d, mean_ecc, ctr,
/// connected. Undefined metrics leave their cell empty.
pub fn phase_series_csv<T: Scalar>(series: &PhaseSeries<T>) -> String {
    let mut out = String::from("phase,cc,cpl,asp,k,d,mean_ecc,ctr,connected\n");
    for (phase, r) in series.reports.iter().enumerate() {
        writeln!(
            out,
            "{},{},{},{},{},{},{},{},{}",
            phase,
            r.cc,
            cell(&r.cpl),
            cell(&r.asp),
            r.k,
            cell(&r.d),
            cell(&r.mean_ecc),
            cell(&r.ctr),
            r.connected
        )
        .expect("string write");
    }
    out
}
