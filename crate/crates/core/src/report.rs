//! Per-graph reports: descriptor, exact spectral radius, all bounds, and the
//! bounds that land on the wrong side of it.

use serde::{Deserialize, Serialize};

use crate::bounds::{BoundKind, BoundName, BoundParams};
use crate::corpus::CorpusEntry;
use crate::error::Result;
use crate::sweep::{evaluate, Evaluation, StageTiming, SweepConfig, TimedBound};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphDescriptor {
    pub source: String,
    pub family: String,
    pub n: usize,
    pub e: usize,
    pub max_degree: usize,
    pub triangles: u64,
    pub clique_number: usize,
    pub bipartite: bool,
    pub connected: bool,
}

/// A bound on the wrong side of `ρ` by more than the tolerance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Violation {
    pub name: BoundName,
    pub kind: BoundKind,
    pub params: BoundParams,
    pub value: f64,
    pub rho: f64,
    /// How far past `ρ` the value lies (positive).
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Report {
    pub graph: GraphDescriptor,
    pub rho_exact: f64,
    pub tol: f64,
    pub bounds: Vec<TimedBound>,
    pub violations: Vec<Violation>,
    pub timing: StageTiming,
}

impl Report {
    /// Sweeps `entry` and classifies every bound against `ρ` at `tol`.
    pub fn build(entry: &CorpusEntry, cfg: &SweepConfig, tol: f64) -> Result<Self> {
        let ev = evaluate(&entry.graph, cfg)?;
        Ok(Self::from_evaluation(entry, &ev, tol))
    }

    pub fn from_evaluation(entry: &CorpusEntry, ev: &Evaluation, tol: f64) -> Self {
        let g = &entry.graph;
        let rho = ev.summary.rho;
        let violations = find_violations(&ev.bounds, rho, tol);
        Self {
            graph: GraphDescriptor {
                source: entry.label.clone(),
                family: entry.family_name().to_string(),
                n: g.n(),
                e: g.edge_count(),
                max_degree: g.max_degree(),
                triangles: ev.triangles,
                clique_number: ev.omega,
                bipartite: g.is_bipartite(),
                connected: g.is_connected(),
            },
            rho_exact: rho,
            tol,
            bounds: ev.bounds.clone(),
            violations,
            timing: ev.timing,
        }
    }

    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

pub fn find_violations(bounds: &[TimedBound], rho: f64, tol: f64) -> Vec<Violation> {
    bounds
        .iter()
        .filter(|t| t.bound.violates(rho, tol))
        .map(|t| {
            let b = &t.bound;
            let value = b.value.expect("violating bounds have values");
            Violation {
                name: b.name,
                kind: b.kind,
                params: b.params.clone(),
                value,
                rho,
                excess: -b.gap(rho).expect("has value"),
            }
        })
        .collect()
}
