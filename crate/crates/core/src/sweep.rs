//! Evaluates every configured bound on one graph.

use std::time::Instant;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    baseline_lower_bounds, baseline_upper_bounds, bipartite_upper_bound, clique_root_upper_bound,
    det_ratio_lower_bound, eigvec_degree_upper_bound, even_moment_upper_bound,
    hankel_root_upper_bound, local_triangle_lower_bound, quadratic_root_lower_bound,
    ratio_lower_bound, sdp_lower_bound, sort_results, stieltjes_root_upper_bound,
    triangle_edge_lower_bound, two_point_upper_bound, AtomWeight, BoundResult,
};
use crate::error::{Error, Result};
use crate::graph::{Graph, DEFAULT_CLIQUE_LIMIT};
use crate::moments::IndexSet;
use crate::spectrum::{eigen_decompose, SpectralSummary};
use crate::walks::{closed_walk_counts_all, walk_counts, MeasureKind, MomentSequence};

use num_bigint::BigUint;

/// Which spectral measures to sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct MeasureSelection {
    pub walks: bool,
    pub closed: bool,
    /// One measure per vertex.
    pub vertex: bool,
}

impl MeasureSelection {
    pub const ALL: Self = Self {
        walks: true,
        closed: true,
        vertex: true,
    };

    pub const NONE: Self = Self {
        walks: false,
        closed: false,
        vertex: false,
    };

    /// Parses a comma-separated subset of `walks`, `closed`, `vertex`.
    pub fn parse(text: &str) -> Result<Self> {
        let mut sel = Self::NONE;
        for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
            match part {
                "walks" => sel.walks = true,
                "closed" => sel.closed = true,
                "vertex" => sel.vertex = true,
                other => {
                    return Err(Error::InvalidParams(format!(
                        "unknown measure `{other}` (expected walks, closed, vertex)"
                    )))
                }
            }
        }
        if sel == Self::NONE {
            return Err(Error::InvalidParams("no measure selected".into()));
        }
        Ok(sel)
    }

    /// Measure kinds for a graph on `n` vertices, in report order.
    pub fn kinds(&self, n: usize) -> Vec<MeasureKind> {
        let mut out = Vec::new();
        if self.walks {
            out.push(MeasureKind::Walks);
        }
        if self.closed {
            out.push(MeasureKind::ClosedWalks);
        }
        if self.vertex {
            out.extend((0..n).map(MeasureKind::ClosedWalksAt));
        }
        out
    }
}

/// Test hook that falsifies a moment sequence before bounds are computed.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Corruption {
    /// Replaces `m_t` by `(Δ + 1)^t · m_0 + 1`, which pushes the ratio bound
    /// `(m_t/m_0)^{1/t}` above any possible spectral radius.
    Inflate { index: usize },
}

impl Corruption {
    pub fn apply(&self, m: &MomentSequence, max_degree: usize) -> MomentSequence {
        match *self {
            Corruption::Inflate { index } => {
                if index == 0 || index >= m.len() {
                    return m.clone();
                }
                let m0 = m.values()[0].clone();
                let value = BigUint::from(max_degree + 1).pow(index as u32) * m0 + 1u32;
                m.with_value(index, value)
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SweepConfig {
    /// Highest moment order `K`.
    pub max_order: usize,
    pub measures: MeasureSelection,
    pub s_max: usize,
    pub k_max: usize,
    pub index_sets: Vec<IndexSet>,
    /// Hankel orders of the semidefinite bound.
    pub sdp_orders: Vec<usize>,
    pub sdp_tol: f64,
    pub clique_limit: usize,
    /// Record wall-clock times; off by default so output is reproducible.
    pub timing: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub corruption: Option<Corruption>,
}

impl Default for SweepConfig {
    fn default() -> Self {
        Self {
            max_order: 12,
            measures: MeasureSelection::ALL,
            s_max: 3,
            k_max: 4,
            index_sets: vec![
                IndexSet::new([1, 2]).expect("valid"),
                IndexSet::new([1, 2, 3]).expect("valid"),
            ],
            sdp_orders: vec![0, 1, 2, 3],
            sdp_tol: 1e-9,
            clique_limit: DEFAULT_CLIQUE_LIMIT,
            timing: false,
            corruption: None,
        }
    }
}

/// A bound with the time it took, zero unless timing is enabled.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TimedBound {
    pub bound: BoundResult,
    pub ms: f64,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct StageTiming {
    pub moments_ms: f64,
    pub spectrum_ms: f64,
    pub bounds_ms: f64,
    pub total_ms: f64,
}

/// Everything computed for one graph.
#[derive(Debug, Clone)]
pub struct Evaluation {
    pub summary: SpectralSummary,
    pub omega: usize,
    pub triangles: u64,
    /// Moment sequences actually used, after any corruption.
    pub moments: Vec<MomentSequence>,
    pub bounds: Vec<TimedBound>,
    pub timing: StageTiming,
}

struct Clock(Option<Instant>);

impl Clock {
    fn start(on: bool) -> Self {
        Self(on.then(Instant::now))
    }

    fn ms(&self) -> f64 {
        self.0.map_or(0.0, |t| t.elapsed().as_secs_f64() * 1e3)
    }
}

/// Moment sequences of the selected measures through order `K`.
pub fn measure_moments(g: &Graph, measures: MeasureSelection, max_order: usize) -> Vec<MomentSequence> {
    let mut out = Vec::new();
    if measures.walks {
        out.push(walk_counts(g, max_order));
    }
    if measures.closed || measures.vertex {
        let per_vertex = closed_walk_counts_all(g, max_order);
        if measures.closed {
            let totals = (0..=max_order)
                .map(|k| per_vertex.iter().map(|row| &row[k]).sum())
                .collect();
            out.push(MomentSequence::new(MeasureKind::ClosedWalks, totals));
        }
        if measures.vertex {
            out.extend(
                per_vertex
                    .into_iter()
                    .enumerate()
                    .map(|(i, row)| MomentSequence::new(MeasureKind::ClosedWalksAt(i), row)),
            );
        }
    }
    out
}

/// Runs the full sweep on `g`. Results are in report order.
pub fn evaluate(g: &Graph, cfg: &SweepConfig) -> Result<Evaluation> {
    if cfg.max_order == 0 {
        return Err(Error::InvalidParams("moment order K must be at least 1".into()));
    }
    let total = Clock::start(cfg.timing);
    let delta = g.max_degree();

    let clock = Clock::start(cfg.timing);
    let mut moments = measure_moments(g, cfg.measures, cfg.max_order);
    if let Some(c) = cfg.corruption {
        moments = moments.iter().map(|m| c.apply(m, delta)).collect();
    }
    let moments_ms = clock.ms();

    let clock = Clock::start(cfg.timing);
    let summary = eigen_decompose(g);
    let spectrum_ms = clock.ms();

    let stage = Clock::start(cfg.timing);
    let omega = g.clique_number_with_limit(cfg.clique_limit)?;
    let triangles = g.triangle_counts().total;
    let mut bounds = Vec::new();
    let mut push = |f: &mut dyn FnMut() -> Result<Vec<BoundResult>>| -> Result<()> {
        let clock = Clock::start(cfg.timing);
        let results = f()?;
        let ms = clock.ms() / results.len().max(1) as f64;
        bounds.extend(results.into_iter().map(|bound| TimedBound { bound, ms }));
        Ok(())
    };

    push(&mut || Ok(vec![triangle_edge_lower_bound(g), local_triangle_lower_bound(g)]))?;
    push(&mut || Ok(vec![eigvec_degree_upper_bound(g, &summary)]))?;

    let top = cfg.max_order;
    for m in &moments {
        let kind = m.kind();
        for s in 0..=cfg.s_max {
            for k in 1..=cfg.k_max {
                if 2 * s + k <= top {
                    push(&mut || Ok(vec![ratio_lower_bound(m, s, k)?]))?;
                }
                if 2 * s + 3 * k <= top {
                    push(&mut || Ok(vec![det_ratio_lower_bound(m, s, k)?]))?;
                    push(&mut || Ok(vec![quadratic_root_lower_bound(m, s, k)?]))?;
                }
            }
        }
        for &n in cfg.sdp_orders.iter().filter(|&&n| 2 * n < top) {
            push(&mut || Ok(vec![sdp_lower_bound(m, n, delta, cfg.sdp_tol)?]))?;
        }

        let weight = AtomWeight::from_spectrum(kind, &summary);
        for k in (1..=cfg.k_max).filter(|k| 2 * k <= top) {
            push(&mut || Ok(vec![even_moment_upper_bound(m, &weight, k)?]))?;
            push(&mut || Ok(vec![two_point_upper_bound(m, &weight, k)?]))?;
            if kind != MeasureKind::Walks {
                push(&mut || Ok(vec![bipartite_upper_bound(m, &weight, k, g)?]))?;
            }
        }
        for k in (0..=cfg.k_max).filter(|k| 2 * k < top) {
            push(&mut || Ok(vec![stieltjes_root_upper_bound(m, &weight, k)?]))?;
        }
        for j in cfg.index_sets.iter().filter(|j| 2 * IndexSet::max(j) - 2 <= top) {
            push(&mut || Ok(vec![hankel_root_upper_bound(m, &weight, j)?]))?;
        }

        if kind == MeasureKind::Walks {
            for k in (0..=cfg.k_max).filter(|k| 2 * k < top) {
                push(&mut || Ok(vec![clique_root_upper_bound(m, omega, k)?]))?;
            }
            let extra: Vec<(usize, usize)> = (0..=cfg.s_max)
                .flat_map(|s| (1..=cfg.k_max).map(move |k| (s, k)))
                .collect();
            push(&mut || baseline_lower_bounds(g, m, &extra))?;
            push(&mut || baseline_upper_bounds(g, m, &summary, omega))?;
        }
    }
    let bounds_ms = stage.ms();
    bounds.sort_by(|a, b| a.bound.order_key(&b.bound));

    Ok(Evaluation {
        summary,
        omega,
        triangles,
        moments,
        bounds,
        timing: StageTiming {
            moments_ms,
            spectrum_ms,
            bounds_ms,
            total_ms: total.ms(),
        },
    })
}

/// Bounds alone, in report order.
pub fn evaluate_bounds(g: &Graph, cfg: &SweepConfig) -> Result<Vec<BoundResult>> {
    let mut out: Vec<BoundResult> = evaluate(g, cfg)?.bounds.into_iter().map(|t| t.bound).collect();
    sort_results(&mut out);
    Ok(out)
}
