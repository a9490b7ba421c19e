//! Invariant suite run by `swb verify`: the sandwich property plus the
//! identities and dominance relations every sound implementation satisfies.

use std::collections::HashMap;

use serde::{Deserialize, Serialize};

use crate::bounds::{
    clique_walk_value, eigvec_degree_residual, BoundName, BoundParams, BoundResult,
};
use crate::corpus::CorpusEntry;
use crate::error::{Error, Result};
use crate::moments::{hamburger_margin, DEFAULT_PSD_TOL};
use crate::report::{find_violations, Report};
use crate::spectrum::verify_moment_identities_with;
use crate::sweep::{evaluate, SweepConfig};
use crate::walks::MeasureKind;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VerifyConfig {
    pub sweep: SweepConfig,
    /// Sandwich tolerance against `ρ`.
    pub tol: f64,
    /// Relative tolerance of the spectral moment identities.
    pub moment_tol: f64,
    /// Relative tolerance of the Hamburger check.
    pub hamburger_tol: f64,
    /// Slack of the pointwise dominance relations.
    pub dominance_tol: f64,
    /// Slack of the semidefinite monotonicity check.
    pub sdp_monotone_tol: f64,
}

impl Default for VerifyConfig {
    fn default() -> Self {
        Self {
            sweep: SweepConfig::default(),
            tol: 1e-7,
            moment_tol: 1e-8,
            hamburger_tol: DEFAULT_PSD_TOL,
            dominance_tol: 1e-9,
            sdp_monotone_tol: 1e-6,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Check {
    Sandwich,
    MomentIdentity,
    Hamburger,
    TwoPointDominance,
    StieltjesDominance,
    CliqueWalkDominance,
    BipartiteDominance,
    SdpMonotone,
    EigvecDegree,
    /// The sweep itself failed numerically.
    Numerical,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Failure {
    pub check: Check,
    pub detail: String,
    /// Amount by which the invariant is broken.
    pub excess: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GraphVerdict {
    pub label: String,
    pub checks: usize,
    pub failures: Vec<Failure>,
    /// Smallest sandwich slack over all applicable bounds; negative when a
    /// bound crosses `ρ`.
    pub worst_margin: Option<f64>,
}

impl GraphVerdict {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

struct Tally {
    checks: usize,
    failures: Vec<Failure>,
}

impl Tally {
    fn check(&mut self, check: Check, excess: f64, detail: impl FnOnce() -> String) {
        self.checks += 1;
        if excess > 0.0 || excess.is_nan() {
            self.failures.push(Failure {
                check,
                detail: detail(),
                excess,
            });
        }
    }
}

fn index(bounds: &[BoundResult]) -> HashMap<(BoundName, BoundParams), f64> {
    bounds
        .iter()
        .filter_map(|b| b.value.map(|v| ((b.name, b.params.clone()), v)))
        .collect()
}

/// Runs every invariant on one graph.
pub fn verify_entry(entry: &CorpusEntry, cfg: &VerifyConfig) -> Result<GraphVerdict> {
    let g = &entry.graph;
    let ev = match evaluate(g, &cfg.sweep) {
        Ok(ev) => ev,
        Err(Error::Numerical(msg)) => {
            return Ok(GraphVerdict {
                label: entry.label.clone(),
                checks: 1,
                failures: vec![Failure {
                    check: Check::Numerical,
                    detail: msg,
                    excess: 0.0,
                }],
                worst_margin: None,
            })
        }
        Err(e) => return Err(e),
    };
    let rho = ev.summary.rho;
    let mut t = Tally {
        checks: 0,
        failures: Vec::new(),
    };

    let bounds: Vec<BoundResult> = ev.bounds.iter().map(|b| b.bound.clone()).collect();
    let violations = find_violations(&ev.bounds, rho, cfg.tol);
    t.checks += bounds.iter().filter(|b| b.applicable()).count();
    for v in violations {
        t.failures.push(Failure {
            check: Check::Sandwich,
            detail: format!("{} [{}] = {} vs rho = {}", v.name, v.params, v.value, v.rho),
            excess: v.excess,
        });
    }
    let worst_margin = bounds.iter().filter_map(|b| b.gap(rho)).reduce(f64::min);

    if cfg.sweep.corruption.is_none() {
        let ids = verify_moment_identities_with(g, &ev.summary, cfg.sweep.max_order, cfg.moment_tol);
        t.check(Check::MomentIdentity, ids.worst() - cfg.moment_tol, || {
            format!("relative error {:e}", ids.worst())
        });
    }

    for m in &ev.moments {
        for n in (0..).take_while(|n| 2 * n <= cfg.sweep.max_order) {
            let margin = hamburger_margin(m, n)?;
            t.check(Check::Hamburger, -margin - cfg.hamburger_tol, || {
                format!("H_{n} of {} has relative min eigenvalue {margin:e}", m.kind())
            });
        }
    }

    let values = index(&bounds);
    let get = |name, params: BoundParams| values.get(&(name, params)).copied();
    for m in &ev.moments {
        let kind = m.kind();
        let base = BoundParams::measure(kind);
        for k in 1..=cfg.sweep.k_max {
            let Some(even) = get(BoundName::EvenMomentUpper, base.clone().with_k(k)) else {
                continue;
            };
            let pairs = [
                (BoundName::TwoPointUpper, Check::TwoPointDominance),
                (BoundName::StieltjesRootUpper, Check::StieltjesDominance),
                (BoundName::BipartiteUpper, Check::BipartiteDominance),
            ];
            for (name, check) in pairs {
                if let Some(v) = get(name, base.clone().with_k(k)) {
                    t.check(check, v - even - cfg.dominance_tol, || {
                        format!("{name} = {v} above even_moment_upper = {even} ({kind}, k={k})")
                    });
                }
            }
            if kind == MeasureKind::Walks && g.is_connected() && 2 * k <= cfg.sweep.max_order {
                let cap = clique_walk_value(m, ev.omega, 2 * k)?;
                t.check(Check::CliqueWalkDominance, even - cap - cfg.dominance_tol, || {
                    format!("even_moment_upper = {even} above clique walk value {cap} (k={k})")
                });
            }
        }
        let mut orders: Vec<usize> = cfg.sweep.sdp_orders.clone();
        orders.sort_unstable();
        for w in orders.windows(2) {
            let (a, b) = (
                get(BoundName::SdpLower, base.clone().with_order(w[0])),
                get(BoundName::SdpLower, base.clone().with_order(w[1])),
            );
            if let (Some(a), Some(b)) = (a, b) {
                t.check(Check::SdpMonotone, a - b - cfg.sdp_monotone_tol, || {
                    format!("sdp order {} = {b} below order {} = {a} ({kind})", w[1], w[0])
                });
            }
        }
    }

    if g.edge_count() > 0 {
        let r = eigvec_degree_residual(g, &ev.summary);
        t.check(Check::EigvecDegree, r - cfg.dominance_tol, || {
            format!("leading entry exceeds 1/sqrt(1 + rho^2/d) by {r:e}")
        });
    }

    Ok(GraphVerdict {
        label: entry.label.clone(),
        checks: t.checks,
        failures: t.failures,
        worst_margin,
    })
}

/// Aggregate over a corpus.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct VerifySummary {
    pub graphs: usize,
    pub checks: usize,
    pub failed_checks: usize,
    pub failed_graphs: usize,
    pub worst_margin: Option<f64>,
}

impl VerifySummary {
    pub fn from_verdicts(verdicts: &[GraphVerdict]) -> Self {
        Self {
            graphs: verdicts.len(),
            checks: verdicts.iter().map(|v| v.checks).sum(),
            failed_checks: verdicts.iter().map(|v| v.failures.len()).sum(),
            failed_graphs: verdicts.iter().filter(|v| !v.passed()).count(),
            worst_margin: verdicts.iter().filter_map(|v| v.worst_margin).reduce(f64::min),
        }
    }

    pub fn passed(&self) -> bool {
        self.failed_checks == 0
    }
}

/// Report for an entry that failed verification, for reproduction.
pub fn failure_report(entry: &CorpusEntry, cfg: &VerifyConfig) -> Result<Report> {
    Report::build(entry, &cfg.sweep, cfg.tol)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::corpus::standard_families;
    use crate::graph::Family;
    use crate::sweep::Corruption;

    #[test]
    fn small_families_pass() {
        let cfg = VerifyConfig::default();
        let verdicts: Vec<GraphVerdict> = standard_families(6)
            .iter()
            .map(|e| verify_entry(e, &cfg).unwrap())
            .collect();
        for v in &verdicts {
            assert!(v.passed(), "{}: {:?}", v.label, v.failures);
        }
        let summary = VerifySummary::from_verdicts(&verdicts);
        assert!(summary.passed() && summary.worst_margin.unwrap() >= -1e-7);
    }

    #[test]
    fn corrupted_moments_are_caught() {
        let entry = CorpusEntry::generated(Family::ErdosRenyi { n: 8, p: 0.5, seed: 1 }).unwrap();
        let mut cfg = VerifyConfig::default();
        cfg.sweep.corruption = Some(Corruption::Inflate { index: 1 });
        let v = verify_entry(&entry, &cfg).unwrap();
        assert!(!v.passed());
        assert!(v.failures.iter().any(|f| f.check == Check::Sandwich));
        assert!(v.worst_margin.unwrap() < 0.0);
        // inflating m_2 leaves no feasible u for the order-1 pencil
        cfg.sweep.corruption = Some(Corruption::Inflate { index: 2 });
        let v = verify_entry(&entry, &cfg).unwrap();
        assert!(!v.passed());
    }
}
