//! Upper bounds on the spectral radius. Each moment bound removes an atom of
//! weight `α₁` at `λ₁` from the spectral measure; any `α₁` no larger than the
//! true leading weight keeps the bound valid.

use num_bigint::{BigInt, BigUint};
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use super::{kth_root, BoundName, BoundParams, BoundResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::moments::{hankel_block, IndexSet};
use crate::poly::{Polynomial, ROOT_TOL};
use crate::spectrum::SpectralSummary;
use crate::walks::{MeasureKind, MomentSequence};

/// Weights at or below this are treated as zero.
pub const ALPHA_FLOOR: f64 = 1e-12;

/// Relative slack allowed when a computed weight exceeds the total mass.
const MASS_SLACK: f64 = 1e-9;

/// Mass of the spectral measure at `λ₁`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AtomWeight {
    pub alpha1: f64,
    pub source: MeasureKind,
}

impl AtomWeight {
    pub fn new(alpha1: f64, source: MeasureKind) -> Self {
        Self { alpha1, source }
    }

    /// Closed walks put unit mass on every eigenvalue.
    pub fn closed_walks() -> Self {
        Self::new(1.0, MeasureKind::ClosedWalks)
    }

    /// `1`, `c_1^(i)` or `c_1` according to the measure.
    pub fn from_spectrum(kind: MeasureKind, summary: &SpectralSummary) -> Self {
        let alpha1 = match kind {
            MeasureKind::ClosedWalks => 1.0,
            MeasureKind::ClosedWalksAt(i) => summary.c_vertex[(i, 0)],
            MeasureKind::Walks => summary.c[0],
        };
        Self::new(alpha1, kind)
    }

    /// Weights other than the closed-walk unit come from eigenvectors.
    pub fn oracle_assisted(&self) -> bool {
        self.source != MeasureKind::ClosedWalks
    }
}

fn as_f64(x: &BigUint) -> Result<f64> {
    x.to_f64()
        .filter(|v| v.is_finite())
        .ok_or_else(|| Error::Numerical("moment exceeds the f64 range".into()))
}

fn moment(m: &MomentSequence, t: usize) -> Result<f64> {
    as_f64(m.get(t)?)
}

fn check_source(m: &MomentSequence, w: &AtomWeight) -> Result<()> {
    if m.kind() != w.source {
        return Err(Error::InvalidParams(format!(
            "atom weight for {} applied to {} moments",
            w.source,
            m.kind()
        )));
    }
    Ok(())
}

/// Common preamble: matching source, `k ≥ 1` if required, moments through
/// `top`, and a usable weight. `Err` for caller mistakes, `Ok(Some(..))` for
/// an inapplicable result.
fn preamble(
    m: &MomentSequence,
    w: &AtomWeight,
    name: BoundName,
    params: &BoundParams,
    top: usize,
) -> Result<Option<BoundResult>> {
    check_source(m, w)?;
    m.require(top)?;
    if w.alpha1.is_nan() || w.alpha1 <= ALPHA_FLOOR {
        return Ok(Some(
            BoundResult::inapplicable(name, params.clone(), "atom weight is zero")
                .assisted(w.oracle_assisted()),
        ));
    }
    Ok(None)
}

fn positive_k(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParams("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `ρ ≤ (m_{2k}/α₁)^{1/2k}`.
pub fn even_moment_upper_bound(m: &MomentSequence, w: &AtomWeight, k: usize) -> Result<BoundResult> {
    positive_k(k)?;
    let name = BoundName::EvenMomentUpper;
    let params = BoundParams::measure(m.kind()).with_k(k);
    if let Some(r) = preamble(m, w, name, &params, 2 * k)? {
        return Ok(r);
    }
    let value = kth_root(moment(m, 2 * k)? / w.alpha1, 2 * k);
    Ok(BoundResult::ok(name, params, value).assisted(w.oracle_assisted()))
}

/// `ρ^k ≤ (m_k + √((m_0/α₁ − 1)(m_0 m_{2k} − m_k²))) / m_0`.
pub fn two_point_upper_bound(m: &MomentSequence, w: &AtomWeight, k: usize) -> Result<BoundResult> {
    positive_k(k)?;
    let name = BoundName::TwoPointUpper;
    let params = BoundParams::measure(m.kind()).with_k(k);
    if let Some(r) = preamble(m, w, name, &params, 2 * k)? {
        return Ok(r);
    }
    let m0 = moment(m, 0)?;
    if w.alpha1 > m0 * (1.0 + MASS_SLACK) {
        return Err(Error::InvalidParams(format!(
            "atom weight {} exceeds total mass {m0}",
            w.alpha1
        )));
    }
    let (b0, bk, b2k) = (
        BigInt::from(m.get(0)?.clone()),
        BigInt::from(m.get(k)?.clone()),
        BigInt::from(m.get(2 * k)?.clone()),
    );
    let spread = &b0 * &b2k - &bk * &bk;
    let spread = if spread.is_negative() { 0.0 } else { spread.to_f64().unwrap_or(f64::INFINITY) };
    let excess = (m0 / w.alpha1 - 1.0).max(0.0);
    let value = (moment(m, k)? + (excess * spread).sqrt()) / m0;
    Ok(BoundResult::ok(name, params, kth_root(value.max(0.0), k)).assisted(w.oracle_assisted()))
}

/// `ρ² ≤ (1/x_i² − 1) d_i` for every vertex with `x_i > 0`; the minimum over
/// vertices is reported.
pub fn eigvec_degree_upper_bound(g: &Graph, summary: &SpectralSummary) -> BoundResult {
    let x = summary.leading_vector();
    let mut best: Option<(f64, usize)> = None;
    let mut skipped = 0;
    for (i, &xi) in x.iter().enumerate() {
        if xi <= ALPHA_FLOOR {
            skipped += 1;
            continue;
        }
        let v = ((1.0 / (xi * xi) - 1.0).max(0.0) * g.degree(i) as f64).sqrt();
        if best.is_none_or(|(b, _)| v < b) {
            best = Some((v, i));
        }
    }
    let name = BoundName::EigvecDegreeUpper;
    let Some((value, vertex)) = best else {
        return BoundResult::inapplicable(name, BoundParams::default(), "leading vector vanishes")
            .assisted(true);
    };
    let r = BoundResult::ok(name, BoundParams::default().with_vertex(vertex), value).assisted(true);
    if skipped > 0 {
        r.with_note(format!("{skipped} vertices with zero leading entry skipped"))
    } else {
        r
    }
}

/// Largest violation of `x_i ≤ 1/√(1 + ρ²/d_i)` over non-isolated vertices;
/// non-positive when the rearranged inequality holds everywhere.
pub fn eigvec_degree_residual(g: &Graph, summary: &SpectralSummary) -> f64 {
    let x = summary.leading_vector();
    let rho2 = summary.rho * summary.rho;
    (0..g.n())
        .filter(|&i| g.degree(i) > 0)
        .map(|i| x[i] - 1.0 / (1.0 + rho2 / g.degree(i) as f64).sqrt())
        .fold(f64::NEG_INFINITY, f64::max)
}

/// For bipartite graphs `-λ₁` carries the same weight as `λ₁`:
/// `ρ ≤ (m_{2k} / 2α₁)^{1/2k}` for closed-walk measures.
pub fn bipartite_upper_bound(
    m: &MomentSequence,
    w: &AtomWeight,
    k: usize,
    g: &Graph,
) -> Result<BoundResult> {
    positive_k(k)?;
    let name = BoundName::BipartiteUpper;
    let params = BoundParams::measure(m.kind()).with_k(k);
    if m.kind() == MeasureKind::Walks {
        return Ok(BoundResult::inapplicable(
            name,
            params,
            "walk measure is not symmetric",
        )
        .assisted(w.oracle_assisted()));
    }
    if let Some(r) = preamble(m, w, name, &params, 2 * k)? {
        return Ok(r);
    }
    if !g.is_bipartite() {
        return Ok(
            BoundResult::inapplicable(name, params, "graph is not bipartite")
                .assisted(w.oracle_assisted()),
        );
    }
    let value = kth_root(moment(m, 2 * k)? / (2.0 * w.alpha1), 2 * k);
    Ok(BoundResult::ok(name, params, value).assisted(w.oracle_assisted()))
}

/// Largest real root of `Q(r) = det(H_J − α₁ R_J)` with `(R_J)_ab =
/// r^{j_a + j_b − 2}`, requiring `H_{J'} ≻ 0` for `J' = J` minus its largest
/// index. `Q` is expanded exactly through the adjugate:
/// `Q(r) = det H_J − α₁ Σ adj(H_J)_ab r^{j_a + j_b − 2}`.
pub fn hankel_root_upper_bound(m: &MomentSequence, w: &AtomWeight, j: &IndexSet) -> Result<BoundResult> {
    let name = BoundName::HankelRootUpper;
    let params = BoundParams::measure(m.kind()).with_j(j.clone());
    if let Some(r) = preamble(m, w, name, &params, 2 * j.max() - 2)? {
        return Ok(r);
    }
    let assisted = w.oracle_assisted();
    let Some(j_prime) = j.without_last() else {
        return Ok(BoundResult::degenerate(name, params, "Q is constant for a single index")
            .assisted(assisted));
    };
    let h_prime = hankel_block(m, &j_prime)?;
    if h_prime.leading_minors().iter().any(|d| !d.is_positive()) {
        return Ok(
            BoundResult::inapplicable(name, params, "H_J' is not positive definite")
                .assisted(assisted),
        );
    }
    let h = hankel_block(m, j)?;
    let adj = h.adjugate();
    let idx = j.as_slice();
    let det = h.det().to_f64().unwrap_or(f64::INFINITY);
    let mut terms = vec![(0, det)];
    for a in 0..idx.len() {
        for b in 0..idx.len() {
            let c = adj.get(a, b).to_f64().unwrap_or(f64::INFINITY);
            terms.push((idx[a] + idx[b] - 2, -w.alpha1 * c));
        }
    }
    if terms.iter().any(|(_, c)| !c.is_finite()) {
        return Err(Error::Numerical("Hankel determinant exceeds the f64 range".into()));
    }
    let q = Polynomial::from_terms(terms);
    largest_root_result(name, params, &q, assisted)
}

fn largest_root_result(
    name: BoundName,
    params: BoundParams,
    q: &Polynomial,
    assisted: bool,
) -> Result<BoundResult> {
    if q.degree() == 0 {
        return Ok(BoundResult::degenerate(name, params, "Q is constant").assisted(assisted));
    }
    match q.largest_real_root() {
        Some(r) if r >= -ROOT_TOL => Ok(BoundResult::ok(name, params, r.max(0.0)).assisted(assisted)),
        Some(_) => Ok(BoundResult::degenerate(name, params, "Q has no root at r >= 0").assisted(assisted)),
        None => Ok(BoundResult::degenerate(name, params, "Q has no real root").assisted(assisted)),
    }
}

/// Largest root of `Q(r) = m_{2k} r + m_{2k+1} − 2α₁ r^{2k+1}`.
///
/// For `k = 0` the polynomial is linear, `(m_0 − 2α₁) r + m_1`, and bounds
/// `ρ` only when `2α₁ > m_0`.
pub fn stieltjes_root_upper_bound(m: &MomentSequence, w: &AtomWeight, k: usize) -> Result<BoundResult> {
    let name = BoundName::StieltjesRootUpper;
    let params = BoundParams::measure(m.kind()).with_k(k);
    if let Some(r) = preamble(m, w, name, &params, 2 * k + 1)? {
        return Ok(r);
    }
    let assisted = w.oracle_assisted();
    let (a, b) = (moment(m, 2 * k)?, moment(m, 2 * k + 1)?);
    if k == 0 {
        let slope = a - 2.0 * w.alpha1;
        if slope.abs() <= MASS_SLACK * a.max(1.0) {
            return Ok(BoundResult::degenerate(name, params, "m_0 = 2 alpha_1").assisted(assisted));
        }
        if slope > 0.0 {
            return Ok(BoundResult::inapplicable(
                name,
                params,
                "Q increases without bound when m_0 > 2 alpha_1",
            )
            .assisted(assisted));
        }
        return Ok(BoundResult::ok(name, params, b / -slope).assisted(assisted));
    }
    let q = Polynomial::from_terms([(0, b), (1, a), (2 * k + 1, -2.0 * w.alpha1)]);
    largest_root_result(name, params, &q, assisted)
}

/// Largest root of `Q(r) = w_{2k} r + w_{2k+1} − 2·ω/(ω−1)·r^{2k+2}`.
pub fn clique_root_upper_bound(m_w: &MomentSequence, omega: usize, k: usize) -> Result<BoundResult> {
    if m_w.kind() != MeasureKind::Walks {
        return Err(Error::InvalidParams(format!(
            "clique root bound needs walk counts, got {}",
            m_w.kind()
        )));
    }
    m_w.require(2 * k + 1)?;
    let name = BoundName::CliqueRootUpper;
    let params = BoundParams::measure(MeasureKind::Walks).with_k(k);
    if omega < 2 {
        return Ok(BoundResult::inapplicable(name, params, "graph has no edges"));
    }
    let lead = 2.0 * omega as f64 / (omega as f64 - 1.0);
    let q = Polynomial::from_terms([
        (0, moment(m_w, 2 * k + 1)?),
        (1, moment(m_w, 2 * k)?),
        (2 * k + 2, -lead),
    ]);
    largest_root_result(name, params, &q, false)
}

/// `((1 − 1/ω) w_k)^{1/(k+1)}`, the walk/clique bound the even-moment bound
/// with `α₁ = c_1` is compared against.
pub fn clique_walk_value(m_w: &MomentSequence, omega: usize, k: usize) -> Result<f64> {
    let frac = 1.0 - 1.0 / omega.max(1) as f64;
    Ok(kth_root(frac * moment(m_w, k)?, k + 1))
}

/// Clique/walk and eigenvector baselines:
/// `ρ ≤ ((1 − 1/ω) w_k)^{1/(k+1)}` for `k = 0..=K`, `ρ ≤ (1 − 1/ω) c_1`,
/// `ρ ≤ (√w_{2k} max_j u_1j)^{1/k}` for `1 ≤ 2k ≤ K` and
/// `ρ ≤ (w_k max_j u_1j / Σ_j u_1j)^{1/k}` for `k = 1..=K`.
pub fn baseline_upper_bounds(
    g: &Graph,
    m_w: &MomentSequence,
    summary: &SpectralSummary,
    omega: usize,
) -> Result<Vec<BoundResult>> {
    if m_w.kind() != MeasureKind::Walks {
        return Err(Error::InvalidParams(format!(
            "baselines need walk counts, got {}",
            m_w.kind()
        )));
    }
    if omega == 0 || summary.eigenvalues.len() != g.n() {
        return Err(Error::InvalidParams("summary does not match graph".into()));
    }
    let top = m_w.max_order().unwrap_or(0);
    let walks = BoundParams::measure(MeasureKind::Walks);
    let mut out = Vec::new();
    for k in 0..=top {
        out.push(BoundResult::ok(
            BoundName::CliqueWalkBaseline,
            walks.clone().with_k(k),
            clique_walk_value(m_w, omega, k)?,
        ));
    }
    let frac = 1.0 - 1.0 / omega as f64;
    out.push(
        BoundResult::ok(BoundName::CliqueWeightBaseline, walks.clone(), frac * summary.c[0])
            .assisted(true),
    );
    let u = summary.leading_vector();
    let u_max = u.iter().copied().fold(0.0, f64::max);
    let u_sum: f64 = u.iter().sum();
    for k in 1..=top / 2 {
        let v = moment(m_w, 2 * k)?.sqrt() * u_max;
        out.push(
            BoundResult::ok(BoundName::EigvecMaxBaseline, walks.clone().with_k(k), kth_root(v, k))
                .assisted(true),
        );
    }
    for k in 1..=top {
        let params = walks.clone().with_k(k);
        if u_sum <= ALPHA_FLOOR {
            out.push(
                BoundResult::inapplicable(BoundName::EigvecRatioBaseline, params, "leading vector sums to zero")
                    .assisted(true),
            );
            continue;
        }
        let v = moment(m_w, k)? * u_max / u_sum;
        out.push(BoundResult::ok(BoundName::EigvecRatioBaseline, params, kth_root(v, k)).assisted(true));
    }
    Ok(out)
}
