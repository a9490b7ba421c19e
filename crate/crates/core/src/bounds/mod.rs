//! Bound results shared by the lower and upper bound families.

pub mod lower;
pub mod upper;

use std::cmp::Ordering;
use std::fmt;

use num_bigint::{BigInt, Sign};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::moments::IndexSet;
use crate::walks::MeasureKind;

pub use lower::*;
pub use upper::*;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundKind {
    Lower,
    Upper,
}

/// Every bound the library evaluates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum BoundName {
    RatioLower,
    DetRatioLower,
    QuadraticRootLower,
    TriangleEdgeLower,
    LocalTriangleLower,
    SdpLower,
    /// `w_{2s+k}/w_{2s}` walk-ratio baselines.
    WalkRatioBaseline,
    SqrtMaxDegreeBaseline,
    EvenMomentUpper,
    TwoPointUpper,
    EigvecDegreeUpper,
    BipartiteUpper,
    HankelRootUpper,
    StieltjesRootUpper,
    CliqueRootUpper,
    /// `((1 - 1/ω) w_k)^{1/(k+1)}`.
    CliqueWalkBaseline,
    /// `(1 - 1/ω) c_1`.
    CliqueWeightBaseline,
    /// `(√w_{2k} · max u_1j)^{1/k}`.
    EigvecMaxBaseline,
    /// `(w_k · max u_1j / Σ u_1j)^{1/k}`.
    EigvecRatioBaseline,
}

impl BoundName {
    pub const ALL: [BoundName; 19] = [
        BoundName::RatioLower,
        BoundName::DetRatioLower,
        BoundName::QuadraticRootLower,
        BoundName::TriangleEdgeLower,
        BoundName::LocalTriangleLower,
        BoundName::SdpLower,
        BoundName::WalkRatioBaseline,
        BoundName::SqrtMaxDegreeBaseline,
        BoundName::EvenMomentUpper,
        BoundName::TwoPointUpper,
        BoundName::EigvecDegreeUpper,
        BoundName::BipartiteUpper,
        BoundName::HankelRootUpper,
        BoundName::StieltjesRootUpper,
        BoundName::CliqueRootUpper,
        BoundName::CliqueWalkBaseline,
        BoundName::CliqueWeightBaseline,
        BoundName::EigvecMaxBaseline,
        BoundName::EigvecRatioBaseline,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            BoundName::RatioLower => "ratio_lower",
            BoundName::DetRatioLower => "det_ratio_lower",
            BoundName::QuadraticRootLower => "quadratic_root_lower",
            BoundName::TriangleEdgeLower => "triangle_edge_lower",
            BoundName::LocalTriangleLower => "local_triangle_lower",
            BoundName::SdpLower => "sdp_lower",
            BoundName::WalkRatioBaseline => "walk_ratio_baseline",
            BoundName::SqrtMaxDegreeBaseline => "sqrt_max_degree_baseline",
            BoundName::EvenMomentUpper => "even_moment_upper",
            BoundName::TwoPointUpper => "two_point_upper",
            BoundName::EigvecDegreeUpper => "eigvec_degree_upper",
            BoundName::BipartiteUpper => "bipartite_upper",
            BoundName::HankelRootUpper => "hankel_root_upper",
            BoundName::StieltjesRootUpper => "stieltjes_root_upper",
            BoundName::CliqueRootUpper => "clique_root_upper",
            BoundName::CliqueWalkBaseline => "clique_walk_baseline",
            BoundName::CliqueWeightBaseline => "clique_weight_baseline",
            BoundName::EigvecMaxBaseline => "eigvec_max_baseline",
            BoundName::EigvecRatioBaseline => "eigvec_ratio_baseline",
        }
    }

    pub fn kind(&self) -> BoundKind {
        match self {
            BoundName::RatioLower
            | BoundName::DetRatioLower
            | BoundName::QuadraticRootLower
            | BoundName::TriangleEdgeLower
            | BoundName::LocalTriangleLower
            | BoundName::SdpLower
            | BoundName::WalkRatioBaseline
            | BoundName::SqrtMaxDegreeBaseline => BoundKind::Lower,
            _ => BoundKind::Upper,
        }
    }
}

impl fmt::Display for BoundName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl std::str::FromStr for BoundName {
    type Err = crate::Error;

    fn from_str(s: &str) -> crate::Result<Self> {
        Self::ALL
            .into_iter()
            .find(|b| b.as_str() == s)
            .ok_or_else(|| crate::Error::InvalidParams(format!("unknown bound `{s}`")))
    }
}

/// Outcome classification. Only `Ok` and `Trivial` carry a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    /// Holds vacuously; the value is the floor 0.
    Trivial,
    /// The construction collapses (constant polynomial, no real root, ..).
    Degenerate,
    /// A precondition fails on this input (singular block, non-bipartite, ..).
    Inapplicable,
}

/// Parameters a bound was evaluated with; unused slots are `None`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct BoundParams {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub measure: Option<MeasureKind>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub s: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub j: Option<IndexSet>,
    /// Hankel order of the semidefinite bound.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub order: Option<usize>,
    /// Vertex attaining a max/min over vertices.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub vertex: Option<usize>,
}

impl BoundParams {
    pub fn measure(kind: MeasureKind) -> Self {
        Self {
            measure: Some(kind),
            ..Self::default()
        }
    }

    pub fn with_s(mut self, s: usize) -> Self {
        self.s = Some(s);
        self
    }

    pub fn with_k(mut self, k: usize) -> Self {
        self.k = Some(k);
        self
    }

    pub fn with_j(mut self, j: IndexSet) -> Self {
        self.j = Some(j);
        self
    }

    pub fn with_order(mut self, n: usize) -> Self {
        self.order = Some(n);
        self
    }

    pub fn with_vertex(mut self, v: usize) -> Self {
        self.vertex = Some(v);
        self
    }
}

impl fmt::Display for BoundParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        if let Some(m) = &self.measure {
            parts.push(m.to_string());
        }
        if let Some(s) = self.s {
            parts.push(format!("s={s}"));
        }
        if let Some(k) = self.k {
            parts.push(format!("k={k}"));
        }
        if let Some(j) = &self.j {
            parts.push(format!("J={j}"));
        }
        if let Some(n) = self.order {
            parts.push(format!("n={n}"));
        }
        if let Some(v) = self.vertex {
            parts.push(format!("i={v}"));
        }
        f.write_str(&parts.join(" "))
    }
}

/// One evaluated bound. `value` is `Some` and finite exactly when the status
/// is `Ok` or `Trivial`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundResult {
    pub name: BoundName,
    pub kind: BoundKind,
    pub value: Option<f64>,
    pub params: BoundParams,
    pub status: Status,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    /// The atom weight came from an eigendecomposition.
    #[serde(default)]
    pub oracle_assisted: bool,
}

impl BoundResult {
    pub fn ok(name: BoundName, params: BoundParams, value: f64) -> Self {
        debug_assert!(value.is_finite(), "{name} produced {value}");
        Self {
            name,
            kind: name.kind(),
            value: Some(value),
            params,
            status: Status::Ok,
            note: None,
            oracle_assisted: false,
        }
    }

    pub fn trivial(name: BoundName, params: BoundParams, reason: impl Into<String>) -> Self {
        Self {
            status: Status::Trivial,
            note: Some(reason.into()),
            ..Self::ok(name, params, 0.0)
        }
    }

    pub fn degenerate(name: BoundName, params: BoundParams, reason: impl Into<String>) -> Self {
        Self::without_value(name, params, Status::Degenerate, reason)
    }

    pub fn inapplicable(name: BoundName, params: BoundParams, reason: impl Into<String>) -> Self {
        Self::without_value(name, params, Status::Inapplicable, reason)
    }

    fn without_value(
        name: BoundName,
        params: BoundParams,
        status: Status,
        reason: impl Into<String>,
    ) -> Self {
        Self {
            name,
            kind: name.kind(),
            value: None,
            params,
            status,
            note: Some(reason.into()),
            oracle_assisted: false,
        }
    }

    pub fn with_note(mut self, note: impl Into<String>) -> Self {
        self.note = Some(note.into());
        self
    }

    pub fn assisted(mut self, yes: bool) -> Self {
        self.oracle_assisted = yes;
        self
    }

    pub fn applicable(&self) -> bool {
        self.value.is_some()
    }

    /// Signed slack against `rho`: `rho - value` for lower bounds and
    /// `value - rho` for upper bounds. Negative means the bound is violated.
    pub fn gap(&self, rho: f64) -> Option<f64> {
        self.value.map(|v| match self.kind {
            BoundKind::Lower => rho - v,
            BoundKind::Upper => v - rho,
        })
    }

    /// `true` when applicable and on the wrong side of `rho` by more than `tol`.
    pub fn violates(&self, rho: f64, tol: f64) -> bool {
        self.gap(rho).is_some_and(|g| g < -tol)
    }

    /// Deterministic report order: name, then parameters.
    pub fn order_key(&self, other: &Self) -> Ordering {
        self.name
            .as_str()
            .cmp(other.name.as_str())
            .then_with(|| self.params.cmp(&other.params))
    }
}

/// Sorts results into report order.
pub fn sort_results(results: &mut [BoundResult]) {
    results.sort_by(BoundResult::order_key);
}

/// `a / b` as `f64`, correct for operands far beyond the `f64` range.
pub(crate) fn big_ratio(a: &BigInt, b: &BigInt) -> f64 {
    if b.is_zero() {
        return match a.sign() {
            Sign::Minus => f64::NEG_INFINITY,
            Sign::NoSign => f64::NAN,
            Sign::Plus => f64::INFINITY,
        };
    }
    let (fa, ea) = split_exp(a);
    let (fb, eb) = split_exp(b);
    let shift = ea - eb;
    (fa / fb) * 2f64.powi(shift.clamp(-2000, 2000) as i32)
}

/// `x^{1/k}` for `x ≥ 0`, using `sqrt` where possible so exact squares stay
/// exact.
pub(crate) fn kth_root(x: f64, k: usize) -> f64 {
    match k {
        1 => x,
        2 => x.sqrt(),
        4 => x.sqrt().sqrt(),
        _ => x.powf(1.0 / k as f64),
    }
}

/// `x = m · 2^e` with `|m|` below `2^64`.
fn split_exp(x: &BigInt) -> (f64, i64) {
    let bits = x.bits() as i64;
    let shift = (bits - 64).max(0);
    let m = (x >> shift as usize).to_f64().expect("at most 64 bits");
    (m, shift)
}
