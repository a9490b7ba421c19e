//! Hankel machinery of the moment problem: principal Hankel blocks `H_J(m)`
//! and shifted blocks `S_J(m)`, stride subsequences, and PSD feasibility.
//!
//! Index sets use 1-based principal-submatrix positions: position `j`
//! corresponds to row `j - 1` of the full Hankel matrix, so
//! `H_J[a][b] = m_{j_a + j_b - 2}` and `S_J[a][b] = m_{j_a + j_b - 1}`.

use num_bigint::{BigInt, BigUint};
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrix::{IntMatrix, Matrix};
use crate::spectrum::min_eigenvalue;
use crate::walks::MomentSequence;

/// Default relative PSD tolerance.
pub const DEFAULT_PSD_TOL: f64 = 1e-9;

/// Validated 1-based index set, sorted ascending.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct IndexSet(Vec<usize>);

impl TryFrom<Vec<usize>> for IndexSet {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<IndexSet> for Vec<usize> {
    fn from(j: IndexSet) -> Self {
        j.0
    }
}

impl IndexSet {
    pub fn new(indices: impl IntoIterator<Item = usize>) -> Result<Self> {
        let mut v: Vec<usize> = indices.into_iter().collect();
        if v.is_empty() {
            return Err(Error::InvalidIndexSet("index set is empty".into()));
        }
        if v.contains(&0) {
            return Err(Error::InvalidIndexSet("indices are 1-based".into()));
        }
        v.sort_unstable();
        if v.windows(2).any(|w| w[0] == w[1]) {
            return Err(Error::InvalidIndexSet(format!("repeated index in {v:?}")));
        }
        Ok(Self(v))
    }

    /// `{1, .., n + 1}`, the index set of the full `H_n`.
    pub fn leading(n: usize) -> Self {
        Self((1..=n + 1).collect())
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max(&self) -> usize {
        *self.0.last().expect("index sets are non-empty")
    }

    /// The set without its largest index, or `None` for a singleton.
    pub fn without_last(&self) -> Option<Self> {
        (self.0.len() > 1).then(|| Self(self.0[..self.0.len() - 1].to_vec()))
    }
}

impl std::fmt::Display for IndexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let parts: Vec<String> = self.0.iter().map(usize::to_string).collect();
        write!(f, "{{{}}}", parts.join(","))
    }
}

impl std::str::FromStr for IndexSet {
    type Err = Error;

    /// Parses `1,2,3` or `{1,2,3}`.
    fn from_str(s: &str) -> Result<Self> {
        let inner = s.trim().trim_start_matches('{').trim_end_matches('}');
        let parsed = inner
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidIndexSet(format!("malformed index `{t}`")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(parsed)
    }
}

fn moment(m: &MomentSequence, t: usize) -> Result<BigInt> {
    m.get(t).map(|v| BigInt::from(v.clone()))
}

/// `H_J(m)` alone; needs moments through `2·max(J) − 2`.
pub fn hankel_block(m: &MomentSequence, j: &IndexSet) -> Result<IntMatrix> {
    m.require(2 * j.max() - 2)?;
    let idx = j.as_slice();
    let h = IntMatrix::from_fn(idx.len(), |a, b| {
        moment(m, idx[a] + idx[b] - 2).expect("checked above")
    });
    Ok(h)
}

/// `H_J(m)` and `S_J(m)` with exact integer entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HankelPair {
    pub indices: IndexSet,
    pub h: IntMatrix,
    pub s: IntMatrix,
}

impl HankelPair {
    /// Float copies of `(H, S)` for the measure rescaled by `1/scale`:
    /// entry `m_t` becomes `m_t / scale^t`. With a power-of-two scale this is
    /// exact up to the conversion from integers, and `uH ± S ⪰ 0` holds iff
    /// `(u/scale)H' ± S' ⪰ 0`.
    pub fn to_f64_scaled(&self, scale: f64) -> (Matrix, Matrix) {
        let idx = self.indices.as_slice();
        let h = self
            .h
            .to_f64_scaled(|a, b| scale.powi((idx[a] + idx[b] - 2) as i32));
        let s = self
            .s
            .to_f64_scaled(|a, b| scale.powi((idx[a] + idx[b] - 1) as i32));
        (h, s)
    }
}

/// Builds `H_J(m)` and `S_J(m)`; needs moments through `2·max(J) − 1`.
pub fn hankel_pair(m: &MomentSequence, j: &IndexSet) -> Result<HankelPair> {
    m.require(2 * j.max() - 1)?;
    let idx = j.as_slice();
    let h = IntMatrix::from_fn(idx.len(), |a, b| moment(m, idx[a] + idx[b] - 2).expect("checked"));
    let s = IntMatrix::from_fn(idx.len(), |a, b| moment(m, idx[a] + idx[b] - 1).expect("checked"));
    Ok(HankelPair {
        indices: j.clone(),
        h,
        s,
    })
}

/// `(m_q, m_{q+k}, .., m_{q+(count-1)k})`, the moments of the measure that
/// moves each atom `λ` to `λ^k` with weight multiplied by `λ^q`.
pub fn shifted_subsequence(
    m: &MomentSequence,
    q: usize,
    k: usize,
    count: usize,
) -> Result<Vec<BigUint>> {
    if q % 2 == 1 {
        return Err(Error::OddShift(q));
    }
    if k == 0 {
        return Err(Error::InvalidParams("stride k must be at least 1".into()));
    }
    if count == 0 {
        return Ok(Vec::new());
    }
    m.require(q + (count - 1) * k)?;
    Ok((0..count)
        .map(|t| m.get(q + t * k).expect("checked").clone())
        .collect())
}

/// Power-of-two scale close to the growth rate `(m_{2j}/m_0)^{1/2j}` of the
/// sequence, using the largest available even index. Dividing `m_t` by
/// `scale^t` keeps Hankel entries of comparable size without rounding.
pub fn growth_scale(m: &MomentSequence) -> f64 {
    let Some(k_max) = m.max_order() else {
        return 1.0;
    };
    let m0 = m.values()[0].to_f64().unwrap_or(0.0);
    let top = k_max - k_max % 2;
    if m0 <= 0.0 || top == 0 {
        return 1.0;
    }
    let mt = m.values()[top].to_f64().unwrap_or(f64::MAX);
    if mt <= 0.0 {
        return 1.0;
    }
    let rate = ((mt.ln() - m0.ln()) / top as f64).exp();
    if !rate.is_finite() || rate <= 0.0 {
        return 1.0;
    }
    2f64.powi(rate.log2().round() as i32)
}

/// `true` iff the smallest eigenvalue of the symmetric matrix `M` is at
/// least `−tol·max(1, max|M_ab|)`.
pub fn is_psd(m: &Matrix, tol: f64) -> Result<bool> {
    let scale = m.max_abs().max(1.0);
    let asym = m.asymmetry();
    if asym > tol * scale {
        return Err(Error::Asymmetric(asym));
    }
    Ok(min_eigenvalue(m) >= -tol * scale)
}

/// PSD test against a caller-supplied magnitude: `λ_min(M) ≥ −tol·scale`.
/// For `uH ± S` the scale should come from the operands, not from `M`,
/// which may cancel to rounding noise.
pub fn is_psd_scaled(m: &Matrix, tol: f64, scale: f64) -> bool {
    min_eigenvalue(m) >= -tol * scale
}

/// Hamburger condition at order `n`: `H_n(m) ⪰ 0` within `tol`.
pub fn hamburger_check(m: &MomentSequence, n: usize, tol: f64) -> Result<bool> {
    m.require(2 * n)?;
    let j = IndexSet::leading(n);
    let h = hankel_block(m, &j)?;
    let scale = growth_scale(m);
    let idx = j.as_slice();
    let hf = h.to_f64_scaled(|a, b| scale.powi((idx[a] + idx[b] - 2) as i32));
    is_psd(&hf, tol)
}

/// Hamburger check on a raw signed sequence. Exposed for sequences that
/// cannot come from a graph (negative entries).
pub fn hamburger_check_signed(values: &[i64], n: usize, tol: f64) -> Result<bool> {
    if values.len() < 2 * n + 1 {
        return Err(Error::InsufficientMoments {
            needed: 2 * n,
            available: values.len().saturating_sub(1),
        });
    }
    let h = Matrix::from_fn(n + 1, n + 1, |a, b| values[a + b] as f64);
    is_psd(&h, tol)
}

/// Minimum eigenvalue of `H_n(m)` relative to its largest entry, after
/// growth rescaling. Non-negative up to rounding for genuine moment
/// sequences.
pub fn hamburger_margin(m: &MomentSequence, n: usize) -> Result<f64> {
    let j = IndexSet::leading(n);
    let h = hankel_block(m, &j)?;
    let scale = growth_scale(m);
    let idx = j.as_slice();
    let hf = h.to_f64_scaled(|a, b| scale.powi((idx[a] + idx[b] - 2) as i32));
    let denom = hf.max_abs();
    if denom == 0.0 {
        return Ok(0.0);
    }
    Ok(min_eigenvalue(&hf) / denom)
}

/// `true` when every entry of the integer matrix is zero.
pub fn is_zero_matrix(m: &IntMatrix) -> bool {
    (0..m.dim()).all(|i| (0..m.dim()).all(|j| m.get(i, j).is_zero()))
}
