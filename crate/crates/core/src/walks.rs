//! Exact walk counts. `w_k`, `φ_k` and `φ_k(i)` are the moments of the walks
//! measure, the closed-walks measure and the closed-walks measure rooted at
//! vertex `i`.

use std::fmt;

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default number of moments beyond `m_0`.
pub const DEFAULT_MAX_ORDER: usize = 12;

/// Largest graph and walk length accepted by the enumeration oracle.
pub const BRUTE_FORCE_LIMIT: usize = 8;

/// Which spectral measure a moment sequence belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MeasureKind {
    /// `w_k`; atom weights `c_l`.
    Walks,
    /// `φ_k`; unit atom weights.
    ClosedWalks,
    /// `φ_k(i)`; atom weights `c_l^(i)`.
    ClosedWalksAt(usize),
}

impl MeasureKind {
    /// Serialized name, without the vertex.
    pub fn label(&self) -> &'static str {
        match self {
            MeasureKind::Walks => "walks",
            MeasureKind::ClosedWalks => "closed_walks",
            MeasureKind::ClosedWalksAt(_) => "closed_walks_at",
        }
    }

    pub fn vertex(&self) -> Option<usize> {
        match *self {
            MeasureKind::ClosedWalksAt(i) => Some(i),
            _ => None,
        }
    }

    fn from_parts(label: &str, vertex: Option<usize>) -> std::result::Result<Self, String> {
        match (label, vertex) {
            ("walks", None) => Ok(MeasureKind::Walks),
            ("closed_walks", None) => Ok(MeasureKind::ClosedWalks),
            ("closed_walks_at", Some(i)) => Ok(MeasureKind::ClosedWalksAt(i)),
            ("closed_walks_at", None) => Err("closed_walks_at requires a vertex".into()),
            (other, _) => Err(format!("unknown measure kind `{other}`")),
        }
    }
}

impl fmt::Display for MeasureKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MeasureKind::ClosedWalksAt(i) => write!(f, "closed_walks_at({i})"),
            other => f.write_str(other.label()),
        }
    }
}

impl Serialize for MeasureKind {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

impl<'de> Deserialize<'de> for MeasureKind {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        let parsed = match s.strip_prefix("closed_walks_at(") {
            Some(rest) => rest
                .strip_suffix(')')
                .and_then(|v| v.parse().ok())
                .map(MeasureKind::ClosedWalksAt)
                .ok_or_else(|| format!("malformed measure `{s}`")),
            None => MeasureKind::from_parts(&s, None),
        };
        parsed.map_err(serde::de::Error::custom)
    }
}

/// Exact moments `m_0..=m_K` of one spectral measure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentSequence {
    kind: MeasureKind,
    values: Vec<BigUint>,
}

impl MomentSequence {
    pub fn new(kind: MeasureKind, values: Vec<BigUint>) -> Self {
        Self { kind, values }
    }

    /// Convenience constructor from machine integers.
    pub fn from_u64(kind: MeasureKind, values: &[u64]) -> Self {
        Self::new(kind, values.iter().map(|&v| BigUint::from(v)).collect())
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn values(&self) -> &[BigUint] {
        &self.values
    }

    /// Largest available index `K`, or `None` when empty.
    pub fn max_order(&self) -> Option<usize> {
        self.values.len().checked_sub(1)
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    /// `m_k`, or an error when `k > K`.
    pub fn get(&self, k: usize) -> Result<&BigUint> {
        self.values.get(k).ok_or(Error::InsufficientMoments {
            needed: k,
            available: self.values.len().saturating_sub(1),
        })
    }

    /// Fails unless `m_k` is available.
    pub fn require(&self, k: usize) -> Result<()> {
        self.get(k).map(|_| ())
    }

    pub fn to_f64(&self) -> Vec<f64> {
        self.values
            .iter()
            .map(|v| v.to_f64().unwrap_or(f64::INFINITY))
            .collect()
    }

    /// Moments with one entry replaced; used as a negative control by the
    /// verification suite.
    pub fn with_value(&self, k: usize, value: BigUint) -> Self {
        let mut out = self.clone();
        out.values[k] = value;
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(&Repr::from(self)).expect("moment sequence serializes")
    }

    pub fn from_json(text: &str) -> std::result::Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }
}

#[derive(Serialize, Deserialize)]
struct Repr {
    kind: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    vertex: Option<usize>,
    values: Vec<String>,
}

impl From<&MomentSequence> for Repr {
    fn from(m: &MomentSequence) -> Self {
        Repr {
            kind: m.kind.label().to_string(),
            vertex: m.kind.vertex(),
            values: m.values.iter().map(|v| v.to_str_radix(10)).collect(),
        }
    }
}

impl Serialize for MomentSequence {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        Repr::from(self).serialize(s)
    }
}

impl<'de> Deserialize<'de> for MomentSequence {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let repr = Repr::deserialize(d)?;
        let kind = MeasureKind::from_parts(&repr.kind, repr.vertex).map_err(D::Error::custom)?;
        let values = repr
            .values
            .iter()
            .map(|s| {
                BigUint::parse_bytes(s.as_bytes(), 10)
                    .ok_or_else(|| D::Error::custom(format!("not a non-negative integer: `{s}`")))
            })
            .collect::<std::result::Result<_, _>>()?;
        Ok(MomentSequence { kind, values })
    }
}

fn apply_adjacency(g: &Graph, x: &[BigUint]) -> Vec<BigUint> {
    (0..g.n())
        .map(|i| g.neighbors(i).iter().map(|&j| &x[j]).sum())
        .collect()
}

/// `w_0..=w_K`, from `A^k 1` by repeated exact matrix-vector products.
pub fn walk_counts(g: &Graph, max_order: usize) -> MomentSequence {
    let mut x = vec![BigUint::from(1u32); g.n()];
    let mut values = Vec::with_capacity(max_order + 1);
    values.push(x.iter().sum());
    for _ in 0..max_order {
        x = apply_adjacency(g, &x);
        values.push(x.iter().sum());
    }
    MomentSequence::new(MeasureKind::Walks, values)
}

/// `φ_k(i)` for every vertex, `k = 0..=K`: row `i` holds `(A^k)_{ii}`.
pub fn closed_walk_counts_all(g: &Graph, max_order: usize) -> Vec<Vec<BigUint>> {
    (0..g.n())
        .map(|i| rooted_counts(g, i, max_order))
        .collect()
}

fn rooted_counts(g: &Graph, i: usize, max_order: usize) -> Vec<BigUint> {
    let mut x = vec![BigUint::zero(); g.n()];
    x[i] = BigUint::from(1u32);
    let mut out = Vec::with_capacity(max_order + 1);
    out.push(x[i].clone());
    for _ in 0..max_order {
        x = apply_adjacency(g, &x);
        out.push(x[i].clone());
    }
    out
}

/// `φ_0..=φ_K` with `φ_k = trace(A^k)`.
pub fn closed_walk_counts(g: &Graph, max_order: usize) -> MomentSequence {
    let per_vertex = closed_walk_counts_all(g, max_order);
    let values = (0..=max_order)
        .map(|k| per_vertex.iter().map(|row| &row[k]).sum())
        .collect();
    MomentSequence::new(MeasureKind::ClosedWalks, values)
}

/// `φ_0(i)..=φ_K(i)` with `φ_k(i) = (A^k)_{ii}`.
pub fn closed_walk_counts_at(g: &Graph, vertex: usize, max_order: usize) -> Result<MomentSequence> {
    if vertex >= g.n() {
        return Err(Error::VertexOutOfRange { vertex, n: g.n() });
    }
    Ok(MomentSequence::new(
        MeasureKind::ClosedWalksAt(vertex),
        rooted_counts(g, vertex, max_order),
    ))
}

/// Moments of the requested measure.
pub fn moments(g: &Graph, kind: MeasureKind, max_order: usize) -> Result<MomentSequence> {
    match kind {
        MeasureKind::Walks => Ok(walk_counts(g, max_order)),
        MeasureKind::ClosedWalks => Ok(closed_walk_counts(g, max_order)),
        MeasureKind::ClosedWalksAt(i) => closed_walk_counts_at(g, i, max_order),
    }
}

/// Counts from explicit enumeration of vertex sequences.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WalkTally {
    pub walks: u64,
    pub closed: u64,
    pub closed_at: Vec<u64>,
}

/// Enumerates every `k`-walk `(i_0, .., i_k)` depth-first. Exponential;
/// restricted to `n, k <= 8`.
pub fn enumerate_walks_bruteforce(g: &Graph, k: usize) -> Result<WalkTally> {
    if g.n() > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "vertex count for walk enumeration",
            actual: g.n(),
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    if k > BRUTE_FORCE_LIMIT {
        return Err(Error::SizeLimit {
            what: "walk length for enumeration",
            actual: k,
            limit: BRUTE_FORCE_LIMIT,
        });
    }
    let mut tally = WalkTally {
        walks: 0,
        closed: 0,
        closed_at: vec![0; g.n()],
    };
    let mut path = Vec::with_capacity(k + 1);
    for start in 0..g.n() {
        path.clear();
        path.push(start);
        extend(g, k, &mut path, &mut tally);
    }
    Ok(tally)
}

fn extend(g: &Graph, k: usize, path: &mut Vec<usize>, tally: &mut WalkTally) {
    if path.len() == k + 1 {
        tally.walks += 1;
        if path[0] == path[k] {
            tally.closed += 1;
            tally.closed_at[path[0]] += 1;
        }
        return;
    }
    let last = *path.last().expect("non-empty");
    for v in 0..g.n() {
        if g.has_edge(last, v) {
            path.push(v);
            extend(g, k, path, tally);
            path.pop();
        }
    }
}
