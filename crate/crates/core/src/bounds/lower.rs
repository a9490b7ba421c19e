//! Lower bounds on the spectral radius from Hankel positivity of walk
//! moments, from triangle counts, and the classical walk-ratio baselines.

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};

use super::{big_ratio, kth_root, BoundName, BoundParams, BoundResult};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::moments::{growth_scale, hamburger_check, hankel_pair, is_psd_scaled, IndexSet};
use crate::spectrum::min_eigenvalue;
use crate::walks::{MeasureKind, MomentSequence};

/// Relative singularity threshold for the 2×2 Hankel determinant.
pub const SINGULAR_TOL: f64 = 1e-12;

/// PSD tolerance of the semidefinite bisection, relative to `|u|·|H| + |S|`.
/// Accepting slightly indefinite pencils can only lower the returned `u`.
pub const SDP_PSD_TOL: f64 = 1e-12;

fn big(m: &MomentSequence, t: usize) -> BigInt {
    BigInt::from(m.get(t).expect("caller checked availability").clone())
}

fn positive_stride(k: usize) -> Result<()> {
    if k == 0 {
        Err(Error::InvalidParams("k must be at least 1".into()))
    } else {
        Ok(())
    }
}

/// `ρ^k ≥ m_{2s+k} / m_{2s}`.
pub fn ratio_lower_bound(m: &MomentSequence, s: usize, k: usize) -> Result<BoundResult> {
    positive_stride(k)?;
    m.require(2 * s + k)?;
    let params = BoundParams::measure(m.kind()).with_s(s).with_k(k);
    let den = big(m, 2 * s);
    if den.is_zero() {
        return Ok(BoundResult::inapplicable(
            BoundName::RatioLower,
            params,
            format!("m_{} = 0", 2 * s),
        ));
    }
    let ratio = big_ratio(&big(m, 2 * s + k), &den);
    Ok(BoundResult::ok(BoundName::RatioLower, params, kth_root(ratio, k)))
}

/// Exact determinants of the 2×2 blocks built on `(m_{2s}, m_{2s+k},
/// m_{2s+2k}, m_{2s+3k})`.
struct TwoByTwo {
    /// `m_{2s} m_{2s+2k}`, the scale for the singularity test.
    diag: BigInt,
    det_h: BigInt,
    det_s: BigInt,
    /// Middle coefficient of `det(uH - S) = det H u² - F u + det S`.
    f: BigInt,
}

fn two_by_two(m: &MomentSequence, s: usize, k: usize) -> Result<TwoByTwo> {
    positive_stride(k)?;
    m.require(2 * s + 3 * k)?;
    let a = big(m, 2 * s);
    let b = big(m, 2 * s + k);
    let c = big(m, 2 * s + 2 * k);
    let d = big(m, 2 * s + 3 * k);
    Ok(TwoByTwo {
        diag: &a * &c,
        det_h: &a * &c - &b * &b,
        det_s: &b * &d - &c * &c,
        f: &a * &d - &b * &c,
    })
}

/// `ρ^{2k} ≥ det S / det H` for the stride-`k` blocks at shift `2s`.
pub fn det_ratio_lower_bound(m: &MomentSequence, s: usize, k: usize) -> Result<BoundResult> {
    let t = two_by_two(m, s, k)?;
    let params = BoundParams::measure(m.kind()).with_s(s).with_k(k);
    let floor = SINGULAR_TOL * t.diag.to_f64().unwrap_or(f64::INFINITY).max(1.0);
    let det_h = t.det_h.to_f64().unwrap_or(f64::INFINITY);
    if det_h <= floor {
        return Ok(BoundResult::inapplicable(
            BoundName::DetRatioLower,
            params,
            "det H is singular",
        ));
    }
    if !t.det_s.is_positive() {
        return Ok(BoundResult::trivial(
            BoundName::DetRatioLower,
            params,
            "det S <= 0",
        ));
    }
    let ratio = big_ratio(&t.det_s, &t.det_h);
    Ok(BoundResult::ok(BoundName::DetRatioLower, params, kth_root(ratio, 2 * k)))
}

/// Larger root of `det H u² − |F| u + det S`, raised to `1/k`.
pub fn quadratic_root_lower_bound(m: &MomentSequence, s: usize, k: usize) -> Result<BoundResult> {
    let t = two_by_two(m, s, k)?;
    let params = BoundParams::measure(m.kind()).with_s(s).with_k(k);
    if !t.det_h.is_positive() {
        return Ok(BoundResult::inapplicable(
            BoundName::QuadraticRootLower,
            params,
            "det H <= 0",
        ));
    }
    let f = t.f.abs();
    let disc = &f * &f - BigInt::from(4) * &t.det_h * &t.det_s;
    let two_h = BigInt::from(2) * &t.det_h;
    let centre = big_ratio(&f, &two_h);
    // disc < 0 is impossible for genuine moments; clamp rather than fail
    let half_width = if disc.is_positive() {
        big_ratio(&disc, &(&two_h * &two_h)).sqrt()
    } else {
        0.0
    };
    Ok(BoundResult::ok(
        BoundName::QuadraticRootLower,
        params,
        kth_root(centre + half_width, k),
    ))
}

/// `|F| / (2 det H)`, the midpoint the quadratic root dominates.
pub fn quadratic_midpoint(m: &MomentSequence, s: usize, k: usize) -> Result<Option<f64>> {
    let t = two_by_two(m, s, k)?;
    if !t.det_h.is_positive() {
        return Ok(None);
    }
    Ok(Some(kth_root(
        big_ratio(&t.f.abs(), &(BigInt::from(2) * &t.det_h)),
        k,
    )))
}

/// `ρ ≥ 3T/2e + √((3T/2e)² + 2e/n)`.
pub fn triangle_edge_lower_bound(g: &Graph) -> BoundResult {
    let e = g.edge_count();
    if e == 0 {
        return BoundResult::inapplicable(
            BoundName::TriangleEdgeLower,
            BoundParams::default(),
            "graph has no edges",
        );
    }
    let t = g.triangle_counts().total as f64;
    let a = 3.0 * t / (2.0 * e as f64);
    let value = a + (a * a + 2.0 * e as f64 / g.n() as f64).sqrt();
    BoundResult::ok(BoundName::TriangleEdgeLower, BoundParams::default(), value)
}

/// `ρ ≥ max_i (T_i + √(T_i² + d_i³)) / d_i` over non-isolated vertices.
/// Never below `√Δ`, which the vertex of maximum degree already gives.
pub fn local_triangle_lower_bound(g: &Graph) -> BoundResult {
    let tri = g.triangle_counts();
    let mut best: Option<(f64, usize)> = None;
    for i in 0..g.n() {
        let d = g.degree(i) as f64;
        if d == 0.0 {
            continue;
        }
        let ti = tri.per_vertex[i] as f64;
        let v = (ti + (ti * ti + d * d * d).sqrt()) / d;
        if best.is_none_or(|(b, _)| v > b) {
            best = Some((v, i));
        }
    }
    let Some((value, vertex)) = best else {
        return BoundResult::inapplicable(
            BoundName::LocalTriangleLower,
            BoundParams::default(),
            "graph has no edges",
        );
    };
    let relaxation = (g.max_degree() as f64).sqrt();
    debug_assert!(value >= relaxation - 1e-12);
    BoundResult::ok(
        BoundName::LocalTriangleLower,
        BoundParams::default().with_vertex(vertex),
        value,
    )
    .with_note(format!("sqrt(max degree) = {relaxation}"))
}

/// `ρ ≥ √Δ`.
pub fn sqrt_max_degree_lower_bound(g: &Graph) -> BoundResult {
    BoundResult::ok(
        BoundName::SqrtMaxDegreeBaseline,
        BoundParams::default(),
        (g.max_degree() as f64).sqrt(),
    )
}

/// Smallest `u` with `u H_n ± S_n ⪰ 0`, by bisection on `[lo, Δ]` to width
/// `tol`. The returned value is the feasible endpoint.
pub fn sdp_lower_bound(
    m: &MomentSequence,
    n: usize,
    max_degree: usize,
    tol: f64,
) -> Result<BoundResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(Error::InvalidParams(format!("tolerance must be positive, got {tol}")));
    }
    m.require(2 * n + 1)?;
    let params = BoundParams::measure(m.kind()).with_order(n);
    if !hamburger_check(m, n, crate::moments::DEFAULT_PSD_TOL)? {
        return Ok(BoundResult::inapplicable(
            BoundName::SdpLower,
            params,
            "H_n is not positive semidefinite",
        ));
    }
    let scale = growth_scale(m);
    let (h, s) = hankel_pair(m, &IndexSet::leading(n))?.to_f64_scaled(scale);
    let (h_mag, s_mag) = (h.max_abs(), s.max_abs());
    let feasible = |u: f64| {
        let us = u / scale;
        let mag = us * h_mag + s_mag;
        is_psd_scaled(&h.combine(us, &s, -1.0), SDP_PSD_TOL, mag)
            && is_psd_scaled(&h.combine(us, &s, 1.0), SDP_PSD_TOL, mag)
    };

    // every 1×1 diagonal constraint u m_{2s} ≥ m_{2s+1} is implied
    let mut lo: f64 = 0.0;
    for s_idx in 0..=n {
        let r = ratio_lower_bound(m, s_idx, 1)?;
        if let Some(v) = r.value {
            lo = lo.max(v);
        }
    }
    if feasible(lo) {
        return Ok(BoundResult::ok(BoundName::SdpLower, params, lo));
    }
    let mut hi = max_degree as f64;
    if hi < lo || !feasible(hi) {
        hi = hi.max(lo) + 1.0;
        if !feasible(hi) {
            return Err(Error::Numerical(format!(
                "semidefinite constraints infeasible at u = {hi} for {}",
                m.kind()
            )));
        }
    }
    while hi - lo > tol {
        let mid = 0.5 * (lo + hi);
        if mid <= lo || mid >= hi {
            break;
        }
        if feasible(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    Ok(BoundResult::ok(BoundName::SdpLower, params, hi))
}

/// Smallest eigenvalue of `u H_n ± S_n` (the worse sign), after rescaling.
/// Non-negative exactly when `u` is feasible for the semidefinite bound.
pub fn sdp_margin(m: &MomentSequence, n: usize, u: f64) -> Result<f64> {
    let scale = growth_scale(m);
    let (h, s): (Matrix, Matrix) = hankel_pair(m, &IndexSet::leading(n))?.to_f64_scaled(scale);
    let us = u / scale;
    Ok(min_eigenvalue(&h.combine(us, &s, -1.0)).min(min_eigenvalue(&h.combine(us, &s, 1.0))))
}

/// Walk-ratio baselines `(w_1/w_0, √(w_2/w_0), √(w_4/w_2), √(w_6/w_4))`, the
/// family `(w_{2s+r}/w_{2s})^{1/r}` for each extra `(s, r)`, and `√Δ`.
/// Ratios needing moments beyond the sequence are skipped.
pub fn baseline_lower_bounds(
    g: &Graph,
    m_w: &MomentSequence,
    extra: &[(usize, usize)],
) -> Result<Vec<BoundResult>> {
    if m_w.kind() != MeasureKind::Walks {
        return Err(Error::InvalidParams(format!(
            "walk-ratio baselines need walk counts, got {}",
            m_w.kind()
        )));
    }
    let available = m_w.max_order().unwrap_or(0);
    let mut pairs = vec![(0, 1), (0, 2), (1, 2), (2, 2)];
    for &p in extra {
        if !pairs.contains(&p) {
            pairs.push(p);
        }
    }
    let mut out = Vec::new();
    for (s, r) in pairs {
        if r == 0 || 2 * s + r > available {
            continue;
        }
        let mut b = ratio_lower_bound(m_w, s, r)?;
        b.name = BoundName::WalkRatioBaseline;
        out.push(b);
    }
    out.push(sqrt_max_degree_lower_bound(g));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Family;
    use crate::spectrum::eigen_decompose;
    use crate::walks::{closed_walk_counts, closed_walk_counts_at, walk_counts};

    fn phi(values: &[u64]) -> MomentSequence {
        MomentSequence::from_u64(MeasureKind::ClosedWalks, values)
    }

    fn w(values: &[u64]) -> MomentSequence {
        MomentSequence::from_u64(MeasureKind::Walks, values)
    }

    fn gen(spec: &str) -> Graph {
        Graph::generate(&spec.parse().unwrap()).unwrap()
    }

    fn val(r: Result<BoundResult>) -> f64 {
        r.unwrap().value.unwrap()
    }

    #[test]
    fn ratio_examples() {
        assert_eq!(val(ratio_lower_bound(&phi(&[3, 0, 6, 6]), 1, 1)), 1.0);
        assert_eq!(val(ratio_lower_bound(&w(&[3, 6]), 0, 1)), 2.0);
        // w(P_3) = (3, 4, 6)
        assert!((val(ratio_lower_bound(&w(&[3, 4, 6]), 0, 2)) - 2f64.sqrt()).abs() < 1e-15);
        let r = ratio_lower_bound(&phi(&[0, 0, 0]), 0, 1).unwrap();
        assert!(!r.applicable());
        assert!(ratio_lower_bound(&phi(&[3, 0]), 1, 1).is_err());
        assert!(ratio_lower_bound(&phi(&[3, 0]), 0, 0).is_err());
    }

    #[test]
    fn det_ratio_examples() {
        let r = det_ratio_lower_bound(&phi(&[3, 0, 6, 6]), 0, 1).unwrap();
        assert_eq!((r.status, r.value), (super::super::Status::Trivial, Some(0.0)));
        let r = det_ratio_lower_bound(&phi(&[3, 0, 4, 0]), 0, 1).unwrap();
        assert_eq!(r.value, Some(0.0));
        // star centre: (1, 0, 4, 0, 16, 0, 64)
        let star = phi(&[1, 0, 4, 0, 16, 0, 64]);
        let r = det_ratio_lower_bound(&star, 0, 2).unwrap();
        assert_eq!(r.status, super::super::Status::Inapplicable);
    }

    #[test]
    fn quadratic_root_examples() {
        assert!((val(quadratic_root_lower_bound(&phi(&[3, 0, 6, 6]), 0, 1)) - 2.0).abs() < 1e-12);
        let p3 = val(quadratic_root_lower_bound(&phi(&[3, 0, 4, 0]), 0, 1));
        assert!((p3 - 2.0 / 3f64.sqrt()).abs() < 1e-12);
        let c4 = val(quadratic_root_lower_bound(&phi(&[4, 0, 8, 0]), 0, 1));
        assert!((c4 - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn triangle_examples() {
        assert!((triangle_edge_lower_bound(&gen("complete:3")).value.unwrap() - 2.0).abs() < 1e-12);
        let p3 = triangle_edge_lower_bound(&gen("path:3")).value.unwrap();
        assert!((p3 - (4.0f64 / 3.0).sqrt()).abs() < 1e-12);
        let c4 = triangle_edge_lower_bound(&gen("cycle:4")).value.unwrap();
        assert!((c4 - 2f64.sqrt()).abs() < 1e-12);
        let edgeless = Graph::from_edges(3, []).unwrap();
        assert!(!triangle_edge_lower_bound(&edgeless).applicable());
        assert!(!local_triangle_lower_bound(&edgeless).applicable());

        let p3 = local_triangle_lower_bound(&gen("path:3"));
        assert!((p3.value.unwrap() - 2f64.sqrt()).abs() < 1e-12);
        assert_eq!(p3.params.vertex, Some(1));
        let star = local_triangle_lower_bound(&gen("star:4")).value.unwrap();
        assert!((star - 2.0).abs() < 1e-12);
        let k3 = local_triangle_lower_bound(&gen("complete:3")).value.unwrap();
        assert!((k3 - 2.0).abs() < 1e-12);
    }

    #[test]
    fn sdp_examples() {
        let k3 = val(sdp_lower_bound(&phi(&[3, 0, 6, 6]), 1, 2, 1e-10));
        assert!((k3 - 2.0).abs() < 1e-6, "{k3}");
        let p3 = val(sdp_lower_bound(&phi(&[3, 0, 4, 0]), 1, 2, 1e-10));
        assert!((p3 - 2.0 / 3f64.sqrt()).abs() < 1e-6, "{p3}");
        assert_eq!(val(sdp_lower_bound(&phi(&[2, 0]), 0, 1, 1e-10)), 0.0);
        let bad = phi(&[1, 2, 1, 0]);
        assert!(!sdp_lower_bound(&bad, 1, 2, 1e-10).unwrap().applicable());
    }

    #[test]
    fn baseline_examples() {
        let k3 = gen("complete:3");
        let b = baseline_lower_bounds(&k3, &walk_counts(&k3, 6), &[]).unwrap();
        assert_eq!(b.len(), 5);
        for r in &b[..4] {
            assert!((r.value.unwrap() - 2.0).abs() < 1e-12);
        }
        let p3 = gen("path:3");
        let b = baseline_lower_bounds(&p3, &walk_counts(&p3, 6), &[]).unwrap();
        assert!((b[0].value.unwrap() - 4.0 / 3.0).abs() < 1e-15);
        assert!((b[1].value.unwrap() - 2f64.sqrt()).abs() < 1e-15);
        let star = gen("star:4");
        let b = baseline_lower_bounds(&star, &walk_counts(&star, 6), &[(2, 1)]).unwrap();
        assert_eq!(b.last().unwrap().value, Some(2.0));
        assert!(b.iter().any(|r| r.params == BoundParams::measure(MeasureKind::Walks).with_s(2).with_k(1)));
    }

    #[test]
    fn regular_walk_ratio_is_exact() {
        for spec in ["cycle:7", "complete:6", "complete_bipartite:4,4"] {
            let g = gen(spec);
            let rho = g.max_degree() as f64;
            assert_eq!(val(ratio_lower_bound(&walk_counts(&g, 1), 0, 1)), rho);
        }
    }

    #[test]
    fn lower_bounds_hold_on_random_graphs() {
        for seed in 0..20 {
            let g = Graph::generate(&Family::ErdosRenyi { n: 10, p: 0.35, seed }).unwrap();
            let rho = eigen_decompose(&g).rho;
            let mut seqs = vec![walk_counts(&g, 12), closed_walk_counts(&g, 12)];
            for i in 0..g.n() {
                seqs.push(closed_walk_counts_at(&g, i, 12).unwrap());
            }
            for m in &seqs {
                for s in 0..=3 {
                    for k in (1..=3).filter(|k| 2 * s + 3 * k <= 12) {
                        for r in [
                            ratio_lower_bound(m, s, k),
                            det_ratio_lower_bound(m, s, k),
                            quadratic_root_lower_bound(m, s, k),
                        ] {
                            let r = r.unwrap();
                            assert!(!r.violates(rho, 1e-9), "{r:?} rho={rho}");
                        }
                        let q = quadratic_root_lower_bound(m, s, k).unwrap();
                        if let (Some(v), Some(mid)) = (q.value, quadratic_midpoint(m, s, k).unwrap()) {
                            assert!(v >= mid - 1e-12);
                        }
                    }
                }
                let mut prev = 0.0;
                for n in 0..=5 {
                    let v = val(sdp_lower_bound(m, n, g.max_degree(), 1e-10));
                    assert!(v <= rho + 1e-7, "sdp n={n} {v} > {rho}");
                    assert!(v >= prev - 1e-6, "sdp not monotone at n={n}");
                    prev = v;
                }
            }
            assert!(!triangle_edge_lower_bound(&g).violates(rho, 1e-9));
            assert!(!local_triangle_lower_bound(&g).violates(rho, 1e-9));
        }
    }
}
