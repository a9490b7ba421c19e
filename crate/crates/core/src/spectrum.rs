//! Exact-oracle spectral computations: cyclic Jacobi eigendecomposition of
//! the adjacency matrix, the spectral radius and the spectral weights that
//! serve as atom masses for the upper bounds.

use crate::graph::Graph;
use crate::matrix::Matrix;
use crate::walks::{closed_walk_counts_all, walk_counts};

/// Off-diagonal Frobenius norm target, relative to `‖A‖_F`.
pub const JACOBI_TOL: f64 = 1e-12;
const MAX_SWEEPS: usize = 100;
/// Eigenvalues within this relative distance of `λ_1` are treated as one
/// eigenspace.
const DEGENERACY_TOL: f64 = 1e-9;

/// Eigenpairs of a symmetric matrix, sorted by descending eigenvalue.
#[derive(Debug, Clone)]
pub struct SymmetricEigen {
    pub values: Vec<f64>,
    /// Orthonormal eigenvectors as columns, in the order of `values`.
    pub vectors: Matrix,
}

/// Cyclic Jacobi rotations until the off-diagonal mass falls below
/// `JACOBI_TOL · ‖M‖_F`, followed by one polishing sweep. Only the lower
/// triangle's symmetric part is meaningful; callers check symmetry.
pub fn symmetric_eigen(m: &Matrix) -> SymmetricEigen {
    assert!(m.is_square(), "eigen decomposition needs a square matrix");
    let n = m.rows();
    let mut a = m.clone();
    let mut v = Matrix::identity(n);
    let target = JACOBI_TOL * m.frobenius_norm();
    let mut polished = false;
    for _ in 0..MAX_SWEEPS {
        if off_diagonal_norm(&a) <= target {
            if polished {
                break;
            }
            polished = true;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut a, &mut v, p, q);
            }
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| a[(j, j)].total_cmp(&a[(i, i)]));
    let values = order.iter().map(|&i| a[(i, i)]).collect();
    let mut vectors = Matrix::from_fn(n, n, |i, j| v[(i, order[j])]);
    for j in 0..n {
        normalize_sign(&mut vectors, j);
    }
    SymmetricEigen { values, vectors }
}

/// Smallest eigenvalue of a symmetric matrix (`+∞` for the empty matrix).
pub fn min_eigenvalue(m: &Matrix) -> f64 {
    symmetric_eigen(m)
        .values
        .last()
        .copied()
        .unwrap_or(f64::INFINITY)
}

fn off_diagonal_norm(a: &Matrix) -> f64 {
    let n = a.rows();
    let mut s = 0.0;
    for i in 0..n {
        for j in 0..n {
            if i != j {
                s += a[(i, j)] * a[(i, j)];
            }
        }
    }
    s.sqrt()
}

fn rotate(a: &mut Matrix, v: &mut Matrix, p: usize, q: usize) {
    let apq = a[(p, q)];
    if apq == 0.0 {
        return;
    }
    let theta = (a[(q, q)] - a[(p, p)]) / (2.0 * apq);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;
    let n = a.rows();
    for k in 0..n {
        let akp = a[(k, p)];
        let akq = a[(k, q)];
        a[(k, p)] = c * akp - s * akq;
        a[(k, q)] = s * akp + c * akq;
    }
    for k in 0..n {
        let apk = a[(p, k)];
        let aqk = a[(q, k)];
        a[(p, k)] = c * apk - s * aqk;
        a[(q, k)] = s * apk + c * aqk;
    }
    a[(p, q)] = 0.0;
    a[(q, p)] = 0.0;
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = c * vkp - s * vkq;
        v[(k, q)] = s * vkp + c * vkq;
    }
}

/// Flips column `j` so that its largest-magnitude entry is positive.
fn normalize_sign(u: &mut Matrix, j: usize) {
    let n = u.rows();
    let mut best = 0;
    for i in 1..n {
        if u[(i, j)].abs() > u[(best, j)].abs() + 1e-12 {
            best = i;
        }
    }
    if n > 0 && u[(best, j)] < 0.0 {
        for i in 0..n {
            u[(i, j)] = -u[(i, j)];
        }
    }
}

/// Eigenvalues, eigenvectors and spectral weights of a graph.
#[derive(Debug, Clone)]
pub struct SpectralSummary {
    /// `λ_1 ≥ .. ≥ λ_n`.
    pub eigenvalues: Vec<f64>,
    /// Orthonormal eigenvectors `u_1..u_n` as columns.
    pub eigenvectors: Matrix,
    /// Spectral radius `ρ = λ_1`.
    pub rho: f64,
    /// Multiplicity of `λ_1` as detected numerically.
    pub leading_multiplicity: usize,
    /// `c_l = (Σ_i u_il)²`.
    pub c: Vec<f64>,
    /// `c_l^(i) = u_il²`, indexed `(i, l)`.
    pub c_vertex: Matrix,
}

impl SpectralSummary {
    /// Leading eigenvector `u_1`.
    pub fn leading_vector(&self) -> Vec<f64> {
        self.eigenvectors.column(0)
    }

    /// `c_1` and `c_1^(i)` for every vertex.
    pub fn spectral_weights(&self) -> (f64, Vec<f64>) {
        let n = self.eigenvalues.len();
        (self.c[0], (0..n).map(|i| self.c_vertex[(i, 0)]).collect())
    }

    /// Fundamental weight `Σ_j u_1j`.
    pub fn fundamental_weight(&self) -> f64 {
        self.leading_vector().iter().sum()
    }
}

/// Full eigendecomposition of the adjacency matrix.
///
/// When `λ_1` is repeated (disconnected graphs with several components of
/// maximal spectral radius, or edgeless graphs) the first eigenvector is
/// replaced by the normalized projection of the all-ones vector onto the
/// eigenspace. That vector is entrywise non-negative, so `c_1` equals the
/// full mass the walks measure places at `ρ`; the rest of the eigenspace is
/// re-orthonormalized against it.
pub fn eigen_decompose(g: &Graph) -> SpectralSummary {
    let SymmetricEigen {
        values,
        mut vectors,
    } = symmetric_eigen(&g.adjacency_matrix());
    let n = values.len();
    let rho = values[0];
    let mult = values
        .iter()
        .take_while(|&&l| (rho - l).abs() <= DEGENERACY_TOL * rho.abs().max(1.0))
        .count();
    if mult > 1 {
        reorient_leading_eigenspace(&mut vectors, mult);
    }
    let c = (0..n)
        .map(|l| {
            let s: f64 = (0..n).map(|i| vectors[(i, l)]).sum();
            s * s
        })
        .collect();
    let c_vertex = Matrix::from_fn(n, n, |i, l| vectors[(i, l)] * vectors[(i, l)]);
    SpectralSummary {
        eigenvalues: values,
        eigenvectors: vectors,
        rho,
        leading_multiplicity: mult,
        c,
        c_vertex,
    }
}

fn reorient_leading_eigenspace(u: &mut Matrix, mult: usize) {
    let n = u.rows();
    // coordinates of the all-ones projection in the eigenspace basis
    let coeff: Vec<f64> = (0..mult)
        .map(|l| (0..n).map(|i| u[(i, l)]).sum())
        .collect();
    let norm = coeff.iter().map(|x| x * x).sum::<f64>().sqrt();
    if norm <= 1e-12 {
        return;
    }
    let mut basis: Vec<Vec<f64>> = vec![coeff.iter().map(|x| x / norm).collect()];
    for e in 0..mult {
        if basis.len() == mult {
            break;
        }
        let mut r: Vec<f64> = (0..mult).map(|k| if k == e { 1.0 } else { 0.0 }).collect();
        for b in &basis {
            let dot: f64 = r.iter().zip(b).map(|(x, y)| x * y).sum();
            r.iter_mut().zip(b).for_each(|(x, y)| *x -= dot * y);
        }
        let rn = r.iter().map(|x| x * x).sum::<f64>().sqrt();
        if rn > 1e-8 {
            basis.push(r.into_iter().map(|x| x / rn).collect());
        }
    }
    let old = u.clone();
    for (l, b) in basis.iter().enumerate() {
        for i in 0..n {
            u[(i, l)] = (0..mult).map(|k| old[(i, k)] * b[k]).sum();
        }
        if l > 0 {
            normalize_sign(u, l);
        }
    }
}

/// Worst relative deviations of the three spectral moment identities.
#[derive(Debug, Clone, PartialEq)]
pub struct MomentIdentityReport {
    /// `Σ_l λ_l^k` against `φ_k`.
    pub closed_walks: f64,
    /// `Σ_l c_l^(i) λ_l^k` against `φ_k(i)`, worst vertex.
    pub closed_walks_at: f64,
    /// `Σ_l c_l λ_l^k` against `w_k`.
    pub walks: f64,
    pub tol: f64,
}

impl MomentIdentityReport {
    pub fn passed(&self) -> bool {
        self.worst() <= self.tol
    }

    pub fn worst(&self) -> f64 {
        self.closed_walks.max(self.closed_walks_at).max(self.walks)
    }
}

/// Compares exact walk counts with the spectral sums for `k = 0..=K`.
/// Deviation is measured relative to `max(1, Σ_l weight_l |λ_l|^k)`, the
/// magnitude of the terms being summed.
pub fn verify_moment_identities(g: &Graph, max_order: usize, tol: f64) -> MomentIdentityReport {
    let summary = eigen_decompose(g);
    verify_moment_identities_with(g, &summary, max_order, tol)
}

/// As [`verify_moment_identities`] with a precomputed decomposition.
pub fn verify_moment_identities_with(
    g: &Graph,
    summary: &SpectralSummary,
    max_order: usize,
    tol: f64,
) -> MomentIdentityReport {
    let n = g.n();
    let w = walk_counts(g, max_order).to_f64();
    let rooted: Vec<Vec<f64>> = closed_walk_counts_all(g, max_order)
        .into_iter()
        .map(|row| row.iter().map(|v| num_traits::ToPrimitive::to_f64(v).unwrap_or(f64::INFINITY)).collect())
        .collect();
    let deviation = |weights: &dyn Fn(usize) -> f64, exact: f64, k: usize| {
        let mut sum = 0.0;
        let mut scale = 0.0;
        for (l, lam) in summary.eigenvalues.iter().enumerate() {
            let term = weights(l) * lam.powi(k as i32);
            sum += term;
            scale += term.abs();
        }
        (sum - exact).abs() / scale.max(1.0)
    };
    let mut report = MomentIdentityReport {
        closed_walks: 0.0,
        closed_walks_at: 0.0,
        walks: 0.0,
        tol,
    };
    for k in 0..=max_order {
        let phi: f64 = rooted.iter().map(|r| r[k]).sum();
        report.closed_walks = report.closed_walks.max(deviation(&|_| 1.0, phi, k));
        report.walks = report.walks.max(deviation(&|l| summary.c[l], w[k], k));
        for (i, row) in rooted.iter().enumerate().take(n) {
            let d = deviation(&|l| summary.c_vertex[(i, l)], row[k], k);
            report.closed_walks_at = report.closed_walks_at.max(d);
        }
    }
    report
}
