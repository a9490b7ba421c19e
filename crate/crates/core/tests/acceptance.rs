//! Acceptance suite: one PASS/FAIL line per criterion. Reference values come
//! from oracles written here (depth-first walk enumeration, closed-form and
//! power-iteration spectral radii, subset-enumeration clique numbers), not
//! from the library.

use std::process::ExitCode;
use std::time::Instant;

use num_bigint::BigUint;
use num_traits::ToPrimitive;

use swb_core::bounds::{
    bipartite_upper_bound, even_moment_upper_bound, hankel_root_upper_bound,
    local_triangle_lower_bound, sdp_lower_bound, stieltjes_root_upper_bound,
    triangle_edge_lower_bound, two_point_upper_bound, AtomWeight,
};
use swb_core::corpus::{connected_graphs, erdos_renyi_samples, standard_families, CorpusEntry};
use swb_core::matrix::Matrix;
use swb_core::spectrum::{eigen_decompose, symmetric_eigen};
use swb_core::sweep::{evaluate, MeasureSelection, SweepConfig};
use swb_core::walks::{closed_walk_counts, moments, walk_counts, MeasureKind, MomentSequence};
use swb_core::{Family, Graph, IndexSet};

struct Outcome {
    passed: bool,
    detail: String,
}

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

type Criterion = (&'static str, fn(&Corpus) -> Outcome);

struct Corpus {
    entries: Vec<CorpusEntry>,
    /// Spectral radius from the reference oracle, per entry.
    rho: Vec<f64>,
}

fn corpus() -> Corpus {
    let mut entries = standard_families(12);
    entries.extend(erdos_renyi_samples(15, 0.3, 0..=99).unwrap());
    let rho = entries.iter().map(reference_rho).collect();
    Corpus { entries, rho }
}

/// Closed forms for the families, power iteration otherwise.
fn reference_rho(e: &CorpusEntry) -> f64 {
    use std::f64::consts::PI;
    match e.family.expect("generated") {
        Family::Path(1) => 0.0,
        Family::Path(n) => 2.0 * (PI / (n as f64 + 1.0)).cos(),
        Family::Cycle(_) => 2.0,
        Family::Complete(n) => n as f64 - 1.0,
        Family::Star(l) => (l as f64).sqrt(),
        Family::CompleteBipartite(a, b) => ((a * b) as f64).sqrt(),
        Family::ErdosRenyi { .. } => power_iteration_rho(&e.graph),
    }
}

/// Power iteration on `A + I` from the all-ones vector, which has a positive
/// component along the leading eigenspace of every graph.
fn power_iteration_rho(g: &Graph) -> f64 {
    let n = g.n();
    let mut x = vec![1.0 / (n as f64).sqrt(); n];
    let mut last = f64::NAN;
    for _ in 0..200_000 {
        let ax: Vec<f64> = (0..n).map(|i| g.neighbors(i).iter().map(|&j| x[j]).sum()).collect();
        let rq: f64 = x.iter().zip(&ax).map(|(a, b)| a * b).sum();
        let y: Vec<f64> = x.iter().zip(&ax).map(|(a, b)| a + b).collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        if norm == 0.0 {
            return 0.0;
        }
        x = y.into_iter().map(|v| v / norm).collect();
        if (rq - last).abs() <= 1e-15 * rq.max(1.0) {
            return rq;
        }
        last = rq;
    }
    last
}

/// Walk tallies by explicit depth-first enumeration of every vertex sequence.
fn dfs_walks(g: &Graph, k: usize) -> (u64, u64, Vec<u64>) {
    fn go(g: &Graph, start: usize, at: usize, left: usize, tally: &mut (u64, u64, Vec<u64>)) {
        if left == 0 {
            tally.0 += 1;
            if at == start {
                tally.1 += 1;
                tally.2[start] += 1;
            }
            return;
        }
        for v in 0..g.n() {
            if g.has_edge(at, v) {
                go(g, start, v, left - 1, tally);
            }
        }
    }
    let mut tally = (0, 0, vec![0; g.n()]);
    for s in 0..g.n() {
        go(g, s, s, k, &mut tally);
    }
    tally
}

/// Clique number by testing every vertex subset.
fn subset_clique_number(g: &Graph) -> usize {
    let n = g.n();
    let adj: Vec<u32> = (0..n)
        .map(|u| (0..n).filter(|&v| g.has_edge(u, v)).fold(0, |m, v| m | 1 << v))
        .collect();
    let mut best = 1;
    for mask in 1u32..(1 << n) {
        let size = mask.count_ones() as usize;
        if size <= best {
            continue;
        }
        let clique = (0..n)
            .filter(|&v| mask >> v & 1 == 1)
            .all(|v| mask & !(1 << v) & !adj[v] == 0);
        if clique {
            best = size;
        }
    }
    best
}

fn kinds(g: &Graph) -> Vec<MeasureKind> {
    MeasureSelection::ALL.kinds(g.n())
}

/// Unit leading eigenvector of a connected graph, by power iteration on `A + I`.
fn leading_vector(g: &Graph) -> Option<Vec<f64>> {
    if !g.is_connected() {
        return None;
    }
    let n = g.n();
    let mut x = vec![1.0; n];
    for _ in 0..200_000 {
        let y: Vec<f64> = (0..n)
            .map(|i| x[i] + g.neighbors(i).iter().map(|&j| x[j]).sum::<f64>())
            .collect();
        let norm = y.iter().map(|v| v * v).sum::<f64>().sqrt();
        let next: Vec<f64> = y.iter().map(|v| v / norm).collect();
        let delta = next.iter().zip(&x).map(|(a, b)| (a - b).abs()).fold(0.0, f64::max);
        x = next;
        if delta < 1e-15 {
            break;
        }
    }
    Some(x)
}

fn c1_walk_enumeration(_: &Corpus) -> Outcome {
    let known = [1usize, 1, 2, 6, 21, 112];
    let mut compared = 0;
    let mut classes = Vec::new();
    for n in 1..=6 {
        let graphs = connected_graphs(n).unwrap();
        classes.push(graphs.len());
        for g in &graphs {
            let w = walk_counts(g, 6);
            let phi = closed_walk_counts(g, 6);
            let at: Vec<MomentSequence> = (0..n).map(|i| moments(g, MeasureKind::ClosedWalksAt(i), 6).unwrap()).collect();
            for k in 0..=6 {
                let (walks, closed, per) = dfs_walks(g, k);
                compared += 1;
                if w.values()[k] != BigUint::from(walks) || phi.values()[k] != BigUint::from(closed) {
                    return outcome(false, format!("mismatch at k={k} on {g:?}"));
                }
                for i in 0..n {
                    if at[i].values()[k] != BigUint::from(per[i]) {
                        return outcome(false, format!("vertex {i} mismatch at k={k} on {g:?}"));
                    }
                }
            }
        }
    }
    outcome(
        classes == known,
        format!(
            "{} connected graphs up to isomorphism ({} on 6 vertices), {compared} (graph, k) pairs equal",
            classes.iter().sum::<usize>(),
            classes[5]
        ),
    )
}

fn c2_moment_identities(corpus: &Corpus) -> Outcome {
    let mut worst: f64 = 0.0;
    for e in &corpus.entries {
        let g = &e.graph;
        let s = eigen_decompose(g);
        let phi = closed_walk_counts(g, 12);
        let w = walk_counts(g, 12);
        let at: Vec<MomentSequence> = (0..g.n()).map(|i| moments(g, MeasureKind::ClosedWalksAt(i), 12).unwrap()).collect();
        for k in 0..=12 {
            let pw = |l: usize| s.eigenvalues[l].powi(k as i32);
            let rel = |exact: &BigUint, weights: &dyn Fn(usize) -> f64| {
                let sum: f64 = (0..g.n()).map(|l| weights(l) * pw(l)).sum();
                let mag: f64 = (0..g.n()).map(|l| weights(l).abs() * pw(l).abs()).sum();
                (exact.to_f64().unwrap() - sum).abs() / mag.max(1.0)
            };
            worst = worst.max(rel(&phi.values()[k], &|_| 1.0));
            worst = worst.max(rel(&w.values()[k], &|l| {
                let col: f64 = (0..g.n()).map(|i| s.eigenvectors[(i, l)]).sum();
                col * col
            }));
            for (i, m) in at.iter().enumerate() {
                worst = worst.max(rel(&m.values()[k], &|l| s.eigenvectors[(i, l)].powi(2)));
            }
        }
    }
    outcome(
        worst <= 1e-8,
        format!("{} graphs, worst relative error {worst:.2e} (limit 1e-8)", corpus.entries.len()),
    )
}

fn sweep_config() -> SweepConfig {
    SweepConfig {
        max_order: 18,
        measures: MeasureSelection::ALL,
        s_max: 3,
        k_max: 4,
        index_sets: vec![IndexSet::new([1, 2]).unwrap(), IndexSet::new([1, 2, 3]).unwrap()],
        sdp_orders: vec![0, 1, 2, 3],
        sdp_tol: 1e-9,
        ..SweepConfig::default()
    }
}

fn c3_sandwich(corpus: &Corpus) -> Outcome {
    let cfg = sweep_config();
    let (mut applicable, mut violations, mut rho_gap): (usize, Vec<String>, f64) = (0, Vec::new(), 0.0);
    for (e, &rho) in corpus.entries.iter().zip(&corpus.rho) {
        let ev = evaluate(&e.graph, &cfg).unwrap();
        rho_gap = rho_gap.max((ev.summary.rho - rho).abs());
        for t in &ev.bounds {
            if t.bound.applicable() {
                applicable += 1;
            }
            if t.bound.violates(rho, 1e-7) {
                violations.push(format!("{} {} [{}] = {:?} vs {rho}", e.label, t.bound.name, t.bound.params, t.bound.value));
            }
        }
    }
    let detail = format!(
        "{applicable} applicable bounds, {} violations; eigensolver vs reference rho within {rho_gap:.1e}{}",
        violations.len(),
        violations.first().map(|v| format!("; first: {v}")).unwrap_or_default()
    );
    outcome(violations.is_empty() && rho_gap <= 1e-9, detail)
}

fn gen(spec: &str) -> Graph {
    Graph::generate(&spec.parse().unwrap()).unwrap()
}

fn c4_exactness(_: &Corpus) -> Outcome {
    let mut fails = Vec::new();
    let mut check = |what: String, got: Option<f64>, want: f64, tol: f64| {
        if got.is_none_or(|v| (v - want).abs() > tol) {
            fails.push(format!("{what}: {got:?} vs {want}"));
        }
    };
    let k3 = gen("complete:3");
    check("triangle_edge K3".into(), triangle_edge_lower_bound(&k3).value, 2.0, 1e-9);
    for d in 2..=10 {
        let star = gen(&format!("star:{d}"));
        check(format!("local_triangle K1,{d}"), local_triangle_lower_bound(&star).value, (d as f64).sqrt(), 1e-9);
    }
    check("local_triangle P3".into(), local_triangle_lower_bound(&gen("path:3")).value, 2f64.sqrt(), 1e-9);
    let phi = closed_walk_counts(&k3, 4);
    check("sdp K3 n=1".into(), sdp_lower_bound(&phi, 1, 2, 1e-9).unwrap().value, 2.0, 1e-6);
    let j = IndexSet::new([1, 2]).unwrap();
    check(
        "hankel_root K3 J={1,2}".into(),
        hankel_root_upper_bound(&phi, &AtomWeight::closed_walks(), &j).unwrap().value,
        2.0,
        1e-8,
    );
    outcome(fails.is_empty(), if fails.is_empty() { "all 13 exact values within tolerance".into() } else { fails.join("; ") })
}

/// Runs `f(entry, rho, moments, weight)` for every measure of every graph.
fn for_measures(corpus: &Corpus, order: usize, mut f: impl FnMut(&CorpusEntry, f64, &MomentSequence, &AtomWeight)) {
    for (e, &rho) in corpus.entries.iter().zip(&corpus.rho) {
        let s = eigen_decompose(&e.graph);
        for kind in kinds(&e.graph) {
            let m = moments(&e.graph, kind, order).unwrap();
            let w = AtomWeight::from_spectrum(kind, &s);
            f(e, rho, &m, &w);
        }
    }
}

fn dominance(
    corpus: &Corpus,
    bound: fn(&MomentSequence, &AtomWeight, usize) -> swb_core::Result<swb_core::BoundResult>,
) -> Outcome {
    let (mut compared, mut worst, mut first) = (0, f64::NEG_INFINITY, None);
    for_measures(corpus, 8, |e, _, m, w| {
        for k in 1..=3 {
            let even = even_moment_upper_bound(m, w, k).unwrap().value;
            let other = bound(m, w, k).unwrap().value;
            if let (Some(even), Some(other)) = (even, other) {
                compared += 1;
                let excess = other - even;
                worst = worst.max(excess);
                if excess > 1e-9 && first.is_none() {
                    first = Some(format!("{} {} k={k}: {other} > {even}", e.label, m.kind()));
                }
            }
        }
    });
    outcome(
        first.is_none(),
        format!("{compared} pairs, worst excess {worst:.2e}{}", first.map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn c5_two_point(corpus: &Corpus) -> Outcome {
    dominance(corpus, two_point_upper_bound)
}

fn c6_stieltjes(corpus: &Corpus) -> Outcome {
    dominance(corpus, stieltjes_root_upper_bound)
}

fn c7_clique_walks(corpus: &Corpus) -> Outcome {
    let (mut compared, mut worst, mut first) = (0, f64::NEG_INFINITY, None);
    for e in &corpus.entries {
        let g = &e.graph;
        let Some(u) = leading_vector(g) else { continue };
        let c1 = u.iter().sum::<f64>().powi(2);
        let omega = subset_clique_number(g);
        let w = walk_counts(g, 6);
        let weight = AtomWeight::new(c1, MeasureKind::Walks);
        for k in 1..=3 {
            let even = even_moment_upper_bound(&w, &weight, k).unwrap().value.unwrap();
            let cap = ((1.0 - 1.0 / omega as f64) * w.values()[2 * k].to_f64().unwrap()).powf(1.0 / (2 * k + 1) as f64);
            compared += 1;
            worst = worst.max(even - cap);
            if even > cap + 1e-9 && first.is_none() {
                first = Some(format!("{} k={k}: {even} > {cap}", e.label));
            }
        }
    }
    outcome(
        first.is_none(),
        format!("{compared} comparisons on connected graphs, worst excess {worst:.2e}{}", first.map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn c8_sdp_monotone(corpus: &Corpus) -> Outcome {
    let (mut compared, mut worst, mut first) = (0, f64::NEG_INFINITY, None);
    for e in &corpus.entries {
        let g = &e.graph;
        for kind in kinds(g) {
            let m = moments(g, kind, 7).unwrap();
            let vals: Vec<Option<f64>> = (0..=3)
                .map(|n| sdp_lower_bound(&m, n, g.max_degree(), 1e-9).unwrap().value)
                .collect();
            for n in 0..3 {
                if let (Some(a), Some(b)) = (vals[n], vals[n + 1]) {
                    compared += 1;
                    worst = worst.max(a - b);
                    if b < a - 1e-6 && first.is_none() {
                        first = Some(format!("{} {kind} n={n}: {b} < {a}", e.label));
                    }
                }
            }
        }
    }
    outcome(
        first.is_none(),
        format!("{compared} consecutive pairs, largest decrease {worst:.2e}{}", first.map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn c9_bipartite(corpus: &Corpus) -> Outcome {
    let c4 = gen("cycle:4");
    let v = bipartite_upper_bound(&closed_walk_counts(&c4, 2), &AtomWeight::closed_walks(), 1, &c4)
        .unwrap()
        .value
        .unwrap();
    let exact = (v - 2.0).abs() <= 1e-9;
    let (mut graphs, mut compared, mut first) = (0, 0, None);
    for_measures(corpus, 8, |e, rho, m, w| {
        if !e.graph.is_bipartite() || m.kind() == MeasureKind::Walks {
            return;
        }
        if m.kind() == MeasureKind::ClosedWalks {
            graphs += 1;
        }
        for k in 1..=4 {
            if let Some(b) = bipartite_upper_bound(m, w, k, &e.graph).unwrap().value {
                compared += 1;
                if b < rho - 1e-7 && first.is_none() {
                    first = Some(format!("{} {} k={k}: {b} < {rho}", e.label, m.kind()));
                }
            }
        }
    });
    outcome(
        exact && first.is_none(),
        format!("C4 value {v}; {graphs} bipartite graphs, {compared} bounds >= rho{}", first.map(|f| format!("; first: {f}")).unwrap_or_default()),
    )
}

fn c10_hamburger(corpus: &Corpus) -> Outcome {
    let (mut checked, mut worst) = (0, f64::INFINITY);
    for e in &corpus.entries {
        for kind in kinds(&e.graph) {
            let m = moments(&e.graph, kind, 12).unwrap().to_f64();
            for n in 0..=6 {
                let h = Matrix::from_fn(n + 1, n + 1, |a, b| m[a + b]);
                let scale = h.max_abs();
                if scale == 0.0 {
                    continue;
                }
                let min = symmetric_eigen(&h).values.iter().copied().fold(f64::INFINITY, f64::min);
                worst = worst.min(min / scale);
                checked += 1;
            }
        }
    }
    outcome(
        worst >= -1e-9,
        format!("{checked} Hankel matrices, smallest relative eigenvalue {worst:.2e}"),
    )
}

fn c11_eigensolver(_: &Corpus) -> Outcome {
    let mut worst: f64 = 0.0;
    for n in 1..=20 {
        let s = eigen_decompose(&gen(&format!("complete:{n}")));
        let want: Vec<f64> = std::iter::once(n as f64 - 1.0).chain(std::iter::repeat_n(-1.0, n - 1)).collect();
        for (a, b) in s.eigenvalues.iter().zip(&want) {
            worst = worst.max((a - b).abs());
        }
    }
    let p3 = eigen_decompose(&gen("path:3")).eigenvalues;
    let p3_err = p3
        .iter()
        .zip([2f64.sqrt(), 0.0, -(2f64.sqrt())])
        .map(|(a, b)| (a - b).abs())
        .fold(0.0, f64::max);
    outcome(
        worst <= 1e-9 && p3_err <= 1e-10,
        format!("K_n (n <= 20) max error {worst:.1e}; P_3 max error {p3_err:.1e}"),
    )
}

fn main() -> ExitCode {
    let criteria: [Criterion; 11] = [
        ("walk counts equal enumeration on small connected graphs", c1_walk_enumeration),
        ("spectral moment identities", c2_moment_identities),
        ("sandwich soundness", c3_sandwich),
        ("exact values", c4_exactness),
        ("two-point bound below even-moment bound", c5_two_point),
        ("Stieltjes root below even-moment bound", c6_stieltjes),
        ("even-moment walk bound below clique walk bound", c7_clique_walks),
        ("semidefinite bound monotone in order", c8_sdp_monotone),
        ("bipartite halving", c9_bipartite),
        ("Hankel matrices positive semidefinite", c10_hamburger),
        ("eigensolver sanity", c11_eigensolver),
    ];
    let corpus = corpus();
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = run(&corpus);
        let secs = start.elapsed().as_secs_f64();
        if !o.passed {
            failed += 1;
        }
        println!(
            "criterion {:>2} {}: {} ({}; {secs:.1}s)",
            i + 1,
            if o.passed { "PASS" } else { "FAIL" },
            name,
            o.detail
        );
    }
    println!("acceptance: {} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
