//! Fixtures shared by the criterion benches.

use swb_core::walks::{closed_walk_counts, walk_counts, MomentSequence};
use swb_core::{Family, Graph};

/// Benchmark graphs, smallest first.
pub fn fixtures() -> Vec<(String, Graph)> {
    [
        Family::Cycle(16),
        Family::Complete(12),
        Family::ErdosRenyi { n: 20, p: 0.3, seed: 1 },
        Family::ErdosRenyi { n: 40, p: 0.2, seed: 1 },
    ]
    .into_iter()
    .map(|f| (f.to_string(), Graph::generate(&f).expect("valid fixture")))
    .collect()
}

/// Walk and closed-walk moments through order `k`.
pub fn moment_pair(g: &Graph, k: usize) -> (MomentSequence, MomentSequence) {
    (walk_counts(g, k), closed_walk_counts(g, k))
}
