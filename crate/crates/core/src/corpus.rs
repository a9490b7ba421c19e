//! Named graph collections: parametric families, Erdős–Rényi samples, and
//! all small connected graphs up to isomorphism.

use std::ops::RangeInclusive;

use crate::error::{Error, Result};
use crate::graph::{Family, Graph};

/// A graph with a reproducible label.
#[derive(Debug, Clone, PartialEq)]
pub struct CorpusEntry {
    /// Generator spec, or a caller-chosen name.
    pub label: String,
    pub family: Option<Family>,
    pub graph: Graph,
}

impl CorpusEntry {
    pub fn generated(family: Family) -> Result<Self> {
        Ok(Self {
            label: family.to_string(),
            graph: Graph::generate(&family)?,
            family: Some(family),
        })
    }

    pub fn named(label: impl Into<String>, graph: Graph) -> Self {
        Self {
            label: label.into(),
            family: None,
            graph,
        }
    }

    /// Family name, or `file` for graphs read from disk.
    pub fn family_name(&self) -> &'static str {
        self.family.as_ref().map_or("file", Family::name)
    }
}

/// Paths, cycles, complete graphs, stars and complete bipartite graphs with
/// at most `max_n` vertices.
pub fn standard_families(max_n: usize) -> Vec<CorpusEntry> {
    let mut fams = Vec::new();
    fams.extend((1..=max_n).map(Family::Path));
    fams.extend((3..=max_n).map(Family::Cycle));
    fams.extend((1..=max_n).map(Family::Complete));
    fams.extend((1..max_n).map(Family::Star));
    for a in 1..=max_n / 2 {
        fams.extend((a..=max_n - a).map(|b| Family::CompleteBipartite(a, b)));
    }
    fams.into_iter()
        .map(|f| CorpusEntry::generated(f).expect("family parameters are valid"))
        .collect()
}

/// `G(n, p)` samples for each seed in `seeds`.
pub fn erdos_renyi_samples(n: usize, p: f64, seeds: RangeInclusive<u64>) -> Result<Vec<CorpusEntry>> {
    seeds
        .map(|seed| CorpusEntry::generated(Family::ErdosRenyi { n, p, seed }))
        .collect()
}

/// Families with at most 12 vertices plus 100 samples of `G(15, 0.3)`.
pub fn reference_corpus() -> Vec<CorpusEntry> {
    let mut out = standard_families(12);
    out.extend(erdos_renyi_samples(15, 0.3, 0..=99).expect("valid parameters"));
    out
}

/// Expands a sweep spec into corpus entries:
///
/// * `families:N`: [`standard_families`]`(N)`
/// * `path:A..B`, `cycle:A..B`, `complete:A..B`, `star:A..B`: size ranges
/// * `complete_bipartite:A,B..C`: `K_{A,b}` for `b` in `B..=C`
/// * `er:N,P,S..T`: one sample per seed in `S..=T`
/// * any single generator spec accepted by [`Family`]
pub fn parse_sweep(spec: &str, default_seed: u64) -> Result<Vec<CorpusEntry>> {
    let bad = |msg: &str| Error::InvalidParams(format!("sweep `{spec}`: {msg}"));
    let (name, args) = spec
        .split_once(':')
        .ok_or_else(|| bad("expected family:params"))?;
    let name = name.trim().to_ascii_lowercase();
    let args = args.trim();
    if name == "families" {
        let n = args.parse().map_err(|_| bad("size must be an integer"))?;
        return Ok(standard_families(n));
    }
    let range = |text: &str| -> Result<RangeInclusive<usize>> {
        let (lo, hi) = text.split_once("..").ok_or_else(|| bad("expected LO..HI"))?;
        let lo = lo.trim().parse().map_err(|_| bad("malformed range start"))?;
        let hi = hi.trim().trim_start_matches('=').parse().map_err(|_| bad("malformed range end"))?;
        Ok(lo..=hi)
    };
    if !args.contains("..") {
        return Ok(vec![CorpusEntry::generated(Family::parse_with_seed(spec, default_seed)?)?]);
    }
    let fams: Vec<Family> = match name.as_str() {
        "path" => range(args)?.map(Family::Path).collect(),
        "cycle" => range(args)?.map(Family::Cycle).collect(),
        "complete" => range(args)?.map(Family::Complete).collect(),
        "star" => range(args)?.map(Family::Star).collect(),
        "complete_bipartite" | "kbip" => {
            let (a, rest) = args.split_once(',').ok_or_else(|| bad("expected A,B..C"))?;
            let a = a.trim().parse().map_err(|_| bad("malformed part size"))?;
            range(rest)?.map(|b| Family::CompleteBipartite(a, b)).collect()
        }
        "erdos_renyi" | "er" => {
            let parts: Vec<&str> = args.split(',').map(str::trim).collect();
            let [n, p, seeds] = parts[..] else {
                return Err(bad("expected N,P,S..T"));
            };
            let n = n.parse().map_err(|_| bad("malformed vertex count"))?;
            let p = p.parse().map_err(|_| bad("malformed probability"))?;
            let seeds = range(seeds)?;
            (*seeds.start() as u64..=*seeds.end() as u64)
                .map(|seed| Family::ErdosRenyi { n, p, seed })
                .collect()
        }
        other => return Err(bad(&format!("no range form for `{other}`"))),
    };
    fams.into_iter().map(CorpusEntry::generated).collect()
}

/// All connected graphs on exactly `n` vertices, one per isomorphism class,
/// in canonical form. Feasible for `n ≤ 7`.
pub fn connected_graphs(n: usize) -> Result<Vec<Graph>> {
    if n == 0 || n > 7 {
        return Err(Error::SizeLimit {
            what: "vertices for exhaustive enumeration",
            actual: n,
            limit: 7,
        });
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let mut seen = std::collections::BTreeSet::new();
    for mask in 0u64..(1u64 << pairs.len()) {
        let g = Graph::from_edges(
            n,
            pairs
                .iter()
                .enumerate()
                .filter(|(b, _)| mask >> b & 1 == 1)
                .map(|(_, &e)| e),
        )?;
        if g.is_connected() {
            seen.insert(canonical_mask(&g, &pairs));
        }
    }
    seen.into_iter()
        .map(|mask| {
            Graph::from_edges(
                n,
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(b, _)| mask >> b & 1 == 1)
                    .map(|(_, &e)| e),
            )
        })
        .collect()
}

/// All connected graphs with `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Result<Vec<Graph>> {
    let mut out = Vec::new();
    for n in 1..=max_n {
        out.extend(connected_graphs(n)?);
    }
    Ok(out)
}

/// Smallest edge mask over relabelings that list vertices by non-increasing
/// degree. Degree classes are invariant, so only permutations within a class
/// need trying.
fn canonical_mask(g: &Graph, pairs: &[(usize, usize)]) -> u64 {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(g.degree(v)));
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for &v in &order {
        match classes.last_mut() {
            Some(c) if g.degree(c[0]) == g.degree(v) => c.push(v),
            _ => classes.push(vec![v]),
        }
    }
    let index = |u: usize, v: usize| {
        let (a, b) = if u < v { (u, v) } else { (v, u) };
        pairs.iter().position(|&p| p == (a, b)).expect("pair exists")
    };
    let mut best = u64::MAX;
    let mut label = vec![0usize; n];
    permute_classes(&mut classes, 0, &mut |classes| {
        for (pos, v) in classes.iter().flatten().enumerate() {
            label[*v] = pos;
        }
        let mask = g
            .edges()
            .iter()
            .fold(0u64, |m, &(u, v)| m | 1 << index(label[u], label[v]));
        best = best.min(mask);
    });
    best
}

/// Calls `f` once for every combination of orderings within the classes.
fn permute_classes(classes: &mut [Vec<usize>], idx: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    if idx == classes.len() {
        f(classes);
        return;
    }
    let len = classes[idx].len();
    heap_permute(classes, idx, len, f);
}

fn heap_permute(classes: &mut [Vec<usize>], idx: usize, k: usize, f: &mut impl FnMut(&[Vec<usize>])) {
    if k <= 1 {
        permute_classes(classes, idx + 1, f);
        return;
    }
    for i in 0..k - 1 {
        heap_permute(classes, idx, k - 1, f);
        if k.is_multiple_of(2) {
            classes[idx].swap(i, k - 1);
        } else {
            classes[idx].swap(0, k - 1);
        }
    }
    heap_permute(classes, idx, k - 1, f);
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn connected_graph_counts() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).unwrap().len()).collect();
        assert_eq!(counts, [1, 1, 2, 6, 21]);
        assert!(connected_graphs(8).is_err());
    }

    #[test]
    fn family_sizes() {
        let fams = standard_families(4);
        let labels: Vec<&str> = fams.iter().map(|e| e.label.as_str()).collect();
        assert!(labels.contains(&"cycle:4"));
        assert!(labels.contains(&"complete_bipartite:2,2"));
        assert!(fams.iter().all(|e| e.graph.n() <= 4));
        assert_eq!(reference_corpus().len(), standard_families(12).len() + 100);
    }

    #[test]
    fn sweep_specs() {
        assert_eq!(parse_sweep("star:2..10", 0).unwrap().len(), 9);
        assert_eq!(parse_sweep("cycle:3..=5", 0).unwrap().len(), 3);
        let er = parse_sweep("er:20,0.3,0..99", 0).unwrap();
        assert_eq!(er.len(), 100);
        assert_eq!(er[7].label, "erdos_renyi:20,0.3,7");
        assert_eq!(parse_sweep("kbip:2,1..3", 0).unwrap()[2].label, "complete_bipartite:2,3");
        assert_eq!(parse_sweep("er:10,0.5", 4).unwrap()[0].label, "erdos_renyi:10,0.5,4");
        assert_eq!(parse_sweep("families:3", 0).unwrap().len(), standard_families(3).len());
        assert!(parse_sweep("star", 0).is_err());
        assert!(parse_sweep("wheel:3..5", 0).is_err());
    }
}
