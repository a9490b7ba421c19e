//! Simple undirected graphs: ingestion, generators and the structural
//! statistics (degrees, triangles, bipartiteness, clique number) that the
//! closed-form bounds consume.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::matrix::Matrix;

/// Default vertex limit for exact clique search.
pub const DEFAULT_CLIQUE_LIMIT: usize = 64;

/// Immutable simple undirected graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    adjacency: Vec<bool>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are merged; self-loops and out-of-range endpoints are
    /// rejected.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        if n == 0 {
            return Err(Error::InvalidParams("graph must have at least one vertex".into()));
        }
        let mut set = BTreeSet::new();
        for (u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::VertexOutOfRange { vertex: u.max(v), n });
            }
            if u == v {
                return Err(Error::InvalidParams(format!("self-loop at vertex {u}")));
            }
            set.insert((u.min(v), u.max(v)));
        }
        let edges: Vec<_> = set.into_iter().collect();
        let mut neighbors = vec![Vec::new(); n];
        let mut adjacency = vec![false; n * n];
        for &(u, v) in &edges {
            neighbors[u].push(v);
            neighbors[v].push(u);
            adjacency[u * n + v] = true;
            adjacency[v * n + u] = true;
        }
        for list in &mut neighbors {
            list.sort_unstable();
        }
        Ok(Self {
            n,
            edges,
            neighbors,
            adjacency,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    /// Number of edges `e`.
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as sorted `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.neighbors[v]
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adjacency[u * self.n + v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors[v].len()
    }

    /// Vertex degrees together with the maximum degree Δ.
    pub fn degrees(&self) -> (Vec<usize>, usize) {
        let d: Vec<usize> = self.neighbors.iter().map(Vec::len).collect();
        let max = d.iter().copied().max().unwrap_or(0);
        (d, max)
    }

    pub fn max_degree(&self) -> usize {
        self.degrees().1
    }

    /// Dense 0/1 adjacency matrix.
    pub fn adjacency_matrix(&self) -> Matrix {
        Matrix::from_fn(self.n, self.n, |i, j| {
            if self.adjacency[i * self.n + j] {
                1.0
            } else {
                0.0
            }
        })
    }

    /// Total triangle count `T` and per-vertex counts `T_i`.
    pub fn triangle_counts(&self) -> TriangleCounts {
        let mut per_vertex = vec![0u64; self.n];
        let mut total = 0u64;
        for &(u, v) in &self.edges {
            // common neighbours w > v close a triangle u < v < w exactly once
            for &w in &self.neighbors[v] {
                if w > v && self.has_edge(u, w) {
                    total += 1;
                    per_vertex[u] += 1;
                    per_vertex[v] += 1;
                    per_vertex[w] += 1;
                }
            }
        }
        TriangleCounts { total, per_vertex }
    }

    /// Breadth-first 2-colouring; `Some(colouring)` iff the graph is
    /// bipartite. Colour 0 is assigned to the smallest vertex of every
    /// component.
    pub fn bipartition(&self) -> Option<Vec<u8>> {
        let mut colour = vec![u8::MAX; self.n];
        let mut queue = VecDeque::new();
        for start in 0..self.n {
            if colour[start] != u8::MAX {
                continue;
            }
            colour[start] = 0;
            queue.push_back(start);
            while let Some(u) = queue.pop_front() {
                for &v in &self.neighbors[u] {
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        queue.push_back(v);
                    } else if colour[v] == colour[u] {
                        return None;
                    }
                }
            }
        }
        Some(colour)
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Connected components, each sorted, ordered by smallest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut stack = vec![start];
            while let Some(u) = stack.pop() {
                for &v in &self.neighbors[u] {
                    if !seen[v] {
                        seen[v] = true;
                        comp.push(v);
                        stack.push(v);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() == 1
    }

    /// Exact clique number with the default size limit.
    pub fn clique_number(&self) -> Result<usize> {
        self.clique_number_with_limit(DEFAULT_CLIQUE_LIMIT)
    }

    /// Exact clique number ω by Bron–Kerbosch enumeration with Tomita
    /// pivoting and a size bound. Fails when `n > limit`.
    pub fn clique_number_with_limit(&self, limit: usize) -> Result<usize> {
        if self.n > limit {
            return Err(Error::SizeLimit {
                what: "vertex count for clique search",
                actual: self.n,
                limit,
            });
        }
        let words = self.n.div_ceil(64);
        let masks: Vec<Bitset> = (0..self.n)
            .map(|v| {
                let mut b = Bitset::empty(words);
                for &u in &self.neighbors[v] {
                    b.insert(u);
                }
                b
            })
            .collect();
        let mut all = Bitset::empty(words);
        for v in 0..self.n {
            all.insert(v);
        }
        let mut best = 0;
        expand(&masks, 0, all, Bitset::empty(words), &mut best);
        Ok(best)
    }

    /// Edge-list text: `n <count>` header followed by sorted `u v` lines.
    pub fn to_edge_list(&self) -> String {
        let mut out = format!("n {}\n", self.n);
        for &(u, v) in &self.edges {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format. Lines beginning with `#` and blank
    /// lines are ignored; an optional `n <count>` header fixes the vertex
    /// count, otherwise it is one more than the largest index.
    pub fn parse_edge_list(text: &str) -> Result<Self> {
        let mut declared: Option<usize> = None;
        let mut edges = Vec::new();
        let mut max_index: Option<usize> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let err = |message: String| Error::Parse {
                line: line_no,
                message,
            };
            let tokens: Vec<&str> = line.split_whitespace().collect();
            if tokens[0] == "n" {
                if tokens.len() != 2 {
                    return Err(err("header must be `n <count>`".into()));
                }
                if declared.is_some() {
                    return Err(err("duplicate `n` header".into()));
                }
                if !edges.is_empty() {
                    return Err(err("`n` header must precede all edges".into()));
                }
                let count = parse_index(tokens[1]).map_err(err)?;
                if count == 0 {
                    return Err(err("vertex count must be positive".into()));
                }
                declared = Some(count);
                continue;
            }
            if tokens.len() != 2 {
                return Err(err(format!(
                    "expected two vertex indices, found {} tokens",
                    tokens.len()
                )));
            }
            let u = parse_index(tokens[0]).map_err(err)?;
            let v = parse_index(tokens[1]).map_err(err)?;
            if let Some(n) = declared {
                if u >= n || v >= n {
                    return Err(err(format!(
                        "index {} not below declared vertex count {n}",
                        u.max(v)
                    )));
                }
            }
            if u == v {
                return Err(err(format!("self-loop at vertex {u}")));
            }
            max_index = Some(max_index.map_or(u.max(v), |m| m.max(u).max(v)));
            edges.push((u, v));
        }
        let n = match (declared, max_index) {
            (Some(n), _) => n,
            (None, Some(m)) => m + 1,
            (None, None) => {
                return Err(Error::Parse {
                    line: 0,
                    message: "no vertices: empty edge list without `n` header".into(),
                })
            }
        };
        Self::from_edges(n, edges)
    }

    /// Builds a graph from one of the standard families.
    pub fn generate(family: &Family) -> Result<Self> {
        match *family {
            Family::Path(n) => {
                positive(n, "path length")?;
                Self::from_edges(n, (1..n).map(|i| (i - 1, i)))
            }
            Family::Cycle(n) => {
                if n < 3 {
                    return Err(Error::InvalidParams(format!(
                        "cycle needs at least 3 vertices, got {n}"
                    )));
                }
                Self::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete(n) => {
                positive(n, "complete graph size")?;
                Self::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            Family::Star(leaves) => {
                positive(leaves, "star leaf count")?;
                Self::from_edges(leaves + 1, (1..=leaves).map(|j| (0, j)))
            }
            Family::CompleteBipartite(a, b) => {
                positive(a, "bipartite side")?;
                positive(b, "bipartite side")?;
                Self::from_edges(a + b, (0..a).flat_map(|i| (a..a + b).map(move |j| (i, j))))
            }
            Family::ErdosRenyi { n, p, seed } => {
                positive(n, "Erdős–Rényi vertex count")?;
                if !(0.0..=1.0).contains(&p) {
                    return Err(Error::InvalidParams(format!(
                        "edge probability {p} outside [0, 1]"
                    )));
                }
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                let mut edges = Vec::new();
                for i in 0..n {
                    for j in i + 1..n {
                        if rng.gen::<f64>() < p {
                            edges.push((i, j));
                        }
                    }
                }
                Self::from_edges(n, edges)
            }
        }
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n)
            .field("edges", &self.edges)
            .finish()
    }
}

fn positive(x: usize, what: &str) -> Result<()> {
    if x == 0 {
        Err(Error::InvalidParams(format!("{what} must be at least 1")))
    } else {
        Ok(())
    }
}

fn parse_index(token: &str) -> std::result::Result<usize, String> {
    if token.starts_with('-') {
        return Err(format!("negative index `{token}`"));
    }
    token
        .parse::<usize>()
        .map_err(|_| format!("malformed token `{token}`"))
}

/// `T` and `T_i`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TriangleCounts {
    pub total: u64,
    pub per_vertex: Vec<u64>,
}

/// Graph families understood by [`Graph::generate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Family {
    Path(usize),
    Cycle(usize),
    Complete(usize),
    /// `K_{1,leaves}`; vertex 0 is the centre.
    Star(usize),
    CompleteBipartite(usize, usize),
    ErdosRenyi { n: usize, p: f64, seed: u64 },
}

impl Family {
    /// Short family name used in reports.
    pub fn name(&self) -> &'static str {
        match self {
            Family::Path(_) => "path",
            Family::Cycle(_) => "cycle",
            Family::Complete(_) => "complete",
            Family::Star(_) => "star",
            Family::CompleteBipartite(..) => "complete_bipartite",
            Family::ErdosRenyi { .. } => "erdos_renyi",
        }
    }

    /// Parses `family:params` with a default seed for random families.
    ///
    /// Accepted forms: `path:N`, `cycle:N`, `complete:N`, `star:LEAVES`,
    /// `complete_bipartite:A,B` (alias `kbip`), `erdos_renyi:N,P[,SEED]`
    /// (alias `er`).
    pub fn parse_with_seed(spec: &str, default_seed: u64) -> Result<Self> {
        let bad = |msg: &str| Error::InvalidParams(format!("`{spec}`: {msg}"));
        let (name, params) = spec.split_once(':').ok_or_else(|| bad("expected family:params"))?;
        let fields: Vec<&str> = params.split(',').map(str::trim).collect();
        let int = |s: &str| s.parse::<usize>().map_err(|_| bad("malformed integer"));
        let arity = |k: usize| {
            if fields.len() == k {
                Ok(())
            } else {
                Err(bad(&format!("expected {k} parameter(s)")))
            }
        };
        match name.trim() {
            "path" => arity(1).and_then(|_| Ok(Family::Path(int(fields[0])?))),
            "cycle" => arity(1).and_then(|_| Ok(Family::Cycle(int(fields[0])?))),
            "complete" => arity(1).and_then(|_| Ok(Family::Complete(int(fields[0])?))),
            "star" => arity(1).and_then(|_| Ok(Family::Star(int(fields[0])?))),
            "complete_bipartite" | "kbip" => arity(2)
                .and_then(|_| Ok(Family::CompleteBipartite(int(fields[0])?, int(fields[1])?))),
            "erdos_renyi" | "er" => {
                if fields.len() != 2 && fields.len() != 3 {
                    return Err(bad("expected N,P[,SEED]"));
                }
                let n = int(fields[0])?;
                let p = fields[1].parse::<f64>().map_err(|_| bad("malformed probability"))?;
                let seed = match fields.get(2) {
                    Some(s) => s.parse::<u64>().map_err(|_| bad("malformed seed"))?,
                    None => default_seed,
                };
                Ok(Family::ErdosRenyi { n, p, seed })
            }
            other => Err(bad(&format!("unknown family `{other}`"))),
        }
    }
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_with_seed(s, 0)
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Family::Path(n) => write!(f, "path:{n}"),
            Family::Cycle(n) => write!(f, "cycle:{n}"),
            Family::Complete(n) => write!(f, "complete:{n}"),
            Family::Star(l) => write!(f, "star:{l}"),
            Family::CompleteBipartite(a, b) => write!(f, "complete_bipartite:{a},{b}"),
            Family::ErdosRenyi { n, p, seed } => write!(f, "erdos_renyi:{n},{p},{seed}"),
        }
    }
}

#[derive(Clone)]
struct Bitset(Vec<u64>);

impl Bitset {
    fn empty(words: usize) -> Self {
        Bitset(vec![0; words])
    }

    fn insert(&mut self, i: usize) {
        self.0[i / 64] |= 1 << (i % 64);
    }

    fn remove(&mut self, i: usize) {
        self.0[i / 64] &= !(1 << (i % 64));
    }

    fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    fn and(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & b).collect())
    }

    fn and_not(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a & !b).collect())
    }

    fn union(&self, other: &Bitset) -> Bitset {
        Bitset(self.0.iter().zip(&other.0).map(|(a, b)| a | b).collect())
    }

    fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| {
            let mut bits = bits;
            std::iter::from_fn(move || {
                if bits == 0 {
                    None
                } else {
                    let t = bits.trailing_zeros() as usize;
                    bits &= bits - 1;
                    Some(w * 64 + t)
                }
            })
        })
    }
}

fn expand(masks: &[Bitset], size: usize, mut candidates: Bitset, mut excluded: Bitset, best: &mut usize) {
    if candidates.is_empty() {
        if excluded.is_empty() {
            *best = (*best).max(size);
        }
        return;
    }
    if size + candidates.len() <= *best {
        return;
    }
    // pivot maximising |P ∩ N(u)| over u ∈ P ∪ X
    let pivot = candidates
        .union(&excluded)
        .iter()
        .max_by_key(|&u| candidates.and(&masks[u]).len())
        .expect("non-empty");
    let branch: Vec<usize> = candidates.and_not(&masks[pivot]).iter().collect();
    for v in branch {
        expand(
            masks,
            size + 1,
            candidates.and(&masks[v]),
            excluded.and(&masks[v]),
            best,
        );
        candidates.remove(v);
        excluded.insert(v);
        if size + candidates.len() <= *best {
            return;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn k3() -> Graph {
        Graph::generate(&Family::Complete(3)).unwrap()
    }

    #[test]
    fn parse_examples() {
        let g = Graph::parse_edge_list("n 3\n0 1\n1 2\n0 2").unwrap();
        assert_eq!(g, k3());
        let p3 = Graph::parse_edge_list("0 1\n1 2").unwrap();
        assert_eq!((p3.n(), p3.edge_count()), (3, 2));
        assert_eq!(p3, Graph::generate(&Family::Path(3)).unwrap());
    }

    #[test]
    fn parse_errors_carry_line_numbers() {
        match Graph::parse_edge_list("0 0") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains("self-loop")),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("# c\n0 1\n1 x") {
            Err(Error::Parse { line: 3, message }) => assert!(message.contains("malformed")),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("0 -1") {
            Err(Error::Parse { line: 1, message }) => assert!(message.contains("negative")),
            other => panic!("unexpected {other:?}"),
        }
        match Graph::parse_edge_list("n 2\n0 1\n1 2") {
            Err(Error::Parse { line: 3, .. }) => {}
            other => panic!("unexpected {other:?}"),
        }
        assert!(Graph::parse_edge_list("0 1 2").is_err());
        assert!(Graph::parse_edge_list("# only a comment\n").is_err());
    }

    #[test]
    fn duplicates_are_merged_and_header_adds_isolated_vertices() {
        let g = Graph::parse_edge_list("n 5\n0 1\n1 0\n0 1\n").unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn generator_examples() {
        let star = Graph::generate(&Family::Star(4)).unwrap();
        assert_eq!(star.degrees(), (vec![4, 1, 1, 1, 1], 4));
        let c4 = Graph::generate(&Family::Cycle(4)).unwrap();
        assert_eq!(c4.degrees(), (vec![2, 2, 2, 2], 2));
        let er = Family::ErdosRenyi { n: 10, p: 0.5, seed: 7 };
        assert_eq!(Graph::generate(&er).unwrap(), Graph::generate(&er).unwrap());
        assert!(Graph::generate(&Family::ErdosRenyi { n: 10, p: 1.5, seed: 0 }).is_err());
        assert!(Graph::generate(&Family::Cycle(2)).is_err());
        assert!(Graph::generate(&Family::Path(0)).is_err());
        let full = Graph::generate(&Family::ErdosRenyi { n: 6, p: 1.0, seed: 3 }).unwrap();
        assert_eq!(full.edge_count(), 15);
    }

    #[test]
    fn triangles() {
        let t = k3().triangle_counts();
        assert_eq!((t.total, t.per_vertex), (1, vec![1, 1, 1]));
        let t = Graph::generate(&Family::Path(3)).unwrap().triangle_counts();
        assert_eq!((t.total, t.per_vertex), (0, vec![0, 0, 0]));
        let t = Graph::generate(&Family::Complete(4)).unwrap().triangle_counts();
        assert_eq!((t.total, t.per_vertex), (4, vec![3, 3, 3, 3]));
    }

    #[test]
    fn k4_triangles_match_subset_enumeration() {
        let g = Graph::generate(&Family::Complete(4)).unwrap();
        let mut count = 0;
        for a in 0..4 {
            for b in a + 1..4 {
                for c in b + 1..4 {
                    if g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(a, c) {
                        count += 1;
                    }
                }
            }
        }
        assert_eq!(g.triangle_counts().total, count);
    }

    #[test]
    fn degrees_examples() {
        assert_eq!(Graph::generate(&Family::Star(4)).unwrap().max_degree(), 4);
        assert_eq!(
            Graph::generate(&Family::Path(3)).unwrap().degrees(),
            (vec![1, 2, 1], 2)
        );
    }

    #[test]
    fn bipartite_examples() {
        assert!(Graph::generate(&Family::Cycle(4)).unwrap().is_bipartite());
        assert!(!k3().is_bipartite());
        let colouring = Graph::generate(&Family::Path(3)).unwrap().bipartition().unwrap();
        assert_eq!(colouring, vec![0, 1, 0]);
    }

    #[test]
    fn clique_examples() {
        assert_eq!(Graph::generate(&Family::Complete(4)).unwrap().clique_number(), Ok(4));
        assert_eq!(Graph::generate(&Family::Cycle(4)).unwrap().clique_number(), Ok(2));
        let pendant = Graph::from_edges(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(pendant.clique_number(), Ok(brute_force_clique(&pendant)));
        assert_eq!(pendant.clique_number(), Ok(3));
        assert_eq!(Graph::from_edges(3, []).unwrap().clique_number(), Ok(1));
        let big = Graph::generate(&Family::Path(70)).unwrap();
        assert!(matches!(big.clique_number(), Err(Error::SizeLimit { .. })));
        assert_eq!(big.clique_number_with_limit(100), Ok(2));
    }

    fn brute_force_clique(g: &Graph) -> usize {
        let n = g.n();
        (0u32..1 << n)
            .filter(|&mask| {
                (0..n).all(|a| {
                    (a + 1..n).all(|b| mask >> a & 1 == 0 || mask >> b & 1 == 0 || g.has_edge(a, b))
                })
            })
            .map(|mask| mask.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn clique_matches_brute_force_on_random_graphs() {
        for seed in 0..40 {
            let g = Graph::generate(&Family::ErdosRenyi { n: 10, p: 0.5, seed }).unwrap();
            assert_eq!(g.clique_number().unwrap(), brute_force_clique(&g), "seed {seed}");
        }
    }

    #[test]
    fn family_specs_parse() {
        assert_eq!("star:4".parse::<Family>().unwrap(), Family::Star(4));
        assert_eq!(
            "kbip:2,3".parse::<Family>().unwrap(),
            Family::CompleteBipartite(2, 3)
        );
        assert_eq!(
            Family::parse_with_seed("er:10,0.5", 9).unwrap(),
            Family::ErdosRenyi { n: 10, p: 0.5, seed: 9 }
        );
        assert!("wheel:5".parse::<Family>().is_err());
        assert!("path".parse::<Family>().is_err());
        let f = Family::ErdosRenyi { n: 10, p: 0.25, seed: 3 };
        assert_eq!(f.to_string().parse::<Family>().unwrap(), f);
    }

    mod props {
        use super::*;
        use proptest::prelude::*;

        fn arb_graph() -> impl Strategy<Value = Graph> {
            (1usize..12, 0.0f64..=1.0, any::<u64>()).prop_map(|(n, p, seed)| {
                Graph::generate(&Family::ErdosRenyi { n, p, seed }).unwrap()
            })
        }

        proptest! {
            #[test]
            fn handshake(g in arb_graph()) {
                let (d, _) = g.degrees();
                prop_assert_eq!(d.iter().sum::<usize>(), 2 * g.edge_count());
            }

            #[test]
            fn edge_list_round_trip(g in arb_graph()) {
                prop_assert_eq!(Graph::parse_edge_list(&g.to_edge_list()).unwrap(), g);
            }

            #[test]
            fn bipartite_graphs_are_triangle_free(g in arb_graph()) {
                if let Some(colour) = g.bipartition() {
                    for &(u, v) in g.edges() {
                        prop_assert_ne!(colour[u], colour[v]);
                    }
                    prop_assert!(g.clique_number().unwrap() <= 2);
                }
            }

            #[test]
            fn adjacency_is_symmetric_zero_diagonal(g in arb_graph()) {
                let a = g.adjacency_matrix();
                let mut total = 0.0;
                for i in 0..g.n() {
                    prop_assert_eq!(a[(i, i)], 0.0);
                    for j in 0..g.n() {
                        prop_assert_eq!(a[(i, j)], a[(j, i)]);
                        total += a[(i, j)];
                    }
                }
                prop_assert_eq!(total as usize, 2 * g.edge_count());
            }
        }
    }
}
