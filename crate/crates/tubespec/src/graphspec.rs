//! Spectral graph computations: normalized Laplacian spectra, exact Cheeger
//! constants by exhaustive cut enumeration, and the chained lower bound for
//! the first eigenvalue of a manifold modeled by a thick-part graph.
//!
//! The normalized convention `I - D^{-1/2} A D^{-1/2}` is the one whose
//! eigenvalues sum to the vertex count; both Cheeger normalizations
//! (vertex-count and degree-volume) are computed, but only the degree-volume
//! form carries the `lambda_1 >= h^2/2` guarantee. The vertex-count variant
//! is reported, not asserted: K4 already violates it (lambda_1 = 4/3 < 2),
//! and the two differ by bounded-valence factors only.

use crate::numerics::{symmetric_eigs, DenseMatrix};
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("graph must be connected")]
    Disconnected,
    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("graph has no vertices")]
    Empty,
    #[error("exhaustive cut enumeration is limited to 22 vertices, got {0}")]
    TooLargeForExhaustive(usize),
    #[error("edge list parse error on line {line}: {reason}")]
    Parse { line: usize, reason: String },
}

/// Finite simple connected graph.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WeightedGraph {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl WeightedGraph {
    pub fn new(n: usize, edges: Vec<(usize, usize)>) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut dedup: Vec<(usize, usize)> = edges
            .iter()
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        dedup.sort_unstable();
        dedup.dedup();
        for &(u, v) in &dedup {
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            assert!(v < n, "vertex {v} out of range");
        }
        let g = Self { n, edges: dedup };
        let deg = g.degrees();
        if let Some(v) = deg.iter().position(|&d| d == 0) {
            return Err(GraphError::IsolatedVertex(v));
        }
        if !g.is_connected() {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0usize; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    fn neighbor_masks(&self) -> Vec<u32> {
        let mut masks = vec![0u32; self.n];
        for &(u, v) in &self.edges {
            masks[u] |= 1 << v;
            masks[v] |= 1 << u;
        }
        masks
    }

    fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        let mut stack = vec![0usize];
        seen[0] = true;
        let mut adj = vec![Vec::new(); self.n];
        for &(u, v) in &self.edges {
            adj[u].push(v);
            adj[v].push(u);
        }
        while let Some(u) = stack.pop() {
            for &v in &adj[u] {
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// Parse a plain edge list, one `u v` pair per line, 0-indexed. Blank
    /// lines and lines starting with `#` are skipped.
    pub fn parse_edge_list(text: &str) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut max_v = 0usize;
        for (i, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>, i: usize| -> Result<usize, GraphError> {
                tok.ok_or(GraphError::Parse {
                    line: i + 1,
                    reason: "expected two vertex ids".into(),
                })?
                .parse()
                .map_err(|e| GraphError::Parse {
                    line: i + 1,
                    reason: format!("{e}"),
                })
            };
            let u = parse(it.next(), i)?;
            let v = parse(it.next(), i)?;
            if it.next().is_some() {
                return Err(GraphError::Parse {
                    line: i + 1,
                    reason: "trailing tokens".into(),
                });
            }
            max_v = max_v.max(u).max(v);
            edges.push((u, v));
        }
        if edges.is_empty() {
            return Err(GraphError::Empty);
        }
        Self::new(max_v + 1, edges)
    }
}

/// `I - D^{-1/2} A D^{-1/2}` as a dense symmetric matrix.
pub fn normalized_laplacian(g: &WeightedGraph) -> DenseMatrix {
    let deg = g.degrees();
    let mut m = DenseMatrix::zeros(g.n);
    for i in 0..g.n {
        m[(i, i)] = 1.0;
    }
    for &(u, v) in &g.edges {
        let w = -1.0 / ((deg[u] * deg[v]) as f64).sqrt();
        m[(u, v)] = w;
        m[(v, u)] = w;
    }
    m
}

/// Ascending eigenvalues of the normalized Laplacian.
pub fn graph_spectrum(g: &WeightedGraph) -> Vec<f64> {
    symmetric_eigs(&normalized_laplacian(g), g.n)
        .expect("normalized Laplacian is symmetric by construction")
        .values
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CheegerVariant {
    /// cut edges over the smaller side's vertex count
    VertexCount,
    /// cut edges over the smaller side's degree volume
    DegreeVolume,
}

/// Exact Cheeger constant with a minimizing cut, by exhaustive enumeration
/// of all 2^(n-1) - 1 proper cuts.
pub fn cheeger_constant(
    g: &WeightedGraph,
    variant: CheegerVariant,
) -> Result<(f64, Vec<usize>), GraphError> {
    let n = g.n;
    if n > 22 {
        return Err(GraphError::TooLargeForExhaustive(n));
    }
    if n < 2 {
        return Err(GraphError::TooLargeForExhaustive(n));
    }
    let masks = g.neighbor_masks();
    let deg = g.degrees();
    let total_vol: usize = deg.iter().sum();
    let full: u32 = if n == 32 { u32::MAX } else { (1 << n) - 1 };
    let mut best = f64::INFINITY;
    let mut best_mask = 1u32;
    // vertex n-1 stays on the complement side, so each partition appears once
    for mask in 1u32..(1 << (n - 1)) {
        let mut cut = 0u32;
        let mut m = mask;
        while m != 0 {
            let u = m.trailing_zeros() as usize;
            m &= m - 1;
            cut += (masks[u] & !mask & full).count_ones();
        }
        let denom = match variant {
            CheegerVariant::VertexCount => {
                let size = mask.count_ones() as usize;
                size.min(n - size) as f64
            }
            CheegerVariant::DegreeVolume => {
                let mut vol = 0usize;
                let mut m = mask;
                while m != 0 {
                    let u = m.trailing_zeros() as usize;
                    m &= m - 1;
                    vol += deg[u];
                }
                vol.min(total_vol - vol) as f64
            }
        };
        let ratio = cut as f64 / denom;
        if ratio < best {
            best = ratio;
            best_mask = mask;
        }
    }
    let cut_set = (0..n).filter(|&v| best_mask & (1 << v) != 0).collect();
    Ok((best, cut_set))
}

/// Eigenvalue/Cheeger comparison for both normalizations.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CheegerReport {
    pub lambda1: f64,
    pub h_vertex: f64,
    pub h_volume: f64,
    /// lambda_1 - h_volume^2 / 2; guaranteed nonnegative
    pub margin_volume: f64,
    /// lambda_1 - h_vertex^2 / 2; reported only (K4 makes it negative)
    pub margin_vertex: f64,
}

pub fn cheeger_check(g: &WeightedGraph) -> Result<CheegerReport, GraphError> {
    let spectrum = graph_spectrum(g);
    let lambda1 = spectrum[1];
    let (h_vertex, _) = cheeger_constant(g, CheegerVariant::VertexCount)?;
    let (h_volume, _) = cheeger_constant(g, CheegerVariant::DegreeVolume)?;
    Ok(CheegerReport {
        lambda1,
        h_vertex,
        h_volume,
        margin_volume: lambda1 - h_volume * h_volume / 2.0,
        margin_vertex: lambda1 - h_vertex * h_vertex / 2.0,
    })
}

/// Certified chain from graph data to a first-eigenvalue lower bound for a
/// manifold of volume `vol` modeled by the graph, every link itemized.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SchoenChainReport {
    pub h_volume: f64,
    pub h_vertex: f64,
    pub lambda1_graph: f64,
    /// h_volume^2 / 2, the guaranteed graph eigenvalue floor
    pub graph_floor: f64,
    /// graph-to-manifold spectral comparability constant (supplied)
    pub comparability: f64,
    /// comparability * h^2/2 / 3: thick-part route through the factor-3 loss
    pub graph_term: f64,
    /// a(n,b)^2 (n-2)^2 / (12 vol^2): threshold route
    pub dimension_term: f64,
    pub chain_value: f64,
}

pub fn schoen_chain(
    g: &WeightedGraph,
    vol: f64,
    ball_floor: f64,
    comparability: f64,
    n: u32,
) -> Result<SchoenChainReport, GraphError> {
    assert!(vol > 0.0 && ball_floor > 0.0 && comparability > 0.0 && n >= 3);
    let spectrum = graph_spectrum(g);
    let (h_volume, _) = cheeger_constant(g, CheegerVariant::DegreeVolume)?;
    let (h_vertex, _) = cheeger_constant(g, CheegerVariant::VertexCount)?;
    let graph_floor = h_volume * h_volume / 2.0;
    let graph_term = comparability * graph_floor / 3.0;
    let dimension_term =
        ball_floor * ball_floor * ((n - 2) as f64).powi(2) / (12.0 * vol * vol);
    Ok(SchoenChainReport {
        h_volume,
        h_vertex,
        lambda1_graph: spectrum[1],
        graph_floor,
        comparability,
        graph_term,
        dimension_term,
        chain_value: graph_term.min(dimension_term),
    })
}

/// All connected graphs on exactly `n <= 7` vertices up to isomorphism
/// (canonical form: minimal edge bitstring over all vertex permutations).
pub fn connected_graphs_up_to_iso(n: usize) -> Vec<WeightedGraph> {
    assert!(n >= 1 && n <= 7, "exhaustive enumeration only up to 7");
    if n == 1 {
        return vec![WeightedGraph {
            n: 1,
            edges: vec![],
        }];
    }
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| ((u + 1)..n).map(move |v| (u, v)))
        .collect();
    let m = pairs.len();
    let pair_index = |u: usize, v: usize| -> usize {
        let (a, b) = (u.min(v), u.max(v));
        pairs.iter().position(|&p| p == (a, b)).unwrap()
    };
    // all permutations of 0..n
    let mut perms: Vec<Vec<usize>> = Vec::new();
    let mut idx: Vec<usize> = (0..n).collect();
    permute(&mut idx, 0, &mut perms);
    // permutation action on edge slots
    let actions: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| pairs.iter().map(|&(u, v)| pair_index(p[u], p[v])).collect())
        .collect();

    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for code in 0u32..(1 << m) {
        let edges: Vec<(usize, usize)> = (0..m)
            .filter(|&i| code & (1 << i) != 0)
            .map(|i| pairs[i])
            .collect();
        let g = match WeightedGraph::new(n, edges) {
            Ok(g) => g,
            Err(_) => continue,
        };
        let canon = actions
            .iter()
            .map(|act| {
                let mut c = 0u32;
                for i in 0..m {
                    if code & (1 << i) != 0 {
                        c |= 1 << act[i];
                    }
                }
                c
            })
            .min()
            .unwrap();
        if seen.insert(canon) {
            out.push(g);
        }
    }
    out
}

fn permute(idx: &mut Vec<usize>, k: usize, out: &mut Vec<Vec<usize>>) {
    if k == idx.len() {
        out.push(idx.clone());
        return;
    }
    for i in k..idx.len() {
        idx.swap(k, i);
        permute(idx, k + 1, out);
        idx.swap(k, i);
    }
}

/// Seeded random connected graph on `n` vertices: a random spanning tree
/// plus independent extra edges.
pub fn random_connected_graph(n: usize, extra_edge_prob: f64, seed: u64) -> WeightedGraph {
    use rand::Rng;
    use rand_chacha::rand_core::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for v in 1..n {
        let u = rng.gen_range(0..v);
        edges.push((u, v));
    }
    for u in 0..n {
        for v in (u + 1)..n {
            if rng.gen_bool(extra_edge_prob) {
                edges.push((u, v));
            }
        }
    }
    WeightedGraph::new(n, edges).expect("spanning tree keeps it connected")
}
