//! Seeded random graph generators.
//!
//! All randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded
//! with `seed_from_u64`; independent streams for replicates are derived
//! with [`stream_rng`]. Equal configurations always give identical graphs.

use std::collections::HashSet;
use std::fmt;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, Poisson};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, GraphBuilder, Vertex, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Model {
    /// Chordal graphs grown by clique attachment.
    Chordal,
    /// Uniform random tree plus independent extra edges.
    #[value(name = "tree_er")]
    TreeEr,
}

impl Model {
    pub fn name(self) -> &'static str {
        match self {
            Model::Chordal => "chordal",
            Model::TreeEr => "tree_er",
        }
    }
}

impl fmt::Display for Model {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GenConfig {
    pub model: Model,
    pub n: usize,
    pub p: f64,
    pub seed: u64,
}

impl GenConfig {
    pub fn new(model: Model, n: usize, p: f64, seed: u64) -> Result<Self> {
        let config = Self { model, n, p, seed };
        config.validate()?;
        Ok(config)
    }

    pub fn validate(&self) -> Result<()> {
        if self.n == 0 {
            return Err(Error::InvalidConfig("n must be at least 1".into()));
        }
        if !(0.0..=1.0).contains(&self.p) {
            return Err(Error::InvalidConfig(format!("p = {} is outside [0, 1]", self.p)));
        }
        Ok(())
    }

    /// Edge count the chordal generator aims for: `n - 1 + n(n-1)p/2`.
    pub fn target_edges(&self) -> f64 {
        let n = self.n as f64;
        n - 1.0 + 0.5 * n * (n - 1.0) * self.p
    }

    /// Mean edge count of the tree-plus-edges model.
    pub fn expected_tree_er_edges(&self) -> f64 {
        let n = self.n as f64;
        let tree = n - 1.0;
        tree + self.p * (n * (n - 1.0) / 2.0 - tree)
    }

    pub fn generate(&self) -> Result<Graph> {
        match self.model {
            Model::Chordal => gen_chordal(self),
            Model::TreeEr => gen_tree_er(self),
        }
    }
}

impl fmt::Display for GenConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "model={} n={} p={} seed={}", self.model, self.n, self.p, self.seed)
    }
}

/// Generator for stream `stream` of `seed`. Stream 0 is what the graph
/// generators use for a config with that seed.
pub fn stream_rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(stream);
    rng
}

fn labelled_builder(n: usize) -> GraphBuilder {
    let mut builder = GraphBuilder::new();
    for v in 0..n {
        builder.add_vertex(&v.to_string());
    }
    builder
}

/// Decodes a Prüfer sequence over `0..seq.len() + 2` into tree edges.
pub fn prufer_to_edges(seq: &[Vertex]) -> Vec<(Vertex, Vertex)> {
    let n = seq.len() + 2;
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    let mut ptr = (0..n).find(|&v| degree[v] == 1).unwrap();
    let mut leaf = ptr;
    for &v in seq {
        edges.push((leaf.min(v), leaf.max(v)));
        degree[v] -= 1;
        if degree[v] == 1 && v < ptr {
            leaf = v;
        } else {
            ptr += 1;
            while degree[ptr] != 1 {
                ptr += 1;
            }
            leaf = ptr;
        }
    }
    edges.push((leaf.min(n - 1), leaf.max(n - 1)));
    edges
}

/// Uniform labelled tree on `n` vertices, then every other vertex pair
/// joined independently with probability `p`.
pub fn gen_tree_er(config: &GenConfig) -> Result<Graph> {
    config.validate()?;
    if config.model != Model::TreeEr {
        return Err(Error::InvalidConfig(format!("expected tree_er, got {}", config.model)));
    }
    let n = config.n;
    let mut rng = stream_rng(config.seed, 0);
    let mut builder = labelled_builder(n);
    if n == 1 {
        return Ok(builder.build());
    }

    let seq: Vec<Vertex> = (0..n - 2).map(|_| rng.random_range(0..n)).collect();
    let tree = prufer_to_edges(&seq);
    let tree_set: HashSet<(Vertex, Vertex)> = tree.iter().copied().collect();
    for &(u, v) in &tree {
        builder.add_index_edge(u, v)?;
    }

    for (u, v) in bernoulli_pairs(n, config.p, &mut rng) {
        if !tree_set.contains(&(u, v)) {
            builder.add_index_edge(u, v)?;
        }
    }
    Ok(builder.build())
}

/// Pairs `(u, v)`, `u < v`, each included independently with probability
/// `p`, visited in lexicographic order with geometric skips.
fn bernoulli_pairs(n: usize, p: f64, rng: &mut impl Rng) -> Vec<(Vertex, Vertex)> {
    let mut out = Vec::new();
    if p <= 0.0 || n < 2 {
        return out;
    }
    if p >= 1.0 {
        for u in 0..n {
            for v in u + 1..n {
                out.push((u, v));
            }
        }
        return out;
    }
    let log_q = (1.0 - p).ln();
    let (mut u, mut v) = (0usize, 0usize);
    loop {
        let r: f64 = rng.random();
        // Failures before the next success; 1 - r lies in (0, 1].
        let skip = ((1.0 - r).ln() / log_q).floor();
        if !skip.is_finite() || skip > (n * n) as f64 {
            return out;
        }
        v += skip as usize + 1;
        while v >= n {
            let overflow = v - n;
            u += 1;
            if u + 1 >= n {
                return out;
            }
            v = u + 1 + overflow;
        }
        out.push((u, v));
    }
}

/// Connected chordal graph grown by clique attachment.
///
/// Vertex `i` picks an existing vertex `w` uniformly, draws a clique size
/// `k`, then greedily collects a clique through `w` from `w`'s neighbours in
/// random order and joins to it. The earlier neighbours of every vertex form
/// a clique, so the reverse insertion order is a perfect elimination
/// ordering. `k` is `1 + Poisson(λ)` with `λ` set from the edges still
/// missing from [`GenConfig::target_edges`] spread over the vertices still
/// to come.
pub fn gen_chordal(config: &GenConfig) -> Result<Graph> {
    config.validate()?;
    if config.model != Model::Chordal {
        return Err(Error::InvalidConfig(format!("expected chordal, got {}", config.model)));
    }
    let n = config.n;
    let mut rng = stream_rng(config.seed, 0);
    let target = config.target_edges();
    let mut adjacency: Vec<Vec<Vertex>> = vec![Vec::new(); n];
    let mut edges = 0usize;
    let mut stamp = vec![0usize; n];
    let mut hits = vec![0usize; n];
    let mut candidates = Vec::new();
    let mut clique = Vec::new();

    for i in 1..n {
        let per_vertex = (target - edges as f64) / (n - i) as f64;
        let extra = if per_vertex > 1.0 {
            Poisson::new(per_vertex - 1.0).map(|d| d.sample(&mut rng) as usize).unwrap_or(0)
        } else {
            0
        };
        let k = (1 + extra).min(i);

        let w = rng.random_range(0..i);
        clique.clear();
        clique.push(w);
        if k > 1 {
            // `hits[c]` counts clique members adjacent to `c` (valid where stamp == i).
            for &c in &adjacency[w] {
                stamp[c] = i;
                hits[c] = 1;
            }
            candidates.clear();
            candidates.extend_from_slice(&adjacency[w]);
            candidates.shuffle(&mut rng);
            for &c in &candidates {
                if clique.len() == k {
                    break;
                }
                if hits[c] == clique.len() {
                    clique.push(c);
                    for &d in &adjacency[c] {
                        if stamp[d] == i {
                            hits[d] += 1;
                        }
                    }
                }
            }
        }
        for &c in &clique {
            adjacency[c].push(i);
            adjacency[i].push(c);
        }
        edges += clique.len();
    }

    let mut builder = labelled_builder(n);
    for (u, list) in adjacency.iter().enumerate() {
        for &v in list {
            if u < v {
                builder.add_index_edge(u, v)?;
            }
        }
    }
    Ok(builder.build())
}

/// `k` distinct vertices sampled uniformly without replacement.
pub fn pick_targets(g: &Graph, k: usize, seed: u64) -> Result<VertexSet> {
    if k > g.n() {
        return Err(Error::InvalidConfig(format!(
            "cannot pick {k} targets from {} vertices",
            g.n()
        )));
    }
    let mut rng = stream_rng(seed, 0);
    let picks = rand::seq::index::sample(&mut rng, g.n(), k);
    Ok(VertexSet::from_indices(g.n(), picks).expect("sampled in range"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::is_chordal;

    fn connected(g: &Graph) -> bool {
        g.n() == 0 || g.connected_components(&g.vertices()).unwrap().len() == 1
    }

    #[test]
    fn invalid_configs() {
        assert!(GenConfig::new(Model::Chordal, 0, 0.1, 1).is_err());
        assert!(GenConfig::new(Model::TreeEr, 5, 1.5, 1).is_err());
        assert!(GenConfig::new(Model::TreeEr, 5, -0.1, 1).is_err());
        assert!(GenConfig::new(Model::TreeEr, 5, f64::NAN, 1).is_err());
        let chordal = GenConfig::new(Model::Chordal, 5, 0.1, 1).unwrap();
        assert!(gen_tree_er(&chordal).is_err());
    }

    #[test]
    fn prufer_decoding() {
        // Sequence [3, 3, 3, 4] on six vertices: a star at 3 joined to 4, plus leaf 5.
        let edges = prufer_to_edges(&[3, 3, 3, 4]);
        let mut sorted = edges.clone();
        sorted.sort_unstable();
        assert_eq!(sorted, [(0, 3), (1, 3), (2, 3), (3, 4), (4, 5)]);
        assert_eq!(prufer_to_edges(&[]), [(0, 1)]);
    }

    #[test]
    fn prufer_is_a_bijection_on_five_vertices() {
        // Cayley: 5^3 = 125 labelled trees, all distinct.
        let mut trees = HashSet::new();
        for code in 0..125usize {
            let seq = [code % 5, code / 5 % 5, code / 25];
            let mut edges = prufer_to_edges(&seq);
            edges.sort_unstable();
            let g = Graph::from_index_edges(5, &edges).unwrap();
            assert_eq!(g.m(), 4);
            assert!(connected(&g));
            trees.insert(edges);
        }
        assert_eq!(trees.len(), 125);
    }

    #[test]
    fn tree_er_degenerate_sizes() {
        let g = gen_tree_er(&GenConfig::new(Model::TreeEr, 1, 0.7, 3).unwrap()).unwrap();
        assert_eq!((g.n(), g.m()), (1, 0));
        let g = gen_tree_er(&GenConfig::new(Model::TreeEr, 100, 0.0, 3).unwrap()).unwrap();
        assert_eq!((g.n(), g.m()), (100, 99));
        assert!(connected(&g));
        let g = gen_tree_er(&GenConfig::new(Model::TreeEr, 12, 1.0, 3).unwrap()).unwrap();
        assert_eq!(g.m(), 66);
    }

    #[test]
    fn bernoulli_pairs_cover_every_pair_in_order() {
        let mut rng = stream_rng(1, 0);
        let pairs = bernoulli_pairs(30, 0.5, &mut rng);
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
        assert!(pairs.iter().all(|&(u, v)| u < v && v < 30));
        // Over many draws every pair, including the last one, appears.
        let mut seen = HashSet::new();
        for s in 0..200 {
            seen.extend(bernoulli_pairs(8, 0.3, &mut stream_rng(s, 0)));
        }
        assert_eq!(seen.len(), 28);
    }

    #[test]
    fn tree_er_mean_edges_match_expectation() {
        let base = GenConfig::new(Model::TreeEr, 1000, 0.01, 0).unwrap();
        let expected = base.expected_tree_er_edges();
        assert!((expected - 5984.0).abs() < 1.0);
        let mean = (0..100)
            .map(|seed| gen_tree_er(&GenConfig { seed, ..base }).unwrap().m() as f64)
            .sum::<f64>()
            / 100.0;
        assert!((mean - expected).abs() / expected < 0.05, "mean {mean}");
    }

    #[test]
    fn chordal_small_sizes() {
        for n in 1..6 {
            let g = gen_chordal(&GenConfig::new(Model::Chordal, n, 0.5, 9).unwrap()).unwrap();
            assert_eq!(g.n(), n);
            assert!(is_chordal(&g));
            assert!(connected(&g));
        }
    }

    #[test]
    fn chordal_mean_edges_track_target() {
        for (p, target) in [(0.01, 560.25), (0.1, 3361.5)] {
            let base = GenConfig::new(Model::Chordal, 250, p, 0).unwrap();
            assert!((base.target_edges() - target).abs() < 1e-9);
            let mean = (0..100)
                .map(|seed| gen_chordal(&GenConfig { seed, ..base }).unwrap().m() as f64)
                .sum::<f64>()
                / 100.0;
            assert!((mean - target).abs() / target < 0.15, "p {p}: mean {mean}");
        }
    }

    #[test]
    fn generators_are_deterministic() {
        for model in [Model::Chordal, Model::TreeEr] {
            let c = GenConfig::new(model, 80, 0.05, 42).unwrap();
            let a = c.generate().unwrap();
            let b = c.generate().unwrap();
            assert_eq!(a.edges().collect::<Vec<_>>(), b.edges().collect::<Vec<_>>());
            let other = GenConfig { seed: 43, ..c }.generate().unwrap();
            assert_ne!(a.edges().collect::<Vec<_>>(), other.edges().collect::<Vec<_>>());
        }
    }

    #[test]
    fn pick_targets_contract() {
        let g = gen_tree_er(&GenConfig::new(Model::TreeEr, 30, 0.1, 1).unwrap()).unwrap();
        assert_eq!(pick_targets(&g, 30, 5).unwrap(), g.vertices());
        assert!(pick_targets(&g, 0, 5).unwrap().is_empty());
        assert_eq!(pick_targets(&g, 10, 5).unwrap(), pick_targets(&g, 10, 5).unwrap());
        assert_eq!(pick_targets(&g, 10, 5).unwrap().len(), 10);
        assert!(pick_targets(&g, 31, 5).is_err());
    }
}
