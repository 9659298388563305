//! Seeded instance generators.
//!
//! Every generator is a pure function of its arguments and a `u64` seed.
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng::seed_from_u64`),
//! with independent streams selected through [`rng`]'s `stream` argument, so
//! outputs are reproducible bit-for-bit across platforms and releases.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Graph, MultiGraph, Vertex};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("degree sequence sums to the odd number {0}")]
    OddDegreeSum(usize),
    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),
}

/// The generator behind every seeded routine in this crate.
pub fn rng(seed: u64, stream: u64) -> ChaCha8Rng {
    let mut r = ChaCha8Rng::seed_from_u64(seed);
    r.set_stream(stream);
    r
}

/// `G(n, p)`: each of the `C(n, 2)` pairs independently with probability `p`.
///
/// Uses geometric skipping over the pairs in colexicographic order, so the
/// expected running time is `O(n + m)`.
pub fn gnp(n: usize, p: f64, seed: u64) -> Graph {
    assert!((0.0..=1.0).contains(&p), "p must lie in [0, 1]");
    if p == 0.0 || n < 2 {
        return Graph::empty(n);
    }
    if p == 1.0 {
        return Graph::complete(n);
    }
    let mut r = rng(seed, 0);
    let log_q = (1.0 - p).ln();
    let mut edges = Vec::new();
    let (mut v, mut w): (usize, i64) = (1, -1);
    while v < n {
        let u: f64 = r.random();
        let skip = ((1.0 - u).ln() / log_q).floor();
        w += 1 + if skip.is_finite() { skip as i64 } else { i64::MAX / 4 };
        while v < n && w >= v as i64 {
            w -= v as i64;
            v += 1;
        }
        if v < n {
            edges.push((w as usize, v));
        }
    }
    Graph::from_edges(n, edges).expect("skipping visits each pair once")
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`) into its tree.
pub fn prufer_decode(n: usize, seq: &[Vertex]) -> Graph {
    assert!(n >= 2 && seq.len() == n - 2, "sequence length must be n - 2");
    let mut degree = vec![1usize; n];
    for &x in seq {
        degree[x] += 1;
    }
    let mut leaves: BinaryHeap<Reverse<Vertex>> =
        (0..n).filter(|&v| degree[v] == 1).map(Reverse).collect();
    let mut edges = Vec::with_capacity(n - 1);
    for &x in seq {
        let Reverse(leaf) = leaves.pop().expect("a tree always has a leaf");
        edges.push((leaf, x));
        degree[x] -= 1;
        if degree[x] == 1 {
            leaves.push(Reverse(x));
        }
    }
    let Reverse(a) = leaves.pop().expect("two vertices remain");
    let Reverse(b) = leaves.pop().expect("two vertices remain");
    edges.push((a, b));
    Graph::from_edges(n, edges).expect("Prüfer decoding yields a simple tree")
}

/// Uniform random labelled tree on `n` vertices via a uniform Prüfer sequence.
pub fn random_tree(n: usize, seed: u64) -> Graph {
    assert!(n >= 1);
    if n == 1 {
        return Graph::empty(1);
    }
    let mut r = rng(seed, 0);
    let seq: Vec<Vertex> = (0..n - 2).map(|_| r.random_range(0..n)).collect();
    prufer_decode(n, &seq)
}

/// Random tree on `n` vertices whose maximum degree is exactly `delta`:
/// a random Prüfer sequence in which one random vertex occurs `delta - 1`
/// times and every other vertex at most `delta - 1` times.
pub fn random_tree_with_max_degree(n: usize, delta: usize, seed: u64) -> Result<Graph, GenError> {
    if delta == 0 || n < delta + 1 || (delta == 1 && n != 2) {
        return Err(GenError::InvalidParameters(format!(
            "no tree on {n} vertices has maximum degree {delta}"
        )));
    }
    if n == 2 {
        return Ok(Graph::path(2));
    }
    let mut r = rng(seed, 1);
    let hub = r.random_range(0..n);
    let mut seq = vec![hub; delta - 1];
    let mut count = vec![0usize; n];
    while seq.len() < n - 2 {
        let x = r.random_range(0..n);
        if x != hub && count[x] + 1 < delta {
            count[x] += 1;
            seq.push(x);
        }
    }
    seq.shuffle(&mut r);
    Ok(prufer_decode(n, &seq))
}

/// A random tree with each edge then dropped independently with probability
/// `drop_prob`.
pub fn random_forest(n: usize, drop_prob: f64, seed: u64) -> Graph {
    let tree = random_tree(n, seed);
    let mut r = rng(seed, 2);
    let kept: Vec<_> = tree.edges().filter(|_| r.random::<f64>() >= drop_prob).collect();
    Graph::from_edges(n, kept).expect("subset of a simple edge set")
}

/// A degree sequence with an even sum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeSequence {
    degrees: Vec<usize>,
}

impl DegreeSequence {
    pub fn new(degrees: Vec<usize>) -> Result<Self, GenError> {
        let sum: usize = degrees.iter().sum();
        if sum % 2 == 1 {
            return Err(GenError::OddDegreeSum(sum));
        }
        Ok(DegreeSequence { degrees })
    }

    pub fn of_graph(g: &Graph) -> Self {
        DegreeSequence {
            degrees: (0..g.n()).map(|v| g.degree(v)).collect(),
        }
    }

    pub fn degrees(&self) -> &[usize] {
        &self.degrees
    }

    pub fn n(&self) -> usize {
        self.degrees.len()
    }

    /// Half the degree sum.
    pub fn m(&self) -> usize {
        self.degrees.iter().sum::<usize>() / 2
    }
}

/// Half-edge points (`points[i]` owns the point ids of vertex `i`) and a
/// perfect matching on them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HalfEdgePairing {
    pub points: Vec<Vec<usize>>,
    /// `(a, b)` point pairs; every point appears exactly once.
    pub pairing: Vec<(usize, usize)>,
    owner: Vec<Vertex>,
}

impl HalfEdgePairing {
    /// Uniform random perfect matching: shuffle the points, then pair them off
    /// consecutively.
    pub fn random(d: &DegreeSequence, seed: u64) -> Self {
        let mut owner = Vec::with_capacity(2 * d.m());
        let mut points = Vec::with_capacity(d.n());
        for (v, &deg) in d.degrees.iter().enumerate() {
            points.push((owner.len()..owner.len() + deg).collect());
            owner.extend(std::iter::repeat_n(v, deg));
        }
        let mut order: Vec<usize> = (0..owner.len()).collect();
        order.shuffle(&mut rng(seed, 3));
        let pairing = order.chunks_exact(2).map(|c| (c[0], c[1])).collect();
        HalfEdgePairing {
            points,
            pairing,
            owner,
        }
    }

    pub fn owner_of(&self, point: usize) -> Vertex {
        self.owner[point]
    }

    pub fn to_multigraph(&self) -> MultiGraph {
        let edges = self
            .pairing
            .iter()
            .map(|&(a, b)| (self.owner_of(a), self.owner_of(b)))
            .collect();
        MultiGraph::new(self.points.len(), edges).expect("owners are in range")
    }
}

/// Configuration-model multigraph and whether it came out simple.
pub fn configuration_model(d: &DegreeSequence, seed: u64) -> (MultiGraph, bool) {
    let mg = HalfEdgePairing::random(d, seed).to_multigraph();
    let simple = mg.is_simple();
    (mg, simple)
}

/// Verdicts of the three typicality inequalities, with `b0 = ln^{1/4} n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Typicality {
    /// `½·Σ d_i >= c·n/3`.
    pub edge_count: bool,
    /// `ln^{3/4} n <= max d_i <= ln n`.
    pub max_degree: bool,
    /// `|{i : d_i >= b0}| <= n·ln n·exp(-ln^{1/4} n)`.
    pub high_degree_count: bool,
}

impl Typicality {
    pub fn all(&self) -> bool {
        self.edge_count && self.max_degree && self.high_degree_count
    }
}

pub fn is_typical(d: &DegreeSequence, c: f64, n: usize) -> Typicality {
    let nf = n as f64;
    let ln = nf.ln();
    let b0 = ln.powf(0.25);
    let sum: usize = d.degrees.iter().sum();
    let max = d.degrees.iter().copied().max().unwrap_or(0) as f64;
    let high = d.degrees.iter().filter(|&&x| x as f64 >= b0).count() as f64;
    Typicality {
        edge_count: sum as f64 / 2.0 >= c * nf / 3.0,
        max_degree: ln.powf(0.75) <= max && max <= ln,
        high_degree_count: high <= nf * ln * (-b0).exp(),
    }
}

/// A planted sparse instance: `hubs` vertices of degree `hub_degree`, every
/// other vertex of degree at most 3, consecutive hubs joined through a path
/// so that hubs sit pairwise at distance `spacing + 3` or more. Some hub
/// neighbours get pendant paths, some of those branch, and a pendant cycle
/// hangs far from every hub, so the ball of radius 2 around the hubs is a
/// forest while the whole graph is not.
pub fn planted_hubs(hubs: usize, hub_degree: usize, spacing: usize, seed: u64) -> Result<Graph, GenError> {
    if hubs == 0 || hub_degree < 4 {
        return Err(GenError::InvalidParameters(
            "need at least one hub of degree >= 4".into(),
        ));
    }
    let mut r = rng(seed, 4);
    let mut edges = Vec::new();
    let mut n = 0;
    let mut fresh = || {
        n += 1;
        n - 1
    };
    let mut spokes = Vec::with_capacity(hubs);
    for _ in 0..hubs {
        let hub = fresh();
        let nbrs: Vec<Vertex> = (0..hub_degree).map(|_| fresh()).collect();
        for &x in &nbrs {
            edges.push((hub, x));
        }
        spokes.push(nbrs);
    }
    let mut next_id = n;
    let mut alloc = |count: usize| {
        let s = next_id;
        next_id += count;
        s..next_id
    };
    // Connect hub i (spoke 0) to hub i + 1 (spoke 1) by a path.
    for i in 0..hubs.saturating_sub(1) {
        let mut prev = spokes[i][0];
        for v in alloc(spacing) {
            edges.push((prev, v));
            prev = v;
        }
        edges.push((prev, spokes[i + 1][1]));
    }
    // Decorate the remaining spokes: a pendant path, sometimes with a fork.
    for nbrs in &spokes {
        for &x in &nbrs[2..] {
            match r.random_range(0..3) {
                0 => {}
                1 => {
                    let p = alloc(2);
                    edges.push((x, p.start));
                    edges.push((p.start, p.start + 1));
                }
                _ => {
                    let p = alloc(4);
                    edges.push((x, p.start));
                    edges.push((p.start, p.start + 1));
                    edges.push((p.start + 1, p.start + 2));
                    edges.push((p.start + 1, p.start + 3));
                }
            }
        }
    }
    // A cycle hanging off the far end of a path from the last hub.
    let tail = alloc(4);
    let mut prev = spokes[hubs - 1][0];
    for v in tail {
        edges.push((prev, v));
        prev = v;
    }
    let cyc = alloc(5);
    let cyc_start = cyc.start;
    edges.push((prev, cyc_start));
    for v in cyc.clone().skip(1) {
        edges.push((v - 1, v));
    }
    edges.push((cyc.end - 1, cyc_start));
    Graph::from_edges(next_id, edges).map_err(|e| GenError::InvalidParameters(e.to_string()))
}
