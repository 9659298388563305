//! Dense-regime colouring from mutually respecting partitions.
//!
//! Pass `i` builds a partition `P_i` of the vertices into independent sets,
//! each of which meets every part of `P_1, ..., P_{i-1}` at most once. Large
//! sets are peeled off by randomized greedy search until few vertices
//! remain; the rest is finished by a smallest-last greedy colouring of an
//! auxiliary graph whose extra edges forbid two vertices of one earlier part
//! from sharing a class. Each pass gets a fresh block of colours, and the
//! partitions are assembled with [`partitions_to_coloring`].

use rand::seq::SliceRandom;
use rand::Rng;

use crate::graph::{Graph, Vertex};
use crate::par;
use crate::random::rng;
use crate::tone::{partitions_to_coloring, Partition, ToneColoring, ToneError};

/// Tuning constants for edge probability `p` on `n` vertices. All fields are
/// public so callers can override the asymptotic defaults.
#[derive(Debug, Clone, PartialEq)]
pub struct DenseParams {
    /// `1 / (1 - p)`.
    pub b: f64,
    /// `⌈3 ln n / ln b⌉`, the w.h.p. ceiling on the independence number.
    pub k_ceiling: usize,
    /// `⌈2 log_b n - 2 log_b log_b n - log_b ln n⌉`; extracted sets are capped here.
    pub s: usize,
    /// `⌈2 log_b n - 2 log_b log_b n - 5 log_b ln n⌉`; the extraction target.
    pub s0: usize,
    /// Extraction stops once at most this many vertices remain (`⌈n / ln² n⌉`).
    pub remainder_threshold: usize,
    /// Randomized greedy restarts per extraction.
    pub restart_budget: usize,
}

pub const DEFAULT_RESTARTS: usize = 32;

/// Computes the defaults, clamping every size below at 1 and keeping
/// `s0 <= s <= k_ceiling`.
pub fn dense_params(n: usize, p: f64) -> DenseParams {
    assert!(n >= 3, "need at least 3 vertices");
    assert!(p > 0.0 && p < 1.0, "p must lie in (0, 1)");
    let nf = n as f64;
    let b = 1.0 / (1.0 - p);
    let log_b = |x: f64| x.ln() / b.ln();
    let ceil_at_least_1 = |x: f64| if x.is_finite() && x > 1.0 { x.ceil() as usize } else { 1 };
    let k_ceiling = ceil_at_least_1(3.0 * nf.ln() / b.ln());
    let base = 2.0 * log_b(nf) - 2.0 * log_b(log_b(nf));
    let s = ceil_at_least_1(base - log_b(nf.ln())).min(k_ceiling);
    let s0 = ceil_at_least_1(base - 5.0 * log_b(nf.ln())).min(s);
    let remainder_threshold = ceil_at_least_1(nf / nf.ln().powi(2)).min(n);
    DenseParams {
        b,
        k_ceiling,
        s,
        s0,
        remainder_threshold,
        restart_budget: DEFAULT_RESTARTS,
    }
}

/// Fraction of present pairs, the natural `p` estimate for a given graph.
pub fn edge_density(g: &Graph) -> f64 {
    let n = g.n() as f64;
    if g.n() < 2 {
        return 0.0;
    }
    g.m() as f64 / (n * (n - 1.0) / 2.0)
}

/// One randomized greedy pass: scan `candidates` in random order, keeping a
/// vertex when it has no neighbour in the set and shares no part of any
/// constraint partition with a member. Stops at `cap` vertices.
fn greedy_respecting(
    g: &Graph,
    candidates: &[Vertex],
    constraints: &[Partition],
    cap: usize,
    seed: u64,
    stream: u64,
) -> Vec<Vertex> {
    let mut order = candidates.to_vec();
    order.shuffle(&mut rng(seed, stream));
    let mut blocked = vec![false; g.n()];
    let mut used: Vec<Vec<bool>> = constraints.iter().map(|p| vec![false; p.len()]).collect();
    let mut set = Vec::new();
    for v in order {
        if set.len() == cap {
            break;
        }
        if blocked[v] {
            continue;
        }
        let parts: Vec<Option<usize>> = constraints.iter().map(|p| p.part_of(v)).collect();
        let clash = parts
            .iter()
            .zip(&used)
            .any(|(part, used)| part.is_some_and(|j| used[j]));
        if clash {
            continue;
        }
        for (part, used) in parts.iter().zip(&mut used) {
            if let Some(j) = part {
                used[*j] = true;
            }
        }
        for &w in g.neighbors(v) {
            blocked[w] = true;
        }
        set.push(v);
    }
    set.sort_unstable();
    set
}

/// Restarts run in fixed-size batches; the search stops after the first batch
/// whose best set reaches `target`. Batch boundaries do not depend on the
/// thread count, so the result is reproducible.
const RESTART_BATCH: usize = 8;

/// Largest independent set found by `restarts` randomized greedy runs over
/// `candidates` that respects every constraint partition, capped at `cap`
/// vertices. Ties go to the lexicographically smallest set. Never empty when
/// `candidates` is non-empty.
pub fn find_respecting_independent_set(
    g: &Graph,
    candidates: &[Vertex],
    constraints: &[Partition],
    target: usize,
    cap: usize,
    restarts: usize,
    seed: u64,
) -> Vec<Vertex> {
    let restarts = restarts.max(1);
    let mut best: Vec<Vertex> = Vec::new();
    let mut done = 0;
    while done < restarts {
        let batch: Vec<u64> = (done..(done + RESTART_BATCH).min(restarts)).map(|r| r as u64).collect();
        let found = par::map_slice(&batch, |&r| greedy_respecting(g, candidates, constraints, cap, seed, r));
        for s in found {
            if s.len() > best.len() || (s.len() == best.len() && s < best) {
                best = s;
            }
        }
        done += batch.len();
        if best.len() >= target {
            break;
        }
    }
    best
}

/// The auxiliary graph on `remainder`: edges of `g` inside it plus a clique
/// on each constraint part (restricted to `remainder`). Returned with the
/// local-to-parent id map.
pub fn auxiliary_graph(g: &Graph, constraints: &[Partition], remainder: &[Vertex]) -> (Graph, Vec<Vertex>) {
    let mut original = remainder.to_vec();
    original.sort_unstable();
    original.dedup();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        local[v] = i;
    }
    let mut adj: Vec<Vec<Vertex>> = original
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| local[w] != usize::MAX).map(|&w| local[w]).collect())
        .collect();
    for p in constraints {
        for part in p.parts() {
            let members: Vec<_> = part.iter().filter(|&&v| local[v] != usize::MAX).map(|&v| local[v]).collect();
            for &a in &members {
                adj[a].extend(members.iter().copied().filter(|&b| b != a));
            }
        }
    }
    for l in &mut adj {
        l.sort_unstable();
        l.dedup();
    }
    (Graph::from_sorted_adjacency(adj), original)
}

/// Smallest-last vertex order (repeatedly remove a minimum-degree vertex;
/// the order is the reverse of removal) and the degeneracy it witnesses.
pub fn smallest_last_order(g: &Graph) -> (Vec<Vertex>, usize) {
    let n = g.n();
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    let max_d = g.max_degree();
    let mut buckets: Vec<Vec<Vertex>> = vec![Vec::new(); max_d + 1];
    for v in (0..n).rev() {
        buckets[degree[v]].push(v);
    }
    let mut removed = vec![false; n];
    let mut removal = Vec::with_capacity(n);
    let mut degeneracy = 0;
    let mut low = 0;
    while removal.len() < n {
        low = low.min(max_d);
        // Buckets hold stale entries; skip those whose degree has changed.
        let v = loop {
            while buckets[low].is_empty() {
                low += 1;
            }
            let v = buckets[low].pop().expect("bucket is non-empty");
            if !removed[v] && degree[v] == low {
                break v;
            }
        };
        degeneracy = degeneracy.max(low);
        removed[v] = true;
        removal.push(v);
        for &w in g.neighbors(v) {
            if !removed[w] {
                degree[w] -= 1;
                buckets[degree[w]].push(w);
                low = low.min(degree[w]);
            }
        }
    }
    removal.reverse();
    (removal, degeneracy)
}

/// Greedy colouring in smallest-last order; at most `1 + degeneracy` colours.
/// Returns the colour (0-based) of each vertex.
pub fn smallest_last_coloring(g: &Graph) -> Vec<usize> {
    let (order, _) = smallest_last_order(g);
    let mut color = vec![usize::MAX; g.n()];
    let mut taken: Vec<bool> = Vec::new();
    for v in order {
        taken.clear();
        taken.resize(g.degree(v) + 1, false);
        for &w in g.neighbors(v) {
            if let Some(slot) = taken.get_mut(color[w]) {
                *slot = true;
            }
        }
        color[v] = taken.iter().position(|&b| !b).expect("degree + 1 slots");
    }
    color
}

/// Splits `remainder` into classes that are independent in `g` and respect
/// every constraint, by colouring the auxiliary graph in smallest-last
/// order. The result is a partition over the universe `0..g.n()` whose
/// ground set is `remainder`.
pub fn coloring_number_complete(g: &Graph, constraints: &[Partition], remainder: &[Vertex]) -> Partition {
    let (aux, original) = auxiliary_graph(g, constraints, remainder);
    let color = smallest_last_coloring(&aux);
    let classes = color.iter().copied().max().map_or(0, |c| c + 1);
    let mut parts = vec![Vec::new(); classes];
    for (local, &c) in color.iter().enumerate() {
        parts[c].push(original[local]);
    }
    Partition::new(g.n(), parts).expect("colour classes are disjoint and non-empty")
}

/// What one pass did.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PassReport {
    pub pass: usize,
    pub set_sizes: Vec<usize>,
    /// Vertices left for the greedy completion.
    pub remainder: usize,
    pub greedy_colors: usize,
}

/// CSV with columns `pass,sets,remainder,greedy_colors`; `sets` counts the
/// extracted sets.
pub fn write_pass_reports<W: std::io::Write>(reports: &[PassReport], out: W) -> csv::Result<()> {
    let mut w = csv::Writer::from_writer(out);
    w.write_record(["pass", "sets", "remainder", "greedy_colors"])?;
    for r in reports {
        w.write_record([r.pass, r.set_sizes.len(), r.remainder, r.greedy_colors].map(|x| x.to_string()))?;
    }
    w.flush()?;
    Ok(())
}

#[derive(Debug, Clone, PartialEq)]
pub struct DenseOutcome {
    pub coloring: ToneColoring,
    pub partitions: Vec<Partition>,
    pub reports: Vec<PassReport>,
    /// Whether `g` is connected with diameter at most 2, which is what makes
    /// the assembled colouring valid for every `t`. When false, distance 1
    /// and 2 constraints still hold but farther pairs may not.
    pub diameter_ok: bool,
}

/// Builds one partition respecting `earlier`.
fn build_partition(
    g: &Graph,
    earlier: &[Partition],
    params: &DenseParams,
    seed: u64,
    pass: usize,
) -> (Partition, PassReport) {
    let mut remaining: Vec<Vertex> = (0..g.n()).collect();
    let mut parts = Vec::new();
    let mut set_sizes = Vec::new();
    let mut seeds = rng(seed, 1 << 32 | pass as u64);
    while remaining.len() > params.remainder_threshold {
        let set = find_respecting_independent_set(
            g,
            &remaining,
            earlier,
            params.s0,
            params.s,
            params.restart_budget,
            seeds.random(),
        );
        debug_assert!(!set.is_empty());
        let mut gone = vec![false; g.n()];
        for &v in &set {
            gone[v] = true;
        }
        remaining.retain(|&v| !gone[v]);
        set_sizes.push(set.len());
        parts.push(set);
    }
    let rest = coloring_number_complete(g, earlier, &remaining);
    let report = PassReport {
        pass,
        set_sizes,
        remainder: remaining.len(),
        greedy_colors: rest.len(),
    };
    parts.extend(rest.parts().iter().cloned());
    let partition = Partition::new(g.n(), parts).expect("extracted sets and classes partition V");
    (partition, report)
}

/// The full pipeline: `t` sequential passes, then assembly. With `t = 1`
/// this is an ordinary proper colouring.
pub fn t_tone_color_dense(
    g: &Graph,
    t: usize,
    params: &DenseParams,
    seed: u64,
) -> Result<DenseOutcome, ToneError> {
    assert!(t >= 1, "tone must be at least 1");
    let mut partitions: Vec<Partition> = Vec::with_capacity(t);
    let mut reports = Vec::with_capacity(t);
    for pass in 0..t {
        let (p, r) = build_partition(g, &partitions, params, seed, pass + 1);
        partitions.push(p);
        reports.push(r);
    }
    let coloring = partitions_to_coloring(&partitions, g)?;
    Ok(DenseOutcome {
        coloring,
        partitions,
        reports,
        diameter_ok: g.diameter_at_most(2),
    })
}

/// Whether `G[H]` has at most `n·|H| / (k_ceiling · ln n)` edges.
pub fn edge_density_diagnostic(g: &Graph, h: &[Vertex], params: &DenseParams) -> bool {
    let mut inside = vec![false; g.n()];
    for &v in h {
        inside[v] = true;
    }
    let edges = h
        .iter()
        .map(|&v| g.neighbors(v).iter().filter(|&&w| w > v && inside[w]).count())
        .sum::<usize>();
    let n = g.n() as f64;
    edges as f64 <= n * h.len() as f64 / (params.k_ceiling as f64 * n.ln())
}

/// Largest independent set found by unconstrained randomized greedy search;
/// a lower estimate of `α`.
pub fn alpha_estimate(g: &Graph, restarts: usize, seed: u64) -> usize {
    let all: Vec<Vertex> = (0..g.n()).collect();
    find_respecting_independent_set(g, &all, &[], usize::MAX, usize::MAX, restarts, seed).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tone::{respects, set_respects, verify};

    #[test]
    fn params_for_1024_half() {
        let p = dense_params(1024, 0.5);
        assert!((p.b - 2.0).abs() < 1e-12);
        assert_eq!(p.k_ceiling, 30);
        // 20 - 2 log2 10 - log2 ln 1024 = 10.563...
        assert_eq!(p.s, 11);
        assert!(p.s0 <= p.s && p.s <= p.k_ceiling);
        // ⌈1024 / ln² 1024⌉ = ⌈21.31⌉
        assert_eq!(p.remainder_threshold, 22);
    }

    #[test]
    fn params_blow_up_as_p_vanishes() {
        let a = dense_params(1000, 1e-2);
        let b = dense_params(1000, 1e-4);
        assert!(b.b < a.b && b.k_ceiling > a.k_ceiling);
        assert!(b.s >= 1 && b.s0 >= 1);
    }

    #[test]
    fn find_set_examples() {
        let all: Vec<_> = (0..6).collect();
        let e6 = Graph::empty(6);
        let s = find_respecting_independent_set(&e6, &all, &[Partition::singletons(6)], 6, 6, 4, 0);
        assert_eq!(s, all);

        let k6 = Graph::complete(6);
        assert_eq!(find_respecting_independent_set(&k6, &all, &[], 3, 6, 4, 0).len(), 1);

        let c5 = Graph::cycle(5);
        let five: Vec<_> = (0..5).collect();
        let s = find_respecting_independent_set(&c5, &five, &[Partition::whole(5)], 2, 5, 8, 0);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn found_sets_are_independent_and_respecting() {
        let g = crate::random::gnp(80, 0.3, 5);
        let all: Vec<_> = (0..80).collect();
        let p = Partition::new(80, (0..40).map(|i| vec![2 * i, 2 * i + 1]).collect()).unwrap();
        for seed in 0..10 {
            let s = find_respecting_independent_set(&g, &all, std::slice::from_ref(&p), 100, 100, 8, seed);
            assert!(!s.is_empty());
            assert!(set_respects(&s, &p));
            assert!(s.iter().all(|&u| s.iter().all(|&v| !g.has_edge(u, v))));
        }
    }

    #[test]
    fn completion_examples() {
        let g = Graph::empty(4);
        assert!(coloring_number_complete(&g, &[], &[]).is_empty());

        let pairs = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let rest = coloring_number_complete(&g, std::slice::from_ref(&pairs), &[0, 1, 2, 3]);
        assert_eq!(rest.len(), 2);
        assert_eq!(respects(&rest, &pairs), Ok(true));
    }

    #[test]
    fn smallest_last_degeneracy_of_known_graphs() {
        assert_eq!(smallest_last_order(&Graph::path(6)).1, 1);
        assert_eq!(smallest_last_order(&Graph::cycle(6)).1, 2);
        assert_eq!(smallest_last_order(&Graph::complete(5)).1, 4);
        assert_eq!(smallest_last_order(&Graph::petersen()).1, 3);
    }

    #[test]
    fn dense_examples() {
        let k5 = Graph::complete(5);
        let params = dense_params(5, 0.9);
        let out = t_tone_color_dense(&k5, 2, &params, 1).unwrap();
        assert_eq!(out.coloring.k(), 10);
        assert!(out.partitions.iter().all(|p| p.len() == 5));
        assert!(verify(&k5, &out.coloring).unwrap().is_valid());

        let e3 = Graph::empty(3);
        let out = t_tone_color_dense(&e3, 2, &dense_params(3, 0.5), 1).unwrap();
        assert_eq!(out.partitions[0].len(), 1);
        assert_eq!(out.partitions[1].len(), 3);
        assert_eq!(out.coloring.k(), 4);
        assert!(!out.diameter_ok);
        assert!(verify(&e3, &out.coloring).unwrap().is_valid());
    }

    #[test]
    fn dense_run_on_gnp_is_valid_and_deterministic() {
        let g = crate::random::gnp(120, 0.5, 3);
        let params = dense_params(120, 0.5);
        let a = t_tone_color_dense(&g, 2, &params, 7).unwrap();
        let b = t_tone_color_dense(&g, 2, &params, 7).unwrap();
        assert_eq!(a, b);
        assert!(a.diameter_ok);
        assert!(verify(&g, &a.coloring).unwrap().is_valid());
        assert_eq!(respects(&a.partitions[0], &a.partitions[1]), Ok(true));
        for r in &a.reports {
            assert!(r.remainder <= params.remainder_threshold);
            assert!(r.set_sizes.iter().all(|&s| s <= params.s));
        }
    }

    #[test]
    fn density_diagnostic_trivia() {
        let g = crate::random::gnp(50, 0.5, 1);
        let params = dense_params(50, 0.5);
        assert!(edge_density_diagnostic(&g, &[], &params));
        assert!(edge_density_diagnostic(&g, &[7], &params));
    }
}
