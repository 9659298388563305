//! Exhaustive oracles for small graphs: maximum independent set, chromatic
//! number and the t-tone chromatic number.
//!
//! All three are plain branch-and-bound over `u128` bitsets, so vertex counts
//! (and palette sizes for the t-tone search) are capped at 128. They are
//! meant for desk-scale instances that anchor the tests, not for production
//! sizes.

use thiserror::Error;

use crate::graph::{truncated_distances, Graph, Vertex};
use crate::par;
use crate::tone::{self, tone_lower_bound, Color, Label, ToneColoring};

/// Largest vertex count (and palette) the bitset solvers accept.
pub const MAX_VERTICES: usize = 128;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("graph has {n} vertices; the exact solvers handle at most {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("palette of {k} colours exceeds the solver limit of {limit}")]
    PaletteTooLarge { k: usize, limit: usize },
    #[error("search budget exhausted; best independent set found has {} vertices", best.len())]
    IndependentSetBudget { best: Vec<Vertex> },
    #[error("search budget exhausted after {nodes} nodes; colourability unknown")]
    Unknown { nodes: u64 },
    #[error("search budget exhausted; optimum lies in {lower}..={upper}")]
    Bracket { lower: usize, upper: usize },
}

/// Caps the number of search-tree nodes one solve may expand.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchBudget {
    pub max_nodes: u64,
    /// With `false`, [`exact_tau`] probes several palette sizes concurrently.
    /// The answer is the same; only which probe hits the node cap first can
    /// change between runs.
    pub deterministic: bool,
}

impl SearchBudget {
    pub fn unbounded() -> Self {
        SearchBudget {
            max_nodes: u64::MAX,
            deterministic: true,
        }
    }

    pub fn nodes(max_nodes: u64) -> Self {
        assert!(max_nodes >= 1);
        SearchBudget {
            max_nodes,
            deterministic: true,
        }
    }
}

impl Default for SearchBudget {
    fn default() -> Self {
        SearchBudget::unbounded()
    }
}

fn check_size(g: &Graph) -> Result<(), SolveError> {
    if g.n() > MAX_VERTICES {
        return Err(SolveError::TooLarge {
            n: g.n(),
            limit: MAX_VERTICES,
        });
    }
    Ok(())
}

fn adjacency_masks(g: &Graph) -> Vec<u128> {
    (0..g.n())
        .map(|u| g.neighbors(u).iter().fold(0u128, |m, &v| m | 1 << v))
        .collect()
}

fn complement_masks(g: &Graph) -> Vec<u128> {
    let all = full_mask(g.n());
    adjacency_masks(g)
        .into_iter()
        .enumerate()
        .map(|(u, m)| all & !m & !(1u128 << u))
        .collect()
}

fn full_mask(n: usize) -> u128 {
    if n == 128 {
        u128::MAX
    } else {
        (1u128 << n) - 1
    }
}

fn bits(mut m: u128) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (m != 0).then(|| {
            let b = m.trailing_zeros() as usize;
            m &= m - 1;
            b
        })
    })
}

struct MisSearch<'a> {
    adj: &'a [u128],
    best: u128,
    nodes: u64,
    max_nodes: u64,
}

impl MisSearch<'_> {
    fn run(&mut self, mut cand: u128, mut cur: u128) -> bool {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return false;
        }
        loop {
            if cand == 0 {
                if cur.count_ones() > self.best.count_ones() {
                    self.best = cur;
                }
                return true;
            }
            if cur.count_ones() + cand.count_ones() <= self.best.count_ones() {
                return true;
            }
            // A vertex of candidate-degree <= 1 lies in some maximum set.
            let mut branch = None;
            let mut forced = None;
            let mut top = 0;
            for v in bits(cand) {
                let d = (self.adj[v] & cand).count_ones();
                if d <= 1 {
                    forced = Some(v);
                    break;
                }
                if branch.is_none() || d > top {
                    branch = Some(v);
                    top = d;
                }
            }
            match forced {
                Some(v) => {
                    cur |= 1 << v;
                    cand &= !self.adj[v] & !(1u128 << v);
                }
                None => {
                    let v = branch.expect("candidate set is non-empty");
                    if !self.run(cand & !self.adj[v] & !(1u128 << v), cur | 1 << v) {
                        return false;
                    }
                    cand &= !(1u128 << v);
                }
            }
        }
    }
}

fn max_independent_masked(adj: &[u128], n: usize, budget: SearchBudget) -> Result<u128, u128> {
    let mut s = MisSearch {
        adj,
        best: 0,
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    if s.run(full_mask(n), 0) {
        Ok(s.best)
    } else {
        Err(s.best)
    }
}

/// A maximum independent set, sorted.
pub fn max_independent_set(g: &Graph, budget: SearchBudget) -> Result<Vec<Vertex>, SolveError> {
    check_size(g)?;
    match max_independent_masked(&adjacency_masks(g), g.n(), budget) {
        Ok(best) => Ok(bits(best).collect()),
        Err(best) => Err(SolveError::IndependentSetBudget {
            best: bits(best).collect(),
        }),
    }
}

/// `α(g)`.
pub fn independence_number(g: &Graph, budget: SearchBudget) -> Result<usize, SolveError> {
    max_independent_set(g, budget).map(|s| s.len())
}

/// `ω(g)`, as the independence number of the complement.
pub fn clique_number(g: &Graph, budget: SearchBudget) -> Result<usize, SolveError> {
    check_size(g)?;
    match max_independent_masked(&complement_masks(g), g.n(), budget) {
        Ok(best) => Ok(best.count_ones() as usize),
        Err(best) => Err(SolveError::Bracket {
            lower: best.count_ones() as usize,
            upper: g.n(),
        }),
    }
}

/// DSATUR colour count; an upper bound on `χ`.
fn dsatur_upper(g: &Graph) -> usize {
    let n = g.n();
    let mut color = vec![usize::MAX; n];
    let mut sat: Vec<u128> = vec![0; n];
    let mut used = 0;
    for _ in 0..n {
        let v = (0..n)
            .filter(|&v| color[v] == usize::MAX)
            .max_by_key(|&v| (sat[v].count_ones(), g.degree(v), std::cmp::Reverse(v)))
            .expect("an uncoloured vertex remains");
        let c = (!sat[v]).trailing_zeros() as usize;
        color[v] = c;
        used = used.max(c + 1);
        for &w in g.neighbors(v) {
            sat[w] |= 1 << c;
        }
    }
    used
}

struct KColoring<'a> {
    adj: &'a [u128],
    order: Vec<Vertex>,
    k: usize,
    class: Vec<u128>,
    nodes: u64,
    max_nodes: u64,
}

impl KColoring<'_> {
    /// `Some(found)`, or `None` when the node cap was hit.
    fn run(&mut self, i: usize, used: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        if i == self.order.len() {
            return Some(true);
        }
        let v = self.order[i];
        // Colours are introduced in order, so only `0..=used` is tried.
        for c in 0..(used + 1).min(self.k) {
            if self.class[c] & self.adj[v] == 0 {
                self.class[c] |= 1 << v;
                let r = self.run(i + 1, used.max(c + 1));
                self.class[c] &= !(1u128 << v);
                if r != Some(false) {
                    return r;
                }
            }
        }
        Some(false)
    }
}

/// `χ(g)` by scanning `k` upward from the clique number, each step an
/// exhaustive k-colourability search.
pub fn exact_chromatic(g: &Graph, budget: SearchBudget) -> Result<usize, SolveError> {
    check_size(g)?;
    let n = g.n();
    if n == 0 {
        return Ok(0);
    }
    let upper = dsatur_upper(g);
    let lower = clique_number(g, budget)?;
    let adj = adjacency_masks(g);
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut spent = 0u64;
    for k in lower..upper {
        let mut search = KColoring {
            adj: &adj,
            order: order.clone(),
            k,
            class: vec![0; k],
            nodes: 0,
            max_nodes: budget.max_nodes.saturating_sub(spent),
        };
        match search.run(0, 0) {
            Some(true) => return Ok(k),
            Some(false) => spent = spent.saturating_add(search.nodes),
            None => return Err(SolveError::Bracket { lower: k, upper }),
        }
    }
    Ok(upper)
}

/// Outcome of a t-tone colourability search that ran to completion.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Colorability {
    Colorable(ToneColoring),
    Infeasible,
}

struct ToneSearch {
    t: usize,
    k: usize,
    /// `earlier[i]`: `(j, d)` for order positions `j < i` within distance `t`.
    earlier: Vec<Vec<(usize, u32)>>,
    /// `subsets[m]`: all t-subsets of colours `1..=m` as masks, in lexicographic order.
    subsets: Vec<Vec<u128>>,
    labels: Vec<u128>,
    nodes: u64,
    max_nodes: u64,
}

impl ToneSearch {
    fn run(&mut self, i: usize, used: usize) -> Option<bool> {
        self.nodes += 1;
        if self.nodes > self.max_nodes {
            return None;
        }
        if i == self.labels.len() {
            return Some(true);
        }
        let reach = (used + self.t).min(self.k);
        let low = full_mask(used);
        for idx in 0..self.subsets[reach].len() {
            let mask = self.subsets[reach][idx];
            // Canonical form: fresh colours are exactly used+1, used+2, ...
            let fresh = (mask & !low) >> used;
            if fresh & (fresh + 1) != 0 {
                continue;
            }
            let ok = self.earlier[i]
                .iter()
                .all(|&(j, d)| (mask & self.labels[j]).count_ones() < d);
            if !ok {
                continue;
            }
            self.labels[i] = mask;
            let r = self.run(i + 1, used + fresh.count_ones() as usize);
            if r != Some(false) {
                return r;
            }
        }
        Some(false)
    }
}

fn subsets_by_prefix(k: usize, t: usize) -> Vec<Vec<u128>> {
    (0..=k)
        .map(|m| {
            if m < t {
                return Vec::new();
            }
            tone::labels_lex(m as Color, t)
                .map(|l| l.colors().iter().fold(0u128, |acc, &c| acc | 1 << (c - 1)))
                .collect()
        })
        .collect()
}

/// Searches for a t-tone k-colouring. Vertices are labelled in descending
/// degree order (ties by id); colour symmetry is broken by introducing fresh
/// colours in increasing order, which also pins the first label to `{1..t}`.
pub fn t_tone_colorable(
    g: &Graph,
    t: usize,
    k: usize,
    budget: SearchBudget,
) -> Result<Colorability, SolveError> {
    assert!(t >= 1 && k >= t, "need 1 <= t <= k");
    check_size(g)?;
    if k > MAX_VERTICES {
        return Err(SolveError::PaletteTooLarge {
            k,
            limit: MAX_VERTICES,
        });
    }
    let n = g.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    let mut pos = vec![0; n];
    for (i, &v) in order.iter().enumerate() {
        pos[v] = i;
    }
    let dist = truncated_distances(g, t);
    let mut earlier = vec![Vec::new(); n];
    for (u, v, d) in dist.pairs() {
        let (a, b) = (pos[u].min(pos[v]), pos[u].max(pos[v]));
        earlier[b].push((a, d as u32));
    }
    let mut search = ToneSearch {
        t,
        k,
        earlier,
        subsets: subsets_by_prefix(k, t),
        labels: vec![0; n],
        nodes: 0,
        max_nodes: budget.max_nodes,
    };
    match search.run(0, 0) {
        None => Err(SolveError::Unknown {
            nodes: search.nodes,
        }),
        Some(false) => Ok(Colorability::Infeasible),
        Some(true) => {
            let mut coloring = ToneColoring::new(n, t, k as Color);
            for (i, &v) in order.iter().enumerate() {
                let colors = bits(search.labels[i]).map(|b| b as Color + 1).collect();
                coloring
                    .set(v, Label::new(colors).expect("mask labels are well formed"))
                    .expect("mask labels fit the palette");
            }
            assert!(
                tone::verify(g, &coloring).map(|v| v.is_valid()) == Ok(true),
                "exact search produced an invalid colouring"
            );
            Ok(Colorability::Colorable(coloring))
        }
    }
}

/// `τ_t(g)` with a witness colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauResult {
    pub tau: usize,
    pub witness: ToneColoring,
    /// The lower bound the upward scan started from.
    pub lower_bound: usize,
}

/// Lower bound used to start the τ scan: `max(t, ⌈t·n/α⌉, t·ω)`.
pub fn tau_lower_bound(g: &Graph, t: usize, budget: SearchBudget) -> Result<usize, SolveError> {
    if g.n() == 0 {
        return Ok(0);
    }
    let alpha = independence_number(g, budget)?;
    let omega = clique_number(g, budget)?;
    Ok(t.max(tone_lower_bound(g.n(), t, alpha)).max(t * omega))
}

/// Least `k` admitting a t-tone k-colouring, scanning upward from
/// [`tau_lower_bound`]. `k = t·n` (pairwise disjoint labels) always works.
pub fn exact_tau(g: &Graph, t: usize, budget: SearchBudget) -> Result<TauResult, SolveError> {
    assert!(t >= 1);
    check_size(g)?;
    let n = g.n();
    let lower_bound = tau_lower_bound(g, t, budget)?;
    if n == 0 {
        return Ok(TauResult {
            tau: 0,
            witness: ToneColoring::new(0, t, 0),
            lower_bound,
        });
    }
    let upper = t * n;
    let window = if budget.deterministic {
        1
    } else {
        par_window()
    };
    let mut k = lower_bound;
    while k <= upper {
        let ks: Vec<usize> = (k..(k + window).min(upper + 1)).collect();
        let outcomes = par::map_slice(&ks, |&k| t_tone_colorable(g, t, k, budget));
        for (&k, outcome) in ks.iter().zip(outcomes) {
            match outcome {
                Ok(Colorability::Colorable(witness)) => {
                    return Ok(TauResult {
                        tau: k,
                        witness,
                        lower_bound,
                    })
                }
                Ok(Colorability::Infeasible) => {}
                Err(SolveError::Unknown { .. }) => {
                    return Err(SolveError::Bracket { lower: k, upper })
                }
                Err(e) => return Err(e),
            }
        }
        k += ks.len();
    }
    unreachable!("t*n colours always suffice")
}

fn par_window() -> usize {
    #[cfg(feature = "parallel")]
    {
        rayon::current_num_threads().max(1)
    }
    #[cfg(not(feature = "parallel"))]
    {
        1
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tone::verify;

    fn brute_alpha(g: &Graph) -> usize {
        (0u32..1 << g.n())
            .filter(|&s| g.edges().all(|(u, v)| s >> u & 1 == 0 || s >> v & 1 == 0))
            .map(|s| s.count_ones() as usize)
            .max()
            .unwrap()
    }

    #[test]
    fn mis_examples() {
        let u = SearchBudget::unbounded();
        assert_eq!(max_independent_set(&Graph::cycle(5), u).unwrap().len(), 2);
        assert_eq!(max_independent_set(&Graph::complete(6), u).unwrap().len(), 1);
        let p4 = Graph::path(4);
        assert_eq!(brute_alpha(&p4), 2);
        assert_eq!(max_independent_set(&p4, u).unwrap().len(), 2);
        assert_eq!(independence_number(&Graph::petersen(), u), Ok(4));
    }

    #[test]
    fn mis_budget_reports_best() {
        match max_independent_set(&Graph::petersen(), SearchBudget::nodes(1)) {
            Err(SolveError::IndependentSetBudget { best }) => assert!(best.len() <= 4),
            other => panic!("expected budget exhaustion, got {other:?}"),
        }
    }

    #[test]
    fn chromatic_examples() {
        let u = SearchBudget::unbounded();
        assert_eq!(exact_chromatic(&Graph::cycle(5), u), Ok(3));
        assert_eq!(exact_chromatic(&Graph::cycle(6), u), Ok(2));
        assert_eq!(exact_chromatic(&Graph::star(3), u), Ok(2));
        assert_eq!(exact_chromatic(&Graph::petersen(), u), Ok(3));
        assert_eq!(exact_chromatic(&Graph::complete(5), u), Ok(5));
        assert_eq!(exact_chromatic(&Graph::empty(3), u), Ok(1));
    }

    #[test]
    fn colorable_examples() {
        let u = SearchBudget::unbounded();
        match t_tone_colorable(&Graph::path(2), 2, 4, u).unwrap() {
            Colorability::Colorable(c) => {
                assert_eq!(c.get(0).unwrap().colors(), &[1, 2]);
                assert_eq!(c.get(1).unwrap().colors(), &[3, 4]);
            }
            Colorability::Infeasible => panic!("K2 is 2-tone 4-colourable"),
        }
        assert_eq!(t_tone_colorable(&Graph::path(3), 2, 4, u), Ok(Colorability::Infeasible));
        match t_tone_colorable(&Graph::path(3), 2, 5, u).unwrap() {
            Colorability::Colorable(c) => assert!(verify(&Graph::path(3), &c).unwrap().is_valid()),
            Colorability::Infeasible => panic!("P3 is 2-tone 5-colourable"),
        }
    }

    /// Exhaustive over all `C(k, 2)^3` labellings of P3, no symmetry breaking.
    #[test]
    fn p3_threshold_matches_unpruned_enumeration() {
        let p3 = Graph::path(3);
        for k in 4..=5u32 {
            let labels: Vec<_> = tone::labels_lex(k, 2).collect();
            let mut any = false;
            for a in &labels {
                for b in &labels {
                    for c in &labels {
                        let col = ToneColoring::from_labels(2, k, vec![a.clone(), b.clone(), c.clone()]).unwrap();
                        any |= verify(&p3, &col).unwrap().is_valid();
                    }
                }
            }
            assert_eq!(any, k == 5);
        }
    }

    #[test]
    fn tau_examples() {
        let u = SearchBudget::unbounded();
        assert_eq!(exact_tau(&Graph::empty(1), 2, u).unwrap().tau, 2);
        assert_eq!(exact_tau(&Graph::path(2), 2, u).unwrap().tau, 4);
        let c5 = exact_tau(&Graph::cycle(5), 2, u).unwrap();
        assert_eq!(c5.tau, 5);
        assert_eq!(c5.lower_bound, 5);
        assert_eq!(exact_tau(&Graph::path(3), 2, u).unwrap().tau, 5);
        assert_eq!(exact_tau(&Graph::path(2), 3, u).unwrap().tau, 6);
        assert_eq!(exact_tau(&Graph::empty(6), 2, u).unwrap().tau, 2);
    }

    #[test]
    fn tau_parallel_probe_agrees() {
        let loose = SearchBudget {
            max_nodes: u64::MAX,
            deterministic: false,
        };
        for g in [Graph::star(5), Graph::cycle(7), Graph::petersen()] {
            let a = exact_tau(&g, 2, SearchBudget::unbounded()).unwrap().tau;
            let b = exact_tau(&g, 2, loose).unwrap().tau;
            assert_eq!(a, b);
        }
    }

    #[test]
    fn tau_budget_gives_bracket() {
        let r = exact_tau(&Graph::star(6), 2, SearchBudget::nodes(3));
        assert!(matches!(r, Err(SolveError::Bracket { .. })), "{r:?}");
    }

    #[test]
    fn too_large_is_rejected() {
        let g = Graph::empty(MAX_VERTICES + 1);
        assert!(matches!(
            max_independent_set(&g, SearchBudget::unbounded()),
            Err(SolveError::TooLarge { .. })
        ));
    }
}
