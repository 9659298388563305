//! Constructive colourings of forests.
//!
//! [`color_forest_2tone`] hits the exact 2-tone optimum `kappa(Δ)`. A vertex
//! taken in BFS order only has to avoid its parent's colours, its
//! grandparent's label and its already-labelled siblings' labels: at most
//! `Δ - 1` forbidden labels against `(κ-2)(κ-3)/2 >= Δ` labels disjoint from
//! the parent.
//!
//! For `t >= 3`, [`greedy_t_tone_forest`] runs the same BFS greedy against
//! every labelled vertex within distance `t`, and [`min_greedy_palette`]
//! escalates the palette until it succeeds.

use thiserror::Error;

use crate::graph::{components, is_forest, Graph, Vertex};
use crate::tone::{self, kappa, labels_lex, overlap_sorted, Color, Label, ToneColoring, ToneError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TreeError {
    #[error("input graph is not a forest")]
    NotAForest,
    #[error("forest has no edges; the 2-tone tree formula needs maximum degree >= 1")]
    Edgeless,
    #[error("no admissible label for vertex {0}")]
    Stuck(Vertex),
    #[error(transparent)]
    Tone(#[from] ToneError),
}

/// BFS scaffold over a forest: each component rooted at its smallest vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RootedForest {
    pub parent: Vec<Option<Vertex>>,
    /// Roots first within each component, then level by level.
    pub bfs_order: Vec<Vertex>,
}

impl RootedForest {
    pub fn new(f: &Graph) -> Result<Self, TreeError> {
        if !is_forest(f) {
            return Err(TreeError::NotAForest);
        }
        let n = f.n();
        let mut parent = vec![None; n];
        let mut seen = vec![false; n];
        let mut bfs_order = Vec::with_capacity(n);
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let start = bfs_order.len();
            bfs_order.push(root);
            let mut head = start;
            while head < bfs_order.len() {
                let u = bfs_order[head];
                head += 1;
                for &w in f.neighbors(u) {
                    if !seen[w] {
                        seen[w] = true;
                        parent[w] = Some(u);
                        bfs_order.push(w);
                    }
                }
            }
        }
        Ok(RootedForest { parent, bfs_order })
    }
}

/// Maximum independent set size of a forest: repeatedly take a leaf (or
/// isolated vertex) and delete its neighbour.
pub fn forest_independence_number(f: &Graph) -> Result<usize, TreeError> {
    let rooted = RootedForest::new(f)?;
    let mut taken = vec![false; f.n()];
    let mut blocked = vec![false; f.n()];
    let mut alpha = 0;
    // Reverse BFS order visits every vertex after all of its children.
    for &v in rooted.bfs_order.iter().rev() {
        if !blocked[v] {
            taken[v] = true;
            alpha += 1;
            if let Some(p) = rooted.parent[v] {
                blocked[p] = true;
            }
        }
    }
    debug_assert!(f.edges().all(|(u, v)| !(taken[u] && taken[v])));
    Ok(alpha)
}

/// Optimal 2-tone colouring of a forest with palette `kappa(Δ)`.
pub fn color_forest_2tone(f: &Graph) -> Result<ToneColoring, TreeError> {
    let delta = f.max_degree();
    if delta == 0 {
        return Err(TreeError::Edgeless);
    }
    let k = kappa(delta as u64)? as Color;
    color_forest_2tone_with_palette(f, k)
}

/// The parent/grandparent/sibling greedy under an explicit palette. Any
/// `k >= kappa(max(Δ, 1))` succeeds; smaller palettes may report `Stuck`.
pub fn color_forest_2tone_with_palette(f: &Graph, k: Color) -> Result<ToneColoring, TreeError> {
    let rooted = RootedForest::new(f)?;
    let mut coloring = ToneColoring::new(f.n(), 2, k);
    let side = k as usize + 1;
    // `taken[a * side + b]`: pair (a, b) is already used at distance 2.
    let mut taken = vec![false; side * side];
    let mut marked: Vec<usize> = Vec::new();
    for &u in &rooted.bfs_order {
        if rooted.parent[u].is_none() {
            if k < 2 {
                return Err(TreeError::Stuck(u));
            }
            coloring.set(u, Label::new(vec![1, 2])?)?;
        }
        // Children of `u` must avoid u's colours, the label of u's parent and
        // each other's labels.
        let own = pair(coloring.get(u));
        for &i in &marked {
            taken[i] = false;
        }
        marked.clear();
        if let Some(p) = rooted.parent[u] {
            let (a, b) = pair(coloring.get(p));
            taken[a as usize * side + b as usize] = true;
            marked.push(a as usize * side + b as usize);
        }
        for &c in f.neighbors(u) {
            if Some(c) == rooted.parent[u] {
                continue;
            }
            let (a, b) = least_pair(k, own, |a, b| taken[a as usize * side + b as usize])
                .ok_or(TreeError::Stuck(c))?;
            taken[a as usize * side + b as usize] = true;
            marked.push(a as usize * side + b as usize);
            coloring.set(c, Label::new(vec![a, b])?)?;
        }
    }
    debug_assert!(tone::verify(f, &coloring).map(|v| v.is_valid()) == Ok(true));
    Ok(coloring)
}

fn pair(l: Option<&Label>) -> (Color, Color) {
    let c = l.expect("parents are labelled before their children").colors();
    (c[0], c[1])
}

/// Least pair in `1..=k` avoiding both colours of `parent` and every pair for
/// which `forbidden` holds.
fn least_pair(
    k: Color,
    parent: (Color, Color),
    forbidden: impl Fn(Color, Color) -> bool,
) -> Option<(Color, Color)> {
    let clash = |c: Color| c == parent.0 || c == parent.1;
    for a in 1..=k {
        if clash(a) {
            continue;
        }
        for b in a + 1..=k {
            if !clash(b) && !forbidden(a, b) {
                return Some((a, b));
            }
        }
    }
    None
}

/// BFS-order greedy t-tone colouring with palette `k`: each vertex takes the
/// lexicographically least t-subset that shares fewer than `d` colours with
/// every labelled vertex at distance `d <= t`.
pub fn greedy_t_tone_forest(f: &Graph, t: usize, k: Color) -> Result<ToneColoring, TreeError> {
    assert!(t >= 1 && k as usize >= t, "need 1 <= t <= k");
    let rooted = RootedForest::new(f)?;
    let mut coloring = ToneColoring::new(f.n(), t, k);
    let mut labels: Vec<Option<Vec<Color>>> = vec![None; f.n()];
    for &v in &rooted.bfs_order {
        let near: Vec<(Vertex, usize)> = f
            .ball(v, t)
            .into_iter()
            .filter(|&(u, _)| labels[u].is_some())
            .collect();
        let mut it = labels_lex(k, t);
        let chosen = loop {
            let Some(cand) = it.peek() else {
                return Err(TreeError::Stuck(v));
            };
            let fits = near.iter().all(|&(u, d)| {
                overlap_sorted(cand, labels[u].as_deref().expect("filtered to labelled")) < d
            });
            if fits {
                break cand.to_vec();
            }
            it.advance();
        };
        coloring.set(v, Label::new(chosen.clone())?)?;
        labels[v] = Some(chosen);
    }
    Ok(coloring)
}

/// Least palette (by unit steps from the `⌈t·n/α⌉` lower bound) on which
/// [`greedy_t_tone_forest`] succeeds. Success need not be monotone in `k`,
/// but `k = t·n` always works, so the scan terminates.
pub fn min_greedy_palette(f: &Graph, t: usize) -> Result<(Color, ToneColoring), TreeError> {
    let n = f.n();
    let alpha = forest_independence_number(f)?;
    if n == 0 {
        return Ok((0, ToneColoring::new(0, t, 0)));
    }
    let start = tone::tone_lower_bound(n, t, alpha).max(t);
    for k in start..=t * n {
        match greedy_t_tone_forest(f, t, k as Color) {
            Ok(c) => return Ok((k as Color, c)),
            Err(TreeError::Stuck(_)) => continue,
            Err(e) => return Err(e),
        }
    }
    unreachable!("t*n colours always suffice for the greedy")
}

/// Size of the largest connected component of a forest (or any graph).
pub fn max_component_size(g: &Graph) -> usize {
    components(g).iter().map(Vec::len).max().unwrap_or(0)
}
