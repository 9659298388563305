//! Sparse-regime pipeline.
//!
//! Vertices of degree at least `b0` form the core `V0`; `V_k` adds every
//! vertex within distance `k` of the core. `H = G[V_{2t-2}]` is expected to
//! be a forest, so it is tone-coloured with a tree colourer. Labels outside
//! `V_{t-1}` are then erased and the remaining vertices are filled in
//! greedily, in ascending id order, from the same palette.
//!
//! At reachable `n` the default `b0 = ln^{1/4} n` is below 2, `H` is most of
//! the graph and usually not a forest. The pipeline reports that as a
//! [`SparseError::NotAForest`] unless escalation is enabled, in which case
//! it falls back to a whole-graph greedy that adds one colour per failure.

use std::io::Write;

use thiserror::Error;

use crate::graph::{find_cycle, induced_subgraph, is_forest, shells, BfsScratch, Graph, Vertex};
use crate::tone::{kappa, labels_lex, overlap_sorted, verify, verify_partial, Color, Label, ToneColoring, ToneError};
use crate::tree::{color_forest_2tone_with_palette, greedy_t_tone_forest, max_component_size, TreeError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SparseError {
    #[error("H = G[V_(2t-2)] is not a forest; cycle: {cycle:?}")]
    NotAForest { cycle: Vec<Vertex> },
    #[error("no admissible label for vertex {0} and escalation is disabled")]
    Stuck(Vertex),
    #[error(transparent)]
    Tone(#[from] ToneError),
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseParams {
    /// Core degree threshold. Zero puts every vertex in the core.
    pub b0: f64,
    pub t: usize,
    pub palette_escalation: bool,
}

impl SparseParams {
    /// Defaults for `n` vertices: `b0 = ln^{1/4} n`, escalation on.
    pub fn new(n: usize, t: usize) -> Self {
        assert!(t >= 2, "tone must be at least 2");
        let ln = (n.max(2) as f64).ln();
        SparseParams {
            b0: ln.powf(0.25),
            t,
            palette_escalation: true,
        }
    }

    pub fn with_b0(mut self, b0: f64) -> Self {
        assert!(b0 >= 0.0 && b0.is_finite(), "b0 must be a finite non-negative number");
        self.b0 = b0;
        self
    }

    pub fn with_escalation(mut self, on: bool) -> Self {
        self.palette_escalation = on;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CoreDecomposition {
    pub v0: Vec<Vertex>,
    /// `N^1(V0), ..., N^{2t-2}(V0)`.
    pub shells: Vec<Vec<Vertex>>,
    /// `V_{2t-2}`, sorted.
    pub h_vertices: Vec<Vertex>,
    /// `V_{t-1}`, sorted.
    pub keep_set: Vec<Vertex>,
}

pub fn core_decomposition(g: &Graph, params: &SparseParams) -> CoreDecomposition {
    let t = params.t;
    let v0: Vec<Vertex> = (0..g.n()).filter(|&v| g.degree(v) as f64 >= params.b0).collect();
    let shells = shells(g, &v0, 2 * t - 2);
    let union = |k: usize| {
        let mut s: Vec<Vertex> = v0.iter().chain(shells[..k].iter().flatten()).copied().collect();
        s.sort_unstable();
        s
    };
    let h_vertices = union(2 * t - 2);
    let keep_set = union(t - 1);
    CoreDecomposition {
        v0,
        shells,
        h_vertices,
        keep_set,
    }
}

/// Statistics from [`greedy_extend`].
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ExtendStats {
    pub extended: usize,
    /// Largest number of forbidden labels seen at any extended vertex.
    pub max_forbidden: usize,
}

/// Labels every unlabelled vertex of `partial`, in ascending id order, with
/// the least `t`-subset of `1..=palette` compatible with all labelled
/// vertices within distance `t`. Fails with the first vertex that has no
/// admissible label.
pub fn greedy_extend(
    g: &Graph,
    partial: &ToneColoring,
    palette: Color,
) -> Result<(ToneColoring, ExtendStats), Vertex> {
    let t = partial.t();
    assert!(palette >= partial.max_color_used() && palette as usize >= t);
    let mut coloring = partial.clone().with_palette(palette);
    let mut stats = ExtendStats::default();
    let mut scratch = BfsScratch::new(g.n());
    let mut near: Vec<(Vertex, usize)> = Vec::new();
    for v in 0..g.n() {
        if coloring.get(v).is_some() {
            continue;
        }
        near.clear();
        scratch.run(g, &[v], t, |u, d| {
            if d > 0 && coloring.get(u).is_some() {
                near.push((u, d));
            }
        });
        let mut chosen: Option<Vec<Color>> = None;
        let mut forbidden = 0;
        let mut it = labels_lex(palette, t);
        while let Some(cand) = it.peek() {
            let fits = near.iter().all(|&(u, d)| {
                overlap_sorted(cand, coloring.get(u).expect("filtered to labelled").colors()) < d
            });
            if !fits {
                forbidden += 1;
            } else if chosen.is_none() {
                chosen = Some(cand.to_vec());
            }
            it.advance();
        }
        stats.max_forbidden = stats.max_forbidden.max(forbidden);
        let label = chosen.ok_or(v)?;
        coloring
            .set(v, Label::new(label).expect("lexicographic labels are valid"))
            .expect("label fits the palette");
        stats.extended += 1;
    }
    Ok((coloring, stats))
}

/// Colours `H` and keeps only the labels on `V_{t-1}`: the partial colouring
/// the extension step starts from. On success returns it with the palette
/// actually needed (larger than `palette` only when the `t >= 3` greedy had
/// to escalate).
pub fn color_core(
    g: &Graph,
    decomp: &CoreDecomposition,
    t: usize,
    palette: Color,
    escalate: bool,
) -> Result<(ToneColoring, Color), SparseError> {
    let h = induced_subgraph(g, &decomp.h_vertices);
    if !is_forest(&h.graph) {
        let cycle = find_cycle(&h.graph).expect("non-forests contain a cycle");
        return Err(SparseError::NotAForest {
            cycle: cycle.into_iter().map(|v| h.original[v]).collect(),
        });
    }
    let mut k = palette;
    let h_coloring = loop {
        let attempt = if t == 2 {
            color_forest_2tone_with_palette(&h.graph, k)
        } else {
            greedy_t_tone_forest(&h.graph, t, k)
        };
        match attempt {
            Ok(c) => break c,
            Err(TreeError::Stuck(_)) if escalate => k += 1,
            Err(TreeError::Stuck(v)) => return Err(SparseError::Stuck(h.original[v])),
            Err(TreeError::Tone(e)) => return Err(e.into()),
            Err(TreeError::NotAForest | TreeError::Edgeless) => unreachable!("H was checked to be a forest"),
        }
    };
    let mut partial = ToneColoring::new(g.n(), t, k);
    for &v in &decomp.keep_set {
        let local = h.local(v).expect("keep set lies inside H");
        let label = h_coloring.get(local).expect("forest colourings are total").clone();
        partial.set(v, label)?;
    }
    Ok((partial, k))
}

/// Observables for the two structural properties behind the pipeline.
#[derive(Debug, Clone, PartialEq)]
pub struct StructuralDiagnostics {
    /// Component sizes of `G^{4t-3}[V0]`, descending.
    pub p1_components: Vec<usize>,
    pub p1_threshold: f64,
    /// No component reaches `ln^{7/8} n`.
    pub p1_holds: bool,
    pub max_h_component: usize,
    /// `ln^{(4t+9)/8} n`.
    pub p2_threshold: f64,
    pub p2_holds: bool,
}

pub fn structural_diagnostics(g: &Graph, decomp: &CoreDecomposition, t: usize) -> StructuralDiagnostics {
    let ln = (g.n().max(2) as f64).ln();
    let radius = 4 * t - 3;
    // Union-find over V0, joining core vertices within distance 4t-3.
    let mut index = vec![usize::MAX; g.n()];
    for (i, &v) in decomp.v0.iter().enumerate() {
        index[v] = i;
    }
    let mut parent: Vec<usize> = (0..decomp.v0.len()).collect();
    fn find(parent: &mut [usize], mut x: usize) -> usize {
        while parent[x] != x {
            parent[x] = parent[parent[x]];
            x = parent[x];
        }
        x
    }
    let mut scratch = BfsScratch::new(g.n());
    for (i, &v) in decomp.v0.iter().enumerate() {
        let mut reached = Vec::new();
        scratch.run(g, &[v], radius, |u, _| {
            if index[u] != usize::MAX {
                reached.push(index[u]);
            }
        });
        for j in reached {
            let (a, b) = (find(&mut parent, i), find(&mut parent, j));
            if a != b {
                parent[a.max(b)] = a.min(b);
            }
        }
    }
    let mut sizes = vec![0usize; decomp.v0.len()];
    for i in 0..decomp.v0.len() {
        sizes[find(&mut parent, i)] += 1;
    }
    let mut p1_components: Vec<usize> = sizes.into_iter().filter(|&s| s > 0).collect();
    p1_components.sort_unstable_by(|a, b| b.cmp(a));
    let p1_threshold = ln.powf(7.0 / 8.0);
    let max_h_component = max_component_size(&induced_subgraph(g, &decomp.h_vertices).graph);
    let p2_threshold = ln.powf((4 * t + 9) as f64 / 8.0);
    StructuralDiagnostics {
        p1_holds: p1_components.first().is_none_or(|&s| (s as f64) < p1_threshold),
        p1_components,
        p1_threshold,
        max_h_component,
        p2_holds: max_h_component as f64 <= p2_threshold,
        p2_threshold,
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct PipelineReport {
    pub n: usize,
    pub t: usize,
    pub b0: f64,
    pub max_degree: usize,
    /// The palette the pipeline aims for: `kappa(Δ)` for `t = 2`,
    /// `max(kappa(Δ), 2t)` otherwise, and `t` on edgeless graphs.
    pub target_palette: Color,
    pub palette: Color,
    pub v0_size: usize,
    pub shell_sizes: Vec<usize>,
    pub h_forest: bool,
    pub max_h_component: usize,
    pub escalations: usize,
    /// Whether the whole-graph greedy fallback produced the colouring.
    pub fallback: bool,
    /// Whether the kept labels were valid on their own before extension.
    pub keep_set_valid: bool,
    pub extended: usize,
    pub max_forbidden: usize,
}

impl PipelineReport {
    pub fn at_target(&self) -> bool {
        self.palette == self.target_palette
    }

    pub const CSV_HEADER: [&'static str; 15] = [
        "n",
        "t",
        "b0",
        "max_degree",
        "target_palette",
        "palette",
        "v0",
        "shells",
        "h_forest",
        "max_h_component",
        "escalations",
        "fallback",
        "keep_set_valid",
        "extended",
        "max_forbidden",
    ];

    pub fn csv_record(&self) -> Vec<String> {
        let shells = self.shell_sizes.iter().map(usize::to_string).collect::<Vec<_>>().join(";");
        vec![
            self.n.to_string(),
            self.t.to_string(),
            format!("{:.6}", self.b0),
            self.max_degree.to_string(),
            self.target_palette.to_string(),
            self.palette.to_string(),
            self.v0_size.to_string(),
            shells,
            self.h_forest.to_string(),
            self.max_h_component.to_string(),
            self.escalations.to_string(),
            self.fallback.to_string(),
            self.keep_set_valid.to_string(),
            self.extended.to_string(),
            self.max_forbidden.to_string(),
        ]
    }

    pub fn write_csv<W: Write>(&self, out: W) -> csv::Result<()> {
        let mut w = csv::Writer::from_writer(out);
        w.write_record(Self::CSV_HEADER)?;
        w.write_record(self.csv_record())?;
        w.flush()?;
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct SparseOutcome {
    pub coloring: ToneColoring,
    pub report: PipelineReport,
}

pub fn target_palette(max_degree: usize, t: usize) -> Color {
    if max_degree == 0 {
        return t as Color;
    }
    let k = kappa(max_degree as u64).expect("max degree is positive") as Color;
    if t == 2 {
        k
    } else {
        k.max(2 * t as Color)
    }
}

/// Greedy over the whole graph, adding a colour after each failure.
fn whole_graph_greedy(g: &Graph, t: usize, start: Color) -> (ToneColoring, ExtendStats, Color, usize) {
    let mut k = start.max(t as Color);
    let mut escalations = 0;
    loop {
        match greedy_extend(g, &ToneColoring::new(g.n(), t, k), k) {
            Ok((c, stats)) => return (c, stats, k, escalations),
            Err(_) => {
                k += 1;
                escalations += 1;
            }
        }
    }
}

pub fn sparse_color(g: &Graph, params: &SparseParams) -> Result<SparseOutcome, SparseError> {
    let t = params.t;
    assert!(t >= 2, "tone must be at least 2");
    let decomp = core_decomposition(g, params);
    let delta = g.max_degree();
    let target = target_palette(delta, t);
    let mut report = PipelineReport {
        n: g.n(),
        t,
        b0: params.b0,
        max_degree: delta,
        target_palette: target,
        palette: target,
        v0_size: decomp.v0.len(),
        shell_sizes: decomp.shells.iter().map(Vec::len).collect(),
        h_forest: true,
        max_h_component: max_component_size(&induced_subgraph(g, &decomp.h_vertices).graph),
        escalations: 0,
        fallback: false,
        keep_set_valid: true,
        extended: 0,
        max_forbidden: 0,
    };

    let core = color_core(g, &decomp, t, target, params.palette_escalation);
    let extended = match core {
        Ok((partial, k)) => {
            report.keep_set_valid = verify_partial(g, &partial)?.is_valid();
            assert!(report.keep_set_valid, "kept labels violate a tone constraint");
            report.escalations = (k - target) as usize;
            match greedy_extend(g, &partial, k) {
                Ok((c, stats)) => {
                    if t == 2 {
                        // Every extended vertex and its neighbours lie outside V0.
                        let b0 = params.b0;
                        let bound = 2.0 * b0 * k as f64 + b0 * b0;
                        assert!(
                            stats.max_forbidden as f64 <= bound,
                            "forbidden-label count {} exceeds {bound}",
                            stats.max_forbidden
                        );
                    }
                    Some((c, stats, k))
                }
                Err(v) if !params.palette_escalation => return Err(SparseError::Stuck(v)),
                Err(_) => {
                    report.escalations += 1;
                    None
                }
            }
        }
        Err(SparseError::NotAForest { cycle }) => {
            report.h_forest = false;
            if !params.palette_escalation {
                return Err(SparseError::NotAForest { cycle });
            }
            None
        }
        Err(e) => return Err(e),
    };
    let (coloring, stats, k) = match extended {
        Some(done) => done,
        None => {
            report.fallback = true;
            let start = target + report.escalations as Color;
            let (c, stats, k, more) = whole_graph_greedy(g, t, start);
            report.escalations += more;
            (c, stats, k)
        }
    };
    report.palette = k;
    report.extended = stats.extended;
    report.max_forbidden = stats.max_forbidden;
    assert!(verify(g, &coloring)?.is_valid(), "sparse pipeline produced an invalid colouring");
    Ok(SparseOutcome { coloring, report })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tree::color_forest_2tone;

    fn params(b0: f64, t: usize) -> SparseParams {
        SparseParams::new(100, t).with_b0(b0)
    }

    #[test]
    fn low_degree_graph_has_empty_core() {
        let d = core_decomposition(&Graph::cycle(8), &params(3.0, 2));
        assert!(d.v0.is_empty());
        assert!(d.shells.iter().all(Vec::is_empty));
        assert!(d.h_vertices.is_empty());
    }

    #[test]
    fn star_decomposition() {
        let d = core_decomposition(&Graph::star(9), &params(5.0, 2));
        assert_eq!(d.v0, vec![0]);
        assert_eq!(d.shells, vec![(1..10).collect::<Vec<_>>(), vec![]]);
        assert_eq!(d.keep_set, (0..10).collect::<Vec<_>>());
    }

    /// Stars on centres 0 and 6 (five leaves each), centres joined by the
    /// path 0-1-2-3-4-5-6 so that each centre has degree 6.
    fn two_stars() -> Graph {
        let mut edges: Vec<(usize, usize)> = (0..6).map(|i| (i, i + 1)).collect();
        edges.extend((7..12).map(|l| (0, l)));
        edges.extend((12..17).map(|l| (6, l)));
        Graph::from_edges(17, edges).unwrap()
    }

    #[test]
    fn two_stars_shells_by_hand() {
        let d = core_decomposition(&two_stars(), &params(5.0, 2));
        assert_eq!(d.v0, vec![0, 6]);
        let mut first: Vec<_> = vec![1, 5];
        first.extend(7..17);
        assert_eq!(d.shells[0], first);
        assert_eq!(d.shells[1], vec![2, 4]);
        assert_eq!(d.keep_set.len(), 14);
        assert_eq!(d.h_vertices.len(), 16);
        let out = sparse_color(&two_stars(), &params(5.0, 2)).unwrap();
        assert_eq!(out.coloring.k(), 6);
        assert!(out.report.at_target());
        assert_eq!(out.report.extended, 3);
    }

    #[test]
    fn triangle_is_a_structural_failure() {
        let p = params(2.0, 2).with_escalation(false);
        match sparse_color(&Graph::cycle(3), &p) {
            Err(SparseError::NotAForest { cycle }) => {
                let mut c = cycle;
                c.sort_unstable();
                assert_eq!(c, vec![0, 1, 2]);
            }
            other => panic!("expected NotAForest, got {other:?}"),
        }
        let out = sparse_color(&Graph::cycle(3), &params(2.0, 2)).unwrap();
        assert!(out.report.fallback && !out.report.h_forest);
        assert_eq!(out.coloring.k(), 6);
    }

    #[test]
    fn zero_threshold_forest_matches_tree_colourer() {
        for g in [Graph::path(7), Graph::star(4), crate::random::random_tree(30, 2)] {
            let out = sparse_color(&g, &params(0.0, 2)).unwrap();
            let direct = color_forest_2tone(&g).unwrap();
            assert_eq!(out.coloring, direct);
            assert_eq!(out.report.extended, 0);
        }
    }

    #[test]
    fn planted_hubs_succeed_at_kappa() {
        let g = crate::random::planted_hubs(3, 12, 6, 0).unwrap();
        let out = sparse_color(&g, &params(10.0, 2).with_escalation(false)).unwrap();
        assert_eq!(out.coloring.k(), 8);
        assert!(out.report.at_target() && out.report.h_forest);
        assert!(verify(&g, &out.coloring).unwrap().is_valid());
    }

    #[test]
    fn extend_examples() {
        let g = Graph::path(2);
        let mut partial = ToneColoring::new(2, 2, 5);
        partial.set(0, Label::new(vec![1, 2]).unwrap()).unwrap();
        partial.set(1, Label::new(vec![3, 4]).unwrap()).unwrap();
        assert_eq!(greedy_extend(&g, &partial, 5).unwrap().0, partial);

        let e = Graph::empty(1);
        let (c, _) = greedy_extend(&e, &ToneColoring::new(1, 3, 3), 3).unwrap();
        assert_eq!(c.get(0).unwrap().colors(), &[1, 2, 3]);

        partial.clear(1);
        let (c, stats) = greedy_extend(&g, &partial, 5).unwrap();
        assert_eq!(c.get(1).unwrap().colors(), &[3, 4]);
        // 10 pairs, 3 of which avoid {1, 2}.
        assert_eq!(stats.max_forbidden, 7);
    }

    #[test]
    fn t3_pipeline_is_valid() {
        let g = crate::random::random_tree(40, 9);
        let out = sparse_color(&g, &params(3.0, 3)).unwrap();
        assert!(verify(&g, &out.coloring).unwrap().is_valid());
        assert!(out.report.palette >= out.report.target_palette);
    }

    #[test]
    fn diagnostics_trivia() {
        let g = Graph::cycle(6);
        let d = core_decomposition(&g, &params(3.0, 2));
        let s = structural_diagnostics(&g, &d, 2);
        assert!(s.p1_components.is_empty() && s.max_h_component == 0);

        let star = Graph::star(5);
        let d = core_decomposition(&star, &params(3.0, 2));
        assert_eq!(structural_diagnostics(&star, &d, 2).p1_components, vec![1]);
    }
}
