//! Undirected simple graphs over dense `0..n` vertex ids, plus the BFS-based
//! queries the colourers lean on: truncated distances, power graphs,
//! neighbourhood shells, components and forest checks.

use std::collections::VecDeque;

use thiserror::Error;

use crate::par;

/// Vertex identifier. Vertices of a graph on `n` vertices are `0..n`.
pub type Vertex = usize;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("self-loop at vertex {0}")]
    SelfLoop(Vertex),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(Vertex, Vertex),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    OutOfRange { vertex: Vertex, n: usize },
}

/// An undirected simple graph stored as sorted adjacency lists.
///
/// Immutable once built; every constructor validates symmetry, loops and
/// duplicates so the invariants hold for the lifetime of the value.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    m: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self, GraphError>
    where
        I: IntoIterator<Item = (Vertex, Vertex)>,
    {
        let mut adj = vec![Vec::new(); n];
        let mut m = 0;
        for (u, v) in edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].push(v);
            adj[v].push(u);
            m += 1;
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                let (a, b) = (u.min(w[0]), u.max(w[0]));
                return Err(GraphError::DuplicateEdge(a, b));
            }
        }
        Ok(Graph { adj, m })
    }

    /// Builds a graph from adjacency lists that are already symmetric, sorted
    /// and loop-free. Only checked in debug builds.
    pub(crate) fn from_sorted_adjacency(adj: Vec<Vec<Vertex>>) -> Self {
        let twice: usize = adj.iter().map(Vec::len).sum();
        debug_assert!(twice.is_multiple_of(2));
        debug_assert!(adj.iter().enumerate().all(|(u, l)| {
            l.windows(2).all(|w| w[0] < w[1])
                && l.iter().all(|&v| v != u && adj[v].binary_search(&u).is_ok())
        }));
        Graph { adj, m: twice / 2 }
    }

    pub fn complete(n: usize) -> Self {
        let adj = (0..n)
            .map(|u| (0..n).filter(|&v| v != u).collect())
            .collect();
        Graph::from_sorted_adjacency(adj)
    }

    pub fn path(n: usize) -> Self {
        Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).expect("path edges are simple")
    }

    pub fn cycle(n: usize) -> Self {
        assert!(n >= 3, "a simple cycle needs at least 3 vertices");
        Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).expect("cycle edges are simple")
    }

    /// `K_{1,leaves}` with the centre at vertex 0.
    pub fn star(leaves: usize) -> Self {
        Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).expect("star edges are simple")
    }

    pub fn petersen() -> Self {
        let outer = (0..5).map(|i| (i, (i + 1) % 5));
        let spokes = (0..5).map(|i| (i, i + 5));
        let inner = (0..5).map(|i| (5 + i, 5 + (i + 2) % 5));
        Graph::from_edges(10, outer.chain(spokes).chain(inner)).expect("petersen edges are simple")
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, l)| l.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Maximum degree; 0 for edgeless (and empty) graphs.
    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    /// A copy of this graph with the extra edge `{u, v}`.
    pub fn with_edge(&self, u: Vertex, v: Vertex) -> Result<Self, GraphError> {
        Graph::from_edges(self.n(), self.edges().chain(std::iter::once((u, v))))
    }

    /// A copy of this graph without the edge `{u, v}` (no-op when absent).
    pub fn without_edge(&self, u: Vertex, v: Vertex) -> Self {
        let (a, b) = (u.min(v), u.max(v));
        let mut adj = self.adj.clone();
        if self.has_edge(a, b) {
            adj[a].retain(|&x| x != b);
            adj[b].retain(|&x| x != a);
        }
        Graph::from_sorted_adjacency(adj)
    }

    /// Vertices reachable from `source` within `radius` steps, paired with
    /// their distance. `source` itself is excluded.
    pub fn ball(&self, source: Vertex, radius: usize) -> Vec<(Vertex, usize)> {
        let mut scratch = BfsScratch::new(self.n());
        let mut out = Vec::new();
        scratch.run(self, &[source], radius, |v, d| {
            if d > 0 {
                out.push((v, d));
            }
        });
        out
    }

    /// Whether every pair of vertices is at distance at most `bound`
    /// (connected with diameter `<= bound`).
    pub fn diameter_at_most(&self, bound: usize) -> bool {
        let n = self.n();
        if n <= 1 {
            return true;
        }
        par::all_indices(n, |u| self.ball(u, bound).len() == n - 1)
    }
}

/// Reusable BFS state. Clearing only touches the vertices reached by the
/// previous run, so repeated shallow searches on a large graph stay cheap.
pub(crate) struct BfsScratch {
    dist: Vec<usize>,
    touched: Vec<Vertex>,
    queue: VecDeque<Vertex>,
}

impl BfsScratch {
    pub(crate) fn new(n: usize) -> Self {
        BfsScratch {
            dist: vec![usize::MAX; n],
            touched: Vec::new(),
            queue: VecDeque::new(),
        }
    }

    /// Multi-source BFS up to depth `radius`; `visit(v, d)` is called once per
    /// reached vertex in BFS order, sources included at depth 0.
    pub(crate) fn run<F: FnMut(Vertex, usize)>(
        &mut self,
        g: &Graph,
        sources: &[Vertex],
        radius: usize,
        mut visit: F,
    ) {
        for &v in &self.touched {
            self.dist[v] = usize::MAX;
        }
        self.touched.clear();
        self.queue.clear();
        for &s in sources {
            if self.dist[s] == usize::MAX {
                self.dist[s] = 0;
                self.touched.push(s);
                self.queue.push_back(s);
            }
        }
        while let Some(u) = self.queue.pop_front() {
            let d = self.dist[u];
            visit(u, d);
            if d == radius {
                continue;
            }
            for &w in g.neighbors(u) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = d + 1;
                    self.touched.push(w);
                    self.queue.push_back(w);
                }
            }
        }
    }
}

/// A multigraph on `0..n`; loops and parallel edges allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiGraph {
    n: usize,
    edges: Vec<(Vertex, Vertex)>,
}

impl MultiGraph {
    pub fn new(n: usize, edges: Vec<(Vertex, Vertex)>) -> Result<Self, GraphError> {
        for &(u, v) in &edges {
            for x in [u, v] {
                if x >= n {
                    return Err(GraphError::OutOfRange { vertex: x, n });
                }
            }
        }
        Ok(MultiGraph { n, edges })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(Vertex, Vertex)] {
        &self.edges
    }

    /// Degrees with loops counted twice.
    pub fn degrees(&self) -> Vec<usize> {
        let mut deg = vec![0; self.n];
        for &(u, v) in &self.edges {
            deg[u] += 1;
            deg[v] += 1;
        }
        deg
    }

    pub fn loop_count(&self) -> usize {
        self.edges.iter().filter(|(u, v)| u == v).count()
    }

    pub fn is_simple(&self) -> bool {
        if self.loop_count() > 0 {
            return false;
        }
        let mut seen: Vec<_> = self.edges.iter().map(|&(u, v)| (u.min(v), u.max(v))).collect();
        seen.sort_unstable();
        seen.windows(2).all(|w| w[0] != w[1])
    }

    /// Converts to a [`Graph`], failing on the first loop or parallel edge.
    pub fn to_simple(&self) -> Result<Graph, GraphError> {
        Graph::from_edges(self.n, self.edges.iter().copied())
    }

    /// Drops loops and collapses parallel edges.
    pub fn erase_to_simple(&self) -> Graph {
        let mut e: Vec<_> = self
            .edges
            .iter()
            .filter(|(u, v)| u != v)
            .map(|&(u, v)| (u.min(v), u.max(v)))
            .collect();
        e.sort_unstable();
        e.dedup();
        Graph::from_edges(self.n, e).expect("erased multigraph is simple")
    }
}

/// Exact distances for every unordered pair at distance `1..=radius`.
///
/// Stored per vertex as the sorted list of `(w, d)` with `w > v`, so pairs
/// enumerate in lexicographic order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DistanceOracle {
    radius: usize,
    upper: Vec<Vec<(Vertex, usize)>>,
}

impl DistanceOracle {
    pub fn radius(&self) -> usize {
        self.radius
    }

    /// `Some(d)` when `1 <= d(u, v) <= radius`.
    pub fn distance(&self, u: Vertex, v: Vertex) -> Option<usize> {
        let (a, b) = (u.min(v), u.max(v));
        let row = &self.upper[a];
        row.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| row[i].1)
    }

    /// Pairs `(u, v, d)` with `u < v` in lexicographic order.
    pub fn pairs(&self) -> impl Iterator<Item = (Vertex, Vertex, usize)> + '_ {
        self.upper
            .iter()
            .enumerate()
            .flat_map(|(u, row)| row.iter().map(move |&(v, d)| (u, v, d)))
    }

    /// The `(v, d)` entries with `v > u`.
    pub fn row(&self, u: Vertex) -> &[(Vertex, usize)] {
        &self.upper[u]
    }

    pub fn len(&self) -> usize {
        self.upper.iter().map(Vec::len).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Per-vertex BFS cut off at depth `radius`.
pub fn truncated_distances(g: &Graph, radius: usize) -> DistanceOracle {
    assert!(radius >= 1, "radius must be at least 1");
    let upper = par::map_indices(g.n(), |u| {
        let mut row: Vec<_> = g.ball(u, radius).into_iter().filter(|&(v, _)| v > u).collect();
        row.sort_unstable();
        row
    });
    DistanceOracle { radius, upper }
}

/// `G^i`: same vertices, an edge between every pair at distance `1..=i`.
pub fn power_graph(g: &Graph, i: usize) -> Graph {
    assert!(i >= 1, "power must be at least 1");
    if i == 1 {
        return g.clone();
    }
    let adj = par::map_indices(g.n(), |u| {
        let mut row: Vec<_> = g.ball(u, i).into_iter().map(|(v, _)| v).collect();
        row.sort_unstable();
        row
    });
    Graph::from_sorted_adjacency(adj)
}

/// `N^1(Z), ..., N^k(Z)`: the vertices outside `z` at distance exactly
/// `1..=k` from `z`, each sorted.
pub fn shells(g: &Graph, z: &[Vertex], k: usize) -> Vec<Vec<Vertex>> {
    let mut out = vec![Vec::new(); k];
    if k == 0 {
        return out;
    }
    let mut scratch = BfsScratch::new(g.n());
    scratch.run(g, z, k, |v, d| {
        if d > 0 {
            out[d - 1].push(v);
        }
    });
    for s in &mut out {
        s.sort_unstable();
    }
    out
}

/// `N^i(Z)`: vertices outside `z` whose distance to `z` is exactly `i`.
pub fn neighborhood_shell(g: &Graph, z: &[Vertex], i: usize) -> Vec<Vertex> {
    assert!(i >= 1, "shell index must be at least 1");
    shells(g, z, i).pop().unwrap_or_default()
}

/// Connected components, each sorted, ordered by smallest vertex.
pub fn components(g: &Graph) -> Vec<Vec<Vertex>> {
    let n = g.n();
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    let mut stack = Vec::new();
    for s in 0..n {
        if seen[s] {
            continue;
        }
        seen[s] = true;
        stack.push(s);
        let mut comp = Vec::new();
        while let Some(u) = stack.pop() {
            comp.push(u);
            for &w in g.neighbors(u) {
                if !seen[w] {
                    seen[w] = true;
                    stack.push(w);
                }
            }
        }
        comp.sort_unstable();
        out.push(comp);
    }
    out
}

pub fn is_forest(g: &Graph) -> bool {
    g.m() + components(g).len() == g.n()
}

/// Some cycle of `g` as a closed vertex walk without the repeated endpoint,
/// or `None` for forests.
pub fn find_cycle(g: &Graph) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut parent = vec![usize::MAX; n];
    let mut depth = vec![usize::MAX; n];
    for root in 0..n {
        if depth[root] != usize::MAX {
            continue;
        }
        depth[root] = 0;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in g.neighbors(u) {
                if depth[w] == usize::MAX {
                    depth[w] = depth[u] + 1;
                    parent[w] = u;
                    queue.push_back(w);
                } else if w != parent[u] {
                    // Non-tree edge: close the cycle through the lowest common ancestor.
                    let (mut a, mut b) = (u, w);
                    let (mut left, mut right) = (vec![a], vec![b]);
                    while depth[a] > depth[b] {
                        a = parent[a];
                        left.push(a);
                    }
                    while depth[b] > depth[a] {
                        b = parent[b];
                        right.push(b);
                    }
                    while a != b {
                        a = parent[a];
                        b = parent[b];
                        left.push(a);
                        right.push(b);
                    }
                    right.pop();
                    right.reverse();
                    left.extend(right);
                    return Some(left);
                }
            }
        }
    }
    None
}

/// An induced subgraph with the map back to the parent graph's ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InducedSubgraph {
    pub graph: Graph,
    /// `original[local]` is the parent id of local vertex `local`; sorted.
    pub original: Vec<Vertex>,
}

impl InducedSubgraph {
    /// Local id of a parent vertex, if it belongs to the subgraph.
    pub fn local(&self, parent: Vertex) -> Option<Vertex> {
        self.original.binary_search(&parent).ok()
    }
}

pub fn induced_subgraph(g: &Graph, s: &[Vertex]) -> InducedSubgraph {
    let mut original = s.to_vec();
    original.sort_unstable();
    original.dedup();
    let mut local = vec![usize::MAX; g.n()];
    for (i, &v) in original.iter().enumerate() {
        local[v] = i;
    }
    let adj = original
        .iter()
        .map(|&v| {
            // Parent lists are sorted and the relabelling is monotone, so
            // the local lists come out sorted too.
            g.neighbors(v)
                .iter()
                .filter_map(|&w| (local[w] != usize::MAX).then_some(local[w]))
                .collect()
        })
        .collect();
    InducedSubgraph {
        graph: Graph::from_sorted_adjacency(adj),
        original,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn max_degree_examples() {
        assert_eq!(Graph::empty(5).max_degree(), 0);
        assert_eq!(Graph::star(4).max_degree(), 4);
        assert_eq!(Graph::path(4).max_degree(), 2);
    }

    #[test]
    fn constructor_rejects_bad_edges() {
        assert_eq!(Graph::from_edges(3, [(1, 1)]), Err(GraphError::SelfLoop(1)));
        assert_eq!(
            Graph::from_edges(3, [(0, 1), (1, 0)]),
            Err(GraphError::DuplicateEdge(0, 1))
        );
        assert_eq!(
            Graph::from_edges(3, [(0, 3)]),
            Err(GraphError::OutOfRange { vertex: 3, n: 3 })
        );
    }

    #[test]
    fn truncated_distance_examples() {
        let p3 = Graph::path(3);
        let d = truncated_distances(&p3, 2);
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![(0, 1, 1), (0, 2, 2), (1, 2, 1)]);

        let k2 = Graph::path(2);
        let d = truncated_distances(&k2, 3);
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![(0, 1, 1)]);

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        let d = truncated_distances(&two, 5);
        assert_eq!(d.pairs().collect::<Vec<_>>(), vec![(0, 1, 1), (2, 3, 1)]);
        assert_eq!(d.distance(1, 2), None);
        assert_eq!(d.distance(1, 0), Some(1));
    }

    #[test]
    fn power_graph_examples() {
        assert_eq!(power_graph(&Graph::path(3), 2), Graph::complete(3));
        let c6 = Graph::cycle(6);
        assert_eq!(power_graph(&c6, 1), c6);
        let sq = power_graph(&c6, 2);
        assert!((0..6).all(|v| sq.degree(v) == 4));
        assert_eq!(sq.m(), 12);
        assert!(!sq.has_edge(0, 3));
    }

    #[test]
    fn shell_examples() {
        assert_eq!(neighborhood_shell(&Graph::path(5), &[0], 2), vec![2]);
        let c5 = Graph::cycle(5);
        assert!(neighborhood_shell(&c5, &[0, 1, 2, 3, 4], 1).is_empty());
        assert_eq!(neighborhood_shell(&Graph::star(4), &[0], 1), vec![1, 2, 3, 4]);
    }

    #[test]
    fn forest_and_component_examples() {
        assert!(is_forest(&Graph::path(10)));
        assert!(!is_forest(&Graph::cycle(3)));
        let two_trees = Graph::from_edges(7, [(0, 1), (1, 2), (3, 4), (3, 5), (3, 6)]).unwrap();
        assert!(is_forest(&two_trees));

        let two = Graph::from_edges(4, [(0, 1), (2, 3)]).unwrap();
        assert_eq!(components(&two), vec![vec![0, 1], vec![2, 3]]);
        assert_eq!(components(&Graph::cycle(5)), vec![vec![0, 1, 2, 3, 4]]);
        assert_eq!(components(&Graph::empty(3)), vec![vec![0], vec![1], vec![2]]);
    }

    #[test]
    fn cycles_are_found() {
        assert_eq!(find_cycle(&Graph::path(6)), None);
        let g = Graph::from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 1), (4, 5)]).unwrap();
        let mut c = find_cycle(&g).unwrap();
        for i in 0..c.len() {
            assert!(g.has_edge(c[i], c[(i + 1) % c.len()]));
        }
        c.sort_unstable();
        assert_eq!(c, vec![1, 2, 3, 4]);
    }

    #[test]
    fn induced_subgraph_examples() {
        let k3 = Graph::complete(3);
        let sub = induced_subgraph(&k3, &[0, 2]);
        assert_eq!(sub.graph, Graph::complete(2));
        assert_eq!(sub.original, vec![0, 2]);
        assert_eq!(sub.local(2), Some(1));
        assert_eq!(sub.local(1), None);

        assert_eq!(induced_subgraph(&k3, &[]).graph.n(), 0);
        let ends = induced_subgraph(&Graph::path(4), &[0, 3]);
        assert_eq!(ends.graph, Graph::empty(2));
    }

    #[test]
    fn multigraph_degrees_count_loops_twice() {
        let mg = MultiGraph::new(3, vec![(0, 0), (0, 1), (0, 1)]).unwrap();
        assert_eq!(mg.degrees(), vec![4, 2, 0]);
        assert!(!mg.is_simple());
        assert!(mg.to_simple().is_err());
        assert_eq!(mg.erase_to_simple(), Graph::path(2).clone_with_n(3));
    }

    impl Graph {
        fn clone_with_n(&self, n: usize) -> Graph {
            Graph::from_edges(n, self.edges()).unwrap()
        }
    }

    #[test]
    fn diameter_check() {
        assert!(Graph::complete(4).diameter_at_most(1));
        assert!(Graph::star(5).diameter_at_most(2));
        assert!(!Graph::path(4).diameter_at_most(2));
        assert!(!Graph::empty(2).diameter_at_most(5));
    }
}
