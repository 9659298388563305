//! Labels, t-tone colourings and their verifier, partitions and the
//! "respects" relation, and the closed-form bounds used throughout.
//!
//! A t-tone k-colouring gives every vertex a t-subset of `{1, ..., k}` such
//! that any two distinct vertices `u`, `v` share fewer than `d(u, v)` colours.
//! Since two t-sets share at most `t` colours, only pairs at distance `<= t`
//! can ever conflict, so the verifier only looks that far.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, Vertex};
use crate::par;

/// A colour id; palettes are `1..=k`.
pub type Color = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ToneError {
    #[error("label must hold exactly {expected} distinct colours, got {got:?}")]
    WrongLabelSize { expected: usize, got: Vec<Color> },
    #[error("label {0:?} repeats a colour or uses colour 0")]
    MalformedLabel(Vec<Color>),
    #[error("vertex {vertex} uses colour {color} outside the palette 1..={k}")]
    PaletteMismatch { vertex: Vertex, color: Color, k: Color },
    #[error("vertex {0} has no label")]
    PartialColoring(Vertex),
    #[error("colouring covers {coloring} vertices but the graph has {graph}")]
    VertexCountMismatch { coloring: usize, graph: usize },
    #[error("kappa is only defined for maximum degree >= 1, got {0}")]
    KappaDomain(u64),
    #[error("partitions are over different ground sets")]
    GroundSetMismatch,
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("precondition violated: {0}")]
    PreconditionViolated(Precondition),
}

/// Why a list of partitions could not be assembled into a colouring.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Precondition {
    NoPartitions,
    NotCovering { partition: usize },
    DependentPart { partition: usize, part: usize, u: Vertex, v: Vertex },
    NotRespecting { a: usize, part_a: usize, b: usize, part_b: usize },
}

impl fmt::Display for Precondition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Precondition::NoPartitions => write!(f, "no partitions given"),
            Precondition::NotCovering { partition } => {
                write!(f, "partition {partition} does not cover the vertex set")
            }
            Precondition::DependentPart { partition, part, u, v } => {
                write!(f, "part {part} of partition {partition} contains the edge {u}-{v}")
            }
            Precondition::NotRespecting { a, part_a, b, part_b } => write!(
                f,
                "part {part_a} of partition {a} meets part {part_b} of partition {b} in two or more vertices"
            ),
        }
    }
}

/// A sorted set of distinct, 1-based colours.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label(Vec<Color>);

impl Label {
    /// Sorts `colors`; rejects repeats and colour 0.
    pub fn new(mut colors: Vec<Color>) -> Result<Self, ToneError> {
        colors.sort_unstable();
        if colors.first() == Some(&0) || colors.windows(2).any(|w| w[0] == w[1]) {
            return Err(ToneError::MalformedLabel(colors));
        }
        Ok(Label(colors))
    }

    /// `{first, first + 1, ..., first + t - 1}`.
    pub fn range(first: Color, t: usize) -> Self {
        assert!(first >= 1);
        Label((first..first + t as Color).collect())
    }

    pub fn colors(&self) -> &[Color] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn max_color(&self) -> Color {
        self.0.last().copied().unwrap_or(0)
    }

    pub fn contains(&self, c: Color) -> bool {
        self.0.binary_search(&c).is_ok()
    }

    /// `|self ∩ other|` by merging the sorted lists.
    pub fn overlap(&self, other: &Label) -> usize {
        let (a, b) = (&self.0, &other.0);
        let (mut i, mut j, mut n) = (0, 0, 0);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => i += 1,
                std::cmp::Ordering::Greater => j += 1,
                std::cmp::Ordering::Equal => {
                    n += 1;
                    i += 1;
                    j += 1;
                }
            }
        }
        n
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut first = true;
        for c in &self.0 {
            if !first {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
            first = false;
        }
        Ok(())
    }
}

/// Walks the t-subsets of `{1, ..., k}` in lexicographic order.
pub struct LabelsLex {
    current: Vec<Color>,
    k: Color,
    done: bool,
}

pub fn labels_lex(k: Color, t: usize) -> LabelsLex {
    LabelsLex {
        current: (1..=t as Color).collect(),
        k,
        done: t as Color > k || t == 0,
    }
}

impl LabelsLex {
    /// The current subset without allocating; pair with [`LabelsLex::advance`].
    pub fn peek(&self) -> Option<&[Color]> {
        (!self.done).then_some(&self.current[..])
    }

    pub fn advance(&mut self) {
        let t = self.current.len();
        let mut i = t;
        while i > 0 {
            i -= 1;
            if self.current[i] < self.k - (t - 1 - i) as Color {
                self.current[i] += 1;
                for j in i + 1..t {
                    self.current[j] = self.current[j - 1] + 1;
                }
                return;
            }
        }
        self.done = true;
    }
}

impl Iterator for LabelsLex {
    type Item = Label;

    fn next(&mut self) -> Option<Label> {
        let out = Label(self.peek()?.to_vec());
        self.advance();
        Some(out)
    }
}

/// `|a ∩ b|` for sorted colour slices.
pub(crate) fn overlap_sorted(a: &[Color], b: &[Color]) -> usize {
    let (mut i, mut j, mut n) = (0, 0, 0);
    while i < a.len() && j < b.len() {
        if a[i] < b[j] {
            i += 1;
        } else if a[i] > b[j] {
            j += 1;
        } else {
            n += 1;
            i += 1;
            j += 1;
        }
    }
    n
}

/// A possibly partial assignment of t-labels from the palette `1..=k`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ToneColoring {
    t: usize,
    k: Color,
    labels: Vec<Option<Label>>,
}

impl ToneColoring {
    /// An all-unlabelled colouring of `n` vertices.
    pub fn new(n: usize, t: usize, k: Color) -> Self {
        assert!(t >= 1, "tone must be at least 1");
        ToneColoring {
            t,
            k,
            labels: vec![None; n],
        }
    }

    pub fn from_labels(t: usize, k: Color, labels: Vec<Label>) -> Result<Self, ToneError> {
        let mut c = ToneColoring::new(labels.len(), t, k);
        for (v, l) in labels.into_iter().enumerate() {
            c.set(v, l)?;
        }
        Ok(c)
    }

    pub fn t(&self) -> usize {
        self.t
    }

    pub fn k(&self) -> Color {
        self.k
    }

    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn get(&self, v: Vertex) -> Option<&Label> {
        self.labels[v].as_ref()
    }

    pub fn labels(&self) -> &[Option<Label>] {
        &self.labels
    }

    pub fn set(&mut self, v: Vertex, label: Label) -> Result<(), ToneError> {
        if label.len() != self.t {
            return Err(ToneError::WrongLabelSize {
                expected: self.t,
                got: label.0,
            });
        }
        if label.max_color() > self.k {
            return Err(ToneError::PaletteMismatch {
                vertex: v,
                color: label.max_color(),
                k: self.k,
            });
        }
        self.labels[v] = Some(label);
        Ok(())
    }

    pub fn clear(&mut self, v: Vertex) {
        self.labels[v] = None;
    }

    /// Same labels under a larger (or equal) palette.
    pub fn with_palette(mut self, k: Color) -> Self {
        assert!(k >= self.max_color_used());
        self.k = k;
        self
    }

    pub fn is_total(&self) -> bool {
        self.labels.iter().all(Option::is_some)
    }

    pub fn colored_count(&self) -> usize {
        self.labels.iter().filter(|l| l.is_some()).count()
    }

    pub fn max_color_used(&self) -> Color {
        self.labels.iter().flatten().map(Label::max_color).max().unwrap_or(0)
    }

    /// Number of distinct colours appearing on some label.
    pub fn colors_used(&self) -> usize {
        let mut seen = vec![false; self.k as usize + 1];
        for c in self.labels.iter().flatten().flat_map(|l| l.colors()) {
            seen[*c as usize] = true;
        }
        seen.iter().filter(|&&b| b).count()
    }
}

/// A pair of vertices whose labels share too many colours.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Violation {
    pub u: Vertex,
    pub v: Vertex,
    pub distance: usize,
    pub overlap: usize,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {} {}", self.u, self.v, self.distance, self.overlap)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Verdict {
    Valid,
    Violated(Violation),
}

impl Verdict {
    pub fn is_valid(&self) -> bool {
        matches!(self, Verdict::Valid)
    }
}

fn check_shape(g: &Graph, coloring: &ToneColoring) -> Result<(), ToneError> {
    if coloring.n() != g.n() {
        return Err(ToneError::VertexCountMismatch {
            coloring: coloring.n(),
            graph: g.n(),
        });
    }
    for (v, l) in coloring.labels.iter().enumerate() {
        if let Some(l) = l {
            if l.max_color() > coloring.k {
                return Err(ToneError::PaletteMismatch {
                    vertex: v,
                    color: l.max_color(),
                    k: coloring.k,
                });
            }
        }
    }
    Ok(())
}

/// First violating pair `(u, v)`, `u < v`, in lexicographic order among the
/// labelled vertices.
fn first_violation(g: &Graph, coloring: &ToneColoring) -> Option<Violation> {
    let t = coloring.t;
    par::find_map_first(g.n(), |u| {
        let lu = coloring.labels[u].as_ref()?;
        let mut near: Vec<_> = g
            .ball(u, t)
            .into_iter()
            .filter(|&(v, _)| v > u)
            .collect();
        near.sort_unstable();
        near.into_iter().find_map(|(v, d)| {
            let lv = coloring.labels[v].as_ref()?;
            let overlap = lu.overlap(lv);
            (overlap >= d).then_some(Violation {
                u,
                v,
                distance: d,
                overlap,
            })
        })
    })
}

/// Checks a total colouring against every pair at distance `<= t`.
pub fn verify(g: &Graph, coloring: &ToneColoring) -> Result<Verdict, ToneError> {
    check_shape(g, coloring)?;
    if let Some(v) = coloring.labels.iter().position(Option::is_none) {
        return Err(ToneError::PartialColoring(v));
    }
    Ok(match first_violation(g, coloring) {
        Some(v) => Verdict::Violated(v),
        None => Verdict::Valid,
    })
}

/// Like [`verify`] but only constrains pairs where both vertices are labelled.
pub fn verify_partial(g: &Graph, coloring: &ToneColoring) -> Result<Verdict, ToneError> {
    check_shape(g, coloring)?;
    Ok(match first_violation(g, coloring) {
        Some(v) => Verdict::Violated(v),
        None => Verdict::Valid,
    })
}

/// The least `κ >= 3` with `(κ - 2)(κ - 3) >= 2Δ`, which equals
/// `⌈(√(8Δ + 1) + 5) / 2⌉` without going through floating point: the 2-tone
/// chromatic number of a tree with maximum degree `Δ`.
pub fn kappa(delta: u64) -> Result<u64, ToneError> {
    if delta == 0 {
        return Err(ToneError::KappaDomain(delta));
    }
    let fits = |k: u64| (k - 2).checked_mul(k - 3).is_none_or(|x| x >= 2 * delta);
    let root = (8 * delta + 1).isqrt();
    let mut k = ((root + 5) / 2).max(3);
    while k > 3 && fits(k - 1) {
        k -= 1;
    }
    while !fits(k) {
        k += 1;
    }
    Ok(k)
}

/// `⌈t·n / α⌉`: each vertex is counted `t` times across colour classes and
/// each class is independent.
pub fn tone_lower_bound(n: usize, t: usize, alpha: usize) -> usize {
    assert!(alpha >= 1 && alpha <= n.max(1), "alpha must lie in 1..=n");
    (t * n).div_ceil(alpha)
}

/// The set of vertices carrying `color`.
pub fn color_class(coloring: &ToneColoring, color: Color) -> Vec<Vertex> {
    coloring
        .labels
        .iter()
        .enumerate()
        .filter_map(|(v, l)| l.as_ref().filter(|l| l.contains(color)).map(|_| v))
        .collect()
}

/// A partition of a ground set of vertices into non-empty parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Partition {
    parts: Vec<Vec<Vertex>>,
    part_of: Vec<Option<usize>>,
}

impl Partition {
    /// `universe` bounds the vertex ids; the ground set is the union of parts.
    pub fn new(universe: usize, parts: Vec<Vec<Vertex>>) -> Result<Self, ToneError> {
        let mut part_of = vec![None; universe];
        let mut sorted = Vec::with_capacity(parts.len());
        for (i, mut part) in parts.into_iter().enumerate() {
            if part.is_empty() {
                return Err(ToneError::InvalidPartition(format!("part {i} is empty")));
            }
            part.sort_unstable();
            for &v in &part {
                if v >= universe {
                    return Err(ToneError::InvalidPartition(format!(
                        "vertex {v} outside universe of size {universe}"
                    )));
                }
                if part_of[v].replace(i).is_some() {
                    return Err(ToneError::InvalidPartition(format!(
                        "vertex {v} appears in more than one part"
                    )));
                }
            }
            sorted.push(part);
        }
        Ok(Partition {
            parts: sorted,
            part_of,
        })
    }

    pub fn singletons(n: usize) -> Self {
        Partition::new(n, (0..n).map(|v| vec![v]).collect()).expect("singletons partition")
    }

    /// One part holding all of `0..n` (no parts when `n == 0`).
    pub fn whole(n: usize) -> Self {
        let parts = if n == 0 { vec![] } else { vec![(0..n).collect()] };
        Partition::new(n, parts).expect("whole partition")
    }

    pub fn parts(&self) -> &[Vec<Vertex>] {
        &self.parts
    }

    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    pub fn part_of(&self, v: Vertex) -> Option<usize> {
        self.part_of.get(v).copied().flatten()
    }

    pub fn ground_set(&self) -> Vec<Vertex> {
        (0..self.part_of.len()).filter(|&v| self.part_of[v].is_some()).collect()
    }

    pub fn covers(&self, n: usize) -> bool {
        self.part_of.len() >= n
            && (0..n).all(|v| self.part_of[v].is_some())
            && self.part_of[n..].iter().all(Option::is_none)
    }

    /// Every part is an independent set of `g`.
    pub fn is_independent_in(&self, g: &Graph) -> bool {
        self.dependent_pair(g).is_none()
    }

    fn dependent_pair(&self, g: &Graph) -> Option<(usize, Vertex, Vertex)> {
        self.parts.iter().enumerate().find_map(|(i, part)| {
            part.iter().find_map(|&u| {
                g.neighbors(u)
                    .iter()
                    .find(|&&w| w > u && self.part_of(w) == Some(i))
                    .map(|&w| (i, u, w))
            })
        })
    }
}

/// First pair of parts meeting in two or more vertices, if any.
fn respect_conflict(a: &Partition, b: &Partition) -> Option<(usize, usize)> {
    let mut seen = vec![usize::MAX; b.parts.len()];
    for (i, part) in a.parts.iter().enumerate() {
        for &v in part {
            let j = b.part_of(v)?;
            if seen[j] == i {
                return Some((i, j));
            }
            seen[j] = i;
        }
    }
    None
}

/// Every part of `a` meets every part of `b` in at most one vertex.
pub fn respects(a: &Partition, b: &Partition) -> Result<bool, ToneError> {
    if a.ground_set() != b.ground_set() {
        return Err(ToneError::GroundSetMismatch);
    }
    Ok(respect_conflict(a, b).is_none())
}

/// `s` meets every part of `p` in at most one vertex. Vertices of `s` outside
/// the ground set of `p` are unconstrained.
pub fn set_respects(s: &[Vertex], p: &Partition) -> bool {
    let mut seen = vec![false; p.parts.len()];
    s.iter().all(|&v| match p.part_of(v) {
        Some(j) => !std::mem::replace(&mut seen[j], true),
        None => true,
    })
}

/// Gives each vertex one colour per partition: partition `i` owns a
/// contiguous block of colours, and part `j` of it is colour
/// `offset_i + j + 1`. Any two vertices then share at most one colour, and
/// sharing one implies non-adjacency, which is a valid t-tone colouring on
/// graphs of diameter at most 2.
pub fn partitions_to_coloring(partitions: &[Partition], g: &Graph) -> Result<ToneColoring, ToneError> {
    let fail = |p| Err(ToneError::PreconditionViolated(p));
    if partitions.is_empty() {
        return fail(Precondition::NoPartitions);
    }
    for (i, p) in partitions.iter().enumerate() {
        if !p.covers(g.n()) {
            return fail(Precondition::NotCovering { partition: i });
        }
        if let Some((part, u, v)) = p.dependent_pair(g) {
            return fail(Precondition::DependentPart { partition: i, part, u, v });
        }
    }
    for a in 0..partitions.len() {
        for b in a + 1..partitions.len() {
            if let Some((part_a, part_b)) = respect_conflict(&partitions[a], &partitions[b]) {
                return fail(Precondition::NotRespecting { a, part_a, b, part_b });
            }
        }
    }
    let t = partitions.len();
    let k: usize = partitions.iter().map(Partition::len).sum();
    let mut coloring = ToneColoring::new(g.n(), t, k as Color);
    for v in 0..g.n() {
        let mut offset = 0;
        let mut colors = Vec::with_capacity(t);
        for p in partitions {
            colors.push((offset + p.part_of(v).expect("covering checked") + 1) as Color);
            offset += p.len();
        }
        coloring.set(v, Label(colors))?;
    }
    Ok(coloring)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lab(c: &[Color]) -> Label {
        Label::new(c.to_vec()).unwrap()
    }

    fn coloring(t: usize, k: Color, ls: &[&[Color]]) -> ToneColoring {
        ToneColoring::from_labels(t, k, ls.iter().map(|l| lab(l)).collect()).unwrap()
    }

    #[test]
    fn verify_examples() {
        let k2 = Graph::path(2);
        let c = coloring(2, 4, &[&[1, 2], &[3, 4]]);
        assert_eq!(verify(&k2, &c), Ok(Verdict::Valid));

        let p3 = Graph::path(3);
        let c = coloring(2, 4, &[&[1, 2], &[3, 4], &[1, 2]]);
        assert_eq!(
            verify(&p3, &c),
            Ok(Verdict::Violated(Violation {
                u: 0,
                v: 2,
                distance: 2,
                overlap: 2
            }))
        );

        let c5 = Graph::cycle(5);
        let c = coloring(2, 5, &[&[1, 2], &[3, 4], &[5, 1], &[2, 3], &[4, 5]]);
        assert_eq!(verify(&c5, &c), Ok(Verdict::Valid));
    }

    #[test]
    fn verify_errors() {
        let p3 = Graph::path(3);
        let mut c = ToneColoring::new(3, 2, 5);
        c.set(0, lab(&[1, 2])).unwrap();
        assert_eq!(verify(&p3, &c), Err(ToneError::PartialColoring(1)));
        assert_eq!(
            c.set(1, lab(&[1, 6])),
            Err(ToneError::PaletteMismatch { vertex: 1, color: 6, k: 5 })
        );
        assert!(matches!(c.set(1, lab(&[1])), Err(ToneError::WrongLabelSize { .. })));
        assert!(Label::new(vec![2, 2]).is_err());
        assert!(Label::new(vec![0, 2]).is_err());
    }

    #[test]
    fn verify_partial_ignores_unlabelled() {
        let p3 = Graph::path(3);
        let mut c = ToneColoring::new(3, 2, 5);
        c.set(0, lab(&[1, 2])).unwrap();
        c.set(2, lab(&[1, 3])).unwrap();
        assert_eq!(verify_partial(&p3, &c), Ok(Verdict::Valid));
        c.set(2, lab(&[1, 2])).unwrap();
        assert!(!verify_partial(&p3, &c).unwrap().is_valid());
    }

    #[test]
    fn kappa_examples() {
        assert_eq!(kappa(1), Ok(4));
        assert_eq!(kappa(2), Ok(5));
        assert_eq!(kappa(3), Ok(5));
        assert_eq!(kappa(6), Ok(6));
        assert_eq!(kappa(12), Ok(8));
        assert_eq!(kappa(0), Err(ToneError::KappaDomain(0)));
    }

    #[test]
    fn lower_bound_examples() {
        assert_eq!(tone_lower_bound(5, 2, 2), 5);
        assert_eq!(tone_lower_bound(7, 1, 7), 1);
        assert_eq!(tone_lower_bound(4, 3, 1), 12);
    }

    #[test]
    fn respects_examples() {
        let single = Partition::singletons(4);
        let halves = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        let cross = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert_eq!(respects(&single, &halves), Ok(true));
        assert_eq!(respects(&halves, &halves), Ok(false));
        assert_eq!(respects(&halves, &cross), Ok(true));
        assert_eq!(respects(&cross, &halves), Ok(true));
        let smaller = Partition::singletons(3);
        assert_eq!(respects(&smaller, &halves), Err(ToneError::GroundSetMismatch));
    }

    #[test]
    fn set_respects_examples() {
        let halves = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(set_respects(&[], &halves));
        assert!(!set_respects(&[0, 1], &halves));
        assert!(set_respects(&[1, 2], &halves));
    }

    #[test]
    fn partition_validation() {
        assert!(Partition::new(3, vec![vec![0, 1], vec![1, 2]]).is_err());
        assert!(Partition::new(3, vec![vec![0], vec![]]).is_err());
        assert!(Partition::new(3, vec![vec![3]]).is_err());
        assert!(Partition::whole(3).covers(3));
        assert!(!Partition::new(3, vec![vec![0, 1]]).unwrap().covers(3));
    }

    #[test]
    fn assembly_examples() {
        let k2 = Graph::path(2);
        let c = partitions_to_coloring(&[Partition::singletons(2), Partition::singletons(2)], &k2).unwrap();
        assert_eq!(c.k(), 4);
        assert_eq!(c.get(0), Some(&lab(&[1, 3])));
        assert_eq!(c.get(1), Some(&lab(&[2, 4])));
        assert!(verify(&k2, &c).unwrap().is_valid());

        let e3 = Graph::empty(3);
        let c = partitions_to_coloring(&[Partition::singletons(3), Partition::singletons(3)], &e3).unwrap();
        assert!(verify(&e3, &c).unwrap().is_valid());

        // C4: even/odd classes twice; the second copy meets the first in pairs.
        let c4 = Graph::cycle(4);
        let parity = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        let diag = Partition::new(4, vec![vec![0, 2], vec![1, 3]]).unwrap();
        assert!(matches!(
            partitions_to_coloring(&[parity.clone(), diag], &c4),
            Err(ToneError::PreconditionViolated(Precondition::NotRespecting { .. }))
        ));

        let bad = Partition::new(4, vec![vec![0, 1], vec![2, 3]]).unwrap();
        assert!(matches!(
            partitions_to_coloring(&[bad], &c4),
            Err(ToneError::PreconditionViolated(Precondition::DependentPart { u: 0, v: 1, .. }))
        ));
        assert!(partitions_to_coloring(&[parity], &c4).is_ok());
    }

    #[test]
    fn color_class_examples() {
        let c = coloring(2, 4, &[&[1, 2], &[3, 4]]);
        assert_eq!(color_class(&c, 3), vec![1]);
        assert_eq!(color_class(&c, 5), Vec::<Vertex>::new());
        let total: usize = (1..=4).map(|col| color_class(&c, col).len()).sum();
        assert_eq!(total, 2 * 2);
    }

    #[test]
    fn labels_lex_enumerates_in_order() {
        let all: Vec<_> = labels_lex(4, 2).map(|l| l.colors().to_vec()).collect();
        assert_eq!(
            all,
            vec![vec![1, 2], vec![1, 3], vec![1, 4], vec![2, 3], vec![2, 4], vec![3, 4]]
        );
        assert_eq!(labels_lex(5, 3).count(), 10);
        assert_eq!(labels_lex(2, 3).count(), 0);
    }
}
