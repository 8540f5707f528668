//! Core bipartite-graph and decomposition types, the dominance order on
//! degree vectors, and the decomposition verifier.
//!
//! Vertex indices are 1-based at every public interface: `X`-vertices are
//! `x_1..x_k`, `Y`-vertices are `y_1..y_m`.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};

/// Which side of the bipartition.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    X,
    Y,
}

/// Degree vectors are plain nonnegative integer vectors. Comparisons sort
/// copies; stored vectors keep their natural order.
pub type DegreeVector = Vec<usize>;

/// A simple bipartite graph with distinguished stable sets `X` (star
/// centers) and `Y` (leaves).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BipartiteGraph {
    k: usize,
    m: usize,
    edges: BTreeSet<(usize, usize)>,
}

impl BipartiteGraph {
    /// Build a graph from `(x, y)` pairs. Rejects out-of-range indices and
    /// duplicate edges.
    pub fn new(k: usize, m: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut set = BTreeSet::new();
        for (x, y) in edges {
            if x == 0 || x > k || y == 0 || y > m {
                return Err(Error::InvalidGraph(format!(
                    "edge ({x}, {y}) out of range for k={k}, m={m}"
                )));
            }
            if !set.insert((x, y)) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({x}, {y})")));
            }
        }
        Ok(Self { k, m, edges: set })
    }

    pub fn x_count(&self) -> usize {
        self.k
    }

    pub fn y_count(&self) -> usize {
        self.m
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges in ascending `(x, y)` order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    pub fn x_degree(&self, x: usize) -> usize {
        self.edges.range((x, 0)..=(x, usize::MAX)).count()
    }

    /// Neighbors of `x_x`, ascending.
    pub fn neighbors_of_x(&self, x: usize) -> Vec<usize> {
        self.edges
            .range((x, 0)..=(x, usize::MAX))
            .map(|&(_, y)| y)
            .collect()
    }

    /// The degree multiset of the chosen side, sorted nondecreasing.
    pub fn degree_sequence(&self, side: Side) -> DegreeVector {
        let count = match side {
            Side::X => self.k,
            Side::Y => self.m,
        };
        let mut degs = vec![0usize; count];
        for &(x, y) in &self.edges {
            match side {
                Side::X => degs[x - 1] += 1,
                Side::Y => degs[y - 1] += 1,
            }
        }
        degs.sort_unstable();
        degs
    }

    /// Per-vertex X degrees in index order (unsorted).
    pub fn x_degrees(&self) -> DegreeVector {
        let mut degs = vec![0usize; self.k];
        for &(x, _) in &self.edges {
            degs[x - 1] += 1;
        }
        degs
    }
}

/// `c ⪯ c2`: after sorting both vectors nondecreasingly, every component of
/// `c` is at most the matching component of `c2`. Characterizes when one
/// star forest embeds into another.
///
/// Panics when the lengths differ.
pub fn dominance_leq(c: &[usize], c2: &[usize]) -> bool {
    assert_eq!(c.len(), c2.len(), "dominance comparison needs equal lengths");
    let mut a = c.to_vec();
    let mut b = c2.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    a.iter().zip(&b).all(|(x, y)| x <= y)
}

/// An edge set meant to have every `Y`-vertex in at most one edge, so each
/// component is a star centered in `X`. The shape is a queryable property
/// rather than a construction invariant: certificate loaders may build
/// arbitrary edge sets and let [`verify_asd`] report violations. Empty
/// forests are legal values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StarForest {
    edges: BTreeSet<(usize, usize)>,
}

impl StarForest {
    pub fn new(edges: impl IntoIterator<Item = (usize, usize)>) -> Self {
        Self {
            edges: edges.into_iter().collect(),
        }
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.edges.iter().copied()
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.edges.contains(&(x, y))
    }

    /// True iff every `Y`-vertex has degree at most one.
    pub fn is_star_forest(&self) -> bool {
        let mut seen = BTreeSet::new();
        self.edges.iter().all(|&(_, y)| seen.insert(y))
    }

    /// Degree of each of the `k` centers, in natural center order. Edges
    /// whose center lies outside `1..=k` are ignored here; the verifier's
    /// partition check is what flags them.
    pub fn center_degrees(&self, k: usize) -> DegreeVector {
        let mut degs = vec![0usize; k];
        for &(x, _) in &self.edges {
            if (1..=k).contains(&x) {
                degs[x - 1] += 1;
            }
        }
        degs
    }
}

/// `F` is isomorphic to a subgraph of `F2` iff the center-degree vectors
/// compare in the dominance order. Both forests must live over the same
/// number `k` of centers.
pub fn star_forest_embeds(f: &StarForest, f2: &StarForest, k: usize) -> bool {
    dominance_leq(&f.center_degrees(k), &f2.center_degrees(k))
}

/// The `n` with `n(n+1)/2 = e`, when it exists.
pub fn triangular_order(e: usize) -> Result<usize> {
    let mut n = 0usize;
    let mut total = 0usize;
    while total < e {
        n += 1;
        total += n;
    }
    if total == e && n > 0 {
        Ok(n)
    } else {
        Err(Error::NotTriangular(e))
    }
}

/// An ordered sequence of star forests over one bipartite graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition {
    forests: Vec<StarForest>,
}

impl Decomposition {
    pub fn new(forests: Vec<StarForest>) -> Self {
        Self { forests }
    }

    pub fn forests(&self) -> &[StarForest] {
        &self.forests
    }

    pub fn len(&self) -> usize {
        self.forests.len()
    }

    pub fn is_empty(&self) -> bool {
        self.forests.is_empty()
    }

    pub fn total_edges(&self) -> usize {
        self.forests.iter().map(|f| f.edge_count()).sum()
    }
}

/// One verifier check; `offending` lists 1-based forest indices.
#[derive(Debug, Clone, Serialize)]
pub struct Finding {
    pub pass: bool,
    pub offending: Vec<usize>,
    pub note: String,
}

impl Finding {
    fn pass() -> Self {
        Finding {
            pass: true,
            offending: Vec::new(),
            note: String::new(),
        }
    }

    fn fail(offending: Vec<usize>, note: impl Into<String>) -> Self {
        Finding {
            pass: false,
            offending,
            note: note.into(),
        }
    }
}

/// Result of [`verify_asd`]. `overall` passes iff every finding passes.
#[derive(Debug, Clone, Serialize)]
pub struct VerificationReport {
    pub partition: Finding,
    pub sizes: Finding,
    pub star_shape: Finding,
    pub ascending: Finding,
}

impl VerificationReport {
    pub fn overall(&self) -> bool {
        self.partition.pass && self.sizes.pass && self.star_shape.pass && self.ascending.pass
    }
}

/// Check that `dec` is an ascending star-forest decomposition of `g`:
/// the forests partition `E(g)`, forest `i` has exactly `i` edges with
/// `n` the triangular order of `|E(g)|`, every part is a star forest with
/// centers in `X`, and consecutive parts embed.
///
/// Failures are findings in the report, never errors.
pub fn verify_asd(g: &BipartiteGraph, dec: &Decomposition) -> VerificationReport {
    let k = g.x_count();

    // Partition: every edge of g in exactly one forest, no foreign edges.
    let mut counts: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    let mut bad_forests = BTreeSet::new();
    for (idx, forest) in dec.forests.iter().enumerate() {
        for (x, y) in forest.edges() {
            if !g.has_edge(x, y) {
                bad_forests.insert(idx + 1);
            }
            *counts.entry((x, y)).or_insert(0) += 1;
        }
    }
    for (idx, forest) in dec.forests.iter().enumerate() {
        if forest.edges().any(|e| counts[&e] > 1) {
            bad_forests.insert(idx + 1);
        }
    }
    let missing = g.edge_count().saturating_sub(
        counts
            .iter()
            .filter(|(&(x, y), _)| g.has_edge(x, y))
            .count(),
    );
    let partition = if bad_forests.is_empty() && missing == 0 {
        Finding::pass()
    } else {
        Finding::fail(
            bad_forests.iter().copied().collect(),
            format!("{missing} edges uncovered; offending forests hold foreign or repeated edges"),
        )
    };

    // Sizes: |F_i| = i against the triangular order of the edge count.
    let sizes = match triangular_order(g.edge_count()) {
        Err(_) => Finding::fail(
            Vec::new(),
            format!("edge count {} is not triangular", g.edge_count()),
        ),
        Ok(n) => {
            if dec.len() != n {
                Finding::fail(
                    Vec::new(),
                    format!("expected {n} forests, found {}", dec.len()),
                )
            } else {
                let wrong: Vec<usize> = dec
                    .forests
                    .iter()
                    .enumerate()
                    .filter(|(i, f)| f.edge_count() != i + 1)
                    .map(|(i, _)| i + 1)
                    .collect();
                if wrong.is_empty() {
                    Finding::pass()
                } else {
                    Finding::fail(wrong, "forest sizes must be 1..=n in order")
                }
            }
        }
    };

    // Shape: each part a star forest with centers in X.
    let misshaped: Vec<usize> = dec
        .forests
        .iter()
        .enumerate()
        .filter(|(_, f)| !f.is_star_forest())
        .map(|(i, _)| i + 1)
        .collect();
    let star_shape = if misshaped.is_empty() {
        Finding::pass()
    } else {
        Finding::fail(misshaped, "a leaf repeats inside the forest")
    };

    // Ascending chain: F_i embeds into F_{i+1}.
    let mut breaks = Vec::new();
    for i in 0..dec.len().saturating_sub(1) {
        if !star_forest_embeds(&dec.forests[i], &dec.forests[i + 1], k) {
            breaks.push(i + 1);
        }
    }
    let ascending = if breaks.is_empty() {
        Finding::pass()
    } else {
        Finding::fail(breaks, "forest does not embed into its successor")
    };

    VerificationReport {
        partition,
        sizes,
        star_shape,
        ascending,
    }
}
