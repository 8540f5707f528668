//! The left-justified canonical form of a bipartite graph and the degree
//! conditions that govern star-forest decomposability.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{triangular_order, BipartiteGraph, DegreeVector};

/// A bipartite graph in left-justified form: `X` is ordered by nondecreasing
/// degree and `x_i` is adjacent to exactly `y'_1..y'_{d_i}`, with `|Y'|`
/// equal to the maximum degree. Keeps the permutation back to the original
/// vertex labels so pipeline output can be reported against them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReducedGraph {
    graph: BipartiteGraph,
    orig_of_reduced: Vec<usize>,
}

impl ReducedGraph {
    /// The reduced graph realizing a nondecreasing positive degree sequence.
    pub fn from_degrees(d: &[usize]) -> Result<Self> {
        if d.is_empty() || d.windows(2).any(|w| w[0] > w[1]) || d[0] == 0 {
            return Err(Error::InvalidQuery(format!(
                "degrees must be nondecreasing and positive, got {d:?}"
            )));
        }
        let k = d.len();
        let m = d[k - 1];
        let mut edges = Vec::new();
        for (i, &di) in d.iter().enumerate() {
            for y in 1..=di {
                edges.push((i + 1, y));
            }
        }
        Ok(Self {
            graph: BipartiteGraph::new(k, m, edges)?,
            orig_of_reduced: (1..=k).collect(),
        })
    }

    pub fn graph(&self) -> &BipartiteGraph {
        &self.graph
    }

    /// Original label of reduced vertex `x_r`.
    pub fn original_index(&self, r: usize) -> usize {
        self.orig_of_reduced[r - 1]
    }

    /// X-degree sequence, nondecreasing by construction.
    pub fn degrees(&self) -> DegreeVector {
        self.graph.x_degrees()
    }
}

/// Left-justify `g`: reindex `X` by nondecreasing degree (ties keep the
/// original order), drop zero-degree `X`-vertices, and give `x_i` the
/// neighbors `y'_1..y'_{d_i}`. Preserves the X-degree multiset.
pub fn reduce(g: &BipartiteGraph) -> ReducedGraph {
    let mut order: Vec<usize> = (1..=g.x_count())
        .filter(|&x| g.x_degree(x) > 0)
        .collect();
    order.sort_by_key(|&x| (g.x_degree(x), x));
    let degrees: Vec<usize> = order.iter().map(|&x| g.x_degree(x)).collect();
    let m = degrees.last().copied().unwrap_or(0);
    let mut edges = Vec::new();
    for (i, &di) in degrees.iter().enumerate() {
        for y in 1..=di {
            edges.push((i + 1, y));
        }
    }
    ReducedGraph {
        graph: BipartiteGraph::new(order.len(), m, edges).expect("left-justified edges are valid"),
        orig_of_reduced: order,
    }
}

/// True iff `g` already is its own reduced graph.
pub fn is_reduced(g: &BipartiteGraph) -> bool {
    reduce(g).graph() == g
}

fn check_sum(d: &[usize], n: usize) -> Result<()> {
    let sum: usize = d.iter().sum();
    let expected = n * (n + 1) / 2;
    if sum != expected {
        return Err(Error::SumMismatch { sum, n, expected });
    }
    Ok(())
}

/// The sufficient condition: `d[k-1-i] >= n - i` for `0 <= i < k`, with `d`
/// sorted nondecreasing and summing to `n(n+1)/2`.
pub fn check_sufficient(d: &[usize], n: usize) -> Result<bool> {
    assert!(d.windows(2).all(|w| w[0] <= w[1]), "d must be nondecreasing");
    check_sum(d, n)?;
    let k = d.len();
    let holds = (0..k).all(|i| d[k - 1 - i] >= n.saturating_sub(i));
    if holds {
        // forced: d[0] >= n-k+1 >= 1 together with the sum pins k <= n
        debug_assert!(k <= n);
    }
    Ok(holds)
}

/// The necessary condition: every suffix of `d` must carry at least as much
/// degree as the same number of largest parts, i.e. for `t = 1..=k`
/// `sum of the t largest d_i >= (n) + (n-1) + ... + (n-t+1)`.
pub fn check_necessary(d: &[usize], n: usize) -> Result<bool> {
    assert!(d.windows(2).all(|w| w[0] <= w[1]), "d must be nondecreasing");
    check_sum(d, n)?;
    let k = d.len();
    let mut suffix = 0usize;
    let mut demand = 0usize;
    for i in 0..k {
        suffix += d[k - 1 - i];
        demand += n.saturating_sub(i);
        if suffix < demand {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Classification {
    pub n: usize,
    pub sufficient: bool,
    pub necessary: bool,
}

/// Joint report: triangular order of the degree sum plus both conditions.
/// Sorts a copy of `d`; entries must be positive.
pub fn classify(d: &[usize]) -> Result<Classification> {
    if d.is_empty() || d.contains(&0) {
        return Err(Error::InvalidQuery(format!(
            "degrees must be positive and nonempty, got {d:?}"
        )));
    }
    let mut sorted = d.to_vec();
    sorted.sort_unstable();
    let n = triangular_order(sorted.iter().sum())?;
    let sufficient = check_sufficient(&sorted, n)?;
    let necessary = check_necessary(&sorted, n)?;
    debug_assert!(!sufficient || necessary);
    Ok(Classification {
        n,
        sufficient,
        necessary,
    })
}
