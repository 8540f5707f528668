//! Shared reference instances used across the integration suites.

#![allow(dead_code)]

use starforest::graph::{BipartiteGraph, Decomposition, StarForest};
use starforest::matrix::AscendingMatrix;

/// Four centers over three leaves; admits a star-forest chain of sizes
/// 1, 2, 3 but no chain of single stars.
pub fn star_vs_forest_graph() -> BipartiteGraph {
    BipartiteGraph::new(4, 3, [(1, 1), (2, 2), (3, 1), (3, 2), (3, 3), (4, 3)]).unwrap()
}

pub fn star_vs_forest_decomposition() -> Decomposition {
    Decomposition::new(vec![
        StarForest::new([(1, 1)]),
        StarForest::new([(2, 2), (3, 3)]),
        StarForest::new([(4, 3), (3, 2), (3, 1)]),
    ])
}

/// The running reduction example: X-degrees (1, 2, 2, 5) over six leaves.
pub fn reduction_example_graph() -> BipartiteGraph {
    BipartiteGraph::new(
        4,
        6,
        [
            (1, 1),
            (2, 1),
            (2, 3),
            (3, 3),
            (3, 5),
            (4, 2),
            (4, 3),
            (4, 4),
            (4, 5),
            (4, 6),
        ],
    )
    .unwrap()
}

/// Reduced instance with degrees (1, 2, 3, 3, 6); order 5.
pub fn ascending_demo_graph() -> BipartiteGraph {
    let mut edges = Vec::new();
    for (x, d) in [(1usize, 1usize), (2, 2), (3, 3), (4, 3), (5, 6)] {
        for y in 1..=d {
            edges.push((x, y));
        }
    }
    BipartiteGraph::new(5, 6, edges).unwrap()
}

/// The known valid matrix for degrees (1, 2, 3, 3, 6) and column sums 1..=5.
pub fn ascending_demo_matrix() -> AscendingMatrix {
    AscendingMatrix::from_rows(vec![
        vec![0, 0, 0, 0, 1],
        vec![0, 0, 1, 1, 0],
        vec![0, 1, 0, 1, 1],
        vec![1, 0, 1, 0, 1],
        vec![0, 1, 1, 2, 2],
    ])
    .unwrap()
}

/// The known decomposition matching [`ascending_demo_matrix`] columnwise.
pub fn ascending_demo_decomposition() -> Decomposition {
    Decomposition::new(vec![
        StarForest::new([(4, 1)]),
        StarForest::new([(5, 1), (3, 2)]),
        StarForest::new([(5, 2), (4, 3), (2, 1)]),
        StarForest::new([(5, 4), (5, 3), (3, 1), (2, 2)]),
        StarForest::new([(5, 5), (5, 6), (4, 2), (3, 3), (1, 1)]),
    ])
}

/// The 4x7 staircase reference: degrees (4, 6, 9, 9), order 7.
pub fn staircase_demo_degrees() -> Vec<usize> {
    vec![4, 6, 9, 9]
}

pub fn staircase_demo_t() -> Vec<Vec<usize>> {
    vec![
        vec![0, 0, 0, 1, 1, 1, 1],
        vec![0, 0, 1, 1, 1, 1, 1],
        vec![0, 1, 1, 1, 1, 1, 1],
        vec![1, 1, 1, 1, 1, 1, 1],
    ]
}
