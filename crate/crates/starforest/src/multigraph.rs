//! Bipartite multigraphs realized from integer matrices, their edge
//! instances, and the proper/sequential coloring predicates.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::matrix::AscendingMatrix;

/// One parallel-edge instance between `x_x` and `z_z`; `copy` runs from 1
/// to the multiplicity of the cell. All 1-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct EdgeInstance {
    pub x: usize,
    pub z: usize,
    pub copy: usize,
}

/// A bipartite multigraph on stable sets `X` (size `k`) and `Z` (size `n`)
/// given by a multiplicity per cell. Edge instances are enumerated in
/// ascending `(x, z, copy)` order; colorings index into that enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AuxMultigraph {
    x_count: usize,
    z_count: usize,
    mult: Vec<Vec<usize>>,
    edges: Vec<EdgeInstance>,
}

impl AuxMultigraph {
    pub fn from_multiplicities(k: usize, n: usize, mult: Vec<Vec<usize>>) -> Result<Self> {
        if mult.len() != k || mult.iter().any(|r| r.len() != n) {
            return Err(Error::InvalidQuery(format!(
                "multiplicity table must be {k} x {n}"
            )));
        }
        let mut edges = Vec::new();
        for (i, row) in mult.iter().enumerate() {
            for (j, &count) in row.iter().enumerate() {
                for copy in 1..=count {
                    edges.push(EdgeInstance {
                        x: i + 1,
                        z: j + 1,
                        copy,
                    });
                }
            }
        }
        Ok(Self {
            x_count: k,
            z_count: n,
            mult,
            edges,
        })
    }

    /// The multigraph whose bipartite adjacency matrix is `a`.
    pub fn from_matrix(a: &AscendingMatrix) -> Self {
        Self::from_multiplicities(a.rows(), a.cols(), a.as_rows().to_vec())
            .expect("matrix dimensions are consistent")
    }

    pub fn x_count(&self) -> usize {
        self.x_count
    }

    pub fn z_count(&self) -> usize {
        self.z_count
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[EdgeInstance] {
        &self.edges
    }

    pub fn multiplicity(&self, x: usize, z: usize) -> usize {
        self.mult[x - 1][z - 1]
    }

    pub fn multiplicities(&self) -> &[Vec<usize>] {
        &self.mult
    }

    pub fn x_degrees(&self) -> Vec<usize> {
        self.mult.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn z_degrees(&self) -> Vec<usize> {
        (0..self.z_count)
            .map(|j| self.mult.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// Indices (into [`Self::edges`]) of the parallel instances at a cell,
    /// in ascending copy order.
    pub fn instances_at(&self, x: usize, z: usize) -> std::ops::Range<usize> {
        let lo = self
            .edges
            .partition_point(|e| (e.x, e.z) < (x, z));
        let hi = self.edges.partition_point(|e| (e.x, e.z) <= (x, z));
        lo..hi
    }
}

/// Positive integer colors, one per edge instance of the multigraph the
/// coloring was produced for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EdgeColoring {
    colors: Vec<usize>,
}

impl EdgeColoring {
    pub fn new(colors: Vec<usize>) -> Self {
        Self { colors }
    }

    pub fn colors(&self) -> &[usize] {
        &self.colors
    }

    pub fn color(&self, idx: usize) -> usize {
        self.colors[idx]
    }

    pub fn len(&self) -> usize {
        self.colors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.colors.is_empty()
    }

    pub fn max_color(&self) -> usize {
        self.colors.iter().copied().max().unwrap_or(0)
    }

    /// Proper: no two instances sharing an endpoint carry the same color.
    pub fn is_proper(&self, h: &AuxMultigraph) -> bool {
        if self.colors.len() != h.edge_count() {
            return false;
        }
        let mut at_x = vec![BTreeSet::new(); h.x_count()];
        let mut at_z = vec![BTreeSet::new(); h.z_count()];
        for (idx, e) in h.edges().iter().enumerate() {
            let c = self.colors[idx];
            if c == 0 || !at_x[e.x - 1].insert(c) || !at_z[e.z - 1].insert(c) {
                return false;
            }
        }
        true
    }

    /// Sequential for `d`: proper, and the colors at `x_i` are exactly
    /// `{1..=d_i}`.
    pub fn is_sequential(&self, h: &AuxMultigraph, d: &[usize]) -> bool {
        if d.len() != h.x_count() || !self.is_proper(h) {
            return false;
        }
        let mut at_x = vec![BTreeSet::new(); h.x_count()];
        for (idx, e) in h.edges().iter().enumerate() {
            at_x[e.x - 1].insert(self.colors[idx]);
        }
        at_x
            .iter()
            .zip(d)
            .all(|(set, &di)| set.len() == di && set.iter().all(|&c| c >= 1 && c <= di))
    }
}
