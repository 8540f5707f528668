//! List edge coloring driven by a sequential coloring, and the extension of
//! a reduced-graph decomposition to the original graph.
//!
//! The sequential coloring orients conflicts between incident edges: at a
//! shared X-vertex an edge defers to larger colors, at a shared Z-vertex to
//! smaller ones. Kernels of that orientation are stable matchings and are
//! computed by deferred acceptance; coloring symbol by symbol with kernels
//! uses every list completely, because an edge that misses a symbol loses
//! one of its out-neighbors instead.

use std::collections::{BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::{BipartiteGraph, Decomposition, StarForest};
use crate::multigraph::{AuxMultigraph, EdgeColoring};
use crate::reduction::reduce;

/// Conflict orientation derived from a sequential coloring of a multigraph.
#[derive(Debug, Clone)]
pub struct PreferenceSystem {
    colors: Vec<usize>,
}

impl PreferenceSystem {
    pub fn color(&self, idx: usize) -> usize {
        self.colors[idx]
    }

    /// Number of instances the given instance points to: edges with a larger
    /// color at its X-vertex plus edges with a smaller color at its
    /// Z-vertex. Always at most `d(x) - 1`.
    pub fn out_degree(&self, h: &AuxMultigraph, idx: usize) -> usize {
        let e = h.edges()[idx];
        let c = self.colors[idx];
        h.edges()
            .iter()
            .enumerate()
            .filter(|&(other, f)| {
                other != idx
                    && ((f.x == e.x && self.colors[other] > c)
                        || (f.z == e.z && self.colors[other] < c))
            })
            .count()
    }
}

/// Wrap a verified sequential coloring as a preference system.
pub fn build_preferences(h: &AuxMultigraph, seq: &EdgeColoring) -> Result<PreferenceSystem> {
    let d = h.x_degrees();
    if !seq.is_sequential(h, &d) {
        return Err(Error::NotSequential);
    }
    Ok(PreferenceSystem {
        colors: seq.colors().to_vec(),
    })
}

/// A stable matching inside `subset` (instance indices into `h`): X-vertices
/// propose their edges in decreasing color order, Z-vertices keep the
/// incumbent of smallest color. The result is a matching `K` such that every
/// dropped edge shares an X-vertex with a larger-colored member of `K` or a
/// Z-vertex with a smaller-colored member.
pub fn stable_kernel(
    h: &AuxMultigraph,
    subset: &[usize],
    prefs: &PreferenceSystem,
) -> Vec<usize> {
    let mut per_x: Vec<Vec<usize>> = vec![Vec::new(); h.x_count() + 1];
    for &idx in subset {
        per_x[h.edges()[idx].x].push(idx);
    }
    for list in &mut per_x {
        list.sort_by_key(|&idx| std::cmp::Reverse(prefs.color(idx)));
    }
    let mut cursor = vec![0usize; h.x_count() + 1];
    let mut incumbent: Vec<Option<usize>> = vec![None; h.z_count() + 1];
    let mut queue: VecDeque<usize> = (1..=h.x_count()).filter(|&x| !per_x[x].is_empty()).collect();

    while let Some(x) = queue.pop_front() {
        while cursor[x] < per_x[x].len() {
            let idx = per_x[x][cursor[x]];
            cursor[x] += 1;
            let z = h.edges()[idx].z;
            match incumbent[z] {
                None => {
                    incumbent[z] = Some(idx);
                    break;
                }
                Some(held) if prefs.color(idx) < prefs.color(held) => {
                    incumbent[z] = Some(idx);
                    queue.push_back(h.edges()[held].x);
                    break;
                }
                Some(_) => {}
            }
        }
    }

    let mut kernel: Vec<usize> = incumbent.into_iter().flatten().collect();
    kernel.sort_unstable();
    kernel
}

/// One symbol set per X-vertex; every edge at that vertex may take any
/// symbol of the set.
pub type ColorLists = Vec<BTreeSet<usize>>;

/// Properly color the edges of `h` so each edge at `x` gets a symbol of
/// `lists[x-1]`, where `|lists[x-1]| = d(x)`. Symbols are processed in
/// ascending order; each round assigns the current symbol to a kernel of
/// the eligible uncolored edges. Completes on every input with a verified
/// sequential coloring; an `Incomplete` return would be a reportable
/// counterexample.
pub fn list_edge_color(
    h: &AuxMultigraph,
    seq: &EdgeColoring,
    lists: &ColorLists,
) -> Result<Vec<usize>> {
    let d = h.x_degrees();
    if lists.len() != h.x_count() {
        return Err(Error::InvalidQuery(format!(
            "expected {} lists, got {}",
            h.x_count(),
            lists.len()
        )));
    }
    for (i, list) in lists.iter().enumerate() {
        if list.len() != d[i] {
            return Err(Error::ListSizeMismatch {
                x: i + 1,
                degree: d[i],
                list: list.len(),
            });
        }
    }
    let prefs = build_preferences(h, seq)?;

    let mut assigned: Vec<Option<usize>> = vec![None; h.edge_count()];
    let symbols: BTreeSet<usize> = lists.iter().flatten().copied().collect();
    for &symbol in &symbols {
        let eligible: Vec<usize> = (0..h.edge_count())
            .filter(|&i| assigned[i].is_none() && lists[h.edges()[i].x - 1].contains(&symbol))
            .collect();
        if eligible.is_empty() {
            continue;
        }
        for idx in stable_kernel(h, &eligible, &prefs) {
            assigned[idx] = Some(symbol);
        }
    }

    let missing = assigned.iter().filter(|a| a.is_none()).count();
    if missing > 0 {
        return Err(Error::Incomplete(missing));
    }
    let result: Vec<usize> = assigned.into_iter().map(Option::unwrap).collect();
    debug_assert!(list_assignment_is_proper(h, &result));
    Ok(result)
}

fn list_assignment_is_proper(h: &AuxMultigraph, symbols: &[usize]) -> bool {
    let mut at_x = vec![BTreeSet::new(); h.x_count() + 1];
    let mut at_z = vec![BTreeSet::new(); h.z_count() + 1];
    h.edges().iter().enumerate().all(|(idx, e)| {
        at_x[e.x].insert(symbols[idx]) && at_z[e.z].insert(symbols[idx])
    })
}

/// Per-forest center degrees of a decomposition: entry `(i, j)` counts the
/// edges of `x_i` inside forest `j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExtensionMatrix {
    entries: Vec<Vec<usize>>,
}

impl ExtensionMatrix {
    pub fn from_decomposition(k: usize, dec: &Decomposition) -> Self {
        let entries = (1..=k)
            .map(|x| {
                dec.forests()
                    .iter()
                    .map(|f| f.center_degrees(k)[x - 1])
                    .collect()
            })
            .collect();
        Self { entries }
    }

    pub fn entries(&self) -> &[Vec<usize>] {
        &self.entries
    }

    pub fn row_sums(&self) -> Vec<usize> {
        self.entries.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> Vec<usize> {
        let t = self.entries.first().map_or(0, |r| r.len());
        (0..t)
            .map(|j| self.entries.iter().map(|r| r[j]).sum())
            .collect()
    }
}

/// Transfer a star-forest decomposition of `reduce(g)` to `g` itself. Each
/// output forest has the same per-center degrees as its reduced
/// counterpart (under the reduction's vertex relabeling), so isomorphism
/// types and any ascending chain are preserved.
pub fn extend_decomposition(g: &BipartiteGraph, reduced_dec: &Decomposition) -> Result<Decomposition> {
    let red = reduce(g);
    let gr = red.graph();
    let k = gr.x_count();

    // reduced_dec must partition E(reduce(g)) into star forests
    let mut seen = BTreeSet::new();
    let mut covered = 0usize;
    for forest in reduced_dec.forests() {
        if !forest.is_star_forest() {
            return Err(Error::InvalidDecomposition("part is not a star forest".into()));
        }
        for (x, y) in forest.edges() {
            if !gr.has_edge(x, y) || !seen.insert((x, y)) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({x}, {y}) is foreign or repeated in the reduced decomposition"
                )));
            }
            covered += 1;
        }
    }
    if covered != gr.edge_count() {
        return Err(Error::InvalidDecomposition(format!(
            "reduced decomposition covers {covered} of {} edges",
            gr.edge_count()
        )));
    }

    let c = ExtensionMatrix::from_decomposition(k, reduced_dec);
    let t = reduced_dec.forests().len();
    let h = AuxMultigraph::from_multiplicities(k, t, c.entries().to_vec())?;

    // Pre-color the parallel edges toward forest j with x_i's leaf indices
    // inside that forest. Left-justified neighborhoods make this sequential.
    let mut colors = vec![0usize; h.edge_count()];
    for (j, forest) in reduced_dec.forests().iter().enumerate() {
        for x in 1..=k {
            let leaves: Vec<usize> = forest
                .edges()
                .filter(|&(fx, _)| fx == x)
                .map(|(_, y)| y)
                .collect();
            for (offset, idx) in h.instances_at(x, j + 1).enumerate() {
                colors[idx] = leaves[offset];
            }
        }
    }
    let seq = EdgeColoring::new(colors);

    let lists: ColorLists = (1..=k)
        .map(|r| {
            g.neighbors_of_x(red.original_index(r))
                .into_iter()
                .collect()
        })
        .collect();

    let symbols = list_edge_color(&h, &seq, &lists)?;

    let mut forests = vec![Vec::new(); t];
    for (idx, e) in h.edges().iter().enumerate() {
        forests[e.z - 1].push((red.original_index(e.x), symbols[idx]));
    }
    let out = Decomposition::new(forests.into_iter().map(StarForest::new).collect());

    // per-center degrees carry over exactly
    debug_assert_eq!(
        ExtensionMatrix::from_decomposition(g.x_count(), &out)
            .entries()
            .iter()
            .map(|r| r.iter().sum::<usize>())
            .sum::<usize>(),
        g.edge_count()
    );
    Ok(out)
}
