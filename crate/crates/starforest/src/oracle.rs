//! Exhaustive ground truth at desk scale: existence of star-forest or
//! single-star decompositions with prescribed part sizes, a degree-sequence
//! enumerator, and a seeded random-instance generator.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::{dominance_leq, BipartiteGraph, Decomposition, DegreeVector, StarForest};

pub const DEFAULT_EDGE_CAP: usize = 16;

/// Shape required of every part.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum PartShape {
    /// Every leaf used at most once per part.
    StarForest,
    /// All edges of the part share one center.
    SingleStar,
}

/// An existence question: can the edge set of `graph` be split into parts
/// of the given sizes and shape, optionally chained under dominance?
#[derive(Debug, Clone)]
pub struct OracleQuery {
    pub graph: BipartiteGraph,
    pub sizes: Vec<usize>,
    pub shape: PartShape,
    pub require_ascending: bool,
    pub cap: usize,
}

impl OracleQuery {
    /// The ascending star-forest question with sizes `1..=n`.
    pub fn asd(graph: BipartiteGraph) -> Result<Self> {
        let n = crate::graph::triangular_order(graph.edge_count())?;
        Ok(Self {
            graph,
            sizes: (1..=n).collect(),
            shape: PartShape::StarForest,
            require_ascending: true,
            cap: DEFAULT_EDGE_CAP,
        })
    }
}

struct Searcher {
    edges: Vec<(usize, usize)>,
    y_compact: Vec<usize>, // per edge, compact leaf id for the mask
    sizes: Vec<usize>,
    order: Vec<usize>, // positions, filled in this order
    shape: PartShape,
    ascending: bool,
    k: usize,
}

#[derive(Clone)]
struct SearchState {
    remaining: u64, // bit per edge index
    parts: Vec<Option<Vec<usize>>>,
}

impl Searcher {
    fn part_degrees(&self, part: &[usize]) -> DegreeVector {
        let mut deg = vec![0usize; self.k];
        for &e in part {
            deg[self.edges[e].0 - 1] += 1;
        }
        deg
    }

    fn chain_ok(&self, state: &SearchState, position: usize, part: &[usize]) -> bool {
        let deg = self.part_degrees(part);
        if position + 1 < self.sizes.len() {
            if let Some(next) = &state.parts[position + 1] {
                if self.ascending && !dominance_leq(&deg, &self.part_degrees(next)) {
                    return false;
                }
                if self.sizes[position + 1] == self.sizes[position] && part >= next.as_slice() {
                    return false; // equal-size parts kept in index order
                }
            }
        }
        if position > 0 {
            if let Some(prev) = &state.parts[position - 1] {
                if self.ascending && !dominance_leq(&self.part_degrees(prev), &deg) {
                    return false;
                }
                if self.sizes[position - 1] == self.sizes[position] && prev.as_slice() >= part {
                    return false;
                }
            }
        }
        true
    }

    /// The counting cut: a leaf with more unassigned edges than open parts
    /// can never be finished, since each part uses it at most once.
    fn pigeonhole_ok(&self, state: &SearchState, open_parts: usize) -> bool {
        if self.shape != PartShape::StarForest {
            return true; // single stars repeat no leaf either, same bound applies
        }
        let mut count = vec![0usize; self.edges.len()];
        let mut rem = state.remaining;
        while rem != 0 {
            let e = rem.trailing_zeros() as usize;
            rem &= rem - 1;
            let y = self.y_compact[e];
            count[y] += 1;
            if count[y] > open_parts {
                return false;
            }
        }
        true
    }

    fn fill(&self, state: &mut SearchState, step: usize) -> Option<Vec<Vec<usize>>> {
        if step == self.order.len() {
            return Some(
                state
                    .parts
                    .iter()
                    .map(|p| p.clone().expect("all positions filled"))
                    .collect(),
            );
        }
        let position = self.order[step];
        let open = self.order.len() - step;
        if !self.pigeonhole_ok(state, open) {
            return None;
        }
        let mut part = Vec::with_capacity(self.sizes[position]);
        self.choose(state, step, position, 0, 0u64, &mut part)
    }

    fn choose(
        &self,
        state: &mut SearchState,
        step: usize,
        position: usize,
        start: usize,
        y_mask: u64,
        part: &mut Vec<usize>,
    ) -> Option<Vec<Vec<usize>>> {
        let need = self.sizes[position] - part.len();
        if need == 0 {
            if !self.chain_ok(state, position, part) {
                return None;
            }
            let saved = state.remaining;
            for &e in part.iter() {
                state.remaining &= !(1u64 << e);
            }
            state.parts[position] = Some(part.clone());
            let found = self.fill(state, step + 1);
            if found.is_some() {
                return found;
            }
            state.parts[position] = None;
            state.remaining = saved;
            return None;
        }
        for e in start..self.edges.len() {
            if state.remaining & (1u64 << e) == 0 {
                continue;
            }
            if self.edges.len() - e < need {
                break;
            }
            match self.shape {
                PartShape::StarForest => {
                    if y_mask & (1u64 << self.y_compact[e]) != 0 {
                        continue;
                    }
                }
                PartShape::SingleStar => {
                    if let Some(&first) = part.first() {
                        if self.edges[e].0 != self.edges[first].0 {
                            continue;
                        }
                    }
                }
            }
            part.push(e);
            let found = self.choose(
                state,
                step,
                position,
                e + 1,
                y_mask | (1u64 << self.y_compact[e]),
                part,
            );
            if found.is_some() {
                return found;
            }
            part.pop();
        }
        None
    }

    /// All shape-valid candidate parts for the first processed position.
    fn first_level(&self, state: &SearchState) -> Vec<Vec<usize>> {
        let position = self.order[0];
        let mut out = Vec::new();
        let mut part = Vec::new();
        self.collect_candidates(state, position, 0, 0u64, &mut part, &mut out);
        out
    }

    fn collect_candidates(
        &self,
        state: &SearchState,
        position: usize,
        start: usize,
        y_mask: u64,
        part: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if part.len() == self.sizes[position] {
            out.push(part.clone());
            return;
        }
        let need = self.sizes[position] - part.len();
        for e in start..self.edges.len() {
            if state.remaining & (1u64 << e) == 0 || self.edges.len() - e < need {
                continue;
            }
            match self.shape {
                PartShape::StarForest => {
                    if y_mask & (1u64 << self.y_compact[e]) != 0 {
                        continue;
                    }
                }
                PartShape::SingleStar => {
                    if let Some(&first) = part.first() {
                        if self.edges[e].0 != self.edges[first].0 {
                            continue;
                        }
                    }
                }
            }
            part.push(e);
            self.collect_candidates(
                state,
                position,
                e + 1,
                y_mask | (1u64 << self.y_compact[e]),
                part,
                out,
            );
            part.pop();
        }
    }

    fn run_from(&self, base: &SearchState, candidate: &[usize]) -> Option<Vec<Vec<usize>>> {
        let position = self.order[0];
        let mut state = base.clone();
        if !self.chain_ok(&state, position, candidate) {
            return None;
        }
        for &e in candidate {
            state.remaining &= !(1u64 << e);
        }
        state.parts[position] = Some(candidate.to_vec());
        self.fill(&mut state, 1)
    }
}

/// Exhaustively decide the query. `Ok(None)` certifies that no decomposition
/// exists; a witness is returned in ascending position order and is the
/// first solution of a fixed search order (leftmost over the parallel
/// fan-out too, so results are reproducible).
pub fn brute_force(q: &OracleQuery) -> Result<Option<Decomposition>> {
    let e = q.graph.edge_count();
    if e > q.cap {
        return Err(Error::CapExceeded {
            edges: e,
            cap: q.cap,
        });
    }
    if e > 64 {
        return Err(Error::InvalidQuery("edge masks support at most 64 edges".into()));
    }
    let total: usize = q.sizes.iter().sum();
    if total != e {
        return Err(Error::InvalidQuery(format!(
            "sizes sum to {total}, graph has {e} edges"
        )));
    }
    if q.sizes.contains(&0) {
        return Err(Error::InvalidQuery("part sizes must be positive".into()));
    }

    let edges: Vec<(usize, usize)> = q.graph.edges().collect();
    let mut y_ids: Vec<usize> = edges.iter().map(|&(_, y)| y).collect();
    y_ids.sort_unstable();
    y_ids.dedup();
    let y_compact: Vec<usize> = edges
        .iter()
        .map(|&(_, y)| y_ids.binary_search(&y).unwrap())
        .collect();

    // larger parts first; equal sizes from the later position backwards
    let mut order: Vec<usize> = (0..q.sizes.len()).collect();
    order.sort_by(|&a, &b| (q.sizes[b], b).cmp(&(q.sizes[a], a)));

    let searcher = Searcher {
        edges,
        y_compact,
        sizes: q.sizes.clone(),
        order,
        shape: q.shape,
        ascending: q.require_ascending,
        k: q.graph.x_count(),
    };
    let state = SearchState {
        remaining: if e == 64 { !0u64 } else { (1u64 << e) - 1 },
        parts: vec![None; q.sizes.len()],
    };

    let candidates = searcher.first_level(&state);
    let solution = run_candidates(&searcher, &state, &candidates);

    Ok(solution.map(|parts| {
        Decomposition::new(
            parts
                .into_iter()
                .map(|part| {
                    StarForest::new(part.into_iter().map(|e| searcher.edges[e]))
                })
                .collect(),
        )
    }))
}

#[cfg(feature = "parallel")]
fn run_candidates(
    searcher: &Searcher,
    state: &SearchState,
    candidates: &[Vec<usize>],
) -> Option<Vec<Vec<usize>>> {
    candidates
        .par_iter()
        .find_map_first(|cand| searcher.run_from(state, cand))
}

#[cfg(not(feature = "parallel"))]
fn run_candidates(
    searcher: &Searcher,
    state: &SearchState,
    candidates: &[Vec<usize>],
) -> Option<Vec<Vec<usize>>> {
    candidates
        .iter()
        .find_map(|cand| searcher.run_from(state, cand))
}

/// All nondecreasing sequences of positive integers with sum `n(n+1)/2` and
/// at most `k_max` entries, grouped by length and lexicographic within each
/// length.
pub fn enumerate_sequences(n: usize, k_max: usize) -> Vec<DegreeVector> {
    fn gen(total: usize, slots: usize, min: usize, prefix: &mut Vec<usize>, out: &mut Vec<DegreeVector>) {
        if slots == 1 {
            if total >= min {
                prefix.push(total);
                out.push(prefix.clone());
                prefix.pop();
            }
            return;
        }
        let mut v = min;
        while v * slots <= total {
            prefix.push(v);
            gen(total - v, slots - 1, v, prefix, out);
            prefix.pop();
            v += 1;
        }
    }

    let total = n * (n + 1) / 2;
    let mut out = Vec::new();
    for k in 1..=k_max.min(total) {
        gen(total, k, 1, &mut Vec::new(), &mut out);
    }
    out
}

/// A simple bipartite graph with the exact per-vertex X-degrees `d` over `m`
/// leaves, sampled reproducibly from the seed.
pub fn random_graph(d: &[usize], m: usize, seed: u64) -> Result<BipartiteGraph> {
    if d.iter().any(|&di| di > m) {
        return Err(Error::Infeasible { d: d.to_vec(), m });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for (i, &di) in d.iter().enumerate() {
        let picks = rand::seq::index::sample(&mut rng, m, di);
        for y in picks {
            edges.push((i + 1, y + 1));
        }
    }
    BipartiteGraph::new(d.len(), m, edges)
}
