//! Sequential edge colorings of the auxiliary multigraph and the two-way
//! conversion between such colorings and star-forest decompositions of a
//! reduced graph.
//!
//! A coloring is *sequential* for a degree sequence `d` when it is proper
//! and the edges at `x_i` carry exactly the colors `{1..=d_i}`. The solver
//! first follows the structured route (residue matchings, degree peeling,
//! bipartite edge coloring, local conflict repair); whenever any step of
//! that route fails, an exact backtracking search takes over. Every
//! returned coloring is checked against the sequential predicate, never
//! assumed correct.

use crate::error::{Error, Result};
use crate::graph::{Decomposition, StarForest};
use crate::matrix::AscendingMatrix;
use crate::multigraph::{AuxMultigraph, EdgeColoring};
use crate::reduction::is_reduced;
use crate::graph::BipartiteGraph;

/// Which solver route to allow.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverMode {
    /// Structured route only; gives up rather than proving unsatisfiability.
    Heuristic,
    /// Exhaustive backtracking only.
    Exact,
    /// Structured route with the exact search as fallback (default).
    Hybrid,
}

/// The matching schedule extracted from a multigraph whose matrix has a
/// positive staircase: `full` holds the size-`k` matchings along the two
/// residue diagonals, `pruned` keeps from matching `j` only the edges of
/// vertices with `alpha >= j`, and `residual` is the multigraph left after
/// removing the pruned matchings.
#[derive(Debug, Clone)]
pub struct MatchingPlan {
    pub full: Vec<Vec<(usize, usize)>>,
    pub pruned: Vec<Vec<(usize, usize)>>,
    pub alpha: Vec<usize>,
    pub t: Vec<usize>,
    pub residual: AuxMultigraph,
    /// Cells of `full` with zero multiplicity. Harmless when the pruning
    /// drops them; kept for diagnosis of instances where the schedule does
    /// not go through.
    pub off_support: Vec<(usize, usize, usize)>,
}

/// Compute the matching schedule for `h` with X-degrees `d`.
///
/// Matching `i` pairs `x_r` with `z_s` where `s = n+i-r` for `r >= i` and
/// `s = n-k+i-r` for `r < i`; the paired sums `r+s` land on two diagonals
/// that are congruent to `i` and `n-k+i` mod `n`. Cells with `r+s >= k+1`
/// are backed by the positive staircase; the low diagonal can leave that
/// region, and when an unpruned edge lands on an empty cell the schedule is
/// reported as unavailable.
pub fn residue_matchings(h: &AuxMultigraph, d: &[usize]) -> Result<MatchingPlan> {
    let k = h.x_count();
    let n = h.z_count();
    assert_eq!(d.len(), k);
    if k == 0 || k > n {
        return Err(Error::InvalidQuery(format!(
            "matching schedule needs 1 <= k <= n, got k={k}, n={n}"
        )));
    }
    let spare = n - k;
    let alpha: Vec<usize> = d.iter().map(|&di| di.saturating_sub(spare)).collect();
    let t: Vec<usize> = alpha.iter().map(|&a| a.min(k)).collect();

    let mut full = Vec::with_capacity(k);
    let mut pruned = Vec::with_capacity(k);
    let mut off_support = Vec::new();
    for i in 1..=k {
        let mut all = Vec::with_capacity(k);
        let mut kept = Vec::new();
        for r in 1..=k {
            let s = if r >= i { n + i - r } else { n - k + i - r };
            debug_assert!((1..=n).contains(&s));
            all.push((r, s));
            if h.multiplicity(r, s) == 0 {
                off_support.push((i, r, s));
            }
            if alpha[r - 1] >= i {
                if h.multiplicity(r, s) == 0 {
                    return Err(Error::MatchingUnavailable { x: r, z: s });
                }
                kept.push((r, s));
            }
        }
        full.push(all);
        pruned.push(kept);
    }

    let mut mult = h.multiplicities().to_vec();
    for matching in &pruned {
        for &(r, s) in matching {
            debug_assert!(mult[r - 1][s - 1] > 0, "schedule cells are pairwise distinct");
            mult[r - 1][s - 1] -= 1;
        }
    }
    let residual = AuxMultigraph::from_multiplicities(k, n, mult)?;

    Ok(MatchingPlan {
        full,
        pruned,
        alpha,
        t,
        residual,
        off_support,
    })
}

/// Kuhn's augmenting-path matching restricted to the given rows, over cells
/// with positive multiplicity. Returns `(row, z)` pairs saturating every
/// row, or `None` if impossible.
fn saturating_matching(
    mult: &[Vec<usize>],
    rows: &[usize],
    n: usize,
) -> Option<Vec<(usize, usize)>> {
    fn augment(
        r: usize,
        mult: &[Vec<usize>],
        n: usize,
        owner: &mut [usize],
        visited: &mut [bool],
    ) -> bool {
        for s in 1..=n {
            if mult[r - 1][s - 1] == 0 || visited[s] {
                continue;
            }
            visited[s] = true;
            if owner[s] == usize::MAX || augment(owner[s], mult, n, owner, visited) {
                owner[s] = r;
                return true;
            }
        }
        false
    }

    let mut owner = vec![usize::MAX; n + 1];
    for &r in rows {
        let mut visited = vec![false; n + 1];
        if !augment(r, mult, n, &mut owner, &mut visited) {
            return None;
        }
    }
    Some(
        (1..=n)
            .filter(|&s| owner[s] != usize::MAX)
            .map(|s| (owner[s], s))
            .collect(),
    )
}

/// One peeling step: a matching inside the subgraph spanned by the
/// maximum-degree X-vertices that saturates exactly those vertices. Their
/// degrees drop by one on removal and no other X-vertex is touched.
pub fn peel_matching(h: &AuxMultigraph) -> Result<Vec<(usize, usize)>> {
    let deg = h.x_degrees();
    let dmax = deg.iter().copied().max().unwrap_or(0);
    if dmax == 0 {
        return Err(Error::HallViolation);
    }
    let rows: Vec<usize> = (1..=h.x_count()).filter(|&r| deg[r - 1] == dmax).collect();
    saturating_matching(h.multiplicities(), &rows, h.z_count()).ok_or(Error::HallViolation)
}

/// Classical bipartite edge coloring: insert each edge with a color free at
/// both ends, flipping a two-color alternating chain when the free colors
/// disagree. `cells` are `(x, z)` pairs; returns one color in `1..=delta`
/// per cell.
fn konig_assign(cells: &[(usize, usize)], k: usize, n: usize, delta: usize) -> Vec<usize> {
    let mut colors = vec![0usize; cells.len()];
    if cells.is_empty() {
        return colors;
    }
    assert!(delta >= 1);
    let mut at_x = vec![vec![usize::MAX; delta + 1]; k + 1];
    let mut at_z = vec![vec![usize::MAX; delta + 1]; n + 1];
    for (idx, &(x, z)) in cells.iter().enumerate() {
        let a = (1..=delta)
            .find(|&c| at_x[x][c] == usize::MAX)
            .expect("X-degree exceeds the palette");
        let b = (1..=delta)
            .find(|&c| at_z[z][c] == usize::MAX)
            .expect("Z-degree exceeds the palette");
        if a != b {
            // Free color a at z by flipping the a/b chain that starts there.
            // The chain can never reach x: it would have to arrive along an
            // a-colored edge, and a is free at x.
            let mut chain = Vec::new();
            let mut on_z = true;
            let mut v = z;
            let (mut want, mut other) = (a, b);
            loop {
                let e = if on_z { at_z[v][want] } else { at_x[v][want] };
                if e == usize::MAX {
                    break;
                }
                chain.push(e);
                let (ex, ez) = cells[e];
                v = if on_z { ex } else { ez };
                on_z = !on_z;
                std::mem::swap(&mut want, &mut other);
            }
            for &e in &chain {
                let (ex, ez) = cells[e];
                let c = colors[e];
                at_x[ex][c] = usize::MAX;
                at_z[ez][c] = usize::MAX;
                colors[e] = if c == a { b } else { a };
            }
            for &e in &chain {
                let (ex, ez) = cells[e];
                let c = colors[e];
                debug_assert!(at_x[ex][c] == usize::MAX && at_z[ez][c] == usize::MAX);
                at_x[ex][c] = e;
                at_z[ez][c] = e;
            }
        }
        colors[idx] = a;
        at_x[x][a] = idx;
        at_z[z][a] = idx;
    }
    colors
}

/// Proper coloring of `h` with exactly the colors `1..=delta`; always
/// succeeds for bipartite multigraphs of maximum degree at most `delta`.
pub fn konig_color(h: &AuxMultigraph, delta: usize) -> EdgeColoring {
    let dmax = h
        .x_degrees()
        .into_iter()
        .chain(h.z_degrees())
        .max()
        .unwrap_or(0);
    assert!(dmax <= delta, "maximum degree {dmax} exceeds palette {delta}");
    let cells: Vec<(usize, usize)> = h.edges().iter().map(|e| (e.x, e.z)).collect();
    EdgeColoring::new(konig_assign(&cells, h.x_count(), h.z_count(), delta))
}

fn take_instance(h: &AuxMultigraph, used: &[bool], x: usize, z: usize) -> Option<usize> {
    h.instances_at(x, z).rev().find(|&i| !used[i])
}

/// Move colors between edges at a shared X-vertex until no Z-vertex sees a
/// repeated color. Swapping two edges of one X-vertex keeps its color set
/// intact, so the sequential property survives every move. Budgeted; on
/// exhaustion the caller falls back to exact search.
fn repair_z_conflicts(h: &AuxMultigraph, d: &[usize], colors: &mut [usize]) -> bool {
    let ecount = h.edge_count();
    let budget = ecount * ecount + 1;
    let dmax = d.iter().copied().max().unwrap_or(0);
    let mut by_x = vec![vec![usize::MAX; dmax + 1]; h.x_count() + 1];
    for (idx, e) in h.edges().iter().enumerate() {
        by_x[e.x][colors[idx]] = idx;
    }

    let find_conflict = |colors: &[usize]| -> Option<(usize, usize)> {
        for z in 1..=h.z_count() {
            let mut seen = vec![usize::MAX; dmax + 1];
            for (idx, e) in h.edges().iter().enumerate() {
                if e.z != z {
                    continue;
                }
                let c = colors[idx];
                if seen[c] != usize::MAX {
                    return Some((seen[c], idx));
                }
                seen[c] = idx;
            }
        }
        None
    };

    let count_at = |colors: &[usize], z: usize, color: usize, excl: usize| -> bool {
        h.edges()
            .iter()
            .enumerate()
            .any(|(idx, e)| idx != excl && e.z == z && colors[idx] == color)
    };

    for _ in 0..budget {
        let Some((first, second)) = find_conflict(colors) else {
            return true;
        };
        let mut moved = false;
        for &mover in &[second, first] {
            let e = h.edges()[mover];
            let c = colors[mover];
            let mut best: Option<(usize, usize, usize)> = None;
            #[allow(clippy::needless_range_loop)]
            for cand in 1..=d[e.x - 1] {
                if cand == c {
                    continue;
                }
                let partner = by_x[e.x][cand];
                debug_assert!(partner != usize::MAX, "X color sets stay exact");
                let pz = h.edges()[partner].z;
                if pz == e.z {
                    continue;
                }
                let score = usize::from(count_at(colors, e.z, cand, mover))
                    + usize::from(count_at(colors, pz, c, partner));
                if best.is_none_or(|(s, cc, _)| (score, cand) < (s, cc)) {
                    best = Some((score, cand, partner));
                }
            }
            if let Some((_, cand, partner)) = best {
                colors[mover] = cand;
                colors[partner] = c;
                by_x[e.x][cand] = mover;
                by_x[e.x][c] = partner;
                moved = true;
                break;
            }
        }
        if !moved {
            return false;
        }
    }
    false
}

/// The structured route: matching schedule, peeling, bipartite coloring of
/// the regular remainder, local repair. Any failed step returns `None`.
fn try_heuristic(h: &AuxMultigraph, d: &[usize]) -> Option<EdgeColoring> {
    let k = h.x_count();
    let n = h.z_count();
    if h.edge_count() == 0 {
        return Some(EdgeColoring::new(Vec::new()));
    }
    if k == 0 || k > n {
        return None;
    }
    let target = n - k;
    let plan = residue_matchings(h, d).ok()?;
    if plan.residual.z_degrees().iter().any(|&dz| dz > target) {
        return None;
    }
    let resid_deg = plan.residual.x_degrees();
    if (0..k).any(|i| resid_deg[i] != d[i] - plan.t[i] || resid_deg[i] < target) {
        return None;
    }

    let mut colors = vec![0usize; h.edge_count()];
    let mut used = vec![false; h.edge_count()];

    // Edges of x_i removed with matching j take color d_i - j + 1, filling
    // the top of x_i's interval; the residual coloring below fills the rest.
    for (j0, matching) in plan.pruned.iter().enumerate() {
        for &(x, z) in matching {
            let idx = take_instance(h, &used, x, z)?;
            used[idx] = true;
            colors[idx] = d[x - 1] - j0;
        }
    }

    // Peeling: each round removes a matching that saturates exactly the
    // current maximum-degree X-vertices and colors it with that degree, so
    // x_i collects colors resid_deg_i, resid_deg_i - 1, ..., target + 1.
    let mut mult = plan.residual.multiplicities().to_vec();
    let mut deg = resid_deg;
    loop {
        let dmax = *deg.iter().max().unwrap();
        if dmax <= target {
            break;
        }
        let rows: Vec<usize> = (1..=k).filter(|&r| deg[r - 1] == dmax).collect();
        let matching = saturating_matching(&mult, &rows, n)?;
        for (r, s) in matching {
            mult[r - 1][s - 1] -= 1;
            deg[r - 1] -= 1;
            let idx = take_instance(h, &used, r, s)?;
            used[idx] = true;
            colors[idx] = dmax;
        }
    }

    // What is left is regular of degree `target` on X and at most `target`
    // on Z; a proper coloring with 1..=target completes every interval.
    let rest: Vec<usize> = (0..h.edge_count()).filter(|&i| !used[i]).collect();
    if target == 0 {
        if !rest.is_empty() {
            return None;
        }
    } else {
        let cells: Vec<(usize, usize)> = rest
            .iter()
            .map(|&i| (h.edges()[i].x, h.edges()[i].z))
            .collect();
        let kc = konig_assign(&cells, k, n, target);
        for (pos, &idx) in rest.iter().enumerate() {
            colors[idx] = kc[pos];
        }
    }

    if !repair_z_conflicts(h, d, &mut colors) {
        return None;
    }
    let ec = EdgeColoring::new(colors);
    ec.is_sequential(h, d).then_some(ec)
}

fn color_bit(c: usize) -> u128 {
    1u128 << c
}

fn greater_than(c: usize) -> u128 {
    (!0u128).checked_shl((c + 1) as u32).unwrap_or(0)
}

fn less_than(c: usize) -> u128 {
    color_bit(c) - 1
}

/// Exhaustive search over edge instances with per-edge domains `{1..=d_x}`,
/// smallest domain first, colors ascending. Parallel copies of a cell are
/// forced into increasing color order to kill their permutation symmetry.
fn exact_sequential(h: &AuxMultigraph, d: &[usize]) -> Option<EdgeColoring> {
    let ecount = h.edge_count();
    if ecount == 0 {
        return Some(EdgeColoring::new(Vec::new()));
    }
    let dmax = d.iter().copied().max().unwrap_or(0);
    assert!(dmax <= 127, "exact solver supports at most 127 colors");

    let edges = h.edges();
    let full: Vec<u128> = edges
        .iter()
        .map(|e| greater_than(0) & less_than(d[e.x - 1] + 1))
        .collect();
    let prev_copy: Vec<Option<usize>> = (0..ecount)
        .map(|i| (edges[i].copy > 1).then(|| i - 1))
        .collect();
    let next_copy: Vec<Option<usize>> = (0..ecount)
        .map(|i| {
            (i + 1 < ecount && edges[i + 1].x == edges[i].x && edges[i + 1].z == edges[i].z)
                .then_some(i + 1)
        })
        .collect();

    struct State {
        colors: Vec<usize>,
        used_x: Vec<u128>,
        used_z: Vec<u128>,
    }

    let mut st = State {
        colors: vec![0; ecount],
        used_x: vec![0; h.x_count() + 1],
        used_z: vec![0; h.z_count() + 1],
    };

    fn domain(
        i: usize,
        st: &State,
        h: &AuxMultigraph,
        full: &[u128],
        prev_copy: &[Option<usize>],
        next_copy: &[Option<usize>],
    ) -> u128 {
        let e = h.edges()[i];
        let mut dom = full[i] & !st.used_x[e.x] & !st.used_z[e.z];
        if let Some(p) = prev_copy[i] {
            if st.colors[p] != 0 {
                dom &= greater_than(st.colors[p]);
            }
        }
        if let Some(nx) = next_copy[i] {
            if st.colors[nx] != 0 {
                dom &= less_than(st.colors[nx]);
            }
        }
        dom
    }

    fn solve(
        remaining: usize,
        st: &mut State,
        h: &AuxMultigraph,
        full: &[u128],
        prev_copy: &[Option<usize>],
        next_copy: &[Option<usize>],
    ) -> bool {
        if remaining == 0 {
            return true;
        }
        let mut pick = usize::MAX;
        let mut pick_dom = 0u128;
        let mut pick_size = usize::MAX;
        for i in 0..h.edge_count() {
            if st.colors[i] != 0 {
                continue;
            }
            let dom = domain(i, st, h, full, prev_copy, next_copy);
            let size = dom.count_ones() as usize;
            if size == 0 {
                return false;
            }
            if size < pick_size {
                pick = i;
                pick_dom = dom;
                pick_size = size;
            }
        }
        let e = h.edges()[pick];
        let mut dom = pick_dom;
        while dom != 0 {
            let c = dom.trailing_zeros() as usize;
            dom &= dom - 1;
            st.colors[pick] = c;
            st.used_x[e.x] |= color_bit(c);
            st.used_z[e.z] |= color_bit(c);
            if solve(remaining - 1, st, h, full, prev_copy, next_copy) {
                return true;
            }
            st.used_x[e.x] &= !color_bit(c);
            st.used_z[e.z] &= !color_bit(c);
            st.colors[pick] = 0;
        }
        false
    }

    solve(ecount, &mut st, h, &full, &prev_copy, &next_copy)
        .then(|| EdgeColoring::new(st.colors))
}

/// Which route produced a coloring.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SolverKind {
    Heuristic,
    Exact,
}

/// Find a sequential coloring of `h` for `d`, or establish that none
/// exists. `h`'s X-degrees must equal `d`.
pub fn sequential_color(h: &AuxMultigraph, d: &[usize]) -> Result<EdgeColoring> {
    sequential_color_with(h, d, SolverMode::Hybrid)
}

pub fn sequential_color_with(
    h: &AuxMultigraph,
    d: &[usize],
    mode: SolverMode,
) -> Result<EdgeColoring> {
    sequential_color_detailed(h, d, mode).map(|(ec, _)| ec)
}

/// Like [`sequential_color_with`] but also says which route succeeded.
pub fn sequential_color_detailed(
    h: &AuxMultigraph,
    d: &[usize],
    mode: SolverMode,
) -> Result<(EdgeColoring, SolverKind)> {
    assert_eq!(h.x_degrees(), d, "multigraph degrees must match d");
    if mode != SolverMode::Exact {
        if let Some(ec) = try_heuristic(h, d) {
            assert!(ec.is_sequential(h, d));
            return Ok((ec, SolverKind::Heuristic));
        }
        if mode == SolverMode::Heuristic {
            return Err(Error::HeuristicIncomplete);
        }
    }
    match exact_sequential(h, d) {
        Some(ec) => {
            assert!(ec.is_sequential(h, d));
            Ok((ec, SolverKind::Exact))
        }
        None => Err(Error::Unsatisfiable),
    }
}

/// Read a sequential coloring back as star forests of the reduced graph
/// with degree sequence `d`: the edge of `x_i` to `z_j` colored `h` puts
/// `(x_i, y_h)` into forest `j`.
pub fn forests_from_coloring(
    a: &AscendingMatrix,
    coloring: &EdgeColoring,
    d: &[usize],
) -> Decomposition {
    let h = AuxMultigraph::from_matrix(a);
    assert!(
        coloring.is_sequential(&h, d),
        "coloring must be sequential for d"
    );
    let mut forests = vec![Vec::new(); a.cols()];
    for (idx, e) in h.edges().iter().enumerate() {
        forests[e.z - 1].push((e.x, coloring.color(idx)));
    }
    Decomposition::new(forests.into_iter().map(StarForest::new).collect())
}

/// The converse direction: from a star-forest decomposition of a reduced
/// graph, recover the matrix of per-forest center degrees and a sequential
/// coloring of its multigraph. Leaf indices are handed to parallel copies
/// in ascending order, so the result is exact and reproducible.
pub fn coloring_from_forests(
    g: &BipartiteGraph,
    dec: &Decomposition,
) -> Result<(AscendingMatrix, EdgeColoring)> {
    if !is_reduced(g) {
        return Err(Error::NotReduced);
    }
    let k = g.x_count();
    let total: usize = dec.total_edges();
    if total != g.edge_count() {
        return Err(Error::InvalidDecomposition(format!(
            "decomposition covers {total} edges, graph has {}",
            g.edge_count()
        )));
    }
    let mut seen = std::collections::BTreeSet::new();
    for forest in dec.forests() {
        if !forest.is_star_forest() {
            return Err(Error::InvalidDecomposition("part is not a star forest".into()));
        }
        for (x, y) in forest.edges() {
            if !g.has_edge(x, y) || !seen.insert((x, y)) {
                return Err(Error::InvalidDecomposition(format!(
                    "edge ({x}, {y}) is foreign or repeated"
                )));
            }
        }
    }

    let t = dec.forests().len();
    let rows: Vec<Vec<usize>> = (1..=k)
        .map(|x| {
            (0..t)
                .map(|j| dec.forests()[j].center_degrees(k)[x - 1])
                .collect()
        })
        .collect();
    let a = AscendingMatrix::from_rows(rows)?;
    let h = AuxMultigraph::from_matrix(&a);

    let mut colors = vec![0usize; h.edge_count()];
    for (j, forest) in dec.forests().iter().enumerate() {
        for x in 1..=k {
            let leaves: Vec<usize> = forest
                .edges()
                .filter(|&(fx, _)| fx == x)
                .map(|(_, y)| y)
                .collect(); // ascending: forest edges iterate in order
            for (offset, idx) in h.instances_at(x, j + 1).enumerate() {
                colors[idx] = leaves[offset];
            }
        }
    }
    let coloring = EdgeColoring::new(colors);
    let d = g.x_degrees();
    assert!(
        coloring.is_sequential(&h, &d),
        "valid star-forest decompositions of reduced graphs always yield sequential colorings"
    );
    Ok((a, coloring))
}
