//! Nonnegative integer matrices with prescribed row and column sums whose
//! columns form a chain in the dominance order, and the staircase-shaped
//! construction that seeds decompositions of reduced graphs.

use std::fmt;

use crate::error::{Error, Result};
use crate::graph::{dominance_leq, DegreeVector};

/// A `k x n` nonnegative integer matrix. Named for its intended use: the
/// column vectors encode per-forest center degrees and should ascend in the
/// dominance order. Validity is always checked via [`AscendingMatrix::is_valid`],
/// never assumed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AscendingMatrix {
    rows: usize,
    cols: usize,
    data: Vec<Vec<usize>>,
}

impl AscendingMatrix {
    pub fn from_rows(data: Vec<Vec<usize>>) -> Result<Self> {
        let rows = data.len();
        let cols = data.first().map_or(0, |r| r.len());
        if data.iter().any(|r| r.len() != cols) {
            return Err(Error::InvalidQuery("ragged matrix rows".into()));
        }
        Ok(Self { rows, cols, data })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    /// Entry at row `i`, column `j`, both 1-based.
    pub fn entry(&self, i: usize, j: usize) -> usize {
        self.data[i - 1][j - 1]
    }

    pub fn as_rows(&self) -> &[Vec<usize>] {
        &self.data
    }

    pub fn row_sums(&self) -> DegreeVector {
        self.data.iter().map(|r| r.iter().sum()).collect()
    }

    pub fn col_sums(&self) -> DegreeVector {
        (0..self.cols)
            .map(|j| self.data.iter().map(|r| r[j]).sum())
            .collect()
    }

    /// Column `j`, 1-based.
    pub fn column(&self, j: usize) -> DegreeVector {
        self.data.iter().map(|r| r[j - 1]).collect()
    }

    /// Do consecutive columns ascend in the dominance order?
    pub fn is_ascending(&self) -> bool {
        (1..self.cols).all(|j| dominance_leq(&self.column(j), &self.column(j + 1)))
    }

    /// Membership in the transportation class of `(d, b)` plus the ascending
    /// column chain.
    pub fn is_valid(&self, d: &[usize], b: &[usize]) -> bool {
        self.rows == d.len()
            && self.cols == b.len()
            && self.row_sums() == d
            && self.col_sums() == b
            && self.is_ascending()
    }
}

impl fmt::Display for AscendingMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.data {
            for (j, v) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{v}")?;
            }
            writeln!(f)?;
        }
        Ok(())
    }
}

/// The column-sum sequence `(1, 2, ..., n)`.
pub fn ascending_sums(n: usize) -> DegreeVector {
    (1..=n).collect()
}

/// The constant sequence with `r` entries equal to `x`.
pub fn constant_sums(x: usize, r: usize) -> DegreeVector {
    vec![x; r]
}

/// The `k x n` 0/1 staircase with ones exactly where `i + j >= k + 1`
/// (1-based). Row `i` sums to `n-k+i`, column `j` to `min(j, k)`; the
/// columns ascend. Requires `1 <= k <= n`.
pub fn staircase_matrix(k: usize, n: usize) -> AscendingMatrix {
    assert!(k >= 1 && k <= n, "staircase needs 1 <= k <= n");
    let data = (1..=k)
        .map(|i| (1..=n).map(|j| usize::from(i + j > k)).collect())
        .collect();
    AscendingMatrix::from_rows(data).expect("rectangular by construction")
}

fn sorted_leq(a: &[usize], b: &[usize]) -> bool {
    a.iter().zip(b).all(|(x, y)| x <= y)
}

struct ColumnSearch {
    k: usize,
    rem: Vec<usize>,
    cols_rev: Vec<Vec<usize>>,
}

impl ColumnSearch {
    /// Fill column `j` (sum `j`), then recurse leftward. `prev_sorted` is the
    /// sorted right neighbor that the new column must stay below.
    fn run(&mut self, j: usize, prev_sorted: Option<&[usize]>) -> bool {
        if j == 0 {
            return self.rem.iter().all(|&r| r == 0);
        }
        // Greedy value order: feed rows with the largest remaining degree
        // first, larger index breaking ties; values tried descending.
        let mut order: Vec<usize> = (0..self.k).collect();
        order.sort_by(|&a, &b| (self.rem[b], b).cmp(&(self.rem[a], a)));
        let mut col = vec![0usize; self.k];
        self.assign(j, &order, 0, j, &mut col, prev_sorted)
    }

    fn assign(
        &mut self,
        j: usize,
        order: &[usize],
        pos: usize,
        left: usize,
        col: &mut Vec<usize>,
        prev_sorted: Option<&[usize]>,
    ) -> bool {
        if left == 0 || pos == order.len() {
            if left != 0 {
                return false;
            }
            let mut sorted = col.clone();
            sorted.sort_unstable();
            if let Some(ps) = prev_sorted {
                if !sorted_leq(&sorted, ps) {
                    return false;
                }
            }
            // Columns to the left must each stay below this one, so no row
            // can absorb more than min(column sum, max entry) per column.
            let cap = *sorted.last().unwrap_or(&0);
            let headroom: usize = (1..j).map(|c| c.min(cap)).sum();
            if (0..self.k).any(|i| self.rem[i] - col[i] > headroom) {
                return false;
            }
            for (rem, &v) in self.rem.iter_mut().zip(col.iter()) {
                *rem -= v;
            }
            self.cols_rev.push(col.clone());
            if self.run(j - 1, Some(&sorted)) {
                return true;
            }
            self.cols_rev.pop();
            for (rem, &v) in self.rem.iter_mut().zip(col.iter()) {
                *rem += v;
            }
            return false;
        }
        let row = order[pos];
        let rest_cap: usize = order[pos + 1..].iter().map(|&r| self.rem[r]).sum();
        let hi = self.rem[row].min(left);
        for v in (0..=hi).rev() {
            if left - v > rest_cap {
                continue;
            }
            col[row] = v;
            if self.assign(j, order, pos + 1, left - v, col, prev_sorted) {
                return true;
            }
        }
        col[row] = 0;
        false
    }
}

/// Search for a matrix with row sums `d` (any order, entries may be zero),
/// column sums `1..=m`, and ascending columns. One always exists when the
/// sums match; the output is deterministic in `d` and `m`, canonicalized as
/// the first hit of a fixed right-to-left column search.
pub fn construct_ascending(d: &[usize], m: usize) -> Result<AscendingMatrix> {
    let k = d.len();
    let sum: usize = d.iter().sum();
    let expected = m * (m + 1) / 2;
    if sum != expected {
        return Err(Error::SumMismatch {
            sum,
            n: m,
            expected,
        });
    }
    if m == 0 {
        return AscendingMatrix::from_rows(vec![Vec::new(); k]);
    }
    let mut search = ColumnSearch {
        k,
        rem: d.to_vec(),
        cols_rev: Vec::new(),
    };
    if !search.run(m, None) {
        return Err(Error::SearchExhausted { d: d.to_vec(), m });
    }
    let mut rows = vec![vec![0usize; m]; k];
    for (offset, col) in search.cols_rev.iter().enumerate() {
        let j = m - 1 - offset;
        for i in 0..k {
            rows[i][j] = col[i];
        }
    }
    let a = AscendingMatrix::from_rows(rows)?;
    debug_assert!(a.is_valid(d, &ascending_sums(m)));
    Ok(a)
}

/// A matrix in the class of `(d, 1..=n)` with ascending columns and a
/// strictly positive staircase: entry `(i, j)` is at least one whenever
/// `i + j >= k + 1`. Requires the size condition `d[k-1-i] >= n - i`
/// (so in particular `k <= n`); the surplus `d_i - (n-k+i)` is routed
/// through [`construct_ascending`] into the last `n-k` columns, on top of
/// [`staircase_matrix`].
pub fn construct_with_support(d: &[usize], n: usize) -> Result<AscendingMatrix> {
    let k = d.len();
    assert!(d.windows(2).all(|w| w[0] <= w[1]), "d must be nondecreasing");
    for i in 0..k {
        let bound = n.saturating_sub(i);
        if d[k - 1 - i] < bound {
            return Err(Error::ConditionFailed {
                position: k - i,
                value: d[k - 1 - i],
                bound,
            });
        }
    }
    let sum: usize = d.iter().sum();
    let expected = n * (n + 1) / 2;
    if sum != expected {
        return Err(Error::SumMismatch {
            sum,
            n,
            expected,
        });
    }
    debug_assert!(k <= n, "the size condition pins k <= n");
    let surplus: Vec<usize> = (0..k).map(|i| d[i] - (n - k + i + 1)).collect();
    let core = construct_ascending(&surplus, n - k)?;
    let mut rows: Vec<Vec<usize>> = staircase_matrix(k, n).as_rows().to_vec();
    for (i, row) in rows.iter_mut().enumerate() {
        for j in 0..(n - k) {
            row[k + j] += core.entry(i + 1, j + 1);
        }
    }
    let a = AscendingMatrix::from_rows(rows)?;
    debug_assert!(a.is_valid(d, &ascending_sums(n)));
    debug_assert!((1..=k).all(|i| (1..=n).all(|j| i + j < k + 1 || a.entry(i, j) >= 1)));
    Ok(a)
}
