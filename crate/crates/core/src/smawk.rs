//! Row maxima of convex Monge matrices in reverse falling staircase shape.
//!
//! Entries are [`Score`]s. The finite entries of every row form a prefix
//! and the finite entries of every column form a suffix. Under these
//! conditions the leftmost row maximum moves right as the row index grows,
//! so the answer fits in `n + 1` breakpoints.

use std::cell::Cell;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::profit::Score;

/// An `m x n` matrix given by an entry evaluator.
pub trait StaircaseMatrix {
    fn rows(&self) -> usize;
    fn cols(&self) -> usize;
    fn entry(&self, i: usize, j: usize) -> Score;
}

impl<T: StaircaseMatrix + ?Sized> StaircaseMatrix for &T {
    fn rows(&self) -> usize {
        (**self).rows()
    }
    fn cols(&self) -> usize {
        (**self).cols()
    }
    fn entry(&self, i: usize, j: usize) -> Score {
        (**self).entry(i, j)
    }
}

/// Matrix backed by a closure.
pub struct FnMatrix<F> {
    rows: usize,
    cols: usize,
    f: F,
}

impl<F: Fn(usize, usize) -> Score> FnMatrix<F> {
    pub fn new(rows: usize, cols: usize, f: F) -> Self {
        FnMatrix { rows, cols, f }
    }
}

impl<F: Fn(usize, usize) -> Score> StaircaseMatrix for FnMatrix<F> {
    fn rows(&self) -> usize {
        self.rows
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> Score {
        (self.f)(i, j)
    }
}

/// Dense matrix, mostly for tests and examples.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DenseMatrix {
    cols: usize,
    data: Vec<Score>,
}

impl DenseMatrix {
    pub fn from_rows(rows: Vec<Vec<Score>>) -> Self {
        let cols = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == cols), "ragged matrix");
        DenseMatrix {
            cols,
            data: rows.into_iter().flatten().collect(),
        }
    }

    /// Integer entries; `None` is bottom.
    pub fn from_ints(rows: &[&[Option<i64>]]) -> Self {
        Self::from_rows(
            rows.iter()
                .map(|r| {
                    r.iter()
                        .map(|v| v.map_or(Score::Bottom, |x| Score::plain(x as i128)))
                        .collect()
                })
                .collect(),
        )
    }
}

impl StaircaseMatrix for DenseMatrix {
    fn rows(&self) -> usize {
        self.data.len().checked_div(self.cols).unwrap_or(0)
    }
    fn cols(&self) -> usize {
        self.cols
    }
    fn entry(&self, i: usize, j: usize) -> Score {
        self.data[i * self.cols + j]
    }
}

/// Wrapper that counts entry evaluations.
pub struct Counted<M> {
    inner: M,
    count: Cell<u64>,
}

impl<M: StaircaseMatrix> Counted<M> {
    pub fn new(inner: M) -> Self {
        Counted {
            inner,
            count: Cell::new(0),
        }
    }

    pub fn evaluations(&self) -> u64 {
        self.count.get()
    }
}

impl<M: StaircaseMatrix> StaircaseMatrix for Counted<M> {
    fn rows(&self) -> usize {
        self.inner.rows()
    }
    fn cols(&self) -> usize {
        self.inner.cols()
    }
    fn entry(&self, i: usize, j: usize) -> Score {
        self.count.set(self.count.get() + 1);
        self.inner.entry(i, j)
    }
}

/// Leftmost row maxima as breakpoints.
///
/// Rows `starts[j]..starts[j + 1]` have column `j` as leftmost maximum.
/// Rows whose entries are all bottom are reported as column 0.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RowMaxima {
    starts: Vec<usize>,
}

impl RowMaxima {
    pub fn starts(&self) -> &[usize] {
        &self.starts
    }

    pub fn rows(&self) -> usize {
        *self.starts.last().unwrap()
    }

    pub fn cols(&self) -> usize {
        self.starts.len() - 1
    }

    /// Rows won by column `j`.
    pub fn rows_of(&self, j: usize) -> std::ops::Range<usize> {
        self.starts[j]..self.starts[j + 1]
    }

    pub fn argmax(&self, i: usize) -> usize {
        assert!(i < self.rows());
        self.starts.partition_point(|&s| s <= i) - 1
    }

    /// Per-row answers.
    pub fn expand(&self) -> Vec<usize> {
        let mut out = Vec::with_capacity(self.rows());
        for j in 0..self.cols() {
            out.extend(self.rows_of(j).map(|_| j));
        }
        out
    }

    /// Build from `(first_row, column)` runs in increasing order.
    fn from_runs(runs: &[(usize, usize)], m: usize, n: usize) -> Self {
        let mut starts = vec![m; n + 1];
        starts[0] = 0;
        // Column j starts at the first row whose answer is >= j.
        let mut next_col = 1;
        for &(row, col) in runs {
            while next_col <= col {
                starts[next_col] = row;
                next_col += 1;
            }
        }
        RowMaxima { starts }
    }
}

/// Leftmost row maxima of a convex Monge staircase matrix using
/// `O(n (1 + log(m / n)))` entry evaluations.
///
/// Output is unspecified if the matrix is not Monge or not a staircase.
pub fn smawk_compact<M: StaircaseMatrix>(view: &M) -> Result<RowMaxima> {
    let (m, n) = (view.rows(), view.cols());
    if m == 0 || n == 0 {
        return Err(Error::Dimension { rows: m, cols: n });
    }
    let mut runs = if m <= 2 * n {
        let rows: Vec<usize> = (0..m).collect();
        let cols: Vec<usize> = (0..n).collect();
        let mut ans = vec![0; m];
        smawk_rec(view, &rows, &cols, &mut ans);
        runs_of(ans.iter().copied().enumerate())
    } else {
        tall_runs(view)
    };
    fix_bottom_prefix(view, &mut runs);
    Ok(RowMaxima::from_runs(&runs, m, n))
}

/// Collapse `(row, col)` pairs into runs of equal column.
fn runs_of(it: impl Iterator<Item = (usize, usize)>) -> Vec<(usize, usize)> {
    let mut runs: Vec<(usize, usize)> = Vec::new();
    for (row, col) in it {
        if runs.last().is_none_or(|&(_, c)| c != col) {
            runs.push((row, col));
        }
    }
    runs
}

/// Rows with no finite entry form a prefix. Assign them to column 0.
fn fix_bottom_prefix<M: StaircaseMatrix>(view: &M, runs: &mut Vec<(usize, usize)>) {
    let m = view.rows();
    // A row has a finite entry iff its first entry is finite.
    let (mut lo, mut hi) = (0, m);
    while lo < hi {
        let mid = (lo + hi) / 2;
        if view.entry(mid, 0).is_finite() {
            hi = mid;
        } else {
            lo = mid + 1;
        }
    }
    let f = lo;
    if f == 0 {
        return;
    }
    let mut fixed = vec![(0, 0)];
    for (k, &(row, col)) in runs.iter().enumerate() {
        let end = runs.get(k + 1).map_or(m, |&(r, _)| r);
        if end > f {
            fixed.push((row.max(f), col));
        }
    }
    *runs = runs_of(fixed.into_iter());
}

fn smawk_rec<M: StaircaseMatrix>(view: &M, rows: &[usize], cols: &[usize], ans: &mut [usize]) {
    if rows.is_empty() {
        return;
    }
    let mut stack: Vec<usize> = Vec::with_capacity(rows.len());
    for &c in cols {
        while let Some(&top) = stack.last() {
            let r = rows[stack.len() - 1];
            if view.entry(r, top) < view.entry(r, c) {
                stack.pop();
            } else {
                break;
            }
        }
        if stack.len() < rows.len() {
            stack.push(c);
        }
    }
    let cols = stack;
    let odd: Vec<usize> = rows.iter().skip(1).step_by(2).copied().collect();
    smawk_rec(view, &odd, &cols, ans);
    let mut k = 0;
    for idx in (0..rows.len()).step_by(2) {
        let r = rows[idx];
        let stop = if idx + 1 < rows.len() {
            ans[rows[idx + 1]]
        } else {
            *cols.last().unwrap()
        };
        let mut best = cols[k];
        let mut best_val = view.entry(r, best);
        while cols[k] != stop {
            k += 1;
            let v = view.entry(r, cols[k]);
            if v > best_val {
                best = cols[k];
                best_val = v;
            }
        }
        ans[r] = best;
    }
}

/// Tall matrices: solve sampled rows, then fill each gap between samples
/// with an upper envelope of the few candidate columns.
fn tall_runs<M: StaircaseMatrix>(view: &M) -> Vec<(usize, usize)> {
    let (m, n) = (view.rows(), view.cols());
    let step = m.div_ceil(n);
    let mut samples: Vec<usize> = (0..m).step_by(step).collect();
    if *samples.last().unwrap() != m - 1 {
        samples.push(m - 1);
    }
    let cols: Vec<usize> = (0..n).collect();
    let mut ans = vec![0; m];
    smawk_rec(view, &samples, &cols, &mut ans);

    let mut pairs: Vec<(usize, usize)> = Vec::new();
    for w in samples.windows(2) {
        let (a, b) = (w[0], w[1]);
        pairs.push((a, ans[a]));
        if b > a + 1 {
            envelope(view, a + 1, b, ans[a], ans[b], &mut pairs);
        }
    }
    let last = *samples.last().unwrap();
    pairs.push((last, ans[last]));
    runs_of(pairs.into_iter())
}

/// Leftmost maxima of rows `lo..hi` over columns `c0..=c1`, appended as
/// `(first_row, col)` runs.
fn envelope<M: StaircaseMatrix>(
    view: &M,
    lo: usize,
    hi: usize,
    c0: usize,
    c1: usize,
    out: &mut Vec<(usize, usize)>,
) {
    // (column, first row where it is the leftmost maximum)
    let mut stack: Vec<(usize, usize)> = Vec::new();
    for c in c0..=c1 {
        while let Some(&(top, start)) = stack.last() {
            if view.entry(start, top) < view.entry(start, c) {
                stack.pop();
            } else {
                break;
            }
        }
        match stack.last() {
            None => stack.push((c, lo)),
            Some(&(top, start)) => {
                // First row in (start, hi) where c strictly beats top.
                let (mut l, mut h) = (start + 1, hi);
                while l < h {
                    let mid = l + (h - l) / 2;
                    if view.entry(mid, top) < view.entry(mid, c) {
                        h = mid;
                    } else {
                        l = mid + 1;
                    }
                }
                if l < hi {
                    stack.push((c, l));
                }
            }
        }
    }
    out.extend(stack.into_iter().map(|(c, s)| (s, c)));
}

/// A violated 2x2 minor: rows `(i, i2)`, columns `(j, j2)`, 0-based.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct MongeViolation {
    pub rows: (usize, usize),
    pub cols: (usize, usize),
}

fn minor_holds<M: StaircaseMatrix>(view: &M, i: usize, i2: usize, j: usize, j2: usize) -> bool {
    let rhs = view.entry(i, j2) + view.entry(i2, j);
    if !rhs.is_finite() {
        return true;
    }
    view.entry(i, j) + view.entry(i2, j2) >= rhs
}

/// Check the convex Monge inequality. All adjacent minors are checked when
/// `m * n <= budget`; otherwise `budget` random minors are drawn from a
/// generator seeded with `seed`.
pub fn verify_monge<M: StaircaseMatrix>(
    view: &M,
    budget: usize,
    seed: u64,
) -> std::result::Result<(), MongeViolation> {
    let (m, n) = (view.rows(), view.cols());
    if m < 2 || n < 2 {
        return Ok(());
    }
    let violation = |i, i2, j, j2| MongeViolation {
        rows: (i, i2),
        cols: (j, j2),
    };
    if m.saturating_mul(n) <= budget {
        for i in 0..m - 1 {
            for j in 0..n - 1 {
                if !minor_holds(view, i, i + 1, j, j + 1) {
                    return Err(violation(i, i + 1, j, j + 1));
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..budget {
            let i = rng.gen_range(0..m - 1);
            let i2 = rng.gen_range(i + 1..m);
            let j = rng.gen_range(0..n - 1);
            let j2 = rng.gen_range(j + 1..n);
            if !minor_holds(view, i, i2, j, j2) {
                return Err(violation(i, i2, j, j2));
            }
        }
    }
    Ok(())
}
