//! Slow reference implementations.
//!
//! Nothing here calls into the fast solvers; these functions are what the
//! fast solvers are tested against.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::model::{ItemSelection, KnapsackInstance};
use crate::smawk::StaircaseMatrix;

/// Largest instance accepted by [`brute_force_knapsack`].
pub const BRUTE_FORCE_MAX_ITEMS: usize = 24;

/// Default cell budget for [`bellman_dp`] (`n * (t + 1)` cells).
pub const DEFAULT_CELL_BUDGET: u128 = 1 << 31;

/// Optimal profit for every capacity `0..=t`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CapacityProfile {
    pub opt: Vec<i64>,
}

impl CapacityProfile {
    /// Optimum at the full capacity.
    pub fn value(&self) -> i64 {
        *self.opt.last().unwrap()
    }
}

/// `true` if `a` is lexicographically smaller than `b` as sorted index
/// lists (bit `k` stands for item `k + 1`).
fn lex_less(a: u32, b: u32) -> bool {
    let diff = a ^ b;
    if diff == 0 {
        return false;
    }
    let low = diff.trailing_zeros();
    let above = if low >= 31 { 0 } else { !0u32 << (low + 1) };
    if a >> low & 1 == 1 {
        // b skipped `low`; a is smaller unless b stops before it.
        b & above != 0
    } else {
        a & above == 0
    }
}

/// Exhaustive search over all `2^n` subsets. Ties go to the
/// lexicographically smallest index set.
pub fn brute_force_knapsack(instance: &KnapsackInstance) -> Result<(i64, ItemSelection)> {
    let n = instance.items.len();
    if n > BRUTE_FORCE_MAX_ITEMS {
        return Err(Error::SizeLimit {
            n,
            limit: BRUTE_FORCE_MAX_ITEMS,
        });
    }
    let t = instance.capacity;
    let (mut weight, mut profit) = (0i64, 0i64);
    let mut mask = 0u32;
    let (mut best, mut best_mask) = (0i64, 0u32);
    for k in 1u32..(1u32 << n) {
        let bit = k.trailing_zeros();
        let it = instance.items[bit as usize];
        mask ^= 1 << bit;
        if mask >> bit & 1 == 1 {
            weight += it.weight;
            profit += it.profit;
        } else {
            weight -= it.weight;
            profit -= it.profit;
        }
        if weight <= t && (profit > best || (profit == best && lex_less(mask, best_mask))) {
            best = profit;
            best_mask = mask;
        }
    }
    let sel: Vec<usize> = (0..n).filter(|&k| best_mask >> k & 1 == 1).map(|k| k + 1).collect();
    Ok((best, ItemSelection::new(sel, n)?))
}

fn check_cells(instance: &KnapsackInstance, budget: u128) -> Result<usize> {
    if instance.capacity < 0 {
        return Err(Error::Malformed("negative capacity".into()));
    }
    let cols = instance.capacity as u128 + 1;
    let needed = cols * (instance.items.len() as u128).max(1);
    if needed > budget {
        return Err(Error::Budget { needed, budget });
    }
    Ok(cols as usize)
}

/// Textbook `O(n t)` dynamic program over capacities.
pub fn bellman_dp(instance: &KnapsackInstance) -> Result<CapacityProfile> {
    bellman_dp_with_budget(instance, DEFAULT_CELL_BUDGET)
}

pub fn bellman_dp_with_budget(instance: &KnapsackInstance, budget: u128) -> Result<CapacityProfile> {
    let cols = check_cells(instance, budget)?;
    let mut opt = vec![0i64; cols];
    for it in &instance.items {
        let w = it.weight as usize;
        if w >= cols {
            continue;
        }
        for c in (w..cols).rev() {
            let cand = opt[c - w] + it.profit;
            if cand > opt[c] {
                opt[c] = cand;
            }
        }
    }
    Ok(CapacityProfile { opt })
}

/// Bellman DP that also returns an optimal selection, recovered from a
/// bit table of `n * (t + 1)` decisions.
pub fn bellman_select(instance: &KnapsackInstance) -> Result<(i64, ItemSelection)> {
    bellman_select_with_budget(instance, DEFAULT_CELL_BUDGET)
}

pub fn bellman_select_with_budget(
    instance: &KnapsackInstance,
    budget: u128,
) -> Result<(i64, ItemSelection)> {
    let cols = check_cells(instance, budget)?;
    let n = instance.items.len();
    let words = cols.div_ceil(64);
    let mut took = vec![0u64; words * n];
    let mut opt = vec![0i64; cols];
    for (k, it) in instance.items.iter().enumerate() {
        let w = it.weight as usize;
        if w >= cols {
            continue;
        }
        let row = &mut took[k * words..(k + 1) * words];
        for c in (w..cols).rev() {
            let cand = opt[c - w] + it.profit;
            if cand > opt[c] {
                opt[c] = cand;
                row[c / 64] |= 1 << (c % 64);
            }
        }
    }
    let mut c = cols - 1;
    let mut sel = Vec::new();
    for k in (0..n).rev() {
        if took[k * words + c / 64] >> (c % 64) & 1 == 1 {
            sel.push(k + 1);
            c -= instance.items[k].weight as usize;
        }
    }
    sel.reverse();
    Ok((opt[cols - 1], ItemSelection::new(sel, n)?))
}

/// Subset sums of `elements` in `[0, t]` by word-level shift-or.
/// Entry `s` of the result is `true` iff `s` is attainable.
pub fn bitset_subset_sums(elements: &[i64], t: i64) -> Result<Vec<bool>> {
    if t < 0 {
        return Ok(Vec::new());
    }
    let len = t as u128 + 1;
    if len > DEFAULT_CELL_BUDGET {
        return Err(Error::Budget {
            needed: len,
            budget: DEFAULT_CELL_BUDGET,
        });
    }
    let len = len as usize;
    let words = len.div_ceil(64);
    let mut bits = vec![0u64; words];
    bits[0] = 1;
    for &a in elements {
        if a <= 0 || a as usize >= len {
            continue;
        }
        let a = a as usize;
        let (ws, bs) = (a / 64, a % 64);
        for i in (ws..words).rev() {
            let mut v = bits[i - ws] << bs;
            if bs > 0 && i > ws {
                v |= bits[i - ws - 1] >> (64 - bs);
            }
            bits[i] |= v;
        }
    }
    Ok((0..len).map(|s| bits[s / 64] >> (s % 64) & 1 == 1).collect())
}

/// Leftmost row maxima by scanning every entry. `None` marks rows with
/// no finite entry.
pub fn naive_row_maxima<M: StaircaseMatrix>(view: &M) -> Vec<Option<usize>> {
    (0..view.rows())
        .map(|i| {
            let mut best: Option<(usize, crate::profit::Score)> = None;
            for j in 0..view.cols() {
                let v = view.entry(i, j);
                if v.is_finite() && best.is_none_or(|(_, b)| v > b) {
                    best = Some((j, v));
                }
            }
            best.map(|(j, _)| j)
        })
        .collect()
}

/// Distance between a prefix selection `p` and a solution `q`:
/// `(|p - q| + |q - p|, distinct weights in p - q + distinct weights in q - p)`.
pub fn proximity_check(
    p: &ItemSelection,
    q: &ItemSelection,
    instance: &KnapsackInstance,
) -> (usize, usize) {
    let only_p: Vec<usize> = p.iter().filter(|&i| !q.contains(i)).collect();
    let only_q: Vec<usize> = q.iter().filter(|&i| !p.contains(i)).collect();
    let support = |idx: &[usize]| {
        idx.iter()
            .map(|&i| instance.items[i - 1].weight)
            .collect::<BTreeSet<_>>()
            .len()
    };
    (
        only_p.len() + only_q.len(),
        support(&only_p) + support(&only_q),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::Item;
    use crate::profit::Score;
    use crate::smawk::DenseMatrix;

    fn sel(v: &[usize], n: usize) -> ItemSelection {
        ItemSelection::new(v.to_vec(), n).unwrap()
    }

    #[test]
    fn brute_force_examples() {
        let k = KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]);
        assert_eq!(brute_force_knapsack(&k).unwrap(), (4, sel(&[2], 2)));
        let k = KnapsackInstance::from_pairs(5, &[(2, 3), (3, 4)]);
        assert_eq!(brute_force_knapsack(&k).unwrap(), (7, sel(&[1, 2], 2)));
        let k = KnapsackInstance::from_pairs(0, &[(2, 3), (3, 4)]);
        assert_eq!(brute_force_knapsack(&k).unwrap(), (0, ItemSelection::empty()));
        let big = KnapsackInstance::new(1, vec![Item::new(1, 1); 25]);
        assert!(matches!(brute_force_knapsack(&big), Err(Error::SizeLimit { .. })));
    }

    #[test]
    fn brute_force_prefers_lexicographically_smallest() {
        // {1,2} and {3} both give 4; {1,2} < {3}.
        let k = KnapsackInstance::from_pairs(2, &[(1, 2), (1, 2), (2, 4)]);
        assert_eq!(brute_force_knapsack(&k).unwrap().1, sel(&[1, 2], 3));
        // {1} and {1,2} both give 5 (item 2 is worthless); {1} < {1,2}.
        let k = KnapsackInstance::from_pairs(5, &[(1, 5), (1, 0)]);
        assert_eq!(brute_force_knapsack(&k).unwrap().1, sel(&[1], 2));
        assert!(lex_less(0b011, 0b100));
        assert!(lex_less(0b001, 0b011));
        assert!(!lex_less(0b011, 0b001));
        assert!(lex_less(0, 0b1));
    }

    #[test]
    fn bellman_examples() {
        let k = KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]);
        assert_eq!(bellman_dp(&k).unwrap().opt, vec![0, 0, 3, 4, 4]);
        let k = KnapsackInstance::from_pairs(5, &[]);
        assert_eq!(bellman_dp(&k).unwrap().opt, vec![0; 6]);
        let k = KnapsackInstance::from_pairs(2, &[(1, 1), (1, 1), (1, 1)]);
        assert_eq!(bellman_dp(&k).unwrap().opt, vec![0, 1, 2]);
        let (v, s) = bellman_select(&KnapsackInstance::from_pairs(5, &[(2, 3), (3, 4)])).unwrap();
        assert_eq!((v, s), (7, sel(&[1, 2], 2)));
    }

    #[test]
    fn bellman_budget() {
        let k = KnapsackInstance::from_pairs(1000, &[(1, 1); 10]);
        assert!(matches!(
            bellman_dp_with_budget(&k, 100),
            Err(Error::Budget { .. })
        ));
    }

    #[test]
    fn subset_sum_examples() {
        let set = |v: Vec<bool>| -> Vec<usize> {
            v.iter().enumerate().filter(|(_, &b)| b).map(|(i, _)| i).collect()
        };
        assert_eq!(set(bitset_subset_sums(&[2, 3], 5).unwrap()), vec![0, 2, 3, 5]);
        assert_eq!(set(bitset_subset_sums(&[], 10).unwrap()), vec![0]);
        assert_eq!(set(bitset_subset_sums(&[3, 3], 7).unwrap()), vec![0, 3, 6]);
        assert_eq!(set(bitset_subset_sums(&[100], 200).unwrap()), vec![0, 100]);
    }

    #[test]
    fn row_maxima_examples() {
        let a = DenseMatrix::from_ints(&[&[Some(5), Some(1)], &[Some(5), Some(9)]]);
        assert_eq!(naive_row_maxima(&a), vec![Some(0), Some(1)]);
        let b = DenseMatrix::from_ints(&[&[Some(7)]]);
        assert_eq!(naive_row_maxima(&b), vec![Some(0)]);
        let c = DenseMatrix::from_rows(vec![vec![Score::Bottom, Score::Bottom]]);
        assert_eq!(naive_row_maxima(&c), vec![None]);
    }

    #[test]
    fn proximity_examples() {
        let k = KnapsackInstance::from_pairs(10, &[(2, 1), (3, 1), (5, 1)]);
        assert_eq!(proximity_check(&sel(&[1], 3), &sel(&[1], 3), &k), (0, 0));
        assert_eq!(proximity_check(&sel(&[1], 3), &sel(&[2], 3), &k), (2, 2));
        let k = KnapsackInstance::from_pairs(10, &[(1, 1), (5, 1), (5, 2)]);
        assert_eq!(proximity_check(&sel(&[1, 2], 3), &sel(&[1, 3], 3), &k), (2, 2));
    }
}
