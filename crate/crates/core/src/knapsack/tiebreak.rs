//! Tie-broken profits and the greedy prefix.

use std::cmp::Ordering;

use crate::model::{ItemSelection, KnapsackInstance};
use crate::profit::AdjustedProfit;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TieBrokenItem {
    pub weight: i64,
    pub profit: AdjustedProfit,
}

/// Instance whose items have pairwise distinct profits and efficiencies.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TieBrokenInstance {
    pub capacity: i64,
    pub w_max: i64,
    pub items: Vec<TieBrokenItem>,
}

/// Item `i` (1-based) with profit `p` gets the pair `(p, i * w_max + 1)`.
pub fn break_ties(instance: &KnapsackInstance) -> TieBrokenInstance {
    let w_max = instance.w_max();
    let items = instance
        .items
        .iter()
        .enumerate()
        .map(|(k, it)| TieBrokenItem {
            weight: it.weight,
            profit: AdjustedProfit::new(it.profit as i128, (k as i128 + 1) * w_max as i128 + 1),
        })
        .collect();
    TieBrokenInstance {
        capacity: instance.capacity,
        w_max,
        items,
    }
}

/// Compare `a.profit / a.weight` with `b.profit / b.weight`.
pub fn efficiency_cmp(a: &TieBrokenItem, b: &TieBrokenItem) -> Ordering {
    a.profit
        .scale(b.weight as i128)
        .cmp(&b.profit.scale(a.weight as i128))
}

/// The greedy prefix solution.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Prefix {
    /// Item positions (0-based) by strictly decreasing efficiency.
    pub order: Vec<usize>,
    /// Number of leading items of `order` taken.
    pub len: usize,
    /// `in_prefix[k]` for item position `k`.
    pub in_prefix: Vec<bool>,
    /// Capacity left over, in `[0, w_max)` when not all items fit.
    pub t_star: i64,
}

impl Prefix {
    /// Taken items as 1-based indices.
    pub fn selection(&self) -> ItemSelection {
        let mut v: Vec<usize> = self.order[..self.len].iter().map(|&k| k + 1).collect();
        v.sort_unstable();
        ItemSelection::from_sorted(v)
    }
}

/// Take items by decreasing efficiency until the next one does not fit.
pub fn maximal_prefix(instance: &TieBrokenInstance) -> Prefix {
    let mut order: Vec<usize> = (0..instance.items.len()).collect();
    order.sort_by(|&a, &b| efficiency_cmp(&instance.items[b], &instance.items[a]));
    let mut used = 0;
    let mut len = order.len();
    for (pos, &k) in order.iter().enumerate() {
        let w = instance.items[k].weight;
        if used + w > instance.capacity {
            len = pos;
            break;
        }
        used += w;
    }
    let mut in_prefix = vec![false; order.len()];
    for &k in &order[..len] {
        in_prefix[k] = true;
    }
    Prefix {
        order,
        len,
        in_prefix,
        t_star: instance.capacity - used,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_encoding() {
        let tb = break_ties(&KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]));
        assert_eq!(tb.items[0].profit, AdjustedProfit::new(3, 4));
        assert_eq!(tb.items[1].profit, AdjustedProfit::new(4, 7));
    }

    #[test]
    fn equal_raw_efficiency_is_separated() {
        let tb = break_ties(&KnapsackInstance::from_pairs(9, &[(2, 6), (1, 3)]));
        // 6 * 1 = 3 * 2 on the main part; 4 * 1 < 7 * 2 decides.
        assert_eq!(efficiency_cmp(&tb.items[0], &tb.items[1]), Ordering::Less);
    }

    #[test]
    fn prefix_examples() {
        let p = maximal_prefix(&break_ties(&KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)])));
        assert_eq!((p.order.clone(), p.selection().as_slice().to_vec(), p.t_star), (vec![0, 1], vec![1], 2));
        let p = maximal_prefix(&break_ties(&KnapsackInstance::from_pairs(6, &[(5, 1), (2, 9)])));
        assert_eq!((p.order.clone(), p.selection().as_slice().to_vec(), p.t_star), (vec![1, 0], vec![2], 4));
        let p = maximal_prefix(&break_ties(&KnapsackInstance::from_pairs(3, &[(2, 3)])));
        assert_eq!((p.selection().as_slice().to_vec(), p.t_star), (vec![1], 1));
    }
}
