//! The residual instance around the greedy prefix: one concave profile per
//! signed weight.

use std::collections::BTreeMap;

use super::profile::ConcaveProfile;
use super::tiebreak::{Prefix, TieBrokenInstance};
use crate::profit::AdjustedProfit;
use crate::subset_sum::isqrt;

#[derive(Clone, Debug)]
pub struct ProximityInstance {
    /// Signed weights in increasing order. `+w` adds items of weight `w`
    /// outside the prefix, `-w` removes items of weight `w` inside it.
    pub keys: Vec<i64>,
    pub profiles: Vec<ConcaveProfile>,
    /// Item positions (0-based) behind each key, in profile order.
    pub members: Vec<Vec<usize>>,
    pub t_star: i64,
    pub w_max: i64,
    /// Support bound for base solutions.
    pub b0: usize,
    /// Bound on the size of an optimal correction.
    pub b1: usize,
    /// Penalty `M` per unit beyond the real items of a key.
    pub penalty: AdjustedProfit,
}

impl ProximityInstance {
    pub fn key_index(&self, key: i64) -> Option<usize> {
        self.keys.binary_search(&key).ok()
    }
}

/// `ceil(2 c sqrt(w))`.
pub fn support_bound(w_max: i64, c: u32) -> usize {
    let v = 4 * (c as u128).pow(2) * w_max as u128;
    let r = isqrt(v);
    (if r * r < v { r + 1 } else { r }) as usize
}

pub fn build_proximity_instance(
    instance: &TieBrokenInstance,
    prefix: &Prefix,
    c: u32,
) -> ProximityInstance {
    let n = instance.items.len();
    let w = instance.w_max;
    let b1 = n.min(2 * w as usize);
    let b0 = support_bound(w, c).min(b1);
    let mut penalty = AdjustedProfit::plain(1);
    for it in &instance.items {
        penalty += it.profit;
    }

    let mut groups: BTreeMap<i64, Vec<usize>> = BTreeMap::new();
    for (k, it) in instance.items.iter().enumerate() {
        let key = if prefix.in_prefix[k] { -it.weight } else { it.weight };
        groups.entry(key).or_default().push(k);
    }
    let mut keys = Vec::new();
    let mut profiles = Vec::new();
    let mut members = Vec::new();
    for (key, mut ks) in groups {
        let profit = |k: &usize| instance.items[*k].profit;
        if key > 0 {
            ks.sort_by_key(|k| std::cmp::Reverse(profit(k)));
        } else {
            ks.sort_by_key(profit);
        }
        ks.truncate(b1);
        let incs: Vec<AdjustedProfit> = ks
            .iter()
            .map(|k| if key > 0 { profit(k) } else { -profit(k) })
            .collect();
        keys.push(key);
        profiles.push(ConcaveProfile::new(&incs, penalty));
        members.push(ks);
    }
    ProximityInstance {
        keys,
        profiles,
        members,
        t_star: prefix.t_star,
        w_max: w,
        b0,
        b1,
        penalty,
    }
}
