//! Subset sum in time governed by the largest element.
//!
//! The greedy prefix is within a few elements of an optimal subset, so it
//! suffices to decide which small signed correction `X` of the residual
//! multiset `Z` hits the residual target. Multiplicities are bundled into
//! powers of two and the layers are folded from the coarsest scale down,
//! truncating every intermediate sumset to a window of width
//! `O(w_max^1.5)`.

use std::collections::BTreeMap;

use crate::convolution::{all_subset_sums, difference_set, sumset, IntegerSet, SumsMode};
use crate::error::Result;
use crate::model::SubsetSumInstance;
use crate::stats::{Counters, Stats};

/// Default proximity constant.
pub const DEFAULT_PROXIMITY_C: u32 = 4;

/// `floor(sqrt(n))`.
pub fn isqrt(n: u128) -> u128 {
    let mut r = (n as f64).sqrt() as u128;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

/// Signed residual instance around the greedy prefix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ResidualSubsetSum {
    /// Positive entries may be added, negative entries removed.
    pub z: Vec<i64>,
    /// `t - t_prefix`, in `[0, w_max)`.
    pub t_star: i64,
    pub t_prefix: i64,
    pub w_max: i64,
}

/// Result of [`reduce_subset_sum`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Reduction {
    /// Every element not exceeding `t` fits at once; `total` is their sum.
    TrivialAll { total: i64 },
    Residual(ResidualSubsetSum),
}

/// Greedy prefix in input order, then the signed residual multiset with
/// multiplicities capped at `2 w_max`.
pub fn reduce_subset_sum(instance: &SubsetSumInstance) -> Result<Reduction> {
    let norm = crate::model::validate(&instance.to_knapsack())?;
    let t = instance.target;
    let elems: Vec<i64> = norm.items.iter().map(|it| it.weight).collect();
    if norm.trivial_all {
        return Ok(Reduction::TrivialAll {
            total: elems.iter().sum(),
        });
    }
    let w_max = norm.w_max();
    let mut t_prefix = 0;
    let mut cut = elems.len();
    for (k, &w) in elems.iter().enumerate() {
        if t_prefix + w > t {
            cut = k;
            break;
        }
        t_prefix += w;
    }
    let cap = 2 * w_max as usize;
    let mut seen: BTreeMap<i64, usize> = BTreeMap::new();
    let mut z = Vec::new();
    let signed = elems[cut..]
        .iter()
        .copied()
        .chain(elems[..cut].iter().map(|&w| -w));
    for v in signed {
        let c = seen.entry(v).or_insert(0);
        if *c < cap {
            *c += 1;
            z.push(v);
        }
    }
    Ok(Reduction::Residual(ResidualSubsetSum {
        z,
        t_star: t - t_prefix,
        t_prefix,
        w_max,
    }))
}

/// Exponents `e` such that the sums of subsets of `{2^e}` are exactly
/// `0..=k`. No exponent appears more than twice.
pub fn bundle_exponents(k: u64) -> Vec<u32> {
    if k == 0 {
        return Vec::new();
    }
    let m = 63 - (k + 1).leading_zeros();
    let mut out: Vec<u32> = (0..m).collect();
    let rest = k - ((1u64 << m) - 1);
    out.extend((0..m).filter(|&e| rest >> e & 1 == 1));
    out.sort_unstable();
    out
}

/// Residual elements split by scale. `layers[b]` holds unscaled values
/// standing for `2^b * value`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BundledLayers {
    pub layers: Vec<Vec<i64>>,
}

impl BundledLayers {
    /// Index of the top layer, `floor(log2(2 w_max))`.
    pub fn ell(&self) -> usize {
        self.layers.len() - 1
    }
}

/// Replace `k` copies of every value by `O(log k)` scaled copies.
pub fn binary_bundle(z: &[i64], w_max: i64) -> BundledLayers {
    let ell = (63 - (2 * w_max.max(1) as u64).leading_zeros()) as usize;
    let mut layers = vec![Vec::new(); ell + 1];
    let mut counts: BTreeMap<i64, u64> = BTreeMap::new();
    for &v in z {
        *counts.entry(v).or_insert(0) += 1;
    }
    for (&v, &k) in &counts {
        for e in bundle_exponents(k) {
            let e = e as usize;
            assert!(e <= ell, "multiplicity {k} exceeds the bundling range");
            layers[e].push(v);
        }
    }
    BundledLayers { layers }
}

/// Truncation radii `(T, S)` for the per-layer sums and the folded sets:
/// `floor(2 C w^1.5)` and `floor(5 C w^1.5)`.
pub fn radii(w_max: i64, c: u32) -> (i64, i64) {
    let w3 = (w_max as u128).pow(3);
    let c2 = (c as u128).pow(2);
    (isqrt(4 * c2 * w3) as i64, isqrt(25 * c2 * w3) as i64)
}

/// Fold the layers from the top scale down. Returns `S_0`, in which every
/// member is an attainable signed sum.
pub fn algorithm1(
    layers: &BundledLayers,
    w_max: i64,
    c: u32,
    mode: SumsMode,
    stats: &Stats,
) -> Result<IntegerSet> {
    let mut trace = algorithm1_trace(layers, w_max, c, mode, stats)?;
    Ok(trace.swap_remove(0))
}

/// Like [`algorithm1`], but returns every `S_b` for `b` in `0..=ell + 1`
/// (each in units of `2^b`).
pub fn algorithm1_trace(
    layers: &BundledLayers,
    w_max: i64,
    c: u32,
    mode: SumsMode,
    stats: &Stats,
) -> Result<Vec<IntegerSet>> {
    let (t_rad, s_rad) = radii(w_max, c);
    let ell = layers.ell();
    let mut sets = vec![IntegerSet::singleton(0); ell + 2];
    for beta in (0..=ell).rev() {
        let layer = &layers.layers[beta];
        let plus: Vec<i64> = layer.iter().copied().filter(|&v| v > 0).collect();
        let minus: Vec<i64> = layer.iter().filter(|&&v| v < 0).map(|&v| -v).collect();
        let mode_here = match mode {
            SumsMode::Randomized { seed } => SumsMode::Randomized {
                seed: seed ^ (beta as u64).wrapping_mul(0x9e37_79b9_7f4a_7c15),
            },
            m => m,
        };
        let tp = all_subset_sums(&plus, t_rad, mode_here)?;
        let tm = all_subset_sums(&minus, t_rad, mode_here)?;
        let t = difference_set(&tp, &tm)?;
        let up = sets[beta + 1].dilate(2);
        let s = sumset(&up, &t)?;
        stats.add_conv_len((t.range_len() + s.range_len()) as u64);
        sets[beta] = s.truncate(-s_rad, s_rad);
    }
    Ok(sets)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetSumOptions {
    pub proximity_c: u32,
    pub mode: SumsMode,
}

impl Default for SubsetSumOptions {
    fn default() -> Self {
        SubsetSumOptions {
            proximity_c: DEFAULT_PROXIMITY_C,
            mode: SumsMode::Deterministic,
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SubsetSumOutcome {
    /// Largest attainable sum not exceeding the target.
    pub value: i64,
    /// Whether the target itself is attainable.
    pub decision: bool,
    pub counters: Counters,
}

pub fn solve_subset_sum(
    instance: &SubsetSumInstance,
    options: &SubsetSumOptions,
) -> Result<SubsetSumOutcome> {
    let stats = Stats::new();
    let (value, decision) = match reduce_subset_sum(instance)? {
        Reduction::TrivialAll { total } => (total, total == instance.target),
        Reduction::Residual(r) => {
            let layers = binary_bundle(&r.z, r.w_max);
            let s0 = algorithm1(&layers, r.w_max, options.proximity_c, options.mode, &stats)?;
            let best = s0
                .max_at_most(r.t_star)
                .expect("the empty correction is always attainable");
            (r.t_prefix + best, s0.contains(r.t_star))
        }
    };
    Ok(SubsetSumOutcome {
        value,
        decision,
        counters: stats.snapshot(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn residual(elems: &[i64], t: i64) -> ResidualSubsetSum {
        match reduce_subset_sum(&SubsetSumInstance::new(t, elems.to_vec())).unwrap() {
            Reduction::Residual(r) => r,
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn reduce_examples() {
        let r = residual(&[3, 5, 7], 10);
        assert_eq!((r.t_prefix, r.t_star, r.z.clone()), (8, 2, vec![7, -3, -5]));
        let r = residual(&[6, 6], 7);
        assert_eq!((r.t_prefix, r.t_star, r.z.clone()), (6, 1, vec![6, -6]));
        assert_eq!(
            reduce_subset_sum(&SubsetSumInstance::new(4, vec![4])).unwrap(),
            Reduction::TrivialAll { total: 4 }
        );
    }

    #[test]
    fn reduce_caps_multiplicity() {
        let r = residual(&[1; 10], 3);
        // w_max = 1: at most two copies of each signed value survive.
        assert_eq!(r.z, vec![1, 1, -1, -1]);
    }

    #[test]
    fn bundle_examples() {
        assert_eq!(bundle_exponents(5), vec![0, 1, 1]);
        assert_eq!(bundle_exponents(1), vec![0]);
        assert_eq!(bundle_exponents(3), vec![0, 1]);
        assert_eq!(bundle_exponents(0), Vec::<u32>::new());
    }

    #[test]
    fn algorithm1_examples() {
        let stats = Stats::new();
        let layers = binary_bundle(&[3, -2], 3);
        assert_eq!(layers.ell(), 2);
        let s0 = algorithm1(&layers, 3, 1, SumsMode::Deterministic, &stats).unwrap();
        assert_eq!(s0.to_vec(), vec![-2, 0, 1, 3]);
        let empty = binary_bundle(&[], 1);
        let s0 = algorithm1(&empty, 1, 1, SumsMode::Deterministic, &stats).unwrap();
        assert_eq!(s0.to_vec(), vec![0]);
        let one = binary_bundle(&[1], 1);
        let s0 = algorithm1(&one, 1, 1, SumsMode::Deterministic, &stats).unwrap();
        assert!(s0.contains(0) && s0.contains(1));
    }

    #[test]
    fn solve_examples() {
        let o = SubsetSumOptions::default();
        let s = |e: &[i64], t| {
            let r = solve_subset_sum(&SubsetSumInstance::new(t, e.to_vec()), &o).unwrap();
            (r.value, r.decision)
        };
        assert_eq!(s(&[3, 5, 7], 10), (10, true));
        assert_eq!(s(&[3, 5, 7], 4), (3, false));
        assert_eq!(s(&[2, 2], 5), (4, false));
        assert_eq!(s(&[], 0), (0, true));
    }

    #[test]
    fn radii_use_exact_roots() {
        assert_eq!(radii(3, 1), (10, 25));
        assert_eq!(radii(4, 4), (64, 160));
        assert_eq!(isqrt(u64::MAX as u128), u32::MAX as u128);
    }
}
