//! The complete knapsack pipeline.

use std::sync::Arc;

use super::base::prepare_base_solutions;
use super::color::large_b_extend;
use super::extend::{ExtendContext, WeakExtendInstance};
use super::proximity::{build_proximity_instance, ProximityInstance};
use super::tiebreak::{break_ties, maximal_prefix};
use crate::error::{Error, Result};
use crate::model::{validate, ItemSelection, KnapsackInstance};
use crate::oracles::bellman_select;
use crate::profit::{AdjustedProfit, Score};
use crate::stats::{Counters, Stats};
use crate::subset_sum::DEFAULT_PROXIMITY_C;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum KnapsackAlgo {
    /// Proximity search unless the capacity DP is predicted to be cheaper.
    #[default]
    Auto,
    Proximity,
    Bellman,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct KnapsackOptions {
    pub algo: KnapsackAlgo,
    pub proximity_c: u32,
}

impl Default for KnapsackOptions {
    fn default() -> Self {
        KnapsackOptions {
            algo: KnapsackAlgo::Auto,
            proximity_c: DEFAULT_PROXIMITY_C,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackOutcome {
    pub value: i64,
    /// Original 1-based indices.
    pub selection: ItemSelection,
    /// The algorithm that actually ran.
    pub algo: KnapsackAlgo,
    pub counters: Counters,
}

/// Best correction of the prefix: `counts[k]` units of key `k`, with total
/// weight `weight <= t_star`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Correction {
    pub gain: AdjustedProfit,
    pub weight: i64,
    pub counts: Vec<u32>,
}

/// Solve the residual instance: base solutions, extension along positive
/// keys, then along negative keys on the reflected index range.
pub fn solve_proximity(prox: &ProximityInstance, stats: &Stats) -> Result<Correction> {
    let w = prox.w_max;
    let nk = prox.keys.len();
    let gains: Vec<AdjustedProfit> = prox.profiles.iter().map(|p| p.value(1)).collect();
    let base = prepare_base_solutions(&prox.keys, &gains, prox.b0, w);
    let half = prox.b1 as i64 * w;
    let len = (2 * half + 1) as usize;

    let mut q = vec![Score::Bottom; len];
    let mut handles = vec![0u32; len];
    for (u, (qv, hv)) in q.iter_mut().zip(handles.iter_mut()).enumerate() {
        if let Some((s, h)) = base.get(u as i64 - half) {
            *qv = s;
            *hv = h;
        }
    }
    let ctx = ExtendContext::new(&prox.keys, prox.profiles.iter().map(|p| p.shifted(1)).collect());
    let table = Arc::new(base.table.clone());
    let positive: Vec<u32> = (0..nk as u32).filter(|&k| prox.keys[k as usize] > 0).collect();
    let negative: Vec<u32> = (0..nk as u32).filter(|&k| prox.keys[k as usize] < 0).collect();

    let first = WeakExtendInstance {
        universe: positive,
        q,
        handles,
        table: Arc::clone(&table),
    };
    let sol1 = large_b_extend(&ctx, &first, stats)?;
    let second = WeakExtendInstance {
        universe: negative,
        q: (0..len).map(|v| sol1.r[len - 1 - v]).collect(),
        handles: (0..len)
            .map(|v| first.handles[sol1.z[len - 1 - v] as usize])
            .collect(),
        table,
    };
    let sol2 = large_b_extend(&ctx, &second, stats)?;

    let top = ((prox.t_star + half) as usize).min(len - 1);
    let mut best = half as usize;
    for u in 0..=top {
        if sol2.r[len - 1 - u] > sol2.r[len - 1 - best] {
            best = u;
        }
    }
    let gain = sol2.r[len - 1 - best]
        .finite()
        .ok_or_else(|| Error::Contract("empty correction lost".into()))?;

    let mut counts = vec![0u32; nk];
    let (z2, x2) = sol2.extension(len - 1 - best);
    let (z1, x1) = sol1.extension(len - 1 - z2);
    let base_set = first.table.get(first.handles[z1]);
    for &k in base_set {
        counts[k as usize] = 1;
    }
    for (k, c) in x1.into_iter().chain(x2) {
        if !base_set.contains(&k) {
            return Err(Error::Contract(format!("key {} extended outside its base support", prox.keys[k as usize])));
        }
        counts[k as usize] += c;
    }

    let weight: i64 = counts.iter().zip(&prox.keys).map(|(&c, &k)| c as i64 * k).sum();
    let mut value = AdjustedProfit::ZERO;
    for (k, &c) in counts.iter().enumerate() {
        if c as usize > prox.profiles[k].items() {
            return Err(Error::Contract(format!("key {} used {c} times", prox.keys[k])));
        }
        value += prox.profiles[k].value(c as usize);
    }
    if weight != best as i64 - half || value != gain || weight > prox.t_star {
        return Err(Error::Contract(format!(
            "reconstruction mismatch: weight {weight}, value {value}, reported {gain}"
        )));
    }
    Ok(Correction {
        gain,
        weight,
        counts,
    })
}

/// Whether the capacity DP is predicted to beat proximity search.
fn prefer_bellman(prox: &ProximityInstance, n: usize, t: i64) -> bool {
    let work = prox.b0 as u128 * prox.w_max as u128 * (prox.keys.len() + prox.b1) as u128;
    work >= n as u128 * t.max(1) as u128
}

/// Exact 0-1 knapsack. The returned selection is feasible and its profit is
/// the optimum.
pub fn solve_01_knapsack(
    instance: &KnapsackInstance,
    options: &KnapsackOptions,
) -> Result<KnapsackOutcome> {
    if options.proximity_c == 0 {
        return Err(Error::BadParameter("proximity constant must be positive".into()));
    }
    let norm = validate(instance)?;
    let stats = Stats::new();
    let finish = |local: Vec<usize>, algo| {
        let selection = norm.to_original(local);
        KnapsackOutcome {
            value: instance.profit_of(&selection),
            selection,
            algo,
            counters: stats.snapshot(),
        }
    };
    if norm.trivial_all {
        return Ok(finish((1..=norm.len()).collect(), options.algo));
    }
    let local = norm.as_knapsack();
    let tb = break_ties(&local);
    let prefix = maximal_prefix(&tb);
    let prox = build_proximity_instance(&tb, &prefix, options.proximity_c);

    let algo = match options.algo {
        KnapsackAlgo::Auto if prefer_bellman(&prox, norm.len(), norm.capacity) => KnapsackAlgo::Bellman,
        KnapsackAlgo::Auto => KnapsackAlgo::Proximity,
        a => a,
    };
    if algo == KnapsackAlgo::Bellman {
        let (_, sel) = bellman_select(&local)?;
        return Ok(finish(sel.iter().collect(), algo));
    }

    let corr = solve_proximity(&prox, &stats)?;
    let mut take = prefix.in_prefix.clone();
    for (k, &c) in corr.counts.iter().enumerate() {
        for &item in &prox.members[k][..c as usize] {
            take[item] = prox.keys[k] > 0;
        }
    }
    let chosen: Vec<usize> = (0..take.len()).filter(|&k| take[k]).map(|k| k + 1).collect();
    let out = finish(chosen, algo);
    let weight = instance.weight_of(&out.selection);
    if weight > instance.capacity {
        return Err(Error::Contract(format!("selection weight {weight} exceeds capacity")));
    }
    Ok(out)
}
