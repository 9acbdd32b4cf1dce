//! Extension with larger sets, reduced to singleton passes by coloring the
//! keys.

use std::collections::HashMap;
use std::sync::Arc;

use super::extend::{max_solutions, ExtendContext, Trace, WeakExtendInstance, WeakExtendSolution};
use super::singleton::{singleton_extend, singleton_pass, Candidate};
use crate::derandomize::{balls_and_bins, isolating_colorings, lg, SetSystem};
use crate::error::{Error, Result};
use crate::profit::Score;
use crate::stats::Stats;

/// Distinct sets `S[i] ∩ universe` over indices with finite `q`, keyed by
/// handle.
struct Restricted {
    by_handle: HashMap<u32, usize>,
    sets: Vec<Vec<u32>>,
}

impl Restricted {
    fn new(ctx: &ExtendContext, inst: &WeakExtendInstance) -> Self {
        let mask = inst.universe_mask(ctx.keys());
        let mut by_handle = HashMap::new();
        let mut sets = Vec::new();
        let mut seen: HashMap<Vec<u32>, usize> = HashMap::new();
        for i in 0..inst.len() {
            let h = inst.handles[i];
            if !inst.q[i].is_finite() || by_handle.contains_key(&h) {
                continue;
            }
            let s = inst.set_of(i, &mask);
            let id = *seen.entry(s.clone()).or_insert_with(|| {
                sets.push(s);
                sets.len() - 1
            });
            by_handle.insert(h, id);
        }
        Restricted { by_handle, sets }
    }

    fn max_size(&self) -> usize {
        self.sets.iter().map(Vec::len).max().unwrap_or(0)
    }
}

/// Position of each universe key, for local numbering.
fn local_index(ctx: &ExtendContext, universe: &[u32]) -> Vec<u32> {
    let mut pos = vec![u32::MAX; ctx.keys()];
    for (p, &k) in universe.iter().enumerate() {
        pos[k as usize] = p as u32;
    }
    pos
}

/// Extension for sets of size at most `b`: one isolating coloring at a
/// time, one color class at a time, then the best over colorings.
pub fn small_b_extend(
    ctx: &ExtendContext,
    inst: &WeakExtendInstance,
    stats: &Stats,
) -> Result<WeakExtendSolution> {
    let restricted = Restricted::new(ctx, inst);
    match restricted.max_size() {
        0 => return Ok(WeakExtendSolution::identity(&inst.q)),
        1 => return singleton_extend(ctx, inst, stats),
        _ => {}
    }
    let pos = local_index(ctx, &inst.universe);
    let local: Vec<Vec<usize>> = restricted
        .sets
        .iter()
        .map(|s| s.iter().map(|&k| pos[k as usize] as usize).collect())
        .collect();
    let colorings = isolating_colorings(inst.universe.len(), &local)?;
    let injective = |h: &[u32], s: &[usize]| {
        let mut c: Vec<u32> = s.iter().map(|&x| h[x]).collect();
        c.sort_unstable();
        c.windows(2).all(|w| w[0] != w[1])
    };
    let owner: Vec<usize> = local
        .iter()
        .map(|s| {
            colorings
                .iter()
                .position(|h| injective(h, s))
                .expect("isolating family covers every set")
        })
        .collect();

    let mask = inst.universe_mask(ctx.keys());
    let mut parts = Vec::new();
    let mut part_qs = Vec::new();
    for (c_id, h) in colorings.iter().enumerate() {
        let mut q: Vec<Score> = (0..inst.len())
            .map(|i| match restricted.by_handle.get(&inst.handles[i]) {
                Some(&s) if inst.q[i].is_finite() && owner[s] == c_id => inst.q[i],
                _ => Score::Bottom,
            })
            .collect();
        if q.iter().all(|v| !v.is_finite()) {
            continue;
        }
        part_qs.push(q.clone());
        let mut handles = inst.handles.clone();
        let mut z: Vec<u32> = (0..inst.len() as u32).collect();
        let mut stages: Vec<Arc<Trace>> = Vec::new();

        // (color, key) pairs of S[h] ∩ universe, distinct colors.
        let mut colored: HashMap<u32, Vec<(u32, u32)>> = HashMap::new();
        let mut colors_of = |handle: u32| -> Vec<(u32, u32)> {
            colored
                .entry(handle)
                .or_insert_with(|| {
                    let mut v: Vec<(u32, u32)> = inst
                        .table
                        .get(handle)
                        .iter()
                        .filter(|&&k| mask[k as usize])
                        .map(|&k| (h[pos[k as usize] as usize], k))
                        .collect();
                    v.sort_unstable();
                    v
                })
                .clone()
        };
        let range = h.iter().copied().max().unwrap_or(0) as usize + 1;
        let mut pending: Vec<Vec<u32>> = vec![Vec::new(); range];
        for i in 0..inst.len() {
            if q[i].is_finite() {
                for (col, _) in colors_of(handles[i]) {
                    pending[col as usize].push(i as u32);
                }
            }
        }
        for col in 0..range {
            let mut list = std::mem::take(&mut pending[col]);
            if list.is_empty() {
                continue;
            }
            list.sort_unstable();
            list.dedup();
            let mut cands = Vec::new();
            for &i in &list {
                if !q[i as usize].is_finite() {
                    continue;
                }
                let cs = colors_of(handles[i as usize]);
                let hits: Vec<&(u32, u32)> = cs.iter().filter(|c| c.0 as usize == col).collect();
                match hits.len() {
                    0 => {}
                    1 => cands.push(Candidate { j: i, key: hits[0].1 }),
                    _ => return Err(Error::Contract(format!("set at index {i} not isolated"))),
                }
            }
            let moves = singleton_pass(ctx, &q, &mut cands, stats)?;
            if moves.is_empty() {
                continue;
            }
            let fresh: Vec<(u32, u32)> = moves
                .iter()
                .map(|(m, _)| (handles[m.from as usize], z[m.from as usize]))
                .collect();
            for ((m, v), (hd, src)) in moves.iter().zip(fresh) {
                let i = m.i as usize;
                q[i] = *v;
                handles[i] = hd;
                z[i] = src;
                for (c2, _) in colors_of(hd) {
                    if c2 as usize > col {
                        pending[c2 as usize].push(m.i);
                    }
                }
            }
            stages.push(Arc::new(Trace::Stage(moves.into_iter().map(|(m, _)| m).collect())));
        }
        stages.reverse();
        let trace = match stages.len() {
            0 => Arc::new(Trace::Identity),
            1 => stages.pop().unwrap(),
            _ => Arc::new(Trace::Chain(stages)),
        };
        parts.push(WeakExtendSolution { r: q, z, trace });
    }
    if parts.is_empty() {
        return Ok(WeakExtendSolution::identity(&inst.q));
    }
    let qs: Vec<&[Score]> = part_qs.iter().map(|q| q.as_slice()).collect();
    Ok(max_solutions(&parts, &qs, &inst.q))
}

/// Extension for arbitrary set sizes: split the universe into classes that
/// meet every set in `O(log m)` keys and extend class by class.
pub fn large_b_extend(
    ctx: &ExtendContext,
    inst: &WeakExtendInstance,
    stats: &Stats,
) -> Result<WeakExtendSolution> {
    let restricted = Restricted::new(ctx, inst);
    let b = restricted.max_size();
    let m = restricted.sets.len();
    let r = ((b as f64 / lg(m)).ceil() as usize).max(1);
    if b <= 1 || r < 2 {
        return small_b_extend(ctx, inst, stats);
    }
    let pos = local_index(ctx, &inst.universe);
    let system = SetSystem::new(
        inst.universe.len(),
        restricted
            .sets
            .iter()
            .map(|s| s.iter().map(|&k| pos[k as usize] as usize + 1).collect())
            .collect(),
    )?;
    let coloring = balls_and_bins(&system, r)?;
    if coloring.classes < 2 {
        return small_b_extend(ctx, inst, stats);
    }
    let mut classes: Vec<Vec<u32>> = vec![Vec::new(); coloring.classes];
    for (p, &k) in inst.universe.iter().enumerate() {
        classes[coloring.colors[p]].push(k);
    }
    #[cfg(debug_assertions)]
    for s in &system.sets {
        for class in 0..coloring.classes {
            let hit = s.iter().filter(|&&x| coloring.colors[x - 1] == class).count();
            debug_assert!(hit as f64 <= coloring.bound + 1e-9);
        }
    }

    let mut cur = inst.clone();
    let mut total = WeakExtendSolution::identity(&inst.q);
    for class in classes.into_iter().filter(|c| !c.is_empty()) {
        cur.universe = class;
        let sol = small_b_extend(ctx, &cur, stats)?;
        let handles = sol.z.iter().map(|&z| cur.handles[z as usize]).collect();
        cur.handles = handles;
        cur.q = sol.r.clone();
        total = super::extend::compose(&sol, &total);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::knapsack::extend::SetTable;
    use crate::knapsack::profile::ConcaveProfile;
    use crate::profit::AdjustedProfit;

    fn ctx(keys: &[i64]) -> ExtendContext {
        let profiles = keys
            .iter()
            .enumerate()
            .map(|(k, _)| {
                let incs: Vec<AdjustedProfit> =
                    (0..4).map(|x| AdjustedProfit::plain(20 - 3 * x - k as i128)).collect();
                ConcaveProfile::new(&incs, AdjustedProfit::plain(1000))
            })
            .collect();
        ExtendContext::new(keys, profiles)
    }

    /// Best extension of every index by brute force over counts.
    fn brute(c: &ExtendContext, inst: &WeakExtendInstance) -> Vec<Score> {
        let mask = inst.universe_mask(c.keys());
        let len = inst.len();
        let mut best = inst.q.clone();
        for z in 0..len {
            if !inst.q[z].is_finite() {
                continue;
            }
            let set = inst.set_of(z, &mask);
            let mut stack = vec![(0usize, z, inst.q[z])];
            while let Some((d, at, v)) = stack.pop() {
                if d == set.len() {
                    if v > best[at] {
                        best[at] = v;
                    }
                    continue;
                }
                let k = set[d];
                let step = c.steps[k as usize] as usize;
                let mut x = 0;
                while at + x * step < len {
                    stack.push((d + 1, at + x * step, v + c.gain(k, x)));
                    x += 1;
                }
            }
        }
        best
    }

    fn sample(len: usize, seed: u64, sets: &[Vec<u32>]) -> WeakExtendInstance {
        let mut table = SetTable::new();
        let hs: Vec<u32> = sets.iter().map(|s| table.intern(s.clone())).collect();
        let mut x = seed;
        let mut next = || {
            x ^= x << 13;
            x ^= x >> 7;
            x ^= x << 17;
            x
        };
        let q = (0..len)
            .map(|_| {
                if next() % 3 == 0 {
                    Score::plain((next() % 40) as i128)
                } else {
                    Score::Bottom
                }
            })
            .collect();
        let handles = (0..len).map(|_| hs[(next() % hs.len() as u64) as usize]).collect();
        WeakExtendInstance { universe: Vec::new(), q, handles, table: Arc::new(table) }
    }

    #[test]
    fn small_b_is_a_valid_extension() {
        let c = ctx(&[1, 2, 3, 5]);
        let sets = vec![vec![0, 1, 2], vec![1, 3], vec![0, 2, 3], vec![]];
        for seed in 1..30 {
            let mut inst = sample(40, seed, &sets);
            inst.universe = vec![0, 1, 2, 3];
            let sol = small_b_extend(&c, &inst, &Stats::new()).unwrap();
            sol.check(&c, &inst).unwrap();
            let b = brute(&c, &inst);
            assert!(sol.r.iter().zip(&b).all(|(x, y)| x <= y), "seed {seed}");
            // Sources with a single key are never worse than brute force
            // along that key alone.
            assert!(sol.r.iter().zip(&inst.q).all(|(x, y)| x >= y));
        }
    }

    #[test]
    fn large_b_is_a_valid_extension() {
        let keys: Vec<i64> = (1..=12).collect();
        let c = ctx(&keys);
        let sets = vec![(0..12).collect(), vec![0, 3, 5, 7, 9, 11], vec![1, 2]];
        for seed in 1..10 {
            let mut inst = sample(60, seed, &sets);
            inst.universe = (0..12).collect();
            let sol = large_b_extend(&c, &inst, &Stats::new()).unwrap();
            sol.check(&c, &inst).unwrap();
            let b = brute(&c, &inst);
            assert!(sol.r.iter().zip(&b).all(|(x, y)| x <= y));
        }
    }
}
