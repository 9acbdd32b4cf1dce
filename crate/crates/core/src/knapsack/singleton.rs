//! Extension when every set holds at most one key of the universe.

use std::cmp::Reverse;
use std::collections::BinaryHeap;
use std::sync::Arc;

use super::extend::{ExtendContext, Move, Trace, WeakExtendInstance, WeakExtendSolution};
use crate::error::{Error, Result};
use crate::profit::Score;
use crate::smawk::{smawk_compact, Counted, FnMatrix};
use crate::stats::Stats;

/// Index `j` may be extended along `key`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct Candidate {
    pub j: u32,
    pub key: u32,
}

/// An arithmetic run of targets `next, next + step, ..., last` won by
/// source `j`.
#[derive(Clone, Copy, Debug)]
struct Run {
    j: u32,
    key: u32,
    last: u32,
}

/// Moves improving on `q`, sorted by target, each with its new value.
pub(crate) fn singleton_pass(
    ctx: &ExtendContext,
    q: &[Score],
    cands: &mut Vec<Candidate>,
    stats: &Stats,
) -> Result<Vec<(Move, Score)>> {
    let len = q.len();
    cands.retain(|c| q[c.j as usize].is_finite());
    cands.sort_unstable_by_key(|c| {
        let s = ctx.steps[c.key as usize] as u32;
        (c.key, c.j % s, c.j)
    });
    cands.dedup();

    let mut runs: Vec<Run> = Vec::new();
    let mut heap: BinaryHeap<Reverse<(u32, u32)>> = BinaryHeap::new();
    let mut push = |runs: &mut Vec<Run>, at: u32, run: Run| {
        heap.push(Reverse((at, runs.len() as u32)));
        runs.push(run);
    };

    let mut start = 0;
    while start < cands.len() {
        let key = cands[start].key;
        let step = ctx.steps[key as usize] as usize;
        let residue = cands[start].j as usize % step;
        let mut end = start;
        while end < cands.len()
            && cands[end].key == key
            && cands[end].j as usize % step == residue
        {
            end += 1;
        }
        let js: Vec<usize> = cands[start..end].iter().map(|c| c.j as usize).collect();
        start = end;

        let j0 = js[0];
        let rows = (len - 1 - j0) / step + 1;
        let profile = &ctx.profiles[key as usize];
        let matrix = Counted::new(FnMatrix::new(rows, js.len(), |t: usize, col: usize| {
            let i = j0 + t * step;
            let j = js[col];
            if i < j {
                Score::Bottom
            } else {
                q[j] + profile.value((i - j) / step)
            }
        }));
        #[cfg(debug_assertions)]
        if let Err(v) = crate::smawk::verify_monge(&matrix, 16, j0 as u64) {
            return Err(Error::Contract(format!("extension matrix not Monge at {v:?}")));
        }
        let maxima = smawk_compact(&matrix)?;
        stats.add_entries(matrix.evaluations());

        for (col, &j) in js.iter().enumerate() {
            let rs = maxima.rows_of(col);
            if rs.is_empty() {
                continue;
            }
            let first = j0 + rs.start * step;
            let last = (j0 + (rs.end - 1) * step) as u32;
            debug_assert!(first >= j);
            let run = Run { j: j as u32, key, last };
            if first == j {
                // The source itself: keep its trivial entry apart from the
                // rest of the run.
                push(&mut runs, first as u32, Run { last: first as u32, ..run });
                if first + step <= last as usize {
                    push(&mut runs, (first + step) as u32, run);
                }
            } else {
                push(&mut runs, first as u32, run);
            }
        }
    }

    let mut moves = Vec::new();
    let mut bucket = Vec::new();
    while let Some(Reverse((at, _))) = heap.peek().copied() {
        bucket.clear();
        while let Some(&Reverse((a, id))) = heap.peek() {
            if a != at {
                break;
            }
            heap.pop();
            bucket.push(id);
        }
        let i = at as usize;
        let value = |id: u32| {
            let run = runs[id as usize];
            let step = ctx.steps[run.key as usize] as usize;
            q[run.j as usize] + ctx.gain(run.key, (i - run.j as usize) / step)
        };
        let mut best = bucket[0];
        let mut best_val = value(best);
        for &id in &bucket[1..] {
            let v = value(id);
            let (a, b) = (runs[id as usize], runs[best as usize]);
            let better = v > best_val
                || (v == best_val
                    && (a.j, ctx.steps[a.key as usize]) < (b.j, ctx.steps[b.key as usize]));
            if better {
                best = id;
                best_val = v;
            }
        }
        let run = runs[best as usize];
        if best_val > q[i] {
            let step = ctx.steps[run.key as usize] as usize;
            moves.push((
                Move {
                    i: at,
                    from: run.j,
                    key: run.key,
                    count: ((i - run.j as usize) / step) as u32,
                },
                best_val,
            ));
        }
        let step = ctx.steps[run.key as usize] as u32;
        if at + step <= run.last {
            heap.push(Reverse((at + step, best)));
        }
    }
    Ok(moves)
}

/// Candidates of an instance in which every set meets the universe in at
/// most one key.
pub(crate) fn singleton_candidates(
    ctx: &ExtendContext,
    inst: &WeakExtendInstance,
) -> Result<Vec<Candidate>> {
    let signs: Vec<i8> = inst.universe.iter().map(|&k| ctx.signs[k as usize]).collect();
    if signs.windows(2).any(|w| w[0] != w[1]) {
        return Err(Error::Contract("universe mixes positive and negative keys".into()));
    }
    let mask = inst.universe_mask(ctx.keys());
    let mut cands = Vec::new();
    for i in 0..inst.len() {
        if !inst.q[i].is_finite() {
            continue;
        }
        let set = inst.set_of(i, &mask);
        match set.len() {
            0 => {}
            1 => cands.push(Candidate { j: i as u32, key: set[0] }),
            s => {
                return Err(Error::Contract(format!(
                    "set at index {i} has {s} keys in a singleton instance"
                )))
            }
        }
    }
    Ok(cands)
}

pub fn singleton_extend(
    ctx: &ExtendContext,
    inst: &WeakExtendInstance,
    stats: &Stats,
) -> Result<WeakExtendSolution> {
    let mut cands = singleton_candidates(ctx, inst)?;
    let moves = singleton_pass(ctx, &inst.q, &mut cands, stats)?;
    let mut sol = WeakExtendSolution::identity(&inst.q);
    for (m, v) in &moves {
        sol.r[m.i as usize] = *v;
        sol.z[m.i as usize] = m.from;
    }
    if !moves.is_empty() {
        sol.trace = Arc::new(Trace::Stage(moves.into_iter().map(|(m, _)| m).collect()));
    }
    Ok(sol)
}
