//! Weak extension instances, their solutions and the ways of combining
//! them.

use std::collections::HashMap;
use std::sync::Arc;

use super::profile::ConcaveProfile;
use crate::error::{Error, Result};
use crate::profit::{AdjustedProfit, Score};

/// Interned sorted key sets. Handle 0 is the empty set.
#[derive(Clone, Debug)]
pub struct SetTable {
    sets: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, u32>,
}

impl Default for SetTable {
    fn default() -> Self {
        Self::new()
    }
}

impl SetTable {
    pub fn new() -> Self {
        let mut index = HashMap::new();
        index.insert(Vec::new(), 0);
        SetTable {
            sets: vec![Vec::new()],
            index,
        }
    }

    /// `set` must be sorted.
    pub fn intern(&mut self, set: Vec<u32>) -> u32 {
        debug_assert!(set.windows(2).all(|w| w[0] < w[1]));
        if let Some(&h) = self.index.get(&set) {
            return h;
        }
        let h = self.sets.len() as u32;
        self.sets.push(set.clone());
        self.index.insert(set, h);
        h
    }

    pub fn get(&self, handle: u32) -> &[u32] {
        &self.sets[handle as usize]
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

/// Per-key data shared by every instance of one solve. Key `k` moves an
/// index forward by `steps[k]` and earns `profiles[k]`.
#[derive(Clone, Debug)]
pub struct ExtendContext {
    pub steps: Vec<i64>,
    pub signs: Vec<i8>,
    pub profiles: Vec<ConcaveProfile>,
}

impl ExtendContext {
    pub fn new(signed_keys: &[i64], profiles: Vec<ConcaveProfile>) -> Self {
        ExtendContext {
            steps: signed_keys.iter().map(|k| k.abs()).collect(),
            signs: signed_keys.iter().map(|k| k.signum() as i8).collect(),
            profiles,
        }
    }

    pub fn keys(&self) -> usize {
        self.steps.len()
    }

    pub fn gain(&self, key: u32, count: usize) -> AdjustedProfit {
        self.profiles[key as usize].value(count)
    }
}

/// Find `x` supported on `S[i] ∩ universe` and a source `z <= i` with
/// `z + sum(steps * x) = i`, maximising `q[z] + sum(Q(x))`.
#[derive(Clone, Debug)]
pub struct WeakExtendInstance {
    pub universe: Vec<u32>,
    pub q: Vec<Score>,
    pub handles: Vec<u32>,
    pub table: Arc<SetTable>,
}

impl WeakExtendInstance {
    pub fn len(&self) -> usize {
        self.q.len()
    }

    pub fn is_empty(&self) -> bool {
        self.q.is_empty()
    }

    pub fn universe_mask(&self, keys: usize) -> Vec<bool> {
        let mut mask = vec![false; keys];
        for &k in &self.universe {
            mask[k as usize] = true;
        }
        mask
    }

    /// `S[i] ∩ universe`.
    pub fn set_of(&self, i: usize, mask: &[bool]) -> Vec<u32> {
        self.table
            .get(self.handles[i])
            .iter()
            .copied()
            .filter(|&k| mask[k as usize])
            .collect()
    }

    /// Same sets and values over the keys `v` only.
    pub fn restrict(&self, v: &[u32]) -> WeakExtendInstance {
        WeakExtendInstance {
            universe: v.to_vec(),
            q: self.q.clone(),
            handles: self.handles.clone(),
            table: Arc::clone(&self.table),
        }
    }

    /// The instance left after extending along `v` with `sol`.
    pub fn update(&self, v: &[u32], sol: &WeakExtendSolution) -> WeakExtendInstance {
        WeakExtendInstance {
            universe: self
                .universe
                .iter()
                .copied()
                .filter(|k| !v.contains(k))
                .collect(),
            q: sol.r.clone(),
            handles: sol.z.iter().map(|&z| self.handles[z as usize]).collect(),
            table: Arc::clone(&self.table),
        }
    }

    /// Pointwise maximum of two instances over the same universe. Sets are
    /// intersected where the values tie.
    pub fn max_with(&self, other: &WeakExtendInstance) -> WeakExtendInstance {
        let mut table = (*self.table).clone();
        let mut q = Vec::with_capacity(self.len());
        let mut handles = Vec::with_capacity(self.len());
        for i in 0..self.len() {
            let (a, b) = (self.q[i], other.q[i]);
            let h = if a > b {
                table.intern(self.table.get(self.handles[i]).to_vec())
            } else if b > a {
                table.intern(other.table.get(other.handles[i]).to_vec())
            } else {
                let sb = other.table.get(other.handles[i]);
                let both = self
                    .table
                    .get(self.handles[i])
                    .iter()
                    .copied()
                    .filter(|k| sb.contains(k))
                    .collect();
                table.intern(both)
            };
            q.push(a.max(b));
            handles.push(h);
        }
        WeakExtendInstance {
            universe: self.universe.clone(),
            q,
            handles,
            table: Arc::new(table),
        }
    }
}

/// One extension step: index `i` came from `from` by `count` units of `key`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Move {
    pub i: u32,
    pub from: u32,
    pub key: u32,
    pub count: u32,
}

/// How a solution's `x` and `z` can be recovered for a single index.
#[derive(Clone, Debug)]
pub enum Trace {
    Identity,
    /// Moves sorted by `i`; unlisted indices stay put.
    Stage(Vec<Move>),
    /// Latest stage first.
    Chain(Vec<Arc<Trace>>),
    Max {
        choice: Vec<u16>,
        parts: Vec<Arc<Trace>>,
    },
}

impl Trace {
    /// Append the moves that produced index `i`, returning its source.
    pub fn walk(&self, i: usize, moves: &mut Vec<(u32, u32)>) -> usize {
        match self {
            Trace::Identity => i,
            Trace::Stage(list) => match list.binary_search_by_key(&(i as u32), |m| m.i) {
                Ok(p) => {
                    moves.push((list[p].key, list[p].count));
                    list[p].from as usize
                }
                Err(_) => i,
            },
            Trace::Chain(parts) => parts.iter().fold(i, |i, t| t.walk(i, moves)),
            Trace::Max { choice, parts } => parts[choice[i] as usize].walk(i, moves),
        }
    }

    /// Chain `later` after `earlier`, dropping identities.
    pub fn then(earlier: Arc<Trace>, later: Arc<Trace>) -> Arc<Trace> {
        let mut parts = Vec::new();
        for t in [later, earlier] {
            match &*t {
                Trace::Identity => {}
                Trace::Chain(inner) => parts.extend(inner.iter().cloned()),
                _ => parts.push(t),
            }
        }
        match parts.len() {
            0 => Arc::new(Trace::Identity),
            1 => parts.pop().unwrap(),
            _ => Arc::new(Trace::Chain(parts)),
        }
    }
}

/// `r[i] = q[z[i]] + sum(Q(x[i]))` for the `x` recorded in `trace`.
#[derive(Clone, Debug)]
pub struct WeakExtendSolution {
    pub r: Vec<Score>,
    pub z: Vec<u32>,
    pub trace: Arc<Trace>,
}

impl WeakExtendSolution {
    pub fn identity(q: &[Score]) -> Self {
        WeakExtendSolution {
            r: q.to_vec(),
            z: (0..q.len() as u32).collect(),
            trace: Arc::new(Trace::Identity),
        }
    }

    /// `(z[i], x[i])` with `x` as sorted `(key, count)` pairs.
    pub fn extension(&self, i: usize) -> (usize, Vec<(u32, u32)>) {
        let mut moves = Vec::new();
        let z = self.trace.walk(i, &mut moves);
        moves.sort_unstable();
        let mut merged: Vec<(u32, u32)> = Vec::new();
        for (k, c) in moves {
            match merged.last_mut() {
                Some(last) if last.0 == k => last.1 += c,
                _ => merged.push((k, c)),
            }
        }
        (z, merged)
    }

    /// Check every index against the definition: the source, the moves and
    /// the value agree, and only keys of `S[z] ∩ universe` are used.
    pub fn check(&self, ctx: &ExtendContext, inst: &WeakExtendInstance) -> Result<()> {
        let mask = inst.universe_mask(ctx.keys());
        for i in 0..inst.len() {
            let (z, x) = self.extension(i);
            if z != self.z[i] as usize {
                return Err(Error::Contract(format!("index {i}: trace source {z} != z {}", self.z[i])));
            }
            let set = inst.set_of(z, &mask);
            let mut pos = z as i64;
            let mut value = inst.q[z];
            for &(k, c) in &x {
                if !set.contains(&k) {
                    return Err(Error::Contract(format!("index {i}: key {k} not in S[{z}]")));
                }
                pos += ctx.steps[k as usize] * c as i64;
                value = value + ctx.gain(k, c as usize);
            }
            if pos != i as i64 {
                return Err(Error::Contract(format!("index {i}: moves end at {pos}")));
            }
            if value != self.r[i] {
                return Err(Error::Contract(format!("index {i}: value {value} != r {}", self.r[i])));
            }
        }
        Ok(())
    }
}

/// `outer ∘ inner`, where `outer` solves the instance updated by `inner`.
pub fn compose(outer: &WeakExtendSolution, inner: &WeakExtendSolution) -> WeakExtendSolution {
    WeakExtendSolution {
        r: outer.r.clone(),
        z: outer.z.iter().map(|&z| inner.z[z as usize]).collect(),
        trace: Trace::then(Arc::clone(&inner.trace), Arc::clone(&outer.trace)),
    }
}

/// Per index, the part with the largest value; later parts win ties.
/// `qs[p]` is the instance part `p` solved and `q_max` their maximum.
pub fn max_solutions(
    parts: &[WeakExtendSolution],
    qs: &[&[Score]],
    q_max: &[Score],
) -> WeakExtendSolution {
    assert!(!parts.is_empty() && parts.len() == qs.len());
    let len = q_max.len();
    let mut choice = vec![0u16; len];
    let mut r = Vec::with_capacity(len);
    let mut z = Vec::with_capacity(len);
    for i in 0..len {
        let mut best = 0;
        for p in 1..parts.len() {
            if parts[p].r[i] >= parts[best].r[i] {
                best = p;
            }
        }
        choice[i] = best as u16;
        let src = parts[best].z[i] as usize;
        z.push(src as u32);
        let v = match (parts[best].r[i], qs[best][src]) {
            (Score::Finite(rv), Score::Finite(qv)) => q_max[src] + (rv - qv),
            _ => q_max[i],
        };
        r.push(v);
    }
    WeakExtendSolution {
        r,
        z,
        trace: Arc::new(Trace::Max {
            choice,
            parts: parts.iter().map(|p| Arc::clone(&p.trace)).collect(),
        }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn intern_dedups() {
        let mut t = SetTable::new();
        assert_eq!(t.intern(vec![]), 0);
        let a = t.intern(vec![1, 3]);
        assert_eq!(t.intern(vec![1, 3]), a);
        assert_ne!(t.intern(vec![1]), a);
        assert_eq!(t.get(a), &[1, 3]);
    }

    #[test]
    fn compose_follows_sources() {
        let q = vec![Score::ZERO; 4];
        let inner = WeakExtendSolution {
            r: q.clone(),
            z: vec![0, 1, 0, 3],
            trace: Arc::new(Trace::Stage(vec![Move { i: 2, from: 0, key: 0, count: 2 }])),
        };
        let outer = WeakExtendSolution {
            r: q.clone(),
            z: vec![0, 1, 2, 2],
            trace: Arc::new(Trace::Stage(vec![Move { i: 3, from: 2, key: 1, count: 1 }])),
        };
        let c = compose(&outer, &inner);
        assert_eq!(c.z, vec![0, 1, 0, 0]);
        assert_eq!(c.extension(3), (0, vec![(0, 2), (1, 1)]));
    }

    #[test]
    fn max_prefers_later_on_ties() {
        let a = WeakExtendSolution::identity(&[Score::plain(1), Score::plain(5)]);
        let b = WeakExtendSolution::identity(&[Score::plain(1), Score::plain(2)]);
        let qa = a.r.clone();
        let qb = b.r.clone();
        let m = max_solutions(&[a, b], &[&qa, &qb], &qa);
        assert_eq!(m.r, vec![Score::plain(1), Score::plain(5)]);
        match &*m.trace {
            Trace::Max { choice, .. } => assert_eq!(choice, &vec![1, 0]),
            _ => unreachable!(),
        }
    }
}
