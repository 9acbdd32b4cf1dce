//! Best solutions of small support, one per total weight.

use super::extend::SetTable;
use crate::profit::{AdjustedProfit, Score};

/// `values[i + half]` is the best profit of a vector using every key at
/// most once with total weight `i`, and `handles` names its key set.
#[derive(Clone, Debug)]
pub struct BaseSolutions {
    pub half: i64,
    pub values: Vec<Score>,
    pub handles: Vec<u32>,
    pub table: SetTable,
}

impl BaseSolutions {
    pub fn get(&self, i: i64) -> Option<(Score, u32)> {
        if i.abs() > self.half {
            return None;
        }
        let u = (i + self.half) as usize;
        Some((self.values[u], self.handles[u]))
    }
}

/// The DP table before supports are bounded.
#[derive(Clone, Debug)]
pub struct BaseTable {
    pub half: i64,
    /// `values[i + half]`, best over 0/1 vectors whose running weight stays
    /// in the window when keys are taken in order.
    pub values: Vec<Score>,
    /// Support size of the vector behind each value.
    pub support: Vec<u32>,
    words: usize,
    touched: Vec<u64>,
}

impl BaseTable {
    fn touched(&self, round: usize, u: usize) -> bool {
        self.touched[round * self.words + u / 64] >> (u % 64) & 1 == 1
    }
}

/// 0-1 DP over `keys` in order on the window `[-half, half]`. An entry is
/// only replaced by a strictly better one.
pub fn base_table(keys: &[i64], gains: &[AdjustedProfit], half: i64) -> BaseTable {
    let len = (2 * half + 1) as usize;
    let words = len.div_ceil(64);
    let mut values = vec![Score::Bottom; len];
    let mut support = vec![0u32; len];
    let mut touched = vec![0u64; words * keys.len()];
    values[half as usize] = Score::ZERO;

    for (k, (&key, &gain)) in keys.iter().zip(gains).enumerate() {
        let shift = key.unsigned_abs() as usize;
        if shift >= len {
            continue;
        }
        let bits = &mut touched[k * words..(k + 1) * words];
        let mut relax = |src: usize, dst: usize| {
            if let Score::Finite(v) = values[src] {
                let cand = Score::Finite(v + gain);
                if values[dst] < cand {
                    values[dst] = cand;
                    support[dst] = support[src] + 1;
                    bits[dst / 64] |= 1 << (dst % 64);
                }
            }
        };
        // Sources are read before this round writes them.
        if key > 0 {
            for dst in (shift..len).rev() {
                relax(dst - shift, dst);
            }
        } else {
            for dst in 0..len - shift {
                relax(dst + shift, dst);
            }
        }
    }
    BaseTable {
        half,
        values,
        support,
        words,
        touched,
    }
}

/// Base solutions on `[-b0 w, b0 w]` with supports of size at most `b0`.
/// `gains[k]` is the profit of one unit of key `k`.
pub fn prepare_base_solutions(
    keys: &[i64],
    gains: &[AdjustedProfit],
    b0: usize,
    w_max: i64,
) -> BaseSolutions {
    let dp = base_table(keys, gains, b0 as i64 * w_max);
    let half = dp.half;
    let len = dp.values.len();
    let mut values = dp.values.clone();
    let mut table = SetTable::new();
    let mut handles = vec![0u32; len];
    let mut set = Vec::new();
    for u in 0..len {
        if !values[u].is_finite() {
            continue;
        }
        if dp.support[u] as usize > b0 {
            values[u] = Score::Bottom;
            continue;
        }
        set.clear();
        let mut pos = u as i64;
        for k in (0..keys.len()).rev() {
            if dp.touched(k, pos as usize) {
                set.push(k as u32);
                pos -= keys[k];
            }
        }
        debug_assert_eq!(pos, half);
        set.reverse();
        handles[u] = table.intern(set.clone());
    }
    BaseSolutions {
        half,
        values,
        handles,
        table,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn plain(v: &[i128]) -> Vec<AdjustedProfit> {
        v.iter().map(|&x| AdjustedProfit::plain(x)).collect()
    }

    #[test]
    fn two_keys() {
        let keys = [-3, 2];
        let base = prepare_base_solutions(&keys, &plain(&[-1, 5]), 2, 3);
        let got: Vec<(i64, i128, Vec<u32>)> = (-6..=6)
            .filter_map(|i| {
                let (s, h) = base.get(i)?;
                Some((i, s.finite()?.main, base.table.get(h).to_vec()))
            })
            .collect();
        assert_eq!(
            got,
            vec![(-3, -1, vec![0]), (-1, 4, vec![0, 1]), (0, 0, vec![]), (2, 5, vec![1])]
        );
    }

    #[test]
    fn support_limit_erases() {
        let base = prepare_base_solutions(&[1, 2, 3], &plain(&[1, 1, 1]), 2, 3);
        assert!(base.get(6).unwrap().0 == Score::Bottom);
        assert_eq!(base.get(5).unwrap().0, Score::plain(2));
        // 1 + 2 beats 3 alone.
        assert_eq!(base.table.get(base.get(3).unwrap().1), &[0, 1]);
    }
}
