//! Strictly concave profit profiles.

use std::sync::Arc;

use crate::profit::AdjustedProfit;

/// `P(x) = p_1 + ... + p_x` for a strictly decreasing sequence `p`, with
/// `p_x = -M - x` beyond the last real item so that over-use is never
/// profitable. A shifted profile evaluates `P(x + s) - P(s)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ConcaveProfile {
    prefix: Arc<Vec<AdjustedProfit>>,
    penalty: AdjustedProfit,
    shift: usize,
}

impl ConcaveProfile {
    /// `increments` must be strictly decreasing and every one of them must
    /// exceed `-penalty - (k + 1)`.
    pub fn new(increments: &[AdjustedProfit], penalty: AdjustedProfit) -> Self {
        debug_assert!(increments.windows(2).all(|w| w[0] > w[1]));
        let mut prefix = Vec::with_capacity(increments.len() + 1);
        let mut acc = AdjustedProfit::ZERO;
        prefix.push(acc);
        for &p in increments {
            acc += p;
            prefix.push(acc);
        }
        ConcaveProfile {
            prefix: Arc::new(prefix),
            penalty,
            shift: 0,
        }
    }

    /// `x -> P(x + s) - P(s)` relative to this profile.
    pub fn shifted(&self, s: usize) -> Self {
        ConcaveProfile {
            prefix: Arc::clone(&self.prefix),
            penalty: self.penalty,
            shift: self.shift + s,
        }
    }

    /// Number of real items before the penalty region, ignoring the shift.
    pub fn items(&self) -> usize {
        self.prefix.len() - 1
    }

    fn raw(&self, y: usize) -> AdjustedProfit {
        let k = self.items();
        if y <= k {
            return self.prefix[y];
        }
        let extra = (y - k) as i128;
        // sum of u for u in k+1..=y
        let ramp = (k as i128 + 1 + y as i128) * extra / 2;
        self.prefix[k] - self.penalty.scale(extra) - AdjustedProfit::plain(ramp)
    }

    pub fn value(&self, x: usize) -> AdjustedProfit {
        self.raw(x + self.shift) - self.raw(self.shift)
    }
}
