//! Exact boolean sumsets over integer ranges.
//!
//! Two backends compute `A + B`: a word-level shift-or that is linear in
//! `|A| * range / 64`, and a number-theoretic transform modulo
//! `998244353`. Both are exact, so the cheaper one is picked per call.

use crate::error::{Error, Result};

/// Largest range an [`IntegerSet`] produced by a sumset may span.
pub const MAX_RANGE: u64 = 1 << 26;

/// Set of integers inside an explicit window `[lo, lo + len)`.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerSet {
    lo: i64,
    len: usize,
    bits: Vec<u64>,
}

impl std::fmt::Debug for IntegerSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "IntegerSet[{}..={}]", self.lo, self.hi())?;
        f.debug_set().entries(self.iter()).finish()
    }
}

impl IntegerSet {
    /// Empty set over the window `[lo, hi]`.
    pub fn empty(lo: i64, hi: i64) -> Self {
        let len = if hi < lo { 0 } else { (hi - lo + 1) as usize };
        IntegerSet {
            lo,
            len,
            bits: vec![0; len.div_ceil(64)],
        }
    }

    pub fn singleton(v: i64) -> Self {
        let mut s = Self::empty(v, v);
        s.insert(v);
        s
    }

    /// Smallest window containing `values`.
    pub fn from_values(values: &[i64]) -> Self {
        match (values.iter().min(), values.iter().max()) {
            (Some(&lo), Some(&hi)) => {
                let mut s = Self::empty(lo, hi);
                for &v in values {
                    s.insert(v);
                }
                s
            }
            _ => Self::empty(0, -1),
        }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.lo + self.len as i64 - 1
    }

    /// Width of the window.
    pub fn range_len(&self) -> usize {
        self.len
    }

    pub fn insert(&mut self, v: i64) {
        assert!(v >= self.lo && v <= self.hi(), "{v} outside window");
        let k = (v - self.lo) as usize;
        self.bits[k / 64] |= 1 << (k % 64);
    }

    pub fn contains(&self, v: i64) -> bool {
        if v < self.lo || v > self.hi() {
            return false;
        }
        let k = (v - self.lo) as usize;
        self.bits[k / 64] >> (k % 64) & 1 == 1
    }

    pub fn count(&self) -> usize {
        self.bits.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = i64> + '_ {
        self.offsets().map(move |k| self.lo + k as i64)
    }

    fn offsets(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.iter().enumerate().flat_map(|(wi, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(wi * 64 + b)
            })
        })
    }

    pub fn to_vec(&self) -> Vec<i64> {
        self.iter().collect()
    }

    pub fn min(&self) -> Option<i64> {
        self.iter().next()
    }

    pub fn max(&self) -> Option<i64> {
        let wi = self.bits.iter().rposition(|&w| w != 0)?;
        let b = 63 - self.bits[wi].leading_zeros() as usize;
        Some(self.lo + (wi * 64 + b) as i64)
    }

    /// Largest member `<= v`.
    pub fn max_at_most(&self, v: i64) -> Option<i64> {
        if v < self.lo {
            return None;
        }
        let top = ((v - self.lo) as usize).min(self.len.checked_sub(1)?);
        let mut wi = top / 64;
        let mut w = self.bits[wi] & (u64::MAX >> (63 - top % 64));
        loop {
            if w != 0 {
                return Some(self.lo + (wi * 64 + 63 - w.leading_zeros() as usize) as i64);
            }
            if wi == 0 {
                return None;
            }
            wi -= 1;
            w = self.bits[wi];
        }
    }

    /// `{-a : a in self}`.
    pub fn negate(&self) -> Self {
        let mut out = Self::empty(-self.hi(), -self.lo);
        for k in self.offsets() {
            let j = self.len - 1 - k;
            out.bits[j / 64] |= 1 << (j % 64);
        }
        out
    }

    /// `{f * a : a in self}` over the window `[f * lo, f * hi]`.
    pub fn dilate(&self, f: i64) -> Self {
        assert!(f >= 1);
        if self.len == 0 {
            return self.clone();
        }
        let mut out = Self::empty(self.lo * f, self.hi() * f);
        for k in self.offsets() {
            let j = k * f as usize;
            out.bits[j / 64] |= 1 << (j % 64);
        }
        out
    }

    /// Intersection with `[lo, hi]`, carried over the window `[lo, hi]`.
    pub fn truncate(&self, lo: i64, hi: i64) -> Self {
        let mut out = Self::empty(lo, hi);
        let a = lo.max(self.lo);
        let b = hi.min(self.hi());
        if a > b {
            return out;
        }
        let src = (a - self.lo) as usize;
        let dst = (a - lo) as usize;
        let n = (b - a + 1) as usize;
        for i in 0..n {
            let s = src + i;
            if self.bits[s / 64] >> (s % 64) & 1 == 1 {
                let d = dst + i;
                out.bits[d / 64] |= 1 << (d % 64);
            }
        }
        out
    }

    fn mask_tail(&mut self) {
        let r = self.len % 64;
        if r != 0 {
            if let Some(last) = self.bits.last_mut() {
                *last &= (1u64 << r) - 1;
            }
        }
    }

    /// `self |= src << shift` on window offsets.
    fn or_shifted(&mut self, src: &[u64], shift: usize) {
        let (ws, bs) = (shift / 64, shift % 64);
        let words = self.bits.len();
        for (i, &w) in src.iter().enumerate() {
            if w == 0 {
                continue;
            }
            let d = i + ws;
            if d >= words {
                break;
            }
            self.bits[d] |= w << bs;
            if bs > 0 && d + 1 < words {
                self.bits[d + 1] |= w >> (64 - bs);
            }
        }
    }
}

/// Sumset backend.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Backend {
    /// Pick whichever is cheaper.
    Auto,
    ShiftOr,
    Ntt,
}

fn check_range(len: u64) -> Result<()> {
    if len > MAX_RANGE {
        Err(Error::Budget {
            needed: len as u128,
            budget: MAX_RANGE as u128,
        })
    } else {
        Ok(())
    }
}

/// `A + B` over the window `[A.lo + B.lo, A.hi + B.hi]`.
pub fn sumset(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet> {
    sumset_with(a, b, Backend::Auto)
}

pub fn sumset_with(a: &IntegerSet, b: &IntegerSet, backend: Backend) -> Result<IntegerSet> {
    if a.len == 0 || b.len == 0 {
        return Ok(IntegerSet::empty(0, -1));
    }
    let len = (a.len + b.len - 1) as u64;
    check_range(len)?;
    let mut out = IntegerSet::empty(a.lo + b.lo, a.hi() + b.hi());
    let (small, large) = if a.count() <= b.count() { (a, b) } else { (b, a) };
    let shift_cost = small.count() as u64 * (large.bits.len() as u64 + 1);
    let n = len.next_power_of_two();
    let ntt_cost = 3 * n * (n.trailing_zeros() as u64 + 1);
    let use_ntt = match backend {
        Backend::ShiftOr => false,
        Backend::Ntt => true,
        Backend::Auto => ntt_cost < shift_cost && n <= ntt::MAX_LEN as u64,
    };
    if use_ntt {
        let fa: Vec<u32> = (0..a.len).map(|k| (a.bits[k / 64] >> (k % 64) & 1) as u32).collect();
        let fb: Vec<u32> = (0..b.len).map(|k| (b.bits[k / 64] >> (k % 64) & 1) as u32).collect();
        let prod = ntt::multiply(&fa, &fb)?;
        for (k, &c) in prod.iter().enumerate() {
            if c != 0 {
                out.bits[k / 64] |= 1 << (k % 64);
            }
        }
    } else {
        for k in small.offsets() {
            out.or_shifted(&large.bits, k);
        }
        out.mask_tail();
    }
    Ok(out)
}

/// `A - B = A + (-B)`.
pub fn difference_set(a: &IntegerSet, b: &IntegerSet) -> Result<IntegerSet> {
    sumset(a, &b.negate())
}

/// How [`all_subset_sums`] computes its answer.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum SumsMode {
    #[default]
    Deterministic,
    /// Randomly partition the input, solve each part exactly and combine
    /// the parts with sumsets. Requires the `randomized-sums` feature.
    Randomized { seed: u64 },
}

/// Subset sums of `elements` (all non-negative) within `[0, t]`.
pub fn all_subset_sums(elements: &[i64], t: i64, mode: SumsMode) -> Result<IntegerSet> {
    if t < 0 {
        return Ok(IntegerSet::empty(0, -1));
    }
    check_range(t as u64 + 1)?;
    if let Some(&bad) = elements.iter().find(|&&a| a < 0) {
        return Err(Error::Precondition(format!("negative element {bad}")));
    }
    match mode {
        SumsMode::Deterministic => Ok(shift_or_sums(elements, t)),
        SumsMode::Randomized { seed } => randomized_sums(elements, t, seed),
    }
}

fn shift_or_sums(elements: &[i64], t: i64) -> IntegerSet {
    let mut s = IntegerSet::singleton(0).truncate(0, t);
    for &a in elements {
        if a == 0 || a > t {
            continue;
        }
        let snapshot = s.bits.clone();
        s.or_shifted(&snapshot, a as usize);
        s.mask_tail();
    }
    s
}

#[cfg(feature = "randomized-sums")]
fn randomized_sums(elements: &[i64], t: i64, seed: u64) -> Result<IntegerSet> {
    use rand::{Rng, SeedableRng};
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let groups = (elements.len() as f64).sqrt().ceil().max(1.0) as usize;
    let mut parts: Vec<Vec<i64>> = vec![Vec::new(); groups];
    for &a in elements {
        parts[rng.gen_range(0..groups)].push(a);
    }
    let mut acc = IntegerSet::singleton(0);
    for part in &parts {
        if part.is_empty() {
            continue;
        }
        let sums = shift_or_sums(part, t);
        acc = sumset(&acc, &sums)?.truncate(0, t);
    }
    Ok(acc.truncate(0, t))
}

#[cfg(not(feature = "randomized-sums"))]
fn randomized_sums(_: &[i64], _: i64, _: u64) -> Result<IntegerSet> {
    Err(Error::BadParameter(
        "randomized subset sums need the randomized-sums feature".into(),
    ))
}

mod ntt {
    use crate::error::{Error, Result};

    const P: u64 = 998_244_353;
    const G: u64 = 3;
    pub const MAX_LEN: usize = 1 << 23;

    fn pow(mut b: u64, mut e: u64) -> u64 {
        let mut r = 1;
        b %= P;
        while e > 0 {
            if e & 1 == 1 {
                r = r * b % P;
            }
            b = b * b % P;
            e >>= 1;
        }
        r
    }

    fn transform(a: &mut [u64], invert: bool) {
        let n = a.len();
        let mut j = 0;
        for i in 1..n {
            let mut bit = n >> 1;
            while j & bit != 0 {
                j ^= bit;
                bit >>= 1;
            }
            j |= bit;
            if i < j {
                a.swap(i, j);
            }
        }
        let mut len = 2;
        while len <= n {
            let mut w = pow(G, (P - 1) / len as u64);
            if invert {
                w = pow(w, P - 2);
            }
            for chunk in a.chunks_mut(len) {
                let mut wn = 1;
                let half = len / 2;
                for k in 0..half {
                    let u = chunk[k];
                    let v = chunk[k + half] * wn % P;
                    chunk[k] = if u + v >= P { u + v - P } else { u + v };
                    chunk[k + half] = if u >= v { u - v } else { u + P - v };
                    wn = wn * w % P;
                }
            }
            len <<= 1;
        }
        if invert {
            let inv = pow(n as u64, P - 2);
            for x in a.iter_mut() {
                *x = *x * inv % P;
            }
        }
    }

    /// Cyclic-free product of two 0/1 sequences. Entries are pair counts,
    /// which stay below `P`.
    pub fn multiply(a: &[u32], b: &[u32]) -> Result<Vec<u64>> {
        let out_len = a.len() + b.len() - 1;
        let n = out_len.next_power_of_two();
        if n > MAX_LEN {
            return Err(Error::Budget {
                needed: n as u128,
                budget: MAX_LEN as u128,
            });
        }
        let mut fa: Vec<u64> = a.iter().map(|&x| x as u64).collect();
        let mut fb: Vec<u64> = b.iter().map(|&x| x as u64).collect();
        fa.resize(n, 0);
        fb.resize(n, 0);
        transform(&mut fa, false);
        transform(&mut fb, false);
        for (x, y) in fa.iter_mut().zip(&fb) {
            *x = *x * y % P;
        }
        transform(&mut fa, true);
        fa.truncate(out_len);
        Ok(fa)
    }
}
