//! Deterministic set balancing, balanced multi-colorings, pairwise
//! independent hashing over `GF(2^l)` and isolating color families.

use std::sync::OnceLock;

use crate::error::{Error, Result};

/// Sets over the universe `1..=n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetSystem {
    pub n: usize,
    pub sets: Vec<Vec<usize>>,
}

impl SetSystem {
    /// Sorts and deduplicates every set. Fails on indices outside `1..=n`.
    pub fn new(n: usize, sets: Vec<Vec<usize>>) -> Result<Self> {
        let mut sets = sets;
        for s in &mut sets {
            s.sort_unstable();
            s.dedup();
            if let Some(&bad) = s.iter().find(|&&x| x == 0 || x > n) {
                return Err(Error::Precondition(format!("element {bad} outside [1, {n}]")));
            }
        }
        Ok(SetSystem { n, sets })
    }

    pub fn m(&self) -> usize {
        self.sets.len()
    }

    /// The discrepancy bound `2 sqrt(|S| ln 2m)` for a set of size `s`.
    pub fn balance_bound(&self, s: usize) -> f64 {
        2.0 * (s as f64 * (2.0 * self.m().max(1) as f64).ln()).sqrt()
    }
}

/// Signs `x` in `{+1, -1}^n` with `|sum_{j in S_i} x_j| <= 2 sqrt(|S_i| ln 2m)`
/// for every set. Elements are fixed in order `1..=n` by the method of
/// conditional probabilities; ties pick `+1`.
pub fn set_balancing(system: &SetSystem) -> Vec<i8> {
    let n = system.n;
    let m = system.m();
    let mut signs = vec![1i8; n];
    if m == 0 {
        return signs;
    }
    let ln2m = (2.0 * m as f64).ln();
    let mut member_of: Vec<Vec<usize>> = vec![Vec::new(); n + 1];
    for (i, s) in system.sets.iter().enumerate() {
        for &j in s {
            member_of[j].push(i);
        }
    }
    let lambda: Vec<f64> = system
        .sets
        .iter()
        .map(|s| {
            let k = s.len() as f64;
            if k == 0.0 {
                0.0
            } else {
                2.0 * (k * ln2m).sqrt() / k
            }
        })
        .collect();
    let delta: Vec<f64> = system.sets.iter().map(|s| system.balance_bound(s.len())).collect();
    let mut disc = vec![0i64; m];
    let mut unfixed: Vec<usize> = system.sets.iter().map(|s| s.len()).collect();

    // Contribution of set i to the pessimistic estimator after setting
    // one more of its elements to `s`.
    let term = |i: usize, d: i64, u: usize, s: i64| -> f64 {
        let l = lambda[i];
        let rest = (u - 1) as f64 * l.cosh().ln();
        let d = (d + s) as f64;
        (l * (d - delta[i]) + rest).exp() + (l * (-d - delta[i]) + rest).exp()
    };

    for j in 1..=n {
        if member_of[j].is_empty() {
            continue;
        }
        let (mut plus, mut minus) = (0.0, 0.0);
        for &i in &member_of[j] {
            plus += term(i, disc[i], unfixed[i], 1);
            minus += term(i, disc[i], unfixed[i], -1);
        }
        let s = if minus < plus { -1 } else { 1 };
        signs[j - 1] = s as i8;
        for &i in &member_of[j] {
            disc[i] += s;
            unfixed[i] -= 1;
        }
    }
    signs
}

/// Output of [`balls_and_bins`].
#[derive(Clone, Debug, PartialEq)]
pub struct BalancedColoring {
    /// Color of element `j` at index `j - 1`, in `0..classes`.
    pub colors: Vec<usize>,
    /// Number of classes: `r` rounded down to a power of two.
    pub classes: usize,
    /// Guaranteed bound on `|S_i ∩ color class|`.
    pub bound: f64,
}

/// `max(1, log2 m)`.
pub fn lg(m: usize) -> f64 {
    (m.max(1) as f64).log2().max(1.0)
}

/// `b_0 = 2 r lg m`, `b_k = b_{k-1} / 2 + sqrt(b_{k-1} ln 2m)`, evaluated to
/// `levels` steps.
pub fn halving_bound(b0: f64, m: usize, levels: u32) -> f64 {
    let ln2m = (2.0 * m.max(1) as f64).ln();
    let mut b = b0;
    for _ in 0..levels {
        b = b / 2.0 + (b * ln2m).sqrt();
    }
    b
}

/// Color `1..=n` with `r` colors (rounded down to a power of two) such that
/// each set meets each color class in at most `bound` elements.
///
/// Requires `|S_i| <= r lg m` for every set.
pub fn balls_and_bins(system: &SetSystem, r: usize) -> Result<BalancedColoring> {
    if r == 0 {
        return Err(Error::Precondition("need at least one color".into()));
    }
    let m = system.m();
    let lgm = lg(m);
    if let Some(s) = system.sets.iter().find(|s| s.len() as f64 > r as f64 * lgm) {
        return Err(Error::Precondition(format!(
            "set of size {} exceeds r lg m = {}",
            s.len(),
            r as f64 * lgm
        )));
    }
    let classes = 1usize << (usize::BITS - 1 - r.leading_zeros());
    let levels = classes.trailing_zeros();
    let mut colors = vec![0usize; system.n];
    for level in 0..levels {
        // Split every current class in two.
        let current = 1usize << level;
        let mut members: Vec<Vec<usize>> = vec![Vec::new(); current];
        for j in 1..=system.n {
            members[colors[j - 1]].push(j);
        }
        for (c, elems) in members.iter().enumerate() {
            if elems.is_empty() {
                continue;
            }
            // Relabel the class as 1..=len for the balancing call.
            let mut local = vec![0usize; system.n + 1];
            for (k, &j) in elems.iter().enumerate() {
                local[j] = k + 1;
            }
            let sets = system
                .sets
                .iter()
                .map(|s| s.iter().filter(|&&j| local[j] != 0).map(|&j| local[j]).collect())
                .collect();
            let signs = set_balancing(&SetSystem {
                n: elems.len(),
                sets,
            });
            for (k, &j) in elems.iter().enumerate() {
                if signs[k] < 0 {
                    colors[j - 1] = c + current;
                }
            }
        }
    }
    let bound = halving_bound(2.0 * classes as f64 * lgm, m, levels);
    Ok(BalancedColoring {
        colors,
        classes,
        bound,
    })
}

// ---------------------------------------------------------------------------
// GF(2^l)
// ---------------------------------------------------------------------------

fn degree(p: u128) -> i32 {
    127 - p.leading_zeros() as i32
}

fn poly_mod(mut a: u128, f: u128) -> u128 {
    let df = degree(f);
    while a != 0 && degree(a) >= df {
        a ^= f << (degree(a) - df);
    }
    a
}

fn poly_mulmod(a: u128, b: u128, f: u128) -> u128 {
    let df = degree(f);
    let (mut a, mut b, mut r) = (a, b, 0u128);
    while b != 0 {
        if b & 1 == 1 {
            r ^= a;
        }
        b >>= 1;
        a <<= 1;
        if degree(a) == df {
            a ^= f;
        }
    }
    r
}

fn poly_gcd(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let r = poly_mod(a, b);
        a = b;
        b = r;
    }
    a
}

/// Ben-Or irreducibility test for a polynomial of degree `>= 1`.
fn is_irreducible(f: u128) -> bool {
    let d = degree(f);
    let x = 2u128;
    let mut s = x;
    for _ in 0..d / 2 {
        s = poly_mulmod(s, s, f);
        if poly_gcd(s ^ x, f) != 1 {
            return false;
        }
    }
    true
}

/// Lexicographically first irreducible polynomial of each degree `1..=63`,
/// as a bit mask including the leading term.
fn irreducibles() -> &'static [u128; 64] {
    static TABLE: OnceLock<[u128; 64]> = OnceLock::new();
    TABLE.get_or_init(|| {
        let mut t = [0u128; 64];
        for (l, slot) in t.iter_mut().enumerate().skip(1) {
            let lead = 1u128 << l;
            *slot = (0..lead)
                .map(|low| lead | low)
                .find(|&f| is_irreducible(f))
                .expect("irreducible polynomials exist in every degree");
        }
        t
    })
}

/// `h(x) = top log2(m) bits of (a * x) xor b` over `GF(2^l)`, `n = 2^l`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct PairwiseHash {
    l: u32,
    k: u32,
    a: u64,
    b: u64,
    modulus: u128,
}

impl PairwiseHash {
    /// Domain and range sizes must be powers of two with `n >= m >= 2`.
    /// The seed packs `a` in its low `log2 n` bits and `b` above them.
    pub fn sample(n: u64, m: u64, seed: u64) -> Result<Self> {
        for v in [n, m] {
            if !v.is_power_of_two() {
                return Err(Error::NotPowerOfTwo(v));
            }
        }
        if m < 2 || n < m {
            return Err(Error::Precondition(format!("need n >= m >= 2, got n={n} m={m}")));
        }
        let l = n.trailing_zeros();
        let k = m.trailing_zeros();
        if l > 63 {
            return Err(Error::Precondition("domain too large".into()));
        }
        let a = seed & (n - 1);
        let b = (seed >> l) & (m - 1);
        Ok(PairwiseHash {
            l,
            k,
            a,
            b,
            modulus: irreducibles()[l as usize],
        })
    }

    pub fn seed_count(&self) -> u128 {
        1u128 << (self.l + self.k)
    }

    pub fn eval(&self, x: u64) -> u64 {
        debug_assert!(x >> self.l == 0);
        let prod = poly_mulmod(self.a as u128, x as u128, self.modulus) as u64;
        (prod >> (self.l - self.k)) ^ self.b
    }
}

/// Colorings `h_1..h_k: 0..universe -> 0..b^2` (range rounded up to a
/// power of two) such that every set is injectively colored by some `h_j`.
/// Set elements are 0-based. Each returned coloring is a lookup table.
pub fn isolating_colorings(universe: usize, sets: &[Vec<usize>]) -> Result<Vec<Vec<u32>>> {
    if let Some(bad) = sets.iter().flatten().find(|&&x| x >= universe) {
        return Err(Error::Precondition(format!("element {bad} outside universe {universe}")));
    }
    if sets.is_empty() {
        return Ok(Vec::new());
    }
    let b = sets.iter().map(|s| s.len()).max().unwrap_or(0).max(1);
    let range = (b * b).max(2).next_power_of_two() as u64;
    let domain = (universe as u64).max(range).max(2).next_power_of_two();

    let mut remaining: Vec<usize> = (0..sets.len()).collect();
    let mut out = Vec::new();
    let mut seen = vec![u32::MAX; range as usize];
    let mut stamp = 0u32;
    while !remaining.is_empty() {
        let need = remaining.len().div_ceil(2);
        let mut chosen = None;
        for a in (0..domain).rev() {
            let h = PairwiseHash::sample(domain, range, a)?;
            let mut good = Vec::with_capacity(remaining.len());
            let mut bad = 0;
            for &i in &remaining {
                stamp += 1;
                let injective = sets[i].iter().all(|&x| {
                    let c = h.eval(x as u64) as usize;
                    let fresh = seen[c] != stamp;
                    seen[c] = stamp;
                    fresh
                });
                if injective {
                    good.push(i);
                } else {
                    bad += 1;
                    if remaining.len() - bad < need {
                        break;
                    }
                }
            }
            if good.len() >= need {
                chosen = Some((h, good));
                break;
            }
        }
        let (h, good) = chosen.ok_or_else(|| {
            Error::Contract("no isolating hash seed found".into())
        })?;
        out.push((0..universe).map(|x| h.eval(x as u64) as u32).collect());
        let mut good = good;
        good.sort_unstable();
        remaining.retain(|i| good.binary_search(i).is_err());
    }
    Ok(out)
}
