//! Instances, selections, validation and the plain-text instance format.
//!
//! ```text
//! knapsack-file  := "knapsack" SP n SP t NL (w SP p NL){n}
//! subsetsum-file := "subsetsum" SP n SP t NL (w NL){n}
//! ```
//!
//! Lines starting with `#` are comments. Integers are unsigned decimal
//! without leading zeros.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// Maximum number of items accepted.
pub const MAX_ITEMS: u64 = 1 << 22;
/// Maximum item weight accepted.
pub const MAX_WEIGHT: u64 = 1 << 20;
/// Maximum item profit accepted.
pub const MAX_PROFIT: u64 = 1 << 32;
/// Maximum capacity accepted.
pub const MAX_CAPACITY: u64 = 1 << 50;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Item {
    pub weight: i64,
    pub profit: i64,
}

impl Item {
    pub const fn new(weight: i64, profit: i64) -> Self {
        Item { weight, profit }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct KnapsackInstance {
    pub capacity: i64,
    pub items: Vec<Item>,
}

impl KnapsackInstance {
    pub fn new(capacity: i64, items: Vec<Item>) -> Self {
        KnapsackInstance { capacity, items }
    }

    /// Build from `(weight, profit)` pairs.
    pub fn from_pairs(capacity: i64, pairs: &[(i64, i64)]) -> Self {
        Self::new(
            capacity,
            pairs.iter().map(|&(w, p)| Item::new(w, p)).collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    /// Largest item weight (0 for an empty instance).
    pub fn w_max(&self) -> i64 {
        self.items.iter().map(|it| it.weight).max().unwrap_or(0)
    }

    /// Enforce the global input limits.
    pub fn check_limits(&self) -> Result<()> {
        check_limit("n", self.items.len() as u128, MAX_ITEMS)?;
        if self.capacity < 0 {
            return Err(Error::Malformed(format!(
                "negative capacity {}",
                self.capacity
            )));
        }
        check_limit("t", self.capacity as u128, MAX_CAPACITY)?;
        for (k, it) in self.items.iter().enumerate() {
            if it.weight <= 0 {
                return Err(Error::Malformed(format!(
                    "item {} has non-positive weight {}",
                    k + 1,
                    it.weight
                )));
            }
            if it.profit < 0 {
                return Err(Error::Malformed(format!(
                    "item {} has negative profit {}",
                    k + 1,
                    it.profit
                )));
            }
            check_limit("weight", it.weight as u128, MAX_WEIGHT)?;
            check_limit("profit", it.profit as u128, MAX_PROFIT)?;
        }
        Ok(())
    }

    /// Total profit of a selection (1-based indices).
    pub fn profit_of(&self, sel: &ItemSelection) -> i64 {
        sel.iter().map(|i| self.items[i - 1].profit).sum()
    }

    /// Total weight of a selection (1-based indices).
    pub fn weight_of(&self, sel: &ItemSelection) -> i64 {
        sel.iter().map(|i| self.items[i - 1].weight).sum()
    }
}

fn check_limit(what: &'static str, value: u128, limit: u64) -> Result<()> {
    if value > limit as u128 {
        Err(Error::Limit {
            what,
            value,
            limit: limit as u128,
        })
    } else {
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubsetSumInstance {
    pub target: i64,
    pub elements: Vec<i64>,
}

impl SubsetSumInstance {
    pub fn new(target: i64, elements: Vec<i64>) -> Self {
        SubsetSumInstance { target, elements }
    }

    /// The knapsack instance with profit equal to weight.
    pub fn to_knapsack(&self) -> KnapsackInstance {
        KnapsackInstance::new(
            self.target,
            self.elements.iter().map(|&w| Item::new(w, w)).collect(),
        )
    }
}

/// Either kind of instance file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Instance {
    Knapsack(KnapsackInstance),
    SubsetSum(SubsetSumInstance),
}

impl Instance {
    pub fn as_knapsack(&self) -> KnapsackInstance {
        match self {
            Instance::Knapsack(k) => k.clone(),
            Instance::SubsetSum(s) => s.to_knapsack(),
        }
    }
}

/// Sorted set of 1-based item indices.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ItemSelection(Vec<usize>);

impl ItemSelection {
    pub fn empty() -> Self {
        ItemSelection(Vec::new())
    }

    /// Sorts and deduplicates. Fails if an index lies outside `[1, n]`.
    pub fn new(mut indices: Vec<usize>, n: usize) -> Result<Self> {
        indices.sort_unstable();
        indices.dedup();
        if let Some(&bad) = indices.iter().find(|&&i| i == 0 || i > n) {
            return Err(Error::Precondition(format!(
                "item index {bad} outside [1, {n}]"
            )));
        }
        Ok(ItemSelection(indices))
    }

    /// Trusts the caller that `indices` is strictly increasing.
    pub(crate) fn from_sorted(indices: Vec<usize>) -> Self {
        debug_assert!(indices.windows(2).all(|w| w[0] < w[1]));
        ItemSelection(indices)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, i: usize) -> bool {
        self.0.binary_search(&i).is_ok()
    }
}

/// Sparse count vector indexed by signed weight keys.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SolutionVector {
    counts: BTreeMap<i64, u64>,
}

impl SolutionVector {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, key: i64, count: u64) {
        if count > 0 {
            *self.counts.entry(key).or_insert(0) += count;
        }
    }

    pub fn get(&self, key: i64) -> u64 {
        self.counts.get(&key).copied().unwrap_or(0)
    }

    pub fn iter(&self) -> impl Iterator<Item = (i64, u64)> + '_ {
        self.counts.iter().map(|(&k, &c)| (k, c))
    }

    /// Number of keys with a nonzero count.
    pub fn l0(&self) -> usize {
        self.counts.len()
    }

    /// Sum of counts.
    pub fn l1(&self) -> u64 {
        self.counts.values().sum()
    }

    /// `sum(w * x_w)`.
    pub fn total_weight(&self) -> i64 {
        self.counts.iter().map(|(&k, &c)| k * c as i64).sum()
    }
}

/// Output of [`validate`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NormalizedInstance {
    pub capacity: i64,
    /// Items that fit on their own.
    pub items: Vec<Item>,
    /// 1-based index in the original instance for each kept item.
    pub original_index: Vec<usize>,
    /// Original indices of the items that were dropped for being heavier
    /// than the capacity.
    pub dropped: Vec<usize>,
    /// All kept items fit together; taking all of them is optimal.
    pub trivial_all: bool,
}

impl NormalizedInstance {
    pub fn w_max(&self) -> i64 {
        self.items.iter().map(|it| it.weight).max().unwrap_or(0)
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn as_knapsack(&self) -> KnapsackInstance {
        KnapsackInstance::new(self.capacity, self.items.clone())
    }

    /// Map local 1-based indices back to original ones.
    pub fn to_original(&self, local: impl IntoIterator<Item = usize>) -> ItemSelection {
        let mut v: Vec<usize> = local
            .into_iter()
            .map(|i| self.original_index[i - 1])
            .collect();
        v.sort_unstable();
        ItemSelection::from_sorted(v)
    }
}

/// Drop items heavier than the capacity and detect the case where all
/// remaining items fit.
pub fn validate(instance: &KnapsackInstance) -> Result<NormalizedInstance> {
    instance.check_limits()?;
    let t = instance.capacity;
    let mut items = Vec::new();
    let mut original_index = Vec::new();
    let mut dropped = Vec::new();
    for (k, it) in instance.items.iter().enumerate() {
        if it.weight > t {
            dropped.push(k + 1);
        } else {
            items.push(*it);
            original_index.push(k + 1);
        }
    }
    let total: i64 = items.iter().map(|it| it.weight).sum();
    Ok(NormalizedInstance {
        capacity: t,
        items,
        original_index,
        dropped,
        trivial_all: total <= t,
    })
}

// ---------------------------------------------------------------------------
// Text format
// ---------------------------------------------------------------------------

struct Cursor<'a> {
    lines: std::iter::Peekable<std::iter::Enumerate<std::str::Split<'a, char>>>,
}

impl<'a> Cursor<'a> {
    fn new(text: &'a str) -> Self {
        Cursor {
            lines: text.split('\n').enumerate().peekable(),
        }
    }

    /// Next non-comment line with its 1-based line number.
    fn next_line(&mut self) -> Option<(usize, &'a str)> {
        for (no, line) in self.lines.by_ref() {
            let line = line.strip_suffix('\r').unwrap_or(line);
            if line.starts_with('#') || line.is_empty() {
                continue;
            }
            return Some((no + 1, line));
        }
        None
    }
}

fn syntax(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Syntax {
        line,
        column,
        message: message.into(),
    }
}

/// Split on single spaces, returning `(column, token)` pairs.
fn tokens(line_no: usize, line: &str) -> Result<Vec<(usize, &str)>> {
    let mut out = Vec::new();
    let mut col = 1;
    for tok in line.split(' ') {
        if tok.is_empty() {
            return Err(syntax(line_no, col, "expected a single space separator"));
        }
        out.push((col, tok));
        col += tok.len() + 1;
    }
    Ok(out)
}

fn parse_uint(line: usize, column: usize, tok: &str, what: &'static str, limit: u64) -> Result<u64> {
    if !tok.bytes().all(|b| b.is_ascii_digit()) {
        return Err(syntax(line, column, format!("expected unsigned integer, found {tok:?}")));
    }
    if tok.len() > 1 && tok.starts_with('0') {
        return Err(syntax(line, column, format!("leading zero in {tok:?}")));
    }
    let mut v: u128 = 0;
    for b in tok.bytes() {
        v = v * 10 + (b - b'0') as u128;
        if v > limit as u128 {
            return Err(Error::Limit {
                what,
                value: v,
                limit: limit as u128,
            });
        }
    }
    Ok(v as u64)
}

/// Parse an instance file.
pub fn parse_instance(text: &str) -> Result<Instance> {
    let mut cur = Cursor::new(text);
    let (hl, header) = cur
        .next_line()
        .ok_or_else(|| syntax(1, 1, "empty input"))?;
    let toks = tokens(hl, header)?;
    if toks.len() != 3 {
        return Err(syntax(hl, 1, "header must be: <kind> <n> <t>"));
    }
    let (kind_col, kind) = toks[0];
    let n = parse_uint(hl, toks[1].0, toks[1].1, "n", MAX_ITEMS)? as usize;
    let t = parse_uint(hl, toks[2].0, toks[2].1, "t", MAX_CAPACITY)? as i64;
    let knapsack = match kind {
        "knapsack" => true,
        "subsetsum" => false,
        other => return Err(syntax(hl, kind_col, format!("unknown instance kind {other:?}"))),
    };
    let mut items = Vec::with_capacity(n);
    while let Some((ln, line)) = cur.next_line() {
        if items.len() == n {
            // Count the surplus for the error message.
            let surplus = 1 + std::iter::from_fn(|| cur.next_line()).count();
            return Err(Error::CountMismatch {
                declared: n,
                found: n + surplus,
            });
        }
        let toks = tokens(ln, line)?;
        let expected = if knapsack { 2 } else { 1 };
        if toks.len() != expected {
            return Err(syntax(
                ln,
                1,
                format!("expected {expected} integer(s) per item line, found {}", toks.len()),
            ));
        }
        let w = parse_uint(ln, toks[0].0, toks[0].1, "weight", MAX_WEIGHT)?;
        if w == 0 {
            return Err(Error::Malformed(format!("line {ln}: item weight must be positive")));
        }
        let p = if knapsack {
            parse_uint(ln, toks[1].0, toks[1].1, "profit", MAX_PROFIT)?
        } else {
            w
        };
        items.push(Item::new(w as i64, p as i64));
    }
    if items.len() != n {
        return Err(Error::CountMismatch {
            declared: n,
            found: items.len(),
        });
    }
    Ok(if knapsack {
        Instance::Knapsack(KnapsackInstance::new(t, items))
    } else {
        Instance::SubsetSum(SubsetSumInstance::new(
            t,
            items.into_iter().map(|it| it.weight).collect(),
        ))
    })
}

/// Canonical text form: single spaces, newline terminated, no comments.
pub fn serialize_instance(instance: &Instance) -> String {
    let mut out = String::new();
    match instance {
        Instance::Knapsack(k) => {
            let _ = writeln!(out, "knapsack {} {}", k.items.len(), k.capacity);
            for it in &k.items {
                let _ = writeln!(out, "{} {}", it.weight, it.profit);
            }
        }
        Instance::SubsetSum(s) => {
            let _ = writeln!(out, "subsetsum {} {}", s.elements.len(), s.target);
            for w in &s.elements {
                let _ = writeln!(out, "{w}");
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn validate_drops_heavy_items_and_flags_trivial() {
        let k = KnapsackInstance::from_pairs(4, &[(2, 3), (9, 100)]);
        let v = validate(&k).unwrap();
        assert_eq!(v.items, vec![Item::new(2, 3)]);
        assert_eq!(v.dropped, vec![2]);
        assert!(v.trivial_all);

        let k = KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]);
        let v = validate(&k).unwrap();
        assert_eq!(v.items.len(), 2);
        assert!(!v.trivial_all);
    }

    #[test]
    fn validate_rejects_zero_weight_and_negative_profit() {
        let k = KnapsackInstance::from_pairs(3, &[(0, 5)]);
        assert!(matches!(validate(&k), Err(Error::Malformed(_))));
        let k = KnapsackInstance::from_pairs(3, &[(1, -1)]);
        assert!(matches!(validate(&k), Err(Error::Malformed(_))));
    }

    #[test]
    fn parse_examples() {
        let k = parse_instance("knapsack 2 4\n2 3\n3 4\n").unwrap();
        assert_eq!(
            k,
            Instance::Knapsack(KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]))
        );
        let s = parse_instance("subsetsum 3 10\n3\n5\n7\n").unwrap();
        assert_eq!(s, Instance::SubsetSum(SubsetSumInstance::new(10, vec![3, 5, 7])));
        assert!(matches!(
            parse_instance("knapsack 1 4\n2 3\n3 4\n"),
            Err(Error::CountMismatch { declared: 1, found: 2 })
        ));
        assert!(matches!(
            parse_instance("knapsack 3 4\n2 3\n3 4\n"),
            Err(Error::CountMismatch { declared: 3, found: 2 })
        ));
    }

    #[test]
    fn parse_skips_comments() {
        let k = parse_instance("# generated\nknapsack 1 4\n# item\n2 3\n").unwrap();
        assert_eq!(k, Instance::Knapsack(KnapsackInstance::from_pairs(4, &[(2, 3)])));
    }

    #[test]
    fn parse_reports_position() {
        match parse_instance("knapsack 1 4\n2 x\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (2, 3)),
            other => panic!("unexpected {other:?}"),
        }
        match parse_instance("knapsack 1 04\n2 3\n") {
            Err(Error::Syntax { line, column, .. }) => assert_eq!((line, column), (1, 12)),
            other => panic!("unexpected {other:?}"),
        }
        assert!(matches!(parse_instance("knapsack  1 4\n"), Err(Error::Syntax { .. })));
        assert!(matches!(parse_instance("bag 0 4\n"), Err(Error::Syntax { .. })));
    }

    #[test]
    fn parse_enforces_limits() {
        let big = format!("knapsack 1 4\n{} 1\n", MAX_WEIGHT + 1);
        assert!(matches!(parse_instance(&big), Err(Error::Limit { what: "weight", .. })));
        let huge = "knapsack 0 999999999999999999999999999999\n";
        assert!(matches!(parse_instance(huge), Err(Error::Limit { what: "t", .. })));
    }

    #[test]
    fn serialize_examples() {
        let k = Instance::Knapsack(KnapsackInstance::from_pairs(4, &[(2, 3)]));
        assert_eq!(serialize_instance(&k), "knapsack 1 4\n2 3\n");
        let s = Instance::SubsetSum(SubsetSumInstance::new(0, vec![]));
        assert_eq!(serialize_instance(&s), "subsetsum 0 0\n");
    }

    #[test]
    fn solution_vector_norms() {
        let mut x = SolutionVector::new();
        x.add(3, 2);
        x.add(-2, 1);
        x.add(5, 0);
        assert_eq!(x.l0(), 2);
        assert_eq!(x.l1(), 3);
        assert_eq!(x.total_weight(), 4);
    }
}
