//! Tie-broken profits.
//!
//! A raw profit `p_i` of item `i` becomes the pair `(p_i, i * w_max + 1)`.
//! Pairs add component-wise and compare lexicographically, which is the
//! same as scaling the first component by an unboundedly large factor.
//! This keeps every item profit and every efficiency distinct without
//! resorting to big-integer arithmetic.

use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, AddAssign, Neg, Sub};

/// A finite tie-broken profit. Comparison is lexicographic (`main` first).
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct AdjustedProfit {
    /// Sum of original profits.
    pub main: i128,
    /// Sum of perturbations.
    pub tiebreak: i128,
}

impl AdjustedProfit {
    pub const ZERO: AdjustedProfit = AdjustedProfit {
        main: 0,
        tiebreak: 0,
    };

    pub const fn new(main: i128, tiebreak: i128) -> Self {
        AdjustedProfit { main, tiebreak }
    }

    /// Profit with no perturbation.
    pub const fn plain(main: i128) -> Self {
        AdjustedProfit { main, tiebreak: 0 }
    }

    pub fn scale(self, k: i128) -> Self {
        AdjustedProfit {
            main: self.main * k,
            tiebreak: self.tiebreak * k,
        }
    }
}

impl Add for AdjustedProfit {
    type Output = AdjustedProfit;
    fn add(self, rhs: Self) -> Self {
        AdjustedProfit {
            main: self.main + rhs.main,
            tiebreak: self.tiebreak + rhs.tiebreak,
        }
    }
}

impl AddAssign for AdjustedProfit {
    fn add_assign(&mut self, rhs: Self) {
        self.main += rhs.main;
        self.tiebreak += rhs.tiebreak;
    }
}

impl Sub for AdjustedProfit {
    type Output = AdjustedProfit;
    fn sub(self, rhs: Self) -> Self {
        AdjustedProfit {
            main: self.main - rhs.main,
            tiebreak: self.tiebreak - rhs.tiebreak,
        }
    }
}

impl Neg for AdjustedProfit {
    type Output = AdjustedProfit;
    fn neg(self) -> Self {
        AdjustedProfit {
            main: -self.main,
            tiebreak: -self.tiebreak,
        }
    }
}

impl fmt::Display for AdjustedProfit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.main, self.tiebreak)
    }
}

/// A profit that may be `Bottom` (minus infinity).
///
/// `Bottom` compares below every finite value and absorbs addition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Score {
    Bottom,
    Finite(AdjustedProfit),
}

impl Score {
    pub const ZERO: Score = Score::Finite(AdjustedProfit::ZERO);

    pub fn is_finite(self) -> bool {
        matches!(self, Score::Finite(_))
    }

    pub fn finite(self) -> Option<AdjustedProfit> {
        match self {
            Score::Bottom => None,
            Score::Finite(p) => Some(p),
        }
    }

    pub fn plain(main: i128) -> Score {
        Score::Finite(AdjustedProfit::plain(main))
    }
}

impl From<AdjustedProfit> for Score {
    fn from(p: AdjustedProfit) -> Self {
        Score::Finite(p)
    }
}

impl Ord for Score {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Score::Bottom, Score::Bottom) => Ordering::Equal,
            (Score::Bottom, _) => Ordering::Less,
            (_, Score::Bottom) => Ordering::Greater,
            (Score::Finite(a), Score::Finite(b)) => a.cmp(b),
        }
    }
}

impl PartialOrd for Score {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for Score {
    type Output = Score;
    fn add(self, rhs: Self) -> Score {
        match (self, rhs) {
            (Score::Finite(a), Score::Finite(b)) => Score::Finite(a + b),
            _ => Score::Bottom,
        }
    }
}

impl Add<AdjustedProfit> for Score {
    type Output = Score;
    fn add(self, rhs: AdjustedProfit) -> Score {
        match self {
            Score::Finite(a) => Score::Finite(a + rhs),
            Score::Bottom => Score::Bottom,
        }
    }
}

impl fmt::Display for Score {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Score::Bottom => f.write_str("-inf"),
            Score::Finite(p) => p.fmt(f),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn bottom_absorbs_and_sorts_first() {
        let x = Score::plain(-1_000_000);
        assert!(Score::Bottom < x);
        assert_eq!(Score::Bottom + x, Score::Bottom);
        assert_eq!(x + Score::Bottom, Score::Bottom);
        assert_eq!(Score::Bottom + AdjustedProfit::plain(3), Score::Bottom);
    }

    #[test]
    fn lexicographic_order() {
        let a = AdjustedProfit::new(3, 100);
        let b = AdjustedProfit::new(4, -100);
        assert!(a < b);
        assert!(AdjustedProfit::new(3, 1) < AdjustedProfit::new(3, 2));
        assert_eq!(-(a + b), AdjustedProfit::new(-7, 0));
    }
}
