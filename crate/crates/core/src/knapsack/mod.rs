//! Exact 0-1 knapsack around the greedy prefix.
//!
//! Profits are made distinct by tie-breaking. The greedy prefix is close
//! to some optimal solution, so the problem becomes finding the best
//! bounded correction: items added from outside the prefix and items
//! removed from it, grouped by weight into concave profiles. Corrections
//! with small support come from a direct DP; they are then grown along
//! weights already in their support, positive weights first.

pub mod base;
pub mod color;
pub mod extend;
pub mod profile;
pub mod proximity;
pub mod singleton;
pub mod solve;
pub mod tiebreak;

pub use solve::{solve_01_knapsack, solve_proximity, KnapsackAlgo, KnapsackOptions, KnapsackOutcome};
