//! Exact solvers for 0-1 Knapsack and Subset Sum whose running time is
//! governed by the largest item weight rather than the capacity.
//!
//! The knapsack solver starts from the greedy prefix solution and searches
//! only for small corrections to it, propagating candidate solutions along
//! weights already in their support. Subset sum uses the same proximity
//! argument with a layered sumset computation.
//!
//! ```
//! use proxknap::{solve_01_knapsack, KnapsackInstance, KnapsackOptions};
//!
//! let inst = KnapsackInstance::from_pairs(4, &[(2, 3), (3, 4)]);
//! let out = solve_01_knapsack(&inst, &KnapsackOptions::default()).unwrap();
//! assert_eq!(out.value, 4);
//! assert_eq!(out.selection.as_slice(), &[2]);
//! ```

pub mod cli;
pub mod convolution;
pub mod derandomize;
pub mod error;
pub mod knapsack;
pub mod model;
pub mod oracles;
pub mod profit;
pub mod smawk;
pub mod stats;
pub mod subset_sum;

pub use error::{Error, Result};
pub use knapsack::{solve_01_knapsack, KnapsackAlgo, KnapsackOptions, KnapsackOutcome};
pub use model::{
    parse_instance, serialize_instance, validate, Instance, Item, ItemSelection,
    KnapsackInstance, NormalizedInstance, SolutionVector, SubsetSumInstance,
};
pub use profit::{AdjustedProfit, Score};
