//! Solve a small knapsack instance and compare with the capacity DP.

use proxknap::oracles::bellman_select;
use proxknap::{solve_01_knapsack, KnapsackAlgo, KnapsackInstance, KnapsackOptions};

fn main() -> proxknap::Result<()> {
    let inst = KnapsackInstance::from_pairs(
        23,
        &[(5, 11), (7, 13), (3, 7), (9, 20), (4, 8), (6, 14), (8, 15), (2, 3)],
    );
    let opts = KnapsackOptions {
        algo: KnapsackAlgo::Proximity,
        ..Default::default()
    };
    let out = solve_01_knapsack(&inst, &opts)?;
    println!("value {}", out.value);
    println!("items {:?}", out.selection.as_slice());
    println!("weight {} of {}", inst.weight_of(&out.selection), inst.capacity);
    println!("SMAWK entry evaluations {}", out.counters.entries);

    let (dp_value, _) = bellman_select(&inst)?;
    assert_eq!(dp_value, out.value);
    println!("capacity DP agrees");
    Ok(())
}
