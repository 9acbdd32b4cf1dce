//! Cross-check the fast solvers against the reference oracles on random
//! instances.

use proxknap::cli::{verify_with, VerifyConfig, VerifyOutcome};
use proxknap::oracles::bellman_dp;
use proxknap::{solve_01_knapsack, Instance, KnapsackAlgo, KnapsackOptions};

fn main() -> proxknap::Result<()> {
    let cfg = VerifyConfig {
        trials: 500,
        max_n: 40,
        max_w: 20,
        seed: 2024,
        subset_sum: false,
        artifact: std::env::temp_dir().join("proxknap-crosscheck.txt"),
    };
    let fast = |i: &Instance| {
        let opts = KnapsackOptions {
            algo: KnapsackAlgo::Proximity,
            ..Default::default()
        };
        Ok(solve_01_knapsack(&i.as_knapsack(), &opts)?.value)
    };
    let reference = |i: &Instance| Ok(bellman_dp(&i.as_knapsack())?.value());
    match verify_with(&cfg, fast, reference)? {
        VerifyOutcome::Passed { trials } => println!("{trials}/{trials} ok"),
        VerifyOutcome::Mismatch { trial, artifact, .. } => {
            println!("mismatch on trial {trial}, see {}", artifact.display());
            std::process::exit(1);
        }
    }
    Ok(())
}
