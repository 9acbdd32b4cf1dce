//! Subset sum through the layered sumset computation.

use proxknap::convolution::SumsMode;
use proxknap::subset_sum::{solve_subset_sum, SubsetSumOptions};
use proxknap::SubsetSumInstance;

fn main() -> proxknap::Result<()> {
    let elems = vec![31, 17, 29, 40, 23, 11, 37, 19, 13, 40, 7];
    for target in [100, 151, 267, 999] {
        let inst = SubsetSumInstance::new(target, elems.clone());
        let det = solve_subset_sum(&inst, &SubsetSumOptions::default())?;
        let rnd = solve_subset_sum(
            &inst,
            &SubsetSumOptions {
                mode: SumsMode::Randomized { seed: 42 },
                ..Default::default()
            },
        )?;
        assert_eq!((det.value, det.decision), (rnd.value, rnd.decision));
        println!(
            "t = {target:4}: best {:4}, exact hit {}, convolution length {}",
            det.value, det.decision, det.counters.conv_len
        );
    }
    Ok(())
}
