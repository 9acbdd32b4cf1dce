//! Extending partial solutions along the keys in their support.

use std::sync::Arc;

use proxknap::knapsack::color::large_b_extend;
use proxknap::knapsack::extend::{ExtendContext, SetTable, WeakExtendInstance};
use proxknap::knapsack::profile::ConcaveProfile;
use proxknap::stats::Stats;
use proxknap::{AdjustedProfit, Score};

fn main() -> proxknap::Result<()> {
    let profile = |incs: &[i128]| {
        let v: Vec<AdjustedProfit> = incs.iter().map(|&x| AdjustedProfit::plain(x)).collect();
        ConcaveProfile::new(&v, AdjustedProfit::plain(1000))
    };
    // Keys of weight 2 and 3.
    let ctx = ExtendContext::new(&[2, 3], vec![profile(&[10, 6, 1]), profile(&[12, 4])]);
    let mut table = SetTable::new();
    let both = table.intern(vec![0, 1]);
    let only_three = table.intern(vec![1]);
    let len = 16;
    let mut q = vec![Score::Bottom; len];
    let mut handles = vec![0; len];
    q[0] = Score::ZERO;
    handles[0] = both;
    q[1] = Score::plain(5);
    handles[1] = only_three;
    let inst = WeakExtendInstance {
        universe: vec![0, 1],
        q,
        handles,
        table: Arc::new(table),
    };
    let sol = large_b_extend(&ctx, &inst, &Stats::new())?;
    sol.check(&ctx, &inst)?;
    for i in 0..len {
        let (z, x) = sol.extension(i);
        let shown = match sol.r[i].finite() {
            Some(v) => v.main.to_string(),
            None => "-inf".to_string(),
        };
        println!("r[{i:2}] = {shown:>5}  from {z:2}  counts {x:?}");
    }
    Ok(())
}
