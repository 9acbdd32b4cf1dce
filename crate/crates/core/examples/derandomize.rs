//! Deterministic balancing, balanced colorings and isolating hash families.

use proxknap::derandomize::{balls_and_bins, isolating_colorings, set_balancing, SetSystem};

fn main() -> proxknap::Result<()> {
    let sets: Vec<Vec<usize>> = (1..=10)
        .map(|s| (1..=48).filter(|x| (x * s) % 11 < 4).collect())
        .collect();
    let system = SetSystem::new(48, sets)?;

    let signs = set_balancing(&system);
    for (k, s) in system.sets.iter().enumerate().take(4) {
        let disc: i64 = s.iter().map(|&j| signs[j - 1] as i64).sum();
        println!("set {k}: size {:2}, discrepancy {disc:3}, bound {:.2}", s.len(), system.balance_bound(s.len()));
    }

    let coloring = balls_and_bins(&system, 8)?;
    println!("{} classes, per-class bound {:.2}", coloring.classes, coloring.bound);

    let small: Vec<Vec<usize>> = vec![vec![0, 1, 2], vec![2, 5, 9], vec![1, 4], vec![3, 7, 8]];
    let family = isolating_colorings(10, &small)?;
    println!("{} coloring(s) isolate all {} sets", family.len(), small.len());
    Ok(())
}
