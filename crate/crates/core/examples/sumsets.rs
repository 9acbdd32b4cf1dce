//! Sumsets, difference sets and bounded subset sums.

use proxknap::convolution::{all_subset_sums, difference_set, sumset_with, Backend, IntegerSet, SumsMode};

fn main() -> proxknap::Result<()> {
    let a = IntegerSet::from_values(&[0, 3, 7, 12]);
    let b = IntegerSet::from_values(&[-2, 5, 9]);
    let shift_or = sumset_with(&a, &b, Backend::ShiftOr)?;
    let ntt = sumset_with(&a, &b, Backend::Ntt)?;
    assert_eq!(shift_or.to_vec(), ntt.to_vec());
    println!("A + B = {:?}", ntt.to_vec());
    println!("A - B = {:?}", difference_set(&a, &b)?.to_vec());

    let elems = [4, 9, 9, 15, 22];
    let sums = all_subset_sums(&elems, 40, SumsMode::Deterministic)?;
    println!("subset sums of {elems:?} up to 40: {:?}", sums.to_vec());
    Ok(())
}
