//! Reading, validating and writing instance files.

use proxknap::{parse_instance, serialize_instance, validate, Error};

fn main() -> proxknap::Result<()> {
    let text = "# three items, the second too heavy\nknapsack 3 10\n4 5\n12 30\n6 7\n";
    let inst = parse_instance(text)?;
    print!("{}", serialize_instance(&inst));

    let norm = validate(&inst.as_knapsack())?;
    println!("kept {:?}, dropped {:?}, all fit: {}", norm.original_index, norm.dropped, norm.trivial_all);

    for bad in ["knapsack 2 5\n1 1\n", "knapsack 1 5\n1 -4\n", "subsetsum 1 5\n0\n"] {
        match parse_instance(bad) {
            Err(e @ Error::Syntax { .. }) | Err(e @ Error::CountMismatch { .. }) | Err(e @ Error::Malformed(_)) => {
                println!("rejected: {e}")
            }
            other => println!("unexpected: {other:?}"),
        }
    }
    Ok(())
}
