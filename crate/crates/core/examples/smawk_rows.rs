//! Row maxima of a concave staircase matrix with few entry evaluations.

use proxknap::oracles::naive_row_maxima;
use proxknap::smawk::{smawk_compact, Counted, FnMatrix};
use proxknap::Score;

fn main() -> proxknap::Result<()> {
    // Column j starts at row 3j with a higher offset and a concave gain.
    let (rows, cols) = (2000, 40);
    let offsets: Vec<i64> = (0..cols).map(|j| j as i64 * 60_000 + (j as i64 * 37) % 101).collect();
    let gain = |d: usize| (d as f64).sqrt() * 100.0;
    let view = FnMatrix::new(rows, cols, |i: usize, j: usize| {
        if i < 3 * j {
            Score::Bottom
        } else {
            Score::plain(offsets[j] as i128 + gain(i - 3 * j).floor() as i128 * 1000 - (i - 3 * j) as i128)
        }
    });
    let counted = Counted::new(&view);
    let maxima = smawk_compact(&counted)?;
    println!("{rows}x{cols} matrix, {} entry evaluations", counted.evaluations());
    for j in 0..cols {
        let r = maxima.rows_of(j);
        if !r.is_empty() {
            println!("column {j:2} wins rows {}..{}", r.start, r.end);
        }
    }
    let naive: Vec<usize> = naive_row_maxima(&view).into_iter().map(|c| c.unwrap()).collect();
    assert_eq!(maxima.expand(), naive);
    Ok(())
}
