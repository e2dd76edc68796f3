//! Centers c with both c - a and c + a free of the given primes, for gaps
//! other than 1. With a coprime to the primes, each cycle keeps the same
//! number of centers as the twin case.
//!
//! ```bash
//! cargo run --example gap_centers
//! ```

use twinsieve::discarded::survivors_per_cycle;
use twinsieve::{gap_centers, PrimeSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let set: PrimeSet = "3,5,7".parse()?;
    let cycle = set.primorial()?.value();
    println!("M = {set}, cycle {cycle}, twin survivors {}", survivors_per_cycle(&set));
    for a in 1..=10u128 {
        let range = gap_centers(&set, a, 1, cycle + 1)?;
        let first: Vec<String> = range.centers.iter().take(8).map(u128::to_string).collect();
        println!("  a={a:<3} {:>4} per cycle  {}", range.centers.len(), first.join(" "));
    }

    let pairs = gap_centers(&"2,3,5".parse()?, 3, 0, 60)?.pairs();
    println!("\ngap 3 pairs for {{2, 3, 5}} below 60: {pairs:?}");
    Ok(())
}
