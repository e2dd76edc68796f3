//! Successive cullings of the twin sieve.
//!
//! Each pass strikes the centers whose wings are divisible by the next prime,
//! then prints the survivors of one primorial cycle, three to a row, with
//! the wing pairs alongside.
//!
//! ```bash
//! cargo run --example sieve_of_twins
//! cargo run --example sieve_of_twins -- 5      # go one culling further
//! ```

use twinsieve::discarded::survivors_per_cycle;
use twinsieve::{first_n_primes, twin_centers};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let depth: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(4);

    for n in 1..=depth {
        let primes = first_n_primes(n);
        let cycle = primes.primorial()?.value();
        // at least the first 210 integers so the early tables line up
        let hi = cycle.max(210) + 1;
        let range = twin_centers(&primes, 1, hi)?;
        let pairs = range.pairs();

        println!(
            "twin {n}-primes, M = {primes}, cycle {cycle}, {} centers per cycle",
            survivors_per_cycle(&primes)
        );
        for (row, chunk) in pairs.chunks(3).enumerate().take(12) {
            let centers: Vec<String> = chunk.iter().map(|(l, _)| format!("{:>5}", l + 1)).collect();
            let wings: Vec<String> = chunk.iter().map(|(l, r)| format!("{l:>4}, {r:<4}")).collect();
            println!("  {:<20} {}", centers.join(""), wings.join("  "));
            if row == 11 && pairs.len() > 36 {
                println!("  ... {} more", pairs.len() - 36);
            }
        }
        println!();
    }
    Ok(())
}
