//! Inclusion-exclusion term counts triple with every odd prime added, while
//! the sieve cost grows with x instead. Times both on growing prime sets.
//!
//! ```bash
//! cargo run --release --example cost_growth
//! ```

use std::time::Instant;

use twinsieve::counting::{twin_count_terms, TwinCounter};
use twinsieve::twin_sieve::count_twin_centers;
use twinsieve::PrimeSet;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let pool = [5u64, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    let x = 2_000_000u128;

    println!("{:<40} {:>8} {:>10} {:>10} {:>10}", "primes", "terms", "count", "ie ms", "sieve ms");
    for k in 1..=pool.len() {
        let set = PrimeSet::new(pool[..k].iter().copied())?;
        let terms = twin_count_terms(&set).unwrap();

        let t = Instant::now();
        let ie = TwinCounter::new(&set)?.count(x)?;
        let ie_ms = t.elapsed().as_secs_f64() * 1e3;

        let t = Instant::now();
        let sieve = count_twin_centers(&set, 1, x + 1)?;
        let sieve_ms = t.elapsed().as_secs_f64() * 1e3;

        assert_eq!(ie, sieve);
        println!("{:<40} {terms:>8} {ie:>10} {ie_ms:>10.2} {sieve_ms:>10.2}", set.to_string());
    }
    Ok(())
}
