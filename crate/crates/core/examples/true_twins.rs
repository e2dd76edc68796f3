//! Below (p_{n+1})^2 - 2 every twin n-prime center is the center of a real
//! twin prime pair. This prints those certified pairs for a few n.
//!
//! ```bash
//! cargo run --example true_twins
//! cargo run --example true_twins -- 8
//! ```

use twinsieve::true_twin_centers;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let max_n: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(5);
    for n in 1..=max_n {
        let r = true_twin_centers(n)?;
        println!(
            "n={n}: sieve with the first {n} primes, bound {}^2 - 2 = {}, {} pairs",
            r.next_prime,
            r.bound,
            r.pairs.len()
        );
        if !r.small_centers.is_empty() {
            println!("  small survivors (not certified): {:?}", r.small_centers);
        }
        let shown: Vec<String> = r.pairs.iter().take(10).map(|(a, b)| format!("({a}, {b})")).collect();
        let more = r.pairs.len().saturating_sub(10);
        println!(
            "  {}{}",
            shown.join(" "),
            if more > 0 { format!(" ... +{more}") } else { String::new() }
        );
        assert!(r.rejected.is_empty(), "sieve produced a non-prime wing");
    }
    Ok(())
}
