//! Counting without listing: the single-prime formula, inclusion-exclusion
//! over discarded classes, and the Legendre and Meissel coprime counts,
//! each checked against a plain sieve.
//!
//! ```bash
//! cargo run --example counting_formulas
//! ```

use twinsieve::counting::{legendre_f, meissel_f, pi_from_legendre, TwinCounter};
use twinsieve::twin_sieve::{count_m_primes, count_twin_centers};
use twinsieve::{first_n_primes, primes_up_to, twin_count_single, PrimeSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("single prime p, twin centers in [1, x]");
    for (p, x) in [(5u64, 100u128), (7, 23), (11, 1000), (13, 10_000)] {
        let formula = twin_count_single(p, x)?;
        let sieve = count_twin_centers(&PrimeSet::new([p])?, 1, x + 1)?;
        println!("  p={p:<3} x={x:<6} formula {formula:<6} sieve {sieve}");
    }

    println!("\ninclusion-exclusion over discarded classes");
    for primes in ["5,7", "2,3,5,7", "3,5,7,11,13", "2,3,5,7,11,13,17"] {
        let set: PrimeSet = primes.parse()?;
        let counter = TwinCounter::new(&set)?;
        for x in [210u128, 30_030, 1_000_000] {
            let ie = counter.count(x)?;
            let sieve = count_twin_centers(&set, 1, x + 1)?;
            assert_eq!(ie, sieve);
            println!("  {:<26} x={x:<8} {ie:>7} ({} terms)", set.to_string(), counter.terms());
        }
    }

    // Big x costs the same number of terms as small x.
    let set = first_n_primes(8);
    let x = 10u128.pow(30);
    println!("\n  {set} x=10^30 -> {}", TwinCounter::new(&set)?.count(x)?);

    println!("\ncoprime counts and pi(x)");
    for n in 1..=6 {
        let set = first_n_primes(n);
        let x = 10_000u128;
        let l = legendre_f(&set, x)?;
        let m = meissel_f(n, x);
        let s = count_m_primes(&set, 1, x + 1)?;
        println!("  n={n} f({x}) legendre {l} meissel {m} sieve {s}");
    }
    let p7 = first_n_primes(7).largest().unwrap() as u128;
    let x = p7 * p7 - 1;
    let direct = primes_up_to(x as u64).len();
    println!("  pi({x}) = {} (direct {direct})", pi_from_legendre(7, x)?);
    Ok(())
}
