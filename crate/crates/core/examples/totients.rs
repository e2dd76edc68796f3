//! Euler's phi next to its twin analogue T(x): how many a <= x have both
//! a - 1 and a + 1 coprime to x.
//!
//! ```bash
//! cargo run --example totients
//! ```

use twinsieve::counting::{distinct_prime_factors, euler_phi};
use twinsieve::oracle::{oracle_phi, oracle_twin_totient};
use twinsieve::twin_totient;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>8} {:>14} {:>8} {:>8}", "x", "primes", "phi", "T");
    for x in [1u128, 2, 6, 12, 30, 35, 105, 210, 1001, 2310, 30030, 510510] {
        let factors: Vec<String> = distinct_prime_factors(x).iter().map(u128::to_string).collect();
        let phi = euler_phi(x)?;
        let t = twin_totient(x)?;
        assert_eq!(phi, oracle_phi(x));
        assert_eq!(t, oracle_twin_totient(x));
        println!("{x:>8} {:>14} {phi:>8} {t:>8}", factors.join("."));
    }

    let x = 2u128.pow(61) - 1;
    println!("\nT(2^61 - 1) = {} (a prime, so T = x - 2)", twin_totient(x)?);
    Ok(())
}
