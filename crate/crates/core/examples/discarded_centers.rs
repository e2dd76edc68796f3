//! Discarded centers: residues that can never be twin centers because every
//! prime of the set divides one of the two wings.
//!
//! Shows the three constructions side by side, then walks the lifting
//! procedure one prime at a time, printing which lifted candidates are kept.
//!
//! ```bash
//! cargo run --example discarded_centers
//! cargo run --example discarded_centers -- 5,7,11,13
//! ```

use twinsieve::discarded::{discarded_lift, empty_profile, SignAssignment};
use twinsieve::{discarded_crt, discarded_scan, PrimeSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let primes: PrimeSet = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "5,7,11".into())
        .parse()?;

    let crt = discarded_crt(&primes)?;
    println!("{crt}");
    println!("  scan agrees: {}", discarded_scan(&primes)? == crt);

    println!("\nsign assignments (z = -1 or +1 mod each p):");
    for assignment in SignAssignment::enumerate(&primes) {
        let signs: Vec<String> = assignment
            .signs()
            .iter()
            .map(|(p, s)| format!("{}{p}", if s.residue(*p) == 1 { "+" } else { "-" }))
            .collect();
        println!("  {:<24} -> {}", signs.join(" "), assignment.solve());
    }

    println!("\nlifting one prime at a time:");
    let mut profile = empty_profile();
    for q in primes.iter() {
        let before = profile.modulus().value();
        let next = discarded_lift(&profile, q)?;
        let kept = next.discarded().len();
        println!(
            "  x{q:<3} modulus {before:>6} -> {:>8}: {kept:>4} kept out of {} candidates",
            next.modulus().value(),
            profile.discarded().len() * q as usize,
        );
        profile = next;
    }
    println!("  lifted profile matches: {}", profile == crt);
    Ok(())
}
