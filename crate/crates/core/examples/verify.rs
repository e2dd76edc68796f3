//! Cross-checks every fast path against brute force, then shows the same
//! run catching a planted off-by-one.
//!
//! ```bash
//! cargo run --release --example verify
//! ```

use twinsieve::oracle::InjectedFault;
use twinsieve::{verify_all, VerifyConfig};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let mut config = VerifyConfig::new(2310, "2,3,5,7,11".parse()?, 5);
    let report = verify_all(&config);
    println!(
        "{} cases, {} mismatches, {:.1} ms",
        report.cases_run,
        report.mismatches.len(),
        report.elapsed.as_secs_f64() * 1e3
    );

    config.fault = Some(InjectedFault::SinglePrimeOffsetOffByOne);
    config.max_x = 60;
    let report = verify_all(&config);
    println!("\nwith a planted fault: {} mismatches", report.mismatches.len());
    for m in report.mismatches.iter().take(5) {
        println!("  {}: fast {} oracle {}", m.query, m.fast_value, m.oracle_value);
    }
    Ok(())
}
