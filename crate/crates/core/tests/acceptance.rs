//! End-to-end checks with time budgets, one status line per check.

use std::io::Write;
use std::time::{Duration, Instant};

use serde_json::Value;
use twinsieve::counting::pi_from_legendre;
use twinsieve::discarded::survivors_per_cycle;
use twinsieve::oracle::{oracle_is_prime, oracle_twin_totient};
use twinsieve::{
    cli, discarded_crt, first_n_primes, primes_up_to, primorial, true_twin_centers, twin_centers,
    twin_totient, verify_all, PrimeSet, VerifyConfig,
};

struct Outcome {
    id: usize,
    name: &'static str,
    limit: Duration,
    elapsed: Duration,
    failure: Option<String>,
}

impl Outcome {
    fn passed(&self) -> bool {
        self.failure.is_none() && self.elapsed <= self.limit
    }

    fn line(&self) -> String {
        let status = if self.passed() { "PASS" } else { "FAIL" };
        let mut s = format!(
            "[{status}] {} {} ({:.3} ms, limit {} ms)",
            self.id,
            self.name,
            self.elapsed.as_secs_f64() * 1e3,
            self.limit.as_millis()
        );
        if let Some(f) = &self.failure {
            s.push_str(&format!(": {f}"));
        } else if self.elapsed > self.limit {
            s.push_str(": over time");
        }
        s
    }
}

fn timed(
    id: usize,
    name: &'static str,
    limit: Duration,
    check: impl FnOnce() -> Result<(), String>,
) -> Outcome {
    let start = Instant::now();
    let failure = check().err();
    Outcome {
        id,
        name,
        limit,
        elapsed: start.elapsed(),
        failure,
    }
}

fn set(v: &[u64]) -> PrimeSet {
    PrimeSet::new(v.iter().copied()).unwrap()
}

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn discarded_golden() -> Result<(), String> {
    let cases: [(&[u64], &[u128]); 4] = [
        (&[5, 7], &[1, 6, 29, 34]),
        (&[5, 11], &[1, 21, 34, 54]),
        (&[7, 11], &[1, 34, 43, 76]),
        (&[5, 7, 11], &[1, 34, 76, 111, 274, 309, 351, 384]),
    ];
    for (primes, want) in cases {
        let m = set(primes);
        let got = discarded_crt(&m).map_err(|e| e.to_string())?;
        expect(&format!("D{m}"), got.discarded(), want)?;
    }
    Ok(())
}

fn sieve_tables() -> Result<(), String> {
    let four = twin_centers(&set(&[2, 3, 5, 7]), 1, 211).map_err(|e| e.to_string())?;
    expect(
        "{2,3,5,7}",
        four.centers,
        vec![12, 18, 30, 42, 60, 72, 102, 108, 138, 150, 168, 180, 192, 198, 210],
    )?;
    let three = twin_centers(&set(&[2, 3, 5]), 1, 211).map_err(|e| e.to_string())?;
    expect(
        "{2,3,5}",
        three.centers,
        vec![
            12, 18, 30, 42, 48, 60, 72, 78, 90, 102, 108, 120, 132, 138, 150, 162, 168, 180, 192,
            198, 210,
        ],
    )
}

fn cycle_counts() -> Result<(), String> {
    let mut with_two = 0;
    for m in set(&[2, 3, 5, 7, 11]).subsets().filter(|m| m.contains_two()) {
        let p = primorial(&m).map_err(|e| e.to_string())?.value();
        let found = twin_centers(&m, 1, p + 1).map_err(|e| e.to_string())?.centers.len() as u128;
        let product: u128 = m.iter().filter(|&q| q != 2).map(|q| q as u128 - 2).product();
        expect(&format!("one cycle of {m}"), found, product)?;
        expect(&format!("survivors of {m}"), survivors_per_cycle(&m), product)?;
        with_two += 1;
    }
    expect("sets containing 2", with_two, 16)?;
    expect("{2,3,5,7} cycle", survivors_per_cycle(&set(&[2, 3, 5, 7])), 15)
}

fn oracle_sweep() -> Result<(), String> {
    let report = verify_all(&VerifyConfig::new(2310, set(&[2, 3, 5, 7, 11]), 5));
    if report.passed() {
        Ok(())
    } else {
        Err(format!(
            "{} of {} cases mismatched, first {:?}",
            report.mismatches.len(),
            report.cases_run,
            report.mismatches[0]
        ))
    }
}

fn pi_identity() -> Result<(), String> {
    let limit = first_n_primes(6).largest().unwrap().pow(2);
    let primes = primes_up_to(limit);
    for n in 2..=6 {
        let pn = first_n_primes(n).largest().unwrap() as u128;
        for x in pn..pn * pn {
            let direct = primes.iter().take_while(|&&p| p as u128 <= x).count() as u128;
            let got = pi_from_legendre(n, x).map_err(|e| format!("n={n} x={x}: {e}"))?;
            expect(&format!("pi({x}) with n={n}"), got, direct)?;
        }
    }
    Ok(())
}

fn true_twins() -> Result<(), String> {
    let cases: [(usize, u128, &[u128]); 3] = [
        (2, 23, &[6, 12, 18]),
        (3, 47, &[12, 18, 30, 42]),
        // 72, not 70: the wings 71 and 73 pin it
        (4, 119, &[12, 18, 30, 42, 60, 72, 102, 108]),
    ];
    for (n, bound, want) in cases {
        let r = true_twin_centers(n).map_err(|e| e.to_string())?;
        expect(&format!("bound n={n}"), r.bound, bound)?;
        expect(&format!("centers n={n}"), r.centers.as_slice(), want)?;
        expect(&format!("rejected n={n}"), r.rejected.len(), 0)?;
        for (lo, hi) in r.pairs {
            if !(oracle_is_prime(lo) && oracle_is_prime(hi)) {
                return Err(format!("wing ({lo}, {hi}) not prime"));
            }
        }
    }
    Ok(())
}

fn totient_scan() -> Result<(), String> {
    expect("T(30)", twin_totient(30).map_err(|e| e.to_string())?, 3)?;
    for x in 1..=10_000u128 {
        let got = twin_totient(x).map_err(|e| e.to_string())?;
        expect(&format!("T({x})"), got, oracle_twin_totient(x))?;
    }
    Ok(())
}

fn periodicity_symmetry() -> Result<(), String> {
    for m in set(&[2, 3, 5, 7, 11]).subsets() {
        let p = primorial(&m).map_err(|e| e.to_string())?.value();
        let centers = twin_centers(&m, 0, 2 * p + 1).map_err(|e| e.to_string())?.centers;
        let member = |c: u128| centers.binary_search(&c).is_ok();
        for c in 0..=p {
            if member(c) != member(c + p) {
                return Err(format!("{m}: {c} vs {} disagree", c + p));
            }
            if member(c) != member(p - c) {
                return Err(format!("{m}: {c} vs {} disagree", p - c));
            }
        }
    }
    Ok(())
}

fn bench_terms() -> Result<(), String> {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let args = [
        "twinsieve", "bench", "--kind", "twin", "--pool", "5,7,11", "--x", "1000", "--methods",
        "ie,sieve", "--format", "json",
    ];
    let code = cli::run_with_guard(args, None, &mut out, &mut err);
    expect("exit code", code, 0)?;
    let doc: Value = serde_json::from_slice(&out).map_err(|e| e.to_string())?;
    let terms: Vec<&str> = doc["result"]["rows"]
        .as_array()
        .ok_or("no rows")?
        .iter()
        .filter(|r| r["method"] == "ie")
        .map(|r| r["terms_evaluated"].as_str().unwrap_or("?"))
        .collect();
    expect("ie terms", terms, vec!["3", "9", "27"])
}

#[test]
fn acceptance() {
    let ms = Duration::from_millis;
    let outcomes = [
        timed(1, "discarded-center golden sets", ms(1), discarded_golden),
        timed(2, "sieve tables for {2,3,5} and {2,3,5,7}", ms(10), sieve_tables),
        timed(3, "one-cycle counts for sets containing 2", ms(1000), cycle_counts),
        timed(4, "oracle sweep to 2310 over {2,3,5,7,11}", ms(60_000), oracle_sweep),
        timed(5, "pi from the coprime count, n = 2..6", ms(5000), pi_identity),
        timed(6, "true twins for n = 2, 3, 4", ms(10), true_twins),
        timed(7, "twin totient against gcd scan to 10^4", ms(10_000), totient_scan),
        timed(8, "periodicity and symmetry over two cycles", ms(5000), periodicity_symmetry),
        timed(9, "bench term counts 3, 9, 27", ms(1000), bench_terms),
    ];
    // straight to the handle so the lines show without --nocapture
    let mut stdout = std::io::stdout().lock();
    for o in &outcomes {
        writeln!(stdout, "{}", o.line()).unwrap();
    }
    drop(stdout);
    let failed: Vec<usize> = outcomes.iter().filter(|o| !o.passed()).map(|o| o.id).collect();
    assert!(failed.is_empty(), "failed checks: {failed:?}");
}
