//! Brute-force reference implementations and the exhaustive cross-check.
//!
//! Nothing here uses the fast paths' arithmetic: every count is a direct
//! scan applying the definition, with its own gcd and trial division. Only
//! [`PrimeSet`] is shared.

use std::time::{Duration, Instant};

use rayon::prelude::*;

use crate::counting::{self, TwinCounter};
use crate::discarded::{discarded_crt, discarded_lift_from, discarded_scan};
use crate::prime_core::PrimeSet;
use crate::twin_sieve;

/// True iff no prime of `set` divides `v`. Zero is divisible by every prime.
pub fn is_m_prime(v: u128, set: &PrimeSet) -> bool {
    set.iter().all(|p| v % p as u128 != 0)
}

/// Twin M-prime centers in `[1, x]`, by testing both wings of each.
pub fn oracle_twin_count(set: &PrimeSet, x: u128) -> u128 {
    (1..=x)
        .filter(|&a| is_m_prime(a - 1, set) && is_m_prime(a + 1, set))
        .count() as u128
}

/// Twin M-prime centers in `[lo, hi)`; a center `0` has wings `-1, 1`.
pub fn oracle_twin_centers(set: &PrimeSet, lo: u128, hi: u128) -> Vec<u128> {
    (lo..hi)
        .filter(|&c| {
            let left = if c == 0 { 1 } else { c - 1 };
            is_m_prime(left, set) && is_m_prime(c + 1, set)
        })
        .collect()
}

/// M-primes in `[1, x]`.
pub fn oracle_f(set: &PrimeSet, x: u128) -> u128 {
    (1..=x).filter(|&v| is_m_prime(v, set)).count() as u128
}

fn gcd(mut a: u128, mut b: u128) -> u128 {
    if let (Ok(a), Ok(b)) = (u64::try_from(a), u64::try_from(b)) {
        return gcd64(a, b) as u128;
    }
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn gcd64(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Centers `a` in `[1, x]` with `gcd(a - 1, x) = gcd(a + 1, x) = 1`.
pub fn oracle_twin_totient(x: u128) -> u128 {
    (1..=x)
        .filter(|&a| gcd(a - 1, x) == 1 && gcd(a + 1, x) == 1)
        .count() as u128
}

/// `a` in `[1, x]` with `gcd(a, x) = 1`.
pub fn oracle_phi(x: u128) -> u128 {
    (1..=x).filter(|&a| gcd(a, x) == 1).count() as u128
}

pub fn oracle_is_prime(v: u128) -> bool {
    v >= 2 && (2..).take_while(|d| d * d <= v).all(|d| v % d != 0)
}

/// Primes `<= x` by trial division.
pub fn oracle_pi(x: u128) -> u128 {
    (2..=x).filter(|&v| oracle_is_prime(v)).count() as u128
}

/// A deliberate bug for checking that [`verify_all`] notices.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum InjectedFault {
    /// Shift the `(x + 1)` offset of the single-prime formula to `(x + 2)`.
    SinglePrimeOffsetOffByOne,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyConfig {
    pub max_x: u128,
    pub pool: PrimeSet,
    pub max_subset: usize,
    pub fault: Option<InjectedFault>,
}

/// Dense sampling up to here, strided beyond.
pub const DENSE_LIMIT: u128 = 1000;
/// Stride above [`DENSE_LIMIT`]; a prime unrelated to the tested moduli.
pub const SAMPLE_STRIDE: u128 = 37;

impl VerifyConfig {
    pub fn new(max_x: u128, pool: PrimeSet, max_subset: usize) -> Self {
        VerifyConfig {
            max_x,
            pool,
            max_subset,
            fault: None,
        }
    }

    /// The `x` values checked: all of `0..=1000`, then every 37th, then `max_x`.
    pub fn sample_points(&self) -> Vec<u128> {
        let mut xs: Vec<u128> = (0..=self.max_x.min(DENSE_LIMIT)).collect();
        let mut x = DENSE_LIMIT + SAMPLE_STRIDE;
        while x <= self.max_x {
            xs.push(x);
            x += SAMPLE_STRIDE;
        }
        if xs.last() != Some(&self.max_x) {
            xs.push(self.max_x);
        }
        xs
    }

    pub fn subsets(&self) -> Vec<PrimeSet> {
        self.pool
            .subsets()
            .filter(|s| s.len() <= self.max_subset)
            .collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct Mismatch {
    pub query: String,
    pub fast_value: String,
    pub oracle_value: String,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerificationReport {
    pub cases_run: u64,
    pub mismatches: Vec<Mismatch>,
    pub elapsed: Duration,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.mismatches.is_empty()
    }
}

#[derive(Default)]
struct Tally {
    cases: u64,
    mismatches: Vec<Mismatch>,
}

impl Tally {
    fn check(&mut self, query: impl FnOnce() -> String, fast: String, oracle: String) {
        self.cases += 1;
        if fast != oracle {
            self.mismatches.push(Mismatch {
                query: query(),
                fast_value: fast,
                oracle_value: oracle,
            });
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.mismatches.extend(other.mismatches);
        self
    }
}

fn show<T: std::fmt::Debug, E: std::fmt::Display>(r: Result<T, E>) -> String {
    match r {
        Ok(v) => format!("{v:?}"),
        Err(e) => format!("error: {e}"),
    }
}

/// Compares every fast path against its oracle over all subsets of the
/// pool (up to `max_subset` primes) and the sampled `x` values.
///
/// Per subset: the three discarded-center constructions (lifting in
/// ascending and descending order). Per subset and `x`: inclusion-exclusion
/// and sieve twin counts, the single-prime formula on singletons, and the
/// Legendre and Meissel coprime counts. Per `x`: both totients.
pub fn verify_all(config: &VerifyConfig) -> VerificationReport {
    let start = Instant::now();
    let xs = config.sample_points();

    let per_subset = config
        .subsets()
        .into_par_iter()
        .map(|s| verify_subset(&s, &xs, config.fault))
        .reduce(Tally::default, Tally::merge);

    let per_x = xs
        .par_iter()
        .filter(|&&x| x >= 1)
        .map(|&x| {
            let mut t = Tally::default();
            t.check(
                || format!("twin_totient({x})"),
                show(counting::twin_totient(x)),
                format!("{:?}", oracle_twin_totient(x)),
            );
            t.check(
                || format!("euler_phi({x})"),
                show(counting::euler_phi(x)),
                format!("{:?}", oracle_phi(x)),
            );
            t
        })
        .reduce(Tally::default, Tally::merge);

    let mut all = per_subset.merge(per_x);
    all.mismatches.sort();
    VerificationReport {
        cases_run: all.cases,
        mismatches: all.mismatches,
        elapsed: start.elapsed(),
    }
}

fn verify_subset(set: &PrimeSet, xs: &[u128], fault: Option<InjectedFault>) -> Tally {
    let mut t = Tally::default();

    let scan = show(discarded_scan(set).map(|p| p.discarded().to_vec()));
    t.check(
        || format!("discarded_crt({set})"),
        show(discarded_crt(set).map(|p| p.discarded().to_vec())),
        scan.clone(),
    );
    let ascending: Vec<u64> = set.as_slice().to_vec();
    let descending: Vec<u64> = set.as_slice().iter().rev().copied().collect();
    for order in [ascending, descending] {
        t.check(
            || format!("discarded_lift({set}, order {order:?})"),
            show(discarded_lift_from(&order).map(|p| p.discarded().to_vec())),
            scan.clone(),
        );
    }

    let counter = TwinCounter::new(set);
    for &x in xs {
        let twins = format!("{:?}", oracle_twin_count(set, x));
        t.check(
            || format!("twin_count({set}, {x})"),
            show(counter.as_ref().map_err(Clone::clone).and_then(|c| c.count(x))),
            twins.clone(),
        );
        t.check(
            || format!("twin sieve count({set}, [1, {x}])"),
            show(twin_sieve::count_twin_centers(set, 1, x + 1)),
            twins.clone(),
        );
        if let &[p] = set.as_slice() {
            let low = match fault {
                Some(InjectedFault::SinglePrimeOffsetOffByOne) => 2,
                None => 1,
            };
            t.check(
                || format!("twin_count_single({p}, {x})"),
                format!(
                    "{:?}",
                    counting::single_prime_with_offsets(p, x, low, p as u128 - 1)
                ),
                twins,
            );
        }

        let coprime = format!("{:?}", oracle_f(set, x));
        t.check(
            || format!("legendre_f({set}, {x})"),
            show(counting::legendre_f(set, x)),
            coprime.clone(),
        );
        t.check(
            || format!("meissel_f({set}, {x})"),
            format!("{:?}", counting::meissel_f_set(set, x)),
            coprime,
        );
    }
    t
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn m_prime_examples() {
        assert!(is_m_prime(25, &set(&[2, 3])));
        assert!(!is_m_prime(25, &set(&[2, 3, 5])));
        assert!(!is_m_prime(0, &set(&[7])));
        assert!(is_m_prime(0, &PrimeSet::empty()));
    }

    #[test]
    fn oracle_counts() {
        assert_eq!(oracle_twin_count(&set(&[7]), 23), 16);
        assert_eq!(oracle_twin_count(&set(&[2, 3, 5, 7]), 210), 15);
        assert_eq!(oracle_twin_count(&PrimeSet::empty(), 12), 12);
        assert_eq!(oracle_f(&set(&[2, 3]), 30), 10);
        assert_eq!(oracle_f(&set(&[2]), 9), 5);
        assert_eq!(oracle_f(&set(&[3]), 3), 2);
        assert_eq!(oracle_twin_totient(30), 3);
        assert_eq!(oracle_twin_totient(35), 15);
        assert_eq!(oracle_twin_totient(1), 1);
        assert_eq!(oracle_pi(100), 25);
        assert_eq!(oracle_twin_centers(&set(&[5]), 0, 3), vec![0, 2]);
    }

    #[test]
    fn sample_points_shape() {
        let c = VerifyConfig::new(1100, PrimeSet::empty(), 0);
        let xs = c.sample_points();
        assert_eq!(xs[..3], [0, 1, 2]);
        assert_eq!(xs[1001..], [1037, 1074, 1100]);
        assert_eq!(VerifyConfig::new(0, PrimeSet::empty(), 0).sample_points(), vec![0]);
    }

    #[test]
    fn trivial_run() {
        let r = verify_all(&VerifyConfig::new(0, set(&[2, 3]), 2));
        // 4 subsets x (3 discarded + 4 counts at x = 0) + 2 singleton formulas
        assert_eq!(r.cases_run, 4 * 7 + 2);
        assert!(r.passed());
    }

    #[test]
    fn small_run_passes() {
        let r = verify_all(&VerifyConfig::new(300, set(&[2, 3, 5, 7]), 4));
        assert!(r.passed(), "{:?}", r.mismatches);
    }

    #[test]
    fn injected_fault_is_caught() {
        let mut c = VerifyConfig::new(100, set(&[5, 7]), 2);
        c.fault = Some(InjectedFault::SinglePrimeOffsetOffByOne);
        let r = verify_all(&c);
        assert!(!r.passed());
        assert!(r
            .mismatches
            .iter()
            .all(|m| m.query.starts_with("twin_count_single")));
    }

    #[test]
    fn deterministic() {
        let mut c = VerifyConfig::new(200, set(&[3, 5, 7]), 3);
        c.fault = Some(InjectedFault::SinglePrimeOffsetOffByOne);
        let a = verify_all(&c);
        let b = verify_all(&c);
        assert_eq!(a.cases_run, b.cases_run);
        assert_eq!(a.mismatches, b.mismatches);
    }
}
