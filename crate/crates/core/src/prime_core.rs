//! Prime generation, prime-set validation, and exact primorials.

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};

/// Numbers per segment used by [`primes_up_to`].
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 16;

/// Deterministic Miller-Rabin for the full `u64` range.
///
/// The first twelve primes as witnesses are enough below 3.3 * 10^24.
pub fn is_prime(n: u64) -> bool {
    const WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    if n < 2 {
        return false;
    }
    for &p in &WITNESSES {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for &a in &WITNESSES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Plain sieve of Eratosthenes over `0..=limit`; only used for base primes.
fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r.checked_mul(r).map_or(true, |sq| sq > n) {
        r -= 1;
    }
    while (r + 1).checked_mul(r + 1).is_some_and(|sq| sq <= n) {
        r += 1;
    }
    r
}

/// All primes `<= limit`, ascending.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
    primes_up_to_with(limit, DEFAULT_SEGMENT_LEN)
}

/// [`primes_up_to`] with an explicit segment length. The result does not
/// depend on `segment_len`; memory is `O(segment_len + sqrt(limit))`.
pub fn primes_up_to_with(limit: u64, segment_len: usize) -> Vec<u64> {
    assert!(segment_len > 0, "segment length must be positive");
    if limit < 2 {
        return Vec::new();
    }
    let base = simple_sieve(isqrt(limit));
    let mut out = Vec::new();
    let mut marks = vec![false; segment_len];
    let mut lo: u64 = 2;
    loop {
        let hi = lo.saturating_add(segment_len as u64 - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        marks[..len].fill(false);
        for &p in &base {
            if p.saturating_mul(p) > hi {
                break;
            }
            let first = (p * p).max(lo.div_ceil(p) * p);
            let mut j = first;
            while j <= hi {
                marks[(j - lo) as usize] = true;
                j += p;
            }
        }
        out.extend(
            marks[..len]
                .iter()
                .enumerate()
                .filter(|(_, &dead)| !dead)
                .map(|(i, _)| lo + i as u64),
        );
        if hi == limit {
            break;
        }
        lo = hi + 1;
    }
    out
}

/// The `n`-th prime (1-based), by sieving with a growing upper estimate.
pub fn nth_prime(n: usize) -> u64 {
    assert!(n >= 1, "primes are 1-indexed");
    *first_n_primes(n).as_slice().last().expect("n >= 1")
}

/// The first `n` primes as a [`PrimeSet`].
pub fn first_n_primes(n: usize) -> PrimeSet {
    if n == 0 {
        return PrimeSet::empty();
    }
    // p_n < n (ln n + ln ln n) for n >= 6
    let nf = n.max(6) as f64;
    let mut limit = (nf * (nf.ln() + nf.ln().ln())).ceil() as u64 + 10;
    loop {
        let mut primes = primes_up_to(limit);
        if primes.len() >= n {
            primes.truncate(n);
            return PrimeSet { primes };
        }
        limit *= 2;
    }
}

/// A validated, strictly increasing set of distinct primes.
///
/// The empty set is legal: it constrains nothing, so every integer is an
/// M-prime and every integer is a twin center.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct PrimeSet {
    primes: Vec<u64>,
}

impl PrimeSet {
    pub fn empty() -> Self {
        PrimeSet { primes: Vec::new() }
    }

    /// Sorts and dedupes `values`, rejecting the first non-prime.
    pub fn new(values: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = values.into_iter().collect();
        if let Some(&bad) = primes.iter().find(|&&v| !is_prime(v)) {
            return Err(Error::NotPrime(bad.to_string()));
        }
        primes.sort_unstable();
        primes.dedup();
        Ok(PrimeSet { primes })
    }

    pub fn as_slice(&self) -> &[u64] {
        &self.primes
    }

    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.primes.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    pub fn contains(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    pub fn contains_two(&self) -> bool {
        self.primes.first() == Some(&2)
    }

    /// Number of odd primes in the set.
    pub fn odd_count(&self) -> usize {
        self.primes.len() - usize::from(self.contains_two())
    }

    pub fn largest(&self) -> Option<u64> {
        self.primes.last().copied()
    }

    /// The set with `p` removed; errors if `p` is absent.
    pub fn without(&self, p: u64) -> Result<Self> {
        match self.primes.binary_search(&p) {
            Ok(i) => {
                let mut primes = self.primes.clone();
                primes.remove(i);
                Ok(PrimeSet { primes })
            }
            Err(_) => Err(Error::PrimeNotInSet {
                prime: p,
                set: self.to_string(),
            }),
        }
    }

    /// The set with prime `p` added; errors if `p` is not prime or already present.
    pub fn with(&self, p: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p.to_string()));
        }
        match self.primes.binary_search(&p) {
            Ok(_) => Err(Error::PrimeAlreadyInSet {
                prime: p,
                set: self.to_string(),
            }),
            Err(i) => {
                let mut primes = self.primes.clone();
                primes.insert(i, p);
                Ok(PrimeSet { primes })
            }
        }
    }

    /// Disjoint-or-not union.
    pub fn union(&self, other: &PrimeSet) -> PrimeSet {
        let mut primes: Vec<u64> = self.iter().chain(other.iter()).collect();
        primes.sort_unstable();
        primes.dedup();
        PrimeSet { primes }
    }

    pub fn is_subset_of(&self, other: &PrimeSet) -> bool {
        self.iter().all(|p| other.contains(p))
    }

    /// Every subset, indexed by bitmask over the sorted primes (mask 0 is the empty set).
    pub fn subsets(&self) -> impl Iterator<Item = PrimeSet> + '_ {
        let n = self.primes.len();
        assert!(n < 64, "subset enumeration over {n} primes");
        (0u64..1 << n).map(move |mask| PrimeSet {
            primes: (0..n)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| self.primes[i])
                .collect(),
        })
    }

    pub fn primorial(&self) -> Result<Primorial> {
        primorial(self)
    }

    /// Comma-separated decimal list, as used on the command line.
    pub fn to_list_string(&self) -> String {
        self.primes
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    }
}

impl fmt::Display for PrimeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{{}}}", self.to_list_string().replace(',', ", "))
    }
}

impl FromStr for PrimeSet {
    type Err = Error;

    /// Parses `"7,5,11"`; the empty string is the empty set.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() {
            return Ok(PrimeSet::empty());
        }
        let mut values = Vec::new();
        for tok in s.split(',') {
            let tok = tok.trim();
            let v: i128 = tok
                .parse()
                .map_err(|_| Error::InvalidArgument(format!("{tok:?} is not an integer")))?;
            values.push(v);
        }
        make_prime_set(&values)
    }
}

/// Builds a [`PrimeSet`] from arbitrary signed input, naming the first
/// offending value if any is zero, negative, one, or composite.
pub fn make_prime_set(values: &[i128]) -> Result<PrimeSet> {
    let mut primes = Vec::with_capacity(values.len());
    for &v in values {
        match u64::try_from(v) {
            Ok(p) if is_prime(p) => primes.push(p),
            _ => return Err(Error::NotPrime(v.to_string())),
        }
    }
    PrimeSet::new(primes)
}

/// Exact product of a prime set; 1 for the empty set.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Primorial(u128);

impl Primorial {
    pub fn value(self) -> u128 {
        self.0
    }
}

impl fmt::Display for Primorial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn primorial(set: &PrimeSet) -> Result<Primorial> {
    set.iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(p as u128))
        .map(Primorial)
        .ok_or_else(|| Error::Overflow(format!("primorial of {set}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn trial_division(n: u64) -> bool {
        n >= 2 && (2..).take_while(|d| d * d <= n).all(|d| n % d != 0)
    }

    #[test]
    fn small_limits() {
        assert_eq!(primes_up_to(10), vec![2, 3, 5, 7]);
        assert!(primes_up_to(1).is_empty());
        assert!(primes_up_to(0).is_empty());
        assert_eq!(primes_up_to(2), vec![2]);
    }

    #[test]
    fn primes_to_210_match_trial_division() {
        let expected: Vec<u64> = (0..=210).filter(|&n| trial_division(n)).collect();
        let got = primes_up_to(210);
        assert_eq!(got, expected);
        assert_eq!(&got[got.len() - 2..], &[197, 199]);
    }

    #[test]
    fn segment_length_does_not_matter() {
        let reference = primes_up_to(20_000);
        for seg in [1, 2, 3, 7, 64, 1000, 20_001] {
            assert_eq!(primes_up_to_with(20_000, seg), reference, "segment {seg}");
        }
    }

    #[test]
    fn miller_rabin_agrees_with_trial_division() {
        for n in 0..50_000 {
            assert_eq!(is_prime(n), trial_division(n), "{n}");
        }
        assert!(is_prime(18_446_744_073_709_551_557));
        assert!(!is_prime(3_215_031_751)); // strong pseudoprime to 2, 3, 5, 7
    }

    #[test]
    fn first_n() {
        assert_eq!(first_n_primes(4).as_slice(), &[2, 3, 5, 7]);
        assert!(first_n_primes(0).is_empty());
        assert_eq!(first_n_primes(6).as_slice(), &[2, 3, 5, 7, 11, 13]);
        assert_eq!(nth_prime(1000), 7919);
        assert_eq!(first_n_primes(1000).as_slice(), &primes_up_to(7919)[..]);
    }

    #[test]
    fn make_prime_set_validation() {
        assert_eq!(make_prime_set(&[7, 5, 11]).unwrap().as_slice(), &[5, 7, 11]);
        assert_eq!(make_prime_set(&[5, 5, 7]).unwrap().as_slice(), &[5, 7]);
        assert_eq!(
            make_prime_set(&[5, 9]).unwrap_err().to_string(),
            "9 is not prime"
        );
        for bad in [0, 1, -3] {
            assert_eq!(
                make_prime_set(&[bad]).unwrap_err(),
                Error::NotPrime(bad.to_string())
            );
        }
        assert!(make_prime_set(&[]).unwrap().is_empty());
    }

    #[test]
    fn parse_list() {
        assert_eq!("7, 5,11".parse::<PrimeSet>().unwrap().as_slice(), &[5, 7, 11]);
        assert_eq!(
            "4,7".parse::<PrimeSet>().unwrap_err().to_string(),
            "4 is not prime"
        );
        assert!("".parse::<PrimeSet>().unwrap().is_empty());
        assert!(matches!(
            "2,x".parse::<PrimeSet>(),
            Err(Error::InvalidArgument(_))
        ));
    }

    #[test]
    fn primorials() {
        let s = |v: &[u64]| PrimeSet::new(v.iter().copied()).unwrap();
        assert_eq!(primorial(&s(&[5, 7, 11])).unwrap().value(), 385);
        assert_eq!(primorial(&PrimeSet::empty()).unwrap().value(), 1);
        assert_eq!(primorial(&s(&[2, 3, 5, 7])).unwrap().value(), 210);
    }

    #[test]
    fn primorial_overflow_is_reported() {
        // the product of the first 27 primes exceeds 2^128, the first 26 do not
        assert!(primorial(&first_n_primes(26)).is_ok());
        assert!(matches!(
            primorial(&first_n_primes(27)),
            Err(Error::Overflow(_))
        ));
    }

    #[test]
    fn set_editing() {
        let s = PrimeSet::new([5, 11]).unwrap();
        assert_eq!(s.with(7).unwrap().as_slice(), &[5, 7, 11]);
        assert!(matches!(s.with(11), Err(Error::PrimeAlreadyInSet { .. })));
        assert!(matches!(s.with(9), Err(Error::NotPrime(_))));
        assert_eq!(s.without(5).unwrap().as_slice(), &[11]);
        assert!(matches!(s.without(3), Err(Error::PrimeNotInSet { .. })));
        assert_eq!(s.subsets().count(), 4);
        assert_eq!(s.to_string(), "{5, 11}");
    }
}
