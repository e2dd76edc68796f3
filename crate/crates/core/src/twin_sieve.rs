//! The Sieve of Twins.
//!
//! For each prime `p` in `M`, a candidate center `c` is struck when
//! `c = ±1 (mod p)`, i.e. when `p` divides a wing `c - 1` or `c + 1`. What
//! survives is the set of twin M-prime centers. The same machinery with
//! struck classes `±a (mod p)` handles wings at distance `a`, and with the
//! class `0 (mod p)` it is an ordinary Eratosthenes sieve of M-primes.
//!
//! Ranges are half-open `[lo, hi)` and are processed in fixed-size chunks;
//! chunks are sieved in parallel and concatenated in order, so the output
//! never depends on the chunk size or the thread count.

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::prime_core::{first_n_primes, is_prime, PrimeSet};

/// Numbers per chunk.
pub const DEFAULT_SEGMENT_LEN: usize = 1 << 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SieveConfig {
    pub segment_len: usize,
}

impl Default for SieveConfig {
    fn default() -> Self {
        SieveConfig {
            segment_len: DEFAULT_SEGMENT_LEN,
        }
    }
}

/// Centers found in `[lo, hi)` for a prime set and wing distance `gap`
/// (`gap = 1` for twins).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CenterRange {
    pub prime_set: PrimeSet,
    pub gap: u128,
    pub lo: u128,
    pub hi: u128,
    pub centers: Vec<u128>,
}

impl CenterRange {
    /// Wing pairs `(c - gap, c + gap)`. Centers below `gap` have a negative
    /// left wing and are skipped.
    pub fn pairs(&self) -> Vec<(u128, u128)> {
        self.centers
            .iter()
            .filter(|&&c| c >= self.gap)
            .map(|&c| (c - self.gap, c + self.gap))
            .collect()
    }
}

/// Per-prime struck residue classes.
struct StruckClasses {
    classes: Vec<(u64, Vec<u64>)>,
}

impl StruckClasses {
    /// Classes `±offset (mod p)`; the two coincide when `p | 2 offset`.
    fn symmetric(set: &PrimeSet, offset: u128) -> Self {
        let classes = set
            .iter()
            .map(|p| {
                let r = (offset % p as u128) as u64;
                let mut rs = vec![r, (p - r) % p];
                rs.sort_unstable();
                rs.dedup();
                (p, rs)
            })
            .collect();
        StruckClasses { classes }
    }

    /// Marks struck positions of `[start, start + marks.len())`.
    fn mark(&self, start: u128, marks: &mut [bool]) {
        let len = marks.len();
        for (p, residues) in &self.classes {
            let p = *p as usize;
            let start_mod = (start % p as u128) as usize;
            for &r in residues {
                let mut i = (r as usize + p - start_mod) % p;
                while i < len {
                    marks[i] = true;
                    i += p;
                }
            }
        }
    }
}

fn check_range(lo: u128, hi: u128) -> Result<()> {
    if lo > hi {
        return Err(Error::BadRange { lo, hi });
    }
    Ok(())
}

fn chunks(lo: u128, hi: u128, segment_len: usize) -> Result<Vec<(u128, usize)>> {
    assert!(segment_len > 0, "segment length must be positive");
    let seg = segment_len as u128;
    let n = (hi - lo).div_ceil(seg);
    let n = usize::try_from(n)
        .map_err(|_| Error::InvalidArgument(format!("range [{lo}, {hi}) is too large")))?;
    Ok((0..n)
        .map(|i| {
            let start = lo + i as u128 * seg;
            let len = (hi - start).min(seg) as usize;
            (start, len)
        })
        .collect())
}

fn survivors(
    classes: &StruckClasses,
    lo: u128,
    hi: u128,
    config: &SieveConfig,
) -> Result<Vec<u128>> {
    let parts: Vec<Vec<u128>> = chunks(lo, hi, config.segment_len)?
        .into_par_iter()
        .map(|(start, len)| {
            let mut marks = vec![false; len];
            classes.mark(start, &mut marks);
            marks
                .iter()
                .enumerate()
                .filter(|(_, &struck)| !struck)
                .map(|(i, _)| start + i as u128)
                .collect()
        })
        .collect();
    Ok(parts.concat())
}

fn count_survivors(
    classes: &StruckClasses,
    lo: u128,
    hi: u128,
    config: &SieveConfig,
) -> Result<u128> {
    Ok(chunks(lo, hi, config.segment_len)?
        .into_par_iter()
        .map(|(start, len)| {
            let mut marks = vec![false; len];
            classes.mark(start, &mut marks);
            marks.iter().filter(|&&struck| !struck).count() as u128
        })
        .sum())
}

/// Twin M-prime centers in `[lo, hi)`.
pub fn twin_centers(set: &PrimeSet, lo: u128, hi: u128) -> Result<CenterRange> {
    gap_centers_with(set, 1, lo, hi, &SieveConfig::default())
}

pub fn twin_centers_with(
    set: &PrimeSet,
    lo: u128,
    hi: u128,
    config: &SieveConfig,
) -> Result<CenterRange> {
    gap_centers_with(set, 1, lo, hi, config)
}

/// Number of twin M-prime centers in `[lo, hi)`, without materializing them.
pub fn count_twin_centers(set: &PrimeSet, lo: u128, hi: u128) -> Result<u128> {
    check_range(lo, hi)?;
    count_survivors(
        &StruckClasses::symmetric(set, 1),
        lo,
        hi,
        &SieveConfig::default(),
    )
}

/// Wing pairs `(c - 1, c + 1)` of the twin centers in `[lo, hi)`.
pub fn twin_pairs(set: &PrimeSet, lo: u128, hi: u128) -> Result<Vec<(u128, u128)>> {
    Ok(twin_centers(set, lo, hi)?.pairs())
}

/// Centers `c` in `[lo, hi)` with `c - a` and `c + a` both M-primes.
pub fn gap_centers(set: &PrimeSet, a: u128, lo: u128, hi: u128) -> Result<CenterRange> {
    gap_centers_with(set, a, lo, hi, &SieveConfig::default())
}

pub fn gap_centers_with(
    set: &PrimeSet,
    a: u128,
    lo: u128,
    hi: u128,
    config: &SieveConfig,
) -> Result<CenterRange> {
    if a == 0 {
        return Err(Error::InvalidArgument("wing distance must be at least 1".into()));
    }
    check_range(lo, hi)?;
    let centers = survivors(&StruckClasses::symmetric(set, a), lo, hi, config)?;
    Ok(CenterRange {
        prime_set: set.clone(),
        gap: a,
        lo,
        hi,
        centers,
    })
}

/// Number of M-primes in `[lo, hi)`: the plain Eratosthenes remnant.
pub fn count_m_primes(set: &PrimeSet, lo: u128, hi: u128) -> Result<u128> {
    check_range(lo, hi)?;
    count_survivors(
        &StruckClasses::symmetric(set, 0),
        lo,
        hi,
        &SieveConfig::default(),
    )
}

/// Twin n-prime centers below `(p_{n+1})^2 - 2`, each certified as the
/// center of an actual twin prime pair.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TrueTwinReport {
    pub n: usize,
    /// `p_{n+1}`, the smallest prime that could still divide a wing.
    pub next_prime: u64,
    /// `(p_{n+1})^2 - 2`; centers strictly below it are certified.
    pub bound: u128,
    /// Certified centers `c > 3`, ascending.
    pub centers: Vec<u128>,
    pub pairs: Vec<(u128, u128)>,
    /// Sieve survivors `c <= 3`, reported but outside certification.
    pub small_centers: Vec<u128>,
    /// Survivors whose wings failed the primality check. Always empty
    /// unless the sieve is wrong.
    pub rejected: Vec<u128>,
}

pub fn true_twin_centers(n: usize) -> Result<TrueTwinReport> {
    if n == 0 {
        return Err(Error::InvalidArgument("n must be at least 1".into()));
    }
    let primes = first_n_primes(n + 1);
    let next_prime = primes.largest().expect("n + 1 >= 2 primes");
    let sieving = primes.without(next_prime)?;
    let bound = next_prime as u128 * next_prime as u128 - 2;
    let range = twin_centers(&sieving, 1, bound)?;

    let mut report = TrueTwinReport {
        n,
        next_prime,
        bound,
        centers: Vec::new(),
        pairs: Vec::new(),
        small_centers: Vec::new(),
        rejected: Vec::new(),
    };
    for c in range.centers {
        if c <= 3 {
            report.small_centers.push(c);
        } else if wing_is_prime(c - 1) && wing_is_prime(c + 1) {
            report.centers.push(c);
            report.pairs.push((c - 1, c + 1));
        } else {
            report.rejected.push(c);
        }
    }
    Ok(report)
}

fn wing_is_prime(w: u128) -> bool {
    u64::try_from(w).is_ok_and(is_prime)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn four_prime_centers_to_210() {
        let r = twin_centers(&set(&[2, 3, 5, 7]), 1, 211).unwrap();
        assert_eq!(
            r.centers,
            vec![12, 18, 30, 42, 60, 72, 102, 108, 138, 150, 168, 180, 192, 198, 210]
        );
    }

    #[test]
    fn three_prime_centers_to_210() {
        let r = twin_centers(&set(&[2, 3, 5]), 1, 211).unwrap();
        assert_eq!(r.centers.len(), 21);
        assert_eq!(&r.centers[..6], &[12, 18, 30, 42, 48, 60]);
    }

    #[test]
    fn empty_set_keeps_everything() {
        let r = twin_centers(&PrimeSet::empty(), 5, 8).unwrap();
        assert_eq!(r.centers, vec![5, 6, 7]);
    }

    #[test]
    fn pairs() {
        let p = twin_pairs(&set(&[2, 3]), 1, 61).unwrap();
        assert_eq!(&p[..5], &[(5, 7), (11, 13), (17, 19), (23, 25), (29, 31)]);
        assert_eq!(*p.last().unwrap(), (59, 61));
        assert_eq!(
            twin_pairs(&set(&[2, 3, 5, 7]), 1, 31).unwrap(),
            vec![(11, 13), (17, 19), (29, 31)]
        );
        let seven = twin_centers(&set(&[7]), 1, 8).unwrap();
        assert_eq!(seven.centers, vec![2, 3, 4, 5, 7]);
        assert_eq!(seven.pairs(), vec![(1, 3), (2, 4), (3, 5), (4, 6), (6, 8)]);
    }

    #[test]
    fn zero_is_a_center_but_has_no_pair() {
        let r = twin_centers(&set(&[5]), 0, 3).unwrap();
        assert_eq!(r.centers, vec![0, 2]);
        assert_eq!(r.pairs(), vec![(1, 3)]);
    }

    #[test]
    fn empty_and_bad_ranges() {
        assert!(twin_centers(&set(&[5]), 0, 0).unwrap().centers.is_empty());
        assert_eq!(
            twin_centers(&set(&[5]), 3, 2).unwrap_err(),
            Error::BadRange { lo: 3, hi: 2 }
        );
        assert!(gap_centers(&set(&[5]), 0, 0, 10).is_err());
    }

    #[test]
    fn gap_two_example() {
        let r = gap_centers(&set(&[3, 5]), 2, 0, 15).unwrap();
        assert_eq!(r.centers, vec![0, 6, 9]);
    }

    #[test]
    fn chunking_is_invisible() {
        let m = set(&[2, 3, 5, 7, 11]);
        let reference = twin_centers(&m, 17, 5000).unwrap();
        for seg in [1, 2, 5, 97, 210, 4096] {
            let cfg = SieveConfig { segment_len: seg };
            assert_eq!(twin_centers_with(&m, 17, 5000, &cfg).unwrap(), reference);
        }
        assert_eq!(
            count_twin_centers(&m, 17, 5000).unwrap(),
            reference.centers.len() as u128
        );
    }

    #[test]
    fn m_prime_counts() {
        // 1, 5, 7, 11, 13, 17, 19, 23, 25, 29
        assert_eq!(count_m_primes(&set(&[2, 3]), 1, 31).unwrap(), 10);
        assert_eq!(count_m_primes(&PrimeSet::empty(), 1, 8).unwrap(), 7);
    }

    #[test]
    fn true_twins_small_n() {
        let r1 = true_twin_centers(1).unwrap();
        assert_eq!(r1.bound, 7);
        assert_eq!(r1.centers, vec![4, 6]);
        assert_eq!(r1.small_centers, vec![2]);

        let r2 = true_twin_centers(2).unwrap();
        assert_eq!(r2.bound, 23);
        assert_eq!(r2.centers, vec![6, 12, 18]);
        assert_eq!(r2.pairs, vec![(5, 7), (11, 13), (17, 19)]);

        let r3 = true_twin_centers(3).unwrap();
        assert_eq!(r3.bound, 47);
        assert_eq!(r3.centers, vec![12, 18, 30, 42]);

        // the printed table has "70 (71, 73)"; the pair 71, 73 is centered on 72
        let r4 = true_twin_centers(4).unwrap();
        assert_eq!(r4.bound, 119);
        assert_eq!(r4.centers, vec![12, 18, 30, 42, 60, 72, 102, 108]);
        for r in [&r1, &r2, &r3, &r4] {
            assert!(r.rejected.is_empty());
        }
        assert!(true_twin_centers(0).is_err());
    }
}
