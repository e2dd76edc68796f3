//! Discarded twin centers.
//!
//! For a prime set `M` with primorial `P`, a residue `z` in `[0, P)` is
//! *discarded* when every `p` in `M` divides `z - 1` or `z + 1`. Such a `z`
//! (and everything congruent to it mod `P`) can never be a twin M-prime
//! center. Three independent constructions are provided:
//!
//! * [`discarded_crt`] solves `z = ±1 (mod p)` for every sign assignment.
//! * [`discarded_lift`] extends a known profile by one prime, scanning the
//!   `q` copies of each base residue.
//! * [`discarded_scan`] tests the definition directly on every residue and
//!   serves as the reference for the other two.
//!
//! The wing `0` (from `z = 1`) is divisible by every prime, so `1` is
//! discarded for every nonempty `M`.

use std::fmt;

use crate::error::{Error, Result};
use crate::prime_core::{is_prime, PrimeSet, Primorial};

/// Largest modulus [`discarded_scan`] will walk by default.
pub const DEFAULT_SCAN_LIMIT: u128 = 100_000_000;

/// Which wing a prime divides.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Sign {
    /// `p | z - 1`, i.e. `z = +1 (mod p)`.
    Plus,
    /// `p | z + 1`, i.e. `z = -1 (mod p)`.
    Minus,
}

impl Sign {
    /// The residue class `±1 mod p`. For `p = 2` both signs give `1`.
    pub fn residue(self, p: u64) -> u64 {
        match self {
            Sign::Plus => 1 % p,
            Sign::Minus => p - 1,
        }
    }
}

/// One sign per prime: the CRT coordinates of a single discarded center.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct SignAssignment {
    signs: Vec<(u64, Sign)>,
}

impl SignAssignment {
    /// Pairs each prime of `set` with a sign. `signs.len()` must equal `set.len()`.
    pub fn new(set: &PrimeSet, signs: &[Sign]) -> Result<Self> {
        if signs.len() != set.len() {
            return Err(Error::InvalidArgument(format!(
                "{} signs for {} primes",
                signs.len(),
                set.len()
            )));
        }
        Ok(SignAssignment {
            signs: set.iter().zip(signs.iter().copied()).collect(),
        })
    }

    /// All `2^|M|` assignments in lexicographic order (Plus before Minus).
    pub fn enumerate(set: &PrimeSet) -> impl Iterator<Item = SignAssignment> + '_ {
        let k = set.len();
        (0u64..1 << k).map(move |mask| SignAssignment {
            signs: set
                .iter()
                .enumerate()
                .map(|(i, p)| {
                    let sign = if mask >> i & 1 == 0 {
                        Sign::Plus
                    } else {
                        Sign::Minus
                    };
                    (p, sign)
                })
                .collect(),
        })
    }

    pub fn signs(&self) -> &[(u64, Sign)] {
        &self.signs
    }

    /// The unique `z` in `[0, P)` with `z = ε_p (mod p)` for every prime.
    ///
    /// `P` must not overflow; callers check the primorial first.
    pub fn solve(&self) -> u128 {
        let mut residue: u128 = 0;
        let mut modulus: u128 = 1;
        for &(p, sign) in &self.signs {
            residue = crt_combine(residue, modulus, sign.residue(p), p);
            modulus *= p as u128;
        }
        residue
    }
}

/// Solves `z = a (mod m)`, `z = b (mod n)` for coprime `m`, `n`, returning
/// `z` in `[0, m n)`.
fn crt_combine(a: u128, m: u128, b: u64, n: u64) -> u128 {
    let n128 = n as u128;
    let m_mod_n = (m % n128) as u64;
    let a_mod_n = (a % n128) as u64;
    let diff = (b + n - a_mod_n) % n;
    let inv = mod_inverse(m_mod_n, n);
    let k = (diff as u128 * inv as u128) % n128;
    a + m * k
}

fn mod_inverse(a: u64, n: u64) -> u64 {
    if n == 1 {
        return 0;
    }
    let (mut old_r, mut r) = (a as i128, n as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    debug_assert_eq!(old_r, 1, "moduli must be coprime");
    old_s.rem_euclid(n as i128) as u64
}

/// One primorial cycle of a prime set: its modulus, discarded residues,
/// and surviving twin-center count.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleProfile {
    prime_set: PrimeSet,
    modulus: Primorial,
    discarded: Vec<u128>,
    survivors_per_cycle: u128,
}

impl CycleProfile {
    fn from_parts(prime_set: PrimeSet, modulus: Primorial, mut discarded: Vec<u128>) -> Self {
        discarded.sort_unstable();
        discarded.dedup();
        let survivors_per_cycle = survivors_per_cycle(&prime_set);
        CycleProfile {
            prime_set,
            modulus,
            discarded,
            survivors_per_cycle,
        }
    }

    pub fn prime_set(&self) -> &PrimeSet {
        &self.prime_set
    }

    pub fn modulus(&self) -> Primorial {
        self.modulus
    }

    /// Sorted residues in `[0, modulus)`.
    pub fn discarded(&self) -> &[u128] {
        &self.discarded
    }

    pub fn survivors_per_cycle(&self) -> u128 {
        self.survivors_per_cycle
    }

    /// Whether `z` lies in a discarded residue class.
    pub fn is_discarded(&self, z: u128) -> bool {
        self.discarded
            .binary_search(&(z % self.modulus.value()))
            .is_ok()
    }
}

impl fmt::Display for CycleProfile {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "D{} mod {} = [", self.prime_set, self.modulus)?;
        for (i, z) in self.discarded.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{z}")?;
        }
        write!(f, "], {} survivors per cycle", self.survivors_per_cycle)
    }
}

/// Twin centers per primorial cycle: `Π (p - 2)` over odd `p`, with `2`
/// contributing a factor of 1.
pub fn survivors_per_cycle(set: &PrimeSet) -> u128 {
    set.iter()
        .filter(|&p| p != 2)
        .map(|p| (p - 2) as u128)
        .product()
}

/// Number of discarded residues per cycle, `2^(odd primes)`.
pub fn discarded_per_cycle(set: &PrimeSet) -> u128 {
    1u128 << set.odd_count()
}

/// Discarded residues by Chinese-remainder combination over every sign assignment.
pub fn discarded_crt(set: &PrimeSet) -> Result<CycleProfile> {
    let modulus = set.primorial()?;
    let discarded = SignAssignment::enumerate(set)
        .map(|a| a.solve())
        .collect();
    Ok(CycleProfile::from_parts(set.clone(), modulus, discarded))
}

/// Extends `base` by the prime `q`.
///
/// Every base residue `z` repeats `q` times inside the new cycle as
/// `z + k * base.modulus`; a copy stays discarded exactly when `q` divides
/// one of its wings.
pub fn discarded_lift(base: &CycleProfile, q: u64) -> Result<CycleProfile> {
    if !is_prime(q) {
        return Err(Error::NotPrime(q.to_string()));
    }
    let prime_set = base.prime_set.with(q)?;
    let modulus = prime_set.primorial()?;
    let step = base.modulus.value();
    let q128 = q as u128;
    let mut discarded = Vec::with_capacity(base.discarded.len() * 2);
    for &z in &base.discarded {
        for k in 0..q128 {
            let candidate = z + k * step;
            let r = candidate % q128;
            if r == 1 % q128 || r == q128 - 1 {
                discarded.push(candidate);
            }
        }
    }
    Ok(CycleProfile::from_parts(prime_set, modulus, discarded))
}

/// Builds a profile by lifting the empty profile one prime at a time, in
/// the order given. The order does not affect the result.
pub fn discarded_lift_from(order: &[u64]) -> Result<CycleProfile> {
    order
        .iter()
        .try_fold(empty_profile(), |acc, &q| discarded_lift(&acc, q))
}

/// The profile of the empty set: modulus 1, the single residue 0.
pub fn empty_profile() -> CycleProfile {
    CycleProfile {
        prime_set: PrimeSet::empty(),
        modulus: PrimeSet::empty().primorial().expect("1 fits"),
        discarded: vec![0],
        survivors_per_cycle: 1,
    }
}

/// Discarded residues by testing the definition on every `z` in `[0, P)`.
pub fn discarded_scan(set: &PrimeSet) -> Result<CycleProfile> {
    discarded_scan_with_limit(set, DEFAULT_SCAN_LIMIT)
}

/// [`discarded_scan`] with an explicit ceiling on the modulus.
pub fn discarded_scan_with_limit(set: &PrimeSet, limit: u128) -> Result<CycleProfile> {
    let modulus = set.primorial()?;
    if modulus.value() > limit {
        return Err(Error::Guard {
            what: "discarded scan modulus",
            needed: modulus.value(),
            limit,
        });
    }
    let discarded = (0..modulus.value())
        .filter(|&z| {
            let z = z as i128;
            set.iter().all(|p| {
                let p = p as i128;
                (z - 1) % p == 0 || (z + 1) % p == 0
            })
        })
        .collect();
    Ok(CycleProfile::from_parts(set.clone(), modulus, discarded))
}

/// Number of integers in `[1, x]` lying in a discarded class of `profile`.
///
/// Class `z >= 1` contributes `floor((x + P - z) / P)` (evaluated without
/// forming `x + P`); the class `0`, present only for the empty set where
/// `P = 1`, contributes `floor(x / P)`.
pub fn discarded_count(profile: &CycleProfile, x: u128) -> u128 {
    let modulus = profile.modulus.value();
    profile
        .discarded
        .iter()
        .map(|&z| {
            if z == 0 {
                x / modulus
            } else if x < z {
                0
            } else {
                (x - z) / modulus + 1
            }
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(v: &[u64]) -> PrimeSet {
        PrimeSet::new(v.iter().copied()).unwrap()
    }

    #[test]
    fn crt_examples() {
        assert_eq!(discarded_crt(&set(&[5, 7])).unwrap().discarded(), &[1, 6, 29, 34]);
        assert_eq!(
            discarded_crt(&set(&[5, 7, 11])).unwrap().discarded(),
            &[1, 34, 76, 111, 274, 309, 351, 384]
        );
        let two = discarded_crt(&set(&[2])).unwrap();
        assert_eq!(two.discarded(), &[1]);
        assert_eq!(two.modulus().value(), 2);
    }

    #[test]
    fn scan_examples() {
        assert_eq!(discarded_scan(&set(&[5, 11])).unwrap().discarded(), &[1, 21, 34, 54]);
        assert_eq!(discarded_scan(&set(&[7, 11])).unwrap().discarded(), &[1, 34, 43, 76]);
        let three = discarded_scan(&set(&[3])).unwrap();
        assert_eq!(three.discarded(), &[1, 2]);
        assert_eq!(three.modulus().value(), 3);
    }

    #[test]
    fn lift_examples() {
        let five = discarded_lift(&empty_profile(), 5).unwrap();
        assert_eq!(five.discarded(), &[1, 4]);
        assert_eq!(five.modulus().value(), 5);
        assert_eq!(
            discarded_lift(&five, 7).unwrap(),
            discarded_crt(&set(&[5, 7])).unwrap()
        );
    }

    #[test]
    fn lift_keeps_34_and_309_from_34() {
        // The seven copies of 34 mod 55 inside one cycle of 385; only those
        // with a wing divisible by 7 survive.
        let base = discarded_crt(&set(&[5, 11])).unwrap();
        assert_eq!(base.discarded(), &[1, 21, 34, 54]);
        let lifted = discarded_lift(&base, 7).unwrap();
        let from_34: Vec<u128> = lifted
            .discarded()
            .iter()
            .copied()
            .filter(|z| z % 55 == 34)
            .collect();
        assert_eq!(from_34, vec![34, 309]);
    }

    #[test]
    fn lift_errors() {
        let base = discarded_crt(&set(&[5, 11])).unwrap();
        assert!(matches!(discarded_lift(&base, 9), Err(Error::NotPrime(_))));
        assert!(matches!(
            discarded_lift(&base, 11),
            Err(Error::PrimeAlreadyInSet { .. })
        ));
        let near = crate::prime_core::first_n_primes(26);
        let fake = CycleProfile {
            prime_set: near.clone(),
            modulus: near.primorial().unwrap(),
            discarded: vec![1],
            survivors_per_cycle: 0,
        };
        assert!(matches!(discarded_lift(&fake, 103), Err(Error::Overflow(_))));
    }

    #[test]
    fn scan_guard() {
        let err = discarded_scan_with_limit(&set(&[5, 7, 11]), 100).unwrap_err();
        assert_eq!(
            err,
            Error::Guard {
                what: "discarded scan modulus",
                needed: 385,
                limit: 100
            }
        );
    }

    #[test]
    fn empty_set_profile() {
        let e = PrimeSet::empty();
        assert_eq!(discarded_crt(&e).unwrap(), empty_profile());
        assert_eq!(discarded_scan(&e).unwrap(), empty_profile());
        assert_eq!(discarded_count(&empty_profile(), 9), 9);
    }

    #[test]
    fn counting_examples() {
        let five = discarded_crt(&set(&[5])).unwrap();
        assert_eq!(discarded_count(&five, 5), 2);
        let p57 = discarded_crt(&set(&[5, 7])).unwrap();
        assert_eq!(discarded_count(&p57, 35), 4);
        assert_eq!(discarded_count(&p57, 0), 0);
        assert_eq!(discarded_count(&five, 0), 0);
    }

    #[test]
    fn sign_assignment_for_two_collapses() {
        let s = set(&[2, 5]);
        let sols: Vec<u128> = SignAssignment::enumerate(&s).map(|a| a.solve()).collect();
        assert_eq!(sols.len(), 4);
        let mut uniq = sols.clone();
        uniq.sort_unstable();
        uniq.dedup();
        assert_eq!(uniq, vec![1, 9]);
        let a = SignAssignment::new(&s, &[Sign::Plus, Sign::Minus]).unwrap();
        let b = SignAssignment::new(&s, &[Sign::Minus, Sign::Minus]).unwrap();
        assert_eq!(a.solve(), b.solve());
        assert!(SignAssignment::new(&s, &[Sign::Plus]).is_err());
    }

    #[test]
    fn survivors() {
        assert_eq!(discarded_crt(&set(&[2, 3, 5, 7])).unwrap().survivors_per_cycle(), 15);
        assert_eq!(discarded_crt(&set(&[5, 7, 11])).unwrap().survivors_per_cycle(), 135);
    }
}
