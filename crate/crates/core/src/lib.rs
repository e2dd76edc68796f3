//! Twin M-prime centers: the Sieve of Twins, discarded-center cycles, and
//! exact inclusion-exclusion counts.
//!
//! An integer is an *M-prime* when no prime of a set `M` divides it, and `c`
//! is a *twin M-prime center* when `c - 1` and `c + 1` are both M-primes.
//! Everything repeats with period `P = Π p`. Within one cycle the residues
//! where every `p` divides a wing are the *discarded centers* `D_M`;
//! counting them by inclusion-exclusion over the subsets of `M` gives the
//! number of twin centers up to any `x`.
//!
//! ```
//! use twinsieve::{discarded_crt, twin_centers, twin_count, PrimeSet};
//!
//! let m = PrimeSet::new([2, 3, 5, 7]).unwrap();
//! let centers = twin_centers(&m, 1, 211).unwrap().centers;
//! assert_eq!(&centers[..4], &[12, 18, 30, 42]);
//! assert_eq!(twin_count(&m, 210).unwrap(), 15);
//!
//! let d = discarded_crt(&PrimeSet::new([5, 7]).unwrap()).unwrap();
//! assert_eq!(d.discarded(), &[1, 6, 29, 34]);
//! ```
//!
//! All integers are exact `u128`; anything that would not fit is reported
//! as [`Error::Overflow`].

pub mod cli;
pub mod counting;
pub mod discarded;
pub mod error;
pub mod oracle;
pub mod prime_core;
pub mod twin_sieve;

pub use counting::{
    count, euler_phi, legendre_f, meissel_f, meissel_f_general, meissel_f_set, pi_from_legendre,
    twin_count, twin_count_single, twin_totient, CountKind, CountQuery, CountReport, Guards,
    Method, PrimeSource, TwinCounter,
};
pub use discarded::{
    discarded_count, discarded_crt, discarded_lift, discarded_scan, CycleProfile, Sign,
    SignAssignment,
};
pub use error::{Error, Result};
pub use oracle::{verify_all, VerificationReport, VerifyConfig};
pub use prime_core::{first_n_primes, make_prime_set, primes_up_to, primorial, PrimeSet, Primorial};
pub use twin_sieve::{gap_centers, true_twin_centers, twin_centers, twin_pairs, CenterRange, TrueTwinReport};
