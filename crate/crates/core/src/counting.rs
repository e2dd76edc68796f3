//! Counting functions: Legendre's coprime count and its Meissel recursion,
//! the prime count derived from it, inclusion-exclusion twin-center counts,
//! Euler's totient and its twin analogue.
//!
//! Every function takes `x` as a non-negative integer. All of them depend
//! on a real argument only through floors, so a real `x` is handled by
//! flooring first.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;
use std::time::{Duration, Instant};

use crate::discarded::{discarded_count, discarded_crt, CycleProfile};
use crate::error::{Error, Result};
use crate::prime_core::{first_n_primes, is_prime, primes_up_to, PrimeSet};
use crate::twin_sieve;

/// Largest prime set [`legendre_f`] will expand (`2^24` subset terms).
pub const DEFAULT_LEGENDRE_MAX_PRIMES: usize = 24;

/// Default ceiling on inclusion-exclusion terms for twin counts, `3^12`.
pub const DEFAULT_MAX_TWIN_TERMS: u128 = 531_441;

/// Limits on the exponential-cost evaluations.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Guards {
    pub legendre_max_primes: usize,
    pub max_twin_terms: u128,
}

impl Default for Guards {
    fn default() -> Self {
        Guards {
            legendre_max_primes: DEFAULT_LEGENDRE_MAX_PRIMES,
            max_twin_terms: DEFAULT_MAX_TWIN_TERMS,
        }
    }
}

/// A value together with the number of floor-quotient terms spent on it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Evaluation {
    pub value: u128,
    pub terms: u128,
}

/// `floor((x + k) / p)` without forming `x + k`.
fn floor_shifted(x: u128, k: u128, p: u128) -> u128 {
    x / p + (x % p + k) / p
}

/// Number of integers in `[1, x]` coprime to every prime of `set`, by
/// inclusion-exclusion over all `2^|M|` subsets.
pub fn legendre_f(set: &PrimeSet, x: u128) -> Result<u128> {
    legendre_f_eval(set, x, DEFAULT_LEGENDRE_MAX_PRIMES).map(|e| e.value)
}

pub fn legendre_f_eval(set: &PrimeSet, x: u128, max_primes: usize) -> Result<Evaluation> {
    if set.len() > max_primes {
        return Err(Error::Guard {
            what: "Legendre subset count (primes)",
            needed: set.len() as u128,
            limit: max_primes as u128,
        });
    }
    let primes = set.as_slice();
    let mut plus: u128 = 0;
    let mut minus: u128 = 0;
    let mut terms: u128 = 0;
    // Depth-first over subsets; a product above x contributes 0 and so do
    // all of its supersets, but each is still one term.
    fn walk(
        primes: &[u64],
        idx: usize,
        product: Option<u128>,
        odd: bool,
        x: u128,
        plus: &mut u128,
        minus: &mut u128,
        terms: &mut u128,
    ) {
        if idx == primes.len() {
            *terms += 1;
            let q = product.map_or(0, |d| x / d);
            if odd {
                *minus += q;
            } else {
                *plus += q;
            }
            return;
        }
        walk(primes, idx + 1, product, odd, x, plus, minus, terms);
        let next = product.and_then(|d| d.checked_mul(primes[idx] as u128));
        walk(primes, idx + 1, next, !odd, x, plus, minus, terms);
    }
    walk(primes, 0, Some(1), false, x, &mut plus, &mut minus, &mut terms);
    Ok(Evaluation {
        value: plus - minus,
        terms,
    })
}

/// `π(x) = n + f_n(x) - 1`.
///
/// The identity holds exactly for `p_n <= x < p_{n+1}^2`: below `p_n` the
/// `+ n` term counts primes larger than `x`, and from `p_{n+1}^2` on,
/// composites coprime to the first `n` primes appear.
pub fn pi_from_legendre(n: usize, x: u128) -> Result<u128> {
    pi_from_legendre_eval(n, x, CoprimeMethod::Legendre).map(|e| e.value)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoprimeMethod {
    Legendre,
    Meissel,
}

pub fn pi_from_legendre_eval(n: usize, x: u128, method: CoprimeMethod) -> Result<Evaluation> {
    if n == 0 {
        return Err(Error::Domain("the prime-count identity needs n >= 1".into()));
    }
    let with_next = first_n_primes(n + 1);
    let next = with_next.largest().expect("n + 1 >= 2") as u128;
    let primes = with_next.without(next as u64)?;
    let p = primes.largest().expect("n >= 1") as u128;
    if x < p || x >= next * next {
        return Err(Error::Domain(format!(
            "x = {x} is outside [p_n, p_(n+1)^2) = [{p}, {}) for n = {n}",
            next * next
        )));
    }
    let f = match method {
        CoprimeMethod::Legendre => legendre_f_eval(&primes, x, usize::MAX)?,
        CoprimeMethod::Meissel => meissel_f_set_eval(&primes, x),
    };
    Ok(Evaluation {
        value: n as u128 + f.value - 1,
        terms: f.terms,
    })
}

/// `f_n(x)` by the recursion `f_n(x) = f_{n-1}(x) - f_{n-1}(x / p_n)`.
pub fn meissel_f(n: usize, x: u128) -> u128 {
    meissel_f_set(&first_n_primes(n), x)
}

/// Coprime count over an arbitrary set by the same recursion, always
/// removing the largest remaining prime.
pub fn meissel_f_set(set: &PrimeSet, x: u128) -> u128 {
    meissel_f_set_eval(set, x).value
}

/// [`meissel_f_set`]; `terms` is the number of distinct `(k, x)` states
/// evaluated.
pub fn meissel_f_set_eval(set: &PrimeSet, x: u128) -> Evaluation {
    let mut memo = HashMap::new();
    let value = meissel_rec(set.as_slice(), set.len(), x, &mut memo);
    Evaluation {
        value,
        terms: memo.len() as u128,
    }
}

fn meissel_rec(
    primes: &[u64],
    k: usize,
    x: u128,
    memo: &mut HashMap<(usize, u128), u128>,
) -> u128 {
    if k == 0 || x == 0 {
        return x;
    }
    if let Some(&v) = memo.get(&(k, x)) {
        return v;
    }
    let p = primes[k - 1] as u128;
    // floor(floor(x / a) / b) = floor(x / (a b)), so flooring at each level is exact
    let v = meissel_rec(primes, k - 1, x, memo) - meissel_rec(primes, k - 1, x / p, memo);
    memo.insert((k, x), v);
    v
}

/// One recursion step on `p`: `f_M(x) = f_{M - p}(x) - f_{M - p}(x / p)`.
pub fn meissel_f_general(set: &PrimeSet, x: u128, p: u64) -> Result<u128> {
    let rest = set.without(p)?;
    Ok(meissel_f_set(&rest, x) - meissel_f_set(&rest, x / p as u128))
}

/// Twin `{p}`-prime centers `<= x`: `[x] - [(x+1)/p] - [(x+p-1)/p]`, or
/// `[x] - [(x+1)/2]` for `p = 2`.
pub fn twin_count_single(p: u64, x: u128) -> Result<u128> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p.to_string()));
    }
    Ok(single_prime_with_offsets(p, x, 1, p as u128 - 1))
}

pub(crate) fn single_prime_with_offsets(p: u64, x: u128, low: u128, high: u128) -> u128 {
    // saturating only matters for perturbed offsets; the true formula is never negative
    let p = p as u128;
    if p == 2 {
        x.saturating_sub(floor_shifted(x, low, 2))
    } else {
        x.saturating_sub(floor_shifted(x, low, p) + floor_shifted(x, high, p))
    }
}

/// Terms needed to count twin centers for `set` by inclusion-exclusion:
/// one per floor quotient, `[x]` included, i.e. `Π (1 + |D_p|)`, which is
/// `3^k` for `k` odd primes.
pub fn twin_count_terms(set: &PrimeSet) -> Option<u128> {
    set.iter()
        .try_fold(1u128, |acc, p| acc.checked_mul(if p == 2 { 2 } else { 3 }))
}

/// Precomputed inclusion-exclusion for twin-center counts over one prime
/// set. Building it costs one CRT profile per nonempty subset; each
/// [`TwinCounter::count`] then costs one floor quotient per term.
#[derive(Debug, Clone)]
pub struct TwinCounter {
    prime_set: PrimeSet,
    subtract: Vec<CycleProfile>,
    add_back: Vec<CycleProfile>,
    terms: u128,
}

impl TwinCounter {
    pub fn new(set: &PrimeSet) -> Result<Self> {
        Self::with_guard(set, DEFAULT_MAX_TWIN_TERMS)
    }

    pub fn with_guard(set: &PrimeSet, max_terms: u128) -> Result<Self> {
        let terms = twin_count_terms(set).unwrap_or(u128::MAX);
        if terms > max_terms {
            return Err(Error::Guard {
                what: "twin inclusion-exclusion terms",
                needed: terms,
                limit: max_terms,
            });
        }
        let mut subtract = Vec::new();
        let mut add_back = Vec::new();
        for subset in set.subsets().skip(1) {
            let profile = discarded_crt(&subset)?;
            if subset.len() % 2 == 1 {
                subtract.push(profile);
            } else {
                add_back.push(profile);
            }
        }
        Ok(TwinCounter {
            prime_set: set.clone(),
            subtract,
            add_back,
            terms,
        })
    }

    pub fn prime_set(&self) -> &PrimeSet {
        &self.prime_set
    }

    pub fn terms(&self) -> u128 {
        self.terms
    }

    /// Twin centers `<= x`.
    pub fn count(&self, x: u128) -> Result<u128> {
        let sum = |profiles: &[CycleProfile]| {
            profiles
                .iter()
                .try_fold(0u128, |acc, pr| acc.checked_add(discarded_count(pr, x)))
        };
        let overflow = || Error::Overflow(format!("twin count for {} at x = {x}", self.prime_set));
        let subtract = sum(&self.subtract).ok_or_else(overflow)?;
        let add_back = sum(&self.add_back).ok_or_else(overflow)?;
        x.checked_add(add_back)
            .ok_or_else(overflow)?
            .checked_sub(subtract)
            .ok_or_else(overflow)
    }
}

/// Twin M-prime centers `<= x` by inclusion-exclusion over discarded centers.
pub fn twin_count(set: &PrimeSet, x: u128) -> Result<u128> {
    TwinCounter::new(set)?.count(x)
}

/// Distinct prime divisors by trial division.
pub fn distinct_prime_factors(mut x: u128) -> Vec<u128> {
    let mut out = Vec::new();
    let mut d: u128 = 2;
    while d * d <= x {
        if x % d == 0 {
            out.push(d);
            while x % d == 0 {
                x /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if x > 1 {
        out.push(x);
    }
    out
}

/// Euler's totient.
pub fn euler_phi(x: u128) -> Result<u128> {
    totient_like(x, |p| p - 1)
}

/// Number of `a` in `[1, x]` with `a - 1` and `a + 1` both coprime to `x`:
/// `x Π f(p) / p` over distinct prime divisors, `f(p) = p - 2` for odd `p`
/// and `f(2) = 1`.
pub fn twin_totient(x: u128) -> Result<u128> {
    totient_like(x, |p| if p == 2 { 1 } else { p - 2 })
}

fn totient_like(x: u128, factor: impl Fn(u128) -> u128) -> Result<u128> {
    if x == 0 {
        return Err(Error::Domain("totients are defined for x >= 1".into()));
    }
    Ok(distinct_prime_factors(x)
        .into_iter()
        .fold(x, |acc, p| acc / p * factor(p)))
}

/// What is being counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CountKind {
    /// Twin M-prime centers `<= x`.
    Twin,
    /// Integers in `[1, x]` coprime to M.
    Coprime,
    /// Primes `<= x`.
    Pi,
    /// Euler's totient of `x`.
    Phi,
    /// Twin analogue of the totient.
    TwinTotient,
}

/// How it is counted.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Method {
    Legendre,
    Meissel,
    InclusionExclusion,
    SinglePrimeFormula,
    SieveOracle,
    /// Closed product over prime divisors (totients).
    ProductFormula,
}

impl CountKind {
    pub fn name(self) -> &'static str {
        match self {
            CountKind::Twin => "twin",
            CountKind::Coprime => "coprime",
            CountKind::Pi => "pi",
            CountKind::Phi => "phi",
            CountKind::TwinTotient => "twin-totient",
        }
    }
}

impl Method {
    pub fn name(self) -> &'static str {
        match self {
            Method::Legendre => "legendre",
            Method::Meissel => "meissel",
            Method::InclusionExclusion => "ie",
            Method::SinglePrimeFormula => "single",
            Method::SieveOracle => "sieve",
            Method::ProductFormula => "formula",
        }
    }
}

impl fmt::Display for CountKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CountKind {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "twin" => CountKind::Twin,
            "coprime" => CountKind::Coprime,
            "pi" => CountKind::Pi,
            "phi" => CountKind::Phi,
            "twin-totient" => CountKind::TwinTotient,
            _ => return Err(Error::InvalidArgument(format!("unknown kind {s:?}"))),
        })
    }
}

impl FromStr for Method {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "legendre" => Method::Legendre,
            "meissel" => Method::Meissel,
            "ie" | "inclusion-exclusion" => Method::InclusionExclusion,
            "single" => Method::SinglePrimeFormula,
            "sieve" => Method::SieveOracle,
            "formula" => Method::ProductFormula,
            _ => return Err(Error::InvalidArgument(format!("unknown method {s:?}"))),
        })
    }
}

/// Below this `x`, `auto` picks the sieve; above it, the closed formulas.
pub const AUTO_SIEVE_MAX_X: u128 = 1_000_000;

/// The primes a query counts against.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PrimeSource {
    None,
    Set(PrimeSet),
    FirstN(usize),
}

impl PrimeSource {
    pub fn resolve(&self) -> PrimeSet {
        match self {
            PrimeSource::None => PrimeSet::empty(),
            PrimeSource::Set(s) => s.clone(),
            PrimeSource::FirstN(n) => first_n_primes(*n),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountQuery {
    pub kind: CountKind,
    pub method: Method,
    pub primes: PrimeSource,
    pub x: u128,
}

impl CountQuery {
    /// Resolves `auto`: sieve for small `x`, formulas beyond.
    pub fn auto(kind: CountKind, primes: PrimeSource, x: u128) -> Self {
        let method = match kind {
            CountKind::Phi | CountKind::TwinTotient => Method::ProductFormula,
            CountKind::Pi if matches!(primes, PrimeSource::FirstN(_)) => Method::Legendre,
            CountKind::Pi => Method::SieveOracle,
            _ if x <= AUTO_SIEVE_MAX_X => Method::SieveOracle,
            CountKind::Twin => Method::InclusionExclusion,
            CountKind::Coprime => Method::Legendre,
        };
        CountQuery {
            kind,
            method,
            primes,
            x,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CountReport {
    pub query: CountQuery,
    pub value: u128,
    pub terms_evaluated: u128,
    pub elapsed: Duration,
}

/// Evaluates a query, rejecting kind/method combinations that make no sense.
pub fn count(query: &CountQuery, guards: &Guards) -> Result<CountReport> {
    let start = Instant::now();
    let eval = evaluate(query, guards)?;
    Ok(CountReport {
        query: query.clone(),
        value: eval.value,
        terms_evaluated: eval.terms,
        elapsed: start.elapsed(),
    })
}

fn invalid(query: &CountQuery) -> Error {
    Error::InvalidArgument(format!(
        "method {} does not apply to kind {}",
        query.method, query.kind
    ))
}

fn evaluate(query: &CountQuery, guards: &Guards) -> Result<Evaluation> {
    let x = query.x;
    let set = query.primes.resolve();
    match (query.kind, query.method) {
        (CountKind::Twin, Method::InclusionExclusion) => {
            let counter = TwinCounter::with_guard(&set, guards.max_twin_terms)?;
            Ok(Evaluation {
                value: counter.count(x)?,
                terms: counter.terms(),
            })
        }
        (CountKind::Twin, Method::SinglePrimeFormula) => match set.as_slice() {
            &[p] => Ok(Evaluation {
                value: twin_count_single(p, x)?,
                terms: if p == 2 { 2 } else { 3 },
            }),
            _ => Err(Error::InvalidArgument(
                "the single-prime formula needs exactly one prime".into(),
            )),
        },
        (CountKind::Twin, Method::SieveOracle) => Ok(Evaluation {
            value: twin_sieve::count_twin_centers(&set, 1, sieve_end(x)?)?,
            terms: x,
        }),
        (CountKind::Coprime, Method::Legendre) => {
            legendre_f_eval(&set, x, guards.legendre_max_primes)
        }
        (CountKind::Coprime, Method::Meissel) => Ok(meissel_f_set_eval(&set, x)),
        (CountKind::Coprime, Method::SieveOracle) => Ok(Evaluation {
            value: twin_sieve::count_m_primes(&set, 1, sieve_end(x)?)?,
            terms: x,
        }),
        (CountKind::Pi, Method::Legendre | Method::Meissel) => {
            let PrimeSource::FirstN(n) = query.primes else {
                return Err(Error::InvalidArgument(
                    "pi by Legendre or Meissel needs --first-n".into(),
                ));
            };
            let m = if query.method == Method::Legendre {
                CoprimeMethod::Legendre
            } else {
                CoprimeMethod::Meissel
            };
            pi_from_legendre_eval(n, x, m)
        }
        (CountKind::Pi, Method::SieveOracle) => {
            let limit = u64::try_from(x)
                .map_err(|_| Error::Domain(format!("x = {x} is too large to sieve")))?;
            Ok(Evaluation {
                value: primes_up_to(limit).len() as u128,
                terms: x,
            })
        }
        (CountKind::Phi, Method::ProductFormula) => Ok(Evaluation {
            value: euler_phi(x)?,
            terms: distinct_prime_factors(x.max(1)).len() as u128,
        }),
        (CountKind::TwinTotient, Method::ProductFormula) => Ok(Evaluation {
            value: twin_totient(x)?,
            terms: distinct_prime_factors(x.max(1)).len() as u128,
        }),
        _ => Err(invalid(query)),
    }
}

fn sieve_end(x: u128) -> Result<u128> {
    x.checked_add(1)
        .ok_or_else(|| Error::Overflow(format!("sieve range end for x = {x}")))
}
