//! Command-line front end.
//!
//! Exit codes: 0 success, 1 usage, 2 domain/guard/overflow, 3 verification
//! mismatch. Data goes to stdout, diagnostics to stderr. JSON output is an
//! envelope `{command, params, result, elapsed_ms}` in which every integer
//! of `result` is a decimal string.

use std::collections::BTreeMap;
use std::ffi::OsString;
use std::io::Write;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use serde_json::{json, Value};

use crate::counting::{self, CountKind, CountQuery, Guards, Method, PrimeSource};
use crate::discarded::{discarded_crt, discarded_lift_from, discarded_scan, CycleProfile};
use crate::error::Error;
use crate::oracle::{verify_all, InjectedFault, VerifyConfig};
use crate::prime_core::PrimeSet;
use crate::twin_sieve;

/// Environment variable overriding the inclusion-exclusion term guard.
pub const GUARD_ENV: &str = "TWINSIEVE_GUARD_TERMS";

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_LIMIT: i32 = 2;
pub const EXIT_MISMATCH: i32 = 3;

/// Centers written per window when streaming CSV.
const STREAM_WINDOW: u128 = 1 << 20;

#[derive(Debug, Parser)]
#[command(
    name = "twinsieve",
    version,
    about = "Sieve of Twins: twin M-prime centers, discarded centers, and exact counts"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// List twin (or gap-a) M-prime centers in [lo, hi).
    Centers(CentersArgs),
    /// Discarded centers of one primorial cycle.
    Discarded(DiscardedArgs),
    /// Count twin centers, coprimes, primes, or totients.
    Count(CountArgs),
    /// Cross-check every fast path against brute force.
    Verify(VerifyArgs),
    /// Compare counting methods over growing prefixes of a prime pool.
    ///
    /// Inclusion-exclusion cost is reported as floor-quotient terms with
    /// [x] counted as one term, so k odd primes cost 3^k terms.
    Bench(BenchArgs),
}

#[derive(Debug, Args)]
struct PrimeSelection {
    /// Comma-separated primes, e.g. 2,3,5,7.
    #[arg(long, value_parser = parse_prime_set, allow_hyphen_values = true, conflicts_with = "first_n")]
    primes: Option<PrimeSet>,
    /// Use the first N primes.
    #[arg(long)]
    first_n: Option<usize>,
}

impl PrimeSelection {
    fn source(&self) -> PrimeSource {
        match (&self.primes, self.first_n) {
            (Some(s), _) => PrimeSource::Set(s.clone()),
            (None, Some(n)) => PrimeSource::FirstN(n),
            (None, None) => PrimeSource::None,
        }
    }

    fn echo(&self, params: &mut Params) {
        if let Some(s) = &self.primes {
            params.value("primes", s.to_list_string());
        }
        if let Some(n) = self.first_n {
            params.value("first-n", n);
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Csv,
    Json,
    Table,
}

#[derive(Debug, Args)]
struct CentersArgs {
    #[command(flatten)]
    primes: PrimeSelection,
    #[arg(long, default_value_t = 0)]
    lo: u128,
    #[arg(long)]
    hi: u128,
    /// Emit wing pairs instead of centers.
    #[arg(long)]
    pairs: bool,
    /// Wing distance a: centers c with c - a and c + a both M-primes.
    #[arg(long, default_value_t = 1)]
    gap: u128,
    #[arg(long, value_enum, default_value = "csv")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum DiscardMethod {
    Crt,
    Lift,
    Scan,
}

#[derive(Debug, Args)]
struct DiscardedArgs {
    #[arg(long, value_parser = parse_prime_set, allow_hyphen_values = true)]
    primes: PrimeSet,
    #[arg(long, value_enum, default_value = "crt")]
    method: DiscardMethod,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum MethodArg {
    Auto,
    Ie,
    Sieve,
    Single,
    Legendre,
    Meissel,
}

impl MethodArg {
    fn method(self) -> Option<Method> {
        match self {
            MethodArg::Auto => None,
            MethodArg::Ie => Some(Method::InclusionExclusion),
            MethodArg::Sieve => Some(Method::SieveOracle),
            MethodArg::Single => Some(Method::SinglePrimeFormula),
            MethodArg::Legendre => Some(Method::Legendre),
            MethodArg::Meissel => Some(Method::Meissel),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum KindArg {
    Twin,
    Coprime,
    Pi,
    Phi,
    TwinTotient,
}

impl From<KindArg> for CountKind {
    fn from(k: KindArg) -> Self {
        match k {
            KindArg::Twin => CountKind::Twin,
            KindArg::Coprime => CountKind::Coprime,
            KindArg::Pi => CountKind::Pi,
            KindArg::Phi => CountKind::Phi,
            KindArg::TwinTotient => CountKind::TwinTotient,
        }
    }
}

#[derive(Debug, Args)]
struct CountArgs {
    #[command(flatten)]
    primes: PrimeSelection,
    #[arg(long)]
    x: u128,
    #[arg(long, value_enum, default_value = "auto")]
    method: MethodArg,
    #[arg(long, value_enum, default_value = "twin")]
    kind: KindArg,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[arg(long)]
    max_x: u128,
    #[arg(long, value_parser = parse_prime_set, allow_hyphen_values = true)]
    pool: PrimeSet,
    /// Largest subset size; defaults to the whole pool.
    #[arg(long)]
    max_subset: Option<usize>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    /// Perturb the single-prime formula to check that mismatches are caught.
    #[arg(long, hide = true)]
    inject_fault: bool,
}

#[derive(Debug, Args)]
struct BenchArgs {
    #[arg(long, value_enum, default_value = "twin")]
    kind: KindArg,
    #[arg(long, value_parser = parse_prime_set, allow_hyphen_values = true)]
    pool: PrimeSet,
    #[arg(long)]
    x: u128,
    #[arg(long, value_delimiter = ',', default_value = "ie,sieve")]
    methods: Vec<MethodArg>,
    #[arg(long, value_enum, default_value = "table")]
    format: Format,
}

fn parse_prime_set(s: &str) -> Result<PrimeSet, String> {
    s.parse::<PrimeSet>().map_err(|e| e.to_string())
}

/// Echo of the invocation, keyed by flag name.
#[derive(Debug, Default, Serialize)]
struct Params(BTreeMap<&'static str, Value>);

impl Params {
    fn value(&mut self, flag: &'static str, v: impl ToString) {
        self.0.insert(flag, Value::String(v.to_string()));
    }

    fn flag(&mut self, flag: &'static str, on: bool) {
        self.0.insert(flag, Value::Bool(on));
    }
}

/// Failure of a command, already classified by exit code.
struct Failure {
    code: i32,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure {
            code: if e.is_limit() { EXIT_LIMIT } else { EXIT_USAGE },
            message: e.to_string(),
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("write failed: {e}"),
        }
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure {
            code: EXIT_USAGE,
            message: format!("write failed: {e}"),
        }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure {
        code: EXIT_USAGE,
        message: message.into(),
    }
}

/// Runs the CLI with the process environment; returns the exit code.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    run_with_guard(args, std::env::var(GUARD_ENV).ok(), out, err)
}

/// [`run`] with the guard override passed explicitly instead of read from
/// the environment.
pub fn run_with_guard<I, T>(
    args: I,
    guard_override: Option<String>,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let display_only = matches!(
                e.kind(),
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion
            );
            if display_only {
                let _ = write!(out, "{}", e.render());
                return EXIT_OK;
            }
            let _ = write!(err, "{}", e.render());
            return EXIT_USAGE;
        }
    };
    let mut guards = Guards::default();
    if let Some(raw) = guard_override {
        match raw.trim().parse::<u128>() {
            Ok(v) => guards.max_twin_terms = v,
            Err(_) => {
                let _ = writeln!(err, "error: {GUARD_ENV}={raw:?} is not a non-negative integer");
                return EXIT_USAGE;
            }
        }
    }
    let result = match &cli.command {
        Command::Centers(a) => cmd_centers(a, out),
        Command::Discarded(a) => cmd_discarded(a, out),
        Command::Count(a) => cmd_count(a, &guards, out),
        Command::Verify(a) => cmd_verify(a, out),
        Command::Bench(a) => cmd_bench(a, &guards, out),
    };
    match result {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "error: {}", f.message);
            f.code
        }
    }
}

fn envelope(command: &str, params: Params, result: Value, start: Instant) -> Value {
    json!({
        "command": command,
        "params": params,
        "result": result,
        "elapsed_ms": start.elapsed().as_secs_f64() * 1e3,
    })
}

fn write_json(out: &mut dyn Write, v: &Value) -> Result<(), Failure> {
    serde_json::to_writer_pretty(&mut *out, v).map_err(|e| usage(e.to_string()))?;
    writeln!(out)?;
    Ok(())
}

fn strings<T: ToString>(values: impl IntoIterator<Item = T>) -> Vec<String> {
    values.into_iter().map(|v| v.to_string()).collect()
}

fn cmd_centers(a: &CentersArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let set = a.primes.source().resolve();
    if a.lo > a.hi {
        return Err(Error::BadRange { lo: a.lo, hi: a.hi }.into());
    }
    if a.gap == 0 {
        return Err(usage("--gap must be at least 1"));
    }
    match a.format {
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(&mut *out);
            if a.pairs {
                w.write_record(["left", "right"])?;
            } else {
                w.write_record(["center"])?;
            }
            let mut lo = a.lo;
            while lo < a.hi {
                let hi = a.hi.min(lo.saturating_add(STREAM_WINDOW));
                let range = twin_sieve::gap_centers(&set, a.gap, lo, hi)?;
                if a.pairs {
                    for (l, r) in range.pairs() {
                        w.write_record([l.to_string(), r.to_string()])?;
                    }
                } else {
                    for c in &range.centers {
                        w.write_record([c.to_string()])?;
                    }
                }
                w.flush()?;
                lo = hi;
            }
            w.flush()?;
        }
        Format::Json => {
            let range = twin_sieve::gap_centers(&set, a.gap, a.lo, a.hi)?;
            let mut params = Params::default();
            a.primes.echo(&mut params);
            params.value("lo", a.lo);
            params.value("hi", a.hi);
            params.value("gap", a.gap);
            params.flag("pairs", a.pairs);
            params.value("format", "json");
            let mut result = json!({
                "prime_set": strings(set.iter()),
                "gap": a.gap.to_string(),
                "lo": a.lo.to_string(),
                "hi": a.hi.to_string(),
            });
            if a.pairs {
                result["pairs"] = json!(range
                    .pairs()
                    .into_iter()
                    .map(|(l, r)| [l.to_string(), r.to_string()])
                    .collect::<Vec<_>>());
            } else {
                result["centers"] = json!(strings(range.centers.iter()));
            }
            write_json(out, &envelope("centers", params, result, start))?;
        }
    }
    Ok(EXIT_OK)
}

/// JSON shape of a [`CycleProfile`]; all integers as decimal strings.
pub fn profile_json(profile: &CycleProfile) -> Value {
    json!({
        "prime_set": strings(profile.prime_set().iter()),
        "modulus": profile.modulus().to_string(),
        "discarded": strings(profile.discarded().iter()),
        "survivors_per_cycle": profile.survivors_per_cycle().to_string(),
    })
}

fn cmd_discarded(a: &DiscardedArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let profile = match a.method {
        DiscardMethod::Crt => discarded_crt(&a.primes)?,
        DiscardMethod::Lift => discarded_lift_from(a.primes.as_slice())?,
        DiscardMethod::Scan => discarded_scan(&a.primes)?,
    };
    let method = a.method.to_possible_value().expect("no skipped variants");
    match a.format {
        Format::Json => {
            let mut params = Params::default();
            params.value("primes", a.primes.to_list_string());
            params.value("method", method.get_name());
            params.value("format", "json");
            let mut result = profile_json(&profile);
            result["method"] = json!(method.get_name());
            write_json(out, &envelope("discarded", params, result, start))?;
        }
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["modulus", "survivors_per_cycle", "residue"])?;
            let modulus = profile.modulus().to_string();
            let survivors = profile.survivors_per_cycle().to_string();
            for z in profile.discarded() {
                w.write_record([modulus.as_str(), survivors.as_str(), &z.to_string()])?;
            }
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn build_query(
    kind: CountKind,
    method: MethodArg,
    primes: &PrimeSelection,
    x: u128,
) -> Result<CountQuery, Failure> {
    let source = primes.source();
    if matches!(kind, CountKind::Phi | CountKind::TwinTotient) && source != PrimeSource::None {
        return Err(usage(format!(
            "--kind {kind} takes only --x (the primes are the divisors of x)"
        )));
    }
    Ok(match method.method() {
        None => CountQuery::auto(kind, source, x),
        Some(m) => CountQuery {
            kind,
            method: m,
            primes: source,
            x,
        },
    })
}

fn cmd_count(a: &CountArgs, guards: &Guards, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let query = build_query(a.kind.into(), a.method, &a.primes, a.x)?;
    let report = counting::count(&query, guards)?;
    let set = query.primes.resolve();
    let method_arg = a.method.to_possible_value().expect("no skipped variants");
    match a.format {
        Format::Json => {
            let mut params = Params::default();
            a.primes.echo(&mut params);
            params.value("x", a.x);
            params.value("method", method_arg.get_name());
            params.value("kind", report.query.kind);
            params.value("format", "json");
            let result = json!({
                "kind": report.query.kind.name(),
                "method": report.query.method.name(),
                "prime_set": strings(set.iter()),
                "x": a.x.to_string(),
                "value": report.value.to_string(),
                "terms_evaluated": report.terms_evaluated.to_string(),
            });
            write_json(out, &envelope("count", params, result, start))?;
        }
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["kind", "method", "x", "value", "terms_evaluated", "elapsed_ms"])?;
            w.write_record([
                report.query.kind.name().to_string(),
                report.query.method.name().to_string(),
                a.x.to_string(),
                report.value.to_string(),
                report.terms_evaluated.to_string(),
                format!("{:.3}", report.elapsed.as_secs_f64() * 1e3),
            ])?;
            w.flush()?;
        }
    }
    Ok(EXIT_OK)
}

fn cmd_verify(a: &VerifyArgs, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let mut config = VerifyConfig::new(
        a.max_x,
        a.pool.clone(),
        a.max_subset.unwrap_or(a.pool.len()),
    );
    if a.inject_fault {
        config.fault = Some(InjectedFault::SinglePrimeOffsetOffByOne);
    }
    let report = verify_all(&config);
    let mismatches: Vec<Value> = report
        .mismatches
        .iter()
        .map(|m| {
            json!({
                "query": m.query,
                "fast_value": m.fast_value,
                "oracle_value": m.oracle_value,
            })
        })
        .collect();
    match a.format {
        Format::Json => {
            let mut params = Params::default();
            params.value("max-x", a.max_x);
            params.value("pool", a.pool.to_list_string());
            params.value("max-subset", config.max_subset);
            params.value("format", "json");
            params.flag("inject-fault", a.inject_fault);
            let result = json!({
                "cases_run": report.cases_run.to_string(),
                "mismatches": mismatches,
                "passed": report.passed(),
            });
            write_json(out, &envelope("verify", params, result, start))?;
        }
        Format::Csv | Format::Table => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["query", "fast_value", "oracle_value"])?;
            for m in &report.mismatches {
                w.write_record([&m.query, &m.fast_value, &m.oracle_value])?;
            }
            w.flush()?;
        }
    }
    Ok(if report.passed() {
        EXIT_OK
    } else {
        EXIT_MISMATCH
    })
}

struct BenchRow {
    prime_set: PrimeSet,
    method: Method,
    value: u128,
    terms: u128,
    elapsed_ms: f64,
}

fn cmd_bench(a: &BenchArgs, guards: &Guards, out: &mut dyn Write) -> Result<i32, Failure> {
    let start = Instant::now();
    let kind = CountKind::from(a.kind);
    if !matches!(kind, CountKind::Twin | CountKind::Coprime) {
        return Err(usage("bench supports --kind twin or coprime"));
    }
    let mut rows = Vec::new();
    let mut disagreements = Vec::new();
    for k in 1..=a.pool.len() {
        let prefix = PrimeSet::new(a.pool.iter().take(k)).expect("subset of a valid set");
        let mut values = Vec::new();
        for &m in &a.methods {
            let query = build_query(
                kind,
                m,
                &PrimeSelection {
                    primes: Some(prefix.clone()),
                    first_n: None,
                },
                a.x,
            )?;
            let report = counting::count(&query, guards)?;
            values.push(report.value);
            rows.push(BenchRow {
                prime_set: prefix.clone(),
                method: report.query.method,
                value: report.value,
                terms: report.terms_evaluated,
                elapsed_ms: report.elapsed.as_secs_f64() * 1e3,
            });
        }
        if values.windows(2).any(|w| w[0] != w[1]) {
            disagreements.push(prefix);
        }
    }

    match a.format {
        Format::Table => {
            writeln!(
                out,
                "{:<24} {:>8} {:>40} {:>12} {:>12}",
                "primes", "method", "value", "terms", "ms"
            )?;
            for r in &rows {
                writeln!(
                    out,
                    "{:<24} {:>8} {:>40} {:>12} {:>12.3}",
                    r.prime_set.to_string(),
                    r.method.name(),
                    r.value,
                    r.terms,
                    r.elapsed_ms
                )?;
            }
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(&mut *out);
            w.write_record(["primes", "method", "value", "terms_evaluated", "elapsed_ms"])?;
            for r in &rows {
                w.write_record([
                    r.prime_set.to_list_string(),
                    r.method.name().to_string(),
                    r.value.to_string(),
                    r.terms.to_string(),
                    format!("{:.3}", r.elapsed_ms),
                ])?;
            }
            w.flush()?;
        }
        Format::Json => {
            let mut params = Params::default();
            params.value("kind", kind);
            params.value("pool", a.pool.to_list_string());
            params.value("x", a.x);
            params.value(
                "methods",
                a.methods
                    .iter()
                    .map(|m| m.to_possible_value().expect("visible").get_name().to_string())
                    .collect::<Vec<_>>()
                    .join(","),
            );
            params.value("format", "json");
            let result = json!({
                "rows": rows.iter().map(|r| json!({
                    "prime_set": strings(r.prime_set.iter()),
                    "method": r.method.name(),
                    "value": r.value.to_string(),
                    "terms_evaluated": r.terms.to_string(),
                    "elapsed_ms": r.elapsed_ms,
                })).collect::<Vec<_>>(),
                "agree": disagreements.is_empty(),
            });
            write_json(out, &envelope("bench", params, result, start))?;
        }
    }
    if disagreements.is_empty() {
        Ok(EXIT_OK)
    } else {
        Err(Failure {
            code: EXIT_MISMATCH,
            message: format!(
                "methods disagree for {}",
                disagreements
                    .iter()
                    .map(PrimeSet::to_string)
                    .collect::<Vec<_>>()
                    .join(", ")
            ),
        })
    }
}
