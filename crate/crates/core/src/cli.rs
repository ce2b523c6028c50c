//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage error, 3 library error.
//! Library errors are written to stderr as one JSON object.

use std::io::{self, Write};

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::cosets::representative_sets;
use crate::error::{Error, Result};
use crate::factorizer::{
    count_factors_fast, count_factors_sum, factor_xn_plus_1, profile, profile_for_length,
    stable_threshold,
};
use crate::gf::FieldSpec;
use crate::negacyclic::{enumerate_codes, CodeFamily};
use crate::nt;
use crate::poly::{factor_generic, Poly, DEFAULT_SEED};

pub const EXIT_MISMATCH: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_LIBRARY: i32 = 3;

/// Environment variable overriding the default oracle seed.
pub const SEED_ENV: &str = "NEGAFACTOR_SEED";

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Text,
    Json,
    Csv,
}

#[derive(Debug, Parser)]
#[command(
    name = "negafactor",
    version,
    about = "Factor x^n + 1 over odd-characteristic finite fields and count negacyclic codes"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,

    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = OutputFormat::Text)]
    pub format: OutputFormat,

    /// Seed for the randomized generic factorizer (overrides NEGAFACTOR_SEED).
    #[arg(long, global = true)]
    pub seed: Option<u64>,

    /// Skip the product and irreducibility checks on computed factorizations.
    #[arg(long, global = true)]
    pub no_verify: bool,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Factor x^n + 1 over F_q.
    Factor {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Count the distinct irreducible factors of x^n + 1, or print a count table.
    Count(CountArgs),
    /// List the q-cyclotomic cosets modulo n.
    Cosets {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        n: u64,
    },
    /// Enumerate negacyclic codes of length n over F_q.
    Codes {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long)]
        n: u64,
        /// Stop after this many codes.
        #[arg(long)]
        cap: Option<u64>,
    },
    /// Compare the recursive factorization with the generic factorizer for n = 1..=nmax.
    Verify {
        #[arg(long, value_parser = parse_q)]
        q: u64,
        #[arg(long, default_value_t = 60)]
        nmax: u64,
    },
}

#[derive(Debug, Args)]
pub struct CountArgs {
    #[arg(long, value_parser = parse_q, required_unless_present = "table")]
    pub q: Option<u64>,
    #[arg(long, conflicts_with_all = ["n_prime", "i", "s", "table"])]
    pub n: Option<u64>,
    #[arg(long = "n-prime", requires = "i")]
    pub n_prime: Option<u64>,
    #[arg(long, requires = "n_prime")]
    pub i: Option<u32>,
    #[arg(long, requires = "n_prime", default_value_t = 0)]
    pub s: u32,
    /// Print a reference count table (1: odd ord_{n'}(q), 2: even ord_{n'}(q)).
    #[arg(long, value_parser = clap::value_parser!(u8).range(1..=2), conflicts_with = "q")]
    pub table: Option<u8>,
}

/// Accepts `p`, `p^m`, or any integer (prime-power structure is checked later).
pub fn parse_q(s: &str) -> std::result::Result<u64, String> {
    let s = s.trim();
    match s.split_once('^') {
        Some((p, m)) => {
            let p: u64 = p
                .trim()
                .parse()
                .map_err(|e| format!("bad base in {s:?}: {e}"))?;
            let m: u32 = m
                .trim()
                .parse()
                .map_err(|e| format!("bad exponent in {s:?}: {e}"))?;
            p.checked_pow(m)
                .ok_or_else(|| format!("{s} overflows 64 bits"))
        }
        None => s.parse().map_err(|e| format!("bad field order {s:?}: {e}")),
    }
}

/// Field of order `q`; even orders are rejected before anything else.
fn field_for(q: u64) -> Result<FieldSpec> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    FieldSpec::from_order(q)
}

fn oracle_seed(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(SEED_ENV).ok()?.trim().parse().ok())
        .unwrap_or(DEFAULT_SEED)
}

pub fn error_json(e: &Error) -> Value {
    json!({ "error": e.kind(), "message": e.to_string() })
}

/// Parses `args`, runs the command and returns the process exit code.
pub fn run<I, T>(args: I, out: &mut impl Write, err: &mut impl Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { 0 };
            let rendered = e.render().to_string();
            if code == 0 {
                let _ = write!(out, "{rendered}");
            } else {
                let _ = write!(err, "{rendered}");
            }
            return code;
        }
    };
    match execute(&cli, out) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(err, "{}", error_json(&e));
            EXIT_LIBRARY
        }
    }
}

fn io_err(e: io::Error) -> Error {
    Error::InvalidArgument(format!("write failed: {e}"))
}

pub fn execute(cli: &Cli, out: &mut impl Write) -> Result<i32> {
    match &cli.command {
        Command::Factor { q, n } => cmd_factor(cli, *q, *n, out),
        Command::Count(args) => cmd_count(cli, args, out),
        Command::Cosets { q, n } => cmd_cosets(cli, *q, *n, out),
        Command::Codes { q, n, cap } => cmd_codes(cli, *q, *n, *cap, out),
        Command::Verify { q, nmax } => cmd_verify(cli, *q, *nmax, out),
    }
}

fn cmd_factor(cli: &Cli, q: u64, n: u64, out: &mut impl Write) -> Result<i32> {
    let field = field_for(q)?;
    let report = factor_xn_plus_1(&field, n, !cli.no_verify)?;
    match cli.format {
        OutputFormat::Text => write!(out, "{}", report.to_text()),
        OutputFormat::Json => writeln!(out, "{}", report.to_json()),
        OutputFormat::Csv => {
            let mut s = String::from("degree,mult,poly\n");
            for (f, e) in &report.factors.factors {
                s.push_str(&format!("{},{},{}\n", f.degree().unwrap_or(0), e, f));
            }
            write!(out, "{s}")
        }
    }
    .map_err(io_err)?;
    Ok(0)
}

/// One printed line of a count table; `at_least` marks the constant tail row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub q: u64,
    pub n_prime: u64,
    pub ord: u64,
    pub lambda: u32,
    pub beta: u32,
    pub i: u32,
    pub at_least: bool,
    pub count: u64,
}

impl TableRow {
    pub fn i_label(&self) -> String {
        if self.at_least {
            format!("≥{}", self.i)
        } else {
            self.i.to_string()
        }
    }

    pub fn csv_line(&self) -> String {
        format!(
            "{},{},{},{},{},{},{}",
            self.q,
            self.n_prime,
            self.ord,
            self.lambda,
            self.beta,
            self.i_label(),
            self.count
        )
    }
}

/// `(q, n')` pairs of the odd-order table.
pub const TABLE_ODD_ORDER: [(u64, u64); 12] = [
    (3, 1),
    (3, 11),
    (3, 13),
    (5, 1),
    (5, 11),
    (7, 1),
    (7, 3),
    (7, 9),
    (9, 1),
    (9, 7),
    (9, 11),
    (9, 13),
];

/// `(q, n')` pairs of the even-order table.
pub const TABLE_EVEN_ORDER: [(u64, u64); 11] = [
    (3, 5),
    (3, 7),
    (5, 3),
    (5, 7),
    (5, 9),
    (5, 13),
    (7, 5),
    (7, 11),
    (7, 13),
    (7, 15),
    (9, 5),
];

/// How many indices past the threshold are checked for constancy.
pub const CONSTANCY_WINDOW: u32 = 3;

/// Rows for `(q, n')`: `i = 0, ..., k-1` and a final `i >= k` row, where `k` is
/// the stable threshold. The tail value is checked to stay constant for
/// `k..=k+3`, and every value is computed both by the divisor sum and the case table.
pub fn count_rows(q: u64, n_prime: u64) -> Result<Vec<TableRow>> {
    let k = stable_threshold(q, n_prime)?;
    let ord = crate::cosets::mult_order_mod(n_prime, q)?;
    let mut rows = Vec::new();
    let mut tail = None;
    for i in 0..=k + CONSTANCY_WINDOW {
        let pr = profile(q, n_prime, i, 0)?;
        let fast = count_factors_fast(&pr)?;
        let sum = count_factors_sum(q, pr.reduced_length())?;
        if fast != sum {
            return Err(Error::InternalVerificationFailure(format!(
                "q={q} n'={n_prime} i={i}: case table gives {fast}, divisor sum gives {sum}"
            )));
        }
        if i < k {
            rows.push(TableRow {
                q,
                n_prime,
                ord,
                lambda: pr.lambda,
                beta: pr.beta,
                i,
                at_least: false,
                count: sum,
            });
            continue;
        }
        match tail {
            None => {
                tail = Some(sum);
                rows.push(TableRow {
                    q,
                    n_prime,
                    ord,
                    lambda: pr.lambda,
                    beta: pr.beta,
                    i,
                    at_least: true,
                    count: sum,
                });
            }
            Some(t) if t != sum => {
                return Err(Error::InternalVerificationFailure(format!(
                    "q={q} n'={n_prime}: count {sum} at i={i} differs from {t} at i={k}"
                )));
            }
            Some(_) => {}
        }
    }
    Ok(rows)
}

pub fn table(which: u8) -> Result<Vec<TableRow>> {
    let pairs: &[(u64, u64)] = match which {
        1 => &TABLE_ODD_ORDER,
        2 => &TABLE_EVEN_ORDER,
        _ => return Err(Error::InvalidArgument(format!("no table {which}"))),
    };
    let mut rows = Vec::new();
    for &(q, n_prime) in pairs {
        rows.extend(count_rows(q, n_prime)?);
    }
    Ok(rows)
}

pub const TABLE_CSV_HEADER: &str = "q,nprime,ord,lambda,beta,i,count";

pub fn table_csv(rows: &[TableRow]) -> String {
    let mut s = format!("{TABLE_CSV_HEADER}\n");
    for r in rows {
        s.push_str(&r.csv_line());
        s.push('\n');
    }
    s
}

fn cmd_count(cli: &Cli, args: &CountArgs, out: &mut impl Write) -> Result<i32> {
    if let Some(which) = args.table {
        let rows = table(which)?;
        let text = match cli.format {
            OutputFormat::Csv | OutputFormat::Text => table_csv(&rows),
            OutputFormat::Json => {
                let v: Vec<Value> = rows
                    .iter()
                    .map(|r| {
                        json!({
                            "q": r.q, "nprime": r.n_prime, "ord": r.ord, "lambda": r.lambda,
                            "beta": r.beta, "i": r.i, "at_least": r.at_least, "count": r.count,
                        })
                    })
                    .collect();
                format!("{}\n", Value::Array(v))
            }
        };
        write!(out, "{text}").map_err(io_err)?;
        return Ok(0);
    }
    let q = args.q.expect("clap enforces --q without --table");
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    let (p, _) = nt::prime_power(q).ok_or(Error::NotPrime(q))?;
    let pr = match (args.n, args.n_prime, args.i) {
        (Some(n), _, _) => profile_for_length(q, n)?,
        (None, Some(np), Some(i)) => {
            if nt::gcd(np, p) != 1 {
                return Err(Error::NotCoprime { a: q, b: np });
            }
            profile(q, np, i, args.s)?
        }
        _ => {
            return Err(Error::InvalidArgument(
                "give --n, or --n-prime with --i".into(),
            ))
        }
    };
    let n = p.pow(pr.s) * pr.reduced_length();
    let sum = count_factors_sum(q, n)?;
    let fast = count_factors_fast(&pr)?;
    if sum != fast {
        return Err(Error::InternalVerificationFailure(format!(
            "case table gives {fast}, divisor sum gives {sum}"
        )));
    }
    let text = match cli.format {
        OutputFormat::Text => format!("{sum}\n"),
        OutputFormat::Csv => format!(
            "q,n,s,i,nprime,beta,lambda,branch,count\n{q},{n},{},{},{},{},{},{},{sum}\n",
            pr.s,
            pr.i,
            pr.n_prime,
            pr.beta,
            pr.lambda,
            pr.branch.label()
        ),
        OutputFormat::Json => format!(
            "{}\n",
            json!({
                "q": q, "n": n, "s": pr.s, "i": pr.i, "nprime": pr.n_prime,
                "beta": pr.beta, "lambda": pr.lambda, "branch": pr.branch.label(), "count": sum,
            })
        ),
    };
    write!(out, "{text}").map_err(io_err)?;
    Ok(0)
}

fn cmd_cosets(cli: &Cli, q: u64, n: u64, out: &mut impl Write) -> Result<i32> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let sets = representative_sets(q, n)?;
    let text = match cli.format {
        OutputFormat::Json => {
            let mut v = sets.to_json();
            v["n"] = json!(n);
            v["q"] = json!(q);
            v["cosets"] = Value::Array(sets.cosets.iter().map(|c| c.to_json()).collect());
            format!("{v}\n")
        }
        OutputFormat::Csv => {
            let mut s = String::from("rep,size,elements\n");
            for c in &sets.cosets {
                let els: Vec<String> = c.elements.iter().map(u64::to_string).collect();
                s.push_str(&format!("{},{},{}\n", c.rep, c.len(), els.join(" ")));
            }
            s
        }
        OutputFormat::Text => {
            let mut s = format!(
                "{}-cyclotomic cosets modulo {n}: {}\n",
                q,
                sets.cosets.len()
            );
            for c in &sets.cosets {
                let els: Vec<String> = c.elements.iter().map(u64::to_string).collect();
                s.push_str(&format!("Cl({}) = {{{}}}\n", c.rep, els.join(", ")));
            }
            if n.is_multiple_of(2) {
                s.push_str(&format!(
                    "{} odd-representative cosets, {} even-representative cosets\n",
                    sets.odd.len(),
                    sets.even.len()
                ));
            }
            s
        }
    };
    write!(out, "{text}").map_err(io_err)?;
    Ok(0)
}

fn cmd_codes(cli: &Cli, q: u64, n: u64, cap: Option<u64>, out: &mut impl Write) -> Result<i32> {
    let field = field_for(q)?;
    let family = CodeFamily::new(q, n)?;
    let mut codes = enumerate_codes(&field, n, cap)?;
    match cli.format {
        OutputFormat::Json => {
            let list: Vec<Value> = codes.by_ref().map(|c| c.to_json()).collect();
            let v = json!({ "family": family.header_json(codes.truncated()), "codes": list });
            writeln!(out, "{v}").map_err(io_err)?;
        }
        OutputFormat::Csv => {
            writeln!(out, "n,dimension,generator").map_err(io_err)?;
            for c in codes.by_ref() {
                writeln!(out, "{},{},{}", c.n, c.dimension, c.generator).map_err(io_err)?;
            }
        }
        OutputFormat::Text => {
            writeln!(
                out,
                "negacyclic codes of length {n} over F_{q}: {} (k = {}{})",
                family.count,
                family.k,
                if family.below_threshold {
                    ", length below the stable range"
                } else {
                    ""
                }
            )
            .map_err(io_err)?;
            for c in codes.by_ref() {
                writeln!(out, "dim {}: {}", c.dimension, c.generator).map_err(io_err)?;
            }
            if codes.truncated() {
                writeln!(out, "truncated after {} codes", codes.emitted()).map_err(io_err)?;
            }
        }
    }
    Ok(0)
}

/// Outcome of comparing both factorization routes for one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyCell {
    pub n: u64,
    pub problems: Vec<String>,
}

/// Runs the recursive and generic factorizations of `x^n + 1` for `n = 1..=nmax`
/// and checks factor lists, the three factor counts, and coset parity.
pub fn verify_grid(q: u64, nmax: u64, seed: u64, check_each: bool) -> Result<Vec<VerifyCell>> {
    let field = field_for(q)?;
    (1..=nmax)
        .into_par_iter()
        .map(|n| {
            let mut problems = Vec::new();
            let report = factor_xn_plus_1(&field, n, check_each)?;
            let oracle = factor_generic(&Poly::x_pow_plus_one(&field, n as usize), seed)?;
            if report.factors.factors != oracle.factors {
                problems.push("factor lists differ".to_string());
            }
            let sum = count_factors_sum(q, n)?;
            let fast = count_factors_fast(&report.profile)?;
            if sum != fast || fast != report.count || oracle.factors.len() as u64 != sum {
                problems.push(format!(
                    "counts differ: sum {sum}, fast {fast}, recursive {}, generic {}",
                    report.count,
                    oracle.factors.len()
                ));
            }
            let modulus = 2 * report.profile.reduced_length();
            if !crate::cosets::check_parity_lemma(q, modulus) {
                problems.push(format!("mixed-parity coset modulo {modulus}"));
            }
            let pr = &report.profile;
            if pr.i >= 1 {
                if let Err(e) = crate::cosets::coset_split_structure(q, pr.n_prime, pr.i) {
                    problems.push(e.to_string());
                }
            }
            Ok(VerifyCell { n, problems })
        })
        .collect()
}

fn cmd_verify(cli: &Cli, q: u64, nmax: u64, out: &mut impl Write) -> Result<i32> {
    let seed = oracle_seed(cli.seed);
    let cells = verify_grid(q, nmax, seed, !cli.no_verify)?;
    let failures: Vec<&VerifyCell> = cells.iter().filter(|c| !c.problems.is_empty()).collect();
    let text = match cli.format {
        OutputFormat::Json => {
            let bad: Vec<Value> = failures
                .iter()
                .map(|c| json!({ "n": c.n, "problems": c.problems }))
                .collect();
            format!(
                "{}\n",
                json!({
                    "q": q, "nmax": nmax, "seed": seed, "checked": cells.len(),
                    "status": if failures.is_empty() { "PASS" } else { "FAIL" },
                    "failures": bad,
                })
            )
        }
        OutputFormat::Text | OutputFormat::Csv => {
            let mut s = String::new();
            for c in &failures {
                for p in &c.problems {
                    s.push_str(&format!("n={}: {p}\n", c.n));
                }
            }
            if failures.is_empty() {
                s.push_str(&format!("PASS ({} lengths, q = {q})\n", cells.len()));
            } else {
                s.push_str(&format!(
                    "FAIL ({} of {} lengths, q = {q})\n",
                    failures.len(),
                    cells.len()
                ));
            }
            s
        }
    };
    write!(out, "{text}").map_err(io_err)?;
    Ok(if failures.is_empty() {
        0
    } else {
        EXIT_MISMATCH
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn run_str(args: &[&str]) -> (i32, String, String) {
        let mut out = Vec::new();
        let mut err = Vec::new();
        let mut full = vec!["negafactor"];
        full.extend_from_slice(args);
        let code = run(full, &mut out, &mut err);
        (
            code,
            String::from_utf8(out).unwrap(),
            String::from_utf8(err).unwrap(),
        )
    }

    #[test]
    fn parse_q_forms() {
        assert_eq!(parse_q("9"), Ok(9));
        assert_eq!(parse_q("3^2"), Ok(9));
        assert!(parse_q("x").is_err());
        assert!(parse_q("3^").is_err());
    }

    #[test]
    fn exit_codes() {
        assert_eq!(run_str(&["factor", "--q", "3", "--n", "1"]).0, 0);
        let (code, _, err) = run_str(&["factor", "--q", "4", "--n", "2"]);
        assert_eq!(code, EXIT_LIBRARY);
        assert!(err.contains("even_characteristic"));
        assert_eq!(run_str(&["factor", "--q", "3"]).0, EXIT_USAGE);
        assert_eq!(run_str(&["count", "--table", "3"]).0, EXIT_USAGE);
    }

    #[test]
    fn count_single() {
        assert_eq!(
            run_str(&["count", "--q", "9", "--n-prime", "7", "--i", "1"]).1,
            "6\n"
        );
        assert_eq!(
            run_str(&["count", "--q", "7", "--n-prime", "5", "--i", "4"]).1,
            "20\n"
        );
        assert_eq!(run_str(&["count", "--q", "5", "--n", "22"]).1, "6\n");
    }

    #[test]
    fn seed_precedence() {
        assert_eq!(oracle_seed(Some(5)), 5);
    }
}
