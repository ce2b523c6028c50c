//! Factorization of `x^n + 1` over F_q by case analysis on `n = p^s 2^i n'`.
//!
//! The distinct irreducible factors of `x^{2^i n'} + 1` are the minimal
//! polynomials of the odd cyclotomic cosets modulo `2^{i+1} n'`. Depending on
//! `β = v2(q^2 - 1)`, `λ = v2(ord_{n'}(q))` and `q mod 4`, they are computed
//! directly, by splitting each coset of the previous level in two, or by the
//! substitution `x -> x^{2^j}` applied to the factors of a smaller base case.

use std::fmt;

use serde_json::{json, Value};

use crate::cosets::{self, representative_sets};
use crate::error::{Error, Result};
use crate::gf::FieldSpec;
use crate::nt;
use crate::poly::{self, minimal_polynomial, FactorMultiset, Poly};

/// Writes `n = p^s 2^i n'` with `n'` odd and coprime to `p`; returns `(s, i, n')`.
pub fn decompose(n: u64, q: u64) -> (u32, u32, u64) {
    assert!(n >= 1, "n must be positive");
    let (p, _) = nt::prime_power(q).expect("q must be a prime power");
    let s = nt::p_adic(n, p);
    let rest = n / p.pow(s);
    let i = nt::two_adic(rest);
    (s, i, rest >> i)
}

/// Leaf of the case tree that decides how the factors are produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Branch {
    /// λ = 0, q ≡ 1 (mod 4), i = 0.
    OddOrderQ1Base,
    /// λ = 0, q ≡ 1 (mod 4), 1 ≤ i ≤ β - 2.
    OddOrderQ1Split,
    /// λ = 0, q ≡ 1 (mod 4), i ≥ β - 1.
    OddOrderQ1Stable,
    /// λ = 0, q ≡ 3 (mod 4), i ≤ 1.
    OddOrderQ3Base,
    /// λ = 0, q ≡ 3 (mod 4), 2 ≤ i ≤ β - 1.
    OddOrderQ3Split,
    /// λ = 0, q ≡ 3 (mod 4), i ≥ β.
    OddOrderQ3Stable,
    /// λ ≥ 1, i ≤ λ + β - 2.
    EvenOrderDirect,
    /// λ ≥ 1, i ≥ λ + β - 1.
    EvenOrderStable,
}

impl Branch {
    /// Short case label.
    pub fn label(self) -> &'static str {
        match self {
            Branch::OddOrderQ1Base => "I.i.a",
            Branch::OddOrderQ1Split => "I.i.b",
            Branch::OddOrderQ1Stable => "I.i.c",
            Branch::OddOrderQ3Base => "I.ii.a",
            Branch::OddOrderQ3Split => "I.ii.b",
            Branch::OddOrderQ3Stable => "I.ii.c",
            Branch::EvenOrderDirect => "II.i",
            Branch::EvenOrderStable => "II.ii",
        }
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CaseProfile {
    pub q: u64,
    pub n_prime: u64,
    pub i: u32,
    pub s: u32,
    pub beta: u32,
    pub lambda: u32,
    /// `q mod 4`, either 1 or 3.
    pub residue: u64,
    pub branch: Branch,
}

impl CaseProfile {
    /// Odd-part length `2^i n'`.
    pub fn reduced_length(&self) -> u64 {
        (1u64 << self.i) * self.n_prime
    }
}

pub fn profile(q: u64, n_prime: u64, i: u32, s: u32) -> Result<CaseProfile> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    if n_prime.is_multiple_of(2) {
        return Err(Error::InvalidArgument(format!(
            "n' = {n_prime} must be odd"
        )));
    }
    let (beta, lambda) = cosets::beta_lambda(q, n_prime)?;
    let residue = q % 4;
    let branch = if lambda >= 1 {
        if i + 2 <= lambda + beta {
            Branch::EvenOrderDirect
        } else {
            Branch::EvenOrderStable
        }
    } else if residue == 1 {
        match i {
            0 => Branch::OddOrderQ1Base,
            _ if i + 2 <= beta => Branch::OddOrderQ1Split,
            _ => Branch::OddOrderQ1Stable,
        }
    } else {
        match i {
            0 | 1 => Branch::OddOrderQ3Base,
            _ if i < beta => Branch::OddOrderQ3Split,
            _ => Branch::OddOrderQ3Stable,
        }
    };
    Ok(CaseProfile {
        q,
        n_prime,
        i,
        s,
        beta,
        lambda,
        residue,
        branch,
    })
}

/// Profile of `x^n + 1` over F_q.
pub fn profile_for_length(q: u64, n: u64) -> Result<CaseProfile> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    if nt::prime_power(q).is_none() {
        return Err(Error::NotPrime(q));
    }
    let (s, i, n_prime) = decompose(n, q);
    profile(q, n_prime, i, s)
}

/// `ord_{2^i}(q)` from its closed form in terms of `β` and `q mod 4`.
pub fn ord_two_power(q: u64, i: u32) -> u64 {
    assert!(q % 2 == 1 && i >= 1);
    let beta = (q as u128 * q as u128 - 1).trailing_zeros();
    if q % 4 == 3 {
        match i {
            1 => 1,
            _ if i <= beta => 2,
            _ => 1 << (i - beta + 1),
        }
    } else if i < beta {
        1
    } else {
        1 << (i - beta + 1)
    }
}

/// `N_q(2^i n') = sum_{d | n'} φ(2^{i+1} d) / ord_{2^{i+1} d}(q)`, the number of
/// distinct irreducible factors of `x^n + 1` (any `p`-part of `n` is ignored).
pub fn count_factors_sum(q: u64, n: u64) -> Result<u64> {
    let pr = profile_for_length(q, n)?;
    divisor_sum(q, pr.n_prime, pr.i)
}

fn divisor_sum(q: u64, n_prime: u64, i: u32) -> Result<u64> {
    let two = 1u64 << (i + 1);
    nt::divisors(n_prime)
        .into_iter()
        .map(|d| {
            let m = two * d;
            Ok(nt::euler_phi(m) / cosets::mult_order_mod(m, q)?)
        })
        .sum()
}

/// `N_q(2^i n')` through the consolidated case table, touching the divisor sum
/// only for a base value.
pub fn count_factors_fast(pr: &CaseProfile) -> Result<u64> {
    let (q, np, i, beta, lambda) = (pr.q, pr.n_prime, pr.i, pr.beta, pr.lambda);
    if lambda >= 1 {
        return if i + 1 >= lambda + beta {
            divisor_sum(q, np, lambda + beta - 2)
        } else {
            divisor_sum(q, np, i)
        };
    }
    let base = divisor_sum(q, np, 0)?;
    Ok(if pr.residue == 1 {
        match i {
            0 => base,
            _ if i + 2 <= beta => base << i,
            _ => base << (beta - 2),
        }
    } else {
        match i {
            0 | 1 => base,
            _ if i < beta => base << (i - 1),
            _ => base << (beta - 2),
        }
    })
}

/// Least `k` with `N_q(2^i n')` constant for all `i >= k`.
pub fn stable_threshold(q: u64, n_prime: u64) -> Result<u32> {
    let (beta, lambda) = cosets::beta_lambda(q, n_prime)?;
    Ok(if lambda == 0 && q % 4 == 3 {
        lambda + beta - 1
    } else {
        lambda + beta - 2
    })
}

/// How the factor list was produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Method {
    Direct,
    RecursiveSubstitution,
    SplitEnumeration,
}

impl Method {
    pub fn as_str(self) -> &'static str {
        match self {
            Method::Direct => "direct",
            Method::RecursiveSubstitution => "recursive-substitution",
            Method::SplitEnumeration => "split-enumeration",
        }
    }
}

#[derive(Debug, Clone)]
pub struct FactorizationReport {
    pub n: u64,
    pub q: u64,
    pub profile: CaseProfile,
    pub factors: FactorMultiset,
    /// Number of distinct irreducible factors.
    pub count: u64,
    pub method: Method,
}

impl FactorizationReport {
    pub fn to_json(&self) -> Value {
        let pr = &self.profile;
        let factors: Vec<Value> = self
            .factors
            .factors
            .iter()
            .map(|(f, e)| json!({ "poly": f.to_json(), "mult": e }))
            .collect();
        json!({
            "q": self.q,
            "n": self.n,
            "s": pr.s,
            "i": pr.i,
            "nprime": pr.n_prime,
            "beta": pr.beta,
            "lambda": pr.lambda,
            "branch": pr.branch.label(),
            "method": self.method.as_str(),
            "count": self.count,
            "factors": factors,
        })
    }

    pub fn to_text(&self) -> String {
        let pr = &self.profile;
        let mut out = format!(
            "x^{} + 1 over F_{}: n = {}^{} * 2^{} * {}, beta = {}, lambda = {}, branch {} ({})\n{} distinct irreducible factors\n",
            self.n,
            self.q,
            nt::prime_power(self.q).map_or(self.q, |(p, _)| p),
            pr.s,
            pr.i,
            pr.n_prime,
            pr.beta,
            pr.lambda,
            pr.branch.label(),
            self.method.as_str(),
            self.count
        );
        for (f, e) in &self.factors.factors {
            if *e == 1 {
                out.push_str(&format!("{f}\n"));
            } else {
                out.push_str(&format!("({f})^{e}\n"));
            }
        }
        out
    }
}

/// Minimal polynomials of the odd cosets modulo `modulus`.
fn odd_coset_factors(field: &FieldSpec, q: u64, modulus: u64) -> Result<Vec<Poly>> {
    let sets = representative_sets(q, modulus)?;
    sets.odd_cosets()
        .map(|c| minimal_polynomial(field, modulus, c))
        .collect()
}

/// Factors `g_a`, `g_{a + 2^i n'}` for every odd representative `a` modulo `2^i n'`.
fn split_factors(field: &FieldSpec, q: u64, half: u64) -> Result<Vec<Poly>> {
    let modulus = 2 * half;
    let lower = representative_sets(q, half)?;
    let upper = representative_sets(q, modulus)?;
    let mut lifted: Vec<u64> = lower.odd.iter().flat_map(|&a| [a, a + half]).collect();
    lifted.sort_unstable();
    // the lifted set must meet every odd coset modulo 2^{i+1} n' exactly once
    let hits_once = upper
        .odd_cosets()
        .all(|c| lifted.iter().filter(|&&a| c.contains(a)).count() == 1);
    if lifted.len() != upper.odd.len() || !hits_once {
        return Err(Error::InternalVerificationFailure(format!(
            "odd representatives modulo {half} do not split into representatives modulo {modulus}"
        )));
    }
    lifted
        .into_iter()
        .map(|a| minimal_polynomial(field, modulus, &cosets::coset(q, modulus, a)?))
        .collect()
}

/// Factors `x^n + 1` over `field`. With `verify`, the product and the
/// irreducibility of every factor are checked before returning.
pub fn factor_xn_plus_1(field: &FieldSpec, n: u64, verify: bool) -> Result<FactorizationReport> {
    let q = field.order_u64().ok_or_else(|| {
        Error::CapabilityExceeded(format!("field order {} exceeds 2^64", field.order()))
    })?;
    let pr = profile_for_length(q, n)?;
    let (np, i, beta, lambda) = (pr.n_prime, pr.i, pr.beta, pr.lambda);
    let target = 2 * pr.reduced_length();
    let substituted = |base_modulus: u64| -> Result<Vec<Poly>> {
        let e = (target / base_modulus) as usize;
        Ok(odd_coset_factors(field, q, base_modulus)?
            .into_iter()
            .map(|f| f.substitute_power(e))
            .collect())
    };
    let (distinct, method) = match pr.branch {
        Branch::OddOrderQ1Base | Branch::EvenOrderDirect => {
            (odd_coset_factors(field, q, target)?, Method::Direct)
        }
        Branch::OddOrderQ3Base if i == 0 => (odd_coset_factors(field, q, target)?, Method::Direct),
        Branch::OddOrderQ3Base => (substituted(2 * np)?, Method::RecursiveSubstitution),
        Branch::OddOrderQ1Split | Branch::OddOrderQ3Split => (
            split_factors(field, q, pr.reduced_length())?,
            Method::SplitEnumeration,
        ),
        Branch::OddOrderQ1Stable => (
            substituted((1u64 << (beta - 1)) * np)?,
            Method::RecursiveSubstitution,
        ),
        Branch::OddOrderQ3Stable => (
            substituted((1u64 << beta) * np)?,
            Method::RecursiveSubstitution,
        ),
        Branch::EvenOrderStable => (
            substituted((1u64 << (lambda + beta)) * np)?,
            Method::RecursiveSubstitution,
        ),
    };
    let p = field.characteristic();
    let mult = p.pow(pr.s);
    let mut factors: Vec<(Poly, u64)> = distinct.into_iter().map(|f| (f, mult)).collect();
    factors.sort();
    let count = factors.len() as u64;
    let report = FactorizationReport {
        n,
        q,
        profile: pr,
        factors: FactorMultiset {
            factors,
            leading: field.one(),
        },
        count,
        method,
    };
    if verify {
        verify_report(field, &report)?;
    }
    Ok(report)
}

fn verify_report(field: &FieldSpec, report: &FactorizationReport) -> Result<()> {
    let fs = &report.factors.factors;
    if fs.windows(2).any(|w| w[0].0 == w[1].0) {
        return Err(Error::InternalVerificationFailure("repeated factor".into()));
    }
    let mult = fs.first().map_or(1, |(_, e)| *e);
    // (prod f)^(p^s) = x^n + 1 is checked as prod f = x^{n/p^s} + 1
    let reduced = poly::product(field, fs.iter().map(|(f, _)| (f, 1)));
    if reduced != Poly::x_pow_plus_one(field, (report.n / mult) as usize) {
        return Err(Error::InternalVerificationFailure(format!(
            "product of factors differs from x^{} + 1",
            report.n
        )));
    }
    if let Some((f, _)) = fs.iter().find(|(f, _)| !f.is_irreducible()) {
        return Err(Error::InternalVerificationFailure(format!(
            "factor {f} is reducible"
        )));
    }
    Ok(())
}
