//! Negacyclic codes of length `n` over F_q: ideals of F_q[x]/(x^n + 1), each
//! generated by a unique monic divisor of `x^n + 1`.

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::factorizer::{self, decompose, factor_xn_plus_1};
use crate::gf::FieldSpec;
use crate::nt;
use crate::poly::Poly;

/// Enumeration refuses families larger than this unless a cap is given.
pub const ENUMERATION_HARD_LIMIT: u64 = 1_000_000;

/// Length exponent `k` from which code counts stop depending on `i`:
/// `λ + β - 1` when `λ = 0` and `q ≡ 3 (mod 4)`, else `λ + β - 2`.
pub fn code_count_threshold(q: u64, n_prime: u64) -> Result<u32> {
    factorizer::stable_threshold(q, n_prime)
}

fn characteristic_of(q: u64) -> Result<u64> {
    if q.is_multiple_of(2) {
        return Err(Error::EvenCharacteristicTarget);
    }
    nt::prime_power(q).map(|(p, _)| p).ok_or(Error::NotPrime(q))
}

/// `(p^s + 1)^{N_q(2^k n')}` for `n = p^s 2^i n'` with `i >= k`.
pub fn count_codes(q: u64, n: u64) -> Result<BigUint> {
    let p = characteristic_of(q)?;
    if n == 0 {
        return Err(Error::InvalidArgument("n must be positive".into()));
    }
    let (s, i, n_prime) = decompose(n, q);
    let k = code_count_threshold(q, n_prime)?;
    if i < k {
        return Err(Error::BelowThreshold { i, k });
    }
    let base = factorizer::count_factors_sum(q, (1u64 << k) * n_prime)?;
    Ok(BigUint::from(p.pow(s) + 1).pow(base as u32))
}

/// `(p^s + 1)^{N_q(2^i n')}`, valid for every length.
pub fn count_codes_direct(q: u64, n: u64) -> Result<BigUint> {
    let p = characteristic_of(q)?;
    let distinct = factorizer::count_factors_sum(q, n)?;
    let (s, _, _) = decompose(n, q);
    Ok(BigUint::from(p.pow(s) + 1).pow(distinct as u32))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct NegacyclicCode {
    pub field: FieldSpec,
    pub n: u64,
    pub generator: Poly,
    pub dimension: u64,
}

impl NegacyclicCode {
    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "generator": self.generator.to_json(), "dimension": self.dimension })
    }
}

/// Parameters shared by all codes of one length.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CodeFamily {
    pub q: u64,
    pub n: u64,
    pub k: u32,
    /// `p^s 2^k n'`.
    pub base_length: u64,
    pub count: BigUint,
    /// The length lies below `k`, outside the range where the count is `i`-independent.
    pub below_threshold: bool,
}

impl CodeFamily {
    pub fn new(q: u64, n: u64) -> Result<CodeFamily> {
        let p = characteristic_of(q)?;
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let (s, i, n_prime) = decompose(n, q);
        let k = code_count_threshold(q, n_prime)?;
        Ok(CodeFamily {
            q,
            n,
            k,
            base_length: p.pow(s) * (1u64 << k) * n_prime,
            count: count_codes_direct(q, n)?,
            below_threshold: i < k,
        })
    }

    pub fn header_json(&self, truncated: bool) -> Value {
        json!({
            "q": self.q,
            "n": self.n,
            "k": self.k,
            "base_length": self.base_length,
            "count": self.count.to_string(),
            "below_threshold": self.below_threshold,
            "truncated": truncated,
        })
    }
}

/// Streams every negacyclic code of length `n`: generators `prod f_j^{e_j}` with
/// `0 <= e_j <= p^s` over the canonically sorted distinct factors `f_j`, exponent
/// vectors in mixed-radix order with `e_0` as the least significant digit.
pub struct CodeEnumeration {
    field: FieldSpec,
    n: u64,
    factors: Vec<Poly>,
    radix: u64,
    digits: Vec<u64>,
    cap: Option<u64>,
    emitted: u64,
    done: bool,
    truncated: bool,
}

impl CodeEnumeration {
    /// True once the stream stopped at the cap with codes left over.
    pub fn truncated(&self) -> bool {
        self.truncated
    }

    pub fn emitted(&self) -> u64 {
        self.emitted
    }

    fn current(&self) -> NegacyclicCode {
        let mut g = Poly::one(&self.field);
        for (f, &e) in self.factors.iter().zip(&self.digits) {
            if e > 0 {
                g = &g * &f.pow(e);
            }
        }
        let deg = g.degree().unwrap_or(0) as u64;
        NegacyclicCode {
            field: self.field.clone(),
            n: self.n,
            generator: g,
            dimension: self.n - deg,
        }
    }

    fn advance(&mut self) {
        for d in self.digits.iter_mut() {
            *d += 1;
            if *d < self.radix {
                return;
            }
            *d = 0;
        }
        self.done = true;
    }
}

impl Iterator for CodeEnumeration {
    type Item = NegacyclicCode;

    fn next(&mut self) -> Option<NegacyclicCode> {
        if self.done {
            return None;
        }
        if self.cap.is_some_and(|c| self.emitted >= c) {
            self.truncated = true;
            self.done = true;
            return None;
        }
        let code = self.current();
        self.emitted += 1;
        self.advance();
        Some(code)
    }
}

pub fn enumerate_codes(field: &FieldSpec, n: u64, cap: Option<u64>) -> Result<CodeEnumeration> {
    if cap == Some(0) {
        return Err(Error::InvalidArgument("cap must be at least 1".into()));
    }
    let report = factor_xn_plus_1(field, n, true)?;
    let p = field.characteristic();
    let radix = p.pow(report.profile.s) + 1;
    let factors: Vec<Poly> = report.factors.factors.into_iter().map(|(f, _)| f).collect();
    if cap.is_none() {
        let total = BigUint::from(radix).pow(factors.len() as u32);
        if total > BigUint::from(ENUMERATION_HARD_LIMIT) {
            return Err(Error::CapabilityExceeded(format!(
                "{total} codes exceed the enumeration limit {ENUMERATION_HARD_LIMIT}; pass a cap"
            )));
        }
    }
    let digits = vec![0; factors.len()];
    Ok(CodeEnumeration {
        field: field.clone(),
        n,
        factors,
        radix,
        digits,
        cap,
        emitted: 0,
        done: false,
        truncated: false,
    })
}

/// Maps a generator of length `p^s 2^k n'` to the corresponding generator
/// `g(x^{2^{i-k}})` of length `p^s 2^i n'`.
pub fn lift_generator(g: &Poly, n_from: u64, n_to: u64) -> Result<Poly> {
    let q = g.field().order_u64().ok_or_else(|| {
        Error::CapabilityExceeded(format!("field order {} exceeds 2^64", g.field().order()))
    })?;
    if n_from == 0 || n_to == 0 {
        return Err(Error::IncompatibleLengths {
            from: n_from,
            to: n_to,
        });
    }
    let (s1, k, m1) = decompose(n_from, q);
    let (s2, i, m2) = decompose(n_to, q);
    if s1 != s2 || m1 != m2 || i < k {
        return Err(Error::IncompatibleLengths {
            from: n_from,
            to: n_to,
        });
    }
    if !g.divides(&Poly::x_pow_plus_one(g.field(), n_from as usize)) {
        return Err(Error::NotADivisor { n: n_from });
    }
    Ok(g.substitute_power(1usize << (i - k)))
}
