//! Finite fields F_{p^m} of odd characteristic.
//!
//! A [`FieldSpec`] is a cheap, shareable handle (an `Arc`) to the field's
//! parameters. Elements are vectors of `m` residues mod `p`, the coefficients of
//! a polynomial in the generator `w` reduced by the field modulus. Low-level
//! arithmetic works on residue slices so that polynomial code can store
//! coefficients flat; [`FieldElement`] wraps a value together with its field for
//! the checked public surface.

mod embed;
pub(crate) mod fp;

use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigUint;
use num_traits::{ToPrimitive, Zero};

use crate::error::{Error, Result};
use crate::nt;

pub use embed::{embed, Embedding};

/// Largest supported characteristic (exclusive): residue products stay below 2^62.
pub const MAX_CHARACTERISTIC: u64 = 1 << 31;
/// Largest supported extension degree over the prime field.
pub const MAX_DEGREE: usize = 4096;

struct Inner {
    p: u64,
    m: usize,
    /// Monic, ascending, length `m + 1`.
    modulus: Vec<u64>,
    /// Nonzero terms of `w^m` rewritten in lower powers: `w^m = sum c_j w^j`.
    reduction: Vec<(usize, u64)>,
    order: BigUint,
    /// How many residue products may be summed in a `u64` before reducing.
    batch: usize,
    generator: OnceLock<Vec<u64>>,
}

/// Description of F_{p^m}: characteristic, degree and defining modulus.
#[derive(Clone)]
pub struct FieldSpec(Arc<Inner>);

impl PartialEq for FieldSpec {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for FieldSpec {}

impl Hash for FieldSpec {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for FieldSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}; modulus=[", self.0.p, self.0.m)?;
        for (k, c) in self.0.modulus.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{c}")?;
        }
        f.write_str("])")
    }
}

type FieldCache = Mutex<HashMap<(u64, usize), FieldSpec>>;

fn canonical_cache() -> &'static FieldCache {
    static CACHE: OnceLock<FieldCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

fn check_characteristic(p: u64) -> Result<()> {
    if p == 2 {
        return Err(Error::EvenCharacteristic);
    }
    if !nt::is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p >= MAX_CHARACTERISTIC {
        return Err(Error::CapabilityExceeded(format!(
            "characteristic {p} exceeds 2^31"
        )));
    }
    Ok(())
}

/// F_{p^m} with the canonical modulus: the lexicographically smallest monic
/// irreducible of degree `m` over F_p (constant term compared first). For
/// `m = 1` the modulus is `x` and arithmetic is plain arithmetic mod `p`.
///
/// Fields are interned, so repeated calls share one allocation.
pub fn make_field(p: u64, m: usize) -> Result<FieldSpec> {
    check_characteristic(p)?;
    if m == 0 {
        return Err(Error::InvalidArgument(
            "extension degree must be >= 1".into(),
        ));
    }
    if m > MAX_DEGREE {
        return Err(Error::CapabilityExceeded(format!(
            "extension degree {m} exceeds {MAX_DEGREE}"
        )));
    }
    if let Some(f) = canonical_cache().lock().unwrap().get(&(p, m)) {
        return Ok(f.clone());
    }
    // search outside the lock; a racing thread computes the same polynomial
    let modulus = fp::canonical_irreducible(p, m);
    let field = FieldSpec::build(p, modulus);
    let mut cache = canonical_cache().lock().unwrap();
    Ok(cache.entry((p, m)).or_insert(field).clone())
}

impl FieldSpec {
    /// Field of order `q`, which must be an odd prime power.
    pub fn from_order(q: u64) -> Result<FieldSpec> {
        let (p, m) = nt::prime_power(q).ok_or(Error::NotPrime(q))?;
        make_field(p, m as usize)
    }

    /// F_p[w]/(modulus) for a caller-chosen monic irreducible modulus.
    pub fn with_modulus(p: u64, modulus: Vec<u64>) -> Result<FieldSpec> {
        check_characteristic(p)?;
        let mut modulus: Vec<u64> = modulus.into_iter().map(|c| c % p).collect();
        fp::trim(&mut modulus);
        if modulus.len() < 2 || modulus.last() != Some(&1) {
            return Err(Error::InvalidArgument(
                "modulus must be monic of degree >= 1".into(),
            ));
        }
        if modulus.len() - 1 > MAX_DEGREE {
            return Err(Error::CapabilityExceeded("modulus degree too large".into()));
        }
        if !fp::is_irreducible(&modulus, p) {
            return Err(Error::InvalidArgument("modulus is reducible".into()));
        }
        Ok(FieldSpec::build(p, modulus))
    }

    fn build(p: u64, modulus: Vec<u64>) -> FieldSpec {
        let m = modulus.len() - 1;
        let reduction = modulus[..m]
            .iter()
            .enumerate()
            .filter(|(_, &c)| c != 0)
            .map(|(j, &c)| (j, (p - c) % p))
            .collect();
        let sq = (p - 1) * (p - 1);
        let batch = ((u64::MAX / sq.max(1)) as usize).max(1);
        FieldSpec(Arc::new(Inner {
            p,
            m,
            modulus,
            reduction,
            order: BigUint::from(p).pow(m as u32),
            batch,
            generator: OnceLock::new(),
        }))
    }

    pub fn characteristic(&self) -> u64 {
        self.0.p
    }

    /// Extension degree `m` over the prime field.
    pub fn degree(&self) -> usize {
        self.0.m
    }

    pub fn modulus(&self) -> &[u64] {
        &self.0.modulus
    }

    /// Field order `q = p^m`.
    pub fn order(&self) -> &BigUint {
        &self.0.order
    }

    /// Field order when it fits in a `u64`.
    pub fn order_u64(&self) -> Option<u64> {
        self.0.order.to_u64()
    }

    pub fn is_prime_field(&self) -> bool {
        self.0.m == 1
    }

    // ---- raw residue-vector arithmetic ----

    pub fn zero(&self) -> Vec<u64> {
        vec![0; self.0.m]
    }

    pub fn one(&self) -> Vec<u64> {
        self.constant(1)
    }

    pub fn constant(&self, c: u64) -> Vec<u64> {
        let mut v = self.zero();
        v[0] = c % self.0.p;
        v
    }

    pub fn is_zero(&self, a: &[u64]) -> bool {
        a.iter().all(|&c| c == 0)
    }

    pub fn is_one(&self, a: &[u64]) -> bool {
        a[0] == 1 && a[1..].iter().all(|&c| c == 0)
    }

    /// The `index`-th element in enumeration order: base-`p` digits of `index`,
    /// constant coefficient least significant. Constants come first.
    pub fn element_at(&self, mut index: u64) -> Vec<u64> {
        let p = self.0.p;
        let mut v = self.zero();
        for c in v.iter_mut() {
            *c = index % p;
            index /= p;
        }
        v
    }

    pub fn add_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.0.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x += y;
            if *x >= p {
                *x -= p;
            }
        }
    }

    pub fn sub_assign(&self, a: &mut [u64], b: &[u64]) {
        let p = self.0.p;
        for (x, &y) in a.iter_mut().zip(b) {
            *x = if *x >= y { *x - y } else { *x + p - y };
        }
    }

    pub fn add(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = a.to_vec();
        self.add_assign(&mut out, b);
        out
    }

    pub fn sub(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = a.to_vec();
        self.sub_assign(&mut out, b);
        out
    }

    pub fn neg(&self, a: &[u64]) -> Vec<u64> {
        let p = self.0.p;
        a.iter().map(|&c| if c == 0 { 0 } else { p - c }).collect()
    }

    /// Multiplies every residue by the prime-field scalar `c`.
    pub fn scale_prime(&self, a: &[u64], c: u64) -> Vec<u64> {
        let p = self.0.p;
        a.iter().map(|&x| x * c % p).collect()
    }

    /// Reduces an unreduced product of length `2m - 1` into `out` (length `m`).
    /// `wide` entries must already lie in `[0, p)`.
    pub(crate) fn reduce_wide(&self, wide: &mut [u64], out: &mut [u64]) {
        let (p, m) = (self.0.p, self.0.m);
        for k in (m..wide.len()).rev() {
            let c = wide[k];
            if c == 0 {
                continue;
            }
            for &(j, t) in &self.0.reduction {
                let idx = k - m + j;
                wide[idx] = (wide[idx] + c * t) % p;
            }
        }
        out.copy_from_slice(&wide[..m]);
    }

    /// Accumulates the raw F_p[w] product `a * b` into `wide` without any reduction.
    /// Callers must reduce before more than `batch` products pile up in one slot.
    #[inline]
    pub(crate) fn mul_accumulate(&self, a: &[u64], b: &[u64], wide: &mut [u64]) {
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                wide[i + j] += x * y;
            }
        }
    }

    /// Number of `mul_accumulate` calls a zeroed wide buffer tolerates before a `% p` pass.
    pub(crate) fn accumulation_budget(&self) -> usize {
        (self.0.batch / self.0.m).max(1)
    }

    pub fn mul_into(&self, a: &[u64], b: &[u64], out: &mut [u64]) {
        let (p, m) = (self.0.p, self.0.m);
        if m == 1 {
            out[0] = a[0] * b[0] % p;
            return;
        }
        let mut stack = [0u64; 32];
        let mut heap;
        let wide: &mut [u64] = if 2 * m - 1 <= stack.len() {
            &mut stack[..2 * m - 1]
        } else {
            heap = vec![0u64; 2 * m - 1];
            &mut heap
        };
        if m <= self.0.batch {
            self.mul_accumulate(a, b, wide);
            for c in wide.iter_mut() {
                *c %= p;
            }
        } else {
            for (i, &x) in a.iter().enumerate() {
                for (j, &y) in b.iter().enumerate() {
                    wide[i + j] = (wide[i + j] + x * y % p) % p;
                }
            }
        }
        self.reduce_wide(wide, out);
    }

    pub fn mul(&self, a: &[u64], b: &[u64]) -> Vec<u64> {
        let mut out = self.zero();
        self.mul_into(a, b, &mut out);
        out
    }

    /// Multiplicative inverse, `None` for zero.
    pub fn inv(&self, a: &[u64]) -> Option<Vec<u64>> {
        if self.is_zero(a) {
            return None;
        }
        let p = self.0.p;
        if self.0.m == 1 {
            return Some(vec![nt::pow_mod(a[0], p - 2, p)]);
        }
        let mut av = a.to_vec();
        fp::trim(&mut av);
        let mut inv = fp::inverse_mod(&av, &self.0.modulus, p)?;
        inv.resize(self.0.m, 0);
        Some(inv)
    }

    pub fn pow(&self, a: &[u64], exp: &BigUint) -> Vec<u64> {
        let mut acc = self.one();
        for bit in (0..exp.bits()).rev() {
            acc = self.mul(&acc, &acc);
            if exp.bit(bit) {
                acc = self.mul(&acc, a);
            }
        }
        acc
    }

    pub fn pow_u64(&self, a: &[u64], mut exp: u64) -> Vec<u64> {
        let mut acc = self.one();
        let mut base = a.to_vec();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            exp >>= 1;
            if exp > 0 {
                base = self.mul(&base, &base);
            }
        }
        acc
    }

    /// The unique `b` with `b^p = a` (inverse Frobenius): `a^(p^(m-1))`.
    pub fn pth_root(&self, a: &[u64]) -> Vec<u64> {
        let mut b = a.to_vec();
        for _ in 1..self.0.m {
            b = self.pow_u64(&b, self.0.p);
        }
        b
    }

    // ---- checked element surface ----

    /// Wraps residues (reduced mod `p`) as an element of this field.
    pub fn element(&self, coeffs: &[u64]) -> Result<FieldElement> {
        if coeffs.len() > self.0.m {
            return Err(Error::InvalidArgument(format!(
                "{} coefficients given for a degree-{} field",
                coeffs.len(),
                self.0.m
            )));
        }
        let mut v = self.zero();
        for (c, &x) in v.iter_mut().zip(coeffs) {
            *c = x % self.0.p;
        }
        Ok(FieldElement {
            field: self.clone(),
            coeffs: v,
        })
    }

    pub(crate) fn wrap(&self, coeffs: Vec<u64>) -> FieldElement {
        debug_assert_eq!(coeffs.len(), self.0.m);
        FieldElement {
            field: self.clone(),
            coeffs,
        }
    }

    fn unit_group_factors(&self) -> Result<(u128, Vec<(u128, u32)>)> {
        let q = self.0.order.to_u128().ok_or_else(|| {
            Error::CapabilityExceeded(format!("field order {} exceeds 2^128", self.0.order))
        })?;
        let factors = nt::factor_u128(q - 1).ok_or_else(|| {
            Error::CapabilityExceeded(format!("could not factor q - 1 = {}", q - 1))
        })?;
        Ok((q - 1, factors))
    }

    /// A generator of the multiplicative group: the first element in
    /// enumeration order whose order is `q - 1`. Requires `q - 1` to be factorable.
    pub fn find_generator(&self) -> Result<FieldElement> {
        if let Some(g) = self.0.generator.get() {
            return Ok(self.wrap(g.clone()));
        }
        let (group, factors) = self.unit_group_factors()?;
        let g = (1u64..)
            .map(|idx| self.element_at(idx))
            .find(|c| {
                factors.iter().all(|&(r, _)| {
                    let e = BigUint::from(group / r);
                    !self.is_one(&self.pow(c, &e))
                })
            })
            .expect("a finite field has a generator");
        let g = self.0.generator.get_or_init(|| g).clone();
        Ok(self.wrap(g))
    }

    /// A primitive `n`-th root of unity. Candidates are tried in enumeration order
    /// and raised to `(q - 1)/n`; the first power of exact order `n` is returned.
    /// Only the factorization of `n` is needed, never that of `q - 1`.
    pub fn nth_root_of_unity(&self, n: u64) -> Result<FieldElement> {
        if n == 0 {
            return Err(Error::InvalidArgument("n must be positive".into()));
        }
        let group = &self.0.order - 1u32;
        if !(&group % n).is_zero() {
            return Err(Error::OrderNotDivisible { n });
        }
        if n == 1 {
            return Ok(self.wrap(self.one()));
        }
        let e = group / n;
        let primes = nt::prime_divisors(n);
        let root = (1u64..)
            .map(|idx| self.pow(&self.element_at(idx), &e))
            .find(|z| {
                primes
                    .iter()
                    .all(|&r| !self.is_one(&self.pow_u64(z, n / r)))
            })
            .expect("the cyclic unit group contains an element of every order dividing q - 1");
        Ok(self.wrap(root))
    }
}

/// An element of a [`FieldSpec`], with checked arithmetic.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FieldElement {
    field: FieldSpec,
    coeffs: Vec<u64>,
}

/// Binary field operation selector for [`arithmetic`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FieldOp {
    Add,
    Sub,
    Mul,
    Div,
}

pub fn arithmetic(a: &FieldElement, b: &FieldElement, op: FieldOp) -> Result<FieldElement> {
    if a.field != b.field {
        return Err(Error::FieldMismatch);
    }
    let f = &a.field;
    let coeffs = match op {
        FieldOp::Add => f.add(&a.coeffs, &b.coeffs),
        FieldOp::Sub => f.sub(&a.coeffs, &b.coeffs),
        FieldOp::Mul => f.mul(&a.coeffs, &b.coeffs),
        FieldOp::Div => {
            let bi = f.inv(&b.coeffs).ok_or(Error::DivisionByZero)?;
            f.mul(&a.coeffs, &bi)
        }
    };
    Ok(f.wrap(coeffs))
}

impl FieldElement {
    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.field.is_zero(&self.coeffs)
    }

    pub fn is_one(&self) -> bool {
        self.field.is_one(&self.coeffs)
    }

    pub fn add(&self, other: &FieldElement) -> Result<FieldElement> {
        arithmetic(self, other, FieldOp::Add)
    }

    pub fn sub(&self, other: &FieldElement) -> Result<FieldElement> {
        arithmetic(self, other, FieldOp::Sub)
    }

    pub fn mul(&self, other: &FieldElement) -> Result<FieldElement> {
        arithmetic(self, other, FieldOp::Mul)
    }

    pub fn div(&self, other: &FieldElement) -> Result<FieldElement> {
        arithmetic(self, other, FieldOp::Div)
    }

    pub fn pow(&self, exp: u64) -> FieldElement {
        self.field.wrap(self.field.pow_u64(&self.coeffs, exp))
    }

    /// Least `t >= 1` with `a^t = 1`, found by stripping prime factors from `q - 1`.
    pub fn multiplicative_order(&self) -> Result<u128> {
        if self.is_zero() {
            return Err(Error::ZeroElement);
        }
        let (group, factors) = self.field.unit_group_factors()?;
        let mut t = group;
        for (r, _) in factors {
            while t % r == 0 {
                let e = BigUint::from(t / r);
                if !self.field.is_one(&self.field.pow(&self.coeffs, &e)) {
                    break;
                }
                t /= r;
            }
        }
        Ok(t)
    }

    /// Integer value of a prime-field element.
    pub fn as_prime(&self) -> Option<u64> {
        self.field.is_prime_field().then(|| self.coeffs[0])
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write_element(f, &self.field, &self.coeffs)
    }
}

impl fmt::Debug for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Text form of raw residues: a decimal for prime fields, `[a0,a1,...]` otherwise.
pub(crate) fn write_element(
    f: &mut impl fmt::Write,
    field: &FieldSpec,
    coeffs: &[u64],
) -> fmt::Result {
    if field.is_prime_field() {
        return write!(f, "{}", coeffs[0]);
    }
    f.write_char('[')?;
    for (k, c) in coeffs.iter().enumerate() {
        if k > 0 {
            f.write_char(',')?;
        }
        write!(f, "{c}")?;
    }
    f.write_char(']')
}
