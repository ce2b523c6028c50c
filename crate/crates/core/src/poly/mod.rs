//! Dense univariate polynomials over a [`FieldSpec`].
//!
//! Coefficients are stored flat: coefficient `k` occupies
//! `data[k*m .. (k+1)*m]`, where `m` is the field's extension degree. The vector
//! is trimmed so that the leading coefficient is nonzero; the zero polynomial has
//! no data at all.

mod factor;
mod minpoly;

use std::cmp::Ordering;
use std::fmt::{self, Write as _};
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigUint;
use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::gf::{self, FieldElement, FieldSpec};
use crate::nt;

pub(crate) use factor::equal_degree_split;
pub use factor::{factor_generic, FactorMultiset, DEFAULT_SEED};
pub use minpoly::minimal_polynomial;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Poly {
    field: FieldSpec,
    data: Vec<u64>,
}

impl Poly {
    fn from_raw(field: &FieldSpec, mut data: Vec<u64>) -> Poly {
        let m = field.degree();
        debug_assert_eq!(data.len() % m, 0);
        while data.len() >= m && data[data.len() - m..].iter().all(|&c| c == 0) {
            data.truncate(data.len() - m);
        }
        Poly {
            field: field.clone(),
            data,
        }
    }

    pub fn zero(field: &FieldSpec) -> Poly {
        Poly {
            field: field.clone(),
            data: Vec::new(),
        }
    }

    pub fn one(field: &FieldSpec) -> Poly {
        Poly::constant(field, &field.one())
    }

    pub fn x(field: &FieldSpec) -> Poly {
        Poly::monomial(field, &field.one(), 1)
    }

    pub fn constant(field: &FieldSpec, c: &[u64]) -> Poly {
        Poly::from_raw(field, c.to_vec())
    }

    /// `c * x^k`.
    pub fn monomial(field: &FieldSpec, c: &[u64], k: usize) -> Poly {
        let m = field.degree();
        let mut data = vec![0u64; (k + 1) * m];
        data[k * m..].copy_from_slice(c);
        Poly::from_raw(field, data)
    }

    /// `x^n + 1`.
    pub fn x_pow_plus_one(field: &FieldSpec, n: usize) -> Poly {
        let m = field.degree();
        let mut data = vec![0u64; (n + 1) * m];
        data[0] = 1;
        data[n * m] = (data[n * m] + 1) % field.characteristic();
        Poly::from_raw(field, data)
    }

    /// `x^n - 1`.
    pub fn x_pow_minus_one(field: &FieldSpec, n: usize) -> Poly {
        let m = field.degree();
        let mut data = vec![0u64; (n + 1) * m];
        data[0] = field.characteristic() - 1;
        data[n * m] = (data[n * m] + 1) % field.characteristic();
        Poly::from_raw(field, data)
    }

    /// Polynomial whose `k`-th coefficient is the constant `coeffs[k] mod p`.
    pub fn from_prime_coeffs(field: &FieldSpec, coeffs: &[u64]) -> Poly {
        let mut data = Vec::with_capacity(coeffs.len() * field.degree());
        for &c in coeffs {
            data.extend(field.constant(c));
        }
        Poly::from_raw(field, data)
    }

    /// Polynomial from residue vectors, one per coefficient, ascending.
    pub fn from_coeffs(field: &FieldSpec, coeffs: &[Vec<u64>]) -> Result<Poly> {
        let m = field.degree();
        let p = field.characteristic();
        let mut data = Vec::with_capacity(coeffs.len() * m);
        for c in coeffs {
            if c.len() != m {
                return Err(Error::InvalidArgument(format!(
                    "coefficient {c:?} has {} residues, field degree is {m}",
                    c.len()
                )));
            }
            data.extend(c.iter().map(|&x| x % p));
        }
        Ok(Poly::from_raw(field, data))
    }

    pub fn from_elements(field: &FieldSpec, coeffs: &[FieldElement]) -> Result<Poly> {
        let mut data = Vec::with_capacity(coeffs.len() * field.degree());
        for c in coeffs {
            if c.field() != field {
                return Err(Error::FieldMismatch);
            }
            data.extend_from_slice(c.coeffs());
        }
        Ok(Poly::from_raw(field, data))
    }

    pub fn field(&self) -> &FieldSpec {
        &self.field
    }

    fn m(&self) -> usize {
        self.field.degree()
    }

    fn p(&self) -> u64 {
        self.field.characteristic()
    }

    /// Number of stored coefficients (`degree + 1`, or 0 for the zero polynomial).
    pub fn len(&self) -> usize {
        self.data.len() / self.m()
    }

    pub fn is_empty(&self) -> bool {
        self.data.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.data.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        self.len().checked_sub(1)
    }

    /// Residues of coefficient `k`; panics when `k > degree`.
    pub fn coeff(&self, k: usize) -> &[u64] {
        let m = self.m();
        &self.data[k * m..(k + 1) * m]
    }

    pub fn coefficient(&self, k: usize) -> FieldElement {
        if k < self.len() {
            self.field.element(self.coeff(k)).unwrap()
        } else {
            self.field.element(&[]).unwrap()
        }
    }

    pub fn coeffs(&self) -> std::slice::ChunksExact<'_, u64> {
        self.data.chunks_exact(self.m())
    }

    pub fn leading(&self) -> Option<&[u64]> {
        self.degree().map(|d| self.coeff(d))
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| self.field.is_one(c))
    }

    pub fn is_one(&self) -> bool {
        self.degree() == Some(0) && self.is_monic()
    }

    /// Flat residue data (ascending coefficients, `m` residues each).
    pub fn raw(&self) -> &[u64] {
        &self.data
    }

    fn assert_same_field(&self, other: &Poly) {
        assert!(
            self.field == other.field,
            "polynomials over different fields: {} vs {}",
            self.field,
            other.field
        );
    }

    fn check_same_field(&self, other: &Poly) -> Result<()> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    pub fn scale(&self, c: &[u64]) -> Poly {
        if self.field.is_zero(c) {
            return Poly::zero(&self.field);
        }
        let mut data = Vec::with_capacity(self.data.len());
        for k in self.coeffs() {
            data.extend(self.field.mul(k, c));
        }
        Poly::from_raw(&self.field, data)
    }

    /// Divides by the leading coefficient. The zero polynomial stays zero.
    pub fn monic(&self) -> Poly {
        match self.leading() {
            None => self.clone(),
            Some(lc) if self.field.is_one(lc) => self.clone(),
            Some(lc) => self.scale(&self.field.inv(lc).unwrap()),
        }
    }

    fn add_sub(&self, other: &Poly, subtract: bool) -> Poly {
        self.assert_same_field(other);
        let (long, short) = if self.data.len() >= other.data.len() {
            (&self.data, &other.data)
        } else {
            (&other.data, &self.data)
        };
        let p = self.p();
        let mut data = long.clone();
        if subtract {
            if self.data.len() < other.data.len() {
                // data currently holds `other`; negate it and add `self`
                for c in data.iter_mut() {
                    *c = (p - *c) % p;
                }
                for (x, &y) in data.iter_mut().zip(short.iter()) {
                    *x = (*x + y) % p;
                }
            } else {
                for (x, &y) in data.iter_mut().zip(short.iter()) {
                    *x = (*x + p - y) % p;
                }
            }
        } else {
            for (x, &y) in data.iter_mut().zip(short.iter()) {
                *x = (*x + y) % p;
            }
        }
        Poly::from_raw(&self.field, data)
    }

    fn mul_poly(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        if self.is_zero() || other.is_zero() {
            return Poly::zero(&self.field);
        }
        let (p, m) = (self.p(), self.m());
        let (la, lb) = (self.len(), other.len());
        let out_len = la + lb - 1;
        let budget = self.field.accumulation_budget().saturating_sub(1).max(1);
        if m == 1 {
            let (a, b) = (&self.data, &other.data);
            let mut acc = vec![0u64; out_len];
            for (i, &x) in a.iter().enumerate() {
                if x != 0 {
                    for (j, &y) in b.iter().enumerate() {
                        acc[i + j] += x * y;
                    }
                }
                if (i + 1) % budget == 0 {
                    acc.iter_mut().for_each(|c| *c %= p);
                }
            }
            acc.iter_mut().for_each(|c| *c %= p);
            return Poly::from_raw(&self.field, acc);
        }
        let w = 2 * m - 1;
        let mut wide = vec![0u64; out_len * w];
        for i in 0..la {
            let a = self.coeff(i);
            if self.field.is_zero(a) {
                continue;
            }
            for j in 0..lb {
                let slot = &mut wide[(i + j) * w..(i + j + 1) * w];
                self.field.mul_accumulate(a, other.coeff(j), slot);
            }
            if (i + 1) % budget == 0 {
                wide.iter_mut().for_each(|c| *c %= p);
            }
        }
        wide.iter_mut().for_each(|c| *c %= p);
        let mut data = vec![0u64; out_len * m];
        for k in 0..out_len {
            self.field
                .reduce_wide(&mut wide[k * w..(k + 1) * w], &mut data[k * m..(k + 1) * m]);
        }
        Poly::from_raw(&self.field, data)
    }

    /// Quotient and remainder; panics on a zero divisor or mismatched fields.
    pub fn div_rem(&self, divisor: &Poly) -> (Poly, Poly) {
        self.assert_same_field(divisor);
        let db = divisor.degree().expect("division by the zero polynomial");
        let (p, m) = (self.p(), self.m());
        let mut r = self.data.clone();
        let lr = self.len();
        if lr <= db {
            return (Poly::zero(&self.field), self.clone());
        }
        let lc = divisor.leading().unwrap();
        let lc_inv = (!self.field.is_one(lc)).then(|| self.field.inv(lc).unwrap());
        let mut q = vec![0u64; (lr - db) * m];
        let b = &divisor.data;
        if m == 1 {
            let li = lc_inv.as_ref().map_or(1, |v| v[0]);
            for k in (db..lr).rev() {
                let c = r[k] * li % p;
                if c == 0 {
                    continue;
                }
                q[k - db] = c;
                let neg = p - c;
                for (j, &y) in b.iter().enumerate() {
                    let idx = k - db + j;
                    r[idx] = (r[idx] + neg * y) % p;
                }
            }
            r.truncate(db);
        } else {
            let mut t = vec![0u64; m];
            for k in (db..lr).rev() {
                let mut c = r[k * m..(k + 1) * m].to_vec();
                if self.field.is_zero(&c) {
                    continue;
                }
                if let Some(li) = &lc_inv {
                    c = self.field.mul(&c, li);
                }
                q[(k - db) * m..(k - db + 1) * m].copy_from_slice(&c);
                for j in 0..=db {
                    let bj = &b[j * m..(j + 1) * m];
                    if self.field.is_zero(bj) {
                        continue;
                    }
                    self.field.mul_into(&c, bj, &mut t);
                    let idx = (k - db + j) * m;
                    self.field.sub_assign(&mut r[idx..idx + m], &t);
                }
            }
            r.truncate(db * m);
        }
        (
            Poly::from_raw(&self.field, q),
            Poly::from_raw(&self.field, r),
        )
    }

    pub fn rem(&self, divisor: &Poly) -> Poly {
        self.div_rem(divisor).1
    }

    /// Monic greatest common divisor; `gcd(f, 0) = monic(f)`.
    pub fn gcd(&self, other: &Poly) -> Poly {
        self.assert_same_field(other);
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r;
        }
        a.monic()
    }

    /// `self^exp mod modulus` by square-and-multiply.
    pub fn pow_mod(&self, exp: &BigUint, modulus: &Poly) -> Poly {
        let base = self.rem(modulus);
        let mut acc = Poly::one(&self.field).rem(modulus);
        for bit in (0..exp.bits()).rev() {
            acc = (&acc * &acc).rem(modulus);
            if exp.bit(bit) {
                acc = (&acc * &base).rem(modulus);
            }
        }
        acc
    }

    pub fn pow(&self, mut exp: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while exp > 0 {
            if exp & 1 == 1 {
                acc = &acc * &base;
            }
            exp >>= 1;
            if exp > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn derivative(&self) -> Poly {
        if self.len() <= 1 {
            return Poly::zero(&self.field);
        }
        let p = self.p();
        let mut data = Vec::with_capacity(self.data.len());
        for k in 1..self.len() {
            data.extend(self.field.scale_prime(self.coeff(k), k as u64 % p));
        }
        Poly::from_raw(&self.field, data)
    }

    /// `f(x^e)`: coefficient `k` moves to position `k * e`.
    pub fn substitute_power(&self, e: usize) -> Poly {
        assert!(e >= 1, "substitution exponent must be positive");
        if e == 1 || self.is_zero() {
            return self.clone();
        }
        let m = self.m();
        let mut data = vec![0u64; (self.degree().unwrap() * e + 1) * m];
        for (k, c) in self.coeffs().enumerate() {
            data[k * e * m..(k * e + 1) * m].copy_from_slice(c);
        }
        Poly::from_raw(&self.field, data)
    }

    /// For `f(x) = g(x^p)`, returns the `h` with `h^p = f` (coefficient-wise inverse Frobenius).
    pub(crate) fn pth_root(&self) -> Poly {
        let p = self.p() as usize;
        let m = self.m();
        let mut data = Vec::with_capacity(self.data.len() / p + m);
        for k in (0..self.len()).step_by(p) {
            data.extend(self.field.pth_root(self.coeff(k)));
        }
        debug_assert!((0..self.len())
            .filter(|k| k % p != 0)
            .all(|k| self.field.is_zero(self.coeff(k))));
        Poly::from_raw(&self.field, data)
    }

    pub fn eval(&self, x: &[u64]) -> Vec<u64> {
        let mut acc = self.field.zero();
        for c in self.coeffs().rev() {
            acc = self.field.mul(&acc, x);
            self.field.add_assign(&mut acc, c);
        }
        acc
    }

    /// Exact divisibility test `self | other`.
    pub fn divides(&self, other: &Poly) -> bool {
        !self.is_zero() && other.rem(self).is_zero()
    }

    // ---- checked surface ----

    pub fn try_add(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        Ok(self * other)
    }

    pub fn try_div_rem(&self, divisor: &Poly) -> Result<(Poly, Poly)> {
        self.check_same_field(divisor)?;
        if divisor.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.div_rem(divisor))
    }

    pub fn try_gcd(&self, other: &Poly) -> Result<Poly> {
        self.check_same_field(other)?;
        if self.is_zero() && other.is_zero() {
            return Err(Error::InvalidArgument("gcd(0, 0) is undefined".into()));
        }
        Ok(self.gcd(other))
    }

    pub fn try_pow_mod(&self, exp: &BigUint, modulus: &Poly) -> Result<Poly> {
        self.check_same_field(modulus)?;
        if modulus.is_zero() {
            return Err(Error::DivisionByZero);
        }
        Ok(self.pow_mod(exp, modulus))
    }

    /// `x^(q^k) mod self` for k = 1, 2, ...: the iterated Frobenius images of `x`.
    fn frobenius_powers(&self) -> impl Iterator<Item = Poly> + '_ {
        let q = self.field.order().clone();
        let mut h = Poly::x(&self.field).rem(self);
        std::iter::repeat_with(move || {
            h = h.pow_mod(&q, self);
            h.clone()
        })
    }

    /// Rabin's test: `f` of degree `n` is irreducible iff `x^(q^n) = x mod f`
    /// and `gcd(x^(q^(n/r)) - x, f) = 1` for every prime `r | n`.
    pub fn is_irreducible(&self) -> bool {
        let Some(n) = self.degree() else {
            return false;
        };
        if n == 0 {
            return false;
        }
        if n == 1 {
            return true;
        }
        let f = self.monic();
        let x = Poly::x(&self.field);
        let mut checkpoints: Vec<usize> = nt::prime_divisors(n as u64)
            .into_iter()
            .map(|r| n / r as usize)
            .collect();
        checkpoints.sort_unstable();
        let mut next = checkpoints.iter().peekable();
        for (k, h) in (1..=n).zip(f.frobenius_powers()) {
            while next.peek() == Some(&&k) {
                next.next();
                if !f.gcd(&(&h - &x)).is_one() {
                    return false;
                }
            }
            if k == n {
                return h == x.rem(&f);
            }
        }
        unreachable!()
    }

    /// Distinct roots in the coefficient field, ascending in element order.
    pub fn roots(&self) -> Vec<Vec<u64>> {
        if self.degree().unwrap_or(0) == 0 {
            return Vec::new();
        }
        let f = self.monic();
        let q = self.field.order().clone();
        let x = Poly::x(&self.field);
        let xq = x.pow_mod(&q, &f);
        let split = f.gcd(&(&xq - &x));
        if split.degree() == Some(0) {
            return Vec::new();
        }
        let mut rng = factor::seeded_rng(DEFAULT_SEED);
        let mut roots: Vec<Vec<u64>> = equal_degree_split(&split, 1, &mut rng)
            .into_iter()
            .map(|lin| self.field.neg(lin.coeff(0)))
            .collect();
        roots.sort();
        roots
    }

    /// Human-readable form such as `x^5 + 2*x^4 + 1`.
    pub fn to_text(&self) -> String {
        self.to_string()
    }

    /// `{"coeffs": [c0, ..., cn]}`; extension-field coefficients are residue arrays.
    pub fn to_json(&self) -> Value {
        let coeffs: Vec<Value> = self
            .coeffs()
            .map(|c| {
                if self.field.is_prime_field() {
                    json!(c[0])
                } else {
                    json!(c)
                }
            })
            .collect();
        json!({ "coeffs": coeffs })
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        let mut first = true;
        for k in (0..self.len()).rev() {
            let c = self.coeff(k);
            if self.field.is_zero(c) {
                continue;
            }
            if !first {
                f.write_str(" + ")?;
            }
            first = false;
            let mut term = String::new();
            if k == 0 || !self.field.is_one(c) {
                gf::write_element(&mut term, &self.field, c)?;
                if k > 0 {
                    term.push('*');
                }
            }
            match k {
                0 => {}
                1 => term.push('x'),
                _ => write!(term, "x^{k}")?,
            }
            f.write_str(&term)?;
        }
        Ok(())
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly({self})")
    }
}

/// Canonical order: ascending degree, then coefficient vectors compared from the
/// constant term upward (each coefficient by its residue vector).
impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.data.cmp(&other.data))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        self.add_sub(rhs, false)
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        self.add_sub(rhs, true)
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        self.mul_poly(rhs)
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let p = self.p();
        Poly::from_raw(
            &self.field,
            self.data.iter().map(|&c| (p - c) % p).collect(),
        )
    }
}

/// Product of `factors[j]^mults[j]`.
pub fn product<'a>(field: &FieldSpec, factors: impl IntoIterator<Item = (&'a Poly, u64)>) -> Poly {
    factors
        .into_iter()
        .fold(Poly::one(field), |acc, (f, e)| &acc * &f.pow(e))
}
