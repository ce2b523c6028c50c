//! Dense polynomials over a prime field F_p on raw `u64` residues.
//!
//! This is the bootstrap layer underneath [`FieldSpec`](super::FieldSpec):
//! it picks extension moduli and inverts extension elements. Vectors are
//! ascending and trimmed (no trailing zeros; the zero polynomial is empty).

use crate::nt;

pub(crate) fn trim(v: &mut Vec<u64>) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    nt::pow_mod(a, p - 2, p)
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let len = a.len().max(b.len());
    let mut out: Vec<u64> = (0..len)
        .map(|k| {
            let x = a.get(k).copied().unwrap_or(0);
            let y = b.get(k).copied().unwrap_or(0);
            (x + p - y) % p
        })
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + x * y) % p;
        }
    }
    trim(&mut out);
    out
}

/// Quotient and remainder of `a` by nonzero `b`.
pub(crate) fn div_rem(a: &[u64], b: &[u64], p: u64) -> (Vec<u64>, Vec<u64>) {
    assert!(!b.is_empty(), "division by the zero polynomial");
    let db = b.len() - 1;
    let mut r = a.to_vec();
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let lc_inv = inv(b[db], p);
    let mut q = vec![0u64; r.len() - db];
    for k in (db..r.len()).rev() {
        let c = r[k] * lc_inv % p;
        if c == 0 {
            continue;
        }
        q[k - db] = c;
        for (j, &y) in b.iter().enumerate() {
            let idx = k - db + j;
            r[idx] = (r[idx] + p - c * y % p) % p;
        }
    }
    r.truncate(db);
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    div_rem(a, b, p).1
}

/// Monic gcd; `gcd(0, 0) = 0`.
pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
    let (mut a, mut b) = (a.to_vec(), b.to_vec());
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = b;
        b = r;
    }
    if let Some(&lc) = a.last() {
        let li = inv(lc, p);
        for c in a.iter_mut() {
            *c = *c * li % p;
        }
    }
    a
}

pub(crate) fn pow_mod(base: &[u64], mut exp: u64, modulus: &[u64], p: u64) -> Vec<u64> {
    let mut acc = vec![1u64];
    let mut b = rem(base, modulus, p);
    while exp > 0 {
        if exp & 1 == 1 {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        exp >>= 1;
        if exp > 0 {
            b = rem(&mul(&b, &b, p), modulus, p);
        }
    }
    rem(&acc, modulus, p)
}

/// Inverse of `a` modulo `f` (f irreducible), via the extended Euclidean algorithm.
pub(crate) fn inverse_mod(a: &[u64], f: &[u64], p: u64) -> Option<Vec<u64>> {
    let (mut r0, mut r1) = (f.to_vec(), rem(a, f, p));
    let (mut s0, mut s1): (Vec<u64>, Vec<u64>) = (Vec::new(), vec![1]);
    while !r1.is_empty() {
        let (q, r) = div_rem(&r0, &r1, p);
        let s = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = inv(r0[0], p);
    let mut out: Vec<u64> = s0.iter().map(|&x| x * c % p).collect();
    out = rem(&out, f, p);
    Some(out)
}

/// Ben-Or irreducibility test for a monic `f` over F_p.
pub(crate) fn is_irreducible(f: &[u64], p: u64) -> bool {
    let Some(d) = f.len().checked_sub(1) else {
        return false;
    };
    if d == 0 {
        return false;
    }
    if d == 1 {
        return true;
    }
    let x = vec![0u64, 1];
    let mut h = x.clone();
    for _ in 1..=d / 2 {
        h = pow_mod(&h, p, f, p);
        let g = gcd(&sub(&h, &x, p), f, p);
        if g.len() > 1 {
            return false;
        }
    }
    true
}

/// The lexicographically smallest monic irreducible of degree `d` over F_p,
/// comparing coefficient vectors from the constant term upward.
pub(crate) fn canonical_irreducible(p: u64, d: usize) -> Vec<u64> {
    assert!(d >= 1);
    if d == 1 {
        return vec![0, 1];
    }
    // the constant term is the most significant digit; it cannot be zero
    let mut digits = vec![0u64; d];
    digits[0] = 1;
    loop {
        let mut f = digits.clone();
        f.push(1);
        if is_irreducible(&f, p) {
            return f;
        }
        let mut k = d - 1;
        loop {
            digits[k] += 1;
            if digits[k] < p {
                break;
            }
            digits[k] = 0;
            assert!(k > 0, "no irreducible polynomial of degree {d} over F_{p}");
            k -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_moduli() {
        assert_eq!(canonical_irreducible(3, 2), vec![1, 0, 1]);
        assert_eq!(canonical_irreducible(5, 1), vec![0, 1]);
        // x^2 + 1 = (x + 2)(x + 3) mod 5; x^2 + x + 1 takes values 1, 3, 2, 3, 1
        assert_eq!(canonical_irreducible(5, 2), vec![1, 1, 1]);
    }

    #[test]
    fn ben_or_agrees_with_root_search_on_quadratics_and_cubics() {
        let p = 7;
        for c0 in 0..p {
            for c1 in 0..p {
                for c2 in 0..p {
                    let f = vec![c0, c1, c2, 1];
                    let has_root = (0..p).any(|x| (c0 + c1 * x + c2 * x * x + x * x * x) % p == 0);
                    assert_eq!(is_irreducible(&f, p), !has_root, "{f:?}");
                }
            }
        }
    }

    #[test]
    fn inverse_round_trips() {
        let f = canonical_irreducible(3, 4);
        for a0 in 0..3 {
            for a3 in 1..3 {
                let a = vec![a0, 1, 0, a3];
                let ai = inverse_mod(&a, &f, 3).unwrap();
                assert_eq!(rem(&mul(&a, &ai, 3), &f, 3), vec![1]);
            }
        }
    }
}
