//! Integer number theory on machine words: gcd, modular powers, primality,
//! factorization, Euler's phi and divisor lists.
//!
//! `u64` routines are exact for every input. The `u128` factorizer gives up
//! (returns `None`) once its Pollard-rho budget is spent.

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

pub fn lcm(a: u64, b: u64) -> u64 {
    if a == 0 || b == 0 {
        return 0;
    }
    a / gcd(a, b) * b
}

#[inline]
pub fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u64;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

const SMALL_PRIMES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

/// Deterministic Miller-Rabin for the whole `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &SMALL_PRIMES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &SMALL_PRIMES {
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pollard_rho(n: u64) -> u64 {
    if n.is_multiple_of(2) {
        return 2;
    }
    let mut c = 1u64;
    loop {
        let f = |x: u64| ((mul_mod(x, x, n) as u128 + c as u128) % n as u128) as u64;
        let (mut x, mut y, mut d) = (2u64, 2u64, 1u64);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd(x.abs_diff(y), n);
        }
        if d != n {
            return d;
        }
        c += 1;
    }
}

/// Prime factorization as ascending `(prime, exponent)` pairs. `factor(1)` is empty.
pub fn factor(n: u64) -> Vec<(u64, u32)> {
    assert!(n > 0, "cannot factor zero");
    let mut primes = Vec::new();
    let mut rest = n;
    for p in 2..=1000u64 {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    collect_powers(primes)
}

fn collect_powers<T: Copy + Ord>(mut primes: Vec<T>) -> Vec<(T, u32)> {
    primes.sort_unstable();
    let mut out: Vec<(T, u32)> = Vec::new();
    for p in primes {
        match out.last_mut() {
            Some((q, e)) if *q == p => *e += 1,
            _ => out.push((p, 1)),
        }
    }
    out
}

pub fn prime_divisors(n: u64) -> Vec<u64> {
    factor(n).into_iter().map(|(p, _)| p).collect()
}

pub fn euler_phi(n: u64) -> u64 {
    factor(n)
        .into_iter()
        .fold(1, |acc, (p, e)| acc * (p - 1) * p.pow(e - 1))
}

/// All positive divisors of `n`, ascending.
pub fn divisors(n: u64) -> Vec<u64> {
    let mut divs = vec![1u64];
    for (p, e) in factor(n) {
        let len = divs.len();
        let mut pk = 1;
        for _ in 0..e {
            pk *= p;
            for j in 0..len {
                divs.push(divs[j] * pk);
            }
        }
    }
    divs.sort_unstable();
    divs
}

/// Multiplicative order of `q` modulo `n` (`ord_1(q) = 1`). Requires `gcd(q, n) = 1`.
pub fn mult_order(q: u64, n: u64) -> Option<u64> {
    if n == 1 {
        return Some(1);
    }
    if gcd(q % n, n) != 1 {
        return None;
    }
    let mut t = euler_phi(n);
    for (r, _) in factor(t) {
        while t.is_multiple_of(r) && pow_mod(q, t / r, n) == 1 {
            t /= r;
        }
    }
    Some(t)
}

/// Writes `q = p^m` with `p` prime, or `None` when `q` is not a prime power.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    match factor(q).as_slice() {
        [(p, m)] => Some((*p, *m)),
        _ => None,
    }
}

/// Largest `s` with `2^s | x`. Zero maps to zero.
pub fn two_adic(x: u64) -> u32 {
    if x == 0 {
        0
    } else {
        x.trailing_zeros()
    }
}

/// Largest `s` with `p^s | x`, for `x >= 1`.
pub fn p_adic(mut x: u64, p: u64) -> u32 {
    let mut s = 0;
    while x.is_multiple_of(p) {
        x /= p;
        s += 1;
    }
    s
}

// ---- 128-bit helpers (unit-group orders of fields up to 2^128) ----

fn add_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if a >= m - b {
        a - (m - b)
    } else {
        a + b
    }
}

pub fn mul_mod_u128(a: u128, b: u128, m: u128) -> u128 {
    if a >> 64 == 0 && b >> 64 == 0 {
        return (a * b) % m;
    }
    let (mut a, mut b) = (a % m, b % m);
    let mut acc = 0u128;
    while b > 0 {
        if b & 1 == 1 {
            acc = add_mod_u128(acc, a, m);
        }
        a = add_mod_u128(a, a, m);
        b >>= 1;
    }
    acc
}

pub fn pow_mod_u128(mut base: u128, mut exp: u128, m: u128) -> u128 {
    if m == 1 {
        return 0;
    }
    let mut acc = 1u128;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod_u128(acc, base, m);
        }
        base = mul_mod_u128(base, base, m);
        exp >>= 1;
    }
    acc
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        let t = a % b;
        a = b;
        b = t;
    }
    a
}

/// Miller-Rabin with the first 20 prime bases; exact below 3.3e24, overwhelming beyond.
pub fn is_prime_u128(n: u128) -> bool {
    if let Ok(small) = u64::try_from(n) {
        return is_prime(small);
    }
    const BASES: [u128; 20] = [
        2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47, 53, 59, 61, 67, 71,
    ];
    for &p in &BASES {
        if n.is_multiple_of(p) {
            return false;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &BASES {
        let mut x = pow_mod_u128(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod_u128(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

const RHO_BUDGET: u64 = 1 << 22;

fn pollard_rho_u128(n: u128) -> Option<u128> {
    if n.is_multiple_of(2) {
        return Some(2);
    }
    let mut spent = 0u64;
    for c in 1u128..64 {
        let f = |x: u128| add_mod_u128(mul_mod_u128(x, x, n), c, n);
        let (mut x, mut y, mut d) = (2u128, 2u128, 1u128);
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
            spent += 1;
            if spent > RHO_BUDGET {
                return None;
            }
        }
        if d != n {
            return Some(d);
        }
    }
    None
}

/// Factorization of a 128-bit integer; `None` if Pollard rho exhausts its budget.
pub fn factor_u128(n: u128) -> Option<Vec<(u128, u32)>> {
    assert!(n > 0, "cannot factor zero");
    if let Ok(small) = u64::try_from(n) {
        return Some(
            factor(small)
                .into_iter()
                .map(|(p, e)| (p as u128, e))
                .collect(),
        );
    }
    let mut primes = Vec::new();
    let mut rest = n;
    for p in 2..=(1u128 << 16) {
        if p * p > rest {
            break;
        }
        while rest.is_multiple_of(p) {
            primes.push(p);
            rest /= p;
        }
    }
    let mut stack = vec![rest];
    while let Some(m) = stack.pop() {
        if m == 1 {
            continue;
        }
        if is_prime_u128(m) {
            primes.push(m);
            continue;
        }
        let d = pollard_rho_u128(m)?;
        stack.push(d);
        stack.push(m / d);
    }
    Some(collect_powers(primes))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(gcd(12, 8), 4);
        assert_eq!(lcm(4, 6), 12);
        assert_eq!(pow_mod(3, 4, 16), 1);
        assert_eq!(euler_phi(44), 20);
        assert_eq!(divisors(12), vec![1, 2, 3, 4, 6, 12]);
        assert_eq!(prime_power(9), Some((3, 2)));
        assert_eq!(prime_power(12), None);
        assert_eq!(two_adic(24), 3);
        assert_eq!(p_adic(12, 3), 1);
        assert_eq!(mult_order(3, 8), Some(2));
        assert_eq!(mult_order(5, 44), Some(5));
        assert_eq!(mult_order(7, 1), Some(1));
        assert_eq!(mult_order(3, 6), None);
    }

    #[test]
    fn primality_matches_trial_division() {
        let trial = |n: u64| {
            n >= 2
                && (2..n)
                    .take_while(|d| d * d <= n)
                    .all(|d| !n.is_multiple_of(d))
        };
        for n in 0..5000 {
            assert_eq!(is_prime(n), trial(n), "n = {n}");
        }
        assert!(is_prime(18446744073709551557));
    }

    #[test]
    fn factor_reassembles() {
        for n in [
            1u64,
            2,
            97,
            360,
            1 << 40,
            600851475143,
            18446744073709551615,
        ] {
            let prod: u64 = factor(n).iter().map(|&(p, e)| p.pow(e)).product();
            assert_eq!(prod, n);
        }
    }

    #[test]
    fn factor_u128_reassembles() {
        let n: u128 = 3u128.pow(48) - 1;
        let f = factor_u128(n).unwrap();
        let prod: u128 = f.iter().map(|&(p, e)| p.pow(e)).product();
        assert_eq!(prod, n);
        assert!(f.iter().all(|&(p, _)| is_prime_u128(p)));
    }
}
