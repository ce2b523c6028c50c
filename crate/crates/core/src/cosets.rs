//! q-cyclotomic cosets modulo n and the orders that govern their sizes.

use serde_json::{json, Value};

use crate::error::{Error, Result};
use crate::nt;

/// Additive order of `a` modulo `n`: `n / gcd(n, a)`.
pub fn theta(n: u64, a: u64) -> u64 {
    n / nt::gcd(n, a % n)
}

/// Multiplicative order of `q` modulo `n`, with `ord_1(q) = 1`.
pub fn mult_order_mod(n: u64, q: u64) -> Result<u64> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    nt::mult_order(q, n).ok_or(Error::NotCoprime { a: n, b: q })
}

/// Largest `s` with `2^s | x`.
pub fn two_adic(x: u64) -> u32 {
    nt::two_adic(x)
}

fn check_coprime(q: u64, n: u64) -> Result<()> {
    if n == 0 {
        return Err(Error::InvalidArgument("modulus must be positive".into()));
    }
    if nt::gcd(q % n, n) != 1 && n > 1 {
        return Err(Error::NotCoprime { a: q, b: n });
    }
    Ok(())
}

/// The orbit of a residue under multiplication by `q` modulo `n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Coset {
    pub n: u64,
    pub q: u64,
    /// Smallest member.
    pub rep: u64,
    /// Sorted members.
    pub elements: Vec<u64>,
}

impl Coset {
    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn contains(&self, x: u64) -> bool {
        self.elements.binary_search(&(x % self.n)).is_ok()
    }

    pub fn to_json(&self) -> Value {
        json!({ "n": self.n, "q": self.q, "rep": self.rep, "elements": self.elements })
    }
}

impl AsRef<[u64]> for Coset {
    fn as_ref(&self) -> &[u64] {
        &self.elements
    }
}

fn orbit(q: u64, n: u64, a: u64) -> Vec<u64> {
    let q = q % n.max(1);
    let start = a % n;
    let mut out = vec![start];
    let mut x = nt::mul_mod(start, q, n);
    while x != start {
        out.push(x);
        x = nt::mul_mod(x, q, n);
    }
    out.sort_unstable();
    out
}

/// `Cl_{q,n}(a)`.
pub fn coset(q: u64, n: u64, a: u64) -> Result<Coset> {
    check_coprime(q, n)?;
    let elements = orbit(q, n, a);
    Ok(Coset {
        n,
        q,
        rep: elements[0],
        elements,
    })
}

/// Coset representatives modulo `n`, split by parity when `n` is even.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RepresentativeSets {
    pub n: u64,
    pub q: u64,
    pub all: Vec<u64>,
    /// Representatives of cosets of odd residues; empty when `n` is odd.
    pub odd: Vec<u64>,
    /// Representatives of cosets of even residues; empty when `n` is odd.
    pub even: Vec<u64>,
    /// Cosets in the order of `all`.
    pub cosets: Vec<Coset>,
}

impl RepresentativeSets {
    pub fn odd_cosets(&self) -> impl Iterator<Item = &Coset> {
        let even_n = self.n.is_multiple_of(2);
        self.cosets.iter().filter(move |c| even_n && c.rep % 2 == 1)
    }

    pub fn to_json(&self) -> Value {
        json!({ "all": self.all, "odd": self.odd, "even": self.even })
    }
}

/// Partitions `{0, ..., n-1}` into cosets, representatives ascending.
pub fn representative_sets(q: u64, n: u64) -> Result<RepresentativeSets> {
    check_coprime(q, n)?;
    let mut seen = vec![false; n as usize];
    let mut cosets = Vec::new();
    for a in 0..n {
        if seen[a as usize] {
            continue;
        }
        let elements = orbit(q, n, a);
        for &x in &elements {
            seen[x as usize] = true;
        }
        cosets.push(Coset {
            n,
            q,
            rep: a,
            elements,
        });
    }
    let all: Vec<u64> = cosets.iter().map(|c| c.rep).collect();
    let (odd, even) = if n.is_multiple_of(2) {
        all.iter().partition(|&&a| a % 2 == 1)
    } else {
        (Vec::new(), Vec::new())
    };
    Ok(RepresentativeSets {
        n,
        q,
        all,
        odd,
        even,
        cosets,
    })
}

/// True when every coset modulo the even modulus `n` has members of one parity.
pub fn check_parity_lemma(q: u64, n: u64) -> bool {
    match representative_sets(q, n) {
        Ok(sets) => sets.cosets.iter().all(|c| {
            let parity = c.rep % 2;
            c.elements.iter().all(|x| x % 2 == parity)
        }),
        Err(_) => false,
    }
}

/// How the odd cosets modulo `2^{i+1} n'` relate to those modulo `2^i n'`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CosetTransition {
    /// `a` and `a + 2^i n'` lie in different cosets for every odd `a`.
    Splits,
    /// Each coset is the full preimage of a coset modulo `2^i n'`.
    Merges,
    /// Some odd residues split and others merge.
    Mixed,
}

impl CosetTransition {
    pub fn as_str(self) -> &'static str {
        match self {
            CosetTransition::Splits => "splits",
            CosetTransition::Merges => "merges",
            CosetTransition::Mixed => "mixed",
        }
    }
}

/// `β` and `λ` for `(q, n')`: `2^β || q^2 - 1`, `2^λ || ord_{n'}(q)`.
pub fn beta_lambda(q: u64, n_prime: u64) -> Result<(u32, u32)> {
    let q2 = q as u128 * q as u128 - 1;
    let beta = q2.trailing_zeros();
    let lambda = nt::two_adic(mult_order_mod(n_prime, q)?);
    Ok((beta, lambda))
}

/// The transition expected from `q mod 4`, `β` and `λ`, or `None` where
/// they make no uniform claim (`λ >= 1` and `i <= λ + β - 2`).
pub fn predicted_transition(q: u64, n_prime: u64, i: u32) -> Result<Option<CosetTransition>> {
    let (beta, lambda) = beta_lambda(q, n_prime)?;
    use CosetTransition::*;
    Ok(if lambda == 0 {
        Some(if q % 4 == 3 {
            if (2..beta).contains(&i) {
                Splits
            } else {
                Merges
            }
        } else if i + 2 <= beta {
            Splits
        } else {
            Merges
        })
    } else if i + 1 >= lambda + beta {
        Some(Merges)
    } else {
        None
    })
}

/// Per-residue dichotomy: returns `true` when odd `a` splits at level `i`.
fn residue_splits(q: u64, n_prime: u64, i: u32, a: u64) -> bool {
    let half = (1u64 << i) * n_prime;
    let big = coset(q, 2 * half, a).expect("coprime by construction");
    !big.contains(a + half)
}

/// Classifies the odd cosets modulo `2^{i+1} n'` against those modulo `2^i n'`,
/// checking the result against [`predicted_transition`].
pub fn coset_split_structure(q: u64, n_prime: u64, i: u32) -> Result<CosetTransition> {
    if n_prime.is_multiple_of(2) {
        return Err(Error::InvalidArgument("n' must be odd".into()));
    }
    if i == 0 {
        return Err(Error::InvalidArgument("i must be at least 1".into()));
    }
    check_coprime(q, n_prime)?;
    let half = (1u64 << i) * n_prime;
    let modulus = 2 * half;
    let sets = representative_sets(q, modulus)?;
    let (mut splits, mut merges) = (0usize, 0usize);
    for c in sets.odd_cosets() {
        let a = c.rep;
        if !c.contains(a + half) {
            splits += 1;
            continue;
        }
        // full preimage of the coset of a modulo half
        let low = coset(q, half, a % half)?;
        let mut preimage: Vec<u64> = low.elements.iter().flat_map(|&x| [x, x + half]).collect();
        preimage.sort_unstable();
        if preimage != c.elements {
            return Err(Error::MixedStructure {
                q,
                n_prime,
                i,
                detail: format!("coset of {a} contains {a}+{half} but is not a full preimage"),
            });
        }
        merges += 1;
    }
    let actual = match (splits, merges) {
        (_, 0) => CosetTransition::Splits,
        (0, _) => CosetTransition::Merges,
        _ => CosetTransition::Mixed,
    };
    let (beta, lambda) = beta_lambda(q, n_prime)?;
    let mismatch = |detail: String| Error::MixedStructure {
        q,
        n_prime,
        i,
        detail,
    };
    if lambda == 0 && actual == CosetTransition::Mixed {
        return Err(mismatch(format!(
            "{splits} odd cosets split and {merges} merge"
        )));
    }
    if let Some(pred) = predicted_transition(q, n_prime, i)? {
        if pred != actual {
            return Err(mismatch(format!(
                "predicted {} but observed {}",
                pred.as_str(),
                actual.as_str()
            )));
        }
    } else if i + 2 == lambda + beta && !residue_splits(q, n_prime, i, 1) {
        return Err(mismatch("residue 1 should split at i = λ+β-2".into()));
    }
    Ok(actual)
}
