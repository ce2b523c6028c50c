//! Generic factorization over F_q: squarefree decomposition, distinct-degree
//! splitting and Cantor-Zassenhaus equal-degree splitting.
//!
//! This path knows nothing about cyclotomic cosets and serves as the
//! independent reference for the recursive factorizer.

use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::Poly;
use crate::error::{Error, Result};
use crate::gf::FieldSpec;

/// Seed for the randomized splitting step when none is supplied.
pub const DEFAULT_SEED: u64 = 0xC05E7;

pub(crate) fn seeded_rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Monic irreducible factors with multiplicities, in canonical order, plus the
/// leading coefficient of the factored polynomial.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FactorMultiset {
    pub factors: Vec<(Poly, u64)>,
    pub leading: Vec<u64>,
}

impl FactorMultiset {
    pub fn product(&self, field: &FieldSpec) -> Poly {
        super::product(field, self.factors.iter().map(|(f, e)| (f, *e))).scale(&self.leading)
    }

    /// Number of irreducible factors counted with multiplicity.
    pub fn total_count(&self) -> u64 {
        self.factors.iter().map(|(_, e)| e).sum()
    }
}

/// Factors `f` into monic irreducibles. Deterministic for a fixed `seed`.
pub fn factor_generic(f: &Poly, seed: u64) -> Result<FactorMultiset> {
    let leading = f.leading().ok_or(Error::InvalidArgument(
        "cannot factor the zero polynomial".into(),
    ))?;
    let leading = leading.to_vec();
    let mut rng = seeded_rng(seed);
    let mut factors = Vec::new();
    for (g, e) in squarefree(&f.monic()) {
        for (h, d) in distinct_degree(&g) {
            for piece in equal_degree_split(&h, d, &mut rng) {
                factors.push((piece, e));
            }
        }
    }
    factors.sort();
    // merge equal factors that surfaced from different squarefree layers
    let mut merged: Vec<(Poly, u64)> = Vec::with_capacity(factors.len());
    for (g, e) in factors {
        match merged.last_mut() {
            Some((h, k)) if *h == g => *k += e,
            _ => merged.push((g, e)),
        }
    }
    Ok(FactorMultiset {
        factors: merged,
        leading,
    })
}

/// Squarefree decomposition of a monic polynomial: pairs `(g, e)` with `g`
/// squarefree and `f = prod g^e`.
fn squarefree(f: &Poly) -> Vec<(Poly, u64)> {
    let mut out = Vec::new();
    squarefree_into(f, 1, &mut out);
    out
}

fn squarefree_into(f: &Poly, scale: u64, out: &mut Vec<(Poly, u64)>) {
    if f.degree().unwrap_or(0) == 0 {
        return;
    }
    let p = f.field().characteristic();
    let df = f.derivative();
    if df.is_zero() {
        squarefree_into(&f.pth_root(), scale * p, out);
        return;
    }
    let mut c = f.gcd(&df);
    let mut w = f.div_rem(&c).0;
    let mut i = 1u64;
    while w.degree().unwrap_or(0) > 0 {
        let y = w.gcd(&c);
        let fac = w.div_rem(&y).0;
        if fac.degree().unwrap_or(0) > 0 {
            out.push((fac.monic(), i * scale));
        }
        w = y;
        c = c.div_rem(&w).0;
        i += 1;
    }
    if c.degree().unwrap_or(0) > 0 {
        squarefree_into(&c.monic().pth_root(), scale * p, out);
    }
}

/// Splits a squarefree monic polynomial into products of irreducibles of equal degree.
fn distinct_degree(f: &Poly) -> Vec<(Poly, usize)> {
    let field = f.field();
    let q = field.order().clone();
    let x = Poly::x(field);
    let mut out = Vec::new();
    let mut rest = f.clone();
    let mut h = x.rem(&rest);
    let mut d = 0;
    while let Some(deg) = rest.degree() {
        if 2 * (d + 1) > deg {
            break;
        }
        d += 1;
        h = h.pow_mod(&q, &rest);
        let g = rest.gcd(&(&h - &x));
        if g.degree().unwrap_or(0) > 0 {
            rest = rest.div_rem(&g).0;
            h = h.rem(&rest);
            out.push((g, d));
        }
    }
    if let Some(deg) = rest.degree() {
        if deg > 0 {
            out.push((rest.monic(), deg));
        }
    }
    out
}

fn random_poly(field: &FieldSpec, len: usize, rng: &mut impl Rng) -> Poly {
    let p = field.characteristic();
    let data: Vec<u64> = (0..len * field.degree())
        .map(|_| rng.gen_range(0..p))
        .collect();
    Poly::from_raw(field, data)
}

/// Cantor-Zassenhaus: splits a monic product of distinct irreducibles of
/// degree `d` into its factors (odd `q` only).
pub(crate) fn equal_degree_split(f: &Poly, d: usize, rng: &mut impl Rng) -> Vec<Poly> {
    let n = f.degree().unwrap_or(0);
    if n == 0 {
        return Vec::new();
    }
    if n == d {
        return vec![f.monic()];
    }
    let field = f.field();
    let exp: BigUint = (field.order().pow(d as u32) - 1u32) >> 1;
    let one = Poly::one(field);
    let mut stack = vec![f.monic()];
    let mut out = Vec::new();
    while let Some(g) = stack.pop() {
        let deg = g.degree().unwrap();
        if deg == d {
            out.push(g);
            continue;
        }
        loop {
            let a = random_poly(field, deg, rng);
            if a.degree().unwrap_or(0) == 0 {
                continue;
            }
            let b = &a.pow_mod(&exp, &g) - &one;
            let h = g.gcd(&b);
            let hd = h.degree().unwrap_or(0);
            if hd > 0 && hd < deg {
                let other = g.div_rem(&h).0.monic();
                stack.push(h);
                stack.push(other);
                break;
            }
        }
    }
    out.sort();
    out
}
