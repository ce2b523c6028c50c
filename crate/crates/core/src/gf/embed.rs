//! Embeddings of a subfield F_{p^m} into an extension F_{p^{mt}}.
//!
//! The generator `w` of the subfield is sent to the smallest root (in
//! enumeration order) of the subfield modulus inside the extension. Elements are
//! mapped by evaluating their residue polynomial at that root; projection back
//! solves a linear system over F_p against the images of `1, w, ..., w^(m-1)`.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use super::{FieldElement, FieldSpec};
use crate::error::{Error, Result};
use crate::nt;
use crate::poly::Poly;

#[derive(Debug)]
pub struct Embedding {
    sub: FieldSpec,
    sup: FieldSpec,
    /// Images of `w^k` for `k < m`.
    powers: Vec<Vec<u64>>,
}

type EmbeddingCache = Mutex<HashMap<(u64, Vec<u64>, Vec<u64>), Arc<Embedding>>>;

fn cache() -> &'static EmbeddingCache {
    static CACHE: OnceLock<EmbeddingCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(HashMap::new()))
}

impl Embedding {
    pub fn between(sub: &FieldSpec, sup: &FieldSpec) -> Result<Arc<Embedding>> {
        let p = sub.characteristic();
        if p != sup.characteristic() || !sup.degree().is_multiple_of(sub.degree()) {
            return Err(Error::NoEmbedding {
                p,
                sub: sub.degree(),
                sup: sup.degree(),
            });
        }
        let key = (p, sub.modulus().to_vec(), sup.modulus().to_vec());
        if let Some(e) = cache().lock().unwrap().get(&key) {
            return Ok(e.clone());
        }
        let image = if sub.is_prime_field() {
            // the modulus of a prime field is `x`; its generator is 0 and never used
            sup.zero()
        } else {
            let modulus: Vec<Vec<u64>> = sub.modulus().iter().map(|&c| sup.constant(c)).collect();
            let f = Poly::from_coeffs(sup, &modulus)?;
            f.roots().into_iter().next().ok_or(Error::RootNotFound)?
        };
        let mut powers = vec![sup.one()];
        for _ in 1..sub.degree() {
            let next = sup.mul(powers.last().unwrap(), &image);
            powers.push(next);
        }
        let emb = Arc::new(Embedding {
            sub: sub.clone(),
            sup: sup.clone(),
            powers,
        });
        Ok(cache().lock().unwrap().entry(key).or_insert(emb).clone())
    }

    pub fn sub(&self) -> &FieldSpec {
        &self.sub
    }

    pub fn sup(&self) -> &FieldSpec {
        &self.sup
    }

    /// Image of the subfield generator `w`.
    pub fn generator_image(&self) -> Vec<u64> {
        if self.sub.is_prime_field() {
            self.sup.zero()
        } else {
            self.powers[1].clone()
        }
    }

    pub fn apply(&self, a: &[u64]) -> Vec<u64> {
        let mut out = self.sup.zero();
        for (&c, wk) in a.iter().zip(&self.powers) {
            if c != 0 {
                let term = self.sup.scale_prime(wk, c);
                self.sup.add_assign(&mut out, &term);
            }
        }
        out
    }

    /// Preimage of `c` when it lies in the embedded subfield.
    pub fn project(&self, c: &[u64]) -> Option<Vec<u64>> {
        let p = self.sub.characteristic();
        let (m, big) = (self.sub.degree(), self.sup.degree());
        if m == 1 {
            return c[1..].iter().all(|&x| x == 0).then(|| vec![c[0]]);
        }
        // rows: extension coordinates; columns: w^0..w^(m-1) | c
        let mut rows: Vec<Vec<u64>> = (0..big)
            .map(|r| {
                let mut row: Vec<u64> = self.powers.iter().map(|wk| wk[r]).collect();
                row.push(c[r]);
                row
            })
            .collect();
        let mut pivot_row = 0;
        let mut pivots = Vec::with_capacity(m);
        for col in 0..m {
            let Some(found) = (pivot_row..big).find(|&r| rows[r][col] != 0) else {
                continue;
            };
            rows.swap(pivot_row, found);
            let inv = nt::pow_mod(rows[pivot_row][col], p - 2, p);
            for x in rows[pivot_row].iter_mut() {
                *x = *x * inv % p;
            }
            let pivot = rows[pivot_row].clone();
            for (r, row) in rows.iter_mut().enumerate() {
                if r != pivot_row && row[col] != 0 {
                    let f = row[col];
                    for (x, &y) in row.iter_mut().zip(&pivot) {
                        *x = (*x + (p - f) * y) % p;
                    }
                }
            }
            pivots.push(col);
            pivot_row += 1;
        }
        if rows[pivot_row..].iter().any(|row| row[m] != 0) {
            return None;
        }
        let mut out = vec![0u64; m];
        for (r, &col) in pivots.iter().enumerate() {
            out[col] = rows[r][m];
        }
        Some(out)
    }
}

/// Maps `a` from `sub` into `sup`.
pub fn embed(sub: &FieldSpec, sup: &FieldSpec, a: &FieldElement) -> Result<FieldElement> {
    if a.field() != sub {
        return Err(Error::FieldMismatch);
    }
    let e = Embedding::between(sub, sup)?;
    Ok(sup.wrap(e.apply(a.coeffs())))
}
